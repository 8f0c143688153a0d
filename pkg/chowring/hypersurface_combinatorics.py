"""
Hypersurface Combinatorics Module

Partitions of d, exponent vectors with a given support or weight, the
degree of the product map and the dimension of the space of forms.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Tuple

from sympy.utilities.iterables import multiset_permutations, partitions

from chowring.errors import InvalidPartitionError

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """An unordered multiset of positive parts, stored ascending"""
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(int(k) for k in self.parts))
        if not parts:
            raise InvalidPartitionError("A partition needs at least one part")
        if parts[0] < 1:
            raise InvalidPartitionError(f"Parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accept '1,2', '{1,2}' or '1 2'"""
        tokens = [t for t in re.split(r"[\s,{}()\[\]]+", text) if t]
        if not tokens or not all(t.isdigit() for t in tokens):
            raise InvalidPartitionError(f"Bad partition string '{text}'")
        return cls(tuple(int(t) for t in tokens))

    @classmethod
    def from_multiplicities(cls, freq: Dict[int, int]) -> "Partition":
        return cls(tuple(q for q, m in freq.items() for _ in range(m)))

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def freq(self) -> Dict[int, int]:
        """q -> number of parts equal to q"""
        return dict(sorted(Counter(self.parts).items()))

    @property
    def label(self) -> str:
        return "{" + ",".join(str(k) for k in self.parts) + "}"

    def __str__(self) -> str:
        return self.label


def partitions_of(d: int) -> List[Partition]:
    """All partitions of d, largest part first: {d}, {d-1,1}, ..., {1,...,1}"""
    if d < 1:
        raise InvalidPartitionError(f"d must be at least 1, got {d}")
    # sympy reuses the yielded dict
    return [Partition.from_multiplicities(dict(p)) for p in partitions(d)]


def vectors_with_support(mu: Partition, n: int) -> List[ExponentVector]:
    """Placements of the parts of mu into n slots, zeros elsewhere, lexicographic"""
    if n < 1:
        raise InvalidPartitionError(f"n must be positive, got {n}")
    if mu.s > n:
        return []
    padded = [0] * (n - mu.s) + list(mu.parts)
    return [tuple(v) for v in multiset_permutations(padded)]


def vectors_of_weight(q: int, n: int) -> List[ExponentVector]:
    """All v in N^n with |v| = q, in descending lexicographic order"""
    if n < 1:
        raise InvalidPartitionError(f"n must be positive, got {n}")
    if q < 0:
        return []
    vectors = []
    for slots in combinations_with_replacement(range(n), q):
        v = [0] * n
        for slot in slots:
            v[slot] += 1
        vectors.append(tuple(v))
    return sorted(vectors, reverse=True)


def count_with_support(mu: Partition, n: int) -> int:
    """|N^n(mu)| = n! / (prod mu(q)! * (n - s)!)"""
    if mu.s > n:
        return 0
    return math.factorial(n) // (product_map_degree(mu) * math.factorial(n - mu.s))


def product_map_degree(mu: Partition) -> int:
    return math.prod(math.factorial(m) for m in mu.freq.values())


def dim_W(n: int, d: int) -> int:
    """Dimension of the space of degree-d forms in n variables"""
    if n < 1 or d < 1:
        raise InvalidPartitionError(f"n and d must be positive, got n={n}, d={d}")
    return math.comb(n + d - 1, d)
