"""
Symmetric Basis Module

Chern roots l1..ln and Chern classes c1..cn, related by
c_i = (-1)^i * e_i(l1, ..., ln). Every other variable of a context is inert:
it is carried through conversions as a coefficient.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from chowring.errors import NotSymmetricError
from chowring.poly_core import Polynomial, VariableContext, substitute

logger = logging.getLogger(__name__)

ROOT_PREFIX = "l"
CHERN_PREFIX = "c"


def root_names(n: int) -> Tuple[str, ...]:
    return tuple(f"{ROOT_PREFIX}{i}" for i in range(1, n + 1))


def chern_names(n: int) -> Tuple[str, ...]:
    return tuple(f"{CHERN_PREFIX}{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class BasisConvention:
    """The root/Chern dictionary for GL_n with the sign rule c_i = (-1)^i e_i"""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    @property
    def roots(self) -> Tuple[str, ...]:
        return root_names(self.n)

    @property
    def cherns(self) -> Tuple[str, ...]:
        return chern_names(self.n)

    @staticmethod
    def sign(i: int) -> int:
        return -1 if i % 2 else 1

    def root_context(self, *inert) -> VariableContext:
        """Inert variables first, then l1..ln (weight 1)"""
        return VariableContext.of(*inert, *self.roots)

    def chern_context(self, *inert) -> VariableContext:
        """Inert variables first, then c1..cn (weight i)"""
        return VariableContext.of(*inert, *[(c, i) for i, c in enumerate(self.cherns, start=1)])

    @classmethod
    def detect(cls, context: VariableContext, prefix: str = ROOT_PREFIX) -> "BasisConvention":
        """Read n off a context holding prefix1..prefixn"""
        indices = sorted(int(m.group(1)) for name in context.names
                         if (m := re.fullmatch(rf"{prefix}(\d+)", name)))
        if not indices or indices != list(range(1, len(indices) + 1)):
            raise NotSymmetricError(
                f"Context {context.names} does not hold {prefix}1..{prefix}n")
        return cls(len(indices))


def _positions(context: VariableContext, variables: Optional[Sequence[str]]) -> List[int]:
    if variables is None:
        variables = BasisConvention.detect(context).roots
    return [context.index(name) for name in variables]


def _permuted(monom: Tuple[int, ...], positions: Sequence[int], image: Sequence[int]) -> Tuple[int, ...]:
    exps = list(monom)
    for slot, value in zip(positions, image):
        exps[slot] = value
    return tuple(exps)


def is_symmetric(p: Polynomial, variables: Optional[Sequence[str]] = None) -> bool:
    """Invariance under every adjacent transposition of the orbit variables"""
    positions = _positions(p.context, variables)
    terms = dict(p.element.items())
    for a, b in zip(positions, positions[1:]):
        for monom, coeff in terms.items():
            swapped = list(monom)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            if terms.get(tuple(swapped)) != coeff:
                return False
    return True


def symmetrize(p: Polynomial, variables: Optional[Sequence[str]] = None) -> Polynomial:
    """Sum of p over all permutations of the orbit variables (n! images, no averaging)"""
    positions = _positions(p.context, variables)
    ring = p.context.ring(p.coefficients)
    total = ring.zero
    for perm in permutations(range(len(positions))):
        moved = {}
        for monom, coeff in p.element.items():
            image = [monom[positions[k]] for k in perm]
            moved[_permuted(monom, positions, image)] = coeff
        total = total + ring.from_dict(moved)
    return Polynomial(p.context, p.coefficients, total)


def orbit_sum(p: Polynomial, variables: Optional[Sequence[str]] = None) -> Polynomial:
    """Replace each monomial by the sum of its distinct images under permutation"""
    positions = _positions(p.context, variables)
    ring = p.context.ring(p.coefficients)
    total = ring.zero
    for monom, coeff in p.element.items():
        block = sorted(monom[k] for k in positions)
        images = {_permuted(monom, positions, image): coeff for image in multiset_permutations(block)}
        total = total + ring.from_dict(images)
    return Polynomial(p.context, p.coefficients, total)


def elementary_symmetric(k: int, context: VariableContext,
                         variables: Optional[Sequence[str]] = None) -> Polynomial:
    """e_k of the orbit variables, in the given context"""
    positions = _positions(context, variables)
    if k < 0 or k > len(positions):
        return context.zero()
    block = [1] * k + [0] * (len(positions) - k)
    terms = {}
    for image in multiset_permutations(block):
        terms[_permuted((0,) * context.arity, positions, image)] = 1
    return context.from_terms(terms)


@lru_cache(maxsize=None)
def _elementary_elements(context: VariableContext, coefficients, roots: Tuple[str, ...]):
    return [elementary_symmetric(k, context, roots).change_ring(coefficients).element
            for k in range(len(roots) + 1)]


def to_chern_basis(p: Polynomial, n: Optional[int] = None) -> Polynomial:
    """
    Rewrite a polynomial symmetric in l1..ln in terms of c1..cn.

    The lex-leading root exponent a determines the product
    e_1^(a1-a2) ... e_n^(an) that is subtracted at each step; the leading
    exponent strictly decreases so the descent terminates, and no division
    ever happens, so integer coefficients stay integral.
    """
    convention = BasisConvention(n) if n is not None else BasisConvention.detect(p.context)
    roots = convention.roots
    if not is_symmetric(p, roots):
        raise NotSymmetricError(f"Polynomial is not symmetric in {roots}: {p}")
    root_slots = [p.context.index(name) for name in roots]
    inert = [(name, w) for name, w in zip(p.context.names, p.context.weights) if name not in roots]
    inert_slots = [p.context.index(name) for name, _ in inert]
    target = convention.chern_context(*inert)
    ring = p.context.ring(p.coefficients)
    domain = ring.domain
    elementary = _elementary_elements(p.context, p.coefficients, roots)

    rest = p.element
    out: Dict[Tuple[int, ...], object] = {}
    steps = 0
    while rest:
        lead = max(tuple(monom[k] for k in root_slots) for monom in rest.keys())
        if any(x < y for x, y in zip(lead, lead[1:])):
            raise NotSymmetricError(f"Leading root exponent {lead} is not a partition")
        powers = [lead[i] - (lead[i + 1] if i + 1 < len(lead) else 0) for i in range(len(lead))]
        sign = 1
        for i, k in enumerate(powers, start=1):
            sign *= BasisConvention.sign(i) ** k
        coefficient = {}
        for monom, coeff in rest.items():
            if tuple(monom[k] for k in root_slots) == lead:
                coefficient[_permuted(monom, root_slots, [0] * len(root_slots))] = coeff
        block = ring.from_dict(coefficient)
        for k, e in enumerate(powers, start=1):
            if e:
                block = block * elementary[k] ** e
        rest = rest - block
        for monom, coeff in coefficient.items():
            key = tuple(monom[k] for k in inert_slots) + tuple(powers)
            value = coeff if sign > 0 else -coeff
            out[key] = out[key] + value if key in out else value
        steps += 1
    logger.debug("to_chern_basis: %d descent steps over %s", steps, roots)
    target_ring = target.ring(p.coefficients)
    return Polynomial(target, p.coefficients, target_ring.from_dict({k: v for k, v in out.items() if v != domain.zero}))


def expand_chern(p: Polynomial, n: Optional[int] = None) -> Polynomial:
    """Substitute c_i -> (-1)^i e_i(l); inert variables come first in the output"""
    convention = BasisConvention(n) if n is not None else BasisConvention.detect(p.context, CHERN_PREFIX)
    inert = [(name, w) for name, w in zip(p.context.names, p.context.weights)
             if name not in convention.cherns]
    target = convention.root_context(*inert)
    bindings = {}
    for i, name in enumerate(convention.cherns, start=1):
        if name in p.context:
            e_i = elementary_symmetric(i, target, convention.roots).change_ring(p.coefficients)
            bindings[name] = e_i * BasisConvention.sign(i)
    return substitute(p, bindings, target)
