"""
Graded Ideal Membership Module

Membership of a homogeneous class in a homogeneous ideal, decided in the
single graded slice of the class's degree:

    target = sum_j cofactor_j * g_j   with   deg(cofactor_j) = D - deg(g_j)

is a finite linear system over the monomials of weighted degree D. Over Z it
is solved through a column Hermite normal form with the unimodular transform
kept alongside; over F_p by elimination in int64; over Q by sympy's rref.
Member certificates are always re-verified by multiplication.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.core.intfunc import igcdex
from sympy.polys.matrices import DomainMatrix

from chowring.config import DEFAULT_LIMITS
from chowring.errors import (
    CertificateError,
    ContextMismatchError,
    InhomogeneousError,
    SliceTooLargeError,
)
from chowring.poly_core import (
    INTEGERS,
    SCHEMA_VERSION,
    CoefficientRing,
    Exponents,
    Polynomial,
    VariableContext,
)
from chowring.tautological_classes import alpha_generators, total_relation

logger = logging.getLogger(__name__)

MEMBER = "member"
NON_MEMBER = "non-member"
MAX_PRIME = 2 ** 31


def monomials_of_degree(context: VariableContext, degree: int) -> List[Exponents]:
    """Exponent vectors of weighted degree `degree`, graded lexicographic, descending"""
    if degree < 0:
        return []
    weights = context.weights
    last = len(weights) - 1
    found: List[Exponents] = []

    def extend(i: int, remaining: int, prefix: Tuple[int, ...]) -> None:
        if i == last:
            if remaining % weights[i] == 0:
                found.append(prefix + (remaining // weights[i],))
            return
        for e in range(remaining // weights[i], -1, -1):
            extend(i + 1, remaining - e * weights[i], prefix + (e,))

    extend(0, degree, ())
    return sorted(found, key=lambda m: (sum(m), m), reverse=True)


@dataclass(frozen=True)
class GradedSlice:
    """Degree-D monomial basis (rows) and generator multiples m * g_j (columns)"""
    degree: int
    basis: Tuple[Exponents, ...]
    columns: Tuple[Tuple[int, Exponents], ...]
    matrix: Any = field(repr=False, compare=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.basis), len(self.columns)

    def vector(self, p: Polynomial) -> np.ndarray:
        """Coordinates of a degree-D polynomial in the basis"""
        row_of = {m: i for i, m in enumerate(self.basis)}
        out = np.zeros(len(self.basis), dtype=object)
        for monom, value in p.terms().items():
            out[row_of[monom]] = value
        return out


def build_slice(generators: Sequence[Polynomial], degree: int,
                slice_limit: int = DEFAULT_LIMITS.slice_limit) -> GradedSlice:
    context = generators[0].context
    basis = monomials_of_degree(context, degree)
    if len(basis) > slice_limit:
        raise SliceTooLargeError(f"Degree-{degree} slice has {len(basis)} monomials, limit is {slice_limit}")
    columns: List[Tuple[int, Exponents]] = []
    for j, g in enumerate(generators):
        if g.is_zero or g.weighted_degree() > degree:
            continue
        columns.extend((j, m) for m in monomials_of_degree(context, degree - g.weighted_degree()))
    if len(columns) > slice_limit:
        raise SliceTooLargeError(f"Degree-{degree} slice has {len(columns)} columns, limit is {slice_limit}")
    row_of = {m: i for i, m in enumerate(basis)}
    matrix = np.zeros((len(basis), len(columns)), dtype=object)
    generator_terms = [g.terms() for g in generators]
    for c, (j, m) in enumerate(columns):
        for monom, value in generator_terms[j].items():
            matrix[row_of[tuple(a + b for a, b in zip(monom, m))], c] += value
    return GradedSlice(degree, tuple(basis), tuple(columns), matrix)


def _column_hnf(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, List[Tuple[int, int]]]:
    """A @ U = H with U unimodular and H in column echelon form; returns H, U, pivots"""
    rows, cols = A.shape
    M = np.vstack([A, np.identity(cols, dtype=object)]) if cols else A.copy()
    pivots: List[Tuple[int, int]] = []
    r = 0
    for i in range(rows):
        if r == cols:
            break
        for j in range(r + 1, cols):
            b = M[i, j]
            if b == 0:
                continue
            a = M[i, r]
            if a == 0:
                M[:, [r, j]] = M[:, [j, r]]
                continue
            x, y, g = (int(t) for t in igcdex(int(a), int(b)))
            left, right = M[:, r].copy(), M[:, j].copy()
            M[:, r] = x * left + y * right
            M[:, j] = (-(b // g)) * left + (a // g) * right
        pivot = M[i, r]
        if pivot == 0:
            continue
        if pivot < 0:
            M[:, r] = -M[:, r]
            pivot = -pivot
        for k in range(r):
            q = M[i, k] // pivot
            if q:
                M[:, k] = M[:, k] - q * M[:, r]
        pivots.append((i, r))
        r += 1
    return M[:rows], M[rows:], pivots


def _solve_integer(A: np.ndarray, b: np.ndarray) -> Tuple[Optional[List[int]], int, Optional[int]]:
    """Integer solution of A x = b, or None with the first row that obstructs"""
    H, U, pivots = _column_hnf(A)
    rows, cols = A.shape
    pivot_of_row = dict(pivots)
    y = np.zeros(cols, dtype=object)
    residual = np.array(b, dtype=object)
    for i in range(rows):
        value = residual[i]
        if i in pivot_of_row:
            c = pivot_of_row[i]
            q, rem = divmod(value, H[i, c])
            if rem:
                return None, len(pivots), i
            y[c] = q
            if q:
                residual = residual - q * H[:, c]
        elif value != 0:
            return None, len(pivots), i
    x = U.dot(y) if cols else np.zeros(0, dtype=object)
    return [int(v) for v in x], len(pivots), None


def _solve_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> Tuple[Optional[List[int]], int, int]:
    """Solution mod p of A x = b, with rank(A) and rank([A | b])"""
    if p >= MAX_PRIME:
        raise ValueError(f"Modulus {p} is too large for int64 elimination")
    rows, cols = A.shape
    aug = np.zeros((rows, cols + 1), dtype=np.int64)
    if cols:
        aug[:, :cols] = (A % p).astype(np.int64)
    aug[:, cols] = (np.array(b, dtype=object) % p).astype(np.int64)
    pivot_cols: List[int] = []
    r = 0
    for c in range(cols + 1):
        if r == rows:
            break
        candidates = np.nonzero(aug[r:, c])[0]
        if candidates.size == 0:
            continue
        k = r + int(candidates[0])
        if k != r:
            aug[[r, k]] = aug[[k, r]]
        inverse = pow(int(aug[r, c]), -1, p)
        aug[r] = (aug[r] * inverse) % p
        factors = aug[:, c].copy()
        factors[r] = 0
        aug = (aug - np.outer(factors, aug[r])) % p
        pivot_cols.append(c)
        r += 1
    rank_augmented = len(pivot_cols)
    rank = sum(1 for c in pivot_cols if c < cols)
    if cols in pivot_cols:
        return None, rank, rank_augmented
    x = [0] * cols
    for row, c in enumerate(pivot_cols):
        x[c] = int(aug[row, cols])
    return x, rank, rank_augmented


def _solve_rational(A: np.ndarray, b: np.ndarray) -> Tuple[Optional[List[Fraction]], int, int]:
    rows, cols = A.shape

    def q(value) -> Any:
        value = Fraction(value)
        return QQ(value.numerator, value.denominator)

    entries = [[q(A[i, j]) for j in range(cols)] + [q(b[i])] for i in range(rows)]
    reduced, pivots = DomainMatrix(entries, (rows, cols + 1), QQ).rref()
    rank_augmented = len(pivots)
    rank = sum(1 for c in pivots if c < cols)
    if cols in pivots:
        return None, rank, rank_augmented
    values = reduced.to_Matrix()
    x = [Fraction(0)] * cols
    for row, c in enumerate(pivots):
        entry = values[row, cols]
        x[c] = Fraction(int(entry.p), int(entry.q))
    return x, rank, rank_augmented


@dataclass(frozen=True)
class MembershipCertificate:
    """Member with cofactors, or NonMember with the slice rank data that proves it"""
    verdict: str
    ring: CoefficientRing
    degree: int
    cofactors: Tuple[Polynomial, ...] = ()
    rank: Optional[int] = None
    augmented_rank: Optional[int] = None
    shape: Tuple[int, int] = (0, 0)
    obstruction: Optional[str] = None

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER

    def __bool__(self) -> bool:
        return self.is_member

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "verdict": self.verdict,
            "ring": self.ring.label,
            "degree": self.degree,
            "cofactors": [c.to_text() for c in self.cofactors],
            "ranks": {"slice": self.rank, "augmented": self.augmented_rank},
            "shape": list(self.shape),
            "obstruction": self.obstruction,
        }


def _monomial_text(context: VariableContext, monom: Exponents) -> str:
    return context.monomial(monom).to_text()


def _check_inputs(target: Polynomial, generators: Sequence[Polynomial], ring: CoefficientRing) -> None:
    for g in generators:
        if g.context != target.context:
            raise ContextMismatchError(f"Generator context {g.context.names} differs from {target.context.names}")
        if g.coefficients != target.coefficients:
            raise ContextMismatchError("Target and generators must share a coefficient ring")
    for p in (target, *generators):
        if not p.is_homogeneous():
            raise InhomogeneousError(f"Not homogeneous in the weighted grading: {p}")
    if ring.kind == "Z/m" and not ring.is_field:
        raise ValueError(f"Membership over {ring} is not supported; use Z, Q or a prime field")
    if target.coefficients.kind == "Q" and ring.kind != "Q":
        raise ContextMismatchError(f"Rational inputs can only be decided over Q, not {ring}")


def slice_membership(target: Polynomial, generators: Sequence[Polynomial],
                     ring: CoefficientRing = INTEGERS,
                     slice_limit: int = DEFAULT_LIMITS.slice_limit) -> MembershipCertificate:
    """Decide target in (generators) over ring, inside the slice of target's degree"""
    generators = list(generators)
    _check_inputs(target, generators, ring)
    context = target.context
    reduced_target = target.change_ring(ring)
    if reduced_target.is_zero:
        degree = int(target.weighted_degree()) if target else 0
        return _verified(target, generators, ring, degree,
                         tuple(context.zero(ring) for _ in generators), 0, 0, (0, 0))
    degree = int(target.weighted_degree())
    if not generators:
        return MembershipCertificate(NON_MEMBER, ring, degree, obstruction=target.to_text())
    graded = build_slice(generators, degree, slice_limit)
    b = graded.vector(target)
    A = graded.matrix
    if ring.kind == "Z":
        x, rank, bad_row = _solve_integer(A, b)
        augmented = None
        obstruction = None if bad_row is None else _monomial_text(context, graded.basis[bad_row])
    elif ring.kind == "Q":
        x, rank, augmented = _solve_rational(A, b)
        obstruction = None
    else:
        x, rank, augmented = _solve_mod_p(A, b, ring.modulus)
        obstruction = None
    logger.info("degree-%d slice %dx%d over %s: rank %d, %s", degree, *graded.shape, ring, rank,
                "solvable" if x is not None else "unsolvable")
    if x is None:
        return MembershipCertificate(NON_MEMBER, ring, degree, rank=rank, augmented_rank=augmented,
                                     shape=graded.shape, obstruction=obstruction)
    cofactor_terms: List[Dict[Exponents, Any]] = [dict() for _ in generators]
    for value, (j, monom) in zip(x, graded.columns):
        if value:
            cofactor_terms[j][monom] = cofactor_terms[j].get(monom, 0) + value
    cofactors = tuple(context.from_terms(terms, ring) for terms in cofactor_terms)
    return _verified(target, generators, ring, degree, cofactors, rank, augmented, graded.shape)


def _verified(target: Polynomial, generators: Sequence[Polynomial], ring: CoefficientRing, degree: int,
              cofactors: Tuple[Polynomial, ...], rank: Optional[int], augmented: Optional[int],
              shape: Tuple[int, int]) -> MembershipCertificate:
    combination = [(c, g.change_ring(ring)) for c, g in zip(cofactors, generators)]
    if not verify_identity(target.change_ring(ring), combination):
        raise CertificateError(f"Cofactors over {ring} do not reproduce {target}")
    return MembershipCertificate(MEMBER, ring, degree, cofactors, rank, augmented, shape)


def verify_identity(lhs: Polynomial, combination: Sequence[Tuple[Polynomial, Polynomial]]) -> bool:
    """lhs == sum cofactor * generator, exactly"""
    total = lhs.context.zero(lhs.coefficients)
    for cofactor, generator in combination:
        total = total + cofactor * generator
    return total == lhs


def relation_polynomial_membership(n: int, d: int,
                                   slice_limit: int = DEFAULT_LIMITS.slice_limit) -> MembershipCertificate:
    """P_[d](x) in (alpha_1(x), ..., alpha_n(x)) over Z, in the slice of degree dim W_d"""
    relation = total_relation(n, d, "x", "c")
    return slice_membership(relation, alpha_generators(n, d, "x"), INTEGERS, slice_limit)


@dataclass(frozen=True)
class GeneratorVerdict:
    """Whether one generator lies in the ideal of the others, per ring"""
    name: str
    certificates: Dict[str, MembershipCertificate]

    @property
    def independent(self) -> bool:
        return not self.certificates["Z"].is_member

    @property
    def independence_witnesses(self) -> List[str]:
        """Fields over which non-membership already holds"""
        return [label for label, cert in self.certificates.items()
                if label != "Z" and not cert.is_member]

    witnesses = independence_witnesses

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generator": self.name,
            "independent": self.independent,
            "independence_witnesses": self.independence_witnesses,
            "certificates": {label: cert.to_dict() for label, cert in self.certificates.items()},
        }


@dataclass(frozen=True)
class IndependenceReport:
    verdicts: Tuple[GeneratorVerdict, ...]

    @property
    def all_independent(self) -> bool:
        return all(v.independent for v in self.verdicts)

    @property
    def redundant(self) -> List[str]:
        return [v.name for v in self.verdicts if not v.independent]

    def to_dict(self) -> Dict[str, Any]:
        return {"all_independent": self.all_independent, "generators": [v.to_dict() for v in self.verdicts]}


def check_consistency(certificates: Dict[str, MembershipCertificate]) -> None:
    """Member over Z forces Member over every F_p and over Q"""
    integral = certificates.get("Z")
    if integral is None or not integral.is_member:
        return
    broken = [label for label, cert in certificates.items() if not cert.is_member]
    if broken:
        raise CertificateError(f"Member over Z but not over {broken}")


def minimal_generators_check(generators: Sequence[Polynomial], moduli: Sequence[CoefficientRing] = (),
                             names: Optional[Sequence[str]] = None,
                             slice_limit: int = DEFAULT_LIMITS.slice_limit) -> IndependenceReport:
    """For each generator, decide membership in the ideal of the others over Z and each extra ring"""
    generators = list(generators)
    names = list(names) if names is not None else [f"g{i}" for i in range(1, len(generators) + 1)]
    verdicts = []
    for i, g in enumerate(generators):
        others = generators[:i] + generators[i + 1:]
        certificates = {"Z": slice_membership(g, others, INTEGERS, slice_limit)}
        for ring in moduli:
            certificates[ring.label] = slice_membership(g, others, ring, slice_limit)
        check_consistency(certificates)
        verdict = GeneratorVerdict(names[i], certificates)
        logger.info("%s: %s (witnesses %s)", names[i],
                    "independent" if verdict.independent else "redundant", verdict.independence_witnesses)
        verdicts.append(verdict)
    return IndependenceReport(tuple(verdicts))
