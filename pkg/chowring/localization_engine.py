"""
Localization Engine Module

Torus localization on products of spaces of forms P(W_k1) x ... x P(W_ks).
The fixed points are tuples of monomial points (Q_v1, ..., Q_vs); the product
map sends such a tuple to Q_(v1 + ... + vs).

Two exact methods are available. "moments" sums the fixed points of each
factor in closed form: the sum over v of x_v^m / prod_(w != v) (x_v - x_w) is
the complete homogeneous polynomial h_(m-r+1)(x), so no denominator ever
appears. "fixed-points" keeps one rational summand per fixed point, combines
them over a common denominator and divides it out at the end; it is only
feasible for small cases and serves as an independent cross-check.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.polyerrors import ExactQuotientFailed

from chowring.errors import (
    AsymmetricResultError,
    ConventionError,
    DegreeDivisionError,
    DenominatorNotClearedError,
    ExactnessError,
    InvalidPartitionError,
    UnknownVariableError,
)
from chowring.hypersurface_combinatorics import (
    ExponentVector,
    Partition,
    dim_W,
    product_map_degree,
    vectors_of_weight,
)
from chowring.poly_core import Polynomial, VariableContext, reduce_mod_monic, substitute
from chowring.symmetric_basis import is_symmetric, to_chern_basis
from chowring.tautological_classes import (
    fixed_point_class,
    linear_form,
    root_context,
    tangent_top_chern,
    tangent_weights,
    total_relation,
)

logger = logging.getLogger(__name__)

BASE_VAR = "h"

LinearForm = Tuple[int, ...]


def factor_names(s: int) -> Tuple[str, ...]:
    """Hyperplane classes xi1..xis of the factors of the product"""
    return tuple(f"xi{j}" for j in range(1, s + 1))


def _primitive(weight: Sequence[int]) -> Tuple[int, int, LinearForm]:
    """Split a weight into (sign, content, primitive form with positive leading entry)"""
    content = math.gcd(*weight)
    if content == 0:
        raise DenominatorNotClearedError(f"Zero weight {tuple(weight)} in a localization denominator")
    form = tuple(x // content for x in weight)
    if next(x for x in form if x) < 0:
        return -1, content, tuple(-x for x in form)
    return 1, content, form


@dataclass(frozen=True)
class RationalClass:
    """
    numerator / (scale * prod form^multiplicity), forms being primitive linear
    forms in l1..ln with positive leading coefficient and scale > 0. The
    denominator therefore has a positive leading coefficient.
    """
    numerator: Polynomial
    scale: int = 1
    forms: Tuple[Tuple[LinearForm, int], ...] = ()

    @classmethod
    def from_weights(cls, numerator: Polynomial, weights: Iterable[Sequence[int]]) -> "RationalClass":
        sign, scale, counts = 1, 1, Counter()
        for weight in weights:
            factor_sign, content, form = _primitive(weight)
            sign *= factor_sign
            scale *= content
            counts[form] += 1
        return cls(numerator * sign, scale, tuple(sorted(counts.items())))

    def denominator(self, context: Optional[VariableContext] = None) -> Polynomial:
        context = context or self.numerator.context
        result = context.constant(self.scale)
        for form, multiplicity in self.forms:
            result = result * linear_form(form, context) ** multiplicity
        return result

    def __add__(self, other: "RationalClass") -> "RationalClass":
        return sum_classes([self, other])

    def to_polynomial(self) -> Polynomial:
        """Divide out the denominator; fails loudly if it does not divide"""
        context = self.numerator.context
        element = self.numerator.element
        for form, multiplicity in self.forms:
            divisor = linear_form(form, context).element
            for _ in range(multiplicity):
                try:
                    element = element.exquo(divisor)
                except ExactQuotientFailed:
                    raise DenominatorNotClearedError(
                        f"Linear form {linear_form(form, context)} does not divide the summed numerator"
                    ) from None
        quotient = Polynomial(context, self.numerator.coefficients, element)
        if self.scale == 1:
            return quotient
        terms = quotient.terms()
        if any(value % self.scale for value in terms.values()):
            raise DenominatorNotClearedError(f"Integer scale {self.scale} does not divide the numerator")
        return context.from_terms({m: value // self.scale for m, value in terms.items()},
                                  self.numerator.coefficients)


def sum_classes(classes: Sequence[RationalClass]) -> RationalClass:
    """Exact sum over the least common multiple of the denominators"""
    if not classes:
        raise ValueError("Cannot sum an empty list of rational classes")
    context = classes[0].numerator.context
    scale = math.lcm(*(c.scale for c in classes))
    common = Counter()
    for c in classes:
        for form, multiplicity in c.forms:
            common[form] = max(common[form], multiplicity)
    total = context.zero(classes[0].numerator.coefficients)
    for c in classes:
        own = dict(c.forms)
        term = c.numerator * (scale // c.scale)
        for form, multiplicity in common.items():
            missing = multiplicity - own.get(form, 0)
            if missing:
                term = term * linear_form(form, context) ** missing
        total = total + term
    return RationalClass(total, scale, tuple(sorted(common.items())))


@dataclass(frozen=True)
class ProductFixedPoint:
    """(Q_v1, ..., Q_vs) with |vj| = kj"""
    vectors: Tuple[ExponentVector, ...]

    def __post_init__(self):
        vectors = tuple(tuple(int(x) for x in v) for v in self.vectors)
        if not vectors:
            raise InvalidPartitionError("A fixed point needs at least one factor")
        if len({len(v) for v in vectors}) != 1 or any(min(v) < 0 or sum(v) == 0 for v in vectors):
            raise InvalidPartitionError(f"Invalid fixed point {vectors}")
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        return len(self.vectors[0])

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sum(v) for v in self.vectors)

    @property
    def total(self) -> ExponentVector:
        """Image Q_(v1 + ... + vs) under the product map"""
        return tuple(sum(column) for column in zip(*self.vectors))


def fixed_points(n: int, mu: Partition) -> List[ProductFixedPoint]:
    """All torus-fixed points of P(W_k1) x ... x P(W_ks), factors in the order of mu.parts"""
    return [ProductFixedPoint(point) for point in cartesian(*(vectors_of_weight(k, n) for k in mu.parts))]


def restrict_to_fixed_point(p: Polynomial, point: ProductFixedPoint,
                            factor_vars: Optional[Sequence[str]] = None,
                            base: str = BASE_VAR) -> Polynomial:
    """Substitute xi_j -> -vj.l and h -> -(v1 + ... + vs).l; the result lives in l1..ln"""
    target = root_context(point.n)
    names = factor_names(len(point.vectors)) if factor_vars is None else tuple(factor_vars)
    bindings = {}
    for name, v in zip(names, point.vectors):
        if name in p.context:
            bindings[name] = -linear_form(v, target)
    if base in p.context:
        bindings[base] = -linear_form(point.total, target)
    return substitute(p, bindings, target)


@lru_cache(maxsize=None)
def check_restriction_convention(n: int, d: int) -> bool:
    """[Q_v] restricted to Q_v must equal the tangent top Chern class at Q_v"""
    for v in vectors_of_weight(d, n):
        restricted = restrict_to_fixed_point(fixed_point_class(v, n, d, BASE_VAR), ProductFixedPoint((v,)), ())
        if restricted != tangent_top_chern(v, n, d):
            raise ConventionError(f"Restriction of [Q_{v}] to Q_{v} is not the tangent top Chern class")
    logger.debug("restriction convention verified for n=%d d=%d", n, d)
    return True


METHODS = ("moments", "fixed-points")


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"Localization method must be one of {METHODS}, got '{method}'")


def _check_request(n: int, d: int, mu: Partition, exponents: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if mu.d != d:
        raise InvalidPartitionError(f"Partition {mu} does not sum to d={d}")
    exponents = tuple(exponents) if exponents is not None else (0,) * mu.s
    if len(exponents) != mu.s or min(exponents) < 0:
        raise InvalidPartitionError(f"Need {mu.s} non-negative exponents for {mu}, got {exponents}")
    check_restriction_convention(n, min(d, 2))
    return exponents


# --- Fixed-point summation ---

def _summand(point: ProductFixedPoint, n: int, d: int, restricted: Polynomial) -> RationalClass:
    numerator = fixed_point_class(point.total, n, d, BASE_VAR)
    weights = [w for v, k in zip(point.vectors, point.degrees) for w in tangent_weights(v, n, k)]
    if restricted != 1:
        numerator = numerator * restricted.to_context(numerator.context)
    logger.debug("fixed point %s: %d denominator weights", point.vectors, len(weights))
    return RationalClass.from_weights(numerator, weights)


def _localize(n: int, d: int, mu: Partition, restrict, jobs: int) -> Polynomial:
    points = fixed_points(n, mu)

    def one(point: ProductFixedPoint) -> RationalClass:
        return _summand(point, n, d, restrict(point))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            summands = list(pool.map(one, points))
    else:
        summands = [one(point) for point in points]
    total = sum_classes(summands).to_polynomial()
    logger.info("localized over %d fixed points for n=%d d=%d mu=%s", len(points), n, d, mu)
    return total


# --- Moments ---

@lru_cache(maxsize=None)
def elementary_characters(n: int, k: int, top: int) -> Tuple[Polynomial, ...]:
    """e_0..e_top of the linear forms v.l, v in N^n(k)"""
    context = root_context(n)
    values = [context.one()] + [context.zero()] * top
    for v in vectors_of_weight(k, n):
        form = linear_form(v, context)
        for i in range(top, 0, -1):
            if values[i - 1]:
                values[i] = values[i] + form * values[i - 1]
    return tuple(values)


@lru_cache(maxsize=None)
def complete_characters(n: int, k: int, top: int) -> Tuple[Polynomial, ...]:
    """
    h_0..h_top of the restrictions x_v = -v.l of the hyperplane class of
    P(W_k). prod_v (1 - x_v T) = sum_i e_i(v.l) T^i, and h is its inverse
    series, so h_q = -sum_(i=1..q) e_i(v.l) h_(q-i).
    """
    elementary = elementary_characters(n, k, top)
    values = [elementary[0]]
    for q in range(1, top + 1):
        term = elementary[0].context.zero()
        for i in range(1, q + 1):
            if elementary[i]:
                term = term - elementary[i] * values[q - i]
        values.append(term)
    return tuple(values)


def _moment_table(n: int, parts: Sequence[int], exponents: Sequence[int], top: int) -> List[Polynomial]:
    """
    Entry g is the sum of t! / prod a_j! * prod_j h_(qj)(P(W_kj)) over
    q1 + ... + qs = g, where aj = qj + dim W_kj - 1 - ej and t = sum aj.
    The multinomial is built up one binomial per factor.
    """
    context = root_context(n)
    table: Optional[List[Polynomial]] = None
    shift = 0
    for k, e in zip(parts, exponents):
        offset = dim_W(n, k) - 1 - e
        low = max(0, -offset)
        complete = complete_characters(n, k, top)
        if table is None:
            table = [complete[g] if g >= low else context.zero() for g in range(top + 1)]
            shift = offset
            continue
        shift += offset
        merged = []
        for g in range(top + 1):
            total = context.zero()
            for q in range(low, g + 1):
                previous = table[g - q]
                if previous and complete[q]:
                    total = total + math.comb(g + shift, q + offset) * previous * complete[q]
            merged.append(total)
        table = merged
    return table


def _moment_pushforward(n: int, d: int, mu: Partition, exponents: Sequence[int]) -> Polynomial:
    """
    pi_*(xi^e) = sum_j h^j sum_i e_i(v.l over N^n(d)) I_(N-1-i-j), where N is
    dim W_d and I_t is the equivariant integral of xi^e (xi1 + ... + xis)^t
    over the product. Only the terms of non-negative degree survive.
    """
    context = root_context(n, BASE_VAR)
    size = dim_W(n, d)
    top = size - 1 - sum(dim_W(n, k) - 1 for k in mu.parts) + sum(exponents)
    if top < 0:
        return context.zero()
    table = _moment_table(n, mu.parts, exponents, top)
    elementary = elementary_characters(n, d, top)
    h = context.var(BASE_VAR)
    result = context.zero()
    for j in range(min(top, size - 1) + 1):
        coefficient = root_context(n).zero()
        for i in range(min(top - j, size - 1 - j) + 1):
            if elementary[i] and table[top - i - j]:
                coefficient = coefficient + elementary[i] * table[top - i - j]
        if coefficient:
            result = result + h ** j * coefficient.to_context(context)
    logger.info("moments for n=%d d=%d mu=%s e=%s: degree %d", n, d, mu, tuple(exponents), top)
    return result


def _factor_expansion(gamma: Polynomial, n: int, s: int) -> dict:
    """Group gamma by monomials in xi1..xis; coefficients are polynomials in l1..ln"""
    names = factor_names(s)
    if BASE_VAR in gamma.context:
        total = gamma.context.zero()
        for name in names:
            if name in gamma.context:
                total = total + gamma.context.var(name)
        gamma = substitute(gamma, {BASE_VAR: total}, gamma.context)
    roots = root_context(n)
    for name in gamma.variables():
        if name not in names and name not in roots:
            raise UnknownVariableError(f"Class to push forward involves '{name}', not a factor or a root")
    slots = [gamma.context.index(name) if name in gamma.context else None for name in names]
    root_slots = [gamma.context.index(name) if name in gamma.context else None for name in roots.names]
    grouped: dict = {}
    for monom, coeff in gamma.terms().items():
        key = tuple(monom[k] if k is not None else 0 for k in slots)
        rest = tuple(monom[k] if k is not None else 0 for k in root_slots)
        grouped.setdefault(key, {})[rest] = coeff
    return {key: roots.from_terms(terms, gamma.coefficients) for key, terms in grouped.items()}


# --- Pushforwards ---

def pushforward_product_map(n: int, d: int, mu: Partition, exponents: Optional[Sequence[int]] = None,
                            basis: str = "l", jobs: int = 1, method: str = "moments") -> Polynomial:
    """pi_mu,* of xi1^e1 ... xis^es, not divided by the degree of the product map"""
    _check_method(method)
    exponents = _check_request(n, d, mu, exponents)
    if method == "moments":
        result = _moment_pushforward(n, d, mu, exponents)
    else:
        context = root_context(n)

        def restrict(point: ProductFixedPoint) -> Polynomial:
            value = context.one()
            for v, e in zip(point.vectors, exponents):
                if e:
                    value = value * (-linear_form(v, context)) ** e
            return value

        result = _localize(n, d, mu, restrict, jobs)
    return to_chern_basis(result, n) if basis == "c" else result


def pushforward_class(n: int, d: int, mu: Partition, gamma: Polynomial,
                      basis: str = "l", jobs: int = 1, method: str = "moments") -> Polynomial:
    """pi_mu,* of an arbitrary class in xi1..xis, l1..ln and h"""
    _check_method(method)
    _check_request(n, d, mu, None)
    if method == "moments":
        context = root_context(n, BASE_VAR)
        result = context.zero(gamma.coefficients)
        for exponents, coefficient in _factor_expansion(gamma, n, mu.s).items():
            if coefficient:
                pushed = _moment_pushforward(n, d, mu, exponents)
                result = result + coefficient.to_context(context) * pushed.change_ring(gamma.coefficients)
    else:
        result = _localize(n, d, mu, lambda point: restrict_to_fixed_point(gamma, point), jobs)
    return to_chern_basis(result, n) if basis == "c" else result


def delta_class(n: int, d: int, mu: Partition, jobs: int = 1, method: str = "moments") -> Polynomial:
    """
    Class of the locus of forms that factor with degree pattern mu.

    The raw pushforward must be divisible by the degree of the product map,
    symmetric in l and homogeneous; each failure has its own exception.
    """
    if mu.s > n:
        logger.warning("mu=%s has more parts than n=%d; no diagonal vector supports it", mu, n)
    raw = pushforward_product_map(n, d, mu, basis="l", jobs=jobs, method=method)
    degree = product_map_degree(mu)
    terms = raw.terms()
    if any(value % degree for value in terms.values()):
        raise DegreeDivisionError(f"Pushforward for {mu} is not divisible by deg(pi_mu) = {degree}")
    divided = raw.context.from_terms({m: value // degree for m, value in terms.items()})
    if not is_symmetric(divided):
        raise AsymmetricResultError(f"delta_{mu} for n={n} d={d} is not symmetric in l")
    result = to_chern_basis(divided, n)
    if not result.is_homogeneous():
        raise ExactnessError(f"delta_{mu} for n={n} d={d} is not homogeneous")
    logger.info("delta_%s for n=%d d=%d has degree %s", mu, n, d, result.weighted_degree())
    return result


def push_pull_defect(n: int, d: int, mu: Partition, exponents: Sequence[int], jobs: int = 1,
                     method: str = "moments") -> Polynomial:
    """sum_j pi_*(xi^(e + unit_j)) - h * pi_*(xi^e), reduced modulo P_[d](h); zero when push-pull holds"""
    exponents = tuple(exponents)
    base = pushforward_product_map(n, d, mu, exponents, jobs=jobs, method=method)
    total = -base.context.var(BASE_VAR) * base
    for j in range(len(exponents)):
        shifted = tuple(e + (1 if i == j else 0) for i, e in enumerate(exponents))
        total = total + pushforward_product_map(n, d, mu, shifted, jobs=jobs, method=method)
    return reduce_mod_monic(total, total_relation(n, d, BASE_VAR), BASE_VAR)


@dataclass(frozen=True)
class UnitCheck:
    """Outcome of the localization identity for gamma = 1"""
    n: int
    k: int
    residual: Polynomial

    @property
    def passed(self) -> bool:
        return self.residual.is_zero

    def __bool__(self) -> bool:
        return self.passed


def localization_unit_check(n: int, k: int) -> UnitCheck:
    """sum over v in N^n(k) of [Q_v] / c_top(T_Qv) == 1, compared after clearing denominators"""
    classes = [RationalClass.from_weights(fixed_point_class(v, n, k, BASE_VAR), tangent_weights(v, n, k))
               for v in vectors_of_weight(k, n)]
    total = sum_classes(classes)
    residual = total.numerator - total.denominator()
    if residual:
        logger.warning("localization unit check failed for n=%d k=%d", n, k)
    return UnitCheck(n, k, residual)
