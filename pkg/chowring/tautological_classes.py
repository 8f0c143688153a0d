"""
Tautological Classes Module

Named equivariant classes on spaces of forms and their products:

- partition classes P_mu(x) and the total relation P_[d](x) of P(W_d)
- the universal singular class Q_[d](x, y) and its y-coefficients, the alpha
  generators
- the incidence class [Z~], linear classes of T-invariant hypersurfaces
- fixed-point classes [Q_v] and tangent top Chern classes
- the splitting morphism psi for products of projective spaces, and
  pushforward along one projective factor

Conventions: l_i are the Chern roots, c_i = (-1)^i e_i(l), a point Q_v of
P(W_d) has weight v.l, and P(E) is cut out by prod (y - l_i).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Mapping, Optional, Sequence, Tuple

from chowring.errors import ConventionError, InvalidPartitionError, NotMonicError, NotReducedError
from chowring.hypersurface_combinatorics import (
    ExponentVector,
    Partition,
    vectors_of_weight,
    vectors_with_support,
)
from chowring.poly_core import (
    Polynomial,
    VariableContext,
    coefficient_of,
    product,
    reduce_mod_monic,
    substitute,
)
from chowring.symmetric_basis import BasisConvention, root_names, to_chern_basis

logger = logging.getLogger(__name__)

LINES = Partition((1,))


def root_context(n: int, *inert) -> VariableContext:
    return BasisConvention(n).root_context(*inert)


def chern_context(n: int, *inert) -> VariableContext:
    return BasisConvention(n).chern_context(*inert)


def _check_basis(basis: str) -> None:
    if basis not in ("c", "l"):
        raise ValueError(f"Basis must be 'c' or 'l', got '{basis}'")


def linear_form(v: Sequence[int], context: VariableContext) -> Polynomial:
    """v.l = sum v_i l_i"""
    names = root_names(len(v))
    return context.linear_form({name: value for name, value in zip(names, v) if value})


def _check_vector(v: Sequence[int], n: int, weight: int) -> ExponentVector:
    v = tuple(int(x) for x in v)
    if len(v) != n or min(v) < 0 or sum(v) != weight:
        raise InvalidPartitionError(f"Vector {v} is not in N^{n}({weight})")
    return v


@lru_cache(maxsize=None)
def partition_class(n: int, mu: Partition, var: str = "x") -> Polynomial:
    """P_mu(x) = prod over v in N^n(mu) of (x + v.l)"""
    context = root_context(n, var)
    x = context.var(var)
    return product((x + linear_form(v, context) for v in vectors_with_support(mu, n)), context.one())


@lru_cache(maxsize=None)
def total_relation(n: int, d: int, var: str = "x", basis: str = "l") -> Polynomial:
    """P_[d](x) = prod over v in N^n(d) of (x + v.l); monic of degree dim W_d"""
    _check_basis(basis)
    context = root_context(n, var)
    x = context.var(var)
    relation = product((x + linear_form(v, context) for v in vectors_of_weight(d, n)), context.one())
    return to_chern_basis(relation, n) if basis == "c" else relation


def _lines_polynomial(n: int, var: str, basis: str) -> Polynomial:
    relation = partition_class(n, LINES, var)
    return to_chern_basis(relation, n) if basis == "c" else relation


@lru_cache(maxsize=None)
def universal_singular_class(n: int, d: int, basis: str = "c",
                             var: str = "x", fiber: str = "y") -> Polynomial:
    """
    Q_[d](x, y) = P_{1}(x + (d-1)y) - (-(d-1))^n P_{1}(-y).

    The y^n terms cancel, so Q_[d] = sum alpha_i(x) y^(n-i).
    """
    _check_basis(basis)
    if d < 2:
        raise InvalidPartitionError(f"Q_[d] needs d >= 2, got {d}")
    base = _lines_polynomial(n, var, basis)
    context = (chern_context if basis == "c" else root_context)(n, var, fiber)
    x, y = context.var(var), context.var(fiber)
    shifted = substitute(base, {var: x + (d - 1) * y}, context)
    mirrored = substitute(base, {var: -y}, context)
    result = shifted - (-(d - 1)) ** n * mirrored
    if coefficient_of(result, fiber, n):
        raise ConventionError(f"Top {fiber}-coefficient of Q_[{d}] does not cancel for n={n}")
    return result


@lru_cache(maxsize=None)
def alpha_generators(n: int, d: int, var: str = "x", basis: str = "c") -> Tuple[Polynomial, ...]:
    """alpha_1(x), ..., alpha_n(x): the y-coefficients of Q_[d](x, y)"""
    fiber = "t" if var == "y" else "y"
    q = universal_singular_class(n, d, basis, var, fiber)
    alphas = []
    for i in range(1, n + 1):
        alpha = coefficient_of(q, fiber, n - i).drop(fiber)
        if alpha and (not alpha.is_homogeneous() or alpha.weighted_degree() != i):
            raise ConventionError(f"alpha_{i} for (n, d) = ({n}, {d}) is not homogeneous of degree {i}")
        alphas.append(alpha)
    logger.info("alpha generators for n=%d d=%d in the %s-basis", n, d, basis)
    return tuple(alphas)


def ztilde_class(n: int, d: int, var: str = "x", fiber: str = "y") -> Polynomial:
    """[Z~] = prod_i (x + (d-1)y + l_i), in the root basis"""
    if d < 2:
        raise InvalidPartitionError(f"[Z~] needs d >= 2, got {d}")
    context = root_context(n, var, fiber)
    shift = context.var(var) + (d - 1) * context.var(fiber)
    return product((shift + context.var(name) for name in root_names(n)), context.one())


def invariant_hypersurface_class(degrees: Mapping[str, int], character: Sequence[int],
                                 context: VariableContext) -> Polynomial:
    """Linear T-class of an invariant hypersurface: sum deg * hyperplane + character.l"""
    form = {var: deg for var, deg in degrees.items() if deg}
    form.update({name: value for name, value in zip(root_names(len(character)), character) if value})
    if not form:
        return context.zero()
    return context.linear_form(form)


@lru_cache(maxsize=None)
def fixed_point_class(v: ExponentVector, n: int, d: int, var: str = "h") -> Polynomial:
    """[Q_v] = prod over w != v in N^n(d) of (h + w.l)"""
    v = _check_vector(v, n, d)
    context = root_context(n, var)
    h = context.var(var)
    return product((h + linear_form(w, context) for w in vectors_of_weight(d, n) if w != v), context.one())


def tangent_weights(v0: ExponentVector, n: int, k: int) -> List[ExponentVector]:
    """The characters (v - v0) of the tangent space of P(W_k) at Q_v0"""
    v0 = _check_vector(v0, n, k)
    return [tuple(a - b for a, b in zip(v, v0)) for v in vectors_of_weight(k, n) if v != v0]


@lru_cache(maxsize=None)
def tangent_top_chern(v0: ExponentVector, n: int, k: int) -> Polynomial:
    """prod over v != v0 in N^n(k) of (v - v0).l"""
    context = root_context(n)
    return product((linear_form(w, context) for w in tangent_weights(v0, n, k)), context.one())


@dataclass(frozen=True)
class ProjectiveFactor:
    """One projective factor: its hyperplane variable and monic relation"""
    var: str
    relation: Polynomial
    label: str = ""

    @property
    def rank(self) -> int:
        """Degree of the relation, one more than the fibre dimension"""
        if not self.relation:
            return 0
        return int(self.relation.degree(self.var))


@dataclass(frozen=True)
class AmbientRingSpec:
    """A product of projective spaces over BGL_n, presented by monic relations"""
    n: int
    factors: Tuple[ProjectiveFactor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("An ambient ring needs at least one factor")
        names = [f.var for f in self.factors]
        if len(set(names)) != len(names):
            raise ValueError(f"Factor variables must be distinct: {names}")
        context = self.factors[0].relation.context
        for factor in self.factors:
            if factor.relation.context != context:
                raise ValueError("All factor relations must share one context")
            m = factor.rank
            if m < 1 or coefficient_of(factor.relation, factor.var, m) != 1:
                raise NotMonicError(f"Relation of factor '{factor.var}' is not monic")
            stray = [v for v in factor.relation.variables() if v in names and v != factor.var]
            if stray:
                raise NotMonicError(f"Relation of factor '{factor.var}' involves {stray}")

    @property
    def context(self) -> VariableContext:
        return self.factors[0].relation.context

    def factor(self, var: str) -> ProjectiveFactor:
        for factor in self.factors:
            if factor.var == var:
                return factor
        raise KeyError(f"No projective factor with variable '{var}'")


def forms_factor(n: int, k: int, var: str, context: VariableContext) -> ProjectiveFactor:
    """P(W_k), relation P_[k](var) in the Chern basis"""
    return ProjectiveFactor(var, total_relation(n, k, var, "c").to_context(context), f"P(W_{k})")


def lines_factor(n: int, var: str, context: VariableContext) -> ProjectiveFactor:
    """P(E), relation prod (var - l_i) = (-1)^n P_{1}(-var)"""
    relation = context.var(var) ** n
    for i in range(1, n + 1):
        relation = relation + context.var(f"c{i}") * context.var(var) ** (n - i)
    return ProjectiveFactor(var, relation, "P(E)")


def two_factor_spec(n: int, d: int, var: str = "x", fiber: str = "y") -> AmbientRingSpec:
    """P(W_d) x P(E)"""
    context = chern_context(n, var, fiber)
    return AmbientRingSpec(n, (forms_factor(n, d, var, context), lines_factor(n, fiber, context)))


def split_pair_spec(n: int, k1: int, k2: int, names: Tuple[str, str, str] = ("x", "y", "z")) -> AmbientRingSpec:
    """P(W_k1) x P(W_k2) x P(E)"""
    first, second, fiber = names
    context = chern_context(n, first, second, fiber)
    return AmbientRingSpec(n, (
        forms_factor(n, k1, first, context),
        forms_factor(n, k2, second, context),
        lines_factor(n, fiber, context),
    ))


def splitting_psi(p: Polynomial, spec: AmbientRingSpec, order: Optional[Sequence[str]] = None) -> Polynomial:
    """Canonical representative of degree below each factor's rank; last factor first"""
    reduced = p.to_context(spec.context)
    variables = list(order) if order is not None else [f.var for f in reversed(spec.factors)]
    for var in variables:
        factor = spec.factor(var)
        reduced = reduce_mod_monic(reduced, factor.relation, factor.var)
    return reduced


def pushforward_to_base(p: Polynomial, var: str, m: int) -> Polynomial:
    """Pushforward along a P^(m-1) factor: the coefficient of var^(m-1), var dropped"""
    if m < 1:
        raise ValueError(f"Relation degree must be positive, got {m}")
    if p and p.degree(var) >= m:
        raise NotReducedError(f"Class has degree {p.degree(var)} in '{var}', reduce below {m} first")
    return coefficient_of(p, var, m - 1).drop(var)


def push_along_factor(p: Polynomial, spec: AmbientRingSpec, var: str) -> Polynomial:
    """Reduce with psi, then push forward along the named factor"""
    factor = spec.factor(var)
    return pushforward_to_base(splitting_psi(p, spec), var, factor.rank)
