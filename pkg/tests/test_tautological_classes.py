import random

import pytest

from chowring.errors import InvalidPartitionError, NotMonicError, NotReducedError
from chowring.hypersurface_combinatorics import Partition, dim_W, partitions_of
from chowring.poly_core import Polynomial, coefficient_of, product, substitute
from chowring.symmetric_basis import expand_chern, is_symmetric, to_chern_basis
from chowring.tautological_classes import (
    AmbientRingSpec,
    ProjectiveFactor,
    alpha_generators,
    chern_context,
    fixed_point_class,
    invariant_hypersurface_class,
    lines_factor,
    partition_class,
    push_along_factor,
    pushforward_to_base,
    root_context,
    split_pair_spec,
    splitting_psi,
    tangent_top_chern,
    total_relation,
    two_factor_spec,
    universal_singular_class,
    ztilde_class,
)

CUBIC = chern_context(3, "h")


def cubic(text):
    return Polynomial.parse(text, CUBIC)


# --- Alpha Generators ---

# Test: The alpha classes of plane cubics.
# Expectation: 12(h - c1), 6h^2 - 4hc1 - 6c2, h^3 - h^2c1 + hc2 - 9c3.
def test_alpha_plane_cubics():
    assert alpha_generators(3, 3, "h") == (
        cubic("12*h - 12*c1"),
        cubic("6*h^2 - 4*h*c1 - 6*c2"),
        cubic("h^3 - h^2*c1 + h*c2 - 9*c3"),
    )

# Test: Binary forms of degree d.
# Expectation: alpha_1 = 2(d-1)h - d(d-1)c1, alpha_2 = h^2 - c1 h - d(d-2)c2.
@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_alpha_binary_forms(d):
    context = chern_context(2, "h")
    assert alpha_generators(2, d, "h") == (
        Polynomial.parse(f"{2 * (d - 1)}*h - {d * (d - 1)}*c1", context),
        Polynomial.parse(f"h^2 - c1*h - {d * (d - 2)}*c2", context),
    )

# Test: Every alpha_i is homogeneous of degree i.
# Expectation: Holds for quadrics and quartics in up to four variables.
@pytest.mark.parametrize("n, d", [(3, 2), (4, 2), (3, 4), (4, 3)])
def test_alpha_degrees(n, d):
    for i, alpha in enumerate(alpha_generators(n, d, "h"), start=1):
        assert alpha.is_homogeneous()
        assert alpha.weighted_degree() == i

# Test: The universal singular class has no y^n term.
# Expectation: Zero top coefficient for n <= 4, d <= 5 in both bases.
@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_universal_top_coefficient(n, d):
    assert coefficient_of(universal_singular_class(n, d), "y", n).is_zero
    assert coefficient_of(universal_singular_class(n, d, "l"), "y", n).is_zero

# Test: The root-basis and Chern-basis forms of Q_[d] agree.
# Expectation: expand_chern of the c-form is the l-form.
def test_universal_bases_agree():
    assert expand_chern(universal_singular_class(3, 3, "c"), 3) == universal_singular_class(3, 3, "l")

# Test: Q_[d] needs d >= 2.
# Expectation: InvalidPartitionError for d = 1.
def test_universal_needs_degree_two():
    with pytest.raises(InvalidPartitionError):
        universal_singular_class(3, 1)


# --- Partition Classes ---

# Test: The product of P_mu over all partitions of d is P_[d].
# Expectation: Exact equality for n <= 3, d <= 4.
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_partition_product(n, d):
    context = root_context(n, "x")
    total = product((partition_class(n, mu, "x") for mu in partitions_of(d)), context.one())
    assert total == total_relation(n, d, "x")

# Test: P_[d] is monic of degree dim W_d and symmetric in the roots.
# Expectation: Leading x-coefficient 1, degree 10 for cubics in three variables.
def test_total_relation_shape():
    relation = total_relation(3, 3, "x")
    assert relation.degree("x") == dim_W(3, 3) == 10
    assert coefficient_of(relation, "x", 10) == 1
    assert is_symmetric(relation)
    assert total_relation(3, 3, "x", "c").context.names == ("x", "c1", "c2", "c3")

# Test: P_{d}(x) P_{1,d-1}(x) = prod_i Q_[d](x, l_i) for binary cubics, plane cubics and plane quartics.
# Expectation: Exact equality in Z[x, l1..ln].
@pytest.mark.parametrize("n, d", [(2, 3), (3, 3), (3, 4)])
def test_factorization_identity(n, d):
    context = root_context(n, "x")
    q = universal_singular_class(n, d, "l")
    rhs = product((substitute(q, {"y": context.var(f"l{i}")}, context) for i in range(1, n + 1)), context.one())
    lhs = partition_class(n, Partition((d,)), "x") * partition_class(n, Partition((1, d - 1)), "x")
    assert lhs == rhs

# Test: A partition with more parts than variables gives the empty product.
# Expectation: P_{1,1,1} = 1 for n = 2.
def test_partition_class_empty():
    assert partition_class(2, Partition((1, 1, 1)), "x") == 1


# --- Fixed Points and Tangent Spaces ---

# Test: [Q_v] restricted to Q_v (h -> -v.l) is the tangent top Chern class.
# Expectation: Equality at every point of P(W_2) for n = 3.
def test_fixed_point_restriction():
    for v in [(2, 0, 0), (1, 1, 0), (0, 0, 2)]:
        target = root_context(3)
        minus_v = -sum((value * target.var(f"l{i}") for i, value in enumerate(v, start=1)), target.zero())
        restricted = substitute(fixed_point_class(v, 3, 2), {"h": minus_v}, target)
        assert restricted == tangent_top_chern(v, 3, 2)

# Test: A vector of the wrong weight is rejected.
# Expectation: InvalidPartitionError.
def test_fixed_point_rejects_vector():
    with pytest.raises(InvalidPartitionError):
        fixed_point_class((1, 0, 0), 3, 2)

# Test: [Z~] is symmetric of degree n.
# Expectation: Degree 3 in x, symmetric in the roots.
def test_ztilde_class():
    z = ztilde_class(3, 3)
    assert z.degree("x") == 3
    assert is_symmetric(z)

# Test: Linear class of an invariant hypersurface.
# Expectation: 2x + l1 - l3 for degree 2 and character (1, 0, -1).
def test_invariant_hypersurface_class():
    context = root_context(3, "x")
    computed = invariant_hypersurface_class({"x": 2}, (1, 0, -1), context)
    assert computed == Polynomial.parse("2*x + l1 - l3", context)


# --- Splitting and Pushforward ---

# Test: psi(t [S_2]) on P(W_1) x P(W_2) x P(E) with t the P(E) class.
# Expectation: (2x + y - 2c1) z^2 + (xy - 2c2) z - 2c3.
def test_psi_split_pair():
    spec = split_pair_spec(3, 1, 2)
    x, y, z = (spec.context.var(v) for v in ("x", "y", "z"))
    psi = splitting_psi(z * (x + z) * (y + 2 * z), spec)
    assert psi == Polynomial.parse("(2*x + y - 2*c1)*z^2 + (x*y - 2*c2)*z - 2*c3", spec.context)

# Test: Pushforward along P(E) keeps the z^2 coefficient.
# Expectation: 2x + y - 2c1.
def test_push_along_lines():
    spec = split_pair_spec(3, 1, 2)
    x, y, z = (spec.context.var(v) for v in ("x", "y", "z"))
    pushed = push_along_factor(z * (x + z) * (y + 2 * z), spec, "z")
    assert pushed == Polynomial.parse("2*x + y - 2*c1", pushed.context)

# Test: The point class of P(E) pushes forward to 1, lower powers to 0.
# Expectation: z^2 -> 1, z -> 0.
def test_pushforward_point_class():
    spec = two_factor_spec(3, 3)
    z = spec.context.var("y")
    assert push_along_factor(z ** 2, spec, "y") == 1
    assert push_along_factor(z, spec, "y").is_zero

# Test: Pushforward of an unreduced class is refused.
# Expectation: NotReducedError.
def test_pushforward_needs_reduction():
    spec = two_factor_spec(3, 3)
    with pytest.raises(NotReducedError):
        pushforward_to_base(spec.context.var("y") ** 3, "y", 3)

# Test: The P(E) relation is prod (y - l_i).
# Expectation: Expanding the c-form gives the root product.
def test_lines_relation():
    context = chern_context(3, "y")
    relation = lines_factor(3, "y", context).relation
    roots = root_context(3, "y")
    expected = product((roots.var("y") - roots.var(f"l{i}") for i in range(1, 4)), roots.one())
    assert expand_chern(relation, 3) == expected

# Test: Ambient specs refuse relations that are not monic.
# Expectation: NotMonicError for 2x^2 + c1.
def test_ambient_spec_not_monic():
    context = chern_context(2, "x")
    bad = ProjectiveFactor("x", Polynomial.parse("2*x^2 + c1", context))
    with pytest.raises(NotMonicError):
        AmbientRingSpec(2, (bad,))


# --- Splitting Properties ---

def random_class(rng, context, names, max_exponent=4, max_terms=6):
    """Random polynomial in the named variables with small integer coefficients"""
    slots = [context.index(name) for name in names]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * context.arity
        for slot in slots:
            exps[slot] = rng.randint(0, max_exponent)
        terms[tuple(exps)] = rng.randint(-5, 5)
    return context.from_terms(terms)


# Test: psi([Z~]) is the universal singular class Q_[d].
# Expectation: Exact equality in the Chern basis for n <= 3, d <= 4.
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_psi_ztilde(n, d):
    reduced = splitting_psi(to_chern_basis(ztilde_class(n, d), n), two_factor_spec(n, d))
    assert reduced == universal_singular_class(n, d)

# Test: psi is idempotent and does not depend on the order of the factors.
# Expectation: psi(psi(p)) = psi(p) and every reduction order gives the same class.
def test_psi_idempotent_and_order_free():
    spec = split_pair_spec(3, 1, 2)
    rng = random.Random(20240131)
    for _ in range(15):
        p = random_class(rng, spec.context, ("x", "y", "z", "c1", "c2"))
        reduced = splitting_psi(p, spec)
        assert splitting_psi(reduced, spec) == reduced
        for order in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
            assert splitting_psi(p, spec, order) == reduced

# Test: Projection formula for the pushforward along P(E).
# Expectation: push(a * b) = a * push(b) for classes a pulled back from BGL_3.
def test_push_projection_formula():
    spec = split_pair_spec(3, 1, 2)
    rng = random.Random(20240201)
    for _ in range(15):
        a = random_class(rng, spec.context, ("c1", "c2", "c3"), max_exponent=2, max_terms=3)
        b = random_class(rng, spec.context, ("x", "y", "z"))
        pushed = push_along_factor(b, spec, "z")
        assert push_along_factor(a * b, spec, "z") == a.to_context(pushed.context) * pushed

# Test: pushforward_to_base is linear in the reduced class.
# Expectation: push(p + q) = push(p) + push(q) after reduction.
def test_pushforward_to_base_linear():
    spec = split_pair_spec(3, 1, 2)
    rng = random.Random(20240202)
    for _ in range(10):
        p, q = (splitting_psi(random_class(rng, spec.context, ("x", "y", "z")), spec) for _ in range(2))
        assert pushforward_to_base(p + q, "z", 3) == pushforward_to_base(p, "z", 3) + pushforward_to_base(q, "z", 3)

# Test: The incidence class of a point on the line and on the conic is built from invariant hypersurfaces.
# Expectation: z [S_1] [S_2] equals z (x + z)(y + 2z).
def test_split_pair_incidence_classes():
    spec = split_pair_spec(3, 1, 2)
    x, y, z = (spec.context.var(v) for v in ("x", "y", "z"))
    on_line = invariant_hypersurface_class({"x": 1, "z": 1}, (0, 0, 0), spec.context)
    on_conic = invariant_hypersurface_class({"y": 1, "z": 2}, (0, 0, 0), spec.context)
    assert z * on_line * on_conic == z * (x + z) * (y + 2 * z)
