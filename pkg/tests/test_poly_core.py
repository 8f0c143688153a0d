import json
import random
from fractions import Fraction

import pytest

from chowring.errors import (
    ContextMismatchError,
    NotMonicError,
    UnboundVariableError,
    UnknownVariableError,
)
from chowring.poly_core import (
    INTEGERS,
    NEG_INFINITY,
    RATIONALS,
    Polynomial,
    RingFactory,
    VariableContext,
    coefficient_of,
    divmod_monic,
    eval_integers,
    integers_mod,
    reduce_mod_monic,
    substitute,
)

CUBIC = VariableContext.of("h", ("c1", 1), ("c2", 2), ("c3", 3))
XY = VariableContext.of("x", "y")


def parse(text, context=CUBIC, coefficients=INTEGERS):
    return Polynomial.parse(text, context, coefficients)


# --- Coefficient Rings ---

# Test: The ring factory accepts the command line spellings of every supported ring.
# Expectation: Each name maps to the expected kind and label.
@pytest.mark.parametrize("name, modulus, label", [
    ("Z", None, "Z"),
    ("QQ", None, "Q"),
    ("F2", None, "F2"),
    ("GF3", None, "F3"),
    ("Fp", 5, "F5"),
    ("Z/4", None, "Z/4"),
])
def test_ring_factory_names(name, modulus, label):
    assert RingFactory.get_ring(name, modulus).label == label

# Test: Unknown ring names and composite moduli for F_p are rejected.
# Expectation: ValueError with an explanatory message.
@pytest.mark.parametrize("name, modulus", [("R", None), ("F4", None), ("Fp", None), ("Z", 3)])
def test_ring_factory_rejects(name, modulus):
    with pytest.raises(ValueError):
        RingFactory.get_ring(name, modulus)

# Test: Only prime moduli give fields.
# Expectation: F_3 is a field, Z/4 is not, Q is.
def test_field_flags():
    assert integers_mod(3).is_field
    assert not integers_mod(4).is_field
    assert RATIONALS.is_field
    assert not INTEGERS.is_field


# --- Contexts ---

# Test: Context validation catches duplicate names and bad weights.
# Expectation: ValueError in both cases.
def test_context_validation():
    with pytest.raises(ValueError):
        VariableContext.of("x", "x")
    with pytest.raises(ValueError):
        VariableContext(("x",), (0,))

# Test: Looking up a missing variable raises the dedicated error, which is also a KeyError.
# Expectation: UnknownVariableError naming the variable.
def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        CUBIC.index("z")
    assert isinstance(info.value, KeyError)
    assert "'z'" in str(info.value)


# --- Arithmetic and Text Form ---

# Test: Arithmetic with integer scalars and the canonical text form.
# Expectation: Terms are printed in graded lexicographic order, descending.
def test_canonical_text():
    h, c1, c2 = CUBIC.var("h"), CUBIC.var("c1"), CUBIC.var("c2")
    delta = 21 * h ** 2 - 42 * h * c1 + 9 * c2 + 18 * c1 ** 2
    assert delta.to_text() == "21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2"
    assert parse(delta.to_text()) == delta

# Test: A polynomial compares equal to an integer constant.
# Expectation: 1 == one(), 0 == zero(), and zero is falsy.
def test_integer_comparison():
    assert CUBIC.one() == 1
    assert CUBIC.zero() == 0
    assert not CUBIC.zero()

# Test: Mixing contexts is refused.
# Expectation: ContextMismatchError on addition across contexts.
def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        CUBIC.var("h") + XY.var("x")

# Test: LaTeX rendering subscripts indexed names.
# Expectation: c1 becomes c_{1}, powers use braces, rational coefficients use frac.
def test_latex():
    p = parse("5*h - 3*c1")
    assert p.to_latex() == "5 h - 3 c_{1}"
    half = CUBIC.from_terms({(2, 0, 0, 0): Fraction(1, 2)}, RATIONALS)
    assert half.to_latex() == r"\frac{1}{2} h^{2}"


# --- Grading ---

# Test: Weighted degree uses deg c_i = i.
# Expectation: h*c2 has degree 3, alpha_3 is homogeneous of degree 3.
def test_weighted_degree():
    assert parse("h*c2").weighted_degree() == 3
    alpha3 = parse("h^3 - h^2*c1 + h*c2 - 9*c3")
    assert alpha3.is_homogeneous()
    assert alpha3.weighted_degree() == 3
    assert not parse("h + c2").is_homogeneous()
    assert parse("h + c2").homogeneous_part(2) == parse("c2")

# Test: Degree of the zero polynomial.
# Expectation: Negative infinity, for both degree and weighted degree.
def test_zero_degree():
    assert CUBIC.zero().degree("h") == NEG_INFINITY
    assert CUBIC.zero().weighted_degree() == NEG_INFINITY


# --- Conversions ---

# Test: Moving into a larger context and back.
# Expectation: Round trip is the identity; dropping an occurring variable fails.
def test_to_context():
    p = parse("h*c1 + c2")
    wide = p.to_context(CUBIC.extend("y"))
    assert wide.to_context(CUBIC) == p
    with pytest.raises(ContextMismatchError):
        p.drop("c1")

# Test: Reduction modulo 2 kills even coefficients.
# Expectation: 12h - 12c1 is zero over F_2; 21h^2 + 9c2 becomes h^2 + c2.
def test_change_ring():
    assert parse("12*h - 12*c1").change_ring(integers_mod(2)).is_zero
    assert parse("21*h^2 + 9*c2").change_ring(integers_mod(2)) == parse("h^2 + c2", coefficients=integers_mod(2))
    with pytest.raises(ContextMismatchError):
        parse("h").change_ring(RATIONALS).change_ring(INTEGERS)

# Test: JSON serialization carries the schema, context and ring.
# Expectation: from_json(to_json(p)) == p, also through a JSON string.
def test_json_round_trip():
    p = parse("h^3 - h^2*c1 + h*c2 - 9*c3")
    payload = p.to_json()
    assert payload["schema"] == 1
    assert Polynomial.from_json(json.dumps(payload)) == p

# Test: Parsing a name outside the context fails.
# Expectation: UnknownVariableError.
def test_parse_unknown_name():
    with pytest.raises(UnknownVariableError):
        parse("h + z")


# --- Division by Monic Relations ---

# Test: Division by a monic relation satisfies quotient * rel + remainder == p.
# Expectation: Remainder has degree below the relation degree.
def test_divmod_monic():
    x, y = XY.var("x"), XY.var("y")
    rel = x ** 2 + y * x + 1
    p = x ** 5 - 3 * y * x ** 3 + y ** 2
    quotient, remainder = divmod_monic(p, rel, "x")
    assert quotient * rel + remainder == p
    assert remainder.degree("x") < 2
    assert reduce_mod_monic(rel * x, rel, "x").is_zero

# Test: Non-monic relations are rejected.
# Expectation: NotMonicError for 2x^2 and for a relation without x.
def test_divmod_not_monic():
    x, y = XY.var("x"), XY.var("y")
    with pytest.raises(NotMonicError):
        divmod_monic(x ** 3, 2 * x ** 2 + y, "x")
    with pytest.raises(NotMonicError):
        divmod_monic(x ** 3, y + 1, "x")

# Test: coefficient_of keeps the context.
# Expectation: Coefficient of x^1 in x*y + 3x + y is y + 3.
def test_coefficient_of():
    x, y = XY.var("x"), XY.var("y")
    assert coefficient_of(x * y + 3 * x + y, "x", 1) == y + 3


# --- Substitution and Evaluation ---

# Test: Substitution into a new context, keeping unbound variables.
# Expectation: x -> x + 2y in (x, y) applied to x^2 gives x^2 + 4xy + 4y^2.
def test_substitute():
    x, y = XY.var("x"), XY.var("y")
    assert substitute(x ** 2, {"x": x + 2 * y}) == x ** 2 + 4 * x * y + 4 * y ** 2
    single = VariableContext.of("x")
    assert substitute(x * y, {"y": 3}, single) == 3 * single.var("x")

# Test: Substituting into a context that misses an unbound variable fails.
# Expectation: UnknownVariableError.
def test_substitute_missing():
    x, y = XY.var("x"), XY.var("y")
    with pytest.raises(UnknownVariableError):
        substitute(x * y, {"x": 1}, VariableContext.of("x"))

# Test: Integer evaluation, and modular reduction of the value over Z/m.
# Expectation: Exact values; unbound variables are an error.
def test_eval_integers():
    p = parse("h^3 - h^2*c1 + h*c2 - 9*c3")
    assert eval_integers(p, {"h": 2, "c1": 1, "c2": 3, "c3": 1}) == 8 - 4 + 6 - 9
    assert eval_integers(p.change_ring(integers_mod(5)), {"h": 2, "c1": 1, "c2": 3, "c3": 1}) == 1
    with pytest.raises(UnboundVariableError):
        eval_integers(p, {"h": 1})


# --- Algebraic Properties ---

PROPERTY_SEED = 20240117
PROPERTY_SAMPLES = 25
PROPERTY_RINGS = [INTEGERS, RATIONALS, integers_mod(5)]


def random_scalar(rng, coefficients):
    if coefficients.kind == "Q":
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return rng.randint(-9, 9)


def random_polynomial(rng, context, coefficients, max_exponent=3, max_terms=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(0, max_exponent) for _ in range(context.arity))
        terms[exps] = random_scalar(rng, coefficients)
    return context.from_terms(terms, coefficients)


def random_monic(rng, coefficients, degree):
    """x^degree plus lower x-powers with coefficients in y"""
    x = XY.var("x", coefficients)
    lower = XY.zero(coefficients)
    for k in range(degree):
        lower = lower + XY.from_terms({(k, rng.randint(0, 2)): random_scalar(rng, coefficients)}, coefficients)
    return x ** degree + lower


def samples(coefficients, context=XY):
    rng = random.Random(f"{PROPERTY_SEED}-{coefficients.label}")
    for _ in range(PROPERTY_SAMPLES):
        yield rng, tuple(random_polynomial(rng, context, coefficients) for _ in range(3))


# Test: Addition and multiplication form a commutative ring over Z, Q and F_5.
# Expectation: Associativity, commutativity, distributivity, identities and inverses hold.
@pytest.mark.parametrize("coefficients", PROPERTY_RINGS, ids=lambda r: r.label)
def test_ring_axioms(coefficients):
    zero, one = XY.zero(coefficients), XY.one(coefficients)
    for _, (a, b, c) in samples(coefficients):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert (a - a).is_zero and a + (-a) == zero

# Test: Division by a random monic relation in x.
# Expectation: p = q * rel + r with deg_x r below the relation degree.
@pytest.mark.parametrize("coefficients", PROPERTY_RINGS, ids=lambda r: r.label)
def test_divmod_property(coefficients):
    for rng, (p, _, _) in samples(coefficients):
        degree = rng.randint(1, 3)
        rel = random_monic(rng, coefficients, degree)
        quotient, remainder = divmod_monic(p, rel, "x")
        assert quotient * rel + remainder == p
        assert remainder.is_zero or remainder.degree("x") < degree

# Test: Substitution is a ring homomorphism.
# Expectation: substitute(a + b) and substitute(a * b) split over the operands.
@pytest.mark.parametrize("coefficients", PROPERTY_RINGS, ids=lambda r: r.label)
def test_substitute_homomorphism(coefficients):
    for rng, (a, b, image) in samples(coefficients):
        bindings = {"x": image + XY.var("y", coefficients)}
        assert substitute(a + b, bindings) == substitute(a, bindings) + substitute(b, bindings)
        assert substitute(a * b, bindings) == substitute(a, bindings) * substitute(b, bindings)

# Test: Evaluation at integer points is a ring homomorphism.
# Expectation: Values of sums and products are sums and products of values (mod 5 over F_5).
@pytest.mark.parametrize("coefficients", PROPERTY_RINGS, ids=lambda r: r.label)
def test_eval_homomorphism(coefficients):
    modulus = coefficients.modulus if coefficients.kind == "Z/m" else None

    def reduce(value):
        return value % modulus if modulus else value

    for rng, (a, b, _) in samples(coefficients):
        point = {"x": rng.randint(-20, 20), "y": rng.randint(-20, 20)}
        assert eval_integers(a + b, point) == reduce(eval_integers(a, point) + eval_integers(b, point))
        assert eval_integers(a * b, point) == reduce(eval_integers(a, point) * eval_integers(b, point))
