"""
Verification Module

A registry of named checks, one per computational identity of the integral
Chow ring of plane cubics and of the general machinery behind it. Checks run
independently: a failure or an exception becomes a report entry and the
remaining checks still run. The report is sorted by check id.
"""

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from chowring.errors import UnsupportedCaseError
from chowring.graded_ideal_membership import (
    check_consistency,
    minimal_generators_check,
    relation_polynomial_membership,
    slice_membership,
    verify_identity,
)
from chowring.hypersurface_combinatorics import Partition, count_with_support, partitions_of
from chowring.localization_engine import (
    check_restriction_convention,
    delta_class,
    factor_names,
    localization_unit_check,
    push_pull_defect,
    pushforward_class,
    pushforward_product_map,
)
from chowring.poly_core import (
    INTEGERS,
    RATIONALS,
    SCHEMA_VERSION,
    Polynomial,
    coefficient_of,
    eval_integers,
    integers_mod,
    product,
    substitute,
)
from chowring.presentation import build_presentation
from chowring.symmetric_basis import expand_chern, orbit_sum, symmetrize, to_chern_basis
from chowring.tautological_classes import (
    AmbientRingSpec,
    alpha_generators,
    chern_context,
    invariant_hypersurface_class,
    partition_class,
    push_along_factor,
    root_context,
    splitting_psi,
    split_pair_spec,
    total_relation,
    two_factor_spec,
    universal_singular_class,
    ztilde_class,
)

logger = logging.getLogger(__name__)

GROUPS = ("main-theorem", "localization", "relations", "properties")
PASS, FAIL, ERROR = "pass", "fail", "error"

CUBIC = chern_context(3, "h")
LINE_CONIC = Partition((1, 2))
THREE_LINES = Partition((1, 1, 1))
THREE_LINE_EXPONENTS = tuple((a, b, c) for a in range(3) for b in range(a + 1) for c in range(b + 1))
ORACLE_POINTS = 20
ORACLE_RANGE = 1000
ORACLE_SEED = 20240101

EXPECTED_ALPHA = ("12*h - 12*c1", "6*h^2 - 4*h*c1 - 6*c2", "h^3 - h^2*c1 + h*c2 - 9*c3")
EXPECTED_DELTA_2 = "21*h^2 - 42*h*c1 + 9*c2 + 18*c1^2"
EXPECTED_DELTA_32 = "15*h^3 - 45*c1*h^2 + (40*c1^2 + 15*c2)*h - 12*c1^3 - 6*c1*c2 - 27*c3"
EXPECTED_PSI = "(2*x + y - 2*c1)*z^2 + (x*y - 2*c2)*z - 2*c3"


@dataclass(frozen=True)
class Outcome:
    passed: bool
    computed: str
    expected: str


@dataclass(frozen=True)
class Check:
    id: str
    group: str
    anchor: str
    run: Callable[[], Outcome]


@dataclass(frozen=True)
class CheckResult:
    id: str
    group: str
    anchor: str
    status: str
    computed: str
    expected: str
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "group": self.group,
            "anchor": self.anchor,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "seconds": round(self.seconds, 3),
        }


@dataclass(frozen=True)
class VerificationReport:
    results: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        columns = ["id", "group", "anchor", "status", "computed", "expected", "seconds"]
        return pd.DataFrame([r.to_dict() for r in self.results], columns=columns)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "passed": self.passed,
            "total": len(self.results),
            "failed": len(self.failures),
            "checks": self.to_frame().to_dict(orient="records"),
        }

    def to_text(self, width: int = 60) -> str:
        frame = self.to_frame()
        for column in ("computed", "expected"):
            frame[column] = frame[column].str.slice(0, width)
        summary = f"{len(self.results) - len(self.failures)}/{len(self.results)} checks passed"
        return frame.to_string(index=False) + "\n" + summary


CHECKS: Dict[str, Check] = {}


def check(check_id: str, group: str, anchor: str):
    """Register a zero-argument function returning an Outcome"""
    if group not in GROUPS:
        raise ValueError(f"Unknown check group '{group}'")

    def register(fn: Callable[[], Outcome]) -> Callable[[], Outcome]:
        if check_id in CHECKS:
            raise ValueError(f"Duplicate check id '{check_id}'")
        CHECKS[check_id] = Check(check_id, group, anchor, fn)
        return fn

    return register


def _cubic(text: str) -> Polynomial:
    return Polynomial.parse(text, CUBIC)


def _compare(computed: Polynomial, expected: Polynomial) -> Outcome:
    return Outcome(computed == expected, computed.to_text(), expected.to_text())


def _all(pairs: Iterable[Tuple[str, bool]]) -> Outcome:
    pairs = list(pairs)
    failed = [label for label, ok in pairs if not ok]
    return Outcome(not failed, "failed: " + ", ".join(failed) if failed else f"{len(pairs)} ok", "all ok")


def _delta_2() -> Polynomial:
    return delta_class(3, 3, LINE_CONIC)


def _delta_32() -> Polynomial:
    return delta_class(3, 3, THREE_LINES)


def _alphas() -> Tuple[Polynomial, ...]:
    return alpha_generators(3, 3, "h")


def _line_conic_push(e1: int, e2: int) -> Polynomial:
    return pushforward_product_map(3, 3, LINE_CONIC, (e1, e2), basis="c")


def _three_lines_push(v: Tuple[int, int, int]) -> Polynomial:
    return pushforward_product_map(3, 3, THREE_LINES, v, basis="c")


def _split_pair_cycle(spec: AmbientRingSpec) -> Polynomial:
    """z [S_1] [S_2]: the point of P(E) lies on the line and on the conic"""
    context = spec.context
    on_line = invariant_hypersurface_class({"x": 1, "z": 1}, (0,) * spec.n, context)
    on_conic = invariant_hypersurface_class({"y": 1, "z": 2}, (0,) * spec.n, context)
    return context.var("z") * on_line * on_conic


def _ztilde_reduced(n: int, d: int) -> Polynomial:
    return splitting_psi(to_chern_basis(ztilde_class(n, d), n), two_factor_spec(n, d))


def _factorization_sides(n: int, d: int) -> Tuple[Polynomial, Polynomial]:
    """P_{d}(x) P_{1,d-1}(x) and prod_i Q_[d](x, l_i), for d >= 3"""
    context = root_context(n, "x")
    q = universal_singular_class(n, d, "l")
    lhs = partition_class(n, Partition((d,)), "x") * partition_class(n, Partition((1, d - 1)), "x")
    rhs = product((substitute(q, {"y": context.var(f"l{i}")}, context) for i in range(1, n + 1)), context.one())
    return lhs, rhs



def _verdict(p: Polynomial, generators: Sequence[Polynomial], ring=INTEGERS) -> bool:
    return slice_membership(p, generators, ring).is_member


# --- main theorem ---

@check("alpha-3-3", "main-theorem", "alpha_1, alpha_2, alpha_3 of plane cubics")
def check_alpha_cubics() -> Outcome:
    computed = _alphas()
    expected = tuple(_cubic(text) for text in EXPECTED_ALPHA)
    return Outcome(computed == expected, "; ".join(a.to_text() for a in computed), "; ".join(EXPECTED_ALPHA))


@check("delta-2", "main-theorem", "class of cubics containing a line, 18 summands")
def check_delta_2() -> Outcome:
    return _compare(_delta_2(), _cubic(EXPECTED_DELTA_2))


@check("cofactors-2delta2", "main-theorem", "2 delta_2 = (5h - 3c1) alpha_1 - 3 alpha_2")
def check_two_delta_2() -> Outcome:
    a1, a2, _ = _alphas()
    ok = verify_identity(2 * _delta_2(), [(_cubic("5*h - 3*c1"), a1), (_cubic("-3"), a2)])
    return Outcome(ok, "identity holds" if ok else "identity fails", "identity holds")


@check("torsion-triple", "main-theorem", "delta_2 outside (alpha) over Z, 2 delta_2 inside")
def check_torsion() -> Outcome:
    alphas, delta = _alphas(), _delta_2()
    single = {ring.label: slice_membership(delta, alphas, ring)
              for ring in (INTEGERS, integers_mod(2), RATIONALS)}
    doubled = {ring.label: slice_membership(2 * delta, alphas, ring)
               for ring in (INTEGERS, integers_mod(2), integers_mod(3), RATIONALS)}
    check_consistency(single)
    check_consistency(doubled)
    return _all([
        ("delta2 not in (alpha) over Z", not single["Z"].is_member),
        ("delta2 not in (alpha) over F2", not single["F2"].is_member),
        ("delta2 in (alpha) over Q", single["Q"].is_member),
        ("2delta2 in (alpha) over Z", doubled["Z"].is_member),
    ])


@check("independence", "main-theorem", "alpha_1, alpha_2, alpha_3, delta_2 are independent generators")
def check_independence() -> Outcome:
    alphas, delta = _alphas(), _delta_2()
    report = minimal_generators_check((*alphas, delta), (integers_mod(2), integers_mod(3), RATIONALS),
                                      names=("alpha1", "alpha2", "alpha3", "delta2"))
    witnesses = {v.name: v.independence_witnesses for v in report.verdicts}
    return _all([
        ("all independent over Z", report.all_independent),
        ("delta2 witnessed mod 2", "F2" in witnesses["delta2"]),
        ("alpha2 not in (alpha1, delta2) mod 3",
         not _verdict(alphas[1], (alphas[0], delta), integers_mod(3))),
    ])


@check("presentation-3-3", "main-theorem", "Z[c1, c2, c3, h] / (alpha_1, alpha_2, alpha_3, delta_2)")
def check_presentation_cubics() -> Outcome:
    presentation = build_presentation(3, 3)
    expected = tuple(_cubic(text) for text in (*EXPECTED_ALPHA, EXPECTED_DELTA_2))
    return Outcome(presentation.relations == expected,
                   "; ".join(r.to_text() for r in presentation.relations),
                   "; ".join((*EXPECTED_ALPHA, EXPECTED_DELTA_2)))


# --- localization ---

@check("unit-classes", "localization", "sum of [Q_v] / c_top over fixed points is 1, n <= 3, k <= 3")
def check_units() -> Outcome:
    return _all((f"n={n} k={k}", localization_unit_check(n, k).passed)
                for n in range(1, 4) for k in range(1, 4))


@check("restriction-convention", "localization", "[Q_v] restricts to the tangent top Chern class")
def check_restriction() -> Outcome:
    return _all((f"n={n} d={d}", check_restriction_convention(n, d)) for n in range(1, 4) for d in range(1, 4))


@check("delta-3-2", "localization", "class of three-line cubics, 27 summands divided by 6")
def check_delta_32() -> Outcome:
    return _compare(_delta_32(), _cubic(EXPECTED_DELTA_32))


@check("cofactors-delta32", "localization", "delta_(3,2) = ((h - c1)^2 + c2) alpha_1 - c1 alpha_2 + 3 alpha_3")
def check_delta_32_cofactors() -> Outcome:
    a1, a2, a3 = _alphas()
    ok = verify_identity(_delta_32(), [(_cubic("(h - c1)^2 + c2"), a1), (_cubic("-c1"), a2), (_cubic("3"), a3)])
    return Outcome(ok, "identity holds" if ok else "identity fails", "identity holds")


@check("pushforward-three-lines", "localization", "pi_3*(1) = 6 delta_(3,2), pi_3*(xi_1) = 2h delta_(3,2)")
def check_three_lines() -> Outcome:
    delta, h = _delta_32(), CUBIC.var("h")
    return _all([
        ("pi3*(1)", pushforward_product_map(3, 3, THREE_LINES, basis="c") == 6 * delta),
        ("pi3*(xi1)", pushforward_product_map(3, 3, THREE_LINES, (1, 0, 0), basis="c") == 2 * h * delta),
    ])


@check("pushforward-three-lines-in-alpha", "localization", "pi_3*(xi^v) in (alpha) over Z, v2 <= v1 <= 2, v3 <= v2")
def check_three_lines_membership() -> Outcome:
    alphas = _alphas()
    return _all((f"v={v}", _verdict(_three_lines_push(v), alphas)) for v in THREE_LINE_EXPONENTS)


@check("three-lines-orbit-sums", "localization", "pi_3* of a symmetrized monomial is a multiple of pi_3*(xi^v)")
def check_three_lines_orbits() -> Outcome:
    names = factor_names(3)
    context = root_context(3, *names)
    pairs = []
    for v in ((1, 0, 0), (1, 1, 0), (2, 1, 0), (2, 1, 1)):
        monomial = context.monomial(v + (0, 0, 0))
        base = _three_lines_push(v)
        orbit = count_with_support(Partition(tuple(x for x in v if x)), 3)
        symmetric = pushforward_class(3, 3, THREE_LINES, symmetrize(monomial, names), basis="c")
        summed = pushforward_class(3, 3, THREE_LINES, orbit_sum(monomial, names), basis="c")
        pairs.append((f"symmetrize v={v}", symmetric == 6 * base))
        pairs.append((f"orbit sum v={v}", summed == orbit * base))
    return _all(pairs)


@check("three-lines-triple-product", "localization", "pi_3*(xi1 xi2 xi3) lies in 3 (alpha)")
def check_triple_product() -> Outcome:
    terms = _three_lines_push((1, 1, 1)).terms()
    divisible = all(value % 3 == 0 for value in terms.values())
    third = CUBIC.from_terms({m: value // 3 for m, value in terms.items()})
    return _all([
        ("coefficients divisible by 3", divisible),
        ("one third in (alpha)", divisible and _verdict(third, _alphas())),
    ])


@check("three-lines-top-class", "localization", "pi_3*(xi1^2 xi2^2 xi3^2) is monic of degree 9 in h")
def check_top_class() -> Outcome:
    pushed = _three_lines_push((2, 2, 2))
    degree = pushed.degree("h")
    leading = coefficient_of(pushed, "h", 9)
    return Outcome(degree == 9 and leading == 1 and pushed.is_homogeneous(),
                   f"degree {degree}, leading {leading.to_text()}", "degree 9, leading 1")


@check("pushforward-line-conic", "localization", "push-pull on P(W_1) x P(W_2) against h and h^2")
def check_line_conic() -> Outcome:
    delta, h = _delta_2(), CUBIC.var("h")
    return _all([
        ("pi2*(h1) + pi2*(h2) = h delta2", _line_conic_push(1, 0) + _line_conic_push(0, 1) == h * delta),
        ("squares = h^2 delta2",
         _line_conic_push(2, 0) + 2 * _line_conic_push(1, 1) + _line_conic_push(0, 2) == h ** 2 * delta),
    ])


@check("push-pull-defect", "localization", "sum_j pi_*(xi^(e + unit_j)) = h pi_*(xi^e) mod P_[d](h)")
def check_push_pull() -> Outcome:
    cases = [(3, 3, LINE_CONIC, (0, 0)), (3, 3, LINE_CONIC, (1, 0)), (3, 3, THREE_LINES, (0, 0, 0)),
             (2, 3, Partition((1, 2)), (0, 1)), (2, 4, Partition((2, 2)), (0, 0))]
    return _all((f"n={n} d={d} mu={mu} e={e}", push_pull_defect(n, d, mu, e).is_zero) for n, d, mu, e in cases)


# --- relations ---

@check("lower-cases", "relations", "alpha classes for binary forms, d = 2..6")
def check_lower_cases() -> Outcome:
    context = chern_context(2, "h")
    pairs = []
    for d in range(2, 7):
        expected = (Polynomial.parse(f"{2 * (d - 1)}*h - {d * (d - 1)}*c1", context),
                    Polynomial.parse(f"h^2 - c1*h - {d * (d - 2)}*c2", context))
        pairs.append((f"d={d}", alpha_generators(2, d, "h") == expected))
    return _all(pairs)


@check("relation-in-alpha", "relations", "P_[d](x) in (alpha_1(x), ..., alpha_n(x)) over Z")
def check_relation_membership() -> Outcome:
    return _all((f"n={n} d={d}", relation_polynomial_membership(n, d).is_member)
                for n, d in ((3, 3), (2, 2), (2, 3)))


@check("factorization", "relations", "P_{d}(x) P_{1,d-1}(x) = prod_i Q_[d](x, l_i) for (2, 3), (3, 3), (3, 4)")
def check_factorization() -> Outcome:
    pairs = []
    for n, d in ((2, 3), (3, 3), (3, 4)):
        lhs, rhs = _factorization_sides(n, d)
        pairs.append((f"n={n} d={d}", lhs == rhs))
    return _all(pairs)


@check("psi-splitting", "relations", "psi(t [S_1] [S_2]) on P(W_1) x P(W_2) x P(E)")
def check_psi() -> Outcome:
    spec = split_pair_spec(3, 1, 2)
    return _compare(splitting_psi(_split_pair_cycle(spec), spec), Polynomial.parse(EXPECTED_PSI, spec.context))


@check("ztilde-psi", "relations", "psi([Z~]) = Q_[d] on P(W_d) x P(E), n <= 3, d <= 4")
def check_ztilde() -> Outcome:
    return _all((f"n={n} d={d}", _ztilde_reduced(n, d) == universal_singular_class(n, d))
                for n in (2, 3) for d in (2, 3, 4))


@check("split-pair-pushforward", "relations", "sigma_2*(t [S_2]) = 2x + y - 2c1 and its image in (alpha)")
def check_split_pair() -> Outcome:
    spec = split_pair_spec(3, 1, 2)
    fibre = push_along_factor(_split_pair_cycle(spec), spec, "z")
    expected_fibre = Polynomial.parse("2*x + y - 2*c1", fibre.context)
    target = chern_context(3, "xi1", "xi2")
    gamma = substitute(fibre, {"x": target.var("xi1"), "y": target.var("xi2")}, target)
    pushed = pushforward_class(3, 3, LINE_CONIC, expand_chern(gamma, 3), basis="c")
    combination = 2 * _line_conic_push(1, 0) + _line_conic_push(0, 1) - 2 * CUBIC.var("c1") * _delta_2()
    alphas = _alphas()
    second = (2 * _line_conic_push(1, 1) + _line_conic_push(0, 2)
              - 2 * CUBIC.var("c1") * _line_conic_push(0, 1))
    return _all([
        ("fibre pushforward", fibre == expected_fibre),
        ("push-pull", pushed == combination),
        ("2 pi2*(h1) + pi2*(h2) - 2c1 delta2 in (alpha)", _verdict(combination, alphas)),
        ("2 pi2*(h1 h2) + pi2*(h2^2) - 2c1 pi2*(h2) in (alpha)", _verdict(second, alphas)),
    ])


@check("line-conic-in-ideal", "relations", "pi_2*(h_1), pi_2*(h_1^2) in (alpha, delta_2) over Z")
def check_line_conic_membership() -> Outcome:
    generators = (*_alphas(), _delta_2())
    return _all([
        ("pi2*(h1)", _verdict(_line_conic_push(1, 0), generators)),
        ("pi2*(h1^2)", _verdict(_line_conic_push(2, 0), generators)),
    ])


@check("rational-deltas", "relations", "delta_mu in (alpha) tensor Q for n = d = 3")
def check_rational_deltas() -> Outcome:
    alphas = _alphas()
    return _all((str(mu), _verdict(delta_class(3, 3, mu), alphas, RATIONALS))
                for mu in partitions_of(3) if mu.s >= 2)


@check("presentations", "relations", "quadrics and binary forms are presented by the alpha classes")
def check_presentations() -> Outcome:
    pairs = [(f"n={n} d={d}", build_presentation(n, d).relations == alpha_generators(n, d, "h"))
             for n, d in ((2, 2), (3, 2), (4, 2), (2, 3), (2, 5))]
    try:
        build_presentation(3, 4)
        pairs.append(("(3,4) refused", False))
    except UnsupportedCaseError:
        pairs.append(("(3,4) refused", True))
    return _all(pairs)


# --- properties ---

@check("partition-product", "properties", "prod over mu of P_mu = P_[d], n <= 3, d <= 4")
def check_partition_product() -> Outcome:
    pairs = []
    for n in range(1, 4):
        context = root_context(n, "x")
        for d in range(1, 5):
            total = product((partition_class(n, mu, "x") for mu in partitions_of(d)), context.one())
            pairs.append((f"n={n} d={d}", total == total_relation(n, d, "x")))
    return _all(pairs)


@check("top-coefficient", "properties", "Q_[d] has no y^n term, n <= 4, d <= 5")
def check_top_coefficient() -> Outcome:
    return _all((f"n={n} d={d}", coefficient_of(universal_singular_class(n, d), "y", n).is_zero)
                for n in range(1, 5) for d in range(2, 6))


@check("symmetric-round-trip", "properties", "to_chern_basis and expand_chern invert each other")
def check_round_trip(samples: int = 100) -> Outcome:
    rng = random.Random(ORACLE_SEED)
    pairs = []
    for k in range(samples):
        n = rng.randint(1, 3)
        context = root_context(n, "h")
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = tuple(rng.randint(0, 2) for _ in range(n + 1))
            terms[exps] = rng.randint(-5, 5)
        p = orbit_sum(context.from_terms(terms))
        pairs.append((f"sample {k}", expand_chern(to_chern_basis(p, n), n) == p))
    return _all(pairs)


@check("evaluation-oracle", "properties", "identities agree at random integer points in [-1000, 1000]")
def check_oracle() -> Outcome:
    rng = random.Random(ORACLE_SEED + 1)
    alphas = _alphas()
    a1, a2, a3 = alphas
    delta_2, delta_32 = _delta_2(), _delta_32()
    h = CUBIC.var("h")
    identities = [
        ("delta2", delta_2, _cubic(EXPECTED_DELTA_2)),
        ("delta32", delta_32, _cubic(EXPECTED_DELTA_32)),
        ("2delta2 cofactors", 2 * delta_2, _cubic("5*h - 3*c1") * a1 - 3 * a2),
        ("delta32 cofactors", delta_32, _cubic("(h - c1)^2 + c2") * a1 - CUBIC.var("c1") * a2 + 3 * a3),
        ("factorization", *_factorization_sides(3, 3)),
        ("psi of Z~", _ztilde_reduced(3, 3), universal_singular_class(3, 3)),
        ("pi3*(1) = 6 delta32", _three_lines_push((0, 0, 0)), 6 * delta_32),
        ("line-conic push-pull", _line_conic_push(1, 0) + _line_conic_push(0, 1), h * delta_2),
        ("pi3*(xi1 xi3^2) methods", pushforward_product_map(3, 3, THREE_LINES, (1, 0, 2)),
         pushforward_product_map(3, 3, THREE_LINES, (1, 0, 2), method="fixed-points")),
    ]
    for i, (alpha_c, alpha_l) in enumerate(zip(alphas, alpha_generators(3, 3, "h", "l")), start=1):
        identities.append((f"alpha{i} bases", expand_chern(alpha_c, 3), alpha_l))
    pairs = []
    for label, lhs, rhs in identities:
        points = [{name: rng.randint(-ORACLE_RANGE, ORACLE_RANGE) for name in lhs.context.names}
                  for _ in range(ORACLE_POINTS)]
        pairs.append((label, lhs.context == rhs.context and
                      all(eval_integers(lhs, pt) == eval_integers(rhs, pt) for pt in points)))
    return _all(pairs)


def select_checks(only: Optional[Sequence[str]] = None) -> List[Check]:
    """Checks whose group or id is listed in `only`, all of them if it is empty"""
    if only:
        unknown = [key for key in only if key not in GROUPS and key not in CHECKS]
        if unknown:
            raise ValueError(f"Unknown check or group {unknown}; groups are {list(GROUPS)}")
    return [CHECKS[key] for key in sorted(CHECKS)
            if not only or key in only or CHECKS[key].group in only]


def run_check(item: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        outcome = item.run()
        status = PASS if outcome.passed else FAIL
        computed, expected = outcome.computed, outcome.expected
    except Exception as exc:
        logger.warning("check %s raised %s", item.id, type(exc).__name__)
        status, computed, expected = ERROR, f"{type(exc).__name__}: {exc}", ""
    seconds = time.perf_counter() - start
    logger.info("check %s: %s in %.2fs", item.id, status, seconds)
    return CheckResult(item.id, item.group, item.anchor, status, computed, expected, seconds)


def run_checks(only: Optional[Sequence[str]] = None, jobs: int = 1) -> VerificationReport:
    selected = select_checks(only)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_check, selected))
    else:
        results = [run_check(item) for item in selected]
    return VerificationReport(tuple(sorted(results, key=lambda r: r.id)))
