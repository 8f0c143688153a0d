#!/usr/bin/env python
"""
Command line front end for the chowring package.

    python app.py alpha --n 3 --d 3
    python app.py delta --n 3 --d 3 --mu 1,2 --format json
    python app.py presentation --n 3 --d 3
    python app.py membership --n 3 --d 3 --target delta2 --ring F2
    python app.py verify --only main-theorem

Exit codes: 0 success, 1 verification failure, 2 usage or size error,
3 exactness diagnostic.
"""

import argparse
import json
import logging
import sys
from typing import Any, List, Optional, Sequence

from chowring.config import Limits
from chowring.errors import ChowRingError, ExactnessError
from chowring.graded_ideal_membership import MembershipCertificate, slice_membership
from chowring.hypersurface_combinatorics import Partition
from chowring.localization_engine import BASE_VAR, METHODS, delta_class
from chowring.poly_core import SCHEMA_VERSION, CoefficientRing, Polynomial, RingFactory
from chowring.presentation import build_presentation
from chowring.tautological_classes import alpha_generators, chern_context, total_relation
from chowring.verification import GROUPS, run_checks

logger = logging.getLogger("chowring.app")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_EXACTNESS = 0, 1, 2, 3
FORMATS = ("text", "json", "latex")
REPORT_FORMATS = ("text", "json")


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def emit(payload: Any) -> None:
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps(payload, indent=2, sort_keys=False))


def render_polynomial(name: str, p: Polynomial, fmt: str) -> str:
    if fmt == "latex":
        return f"{name} = {p.to_latex()}"
    return f"{name} = {p.to_text()}"


def _check_degrees(args, limits: Limits) -> None:
    if args.n < 2 or args.d < 2:
        raise ValueError(f"Need n >= 2 and d >= 2, got n={args.n}, d={args.d}")
    limits.check_size(args.n, args.d, args.unsafe_sizes)


def cmd_alpha(args, limits: Limits) -> int:
    _check_degrees(args, limits)
    alphas = alpha_generators(args.n, args.d, BASE_VAR)
    if args.format == "json":
        emit({"schema": SCHEMA_VERSION, "n": args.n, "d": args.d, "alpha": [a.to_json() for a in alphas]})
    else:
        names = [f"\\alpha_{{{i}}}" if args.format == "latex" else f"alpha{i}" for i in range(1, args.n + 1)]
        emit("\n".join(render_polynomial(name, a, args.format) for name, a in zip(names, alphas)))
    return EXIT_OK


def cmd_delta(args, limits: Limits) -> int:
    limits.check_size(args.n, args.d, args.unsafe_sizes)
    mu = Partition.parse(args.mu)
    delta = delta_class(args.n, args.d, mu, jobs=limits.jobs, method=args.method)
    if args.format == "json":
        emit({"schema": SCHEMA_VERSION, "n": args.n, "d": args.d, "partition": mu.label, "delta": delta.to_json()})
    else:
        name = f"\\delta_{{{','.join(map(str, mu.parts))}}}" if args.format == "latex" else f"delta_{mu.label}"
        emit(render_polynomial(name, delta, args.format))
    return EXIT_OK


def cmd_presentation(args, limits: Limits) -> int:
    limits.check_size(args.n, args.d, args.unsafe_sizes)
    presentation = build_presentation(args.n, args.d)
    if args.format == "json":
        emit(presentation.to_dict())
    elif args.format == "latex":
        emit(presentation.to_latex())
    else:
        emit(presentation.to_text())
    return EXIT_OK


def select_ring(name: Optional[str], modulus: Optional[int]) -> CoefficientRing:
    if name is None:
        name = "Fp" if modulus is not None else "Z"
    return RingFactory.get_ring(name, modulus)


def membership_target(text: str, n: int, d: int, var: str = BASE_VAR, jobs: int = 1) -> Polynomial:
    """Named targets delta2, 2delta2, delta32, alpha<i>, P(var), or a polynomial in h, c1..cn"""
    key = text.strip()
    if key == "P":
        return total_relation(n, d, var, "c")
    if key in ("delta2", "2delta2"):
        delta = delta_class(n, d, Partition((1, d - 1)), jobs=jobs)
        return 2 * delta if key == "2delta2" else delta
    if key == "delta32":
        return delta_class(n, d, Partition((1,) * d), jobs=jobs)
    if key.startswith("alpha") and key[5:].isdigit():
        i = int(key[5:])
        if not 1 <= i <= n:
            raise ValueError(f"alpha index must be in 1..{n}, got {i}")
        return alpha_generators(n, d, BASE_VAR)[i - 1]
    return Polynomial.parse(key, chern_context(n, BASE_VAR))


def render_certificate(certificate: MembershipCertificate, fmt: str, names: Sequence[str]) -> Any:
    if fmt == "json":
        payload = certificate.to_dict()
        payload["generators"] = list(names)
        return payload
    lines = [f"{certificate.verdict} over {certificate.ring} (degree {certificate.degree}, "
             f"slice {certificate.shape[0]}x{certificate.shape[1]}, rank {certificate.rank})"]
    for name, cofactor in zip(names, certificate.cofactors):
        lines.append(f"  {name}: " + (cofactor.to_latex() if fmt == "latex" else cofactor.to_text()))
    if certificate.obstruction:
        lines.append(f"  obstruction at {certificate.obstruction}")
    return "\n".join(lines)


def cmd_membership(args, limits: Limits) -> int:
    _check_degrees(args, limits)
    ring = select_ring(args.ring, args.modulus)
    var = "x" if args.target == "P" else BASE_VAR
    target = membership_target(args.target, args.n, args.d, var, limits.jobs)
    generators: List[Polynomial] = list(alpha_generators(args.n, args.d, var))
    names = [f"alpha{i}" for i in range(1, args.n + 1)]
    if args.with_delta:
        generators.append(delta_class(args.n, args.d, Partition((1, args.d - 1)), jobs=limits.jobs))
        names.append("delta2")
    certificate = slice_membership(target, generators, ring, limits.slice_limit)
    emit(render_certificate(certificate, args.format, names))
    return EXIT_OK


def cmd_verify(args, limits: Limits) -> int:
    only = [key.strip() for item in (args.only or []) for key in item.split(",") if key.strip()]
    report = run_checks(only, jobs=limits.jobs)
    if args.format == "json":
        emit(report.to_dict())
    else:
        emit(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowring",
        description="Integral Chow rings of smooth hypersurfaces: alpha and delta classes, "
                    "presentations, ideal membership certificates and a verification suite")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--jobs", type=int, default=None, help="Worker threads (default CHOWRING_JOBS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def sized(name: str, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        command.add_argument("--n", type=int, required=True, help="Number of variables")
        command.add_argument("--d", type=int, required=True, help="Degree of the forms")
        command.add_argument("--format", choices=FORMATS, default="text")
        command.add_argument("--unsafe-sizes", action="store_true", help="Skip the n/d size guard")
        return command

    sized("alpha", "Print the alpha generators").set_defaults(handler=cmd_alpha)

    delta = sized("delta", "Print the class delta_mu of forms splitting with pattern mu")
    delta.add_argument("--mu", required=True, help="Partition of d, e.g. 1,2")
    delta.add_argument("--method", choices=METHODS, default="moments",
                       help="moments (closed form) or fixed-points (one summand per fixed point)")
    delta.set_defaults(handler=cmd_delta)

    sized("presentation", "Print a Chow ring presentation").set_defaults(handler=cmd_presentation)

    membership = sized("membership", "Decide membership of a class in the alpha ideal")
    membership.add_argument("--target", required=True,
                            help="delta2, 2delta2, delta32, alpha<i>, P or a polynomial in h, c1..cn")
    membership.add_argument("--ring", default=None, help="Z, Q, Fp or F<p> (default Z)")
    membership.add_argument("--modulus", type=int, default=None, help="Prime for Fp")
    membership.add_argument("--with-delta", action="store_true", help="Add delta_{1,d-1} to the generators")
    membership.set_defaults(handler=cmd_membership)

    verify = sub.add_parser("verify", help="Run the verification suite")
    verify.add_argument("--only", action="append", help=f"Check ids or groups: {', '.join(GROUPS)}")
    verify.add_argument("--format", choices=REPORT_FORMATS, default="text")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        limits = Limits.from_env().with_overrides(jobs=args.jobs)
        return args.handler(args, limits)
    except ExactnessError as exc:
        logger.error("exactness diagnostic: %s", exc)
        return EXIT_EXACTNESS
    except (ChowRingError, ValueError, KeyError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
