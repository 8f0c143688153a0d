"""
Polynomial Core Module

Exact sparse polynomials over a named, weighted variable context. Arithmetic
is delegated to sympy's sparse polynomial rings over ZZ, QQ and GF(m); this
module adds the parts the Chow ring computations need on top of them:
weighted grading, cross-context substitution, division by a relation that is
monic in one variable, integer evaluation and a canonical text/JSON form.
"""

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, ZZ, Symbol, isprime, oo
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from chowring.errors import (
    ContextMismatchError,
    NotMonicError,
    UnboundVariableError,
    UnknownVariableError,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
NEG_INFINITY = -oo

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class CoefficientRing:
    """One of Z, Q or Z/m. Integers mod a prime p is the field F_p."""
    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Z/m"):
            raise ValueError(f"Unknown coefficient ring kind '{self.kind}'")
        if self.kind == "Z/m":
            if self.modulus is None or self.modulus < 2:
                raise ValueError(f"Modulus must be at least 2, got {self.modulus}")
        elif self.modulus is not None:
            raise ValueError(f"Ring {self.kind} takes no modulus")

    @property
    def domain(self):
        if self.kind == "Z":
            return ZZ
        if self.kind == "Q":
            return QQ
        return GF(self.modulus, symmetric=False)

    @property
    def is_field(self) -> bool:
        return self.kind == "Q" or (self.kind == "Z/m" and isprime(self.modulus))

    @property
    def label(self) -> str:
        if self.kind != "Z/m":
            return self.kind
        return f"F{self.modulus}" if isprime(self.modulus) else f"Z/{self.modulus}"

    def to_python(self, value) -> Scalar:
        """Convert a domain element to int (Z, Z/m) or Fraction (Q)"""
        if self.kind == "Q":
            fraction = Fraction(int(QQ.numer(value)), int(QQ.denom(value)))
            return fraction.numerator if fraction.denominator == 1 else fraction
        return int(value)

    def from_python(self, value: Scalar):
        """Convert an int or Fraction into a domain element"""
        if isinstance(value, Fraction):
            if self.kind == "Q":
                return QQ(value.numerator, value.denominator)
            if value.denominator == 1:
                return self.domain.convert(value.numerator)
            if self.kind == "Z/m":
                inverse = pow(value.denominator, -1, self.modulus)
                return self.domain.convert(value.numerator * inverse)
            raise ValueError(f"{value} is not an integer")
        return self.domain.convert(int(value))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "modulus": self.modulus, "label": self.label}

    def __str__(self) -> str:
        return self.label


INTEGERS = CoefficientRing("Z")
RATIONALS = CoefficientRing("Q")


def integers_mod(modulus: int) -> CoefficientRing:
    return CoefficientRing("Z/m", modulus)


class RingFactory:
    """Factory to create a coefficient ring from its command line name"""
    @staticmethod
    def get_ring(name: str, modulus: Optional[int] = None) -> CoefficientRing:
        key = name.strip()
        rings = {
            "Z": lambda: INTEGERS,
            "ZZ": lambda: INTEGERS,
            "Q": lambda: RATIONALS,
            "QQ": lambda: RATIONALS,
        }
        if key in rings:
            if modulus is not None:
                raise ValueError(f"Ring '{name}' takes no modulus")
            return rings[key]()
        match = re.fullmatch(r"(?:F|GF|Z/)(\d+)", key)
        if match:
            value = int(match.group(1))
            if modulus is not None and modulus != value:
                raise ValueError(f"Ring '{name}' conflicts with modulus {modulus}")
            modulus = value
        elif key not in ("Fp", "Z/m"):
            raise ValueError(f"Coefficient ring '{name}' not implemented yet")
        if modulus is None:
            raise ValueError(f"Ring '{name}' needs a modulus")
        if key.startswith("F") and not isprime(modulus):
            raise ValueError(f"F_p needs a prime modulus, got {modulus}")
        return integers_mod(modulus)


@lru_cache(maxsize=None)
def _poly_ring(names: Tuple[str, ...], coefficients: CoefficientRing) -> PolyRing:
    return PolyRing(tuple(Symbol(name) for name in names), coefficients.domain, grlex)


@dataclass(frozen=True)
class VariableContext:
    """Ordered variable names with a positive grading weight each"""
    names: Tuple[str, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.names:
            raise ValueError("A variable context needs at least one variable")
        if len(self.names) != len(self.weights):
            raise ValueError(f"{len(self.names)} names but {len(self.weights)} weights")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Variable names must be distinct: {self.names}")
        for name, weight in zip(self.names, self.weights):
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError(f"Invalid variable name '{name}'")
            if weight < 1:
                raise ValueError(f"Weight of '{name}' must be at least 1, got {weight}")

    @classmethod
    def of(cls, *variables: Union[str, Tuple[str, int]]) -> "VariableContext":
        """Build from names (weight 1) or (name, weight) pairs"""
        names, weights = [], []
        for entry in variables:
            if isinstance(entry, str):
                names.append(entry)
                weights.append(1)
            else:
                names.append(entry[0])
                weights.append(entry[1])
        return cls(tuple(names), tuple(weights))

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(f"Variable '{name}' is not in context {self.names}") from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def ring(self, coefficients: CoefficientRing = INTEGERS) -> PolyRing:
        return _poly_ring(self.names, coefficients)

    def extend(self, *variables: Union[str, Tuple[str, int]]) -> "VariableContext":
        other = VariableContext.of(*variables)
        return VariableContext(self.names + other.names, self.weights + other.weights)

    def without(self, *names: str) -> "VariableContext":
        for name in names:
            self.index(name)
        kept = [(n, w) for n, w in zip(self.names, self.weights) if n not in names]
        return VariableContext.of(*kept)

    def zero(self, coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        return Polynomial(self, coefficients, self.ring(coefficients).zero)

    def one(self, coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        return Polynomial(self, coefficients, self.ring(coefficients).one)

    def constant(self, value: Scalar, coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        ring = self.ring(coefficients)
        return Polynomial(self, coefficients, ring.ground_new(coefficients.from_python(value)))

    def var(self, name: str, coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        return Polynomial(self, coefficients, self.ring(coefficients).gens[self.index(name)])

    def monomial(self, exponents: Sequence[int], coefficient: Scalar = 1,
                 coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        return self.from_terms({tuple(exponents): coefficient}, coefficients)

    def from_terms(self, terms: Mapping[Sequence[int], Scalar],
                   coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        ring = self.ring(coefficients)
        converted: Dict[Exponents, Any] = {}
        for exps, value in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.arity or min(exps, default=0) < 0:
                raise ValueError(f"Exponent vector {exps} does not fit context {self.names}")
            coeff = coefficients.from_python(value)
            converted[exps] = converted[exps] + coeff if exps in converted else coeff
        return Polynomial(self, coefficients, ring.from_dict(converted))

    def linear_form(self, coefficients_by_name: Mapping[str, Scalar],
                    coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        """Sum of value * variable for each named variable"""
        terms: Dict[Exponents, Scalar] = {}
        for name, value in coefficients_by_name.items():
            exps = [0] * self.arity
            exps[self.index(name)] = 1
            terms[tuple(exps)] = value
        return self.from_terms(terms, coefficients)

    def to_dict(self) -> Dict[str, Any]:
        return {"names": list(self.names), "weights": list(self.weights)}


def _latex_name(name: str) -> str:
    match = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if not match:
        return name
    stem, index = match.groups()
    stem = "\\xi" if stem == "xi" else stem
    return f"{stem}_{{{index}}}"


@dataclass(frozen=True, eq=False)
class Polynomial:
    """An immutable polynomial bound to a context and a coefficient ring"""
    context: VariableContext
    coefficients: CoefficientRing
    element: Any

    # --- arithmetic ---

    def _coerce(self, other) -> Any:
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextMismatchError(
                    f"Context mismatch: {self.context.names} vs {other.context.names}")
            if other.coefficients != self.coefficients:
                raise ContextMismatchError(
                    f"Coefficient ring mismatch: {self.coefficients} vs {other.coefficients}")
            return other.element
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            ring = self.context.ring(self.coefficients)
            return ring.ground_new(self.coefficients.from_python(other))
        return NotImplemented

    def _wrap(self, element) -> "Polynomial":
        return Polynomial(self.context, self.coefficients, element)

    def __add__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is NotImplemented else self._wrap(self.element + value)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is NotImplemented else self._wrap(self.element - value)

    def __rsub__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is NotImplemented else self._wrap(value - self.element)

    def __mul__(self, other):
        value = self._coerce(other)
        return NotImplemented if value is NotImplemented else self._wrap(self.element * value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.element)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a natural number, got {exponent}")
        return self._wrap(self.element ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.element == self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.context == other.context and self.coefficients == other.coefficients
                and self.element == other.element)

    def __hash__(self) -> int:
        return hash((self.context, self.coefficients, frozenset(self.element.items())))

    def __bool__(self) -> bool:
        return bool(self.element)

    @property
    def is_zero(self) -> bool:
        return not self.element

    # --- inspection ---

    def terms(self) -> Dict[Exponents, Scalar]:
        """Exponent vector to Python coefficient"""
        return {tuple(m): self.coefficients.to_python(c) for m, c in self.element.items()}

    def sorted_terms(self) -> List[Tuple[Exponents, Scalar]]:
        """Terms in canonical (graded lexicographic, descending) order"""
        return [(tuple(m), self.coefficients.to_python(c)) for m, c in self.element.terms()]

    def coefficient(self, exponents: Sequence[int]) -> Scalar:
        return self.terms().get(tuple(exponents), 0)

    def variables(self) -> Tuple[str, ...]:
        """Names of the variables that actually occur"""
        used = set()
        for monom in self.element.keys():
            used.update(i for i, e in enumerate(monom) if e)
        return tuple(name for i, name in enumerate(self.context.names) if i in used)

    def degree(self, var: str):
        i = self.context.index(var)
        if not self.element:
            return NEG_INFINITY
        return max(monom[i] for monom in self.element.keys())

    def weighted_degree(self):
        if not self.element:
            return NEG_INFINITY
        weights = self.context.weights
        return max(sum(w * e for w, e in zip(weights, monom)) for monom in self.element.keys())

    def is_homogeneous(self) -> bool:
        weights = self.context.weights
        degrees = {sum(w * e for w, e in zip(weights, monom)) for monom in self.element.keys()}
        return len(degrees) <= 1

    def homogeneous_part(self, degree: int) -> "Polynomial":
        weights = self.context.weights
        kept = {m: c for m, c in self.element.items()
                if sum(w * e for w, e in zip(weights, m)) == degree}
        ring = self.context.ring(self.coefficients)
        return self._wrap(ring.from_dict(kept))

    # --- conversion ---

    def to_context(self, target: VariableContext) -> "Polynomial":
        """Re-express in another context; every occurring variable must exist there"""
        if target == self.context:
            return self
        positions = []
        for i, name in enumerate(self.context.names):
            positions.append(target.names.index(name) if name in target.names else None)
        ring = target.ring(self.coefficients)
        moved: Dict[Exponents, Any] = {}
        for monom, coeff in self.element.items():
            exps = [0] * target.arity
            for i, e in enumerate(monom):
                if not e:
                    continue
                if positions[i] is None:
                    raise ContextMismatchError(
                        f"Variable '{self.context.names[i]}' occurs but is missing from {target.names}")
                exps[positions[i]] = e
            moved[tuple(exps)] = coeff
        return Polynomial(target, self.coefficients, ring.from_dict(moved))

    def drop(self, *names: str) -> "Polynomial":
        return self.to_context(self.context.without(*names))

    def change_ring(self, target: CoefficientRing) -> "Polynomial":
        """Lift Z to Q, or reduce Z or Q modulo m"""
        if target == self.coefficients:
            return self
        allowed = (self.coefficients.kind == "Z" and target.kind in ("Q", "Z/m")) or \
                  (self.coefficients.kind == "Q" and target.kind == "Z/m")
        if not allowed:
            raise ContextMismatchError(f"Cannot convert coefficients from {self.coefficients} to {target}")
        return self.context.from_terms(self.terms(), target)

    # --- serialization ---

    def to_text(self) -> str:
        if not self.element:
            return "0"
        pieces = []
        for monom, value in self.sorted_terms():
            factors = [name if e == 1 else f"{name}^{e}"
                       for name, e in zip(self.context.names, monom) if e]
            magnitude = abs(value)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            pieces.append(("-" if value < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r}, ring={self.coefficients}, vars={self.context.names})"

    def to_latex(self) -> str:
        if not self.element:
            return "0"
        out = ""
        for k, (monom, value) in enumerate(self.sorted_terms()):
            factors = "".join(
                _latex_name(name) if e == 1 else f"{_latex_name(name)}^{{{e}}}"
                for name, e in zip(self.context.names, monom) if e)
            magnitude = abs(value)
            if isinstance(magnitude, Fraction):
                number = f"\\frac{{{magnitude.numerator}}}{{{magnitude.denominator}}}"
            else:
                number = str(magnitude)
            body = factors if factors and magnitude == 1 else number + (" " + factors if factors else "")
            if k == 0:
                out = ("-" if value < 0 else "") + body
            else:
                out += (" - " if value < 0 else " + ") + body
        return out

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "context": self.context.to_dict(),
            "ring": self.coefficients.to_dict(),
            "terms": [{"coeff": str(value), "exps": list(monom)} for monom, value in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, payload: Union[str, Mapping[str, Any]]) -> "Polynomial":
        data = json.loads(payload) if isinstance(payload, str) else payload
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"Unsupported polynomial schema {data.get('schema')}")
        context = VariableContext(tuple(data["context"]["names"]), tuple(data["context"]["weights"]))
        ring_data = data["ring"]
        coefficients = CoefficientRing(ring_data["kind"], ring_data.get("modulus"))
        terms = {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]}
        return context.from_terms(terms, coefficients)

    @classmethod
    def parse(cls, text: str, context: VariableContext,
              coefficients: CoefficientRing = INTEGERS) -> "Polynomial":
        """Read the canonical text form, e.g. '21*h^2 - 42*h*c1 + 9*c2'"""
        ring = context.ring(coefficients)
        local = {name: symbol for name, symbol in zip(context.names, ring.symbols)}
        try:
            expr = parse_expr(text.replace("^", "**"), local_dict=local)
            element = ring.from_expr(expr)
        except (SyntaxError, TypeError) as exc:
            raise ValueError(f"Cannot parse polynomial '{text}': {exc}") from None
        except ValueError:
            raise UnknownVariableError(f"'{text}' is not a polynomial in {context.names}") from None
        return cls(context, coefficients, element)


class Division(NamedTuple):
    quotient: Polynomial
    remainder: Polynomial


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def product(factors: Iterable[Polynomial], start: Polynomial) -> Polynomial:
    """Multiply the factors onto start"""
    result = start
    for factor in factors:
        result = result * factor
    return result


def coefficient_of(p: Polynomial, var: str, k: int) -> Polynomial:
    """Coefficient of var^k, returned in the same context (var no longer occurs)"""
    i = p.context.index(var)
    ring = p.context.ring(p.coefficients)
    picked = {}
    for monom, coeff in p.element.items():
        if monom[i] == k:
            picked[monom[:i] + (0,) + monom[i + 1:]] = coeff
    return Polynomial(p.context, p.coefficients, ring.from_dict(picked))


def divmod_monic(p: Polynomial, rel: Polynomial, var: str) -> Division:
    """Divide p by a relation monic in var; quotient*rel + remainder == p"""
    p._coerce(rel)
    m = rel.degree(var)
    if m == NEG_INFINITY or m < 1:
        raise NotMonicError(f"Relation has no positive degree in '{var}'")
    lead = coefficient_of(rel, var, m)
    if lead != 1:
        raise NotMonicError(f"Relation is not monic in '{var}': leading coefficient {lead}")
    i = p.context.index(var)
    ring = p.context.ring(p.coefficients)
    rest = p.element
    quotient = ring.zero
    while rest:
        k = max(monom[i] for monom in rest.keys())
        if k < m:
            break
        top = {monom[:i] + (k - m,) + monom[i + 1:]: coeff
               for monom, coeff in rest.items() if monom[i] == k}
        shift = ring.from_dict(top)
        quotient = quotient + shift
        rest = rest - shift * rel.element
    return Division(p._wrap(quotient), p._wrap(rest))


def reduce_mod_monic(p: Polynomial, rel: Polynomial, var: str) -> Polynomial:
    return divmod_monic(p, rel, var).remainder


def substitute(p: Polynomial, bindings: Mapping[str, Union[Polynomial, int]],
               target: Optional[VariableContext] = None) -> Polynomial:
    """Replace variables by polynomials; unbound variables map to themselves in target"""
    for name in bindings:
        p.context.index(name)
    images = [value for value in bindings.values() if isinstance(value, Polynomial)]
    if target is None:
        target = images[0].context if images else p.context
    ring = target.ring(p.coefficients)
    gens: Dict[int, Any] = {}
    for i, name in enumerate(p.context.names):
        if name in bindings:
            value = bindings[name]
            if isinstance(value, Polynomial):
                if value.coefficients != p.coefficients:
                    raise ContextMismatchError(
                        f"Image of '{name}' is over {value.coefficients}, expected {p.coefficients}")
                gens[i] = value.to_context(target).element
            else:
                gens[i] = ring.ground_new(p.coefficients.from_python(value))
        elif name in target.names:
            gens[i] = ring.gens[target.index(name)]
    powers: Dict[Tuple[int, int], Any] = {}

    def power(i: int, e: int):
        if (i, e) not in powers:
            if i not in gens:
                raise UnknownVariableError(
                    f"Variable '{p.context.names[i]}' is neither bound nor present in {target.names}")
            powers[(i, e)] = gens[i] ** e
        return powers[(i, e)]

    result = ring.zero
    for monom, coeff in p.element.items():
        term = ring.ground_new(coeff)
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        result = result + term
    return Polynomial(target, p.coefficients, result)


def eval_integers(p: Polynomial, point: Mapping[str, int]) -> Scalar:
    """Exact value at an integer point; every occurring variable must be bound"""
    for name in point:
        p.context.index(name)
    missing = [name for name in p.variables() if name not in point]
    if missing:
        raise UnboundVariableError(f"Unbound variables {missing} in evaluation point")
    values = [point.get(name, 0) for name in p.context.names]
    total: Scalar = 0
    for monom, coeff in p.terms().items():
        term = coeff
        for value, e in zip(values, monom):
            if e:
                term *= value ** e
        total += term
    if p.coefficients.kind == "Z/m":
        total %= p.coefficients.modulus
    return total
