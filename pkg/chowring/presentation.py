"""
Presentation Module

Integral Chow ring presentations Z[c1..cn, h] / (relations) of the stack of
smooth degree-d hypersurfaces in P^(n-1), for the cases where the ideal of
relations is known: quadrics, binary forms and plane cubics.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from chowring.errors import UnsupportedCaseError
from chowring.hypersurface_combinatorics import Partition
from chowring.localization_engine import BASE_VAR, delta_class
from chowring.poly_core import SCHEMA_VERSION, Polynomial
from chowring.symmetric_basis import chern_names
from chowring.tautological_classes import alpha_generators

logger = logging.getLogger(__name__)

SPLIT_LINE_CONIC = Partition((1, 2))

PROVENANCE_CUBICS = "plane cubics: alpha_1, alpha_2, alpha_3 and delta_2 generate the ideal of the discriminant"
PROVENANCE_QUADRICS = "quadrics (d = 2): the alpha classes generate the ideal of the discriminant"
PROVENANCE_BINARY = "binary forms (n = 2): the alpha classes generate the ideal of the discriminant"


@dataclass(frozen=True)
class Presentation:
    n: int
    d: int
    generators: Tuple[str, ...]
    relation_names: Tuple[str, ...]
    relations: Tuple[Polynomial, ...]
    provenance: str

    def to_text(self) -> str:
        lines = [f"A*(X_{self.n},{self.d}) = Z[{', '.join(self.generators)}] / ("
                 + ", ".join(self.relation_names) + ")"]
        lines += [f"  {name} = {relation.to_text()}" for name, relation in zip(self.relation_names, self.relations)]
        lines.append(f"  [{self.provenance}]")
        return "\n".join(lines)

    def to_latex(self) -> str:
        ring = r"\mathbb{Z}[" + ", ".join(_latex_generator(g) for g in self.generators) + "]"
        body = ", ".join(relation.to_latex() for relation in self.relations)
        return f"{ring} / \\left({body}\\right)"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "generators": list(self.generators),
            "relations": [{"name": name, "polynomial": relation.to_json(), "text": relation.to_text()}
                          for name, relation in zip(self.relation_names, self.relations)],
            "provenance": self.provenance,
        }


def _latex_generator(name: str) -> str:
    return f"c_{{{name[1:]}}}" if name.startswith("c") else name


def is_supported(n: int, d: int) -> bool:
    return (n, d) == (3, 3) or (d == 2 and n >= 2) or (n == 2 and d >= 2)


def build_presentation(n: int, d: int) -> Presentation:
    if not is_supported(n, d):
        raise UnsupportedCaseError(
            f"No presentation for (n, d) = ({n}, {d}): the alpha classes do not generate the full ideal "
            "beyond quadrics, binary forms and plane cubics, and this case is current work in progress"
        )
    alphas = alpha_generators(n, d, BASE_VAR)
    names = tuple(f"alpha{i}" for i in range(1, n + 1))
    relations: Tuple[Polynomial, ...] = tuple(alphas)
    if (n, d) == (3, 3):
        relations += (delta_class(n, d, SPLIT_LINE_CONIC),)
        names += ("delta2",)
        provenance = PROVENANCE_CUBICS
    elif d == 2:
        provenance = PROVENANCE_QUADRICS
    else:
        provenance = PROVENANCE_BINARY
    logger.info("presentation for n=%d d=%d with %d relations", n, d, len(relations))
    return Presentation(n, d, (*chern_names(n), BASE_VAR), names, relations, provenance)
