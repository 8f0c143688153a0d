import pytest

from chowring.errors import UnsupportedCaseError
from chowring.poly_core import Polynomial
from chowring.presentation import build_presentation, is_supported
from chowring.tautological_classes import alpha_generators, chern_context

CUBIC = chern_context(3, "h")


# --- Supported Cases ---

# Test: Plane cubics need delta_2 on top of the alpha classes.
# Expectation: Four relations named alpha1, alpha2, alpha3, delta2 over Z[c1, c2, c3, h].
def test_plane_cubics():
    presentation = build_presentation(3, 3)
    assert presentation.generators == ("c1", "c2", "c3", "h")
    assert presentation.relation_names == ("alpha1", "alpha2", "alpha3", "delta2")
    assert presentation.relations[:3] == alpha_generators(3, 3, "h")
    assert presentation.relations[3] == Polynomial.parse("21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2", CUBIC)

# Test: Binary forms are presented by the alpha classes alone.
# Expectation: Two relations for every d >= 2.
@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_binary_forms(d):
    presentation = build_presentation(2, d)
    assert presentation.relation_names == ("alpha1", "alpha2")
    assert presentation.relations == alpha_generators(2, d, "h")
    assert "binary" in presentation.provenance

# Test: Quadrics are presented by the alpha classes alone.
# Expectation: n relations for n = 3, 4.
@pytest.mark.parametrize("n", [3, 4])
def test_quadrics(n):
    presentation = build_presentation(n, 2)
    assert len(presentation.relations) == n
    assert "quadrics" in presentation.provenance

# Test: Which (n, d) have a known presentation.
# Expectation: Quadrics, binary forms and plane cubics only.
@pytest.mark.parametrize("n, d, expected", [(3, 3, True), (5, 2, True), (2, 7, True), (3, 4, False), (4, 3, False)])
def test_is_supported(n, d, expected):
    assert is_supported(n, d) is expected


# --- Unsupported Cases ---

# Test: Plane quartics have no presentation here.
# Expectation: UnsupportedCaseError naming the case as work in progress.
def test_plane_quartics_refused():
    with pytest.raises(UnsupportedCaseError, match="work in progress"):
        build_presentation(3, 4)


# --- Rendering ---

# Test: Text, LaTeX and dictionary forms of the cubic presentation.
# Expectation: Each form lists every relation.
def test_rendering():
    presentation = build_presentation(3, 3)
    text = presentation.to_text()
    assert text.splitlines()[0] == "A*(X_3,3) = Z[c1, c2, c3, h] / (alpha1, alpha2, alpha3, delta2)"
    assert "delta2 = 21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2" in text
    assert presentation.to_latex().startswith(r"\mathbb{Z}[c_{1}, c_{2}, c_{3}, h]")
    payload = presentation.to_dict()
    assert payload["schema"] == 1
    assert [r["name"] for r in payload["relations"]] == ["alpha1", "alpha2", "alpha3", "delta2"]
    assert Polynomial.from_json(payload["relations"][3]["polynomial"]) == presentation.relations[3]
