from fractions import Fraction
from pathlib import Path

import pytest

from atfkit.diagram import mutation_chain, rational_blowdown_diagram
from atfkit.errors import DegenerateGeometry
from atfkit.hull import boundary_hull
from atfkit.markov import MarkovTriple
from atfkit.render import RenderSpec, render_chain, render_diagram, render_hull

GOLDEN = Path(__file__).parent / "golden"


def test_fmt_rounds_half_to_even():
    from atfkit.render import _fmt

    assert _fmt(Fraction(1, 3)) == "0.333333"
    assert _fmt(Fraction(-1, 3)) == "-0.333333"
    assert _fmt(Fraction(1, 2_000_000)) == "0.000000"  # ties to even
    assert _fmt(Fraction(3, 2_000_000)) == "0.000002"  # 1.5e-6 -> 2e-6
    assert _fmt(Fraction(5)) == "5.000000"


def test_render_diagram_is_deterministic():
    d = rational_blowdown_diagram(MarkovTriple(1, 2, 5))
    assert render_diagram(d) == render_diagram(d)


def test_render_diagram_structure():
    d = rational_blowdown_diagram(MarkovTriple(1, 1, 2))
    svg = render_diagram(d).decode()
    assert svg.startswith('<?xml version="1.0"')
    assert svg.count('class="cut"') == 3
    assert svg.count('class="node"') == 3
    assert svg.count('class="fiber"') == 1
    assert svg.rstrip().endswith("</svg>")


def test_render_spec_validation():
    with pytest.raises(DegenerateGeometry):
        RenderSpec(width=0)


def test_render_hull_contains_labels():
    h = boundary_hull(MarkovTriple(1, 1, 2))
    svg = render_hull(h).decode()
    for v in h.hull.vertices:
        assert f"({v.x},{v.y})" in svg


def test_render_chain_panels():
    diagrams, _ = mutation_chain(MarkovTriple(1, 2, 5))
    svg = render_chain(diagrams).decode()
    assert svg.count('class="fiber"') == 3
    assert 'width="1440"' in svg


def test_render_chain_empty_rejected():
    with pytest.raises(DegenerateGeometry):
        render_chain([])


def test_chain_golden_bytes():
    diagrams, _ = mutation_chain(MarkovTriple(1, 2, 5))
    expected = (GOLDEN / "chain_1_2_5.svg").read_bytes()
    assert render_chain(diagrams) == expected
