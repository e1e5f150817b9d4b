import re

import pytest

from opencells.cells import line_decomposition
from opencells.decompose import linear_cdt
from opencells.errors import DimensionError
from opencells.fixtures import box_decomposition, l_shape_set, non_special_decomposition
from opencells.oracle import random_instance
from opencells.render import color, render_svg
from opencells.star import cover_open_set


def count(svg, tag):
    return len(re.findall(f"<{tag} ", svg))


def test_line_decomposition():
    svg = render_svg(line_decomposition([0]))
    assert count(svg, "line") == 2 and count(svg, "circle") == 1 and count(svg, "polygon") == 0
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_fixture_layout():
    D = non_special_decomposition()
    svg = render_svg(D, bound=4)
    by_dim = [sum(c.cell_dim == k for c in D.cells) for k in range(3)]
    assert count(svg, "circle") == by_dim[0]
    assert count(svg, "line") == by_dim[1]
    assert count(svg, "polygon") == by_dim[2]


def test_cover_polygons():
    cells = cover_open_set(l_shape_set())
    assert count(render_svg(cells), "polygon") == len(cells)


def test_deterministic_colors():
    assert render_svg(box_decomposition()) == render_svg(box_decomposition())
    assert color(0) != color(1)
    assert len({color(i) for i in range(20)}) == 20


def test_clipping_keeps_coordinates_in_frame():
    svg = render_svg(non_special_decomposition(), bound=2)
    for v in re.findall(r'(?:x1|x2|y1|y2|cx|cy)="([-0-9.]+)"', svg):
        assert 20 - 1e-6 <= float(v) <= 460 + 1e-6


def test_three_dimensions_rejected():
    with pytest.raises(DimensionError):
        render_svg(linear_cdt([random_instance(1, 3, 2, 2)], 3))
