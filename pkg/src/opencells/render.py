"""SVG pictures of decompositions and covers in Q^1 and Q^2."""
from __future__ import annotations

from fractions import Fraction

from .arith import POS_INF, is_inf
from .cells import Decomposition, Graph, Interval, Point
from .errors import DimensionError
from .star import OpenBand, OpenInterval

SIZE = 480
MARGIN = 20
_GOLDEN = 0.618033988749895


def color(i: int) -> str:
    """Deterministic, well spread hue for the ``i``-th object."""
    hue = (i * _GOLDEN) % 1.0
    return f"hsl({round(hue * 360)},65%,45%)"


def default_bound(obj) -> int:
    """Half-width of a square window containing every finite feature."""
    values = []
    if isinstance(obj, Decomposition):
        for level in obj.tower():
            for c in level.cells:
                values.extend(abs(float(x)) for x in c.sample_point())
    else:
        for U in obj:
            values.extend(abs(float(x)) for x in _open_cell_numbers(U))
    return max(2, int(max(values, default=0)) + 2)


def _open_cell_numbers(U):
    while isinstance(U, OpenBand):
        for c, _ in U.lower.pieces:
            yield from c.sample_point()
        U = U.base
    for v in (U.lo, U.hi):
        if not is_inf(v):
            yield v


class _Canvas:
    def __init__(self, bound: float, dim: int):
        self.b = float(bound)
        self.dim = dim
        self.items = []

    def px(self, x: float) -> float:
        return round(MARGIN + (x + self.b) / (2 * self.b) * (SIZE - 2 * MARGIN), 2)

    def py(self, y: float) -> float:
        return round(SIZE - MARGIN - (y + self.b) / (2 * self.b) * (SIZE - 2 * MARGIN), 2)

    def polygon(self, pts, fill: str):
        if len(pts) < 3:
            return
        coords = " ".join(f"{self.px(x)},{self.py(y)}" for x, y in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="0.35" stroke="none"/>')

    def line(self, p, q, stroke: str):
        self.items.append(f'<line x1="{self.px(p[0])}" y1="{self.py(p[1])}" x2="{self.px(q[0])}" '
                          f'y2="{self.py(q[1])}" stroke="{stroke}" stroke-width="2"/>')

    def dot(self, p, fill: str):
        self.items.append(f'<circle cx="{self.px(p[0])}" cy="{self.py(p[1])}" r="3" fill="{fill}"/>')

    def svg(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">')
        frame = (f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE - 2 * MARGIN}" '
                 f'height="{SIZE - 2 * MARGIN}" fill="white" stroke="#999"/>')
        return "\n".join([head, frame, *self.items, "</svg>"]) + "\n"


def _clip_x(lo, hi, b: float):
    a = -b if is_inf(lo) else max(float(lo), -b)
    z = b if is_inf(hi) else min(float(hi), b)
    return a, z


def _at(w, x: float, b: float) -> float:
    if is_inf(w):
        return b if w is POS_INF else -b
    return float(w.coefs[0]) * x + float(w.const)


def _clip_polygon(pts, b: float) -> list:
    """Clip a polygon to the square ``[-b, b]^2`` (Sutherland-Hodgman)."""
    edges = [(0, -1, -b), (0, 1, b), (1, -1, -b), (1, 1, b)]
    for axis, sign, limit in edges:
        if not pts:
            break
        inside = (lambda p: sign * p[axis] <= sign * limit)
        out = []
        for k, p in enumerate(pts):
            q = pts[k - 1]
            if inside(p):
                if not inside(q):
                    out.append(_cross(q, p, axis, limit))
                out.append(p)
            elif inside(q):
                out.append(_cross(q, p, axis, limit))
        pts = out
    return pts


def _cross(p, q, axis: int, limit: float):
    t = (limit - p[axis]) / (q[axis] - p[axis])
    return tuple(p[i] + t * (q[i] - p[i]) for i in range(2))


def _chain(pieces, b: float) -> list:
    """Points of a piecewise affine wall over the x-range of its pieces."""
    pts = []
    for c, w in pieces:
        if isinstance(c, Point):
            x = float(c.value)
            if -b <= x <= b:
                pts.append((x, _at(w, x, b)))
        else:
            a, z = _clip_x(c.lo, c.hi, b)
            if a < z:
                pts.append((a, _at(w, a, b)))
                pts.append((z, _at(w, z, b)))
    return sorted(set(pts))


def _draw_cell(cv: _Canvas, c, paint: str):
    b = cv.b
    if isinstance(c, Point):
        cv.dot((float(c.value), 0.0), paint)
    elif isinstance(c, Interval):
        a, z = _clip_x(c.lo, c.hi, b)
        if a < z:
            cv.line((a, 0.0), (z, 0.0), paint)
    elif isinstance(c.base, Point):
        x = float(c.base.value)
        if isinstance(c, Graph):
            y = _at(c.wall, x, b)
            if -b <= y <= b:
                cv.dot((x, y), paint)
        else:
            lo, hi = max(_at(c.lo, x, b), -b), min(_at(c.hi, x, b), b)
            if lo < hi:
                cv.line((x, lo), (x, hi), paint)
    else:
        a, z = _clip_x(c.base.lo, c.base.hi, b)
        if a >= z:
            return
        if isinstance(c, Graph):
            seg = _clip_polygon([(a, _at(c.wall, a, b)), (z, _at(c.wall, z, b))], b)
            if len(seg) >= 2:
                cv.line(seg[0], seg[-1], paint)
        else:
            pts = [(a, _at(c.lo, a, b)), (z, _at(c.lo, z, b)), (z, _at(c.hi, z, b)), (a, _at(c.hi, a, b))]
            cv.polygon(_clip_polygon(pts, b), paint)


def _draw_open_cell(cv: _Canvas, U, paint: str):
    b = cv.b
    if isinstance(U, OpenInterval):
        a, z = _clip_x(U.lo, U.hi, b)
        if a < z:
            cv.line((a, 0.0), (z, 0.0), paint)
        return
    lower = _chain(U.lower.pieces, b)
    upper = _chain(U.upper.pieces, b)
    cv.polygon(_clip_polygon(lower + upper[::-1], b), paint)


def render_svg(obj, bound=None) -> str:
    """SVG of a decomposition or a list of open cells, ambient dimension at most 2."""
    if isinstance(obj, Decomposition):
        dim = obj.dim
    else:
        obj = list(obj)
        dim = obj[0].dim if obj else 1
    if dim > 2:
        raise DimensionError(f"rendering supports dimension at most 2, got {dim}")
    cv = _Canvas(Fraction(bound) if bound is not None else default_bound(obj), dim)
    if isinstance(obj, Decomposition):
        # 2-cells first so strokes and dots stay visible
        order = sorted(range(len(obj.cells)), key=lambda i: -_cell_dim(obj.cells[i]))
        for i in order:
            _draw_cell(cv, obj.cells[i], color(i))
    else:
        for i, U in enumerate(obj):
            _draw_open_cell(cv, U, color(i))
    return cv.svg()


def _cell_dim(c) -> int:
    return c.cell_dim
