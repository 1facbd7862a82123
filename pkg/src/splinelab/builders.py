"""Fixture complexes and seeded random generators."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .complexes import (CentralStar, ComplexValidationError, PlanarComplex, SmoothnessAssignment, validate)
from .polyring import HomogeneousForm

F = Fraction


def build_q_example() -> PlanarComplex:
    """Inner triangle inside a larger one, joined by three trapezoids."""
    verts = [(-1, -1), (1, -1), (0, 1), (-3, -2), (3, -2), (0, 3)]
    facets = [(0, 1, 2), (0, 3, 4, 1), (1, 4, 5, 2), (2, 5, 3, 0)]
    return PlanarComplex(verts, facets)


DELTA_INNER_EDGES = ((0, 1), (0, 2), (1, 2))


def build_delta_example() -> tuple[PlanarComplex, SmoothnessAssignment]:
    """Triangulated annulus with smoothness 2 on the inner triangle, 3 elsewhere."""
    verts = [(-1, -1), (1, -1), (0, 1), (-3, -2), (3, -2), (0, 3)]
    facets = [
        (0, 1, 2),
        (0, 3, 4), (0, 4, 1),
        (1, 4, 5), (1, 5, 2),
        (2, 5, 3), (2, 3, 0),
    ]
    alpha = SmoothnessAssignment(interior=3, boundary=-1, overrides={e: 2 for e in DELTA_INNER_EDGES})
    return PlanarComplex(verts, facets), alpha


def build_octahedron() -> CentralStar:
    """The eight coordinate orthants' cones, a complete fan."""
    verts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    facets = [(x, y, z) for x in (0, 1) for y in (2, 3) for z in (4, 5)]
    return CentralStar(verts, facets)


def build_hemisphere() -> CentralStar:
    """The four upper orthant cones of the octahedral fan."""
    verts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1)]
    facets = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4)]
    return CentralStar(verts, facets)


def build_schlegel_cube() -> PlanarComplex:
    """Schlegel-type diagram of the cube with one face removed."""
    inner = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    outer = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
    facets = [(0, 1, 2, 3)] + [(i, i + 4, (i + 1) % 4 + 4, (i + 1) % 4) for i in range(4)]
    return PlanarComplex(inner + outer, facets)


def _circle_point(theta: float, max_den: int) -> tuple[Fraction, Fraction]:
    """A rational point exactly on the unit circle near angle theta."""
    if abs(math.cos(theta / 2)) < 1e-12:
        return (F(-1), F(0))
    t = F(math.tan(theta / 2)).limit_denominator(max_den)
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def build_ngon_ring(n: int, perturb: float | None = None, seed: int = 0, max_den: int = 1000) -> PlanarComplex:
    """Regular-ish n-gon inside a copy scaled by 2, corresponding vertices joined.

    Vertices are rational points on circles.  With ``perturb`` the outer
    vertices are shifted by rational offsets of that magnitude, so the spoke
    lines no longer all pass through the centre.
    """
    if n < 3:
        raise ValueError("an n-gon ring needs n >= 3")
    inner = [_circle_point(2 * math.pi * k / n, max_den) for k in range(n)]
    outer = [(2 * x, 2 * y) for x, y in inner]
    if perturb:
        rng = random.Random(seed)
        outer = [(x + F(rng.uniform(-perturb, perturb)).limit_denominator(max_den),
                  y + F(rng.uniform(-perturb, perturb)).limit_denominator(max_den)) for x, y in outer]
    facets = [tuple(range(n))] + [(k, n + k, n + (k + 1) % n, (k + 1) % n) for k in range(n)]
    cx = PlanarComplex(inner + outer, facets)
    rep = validate(cx)
    if not rep.ok:
        raise ComplexValidationError("n-gon ring is degenerate: " + "; ".join(rep.degeneracies), rep)
    return cx


TRAPEZOID = ((-2, 3), (2, 3), (1, 2), (-1, 2))


def _bar(p, q) -> HomogeneousForm:
    """Line through p, q in coordinates (x0, x1, x2), restricted to x2 = 0."""
    a = (F(1), F(p[0]), F(p[1]))
    b = (F(1), F(q[0]), F(q[1]))
    n = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    return HomogeneousForm.linear([n[0], n[1], 0])


def build_reflection(polygon=TRAPEZOID, tau: int = 0) -> PlanarComplex:
    """Glue a polygon A to its mirror image across y = 0.

    ``tau`` indexes the edge (polygon[tau], polygon[tau + 1]) of A farthest
    from the mirror; it must be horizontal.  Each other edge g of A becomes
    the quadrilateral spanned by g and its mirror image.  Facet 0 is A.

    Raises ValueError when tau is not horizontal, when A does not lie
    strictly on one side of y = 0 within the strip below tau, or when two
    edges other than tau have lines meeting y = 0 in the same point.
    """
    pts = [(F(x), F(y)) for x, y in polygon]
    k = len(pts)
    if k < 3:
        raise ValueError("polygon needs at least three vertices")
    p, q = pts[tau % k], pts[(tau + 1) % k]
    if p[1] != q[1]:
        raise ValueError("tau must be parallel to the mirror line y = 0")
    h = p[1]
    if h == 0 or any(v[1] * h <= 0 or abs(v[1]) > abs(h) for v in pts):
        raise ValueError("A must lie strictly between y = 0 and the line of tau")
    others = [i for i in range(k) if i != tau % k]
    bars = [_bar(pts[i], pts[(i + 1) % k]) for i in others]
    for i in range(len(bars)):
        for j in range(i + 1, len(bars)):
            if bars[i].proportional_to(bars[j]):
                raise ValueError(f"edges {others[i]} and {others[j]} meet y = 0 in the same point")
    mirror = [(x, -y) for x, y in pts]
    facets = [tuple(range(k)), tuple(k + i for i in reversed(range(k)))]
    for i in others:
        j = (i + 1) % k
        facets.append((i, j, k + j, k + i))
    cx = PlanarComplex(pts + mirror, facets)
    rep = validate(cx)
    if not rep.ok:
        raise ComplexValidationError("reflection is degenerate: " + "; ".join(rep.degeneracies), rep)
    return cx


def _random_alpha(rng: random.Random, cx: PlanarComplex, rmax: int) -> SmoothnessAssignment:
    emap = cx.edge_map()
    overrides = {}
    for e, fs in emap.items():
        if len(fs) == 2:
            overrides[e] = rng.randint(0, rmax)
        elif rng.random() < 0.25:
            overrides[e] = rng.randint(0, 1)
    return SmoothnessAssignment(interior=0, boundary=-1, overrides=overrides)


def _rand_frac(rng: random.Random, lo: float, hi: float, den: int = 16) -> Fraction:
    return F(rng.randint(int(lo * den), int(hi * den)), den)


def _closed_fan(rng: random.Random, m: int) -> PlanarComplex:
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(m))
        gaps = [(angles[(i + 1) % m] - angles[i]) % (2 * math.pi) for i in range(m)]
        if max(gaps) < math.pi * 0.9 and min(gaps) > 0.2:
            break
    pts = [(F(0), F(0))]
    for a in angles:
        r = _rand_frac(rng, 1, 3)
        x, y = _circle_point(a, 50)
        pts.append((r * x, r * y))
    facets = [(0, 1 + i, 1 + (i + 1) % m) for i in range(m)]
    return PlanarComplex(pts, facets)


def _open_fan(rng: random.Random, m: int) -> PlanarComplex:
    span = rng.uniform(0.8, 1.7) * math.pi
    angles = sorted(rng.uniform(0, span) for _ in range(m - 1)) + [0.0, span]
    angles = sorted(angles)
    pts = [(F(0), F(0))]
    for a in angles:
        r = _rand_frac(rng, 1, 3)
        x, y = _circle_point(a, 50)
        pts.append((r * x, r * y))
    facets = [(0, 1 + i, 2 + i) for i in range(m)]
    return PlanarComplex(pts, facets)


def _strip(rng: random.Random, m: int) -> PlanarComplex:
    pts = []
    for i in range(m + 2):
        base = F(1) if i % 2 else F(0)
        pts.append((F(i) + _rand_frac(rng, -0.3, 0.3), base + _rand_frac(rng, -0.25, 0.25)))
    facets = [(i, i + 1, i + 2) for i in range(m)]
    return PlanarComplex(pts, facets)


def build_random_fan(seed: int, m: int | None = None, rmax: int = 3) -> tuple[PlanarComplex, SmoothnessAssignment]:
    """Seeded random triangular fan or strip with mixed smoothness <= rmax.

    The shape is a closed fan around an interior vertex, an open fan, or a
    strip of triangles.  Draws are repeated until the complex validates,
    so the output depends only on the arguments.
    """
    rng = random.Random(seed)
    kind = rng.choice(["closed", "open", "strip"])
    if m is None:
        m = rng.randint(3, 5) if kind == "closed" else rng.randint(2, 4)
    if kind == "closed" and m < 3:
        kind = "open"
    for _ in range(100):
        if kind == "closed":
            cx = _closed_fan(rng, m)
        elif kind == "open":
            cx = _open_fan(rng, m)
        else:
            cx = _strip(rng, m)
        if validate(cx).ok:
            return cx, _random_alpha(rng, cx, rmax)
    raise RuntimeError("could not draw a valid complex")


def build_random_star(seed: int, m: int | None = None) -> CentralStar:
    """Seeded perturbed bipyramid over an m-gon: a complete simplicial fan."""
    rng = random.Random(seed)
    if m is None:
        m = rng.randint(3, 5)
    for _ in range(100):
        verts = []
        for k in range(m):
            x, y = _circle_point(2 * math.pi * k / m + rng.uniform(-0.3, 0.3), 20)
            r = _rand_frac(rng, 1, 2, 4)
            verts.append((r * x, r * y, _rand_frac(rng, -0.3, 0.3, 8)))
        verts.append((_rand_frac(rng, -0.3, 0.3, 8), _rand_frac(rng, -0.3, 0.3, 8), F(1)))
        verts.append((_rand_frac(rng, -0.3, 0.3, 8), _rand_frac(rng, -0.3, 0.3, 8), F(-1)))
        top, bot = m, m + 1
        facets = [(top, k, (k + 1) % m) for k in range(m)] + [(bot, (k + 1) % m, k) for k in range(m)]
        st = CentralStar(verts, facets)
        if validate(st).ok:
            return st
    raise RuntimeError("could not draw a valid star")
