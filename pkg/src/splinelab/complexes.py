"""Polyhedral complexes and the constraint data they induce.

Two concrete inputs are supported: planar polygonal complexes, which are
coned into R^3, and central simplicial stars, i.e. fans of triangular cones
through the origin of R^3.  Both are turned into a :class:`SplineProblem`:
facets together with the linear forms and exponents along which adjacent
pieces must agree.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .exactla import to_scalar
from .polyring import HomogeneousForm, linear_form_vanishing_on

FaceKey = tuple[int, ...]


class ComplexValidationError(ValueError):
    """Raised when a complex fails geometric or combinatorial checks."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# input complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarComplex:
    """Convex polygons in the plane sharing vertices by index."""

    vertices: tuple[tuple[Fraction, Fraction], ...]
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(to_scalar(c) for c in v) for v in self.vertices)
        if any(len(v) != 2 for v in verts):
            raise ValueError("planar vertices need two coordinates")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", tuple(tuple(int(i) for i in f) for f in self.facets))

    def edges_of(self, k: int) -> list[FaceKey]:
        f = self.facets[k]
        return [tuple(sorted((f[i], f[(i + 1) % len(f)]))) for i in range(len(f))]

    def edge_map(self) -> dict[FaceKey, list[int]]:
        out: dict[FaceKey, list[int]] = defaultdict(list)
        for k in range(len(self.facets)):
            for e in self.edges_of(k):
                out[e].append(k)
        return dict(sorted(out.items()))

    @property
    def is_simplicial(self) -> bool:
        return all(len(f) == 3 for f in self.facets)


@dataclass(frozen=True)
class CentralStar:
    """Triangular cones with apex at the origin of R^3."""

    vertices: tuple[tuple[Fraction, Fraction, Fraction], ...]
    facets: tuple[tuple[int, int, int], ...]
    simplicial: bool = True

    def __post_init__(self):
        verts = tuple(tuple(to_scalar(c) for c in v) for v in self.vertices)
        if any(len(v) != 3 for v in verts):
            raise ValueError("star vertices need three coordinates")
        object.__setattr__(self, "vertices", verts)
        facets = tuple(tuple(int(i) for i in f) for f in self.facets)
        if any(len(f) != 3 for f in facets):
            raise ValueError("central stars are built from triangles")
        object.__setattr__(self, "facets", facets)

    def edges_of(self, k: int) -> list[FaceKey]:
        return [tuple(sorted(p)) for p in combinations(self.facets[k], 2)]

    def edge_map(self) -> dict[FaceKey, list[int]]:
        out: dict[FaceKey, list[int]] = defaultdict(list)
        for k in range(len(self.facets)):
            for e in self.edges_of(k):
                out[e].append(k)
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class SmoothnessAssignment:
    """Order of smoothness per face: defaults plus explicit overrides.

    Override keys are sorted vertex tuples.  Edges of a planar complex (or
    of a star's triangles) are codimension-one faces through the origin
    after coning; a full facet tuple names a face that misses the origin.
    """

    interior: int = 0
    boundary: int = -1
    overrides: Mapping[FaceKey, int] = field(default_factory=dict)

    def __post_init__(self):
        ov = {tuple(sorted(int(i) for i in k)): int(v) for k, v in dict(self.overrides).items()}
        object.__setattr__(self, "overrides", ov)
        if self.interior < 0:
            raise ValueError("interior faces need smoothness >= 0")
        if self.boundary < -1:
            raise ValueError("smoothness must be >= -1")
        for k, v in ov.items():
            if v < -1:
                raise ValueError(f"smoothness {v} on {k} is below -1")

    def __hash__(self):
        return hash((self.interior, self.boundary, tuple(sorted(self.overrides.items()))))


@dataclass
class ValidationReport:
    pure: bool = True
    hereditary: bool = True
    intersections_ok: bool = True
    connected: bool = True
    degeneracies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pure and self.hereditary and self.intersections_ok and self.connected and not self.degeneracies

    def as_dict(self) -> dict:
        return {"ok": self.ok, "pure": self.pure, "hereditary": self.hereditary,
                "intersections_ok": self.intersections_ok, "connected": self.connected,
                "degeneracies": list(self.degeneracies)}


# ---------------------------------------------------------------------------
# exact geometry in R^3
# ---------------------------------------------------------------------------

def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def _is_zero(v) -> bool:
    return not any(v)


def _in_planar_cone(w, gens) -> bool:
    """Whether w lies in the cone spanned by ``gens`` (all in one plane)."""
    for g in gens:
        if _is_zero(_cross(w, g)) and _dot(w, g) > 0:
            return True
    for g1, g2 in combinations(gens, 2):
        n = _cross(g1, g2)
        if _is_zero(n) or _dot(n, w) != 0:
            continue
        nn = _dot(n, n)
        a = Fraction(_dot(_cross(w, g2), n), nn)
        b = Fraction(_dot(_cross(g1, w), n), nn)
        if a >= 0 and b >= 0:
            return True
    return False


def _cones_meet_in_shared_face(rays1, rays2, shared) -> bool:
    """Two full-dimensional cones meet exactly in cone(shared).

    Any separating plane through the origin is found among planes spanned by
    two generating rays, and the intersection then lies in that plane.
    """
    allrays = list(rays1) + list(rays2)
    for u, v in combinations(allrays, 2):
        n = _cross(u, v)
        if _is_zero(n):
            continue
        for sgn in (1, -1):
            nn = tuple(sgn * c for c in n)
            if all(_dot(nn, x) >= 0 for x in rays1) and all(_dot(nn, x) <= 0 for x in rays2):
                f1 = [x for x in rays1 if _dot(nn, x) == 0]
                f2 = [x for x in rays2 if _dot(nn, x) == 0]
                common = [x for x in f1 + f2 if _in_planar_cone(x, f1) and _in_planar_cone(x, f2)]
                return all(_in_planar_cone(x, shared) for x in common)
    return False


def _dual_components(facet_ids: Sequence[int], adjacent) -> int:
    ids = list(facet_ids)
    if not ids:
        return 0
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        a = stack.pop()
        for b in ids:
            if b not in seen and adjacent(a, b):
                seen.add(b)
                stack.append(b)
    return 1 if len(seen) == len(ids) else 2


def _common_checks(report: ValidationReport, nverts: int, facets, edge_map, ray) -> None:
    used = {i for f in facets for i in f}
    if used != set(range(nverts)):
        report.pure = False
        report.degeneracies.append(f"unused vertices {sorted(set(range(nverts)) - used)}")
    for e, fs in edge_map.items():
        if len(fs) > 2:
            report.intersections_ok = False
            report.degeneracies.append(f"edge {e} lies in {len(fs)} facets")
    edge_sets = [set(e for e, fs in edge_map.items() if k in fs) for k in range(len(facets))]

    def adjacent(a, b):
        return bool(edge_sets[a] & edge_sets[b])

    if report.degeneracies:
        return
    for a, b in combinations(range(len(facets)), 2):
        shared = sorted(set(facets[a]) & set(facets[b]))
        rays_a = [ray(i) for i in facets[a]]
        rays_b = [ray(i) for i in facets[b]]
        if not _cones_meet_in_shared_face(rays_a, rays_b, [ray(i) for i in shared]):
            report.intersections_ok = False
            report.degeneracies.append(f"facets {a} and {b} do not meet in a common face")
    for v in range(nverts):
        st = [k for k, f in enumerate(facets) if v in f]
        if _dual_components(st, adjacent) > 1:
            report.hereditary = False
    if _dual_components(list(range(len(facets))), adjacent) > 1:
        report.connected = False
        report.hereditary = False


def validate_planar(c: PlanarComplex) -> ValidationReport:
    rep = ValidationReport()
    nv = len(c.vertices)
    if len(set(c.vertices)) != nv:
        rep.degeneracies.append("repeated vertex coordinates")
    if not c.facets:
        rep.pure = False
        rep.degeneracies.append("no facets")
        return rep
    for k, f in enumerate(c.facets):
        if len(f) < 3 or len(set(f)) != len(f) or any(not 0 <= i < nv for i in f):
            rep.pure = False
            rep.degeneracies.append(f"facet {k} has invalid vertex list {f}")
            continue
        pts = [c.vertices[i] for i in f]
        signs = set()
        for i in range(len(f)):
            p, q = pts[i], pts[(i + 1) % len(f)]
            for j, r in enumerate(pts):
                if j in (i, (i + 1) % len(f)):
                    continue
                cr = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
                signs.add((cr > 0) - (cr < 0))
        if signs != {1} and signs != {-1}:
            rep.pure = False
            rep.degeneracies.append(f"facet {k} is not a strictly convex polygon")
    if rep.degeneracies:
        return rep
    lifted = [(Fraction(1),) + v for v in c.vertices]
    _common_checks(rep, nv, c.facets, c.edge_map(), lifted.__getitem__)
    return rep


def validate_star(c: CentralStar) -> ValidationReport:
    rep = ValidationReport()
    nv = len(c.vertices)
    for i, v in enumerate(c.vertices):
        if _is_zero(v):
            rep.degeneracies.append(f"vertex {i} is the origin")
    for i, j in combinations(range(nv), 2):
        u, v = c.vertices[i], c.vertices[j]
        if _is_zero(_cross(u, v)) and _dot(u, v) > 0:
            rep.degeneracies.append(f"vertices {i} and {j} span the same ray")
    if not c.facets:
        rep.pure = False
        rep.degeneracies.append("no facets")
    for k, f in enumerate(c.facets):
        if len(set(f)) != 3 or any(not 0 <= i < nv for i in f):
            rep.pure = False
            rep.degeneracies.append(f"facet {k} has invalid vertex list {f}")
        elif _det3(*(c.vertices[i] for i in f)) == 0:
            rep.pure = False
            rep.degeneracies.append(f"facet {k} spans a degenerate cone")
    if rep.degeneracies:
        return rep
    _common_checks(rep, nv, c.facets, c.edge_map(), c.vertices.__getitem__)
    return rep


def validate(c) -> ValidationReport:
    if isinstance(c, PlanarComplex):
        return validate_planar(c)
    if isinstance(c, CentralStar):
        return validate_star(c)
    raise TypeError(f"cannot validate {type(c).__name__}")


# ---------------------------------------------------------------------------
# spline problems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """Agreement condition along one codimension-one face through the origin.

    Interior constraints involve two facets ``(a, b)`` with ``a < b``;
    boundary constraints involve one facet.  The spline condition is that
    ``form ** exponent`` divides the difference of the pieces (or the piece).
    """

    facets: tuple[int, ...]
    form: HomogeneousForm
    exponent: int
    face: FaceKey = ()

    @property
    def interior(self) -> bool:
        return len(self.facets) == 2

    @property
    def power(self) -> HomogeneousForm:
        return self.form**self.exponent


@dataclass(frozen=True)
class FacetMeta:
    constraint_ids: tuple[int, ...]
    omitted_walls: int


@dataclass(frozen=True)
class SplineProblem:
    """Graded spline module data: facets, constraints and bookkeeping.

    ``omitted_walls[k]`` counts the boundary faces of facet k that pass
    through the origin but carry smoothness -1 (so no constraint).
    """

    nvars: int
    nfacets: int
    constraints: tuple[Constraint, ...]
    omitted_walls: tuple[int, ...] = ()
    simplicial: bool = False
    name: str = ""

    def __post_init__(self):
        if self.nfacets < 1:
            raise ValueError("a spline problem needs at least one facet")
        if not self.omitted_walls:
            object.__setattr__(self, "omitted_walls", (0,) * self.nfacets)
        if len(self.omitted_walls) != self.nfacets:
            raise ValueError("omitted_walls must list every facet")
        for c in self.constraints:
            if c.form.nvars != self.nvars or c.form.degree != 1:
                raise ValueError("constraint forms must be linear in the ambient ring")
            if c.exponent < 1:
                raise ValueError("constraint exponents must be >= 1")
            if len(c.facets) not in (1, 2) or any(not 0 <= k < self.nfacets for k in c.facets):
                raise ValueError(f"bad facet reference {c.facets}")
            if c.interior and c.facets[0] >= c.facets[1]:
                raise ValueError("interior constraints list facets as (a, b) with a < b")
        adj = defaultdict(set)
        for c in self.interior_constraints():
            a, b = self.constraints[c].facets
            adj[a].add(b)
            adj[b].add(a)
        if _dual_components(list(range(self.nfacets)), lambda a, b: b in adj[a]) > 1:
            raise ValueError("the dual graph of the facets must be connected")

    @property
    def facet_ids(self) -> range:
        return range(self.nfacets)

    def interior_constraints(self) -> list[int]:
        return [i for i, c in enumerate(self.constraints) if c.interior]

    @cached_property
    def facet_meta(self) -> tuple[FacetMeta, ...]:
        inc = [[] for _ in range(self.nfacets)]
        for i, c in enumerate(self.constraints):
            for k in c.facets:
                inc[k].append(i)
        return tuple(FacetMeta(tuple(ids), w) for ids, w in zip(inc, self.omitted_walls))

    def facet_constraints(self, k: int) -> tuple[int, ...]:
        if not 0 <= k < self.nfacets:
            raise KeyError(f"unknown facet {k}")
        return self.facet_meta[k].constraint_ids


@dataclass(frozen=True)
class StarInfo:
    facets: tuple[int, int]
    constraint_ids: tuple[int, ...]


def star(p: SplineProblem, cid: int) -> StarInfo:
    """Facets and constraints of the closed star of an interior constraint."""
    c = p.constraints[cid]
    if not c.interior:
        raise ValueError(f"constraint {cid} is a boundary face")
    a, b = c.facets
    ids = sorted(set(p.facet_constraints(a)) | set(p.facet_constraints(b)))
    return StarInfo((a, b), tuple(ids))


def boundary_degree(p: SplineProblem, k: int) -> int:
    """Number of interior codimension-one faces of facet k."""
    return sum(1 for i in p.facet_constraints(k) if p.constraints[i].interior)


def _build_problem(c, alpha: SmoothnessAssignment, edge_points, name: str, simplicial: bool) -> SplineProblem:
    rep = validate(c)
    if not rep.ok:
        raise ComplexValidationError("invalid complex: " + "; ".join(rep.degeneracies or ["not hereditary"]), rep)
    emap = c.edge_map()
    lids = {tuple(sorted(f)) for f in c.facets}
    for key, val in alpha.overrides.items():
        if key in emap:
            continue
        if key in lids:
            if val >= 0:
                raise ValueError(f"face {key} does not contain the origin; only -1 is allowed there")
            continue
        raise KeyError(f"override names unknown face {key}")
    constraints = []
    omitted = [0] * len(c.facets)
    for e, fs in emap.items():
        if len(fs) == 2:
            a = alpha.overrides.get(e, alpha.interior)
            if a < 0:
                raise ValueError(f"interior face {e} needs smoothness >= 0")
            constraints.append(Constraint(tuple(sorted(fs)), linear_form_vanishing_on(edge_points(e), 3), a + 1, e))
        else:
            a = alpha.overrides.get(e, alpha.boundary)
            if a >= 0:
                constraints.append(Constraint((fs[0],), linear_form_vanishing_on(edge_points(e), 3), a + 1, e))
            else:
                omitted[fs[0]] += 1
    return SplineProblem(3, len(c.facets), tuple(constraints), tuple(omitted), simplicial, name)


def cone(c: PlanarComplex, alpha: SmoothnessAssignment, name: str = "") -> SplineProblem:
    """Spline problem of the cone over a planar complex placed at height 1."""
    if not isinstance(c, PlanarComplex):
        raise TypeError("cone expects a planar complex")

    def pts(e):
        return [(1,) + c.vertices[i] for i in e]

    return _build_problem(c, alpha, pts, name, c.is_simplicial)


def star_problem(c: CentralStar, alpha: SmoothnessAssignment, name: str = "") -> SplineProblem:
    if not isinstance(c, CentralStar):
        raise TypeError("star_problem expects a central star")

    def pts(e):
        return [c.vertices[i] for i in e]

    return _build_problem(c, alpha, pts, name, True)


def to_problem(c, alpha: SmoothnessAssignment, name: str = "") -> SplineProblem:
    return cone(c, alpha, name) if isinstance(c, PlanarComplex) else star_problem(c, alpha, name)
