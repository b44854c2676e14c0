"""Convex-body representations and their geometric queries.

Four representations: Polygon (possibly degenerate: a point or a segment),
Disk, DiskIntersection (nonempty, edge-free), and HullOfUnion (lazy hull of a
body with finitely many extra points).  Queries follow a dual strategy:
exact rational predicates wherever the data allows, support-function
comparison on a direction grid with local refinement for curved pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BadRadius,
    EmptyInput,
    NotSeparable,
    PreconditionViolated,
)
from .geom import (
    DEFAULT_TOL,
    DirectedLine,
    Direction,
    Point,
    Scalar,
    Tolerance,
    cross,
    dist,
    dist2,
    dot,
    is_exact,
    orient2d,
    seg_point_dist,
)
from .transforms import PlaneMap

TWO_PI = 2.0 * math.pi

# Direction grid shared by all support-function comparisons.
GRID_N = 720
_GRID_ANGLES = np.arange(GRID_N) * (TWO_PI / GRID_N)
GRID_DIRS = np.stack([np.cos(_GRID_ANGLES), np.sin(_GRID_ANGLES)], axis=1)


class PointedSupportLine(NamedTuple):
    support: Point
    line: DirectedLine


class ConvexBody:
    """Base class; all bodies are immutable values."""


@dataclass(frozen=True)
class Polygon(ConvexBody):
    """CCW vertex list; 1 vertex = singleton, 2 vertices = segment."""

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("polygon needs at least one vertex")

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    def vertex_array(self) -> np.ndarray:
        return np.array([(float(p.x), float(p.y)) for p in self.vertices])

    def edges(self):
        vs = self.vertices
        n = len(vs)
        if n == 1:
            return
        if n == 2:
            yield vs[0], vs[1]
            yield vs[1], vs[0]
            return
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]


@dataclass(frozen=True)
class Disk(ConvexBody):
    center: Point
    radius: Scalar

    def __post_init__(self):
        if self.radius < 0:
            raise BadRadius("disk radius must be >= 0")

    @property
    def is_singleton(self) -> bool:
        return self.radius == 0


@dataclass(frozen=True)
class DiskIntersection(ConvexBody):
    """Intersection of finitely many disks; must be nonempty."""

    disks: Tuple[Disk, ...]
    _feasible: Point = field(compare=False, repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not self.disks:
            raise EmptyInput("disk intersection needs at least one disk")
        if self._feasible is None:
            p = _disks_feasible_point(self.disks)
            if p is None:
                raise EmptyInput("empty disk intersection")
            object.__setattr__(self, "_feasible", p)

    def boundary(self) -> "_DIBoundary":
        cached = getattr(self, "_boundary_cache", None)
        if cached is None:
            cached = _di_boundary(self.disks)
            object.__setattr__(self, "_boundary_cache", cached)
        return cached


@dataclass(frozen=True)
class HullOfUnion(ConvexBody):
    """Lazy conv(base U extra); membership equals hull membership."""

    base: ConvexBody
    extra: Tuple[Point, ...]


@dataclass(frozen=True)
class Triangle:
    a0: Point
    a1: Point
    a2: Point

    def __post_init__(self):
        s = orient2d(self.a0, self.a1, self.a2)
        if s == 0:
            raise PreconditionViolated("degenerate (collinear) triangle")
        if s < 0:
            a1, a2 = self.a1, self.a2
            object.__setattr__(self, "a1", a2)
            object.__setattr__(self, "a2", a1)

    @property
    def points(self) -> Tuple[Point, Point, Point]:
        return (self.a0, self.a1, self.a2)

    def as_polygon(self) -> Polygon:
        return Polygon(self.points)


# ---------------------------------------------------------------------------
# Hulls


def convex_hull(points: Sequence[Point]) -> Polygon:
    """Andrew monotone chain with exact orientation tests."""
    if not points:
        raise EmptyInput("convex_hull of empty set")
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) == 1:
        return Polygon((pts[0],))
    if len(pts) == 2:
        return Polygon(tuple(pts))

    def half(points_iter):
        out: List[Point] = []
        for p in points_iter:
            while len(out) >= 2 and orient2d(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # collinear input
        return Polygon((pts[0], pts[-1]))
    return Polygon(tuple(hull))


def polygonize(u: ConvexBody) -> Optional[Polygon]:
    """Exact polygon form of u, or None if u has curved boundary."""
    if isinstance(u, Polygon):
        return u
    if isinstance(u, Disk) and u.radius == 0:
        return Polygon((u.center,))
    if isinstance(u, HullOfUnion):
        base = polygonize(u.base)
        if base is not None:
            return convex_hull(list(base.vertices) + list(u.extra))
    return None


def hull_of_union(u: ConvexBody, extra: Sequence[Point]) -> ConvexBody:
    if not extra:
        return u
    poly = polygonize(u)
    if poly is not None:
        return convex_hull(list(poly.vertices) + list(extra))
    return HullOfUnion(u, tuple(extra))


# ---------------------------------------------------------------------------
# DiskIntersection internals


def _disks_feasible_point(disks: Sequence[Disk], slack: float = 1e-9) -> Optional[Point]:
    """A point in every disk, or None.

    Candidates: disk centers, then pairwise circle intersections (including
    tangency points); for disks this candidate set is complete whenever the
    intersection is nonempty.
    """
    C = np.array([(float(d.center.x), float(d.center.y)) for d in disks])
    R = np.array([float(d.radius) for d in disks])
    tol = slack * max(1.0, float(R.max()) + 1.0)

    def best_of(cands: np.ndarray):
        dists = np.hypot(
            cands[:, None, 0] - C[None, :, 0], cands[:, None, 1] - C[None, :, 1]
        )
        viol = (dists - R[None, :]).max(axis=1)
        k = int(np.argmin(viol))
        return float(viol[k]), cands[k]

    viol, pt = best_of(C)
    if viol <= tol:
        return Point(float(pt[0]), float(pt[1]))
    pair_pts: List[Tuple[float, float]] = []
    n = len(disks)
    for i in range(n):
        for j in range(i + 1, n):
            pair_pts.extend(_circle_circle_points(disks[i], disks[j]))
    if pair_pts:
        viol2, pt2 = best_of(np.array(pair_pts))
        if viol2 < viol:
            viol, pt = viol2, pt2
    if viol <= tol:
        return Point(float(pt[0]), float(pt[1]))
    return None


def _circle_circle_points(d1: Disk, d2: Disk) -> List[Tuple[float, float]]:
    x1, y1, r1 = float(d1.center.x), float(d1.center.y), float(d1.radius)
    x2, y2, r2 = float(d2.center.x), float(d2.center.y), float(d2.radius)
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    if d == 0.0:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    mx, my = x1 + a * dx / d, y1 + a * dy / d
    if h2 <= 0:
        if h2 > -1e-12 * max(1.0, r1 * r1):
            return [(mx, my)]
        return []
    h = math.sqrt(h2)
    ox, oy = -dy / d * h, dx / d * h
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


@dataclass
class _DIBoundary:
    # per contributing circle: (disk index, list of (angle_start, angle_end))
    arcs: List[Tuple[int, List[Tuple[float, float]]]]
    corners: List[Point]


def _interval_intersect(intervals: List[Tuple[float, float]], lo: float, hi: float):
    """Intersect a set of angular intervals with [lo, hi] (mod 2*pi)."""
    pieces = []
    for k in (-1, 0, 1):
        pieces.append((lo + k * TWO_PI, hi + k * TWO_PI))
    out = []
    for a, b in intervals:
        for lo2, hi2 in pieces:
            s, e = max(a, lo2), min(b, hi2)
            if s < e:
                out.append((s, e))
    return out


def _di_boundary(disks: Sequence[Disk]) -> _DIBoundary:
    arcs: List[Tuple[int, List[Tuple[float, float]]]] = []
    corners: List[Point] = []
    n = len(disks)
    for i, di in enumerate(disks):
        ri = float(di.radius)
        if ri == 0.0:
            continue
        intervals: List[Tuple[float, float]] = [(0.0, TWO_PI)]
        dead = False
        for j, dj in enumerate(disks):
            if i == j:
                continue
            dx = float(dj.center.x) - float(di.center.x)
            dy = float(dj.center.y) - float(di.center.y)
            d = math.hypot(dx, dy)
            rj = float(dj.radius)
            if d == 0.0:
                if ri <= rj:
                    continue
                dead = True
                break
            t = (ri * ri + d * d - rj * rj) / (2 * ri * d)
            if t <= -1.0:
                continue
            if t >= 1.0:
                if d <= rj - ri + 1e-12 * max(1.0, rj):
                    continue  # tangent from inside; circle survives
                dead = True
                break
            beta = math.atan2(dy, dx)
            gamma = math.acos(t)
            intervals = _interval_intersect(intervals, beta - gamma, beta + gamma)
            if not intervals:
                dead = True
                break
        if dead or not intervals:
            continue
        intervals = sorted(intervals)
        arcs.append((i, intervals))
        full = sum(e - s for s, e in intervals) >= TWO_PI - 1e-12
        if not full:
            for s, e in intervals:
                for a in (s, e):
                    corners.append(
                        Point(
                            float(di.center.x) + ri * math.cos(a),
                            float(di.center.y) + ri * math.sin(a),
                        )
                    )
    # dedupe corners
    uniq: List[Point] = []
    for p in corners:
        if all(dist(p, q) > 1e-9 for q in uniq):
            uniq.append(p)
    return _DIBoundary(arcs, uniq)


def _angle_in_intervals(a: float, intervals: List[Tuple[float, float]], slack: float = 1e-12) -> bool:
    for s, e in intervals:
        for k in (-1, 0, 1):
            if s - slack <= a + k * TWO_PI <= e + slack:
                return True
    return False


# ---------------------------------------------------------------------------
# Support functions


def support_value(u: ConvexBody, nx: float, ny: float) -> float:
    """max over u of <x, n> for a unit direction n (float track)."""
    if isinstance(u, Polygon):
        return max(float(p.x) * nx + float(p.y) * ny for p in u.vertices)
    if isinstance(u, Disk):
        return float(u.center.x) * nx + float(u.center.y) * ny + float(u.radius)
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        best = -math.inf
        a = math.atan2(ny, nx) % TWO_PI
        for i, intervals in b.arcs:
            d = u.disks[i]
            if _angle_in_intervals(a, intervals, 1e-9):
                best = max(best, float(d.center.x) * nx + float(d.center.y) * ny + float(d.radius))
        for p in b.corners:
            best = max(best, float(p.x) * nx + float(p.y) * ny)
        if best == -math.inf:
            p = u._feasible
            best = float(p.x) * nx + float(p.y) * ny
        return best
    if isinstance(u, HullOfUnion):
        best = support_value(u.base, nx, ny)
        for p in u.extra:
            best = max(best, float(p.x) * nx + float(p.y) * ny)
        return best
    raise TypeError(f"unknown body {type(u)}")


def support_grid(u: ConvexBody, dirs: np.ndarray = GRID_DIRS) -> np.ndarray:
    """Vectorized support values over a direction grid."""
    if isinstance(u, Polygon):
        V = _cached_vertex_array(u)
        return (V @ dirs.T).max(axis=0)
    if isinstance(u, Disk):
        c = np.array([float(u.center.x), float(u.center.y)])
        return dirs @ c + float(u.radius)
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        angles = np.mod(np.arctan2(dirs[:, 1], dirs[:, 0]), TWO_PI)
        out = np.full(len(dirs), -np.inf)
        for i, intervals in b.arcs:
            d = u.disks[i]
            c = np.array([float(d.center.x), float(d.center.y)])
            vals = dirs @ c + float(d.radius)
            mask = np.zeros(len(dirs), dtype=bool)
            for s, e in intervals:
                s2, e2 = s % TWO_PI, e % TWO_PI
                if e - s >= TWO_PI - 1e-12:
                    mask[:] = True
                elif s2 <= e2:
                    mask |= (angles >= s2 - 1e-9) & (angles <= e2 + 1e-9)
                else:
                    mask |= (angles >= s2 - 1e-9) | (angles <= e2 + 1e-9)
            out = np.where(mask, np.maximum(out, vals), out)
        if b.corners:
            C = np.array([(float(p.x), float(p.y)) for p in b.corners])
            out = np.maximum(out, (C @ dirs.T).max(axis=0))
        feas = np.array([float(u._feasible.x), float(u._feasible.y)])
        return np.where(np.isfinite(out), out, dirs @ feas)
    if isinstance(u, HullOfUnion):
        out = support_grid(u.base, dirs)
        if u.extra:
            P = np.array([(float(p.x), float(p.y)) for p in u.extra])
            out = np.maximum(out, (P @ dirs.T).max(axis=0))
        return out
    raise TypeError(f"unknown body {type(u)}")


def _cached_vertex_array(u: Polygon) -> np.ndarray:
    arr = getattr(u, "_varr", None)
    if arr is None:
        arr = u.vertex_array()
        object.__setattr__(u, "_varr", arr)
    return arr


def body_scale(u: ConvexBody) -> float:
    """Rough magnitude of u's coordinates, for relative slack decisions."""
    h = support_grid(u, GRID_DIRS[:: GRID_N // 8])
    return max(1.0, float(np.abs(h).max()))


def _golden_min(f, lo: float, hi: float, iters: int = 48) -> float:
    """Golden-section minimum of f on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    c = b - (b - a) * invphi
    d = a + (b - a) * invphi
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * invphi
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * invphi
            fd = f(d)
    return min(fc, fd)


def support_margin(a: ConvexBody, b: ConvexBody, refine: bool = True) -> float:
    """min over directions of h_a - h_b; >= 0 iff b is included in a."""
    ha = support_grid(a)
    hb = support_grid(b)
    m = ha - hb
    k = int(np.argmin(m))
    grid_min = float(m[k])
    scale = max(1.0, float(np.abs(ha).max()))
    if not refine and grid_min > 0.02 * scale:
        return grid_min
    lo = _GRID_ANGLES[k] - TWO_PI / GRID_N
    hi = _GRID_ANGLES[k] + TWO_PI / GRID_N

    def f(theta: float) -> float:
        nx, ny = math.cos(theta), math.sin(theta)
        return support_value(a, nx, ny) - support_value(b, nx, ny)

    return min(grid_min, _golden_min(f, lo, hi))


def point_margin(u: ConvexBody, p: Point) -> float:
    """min over directions of h_u - <p, n>; >= 0 iff p in u."""
    return support_margin(u, Polygon((p,)))


# ---------------------------------------------------------------------------
# Membership


def contains_point(u: ConvexBody, p: Point, mode: str = "closed", tol: Tolerance = DEFAULT_TOL) -> bool:
    if mode not in ("closed", "strict"):
        raise ValueError("mode must be 'closed' or 'strict'")
    eps = tol.eps
    if isinstance(u, Polygon):
        return _polygon_contains(u, p, mode, eps)
    if isinstance(u, Disk):
        if eps == 0 and p.exact and u.center.exact and is_exact(u.radius):
            d2 = dist2(p, u.center)
            r2 = u.radius * u.radius
            return d2 <= r2 if mode == "closed" else d2 < r2
        d = dist(p, u.center)
        r = float(u.radius)
        return d <= r + eps if mode == "closed" else d < r - eps
    if isinstance(u, DiskIntersection):
        return all(contains_point(d, p, mode, tol) for d in u.disks)
    if isinstance(u, HullOfUnion):
        poly = polygonize(u)
        if poly is not None:
            return _polygon_contains(poly, p, mode, eps)
        m = point_margin(u, p)
        return m >= -eps if mode == "closed" else m > eps
    raise TypeError(f"unknown body {type(u)}")


def _polygon_contains(u: Polygon, p: Point, mode: str, eps: float) -> bool:
    vs = u.vertices
    if len(vs) == 1:
        if mode == "strict":
            return False
        if eps == 0 and p.exact and vs[0].exact:
            return p.x == vs[0].x and p.y == vs[0].y
        return dist(p, vs[0]) <= eps
    if len(vs) == 2:
        if mode == "strict":
            return False
        a, b = vs
        if eps == 0 and p.exact and a.exact and b.exact:
            if cross(b - a, p - a) != 0:
                return False
            t = dot(p - a, b - a)
            return 0 <= t <= dot(b - a, b - a)
        return seg_point_dist(a, b, p) <= eps
    exact = eps == 0 and p.exact and all(v.exact for v in vs)
    for a, b in zip(vs, vs[1:] + (vs[0],)):
        c = cross(b - a, p - a)
        if exact:
            if mode == "closed" and c < 0:
                return False
            if mode == "strict" and c <= 0:
                return False
        else:
            off = float(c) / max(dist(a, b), 1e-300)
            if mode == "closed" and off < -eps:
                return False
            if mode == "strict" and off <= eps:
                return False
    return True


# ---------------------------------------------------------------------------
# Inclusion


def includes(a: ConvexBody, b: ConvexBody, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff b is a subset of a (up to tol.eps slack)."""
    eps = tol.eps
    bp = polygonize(b)
    if bp is not None:
        return all(contains_point(a, v, "closed", tol) for v in bp.vertices)
    if isinstance(b, Disk):
        return _includes_disk(a, b, eps)
    if isinstance(b, DiskIntersection):
        if isinstance(a, Disk):
            return farthest_dist(b, a.center) <= float(a.radius) + eps
        if isinstance(a, DiskIntersection):
            return all(farthest_dist(b, d.center) <= float(d.radius) + eps for d in a.disks)
        return support_margin(a, b) >= -eps
    if isinstance(b, HullOfUnion):
        return includes(a, b.base, tol) and all(contains_point(a, p, "closed", tol) for p in b.extra)
    raise TypeError(f"unknown body {type(b)}")


def _includes_disk(a: ConvexBody, b: Disk, eps: float) -> bool:
    if isinstance(a, Disk):
        if a.center.exact and b.center.exact and is_exact(a.radius) and is_exact(b.radius) and eps == 0:
            if b.radius > a.radius:
                return False
            gap = a.radius - b.radius
            return dist2(a.center, b.center) <= gap * gap
        return dist(a.center, b.center) <= float(a.radius) - float(b.radius) + eps
    if isinstance(a, DiskIntersection):
        return all(_includes_disk(d, b, eps) for d in a.disks)
    if isinstance(a, Polygon):
        vs = a.vertices
        if len(vs) <= 2:
            return float(b.radius) <= eps and contains_point(a, b.center, "closed", Tolerance(max(eps, 0.0)))
        r = float(b.radius)
        for p, q in zip(vs, vs[1:] + (vs[0],)):
            off = float(cross(q - p, b.center - p)) / max(dist(p, q), 1e-300)
            if off < r - eps:
                return False
        return True
    if isinstance(a, HullOfUnion):
        return support_margin(a, b) >= -eps
    raise TypeError(f"unknown body {type(a)}")


def loosely_includes(v2: ConvexBody, v1: ConvexBody, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every point of v1 is interior to v2 with margin > eps."""
    eps = tol.eps
    p1 = polygonize(v1)
    if p1 is not None:
        return all(contains_point(v2, v, "strict", tol) for v in p1.vertices)
    return support_margin(v2, v1) > eps


# ---------------------------------------------------------------------------
# Supporting lines


def support_point(u: ConvexBody, nx: float, ny: float) -> Point:
    """Canonical maximizer of <x, n>: lexicographic minimum among ties."""
    if isinstance(u, Polygon):
        return _lex_min_maximizer(u.vertices, nx, ny)
    if isinstance(u, Disk):
        n = math.hypot(nx, ny)
        return Point(
            float(u.center.x) + float(u.radius) * nx / n,
            float(u.center.y) + float(u.radius) * ny / n,
        )
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        a = math.atan2(ny, nx) % TWO_PI
        best = None
        best_val = -math.inf
        n = math.hypot(nx, ny)
        for i, intervals in b.arcs:
            d = u.disks[i]
            if _angle_in_intervals(a, intervals, 1e-9):
                p = Point(
                    float(d.center.x) + float(d.radius) * nx / n,
                    float(d.center.y) + float(d.radius) * ny / n,
                )
                v = float(p.x) * nx + float(p.y) * ny
                if v > best_val:
                    best, best_val = p, v
        for p in b.corners:
            v = float(p.x) * nx + float(p.y) * ny
            if v > best_val + 1e-12 * max(1.0, abs(best_val)):
                best, best_val = p, v
        if best is None:
            best = u._feasible
        return best
    if isinstance(u, HullOfUnion):
        cands = [support_point(u.base, nx, ny)] + list(u.extra)
        return _lex_min_maximizer(cands, nx, ny)
    raise TypeError(f"unknown body {type(u)}")


def _lex_min_maximizer(pts, nx: float, ny: float) -> Point:
    """Among the points maximizing <x, n> (within relative 1e-12), the
    lexicographically least one."""
    best = None
    best_val = 0.0
    for p in pts:
        v = float(p.x) * nx + float(p.y) * ny
        if best is None or v > best_val + 1e-12 * max(1.0, abs(best_val)):
            best, best_val = p, v
        elif abs(v - best_val) <= 1e-12 * max(1.0, abs(best_val)) and (
            (float(p.x), float(p.y)) < (float(best.x), float(best.y))
        ):
            best = p
    return best


def supporting_line(u: ConvexBody, d: Direction) -> PointedSupportLine:
    """The unique directed supporting line of direction d, body on its left."""
    n = d.right_normal()
    nf = n.unit()
    sp = support_point(u, nf[0], nf[1])
    return PointedSupportLine(sp, DirectedLine(sp, d))


def nearest_point(u: ConvexBody, p: Point) -> Point:
    """Closest point of u to p (p itself if inside)."""
    if contains_point(u, p, "closed", Tolerance(0.0) if p.exact else DEFAULT_TOL):
        return p
    if isinstance(u, Polygon):
        vs = u.vertices
        if len(vs) == 1:
            return vs[0]
        best, bd = None, math.inf
        pairs = list(zip(vs, vs[1:] + (vs[0],))) if len(vs) > 2 else [(vs[0], vs[1])]
        for a, b in pairs:
            q = _project_to_segment(a, b, p)
            dq = dist(p, q)
            if dq < bd:
                best, bd = q, dq
        return best
    if isinstance(u, Disk):
        dv = (float(p.x) - float(u.center.x), float(p.y) - float(u.center.y))
        n = math.hypot(*dv)
        if n == 0:
            return Point(float(u.center.x) + float(u.radius), float(u.center.y))
        r = float(u.radius)
        return Point(float(u.center.x) + r * dv[0] / n, float(u.center.y) + r * dv[1] / n)
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        best, bd = None, math.inf
        for i, intervals in b.arcs:
            d = u.disks[i]
            ang = math.atan2(float(p.y) - float(d.center.y), float(p.x) - float(d.center.x)) % TWO_PI
            if _angle_in_intervals(ang, intervals, 1e-9):
                q = Point(
                    float(d.center.x) + float(d.radius) * math.cos(ang),
                    float(d.center.y) + float(d.radius) * math.sin(ang),
                )
                dq = dist(p, q)
                if dq < bd:
                    best, bd = q, dq
        for q in b.corners:
            dq = dist(p, q)
            if dq < bd:
                best, bd = q, dq
        if best is None:
            best = u._feasible
        return best
    if isinstance(u, HullOfUnion):
        # maximize <p,n> - h(n) over the direction grid, then refine
        hp = GRID_DIRS @ np.array([float(p.x), float(p.y)])
        m = hp - support_grid(u)
        k = int(np.argmax(m))

        def f(theta):
            nx, ny = math.cos(theta), math.sin(theta)
            return -(float(p.x) * nx + float(p.y) * ny - support_value(u, nx, ny))

        lo = _GRID_ANGLES[k] - TWO_PI / GRID_N
        hi = _GRID_ANGLES[k] + TWO_PI / GRID_N
        dbest = -_golden_min(f, lo, hi)
        dbest = max(dbest, float(m[k]))
        # refined direction via small scan
        thetas = np.linspace(lo, hi, 65)
        vals = [
            float(p.x) * math.cos(t) + float(p.y) * math.sin(t) - support_value(u, math.cos(t), math.sin(t))
            for t in thetas
        ]
        t = float(thetas[int(np.argmax(vals))])
        nx, ny = math.cos(t), math.sin(t)
        return Point(float(p.x) - dbest * nx, float(p.y) - dbest * ny)
    raise TypeError(f"unknown body {type(u)}")


def _project_to_segment(a: Point, b: Point, p: Point) -> Point:
    ax, ay, bx, by = float(a.x), float(a.y), float(b.x), float(b.y)
    px, py = float(p.x), float(p.y)
    vx, vy = bx - ax, by - ay
    L2 = vx * vx + vy * vy
    if L2 == 0:
        return Point(ax, ay)
    t = ((px - ax) * vx + (py - ay) * vy) / L2
    t = 0.0 if t < 0 else (1.0 if t > 1 else t)
    return Point(ax + t * vx, ay + t * vy)


def dist_to_body(u: ConvexBody, p: Point, tol: Tolerance = DEFAULT_TOL) -> float:
    if contains_point(u, p, "closed", tol):
        return 0.0
    return dist(p, nearest_point(u, p))


def farthest_dist(u: ConvexBody, c: Point) -> float:
    """Covering radius of u from c: max over u of the distance to c."""
    if isinstance(u, Polygon):
        return max(dist(c, v) for v in u.vertices)
    if isinstance(u, Disk):
        return dist(c, u.center) + float(u.radius)
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        best = dist(c, u._feasible)
        for i, intervals in b.arcs:
            d = u.disks[i]
            ang = math.atan2(float(d.center.y) - float(c.y), float(d.center.x) - float(c.x)) % TWO_PI
            if _angle_in_intervals(ang, intervals, 1e-9):
                q = Point(
                    float(d.center.x) + float(d.radius) * math.cos(ang),
                    float(d.center.y) + float(d.radius) * math.sin(ang),
                )
                best = max(best, dist(c, q))
        for q in b.corners:
            best = max(best, dist(c, q))
        return best
    if isinstance(u, HullOfUnion):
        best = farthest_dist(u.base, c)
        for p in u.extra:
            best = max(best, dist(c, p))
        return best
    raise TypeError(f"unknown body {type(u)}")


def separating_support_line(u: ConvexBody, p: Point, tol: Tolerance = DEFAULT_TOL) -> PointedSupportLine:
    """A directed supporting line of u with p strictly on its right."""
    if contains_point(u, p, "closed", tol):
        raise NotSeparable("point lies in the body")
    q = nearest_point(u, p)
    nx, ny = float(p.x) - float(q.x), float(p.y) - float(q.y)
    nn = math.hypot(nx, ny)
    nx, ny = nx / nn, ny / nn
    d = Direction(-ny, nx)
    return PointedSupportLine(q, DirectedLine(q, d))


def interior_point(u: ConvexBody) -> Point:
    """A representative interior point (the point itself for singletons)."""
    if isinstance(u, Polygon):
        n = len(u.vertices)
        sx = sum(v.x for v in u.vertices)
        sy = sum(v.y for v in u.vertices)
        if all(v.exact for v in u.vertices):
            return Point(Fraction(sx, n), Fraction(sy, n))
        return Point(float(sx) / n, float(sy) / n)
    if isinstance(u, Disk):
        return u.center
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        pts = b.corners
        if len(pts) >= 2:
            sx = sum(float(p.x) for p in pts) / len(pts)
            sy = sum(float(p.y) for p in pts) / len(pts)
            cand = Point(sx, sy)
            if contains_point(u, cand, "closed", DEFAULT_TOL):
                return cand
        return u._feasible
    if isinstance(u, HullOfUnion):
        pts = [interior_point(u.base)] + list(u.extra)
        sx = sum(float(p.x) for p in pts) / len(pts)
        sy = sum(float(p.y) for p in pts) / len(pts)
        return Point(sx, sy)
    raise TypeError(f"unknown body {type(u)}")


# ---------------------------------------------------------------------------
# Tangents from an external point


def tangents_from_external_point(
    u: ConvexBody, f: Point, tol: Tolerance = DEFAULT_TOL
) -> Tuple[PointedSupportLine, PointedSupportLine]:
    """The two supporting lines of u through f; right tangent (seen from f) first."""
    from .errors import DegenerateNucleus, NotExternal

    if contains_point(u, f, "closed", tol):
        raise NotExternal("focus lies in the body")
    if _is_singleton(u):
        raise DegenerateNucleus("tangents from a point to a singleton are ill-defined")
    ip = interior_point(u)
    ref = math.atan2(float(ip.y) - float(f.y), float(ip.x) - float(f.x))

    def rel_angle(p: Point) -> float:
        a = math.atan2(float(p.y) - float(f.y), float(p.x) - float(f.x)) - ref
        while a > math.pi:
            a -= TWO_PI
        while a < -math.pi:
            a += TWO_PI
        return a

    cands = _tangent_candidates(u, f)
    lo = min(cands, key=rel_angle)
    hi = max(cands, key=rel_angle)

    def make_line(t: Point) -> PointedSupportLine:
        dx, dy = float(t.x) - float(f.x), float(t.y) - float(f.y)
        d = Direction(dx, dy)
        if cross(d, ip - t) < 0:
            d = d.reversed()
        return PointedSupportLine(t, DirectedLine(t, d))

    return make_line(lo), make_line(hi)


def _is_singleton(u: ConvexBody) -> bool:
    if isinstance(u, Polygon):
        return len(u.vertices) == 1
    if isinstance(u, Disk):
        return u.radius == 0
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        return not b.arcs and not b.corners
    if isinstance(u, HullOfUnion):
        return _is_singleton(u.base) and all(
            dist(p, interior_point(u.base)) < 1e-12 for p in u.extra
        )
    return False


def _circle_tangent_points(c: Point, r: float, f: Point) -> List[Point]:
    dx, dy = float(f.x) - float(c.x), float(f.y) - float(c.y)
    d = math.hypot(dx, dy)
    if d <= r:
        return []
    beta = math.atan2(dy, dx)
    alpha = math.acos(r / d)
    return [
        Point(float(c.x) + r * math.cos(beta + s * alpha), float(c.y) + r * math.sin(beta + s * alpha))
        for s in (1.0, -1.0)
    ]


def _tangent_candidates(u: ConvexBody, f: Point) -> List[Point]:
    if isinstance(u, Polygon):
        return list(u.vertices)
    if isinstance(u, Disk):
        return _circle_tangent_points(u.center, float(u.radius), f)
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        out = list(b.corners)
        for i, intervals in b.arcs:
            d = u.disks[i]
            for t in _circle_tangent_points(d.center, float(d.radius), f):
                ang = math.atan2(float(t.y) - float(d.center.y), float(t.x) - float(d.center.x)) % TWO_PI
                if _angle_in_intervals(ang, intervals, 1e-9):
                    out.append(t)
        return out
    if isinstance(u, HullOfUnion):
        out = _tangent_candidates(u.base, f)
        out.extend(u.extra)
        return out
    raise TypeError(f"unknown body {type(u)}")


# ---------------------------------------------------------------------------
# Line / boundary intersection


@dataclass(frozen=True)
class BoundaryHits:
    points: Tuple[Point, ...]
    segment: bool


def chord_interval(
    u: ConvexBody, l: DirectedLine, tol: Tolerance = DEFAULT_TOL
) -> Optional[Tuple[float, float]]:
    """Parameter interval (unit-speed along l) of the chord l cap u, or None."""
    ax, ay = float(l.anchor.x), float(l.anchor.y)
    ux, uy = l.d.unit()

    if isinstance(u, Disk):
        cx, cy, r = float(u.center.x), float(u.center.y), float(u.radius)
        mx, my = ax - cx, ay - cy
        b = mx * ux + my * uy
        c = mx * mx + my * my - r * r
        disc = b * b - c
        if disc < 0:
            if disc > -max(tol.eps, 1e-12) * max(1.0, r):
                return (-b, -b)
            return None
        s = math.sqrt(disc)
        return (-b - s, -b + s)
    if isinstance(u, DiskIntersection):
        lo, hi = -math.inf, math.inf
        for d in u.disks:
            iv = chord_interval(d, l, tol)
            if iv is None:
                return None
            lo, hi = max(lo, iv[0]), min(hi, iv[1])
        if lo > hi + max(tol.eps, 1e-12):
            return None
        return (lo, min(hi, max(lo, hi)))
    if isinstance(u, Polygon):
        vs = u.vertices
        if len(vs) == 1:
            p = vs[0]
            if abs(l.signed_offset(p)) <= max(tol.eps, 1e-12):
                t = l.param_of(p)
                return (t, t)
            return None
        lo, hi = -math.inf, math.inf
        edges = list(zip(vs, vs[1:] + (vs[0],))) if len(vs) > 2 else [(vs[0], vs[1]), (vs[1], vs[0])]
        for a, b in edges:
            ex, ey = float(b.x) - float(a.x), float(b.y) - float(a.y)
            # halfplane: cross(e, x - a) >= 0
            c0 = ex * (ay - float(a.y)) - ey * (ax - float(a.x))
            c1 = ex * uy - ey * ux
            if abs(c1) < 1e-14 * max(1.0, abs(ex) + abs(ey)):
                if c0 < -max(tol.eps, 1e-12) * math.hypot(ex, ey):
                    return None
                continue
            t = -c0 / c1
            if c1 > 0:
                lo = max(lo, t)
            else:
                hi = min(hi, t)
        if len(vs) == 2:
            # clip to the segment extent as well
            t0, t1 = l.param_of(vs[0]), l.param_of(vs[1])
            if abs(l.signed_offset(vs[0])) > max(tol.eps, 1e-9) and abs(
                l.signed_offset(vs[1])
            ) > max(tol.eps, 1e-9):
                pass
            lo, hi = max(lo, min(t0, t1)), min(hi, max(t0, t1))
        if lo > hi + max(tol.eps, 1e-12):
            return None
        return (lo, hi) if lo <= hi else (lo, lo)
    if isinstance(u, HullOfUnion):
        # bracket via support, then sample and bisect membership
        pa = np.array([ax, ay])
        uu = np.array([ux, uy])
        t_hi = support_value(u, ux, uy) - float(pa @ uu)
        t_lo = -(support_value(u, -ux, -uy) + float(pa @ uu))
        if t_hi < t_lo:
            return None
        ts = np.linspace(t_lo, t_hi, 129)
        inside = [
            contains_point(u, Point(ax + t * ux, ay + t * uy), "closed", tol) for t in ts
        ]
        idx = [i for i, v in enumerate(inside) if v]
        if not idx:
            return None
        i0, i1 = idx[0], idx[-1]

        def bisect(t_in, t_out):
            for _ in range(50):
                tm = 0.5 * (t_in + t_out)
                if contains_point(u, Point(ax + tm * ux, ay + tm * uy), "closed", tol):
                    t_in = tm
                else:
                    t_out = tm
            return t_in

        lo = ts[i0] if i0 == 0 else bisect(ts[i0], ts[i0 - 1])
        hi = ts[i1] if i1 == len(ts) - 1 else bisect(ts[i1], ts[i1 + 1])
        return (float(lo), float(hi))
    raise TypeError(f"unknown body {type(u)}")


def line_boundary_intersections(
    u: ConvexBody, l: DirectedLine, tol: Tolerance = DEFAULT_TOL
) -> BoundaryHits:
    """l cap boundary(u): 0-2 points, or two endpoints with a segment flag."""
    iv = chord_interval(u, l, tol)
    if iv is None:
        return BoundaryHits((), False)
    t0, t1 = iv
    scale = max(1.0, abs(t0), abs(t1))
    if t1 - t0 <= max(tol.eps, 1e-9) * scale:
        return BoundaryHits((l.point_at(0.5 * (t0 + t1)),), False)
    p0, p1 = l.point_at(t0), l.point_at(t1)
    mid = l.point_at(0.5 * (t0 + t1))
    if contains_point(u, mid, "strict", tol):
        return BoundaryHits((p0, p1), False)
    return BoundaryHits((p0, p1), True)


# ---------------------------------------------------------------------------
# Edge-freeness, open extension, abundance


def is_edge_free(u: ConvexBody, tol: Tolerance = DEFAULT_TOL) -> bool:
    if isinstance(u, Polygon):
        return len(u.vertices) == 1
    if isinstance(u, (Disk, DiskIntersection)):
        return True
    if isinstance(u, HullOfUnion):
        outside = [p for p in u.extra if not contains_point(u.base, p, "closed", tol)]
        if outside:
            return False
        return is_edge_free(u.base, tol)
    raise TypeError(f"unknown body {type(u)}")


@dataclass(frozen=True)
class OpenExtension:
    """Membership-testable open region {X : dist(X, body) < d}."""

    body: ConvexBody
    d: float

    def contains(self, p: Point) -> bool:
        return dist_to_body(self.body, p) < self.d


def open_extension(u: ConvexBody, d: Scalar) -> OpenExtension:
    if d <= 0:
        raise BadRadius("extension distance must be positive")
    return OpenExtension(u, float(d))


def abundance(u: ConvexBody, v: ConvexBody, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest d with v inside the open d-extension of u (u must lie in v)."""
    if not includes(v, u, Tolerance(max(tol.eps, 1e-9))):
        raise PreconditionViolated("abundance requires u to be a subset of v")
    vp = polygonize(v)
    if vp is not None:
        return max(dist_to_body(u, w, tol) for w in vp.vertices)
    hu = support_grid(u)
    hv = support_grid(v)
    m = hv - hu
    k = int(np.argmax(m))
    lo = _GRID_ANGLES[k] - TWO_PI / GRID_N
    hi = _GRID_ANGLES[k] + TWO_PI / GRID_N

    def f(theta):
        nx, ny = math.cos(theta), math.sin(theta)
        return -(support_value(v, nx, ny) - support_value(u, nx, ny))

    val = max(float(m[k]), -_golden_min(f, lo, hi))
    return max(0.0, val)


# ---------------------------------------------------------------------------
# Transforms and sampling


def transform_body(m: PlaneMap, u: ConvexBody) -> ConvexBody:
    if isinstance(u, Polygon):
        mapped = [m.apply(v) for v in u.vertices]
        if m.scale > 0 or len(mapped) <= 2:
            return Polygon(tuple(mapped))
        return convex_hull(mapped)
    if isinstance(u, Disk):
        s = m.scale
        return Disk(m.apply(u.center), abs(s) * u.radius)
    if isinstance(u, DiskIntersection):
        return DiskIntersection(tuple(transform_body(m, d) for d in u.disks))
    if isinstance(u, HullOfUnion):
        return HullOfUnion(transform_body(m, u.base), tuple(m.apply(p) for p in u.extra))
    raise TypeError(f"unknown body {type(u)}")


def boundary_samples(u: ConvexBody, n: int = 256) -> List[Point]:
    """Roughly uniform CCW walk of the boundary of u."""
    if isinstance(u, Polygon):
        vs = u.vertices
        if len(vs) == 1:
            return [vs[0]]
        closed = list(vs) + [vs[0]]
        lens = [dist(a, b) for a, b in zip(closed, closed[1:])]
        total = sum(lens) or 1.0
        out = []
        for (a, b), L in zip(zip(closed, closed[1:]), lens):
            k = max(1, int(round(n * L / total)))
            for i in range(k):
                t = i / k
                out.append(Point(float(a.x) + t * (float(b.x) - float(a.x)), float(a.y) + t * (float(b.y) - float(a.y))))
        return out
    if isinstance(u, Disk):
        c, r = u.center, float(u.radius)
        return [
            Point(float(c.x) + r * math.cos(a), float(c.y) + r * math.sin(a))
            for a in np.linspace(0, TWO_PI, n, endpoint=False)
        ]
    if isinstance(u, DiskIntersection):
        b = u.boundary()
        total = sum(
            float(u.disks[i].radius) * (e - s) for i, ivs in b.arcs for s, e in ivs
        )
        out: List[Point] = list(b.corners)
        if total == 0:
            return out or [u._feasible]
        for i, ivs in b.arcs:
            d = u.disks[i]
            r = float(d.radius)
            for s, e in ivs:
                k = max(2, int(round(n * r * (e - s) / total)))
                for a in np.linspace(s, e, k):
                    out.append(
                        Point(float(d.center.x) + r * math.cos(a), float(d.center.y) + r * math.sin(a))
                    )
        ip = interior_point(u)
        out.sort(key=lambda p: math.atan2(float(p.y) - float(ip.y), float(p.x) - float(ip.x)))
        return out
    if isinstance(u, HullOfUnion):
        # support points over the grid trace the boundary (corners repeat)
        out = []
        for a in np.linspace(0, TWO_PI, n, endpoint=False):
            out.append(support_point(u, math.cos(a), math.sin(a)))
        return out
    raise TypeError(f"unknown body {type(u)}")
