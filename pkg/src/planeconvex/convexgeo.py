"""Finite convex geometries from planar configurations.

Closure operators over labeled points, disks, or triangle shapes; exhaustive
axiom and anti-exchange verification on bitmask subsets; the (dualized)
lattice of closed sets; join-distributivity and join-irreducibles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bodies import (
    Disk,
    Polygon,
    contains_point,
    convex_hull,
    support_grid,
    support_value,
    GRID_DIRS,
    GRID_N,
    _GRID_ANGLES,
)
from .errors import IndeterminateGeometry, SizeLimit
from .geom import EXACT_TOL, DEFAULT_TOL, Point, Tolerance

MAX_GROUND = 20
MAX_LATTICE_GROUND = 16
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GroundSet:
    """Labeled geometric elements (points, disks, or polygons)."""

    elements: tuple
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.elements) > MAX_GROUND:
            raise SizeLimit(f"ground set capped at {MAX_GROUND} elements")
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"e{i}" for i in range(len(self.elements)))
            )
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("labels must be unique")

    def __len__(self):
        return len(self.elements)


class ClosureSystem:
    """A closure operator over subsets-as-bitmasks of a ground set."""

    def __init__(self, ground: GroundSet, closure_fn: Callable[[int], int]):
        self.ground = ground
        self._fn = closure_fn
        self._table: Dict[int, int] = {}

    @classmethod
    def from_table(cls, ground: GroundSet, table: Dict[int, int]) -> "ClosureSystem":
        cs = cls(ground, lambda m: table[m])
        cs._table = dict(table)
        return cs

    def closure(self, mask: int) -> int:
        out = self._table.get(mask)
        if out is None:
            out = self._fn(mask)
            self._table[mask] = out
        return out

    def is_closed(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def closed_sets(self) -> List[int]:
        n = len(self.ground)
        return [m for m in range(1 << n) if self.is_closed(m)]


# ---------------------------------------------------------------------------
# Closure operators


def closure_points(ground: GroundSet, mask: int) -> int:
    """Closure of a point subset: ground points inside its convex hull."""
    if mask == 0:
        return 0
    pts = [ground.elements[i] for i in range(len(ground)) if mask >> i & 1]
    hull = convex_hull(pts)
    exact = all(p.exact for p in ground.elements)
    tol = EXACT_TOL if exact else DEFAULT_TOL
    out = 0
    for i, p in enumerate(ground.elements):
        if mask >> i & 1 or contains_point(hull, p, "closed", tol):
            out |= 1 << i
    return out


def _disk_in_disk_hull(c: Disk, disks: Sequence[Disk], eps: float) -> Optional[bool]:
    """Is disk c inside conv(union of disks)?  None when the margin is within
    eps of zero (Indeterminate)."""
    # exact shortcut: inside a single disk
    for d in disks:
        r_gap = float(d.radius) - float(c.radius)
        if r_gap >= 0 and math.hypot(
            float(d.center.x) - float(c.center.x), float(d.center.y) - float(c.center.y)
        ) <= r_gap:
            return True
    hs = [support_grid(d) for d in disks]
    h_hull = np.maximum.reduce(hs)
    cc = np.array([float(c.center.x), float(c.center.y)])
    h_c = GRID_DIRS @ cc + float(c.radius)
    m = h_hull - h_c
    k = int(np.argmin(m))
    step = TWO_PI / GRID_N

    def f(theta: float) -> float:
        nx, ny = math.cos(theta), math.sin(theta)
        hv = max(support_value(d, nx, ny) for d in disks)
        return hv - (cc[0] * nx + cc[1] * ny + float(c.radius))

    lo, hi = _GRID_ANGLES[k] - step, _GRID_ANGLES[k] + step
    invphi = (math.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    x1 = b - (b - a) * invphi
    x2 = a + (b - a) * invphi
    f1, f2 = f(x1), f(x2)
    for _ in range(48):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - (b - a) * invphi
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + (b - a) * invphi
            f2 = f(x2)
    margin = min(float(m[k]), f1, f2)
    scale = max(1.0, float(np.abs(h_hull).max()))
    if abs(margin) <= eps * scale:
        return None
    return margin > 0


def closure_circles(
    ground: GroundSet, mask: int, eps: float = 1e-9
) -> int:
    """Closure of a disk subset: ground disks inside the hull of its union.

    Raises IndeterminateGeometry when some containment margin is too close to
    zero to classify.
    """
    if mask == 0:
        return 0
    disks = [ground.elements[i] for i in range(len(ground)) if mask >> i & 1]
    out = 0
    for i, c in enumerate(ground.elements):
        if mask >> i & 1:
            out |= 1 << i
            continue
        verdict = _disk_in_disk_hull(c, disks, eps)
        if verdict is None:
            raise IndeterminateGeometry(
                f"containment margin of element {i} in subset {mask:b} is borderline"
            )
        if verdict:
            out |= 1 << i
    return out


def closure_shapes(ground: GroundSet, mask: int) -> int:
    """Closure for polygonal shapes: shapes inside the hull of the union.

    Exact on rational vertex data; this is the operator under which triangle
    configurations can violate anti-exchange.
    """
    if mask == 0:
        return 0
    verts: List[Point] = []
    for i in range(len(ground)):
        if mask >> i & 1:
            verts.extend(ground.elements[i].vertices)
    hull = convex_hull(verts)
    exact = all(v.exact for p in ground.elements for v in p.vertices)
    tol = EXACT_TOL if exact else DEFAULT_TOL
    out = 0
    for i, p in enumerate(ground.elements):
        if mask >> i & 1 or all(
            contains_point(hull, v, "closed", tol) for v in p.vertices
        ):
            out |= 1 << i
    return out


def points_closure_system(points: Sequence[Point], labels: Tuple[str, ...] = ()) -> ClosureSystem:
    g = GroundSet(tuple(points), labels)
    return ClosureSystem(g, lambda m: closure_points(g, m))


def circles_closure_system(
    disks: Sequence[Disk], labels: Tuple[str, ...] = (), eps: float = 1e-9
) -> ClosureSystem:
    g = GroundSet(tuple(disks), labels)
    return ClosureSystem(g, lambda m: closure_circles(g, m, eps))


def shapes_closure_system(
    shapes: Sequence[Polygon], labels: Tuple[str, ...] = ()
) -> ClosureSystem:
    g = GroundSet(tuple(shapes), labels)
    return ClosureSystem(g, lambda m: closure_shapes(g, m))


# ---------------------------------------------------------------------------
# Axiom verification


def verify_closure_axioms(cs: ClosureSystem) -> Tuple[bool, Optional[int]]:
    """Extensive + idempotent for every subset; monotone over one-element
    steps (which chains to full monotonicity).  Returns (ok, bad_mask)."""
    n = len(cs.ground)
    if n > MAX_GROUND:
        raise SizeLimit(f"ground set capped at {MAX_GROUND}")
    if cs.closure(0) != 0:
        return False, 0
    for m in range(1 << n):
        c = cs.closure(m)
        if c & m != m:  # extensive
            return False, m
        if cs.closure(c) != c:  # idempotent
            return False, m
        for q in range(n):
            bigger = m | (1 << q)
            if bigger != m and cs.closure(bigger) & c != c:  # monotone
                return False, m
    return True, None


def verify_anti_exchange(
    cs: ClosureSystem,
) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """p in Phi(X|q) forbids q in Phi(X|p) for closed X and distinct p,q
    outside X.  Returns (ok, (p, q, X)) with the first violation."""
    n = len(cs.ground)
    if n > MAX_GROUND:
        raise SizeLimit(f"ground set capped at {MAX_GROUND}")
    for X in cs.closed_sets():
        outside = [i for i in range(n) if not (X >> i & 1)]
        for p in outside:
            cp = cs.closure(X | 1 << p)
            for q in outside:
                if q == p:
                    continue
                cq = cs.closure(X | 1 << q)
                if (cq >> p & 1) and (cp >> q & 1):
                    return False, (p, q, X)
    return True, None


# ---------------------------------------------------------------------------
# Lattices


class FiniteLattice:
    """Bounded lattice given by an explicit order; join/meet precomputed."""

    def __init__(self, elements: Sequence, leq: np.ndarray):
        self.elements = list(elements)
        m = len(self.elements)
        self.leq = np.asarray(leq, dtype=bool)
        if self.leq.shape != (m, m):
            raise ValueError("order matrix shape mismatch")
        self.join = np.full((m, m), -1, dtype=int)
        self.meet = np.full((m, m), -1, dtype=int)
        for i in range(m):
            for j in range(m):
                up = np.nonzero(self.leq[i] & self.leq[j])[0]
                lub = [c for c in up if all(self.leq[c, d] for d in up)]
                dn = np.nonzero(self.leq[:, i] & self.leq[:, j])[0]
                glb = [c for c in dn if all(self.leq[d, c] for d in dn)]
                if len(lub) != 1 or len(glb) != 1:
                    raise ValueError("not a lattice: missing unique bound")
                self.join[i, j] = lub[0]
                self.meet[i, j] = glb[0]
        bottoms = [i for i in range(m) if self.leq[i].all()]
        tops = [i for i in range(m) if self.leq[:, i].all()]
        if len(bottoms) != 1 or len(tops) != 1:
            raise ValueError("lattice must be bounded")
        self.bottom = bottoms[0]
        self.top = tops[0]

    def __len__(self):
        return len(self.elements)

    def covers_of(self, x: int) -> List[int]:
        """Elements y with x < y and nothing strictly between."""
        m = len(self.elements)
        above = [y for y in range(m) if y != x and self.leq[x, y]]
        return [
            y
            for y in above
            if not any(z != y and z != x and self.leq[x, z] and self.leq[z, y] for z in above)
        ]

    def lower_covers_of(self, x: int) -> List[int]:
        m = len(self.elements)
        below = [y for y in range(m) if y != x and self.leq[y, x]]
        return [
            y
            for y in below
            if not any(z != y and z != x and self.leq[y, z] and self.leq[z, x] for z in below)
        ]


def closed_set_lattice(cs: ClosureSystem) -> FiniteLattice:
    """The dual of the inclusion lattice of closed sets (top = empty set)."""
    n = len(cs.ground)
    if n > MAX_LATTICE_GROUND:
        raise SizeLimit(f"lattice enumeration capped at {MAX_LATTICE_GROUND}")
    closed = cs.closed_sets()
    m = len(closed)
    leq = np.zeros((m, m), dtype=bool)
    for i, a in enumerate(closed):
        for j, b in enumerate(closed):
            # dual order: a <= b iff b is a subset of a
            leq[i, j] = (a & b) == b
    return FiniteLattice(closed, leq)


def is_join_distributive(l: FiniteLattice) -> bool:
    """Each interval [x, join of covers of x] must be distributive."""
    m = len(l)
    if m > 1 << 16:
        raise SizeLimit("lattice too large")
    for x in range(m):
        if x == l.top:
            continue
        covers = l.covers_of(x)
        xs = x
        for c in covers:
            xs = l.join[xs, c]
        interval = [y for y in range(m) if l.leq[x, y] and l.leq[y, xs]]
        for a in interval:
            for b in interval:
                for c in interval:
                    if l.meet[a, l.join[b, c]] != l.join[l.meet[a, b], l.meet[a, c]]:
                        return False
    return True


def join_irreducibles(l: FiniteLattice) -> List[int]:
    """Elements with exactly one lower cover."""
    return [x for x in range(len(l)) if len(l.lower_covers_of(x)) == 1]


def m3_lattice() -> FiniteLattice:
    """The five-element modular, non-distributive lattice."""
    # 0=bottom, 1..3 = atoms, 4 = top
    leq = np.zeros((5, 5), dtype=bool)
    for i in range(5):
        leq[i, i] = True
        leq[0, i] = True
        leq[i, 4] = True
    return FiniteLattice(["0", "a", "b", "c", "1"], leq)


# ---------------------------------------------------------------------------
# Triangle non-example search


def _equilateral(v: Point, size: float, angle: float) -> Polygon:
    """Equilateral triangle with one vertex at v, exact rational coordinates
    (floats are dyadic rationals, so the hull predicates stay exact)."""

    def frac(x: float) -> Fraction:
        return Fraction(x).limit_denominator(1 << 20)

    pts = [v]
    for k in (0, 1):
        a = angle + k * math.pi / 3
        pts.append(
            Point(frac(float(v.x) + size * math.cos(a)), frac(float(v.y) + size * math.sin(a)))
        )
    return convex_hull(pts)


def search_triangle_anti_exchange(
    seed: int = 0, max_trials: int = 20000
) -> Optional[Tuple[List[Polygon], Tuple[int, int, int]]]:
    """Randomized search for a triangle configuration violating anti-exchange.

    Configurations: a few random equilateral triangles, plus a pair pivoting
    about a shared vertex (support-function analysis shows a shared protruding
    vertex is necessary for a violation, so the generator biases toward it).
    Returns (shapes, (p, q, X)) for the first verified violation.
    """
    from .rng import SplitMix64

    rng = SplitMix64(seed)
    for _ in range(max_trials):
        base_size = 2.0 + 6.0 * rng.random()
        base = _equilateral(
            Point(Fraction(0), Fraction(0)), base_size, rng.random() * TWO_PI
        )
        # shared pivot vertex outside the base triangle
        pivot = Point(
            Fraction(round((rng.random() * 16 - 8) * 64), 64),
            Fraction(round((rng.random() * 16 - 8) * 64), 64),
        )
        shapes = [base]
        for _k in range(2):
            shapes.append(
                _equilateral(pivot, 0.5 + 3.0 * rng.random(), rng.random() * TWO_PI)
            )
        if rng.random() < 0.5:
            shapes.append(
                _equilateral(
                    Point(
                        Fraction(round((rng.random() * 16 - 8) * 64), 64),
                        Fraction(round((rng.random() * 16 - 8) * 64), 64),
                    ),
                    0.5 + 3.0 * rng.random(),
                    rng.random() * TWO_PI,
                )
            )
        cs = shapes_closure_system(tuple(shapes))
        ok, witness = verify_anti_exchange(cs)
        if not ok:
            return shapes, witness
    return None
