"""Shared generators for randomized tests (deterministic, seed-based)."""

from fractions import Fraction

from planeconvex.bodies import Disk, DiskIntersection
from planeconvex.errors import EmptyInput
from planeconvex.geom import Point
from planeconvex.rng import SplitMix64


def rational_point(rng: SplitMix64, lo: int = -10, hi: int = 10, den: int = 8) -> Point:
    return Point(
        Fraction(rng.randint(lo * den, hi * den), den),
        Fraction(rng.randint(lo * den, hi * den), den),
    )


def random_disk_intersection(rng: SplitMix64, max_disks: int = 4) -> DiskIntersection:
    """A nonempty intersection of 2..max_disks rational disks."""
    while True:
        nd = rng.randint(2, max_disks)
        disks = []
        for _ in range(nd):
            c = Point(Fraction(rng.randint(-8, 8), 4), Fraction(rng.randint(-8, 8), 4))
            r = Fraction(rng.randint(4, 12), 4)
            disks.append(Disk(c, r))
        try:
            return DiskIntersection(tuple(disks))
        except EmptyInput:
            continue
