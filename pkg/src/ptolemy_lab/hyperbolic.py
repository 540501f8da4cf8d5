"""Decorated ideal polygons in the upper half-plane and lambda lengths.

An ideal point sits on the boundary line (or at infinity); its decoration
is a horocycle, recorded by Euclidean diameter for finite points and by
height for the horizontal horocycle at infinity.  The lambda length of two
decorated points is exp(l/2) with l the signed distance between the
horocycles along the connecting geodesic:

    lambda = |x_a - x_b| / sqrt(d_a d_b)     both points finite
    lambda = sqrt(h / d)                     one point at infinity

Realization goes the other way: positive numbers on the sides and diagonals
of a triangulated polygon are the lambda lengths of some decorated ideal
polygon, constructed here by developing one vector per vertex across the
triangulation; all of that arithmetic is exact on rational input, floats
appear only in measured lengths.
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import FormatError, GeometryError
from .polygon import EdgeValues, Triangulation, polygon_sides

INF = None  # position value marking the point at infinity


class DecoratedIdealPoint:
    """Boundary point with a horocycle; position None means infinity."""

    __slots__ = ("position", "horo")

    def __init__(self, position, horo):
        if horo <= 0:
            raise GeometryError(f"horocycle parameter must be positive, got {horo}")
        self.position = position
        self.horo = horo

    def is_infinite(self) -> bool:
        return self.position is None

    def __repr__(self) -> str:
        pos = "inf" if self.is_infinite() else self.position
        return f"DecoratedIdealPoint({pos}, {self.horo})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecoratedIdealPoint):
            return NotImplemented
        return self.position == other.position and self.horo == other.horo


def lambda_length(a: DecoratedIdealPoint, b: DecoratedIdealPoint) -> float:
    """exp(half the signed horocycle distance); symmetric, positive."""
    if a.is_infinite() and b.is_infinite():
        raise GeometryError("both points at infinity")
    if a.is_infinite() or b.is_infinite():
        inf, fin = (a, b) if a.is_infinite() else (b, a)
        return math.sqrt(float(inf.horo) / float(fin.horo))
    if a.position == b.position:
        raise GeometryError(f"identical boundary points at {a.position}")
    gap = abs(float(a.position) - float(b.position))
    return gap / math.sqrt(float(a.horo) * float(b.horo))


def verify_ptolemy_hyperbolic(points: Sequence) -> float:
    """Residual of lam_AB lam_CD + lam_BC lam_DA - lam_AC lam_BD for four
    decorated points in cyclic boundary order; vanishes identically."""
    if len(points) != 4:
        raise GeometryError(f"need four points, got {len(points)}")
    A, B, C, D = points
    return (
        lambda_length(A, B) * lambda_length(C, D)
        + lambda_length(B, C) * lambda_length(D, A)
        - lambda_length(A, C) * lambda_length(B, D)
    )


def farey_point(p: int, q: int) -> DecoratedIdealPoint:
    """The decorated point at p/q (lowest terms) with horocycle 1/q^2, or
    at infinity (q = 0) with height p^2; lambda lengths between such points
    are the integers |p s - r q|."""
    p, q = int(p), int(q)
    if math.gcd(p, q) != 1:
        raise GeometryError(f"{p}/{q} is not in lowest terms")
    if q == 0:
        return DecoratedIdealPoint(INF, Fraction(p * p))
    if q < 0:
        p, q = -p, -q
    return DecoratedIdealPoint(Fraction(p, q), Fraction(1, q * q))


class DecoratedIdealPolygon:
    """Cyclically ordered decorated ideal points, at most one at infinity,
    finite positions strictly increasing along the cyclic order."""

    __slots__ = ("points",)

    def __init__(self, points: Sequence[DecoratedIdealPoint]):
        points = list(points)
        if len(points) < 3:
            raise GeometryError("ideal polygon needs at least 3 vertices")
        inf_idx = [i for i, p in enumerate(points) if p.is_infinite()]
        if len(inf_idx) > 1:
            raise GeometryError("at most one vertex may sit at infinity")
        if inf_idx:
            start = inf_idx[0] + 1
            finite = [points[(start + i) % len(points)] for i in range(len(points) - 1)]
        else:
            start = min(range(len(points)), key=lambda i: points[i].position)
            finite = [points[(start + i) % len(points)] for i in range(len(points))]
        xs = [p.position for p in finite]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            raise GeometryError(
                "positions must increase strictly along the cyclic order"
            )
        self.points = points

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> DecoratedIdealPoint:
        return self.points[i]

    def lambda_table(self) -> dict:
        """Measured lambda length for every vertex pair, 1-based keys."""
        m = len(self.points)
        return {
            (i + 1, j + 1): lambda_length(self.points[i], self.points[j])
            for i, j in itertools.combinations(range(m), 2)
        }

    def to_list(self) -> list:
        """[(position | 'inf', horo)] pairs, 12 significant digits."""
        out = []
        for p in self.points:
            pos = "inf" if p.is_infinite() else float(f"{float(p.position):.12g}")
            out.append([pos, float(f"{float(p.horo):.12g}")])
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_list(), separators=(", ", ": "))

    @classmethod
    def from_list(cls, data) -> "DecoratedIdealPolygon":
        points = []
        for item in data:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise FormatError(f"polygon entry must be [position, horo], got {item!r}")
            pos, horo = item
            points.append(
                DecoratedIdealPoint(None if pos == "inf" else float(pos), float(horo))
            )
        return cls(points)


def realize_polygon(t: Triangulation, vals: EdgeValues) -> DecoratedIdealPolygon:
    """A decorated ideal polygon whose lambda lengths on the sides and the
    diagonals of t are exactly the given positive values.

    Gauge: vertex 1 at infinity with height 1, vertex 2 at position 0.
    Each vertex v carries a development vector (b_v, a_v) with
    det(v_u, v_w) = lambda(u, w) for u < w; position and horocycle are
    a/b and 1/b^2.  Everything is exact rational.
    """
    m = t.m
    needed = set(polygon_sides(m)) | set(t.diagonals)
    have = {k for k, _ in vals.items()}
    if have != needed:
        raise GeometryError(
            f"values must cover exactly the sides and the triangulation's "
            f"diagonals; missing {sorted(needed - have)}, extra {sorted(have - needed)}"
        )

    def lam(u: int, w: int) -> Fraction:
        return vals.get(u, w)

    vec = {1: (Fraction(0), Fraction(-1)), 2: (lam(1, 2), Fraction(0))}
    triangles = t.triangles()
    placed_tris = set()
    while len(vec) < m:
        progressed = False
        for tri in triangles:
            if tri in placed_tris:
                continue
            known = [v for v in tri if v in vec]
            if len(known) < 2:
                continue
            placed_tris.add(tri)
            progressed = True
            if len(known) == 3:
                continue
            u, w = known
            (c,) = (v for v in tri if v not in vec)
            bu, au = vec[u]
            bw, aw = vec[w]
            r1 = lam(u, c) if u < c else -lam(c, u)
            r2 = lam(w, c) if w < c else -lam(c, w)
            # solve det(v_u, x) = r1, det(v_w, x) = r2 for x = (b, a)
            D = bu * aw - au * bw
            b = (r1 * bw - r2 * bu) / D
            a = (r1 * aw - r2 * au) / D
            vec[c] = (b, a)
        if not progressed:
            raise GeometryError("triangulation did not develop to all vertices")
    points = [DecoratedIdealPoint(INF, Fraction(1))]
    for v in range(2, m + 1):
        b, a = vec[v]
        if b <= 0:
            raise GeometryError(f"development placed vertex {v} out of order")
        points.append(DecoratedIdealPoint(a / b, 1 / (b * b)))
    return DecoratedIdealPolygon(points)
