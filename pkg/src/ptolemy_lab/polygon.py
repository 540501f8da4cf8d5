"""Labeled convex polygons: triangulations, flips, induced quivers,
Ptolemy propagation, Pluecker coordinates, and the Euclidean Ptolemy check.

Vertices of the m-gon are labeled 1..m clockwise.  A chord {i,j} is a side
when i and j are cyclically adjacent and a diagonal otherwise.  All
arithmetic here is exact rational; the identities being checked hold
exactly on rational data.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DegenerateSubspaceError, FormatError, GeometryError
from .quiver import Quiver


def _norm_chord(pair) -> tuple:
    i, j = pair
    i, j = int(i), int(j)
    return (i, j) if i < j else (j, i)


def chords_cross(a, b) -> bool:
    """Strict interior crossing of two polygon chords."""
    (a1, a2), (b1, b2) = _norm_chord(a), _norm_chord(b)
    return a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2


def is_side(pair, m: int) -> bool:
    i, j = _norm_chord(pair)
    return j - i == 1 or (i == 1 and j == m)


def polygon_sides(m: int) -> list:
    """The m boundary sides as normalized pairs, in vertex order."""
    return [(i, i + 1) for i in range(1, m)] + [(1, m)]


class Triangulation:
    """A triangulation of the labeled convex m-gon by m-3 noncrossing
    diagonals."""

    __slots__ = ("m", "diagonals", "_hash")

    def __init__(self, m: int, diagonals: Iterable):
        m = int(m)
        if m < 3:
            raise FormatError(f"polygon needs at least 3 vertices, got {m}")
        diags = tuple(sorted(_norm_chord(d) for d in diagonals))
        if len(set(diags)) != len(diags):
            raise FormatError("duplicate diagonals")
        for i, j in diags:
            if not (1 <= i <= m and 1 <= j <= m) or i == j:
                raise FormatError(f"bad diagonal ({i},{j}) for m={m}")
            if is_side((i, j), m):
                raise FormatError(f"({i},{j}) is a side, not a diagonal")
        if len(diags) != m - 3:
            raise FormatError(f"expected {m - 3} diagonals for m={m}, got {len(diags)}")
        for d1, d2 in itertools.combinations(diags, 2):
            if chords_cross(d1, d2):
                raise FormatError(f"diagonals {d1} and {d2} cross")
        self.m = m
        self.diagonals = diags
        self._hash = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.m == other.m and self.diagonals == other.diagonals

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.diagonals))
        return self._hash

    def __repr__(self) -> str:
        return f"Triangulation({self.m}, {list(self.diagonals)})"

    def arcs(self) -> list:
        """Sides then diagonals, each a normalized pair."""
        return polygon_sides(self.m) + list(self.diagonals)

    def triangles(self) -> list:
        """The m-2 triangles as sorted vertex triples.

        In a triangulation of a convex polygon the faces are exactly the
        3-cliques of the arc graph, so the search below is sound.
        """
        arcset = set(self.arcs())
        out = []
        for u, v in sorted(arcset):
            for w in range(v + 1, self.m + 1):
                if (u, w) in arcset and (v, w) in arcset:
                    out.append((u, v, w))
        out = sorted(set(out))
        assert len(out) == self.m - 2
        return out

    def to_text(self) -> str:
        lines = [str(self.m)]
        for i, j in self.diagonals:
            lines.append(f"{i} {j}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("empty triangulation text")
        try:
            m = int(lines[0])
        except ValueError:
            raise FormatError(f"first line must be the vertex count, got {lines[0]!r}") from None
        diags = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"diagonal line must be 'i j', got {ln!r}")
            try:
                diags.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise FormatError(f"non-integer diagonal {ln!r}") from None
        return cls(m, diags)


def fan_triangulation(m: int, apex: int = 1) -> Triangulation:
    """All diagonals from one vertex."""
    if not 1 <= apex <= m:
        raise GeometryError(f"apex {apex} out of range 1..{m}")
    others = [(apex + k - 1) % m + 1 for k in range(2, m - 1)]
    return Triangulation(m, [(apex, v) for v in others])


def enumerate_triangulations(m: int) -> List[Triangulation]:
    """All triangulations of the labeled m-gon, deterministically ordered.

    Catalan-count recursion: the triangle on the side (first, last) of each
    sub-polygon ranges over all intermediate apexes.
    """
    if m < 3:
        raise FormatError(f"polygon needs at least 3 vertices, got {m}")

    def rec(vertices: tuple) -> list:
        if len(vertices) < 3:
            return [[]]
        first, last = vertices[0], vertices[-1]
        out = []
        for idx in range(1, len(vertices) - 1):
            apex = vertices[idx]
            left = rec(vertices[: idx + 1])
            right = rec(vertices[idx:])
            extra = []
            if idx > 1:
                extra.append((first, apex))
            if idx < len(vertices) - 2:
                extra.append((apex, last))
            for a in left:
                for b in right:
                    out.append(a + b + extra)
        return out

    return [Triangulation(m, ds) for ds in rec(tuple(range(1, m + 1)))]


def flip_quad(t: Triangulation, d) -> tuple:
    """The quadrilateral around diagonal d as (a, p, b, q): d = {a, b} and
    p, q the apexes of its two adjacent triangles, each sorted ascending."""
    d = _norm_chord(d)
    if d not in t.diagonals:
        raise GeometryError(f"{d} is not a diagonal of the triangulation")
    a, b = d
    apexes = [tri for tri in t.triangles() if a in tri and b in tri]
    assert len(apexes) == 2
    p, q = sorted(
        next(v for v in tri if v != a and v != b) for tri in apexes
    )
    return a, p, b, q


def flip(t: Triangulation, d) -> Triangulation:
    """Replace diagonal d by the other diagonal of its quadrilateral."""
    d = _norm_chord(d)
    a, p, b, q = flip_quad(t, d)
    new = [x for x in t.diagonals if x != d] + [_norm_chord((p, q))]
    return Triangulation(t.m, new)


def quiver_from_triangulation(
    t: Triangulation,
    include_boundary: bool = False,
    arc_order: Optional[Sequence] = None,
) -> tuple:
    """(quiver, arcs): one quiver vertex per arc, arrows following each
    triangle clockwise.

    Arcs are the diagonals (plus the boundary sides, frozen, when
    include_boundary is set).  Default order: sorted diagonals, then sorted
    sides.  Pass arc_order to pin vertex indices, e.g. to keep labels stable
    across a flip.  Arrows between two frozen vertices are dropped.
    """
    if arc_order is not None:
        arcs = [_norm_chord(a) for a in arc_order]
        expected = set(t.diagonals) | (
            set(polygon_sides(t.m)) if include_boundary else set()
        )
        if set(arcs) != expected or len(arcs) != len(expected):
            raise GeometryError("arc_order must be a permutation of the arcs")
    else:
        arcs = sorted(t.diagonals)
        if include_boundary:
            arcs += sorted(polygon_sides(t.m))
    index = {arc: i for i, arc in enumerate(arcs)}
    frozen = [i + 1 for i, arc in enumerate(arcs) if is_side(arc, t.m)]
    n = len(arcs)
    b = [[0] * n for _ in range(n)]
    for u, v, w in t.triangles():
        # clockwise vertex labels make (u,v), (v,w), (w,u) the clockwise
        # arc cycle of the triangle
        cycle = [(u, v), (v, w), (u, w)]
        for src, dst in ((0, 1), (1, 2), (2, 0)):
            a, c = cycle[src], cycle[dst]
            ia, ic = index.get(a), index.get(c)
            if ia is None or ic is None:
                continue
            if ia + 1 in frozen and ic + 1 in frozen:
                continue
            b[ia][ic] += 1
            b[ic][ia] -= 1
    return Quiver(b, frozen), tuple(arcs)


class EdgeValues:
    """Positive exact rationals on polygon chords, keyed by vertex pair."""

    __slots__ = ("values",)

    def __init__(self, values: Optional[dict] = None):
        self.values: Dict[tuple, Fraction] = {}
        for key, val in (values or {}).items():
            self.set(key, val)

    @staticmethod
    def _key(key) -> tuple:
        if isinstance(key, str):
            parts = key.split("-")
            if len(parts) != 2:
                raise FormatError(f"edge key must look like 'i-j', got {key!r}")
            try:
                key = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise FormatError(f"non-integer edge key {key!r}") from None
        i, j = _norm_chord(key)
        if i == j or i < 1:
            raise FormatError(f"bad edge key ({i},{j})")
        return (i, j)

    def set(self, key, val) -> None:
        try:
            val = Fraction(val)
        except (ValueError, ZeroDivisionError, TypeError):
            raise FormatError(f"edge value {val!r} is not a rational") from None
        if val <= 0:
            raise FormatError(f"edge value for {key} must be positive, got {val}")
        self.values[self._key(key)] = val

    def get(self, i, j=None) -> Fraction:
        key = self._key(i if j is None else (i, j))
        if key not in self.values:
            raise GeometryError(f"no value for chord {key}")
        return self.values[key]

    def __contains__(self, key) -> bool:
        return self._key(key) in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeValues):
            return NotImplemented
        return self.values == other.values

    def items(self):
        return sorted(self.values.items())

    def copy(self) -> "EdgeValues":
        out = EdgeValues()
        out.values = dict(self.values)
        return out

    def to_dict(self) -> dict:
        return {f"{i}-{j}": str(v) for (i, j), v in sorted(self.values.items())}

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeValues":
        if not isinstance(data, dict):
            raise FormatError("edge values must be a JSON object")
        return cls(data)

    def __repr__(self) -> str:
        return f"EdgeValues({self.to_dict()})"


def ptolemy_propagate(
    t: Triangulation, seedvals: EdgeValues, rng=None
) -> EdgeValues:
    """Extend positive values on sides + t.diagonals to every chord so that
    each flip quadrilateral (i<j<k<l) satisfies

        val(ik) * val(jl) = val(ij) * val(kl) + val(jk) * val(il).

    Works by flipping toward the fan at each vertex in turn, applying the
    relation once per new diagonal.  The result does not depend on the flip
    order (a property test checks this); pass rng to randomize the order.
    """
    m = t.m
    needed = set(polygon_sides(m)) | set(t.diagonals)
    have = {k for k, _ in seedvals.items()}
    if have != needed:
        raise GeometryError(
            f"seed values must cover exactly the sides and the triangulation's "
            f"diagonals; missing {sorted(needed - have)}, extra {sorted(have - needed)}"
        )
    vals = seedvals.copy()

    def do_flip(cur: Triangulation, d) -> Triangulation:
        a, p, b, q = flip_quad(cur, d)
        i, j, k, l = sorted((a, p, b, q))
        # the old and new diagonals are the two crossing pairs of the
        # sorted quad: {i,k} and {j,l}
        d = _norm_chord(d)
        new = (j, l) if d == (i, k) else (i, k)
        if new not in vals:
            rhs = vals.get(i, j) * vals.get(k, l) + vals.get(j, k) * vals.get(i, l)
            vals.set(new, rhs / vals.get(*d))
        return flip(cur, d)

    cur = t
    vertex_order = list(range(1, m + 1))
    if rng is not None:
        rng.shuffle(vertex_order)
    for target in vertex_order:
        # drive toward the fan at `target`: flipping any diagonal whose
        # quad has `target` as an apex adds a diagonal at `target`
        while True:
            eligible = [
                d
                for d in cur.diagonals
                if target not in d and target in flip_quad(cur, d)
            ]
            if not eligible:
                break
            d = rng.choice(eligible) if rng is not None else eligible[0]
            cur = do_flip(cur, d)
    return vals


def all_chords(m: int) -> list:
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


def pluecker_from_matrix(matrix: Sequence[Sequence]) -> dict:
    """All 2x2 column minors p_ij = a_1i a_2j - a_1j a_2i, exact.

    Raises when the matrix does not have two rows of equal length, or when
    its rank is below 2 (all minors zero).
    """
    if len(matrix) != 2:
        raise FormatError(f"need a 2-row matrix, got {len(matrix)} rows")
    try:
        row1 = [Fraction(x) for x in matrix[0]]
        row2 = [Fraction(x) for x in matrix[1]]
    except (ValueError, ZeroDivisionError, TypeError):
        raise FormatError("matrix entries must be rationals") from None
    if len(row1) != len(row2):
        raise FormatError("matrix rows differ in length")
    n = len(row1)
    if n < 2:
        raise FormatError("need at least 2 columns")
    p = {
        (i + 1, j + 1): row1[i] * row2[j] - row1[j] * row2[i]
        for i in range(n)
        for j in range(i + 1, n)
    }
    if all(v == 0 for v in p.values()):
        raise DegenerateSubspaceError("matrix has rank < 2: all minors vanish")
    return p


def verify_pluecker(p: dict) -> list:
    """Violating quadruples (i,j,k,l) of the three-term relation

        p_ik p_jl = p_ij p_kl + p_il p_jk

    checked exactly over all i<j<k<l.  Empty for any pluecker_from_matrix
    output.
    """
    keys = {_norm_chord(k) for k in p}
    if not keys:
        raise FormatError("empty coordinate map")
    n = max(j for _, j in keys)
    if keys != set(all_chords(n)):
        raise FormatError(f"coordinates must cover all pairs of 1..{n}")
    q = {_norm_chord(k): Fraction(v) for k, v in p.items()}
    bad = []
    for i, j, k, l in itertools.combinations(range(1, n + 1), 4):
        if q[(i, k)] * q[(j, l)] != q[(i, j)] * q[(k, l)] + q[(i, l)] * q[(j, k)]:
            bad.append((i, j, k, l))
    return bad


def _dist(p, q) -> float:
    return math.hypot(float(p[0]) - float(q[0]), float(p[1]) - float(q[1]))


def verify_ptolemy_euclidean(points: Sequence, tol: float = 1e-9) -> tuple:
    """(residual, cyclic flag) for four planar points in convex position
    order A,B,C,D: residual = AB*CD + BC*AD - AC*BD, nonnegative up to
    rounding, and zero exactly on concyclic quadruples."""
    if len(points) != 4:
        raise GeometryError(f"need four points, got {len(points)}")
    for a, b in itertools.combinations(points, 2):
        if float(a[0]) == float(b[0]) and float(a[1]) == float(b[1]):
            raise GeometryError(f"coincident points {a} and {b}")
    A, B, C, D = points
    residual = _dist(A, B) * _dist(C, D) + _dist(B, C) * _dist(A, D) - _dist(A, C) * _dist(B, D)
    return residual, abs(residual) <= tol
