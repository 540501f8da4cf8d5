"""Frieze patterns over a polygon: construction, validation, unitarity.

A frieze on the m-gon assigns an exact rational to every chord {i,j} so
that the boundary sides carry 1 and every quadrilateral (i, i+1, j, j+1)
satisfies the diamond rule

    entry(i,j) * entry(i+1,j+1) - entry(i+1,j) * entry(i,j+1) = 1,

the Ptolemy relation with unit sides.  The classical grid picture renders
entry(i,j) in row |i-j|-1 with successive rows shifted half a step; rows
are m-periodic because chord labels live mod m.

Friezes built from a triangulation (value 1 on every diagonal of the
triangulation, everything else forced by the rule) consist of positive
integers; that is checked by tests rather than assumed here, and such
friezes are unitary by construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import FormatError, GeometryError
from .hyperbolic import realize_polygon
from .polygon import (
    EdgeValues,
    Triangulation,
    all_chords,
    enumerate_triangulations,
    polygon_sides,
    ptolemy_propagate,
)


class Frieze:
    """Chord-indexed frieze on the m-gon; construction validates the side
    rows and the diamond rule exactly."""

    __slots__ = ("m", "table", "source")

    def __init__(self, m: int, table, source: Optional[Triangulation] = None):
        m = int(m)
        if m < 3:
            raise FormatError(f"friezes need m >= 3, got {m}")
        if isinstance(table, EdgeValues):
            table = dict(table.values)
        clean = {}
        for key, val in table.items():
            i, j = key
            if not (1 <= i <= m and 1 <= j <= m) or i == j:
                raise FormatError(f"bad chord ({i},{j}) for m={m}")
            clean[(min(i, j), max(i, j))] = Fraction(val)
        if set(clean) != set(all_chords(m)):
            raise FormatError("frieze table must cover every chord of the polygon")
        self.m = m
        self.table = clean
        self.source = source
        for i, j in polygon_sides(m):
            if self.table[(i, j)] != 1:
                raise FormatError(f"side ({i},{j}) must carry 1")
        for i in range(1, m + 1):
            for step in range(2, m - 1):
                j = (i + step - 1) % m + 1
                lhs = self.entry(i, j) * self.entry(i + 1, j + 1)
                rhs = 1 + self.entry(i + 1, j) * self.entry(i, j + 1)
                if lhs != rhs:
                    raise FormatError(
                        f"diamond rule fails on quadrilateral "
                        f"({i},{i + 1},{j},{j + 1})"
                    )

    def entry(self, i: int, j: int) -> Fraction:
        """Value on chord {i,j}, labels mod m."""
        i = (i - 1) % self.m + 1
        j = (j - 1) % self.m + 1
        if i == j:
            raise GeometryError(f"no entry for coincident labels ({i},{j})")
        return self.table[(min(i, j), max(i, j))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frieze):
            return NotImplemented
        return self.m == other.m and self.table == other.table

    def __repr__(self) -> str:
        return f"Frieze(m={self.m})"

    def grid(self) -> List[List[Fraction]]:
        """Rows of one period: row r (0-based) holds the chords at cyclic
        distance r+1, column c belonging to chord (c+1, c+2+r)."""
        return [
            [self.entry(c, c + r + 1) for c in range(1, self.m + 1)]
            for r in range(1, self.m)
        ]

    def quiddity(self) -> List[Fraction]:
        """The second row read as entry(i-1, i+1), one period."""
        return [self.entry(i - 1, i + 1) for i in range(1, self.m + 1)]

    def to_edge_values(self) -> EdgeValues:
        out = EdgeValues()
        for (i, j), v in sorted(self.table.items()):
            out.set((i, j), v)
        return out

    def to_text(self) -> str:
        """m, then the grid rows; the half-step stagger is encoded by a
        leading blank on the side row and every second row below it."""
        lines = [str(self.m)]
        for r, row in enumerate(self.grid()):
            prefix = " " if r % 2 == 0 else ""
            lines.append(prefix + " ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Frieze":
        lines = text.splitlines()
        if not lines:
            raise FormatError("empty frieze text")
        try:
            m = int(lines[0].strip())
        except ValueError:
            raise FormatError(f"first line must be m, got {lines[0]!r}") from None
        rows = []
        for r, ln in enumerate(lines[1:]):
            if not ln.strip():
                continue
            has_blank = ln.startswith(" ")
            if has_blank != (r % 2 == 0):
                raise FormatError(f"row {r} has the wrong stagger prefix")
            try:
                rows.append([Fraction(tok) for tok in ln.split()])
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"non-rational entry in row {r}") from None
        if len(rows) != m - 1:
            raise FormatError(f"expected {m - 1} rows for m={m}, got {len(rows)}")
        table = {}
        for r, row in enumerate(rows):
            if len(row) != m:
                raise FormatError(f"row {r} must have {m} entries, got {len(row)}")
            for c, v in enumerate(row):
                i = c + 1
                j = (c + r + 1) % m + 1
                key = (min(i, j), max(i, j))
                if key in table and table[key] != v:
                    raise FormatError(
                        f"chord {key} listed twice with different values"
                    )
                table[key] = v
        return cls(m, table)


def frieze_from_triangulation(t: Triangulation) -> Frieze:
    """The frieze with 1 on every side and every diagonal of t."""
    seed = EdgeValues()
    for arc in t.arcs():
        seed.set(arc, 1)
    vals = ptolemy_propagate(t, seed)
    return Frieze(t.m, vals.values, source=t)


def check_frieze(rows: Sequence[Sequence], cyclic: bool = True, offsets=None) -> dict:
    """Validate a frieze grid and report its structure.

    cyclic mode (default): rows are one full period, each of length
    m = len(rows)+1, columns wrapping mod m.  Ragged input is a format
    error.  Window mode (cyclic=False): rows are a finite excerpt of the
    infinite strip; offsets[r] places row r's first entry at a visual
    half-step position (default r, the canonical drift); diamonds are
    checked wherever all four entries are visible.

    Report keys: diamond_ok, violations, positive, integer, period,
    shift_by_m_ok, diamonds_checked.
    """
    if not rows or any(not row for row in rows):
        raise FormatError("frieze grid needs nonempty rows")
    rows = [[Fraction(v) for v in row] for row in rows]
    m = len(rows) + 1
    if any(v != 1 for v in rows[0]) or any(v != 1 for v in rows[-1]):
        raise FormatError("first and last rows must consist of 1's")
    flat = [v for row in rows for v in row]
    report = {
        "positive": all(v > 0 for v in flat),
        "integer": all(v.denominator == 1 for v in flat),
    }
    violations = []
    checked = 0
    if cyclic:
        if any(len(row) != m for row in rows):
            raise FormatError(
                f"cyclic grid rows must each have m={m} entries"
            )
        for r in range(1, len(rows) - 1):
            for c in range(m):
                a = rows[r][c]
                d = rows[r][(c + 1) % m]
                b = rows[r - 1][(c + 1) % m]
                cc = rows[r + 1][c]
                checked += 1
                if a * d - b * cc != 1:
                    violations.append((r, c))
        period = m
        for p in range(1, m + 1):
            if all(
                row[c] == row[(c + p) % m] for row in rows for c in range(m)
            ):
                period = p
                break
        shift_ok = all(row[c] == row[(c + m) % m] for row in rows for c in range(m))
    else:
        if offsets is None:
            offsets = list(range(len(rows)))
        if len(offsets) != len(rows):
            raise FormatError("need one offset per row")
        pos = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                pos[(r, offsets[r] + 2 * c)] = v
        for (r, v), a in pos.items():
            d = pos.get((r, v + 2))
            b = pos.get((r - 1, v + 1))
            cc = pos.get((r + 1, v + 1))
            if None in (d, b, cc):
                continue
            checked += 1
            if a * d - b * cc != 1:
                violations.append((r, v))
        period = None
        for p in range(1, max(len(row) for row in rows) + 1):
            pairs = [
                (val, pos[(r, v + 2 * p)])
                for (r, v), val in pos.items()
                if (r, v + 2 * p) in pos
            ]
            if pairs and all(x == y for x, y in pairs):
                period = p
                break
        shift_pairs = [
            (val, pos[(r, v + 2 * m)])
            for (r, v), val in pos.items()
            if (r, v + 2 * m) in pos
        ]
        shift_ok = all(x == y for x, y in shift_pairs)
    report.update(
        diamond_ok=not violations,
        violations=violations,
        period=period,
        shift_by_m_ok=shift_ok,
        diamonds_checked=checked,
    )
    return report


def is_unitary(f: Frieze) -> Optional[Triangulation]:
    """First triangulation (enumeration order) whose diagonals all carry
    entry 1, or None.  Exhaustive over Catalan-many candidates."""
    for t in enumerate_triangulations(f.m):
        if all(f.entry(i, j) == 1 for i, j in t.diagonals):
            return t
    return None


def frieze_entries_as_lambda(f: Frieze) -> float:
    """Maximum absolute deviation between f's entries and the lambda
    lengths of the polygon realizing f's source triangulation with unit
    values.  Requires f to have been built from a triangulation."""
    if f.source is None:
        raise GeometryError("frieze does not carry a source triangulation")
    t = f.source
    vals = EdgeValues()
    for arc in t.arcs():
        vals.set(arc, 1)
    poly = realize_polygon(t, vals)
    table = poly.lambda_table()
    return max(
        abs(table[(i, j)] - float(f.table[(i, j)])) for i, j in all_chords(f.m)
    )
