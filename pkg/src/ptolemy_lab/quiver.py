"""Quivers without loops or 2-cycles, and the mutation rule.

A quiver is a skew-symmetric integer matrix b with b[i][j] = number of
arrows from vertex i to vertex j (negative meaning reversed), plus a set of
frozen vertices at which mutation is forbidden.  Vertices are labeled 1..n
in every public signature.

Mutation at k reverses all arrows through k and, for every path i -> k -> j,
adds the product of multiplicities to the arrow count from i to j:

    b'_ij = -b_ij                                  if i = k or j = k
    b'_ij = b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2   otherwise

It is an involution, which several test suites check exactly.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Optional, Sequence

from .errors import FormatError, InvalidVertexError


class Quiver:
    """Immutable quiver on vertices 1..n.

    Arrows between two frozen vertices are stored like any others; callers
    that do not care about them (the exchange relation never consults them)
    filter on their side.
    """

    __slots__ = ("n", "b", "frozen", "_hash")

    def __init__(self, b: Sequence[Sequence[int]], frozen: Iterable[int] = ()):
        rows = tuple(tuple(int(x) for x in row) for row in b)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise FormatError("b must be a square matrix")
        for i in range(n):
            if rows[i][i] != 0:
                raise FormatError(f"loop at vertex {i + 1}: b[{i + 1}][{i + 1}] != 0")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise FormatError(
                        f"matrix not skew-symmetric at ({i + 1},{j + 1})"
                    )
        fr = frozenset(int(v) for v in frozen)
        if any(not 1 <= v <= n for v in fr):
            raise FormatError(f"frozen vertices out of range 1..{n}: {sorted(fr)}")
        self.n = n
        self.b = rows
        self.frozen = fr
        self._hash = None

    @property
    def mutable(self) -> tuple:
        return tuple(v for v in range(1, self.n + 1) if v not in self.frozen)

    def arrows(self) -> list:
        """Directed arrows as (i, j, multiplicity) with multiplicity > 0."""
        return [
            (i + 1, j + 1, self.b[i][j])
            for i in range(self.n)
            for j in range(self.n)
            if self.b[i][j] > 0
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.b == other.b and self.frozen == other.frozen

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.b, self.frozen))
        return self._hash

    def __repr__(self) -> str:
        return f"Quiver(n={self.n}, frozen={sorted(self.frozen)}, arrows={self.arrows()})"

    def check_vertex(self, k: int) -> None:
        if not isinstance(k, int) or not 1 <= k <= self.n:
            raise InvalidVertexError(f"vertex {k} out of range 1..{self.n}")

    def mutate(self, k: int) -> "Quiver":
        """The mutated quiver; k must be a mutable vertex."""
        self.check_vertex(k)
        if k in self.frozen:
            raise InvalidVertexError(f"vertex {k} is frozen")
        a = self.b
        ki = k - 1
        new = [
            [
                -a[i][j]
                if i == ki or j == ki
                else a[i][j] + (abs(a[i][ki]) * a[ki][j] + a[i][ki] * abs(a[ki][j])) // 2
                for j in range(self.n)
            ]
            for i in range(self.n)
        ]
        return Quiver(new, self.frozen)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "frozen": sorted(self.frozen), "b": [list(r) for r in self.b]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        if not isinstance(data, dict):
            raise FormatError("quiver JSON must be an object")
        missing = {"n", "b"} - set(data)
        if missing:
            raise FormatError(f"quiver JSON missing keys: {sorted(missing)}")
        b = data["b"]
        if not isinstance(b, list) or not all(isinstance(r, list) for r in b):
            raise FormatError("quiver key 'b' must be a list of rows")
        q = cls(b, data.get("frozen", ()))
        if q.n != data["n"]:
            raise FormatError(f"quiver key 'n' = {data['n']} but b is {q.n}x{q.n}")
        return q

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid quiver JSON: {e}") from None
        return cls.from_dict(data)

    def to_dot(self, name: str = "quiver") -> str:
        """Graphviz rendering; frozen vertices drawn as boxes."""
        lines = [f"digraph {name} {{"]
        for v in range(1, self.n + 1):
            shape = "box" if v in self.frozen else "circle"
            lines.append(f'  {v} [shape={shape}];')
        for i, j, w in self.arrows():
            if w > 1:
                lines.append(f'  {i} -> {j} [label="{w}"];')
            else:
                lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def permute_quiver(q: Quiver, sigma: Sequence[int]) -> Quiver:
    """Relabel vertex i as sigma[i-1]; frozen follows along."""
    if sorted(sigma) != list(range(1, q.n + 1)):
        raise InvalidVertexError(f"not a permutation of 1..{q.n}: {sigma}")
    new = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        si = sigma[i] - 1
        row = q.b[i]
        for j in range(q.n):
            new[si][sigma[j] - 1] = row[j]
    return Quiver(new, (sigma[v - 1] for v in q.frozen))


def quiver_equal_up_to_permutation(a: Quiver, b: Quiver) -> Optional[tuple]:
    """Lexicographically least vertex bijection sigma with
    a.b[i][j] = b.b[sigma(i)][sigma(j)] for all i, j, or None.

    Frozen vertices must map to frozen vertices.
    """
    if a.n != b.n or len(a.frozen) != len(b.frozen):
        return None
    ba, bb = a.b, b.b
    for sigma in itertools.permutations(range(1, a.n + 1)):
        if any((sigma[v - 1] in b.frozen) != (v in a.frozen) for v in range(1, a.n + 1)):
            continue
        if all(
            ba[i][j] == bb[sigma[i] - 1][sigma[j] - 1]
            for i in range(a.n)
            for j in range(a.n)
        ):
            return sigma
    return None


def canonical_form(q: Quiver) -> tuple:
    """(canonical quiver, achieving permutation).

    The canonical quiver has the lexicographically least flattened matrix
    over all relabelings of the mutable vertices; frozen vertices are held
    fixed.  Two quivers share a canonical form exactly when they are equal
    up to a frozen-fixing permutation.
    """
    mut = q.mutable
    if not mut:
        return q, tuple(range(1, q.n + 1))
    best = None
    best_sigma = None
    base = list(range(1, q.n + 1))
    for images in itertools.permutations(mut):
        sigma = base[:]
        for v, img in zip(mut, images):
            sigma[v - 1] = img
        cand = permute_quiver(q, sigma)
        key = cand.b
        if best is None or key < best[0] or (key == best[0] and sigma < best_sigma):
            best = (key, cand)
            best_sigma = sigma
    return best[1], tuple(best_sigma)
