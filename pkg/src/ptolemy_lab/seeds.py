"""Seeds, the exchange relation, and exchange-graph exploration.

A seed pairs a quiver with a tuple of Laurent polynomials, one per vertex,
all expressed in the fixed initial generators x1..xn.  Mutating a seed at a
mutable vertex k replaces vars[k] by

    (prod_{i: b_ik > 0} vars[i]^b_ik + prod_{j: b_kj > 0} vars[j]^b_kj) / vars[k]

and mutates the quiver.  The division is performed exactly; its failure
would contradict the Laurent phenomenon, so it is surfaced as a fatal
LaurentViolation rather than a value.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from typing import Optional, Sequence

from .errors import DimensionError, FormatError, InvalidVertexError, LaurentViolation, NotDivisible
from .laurent import LaurentPoly, parse_laurent
from .quiver import Quiver, canonical_form, permute_quiver


class Seed:
    """Immutable (quiver, vars) pair over the initial generators."""

    __slots__ = ("quiver", "vars", "_hash")

    def __init__(self, quiver: Quiver, vars: Sequence[LaurentPoly]):
        vars = tuple(vars)
        if len(vars) != quiver.n:
            raise DimensionError(
                f"{len(vars)} vars for a quiver on {quiver.n} vertices"
            )
        for v in vars:
            if not isinstance(v, LaurentPoly):
                raise DimensionError(f"vars must be LaurentPoly, got {type(v).__name__}")
            if v.n != vars[0].n:
                raise DimensionError("vars disagree on generator count")
        self.quiver = quiver
        self.vars = vars
        self._hash = None

    @classmethod
    def initial(cls, quiver: Quiver) -> "Seed":
        """The seed with vars[i] = x_i."""
        return cls(quiver, LaurentPoly.generators(quiver.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return self.quiver == other.quiver and self.vars == other.vars

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.quiver, self.vars))
        return self._hash

    def __repr__(self) -> str:
        return f"Seed({self.quiver!r}, vars=({', '.join(str(v) for v in self.vars)}))"

    def to_dict(self) -> dict:
        return {"quiver": self.quiver.to_dict(), "vars": [str(v) for v in self.vars]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, data: dict) -> "Seed":
        if not isinstance(data, dict) or "quiver" not in data or "vars" not in data:
            raise FormatError("seed JSON must have 'quiver' and 'vars'")
        quiver = Quiver.from_dict(data["quiver"])
        texts = data["vars"]
        if not isinstance(texts, list) or len(texts) != quiver.n:
            raise FormatError(f"seed needs exactly {quiver.n} vars")
        gen_count = quiver.n
        return cls(quiver, [parse_laurent(t, gen_count) for t in texts])

    @classmethod
    def from_json(cls, text: str) -> "Seed":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid seed JSON: {e}") from None
        return cls.from_dict(data)


def exchange_products(s: Seed, k: int) -> tuple:
    """(incoming product, outgoing product) at vertex k; empty products are 1."""
    n = s.vars[0].n
    col = [s.quiver.b[i][k - 1] for i in range(s.quiver.n)]
    row = s.quiver.b[k - 1]
    inc = LaurentPoly.constant(1, n)
    out = LaurentPoly.constant(1, n)
    for i in range(s.quiver.n):
        if col[i] > 0:
            inc = inc * s.vars[i] ** col[i]
        if row[i] > 0:
            out = out * s.vars[i] ** row[i]
    return inc, out


def mutate_seed(s: Seed, k: int) -> Seed:
    """Seed mutation at mutable vertex k; exact, involutive."""
    new_quiver = s.quiver.mutate(k)  # validates k
    inc, out = exchange_products(s, k)
    try:
        new_var = (inc + out).div_exact(s.vars[k - 1])
    except NotDivisible as e:
        raise LaurentViolation(
            f"exchange relation at vertex {k} failed exact division: {e}"
        ) from None
    new_vars = list(s.vars)
    new_vars[k - 1] = new_var
    return Seed(new_quiver, new_vars)


def apply_mutation_sequence(s: Seed, ks: Sequence[int]) -> Seed:
    for k in ks:
        s = mutate_seed(s, k)
    return s


def seed_equal_up_to_permutation(a: Seed, b: Seed) -> Optional[tuple]:
    """Lexicographically least sigma with a.vars[i] = b.vars[sigma(i)] and
    a.b[i][j] = b.b[sigma(i)][sigma(j)], frozen mapping to frozen; or None.
    """
    n = a.quiver.n
    if n != b.quiver.n or len(a.quiver.frozen) != len(b.quiver.frozen):
        return None
    # vars nearly always pin sigma: collect admissible images per vertex
    candidates = []
    for i in range(1, n + 1):
        imgs = [
            j
            for j in range(1, n + 1)
            if a.vars[i - 1] == b.vars[j - 1]
            and ((i in a.quiver.frozen) == (j in b.quiver.frozen))
        ]
        if not imgs:
            return None
        candidates.append(imgs)
    ba, bb = a.quiver.b, b.quiver.b
    sigma = [0] * n
    used = [False] * (n + 1)

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for p in range(i):
                if (
                    ba[i][p] != bb[j - 1][sigma[p] - 1]
                    or ba[p][i] != bb[sigma[p] - 1][j - 1]
                ):
                    ok = False
                    break
            if not ok:
                continue
            sigma[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
        return False

    return tuple(sigma) if extend(0) else None


def canonical_seed(s: Seed) -> tuple:
    """(canonical seed, achieving permutation) for deduplication.

    The quiver is canonicalized over mutable-vertex relabelings first; among
    the permutations achieving that matrix, the one giving the
    lexicographically least var tuple wins.
    """
    cq, sigma0 = canonical_form(s.quiver)
    mut = s.quiver.mutable
    base = list(range(1, s.quiver.n + 1))
    best_key = None
    best = None
    for images in itertools.permutations(mut):
        sigma = base[:]
        for v, img in zip(mut, images):
            sigma[v - 1] = img
        if permute_quiver(s.quiver, sigma) != cq:
            continue
        new_vars = [None] * s.quiver.n
        for i in range(s.quiver.n):
            new_vars[sigma[i] - 1] = s.vars[i]
        key = tuple(v.sort_key() for v in new_vars)
        if best_key is None or key < best_key:
            best_key = key
            best = (Seed(cq, new_vars), tuple(sigma))
    return best


class ExchangeGraph:
    """Result of a breadth-first mutation closure.

    nodes: canonical seeds indexed by discovery order (node id = index).
    edges: undirected, stored once as (id_a, k, id_b) with id_a <= id_b,
    where mutating node id_a at vertex k lands on node id_b.
    variables: distinct polynomials attached to mutable vertices anywhere.
    complete: false when max_nodes or max_depth cut the search short.
    """

    def __init__(self, nodes, edges, variables, complete):
        self.nodes = list(nodes)
        self.edges = set(edges)
        self.variables = set(variables)
        self.complete = complete

    def degree(self, node_id: int) -> int:
        d = 0
        for a, _, b in self.edges:
            if a == node_id:
                d += 1
            if b == node_id:
                d += 1
        return d

    def to_dict(self) -> dict:
        var_texts = sorted(str(v) for v in self.variables)
        return {
            "nodes": [{"id": i, "seed": s.to_dict()} for i, s in enumerate(self.nodes)],
            "edges": sorted([a, k, b] for a, k, b in self.edges),
            "variables": var_texts,
            "complete": self.complete,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    def to_dot(self, name: str = "exchange_graph") -> str:
        lines = [f"graph {name} {{"]
        for i in range(len(self.nodes)):
            lines.append(f"  {i} [shape=circle];")
        for a, k, b in sorted(self.edges):
            lines.append(f'  {a} -- {b} [label="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def explore_exchange_graph(
    s: Seed, max_nodes: int = 10000, max_depth: int = 32
) -> ExchangeGraph:
    """Breadth-first closure of seed mutation, nodes deduplicated up to
    simultaneous vertex permutation.  Never raises on limits; a truncated
    search returns complete = False.
    """
    if max_nodes < 1 or max_depth < 1:
        raise InvalidVertexError("max_nodes and max_depth must be >= 1")
    root, _ = canonical_seed(s)
    ids = {root: 0}
    nodes = [root]
    depths = [0]
    edges = set()
    variables = set()
    complete = True
    queue = deque([0])
    mut = root.quiver.mutable
    for v in mut:
        variables.add(root.vars[v - 1])
    while queue:
        cur = queue.popleft()
        if depths[cur] >= max_depth:
            complete = False
            continue
        seed = nodes[cur]
        for k in mut:
            neighbor = mutate_seed(seed, k)
            canon, _ = canonical_seed(neighbor)
            nid = ids.get(canon)
            if nid is None:
                if len(nodes) >= max_nodes:
                    complete = False
                    continue
                nid = len(nodes)
                ids[canon] = nid
                nodes.append(canon)
                depths.append(depths[cur] + 1)
                for v in mut:
                    variables.add(canon.vars[v - 1])
                queue.append(nid)
            if nid >= cur:
                edges.add((cur, k, nid))
            # nid < cur: nodes expand in id order, so this edge was already
            # recorded as (nid, k', cur) while nid was being expanded
    return ExchangeGraph(nodes, edges, variables, complete)
