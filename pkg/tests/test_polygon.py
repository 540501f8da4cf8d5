"""Triangulations, flips, induced quivers, Ptolemy propagation, Pluecker."""

import itertools
import math
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptolemy_lab import DegenerateSubspaceError, FormatError, GeometryError
from ptolemy_lab.polygon import (
    EdgeValues,
    Triangulation,
    all_chords,
    chords_cross,
    enumerate_triangulations,
    fan_triangulation,
    flip,
    flip_quad,
    pluecker_from_matrix,
    polygon_sides,
    ptolemy_propagate,
    quiver_from_triangulation,
    verify_pluecker,
    verify_ptolemy_euclidean,
)

# the octagon triangulation whose quiddity is (2,1,3,4,1,2,2,3)
OCTAGON_T = Triangulation(8, [(1, 3), (3, 8), (4, 8), (4, 6), (4, 7)])


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


def test_enumerate_small_counts():
    quads = enumerate_triangulations(4)
    assert sorted(t.diagonals for t in quads) == [((1, 3),), ((2, 4),)]
    assert len(enumerate_triangulations(5)) == 5
    assert len(enumerate_triangulations(6)) == 14


def test_enumerate_catalan_counts_no_duplicates():
    for m in range(3, 9):
        ts = enumerate_triangulations(m)
        assert len(ts) == catalan(m - 2)
        assert len(set(ts)) == len(ts)
        for t in ts:
            assert len(t.triangles()) == m - 2


def test_triangulation_validation():
    with pytest.raises(FormatError):
        Triangulation(2, [])
    with pytest.raises(FormatError):
        Triangulation(5, [(1, 3)])  # wrong count
    with pytest.raises(FormatError):
        Triangulation(6, [(1, 3), (2, 4), (1, 5)])  # 1-3 crosses 2-4
    with pytest.raises(FormatError):
        Triangulation(5, [(1, 2), (1, 3)])  # side listed as diagonal
    with pytest.raises(FormatError):
        Triangulation(5, [(1, 3), (1, 3)])


def test_triangulation_text_round_trip():
    t = Triangulation(6, [(2, 6), (3, 6), (3, 5)])
    assert t.to_text() == "6\n2 6\n3 5\n3 6\n"
    assert Triangulation.from_text(t.to_text()) == t
    with pytest.raises(FormatError):
        Triangulation.from_text("")
    with pytest.raises(FormatError):
        Triangulation.from_text("6\n1 2 3\n")


def test_fan_triangles():
    t = fan_triangulation(5)
    assert t.diagonals == ((1, 3), (1, 4))
    assert t.triangles() == [(1, 2, 3), (1, 3, 4), (1, 4, 5)]


def test_flip_quadrilateral():
    t = Triangulation(4, [(1, 3)])
    assert flip(t, (1, 3)) == Triangulation(4, [(2, 4)])
    assert flip(flip(t, (1, 3)), (2, 4)) == t


def test_flip_pentagon_fan():
    t = fan_triangulation(5)
    assert flip(t, (1, 3)) == Triangulation(5, [(2, 4), (1, 4)])


def test_flip_rejects_non_diagonal():
    with pytest.raises(GeometryError):
        flip(fan_triangulation(5), (2, 5))


def test_flip_graph_regular_and_connected():
    for m in (4, 5, 6, 7):
        ts = enumerate_triangulations(m)
        index = {t: i for i, t in enumerate(ts)}
        adj = {i: set() for i in range(len(ts))}
        for t in ts:
            neighbors = {flip(t, d) for d in t.diagonals}
            assert len(neighbors) == m - 3
            for u in neighbors:
                adj[index[t]].add(index[u])
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert len(seen) == len(ts)


def test_quiver_from_pentagon_fan_is_two_vertex():
    q, arcs = quiver_from_triangulation(fan_triangulation(5))
    assert arcs == ((1, 3), (1, 4))
    assert q.n == 2 and not q.frozen
    assert q.arrows() == [(2, 1, 1)]


def test_quiver_from_quad_single_vertex():
    q, arcs = quiver_from_triangulation(Triangulation(4, [(1, 3)]))
    assert q.n == 1
    assert q.arrows() == []


def test_quiver_with_boundary_marks_sides_frozen():
    t = Triangulation(4, [(1, 3)])
    q, arcs = quiver_from_triangulation(t, include_boundary=True)
    assert arcs == ((1, 3), (1, 2), (1, 4), (2, 3), (3, 4))
    assert q.frozen == {2, 3, 4, 5}
    # triangle (1,2,3): side 12 -> side 23 dropped, 23 -> diag 13, 13 -> 12
    # triangle (1,3,4): 13 -> 34, 34 -> 14 dropped, 14 -> 13
    assert set(q.arrows()) == {(4, 1, 1), (1, 2, 1), (1, 5, 1), (3, 1, 1)}


def test_no_two_cycles_in_induced_quivers():
    for m in (5, 6, 7):
        for t in enumerate_triangulations(m):
            for boundary in (False, True):
                q, _ = quiver_from_triangulation(t, include_boundary=boundary)
                for i in range(q.n):
                    for j in range(q.n):
                        if q.b[i][j] != 0:
                            assert q.b[i][j] * q.b[j][i] < 0 or q.b[j][i] == -q.b[i][j]
                        assert abs(q.b[i][j]) <= 1


def test_flip_commutes_with_mutation_on_hexagon():
    # exhaustively: relabel the flipped diagonal at the old vertex index
    for t in enumerate_triangulations(6):
        q, arcs = quiver_from_triangulation(t)
        for d in t.diagonals:
            k = arcs.index(d) + 1
            t2 = flip(t, d)
            (new_d,) = set(t2.diagonals) - set(t.diagonals)
            arcs2 = tuple(new_d if a == d else a for a in arcs)
            q2, _ = quiver_from_triangulation(t2, arc_order=arcs2)
            assert q2 == q.mutate(k), (t, d)


def test_flip_commutes_with_mutation_boundary_mode():
    # with frozen sides, mutation grows arrows between frozen vertices that
    # the triangulation quiver never defines (they are dropped by contract):
    # compare all entries with at most one frozen endpoint
    for t in enumerate_triangulations(6):
        q, arcs = quiver_from_triangulation(t, include_boundary=True)
        for d in t.diagonals:
            k = arcs.index(d) + 1
            t2 = flip(t, d)
            (new_d,) = set(t2.diagonals) - set(t.diagonals)
            arcs2 = tuple(new_d if a == d else a for a in arcs)
            q2, _ = quiver_from_triangulation(
                t2, include_boundary=True, arc_order=arcs2
            )
            mutated = q.mutate(k)
            assert q2.frozen == mutated.frozen
            for i in range(q2.n):
                for j in range(q2.n):
                    if i + 1 in q2.frozen and j + 1 in q2.frozen:
                        continue
                    assert q2.b[i][j] == mutated.b[i][j], (t, d, i, j)


def test_edge_values_round_trip_and_validation():
    ev = EdgeValues({"1-2": "3/4", (2, 3): 2, (1, 3): Fraction(7, 2)})
    assert ev.get(1, 2) == Fraction(3, 4)
    assert ev.get(3, 2) == 2
    assert ev.to_dict() == {"1-2": "3/4", "1-3": "7/2", "2-3": "2"}
    assert EdgeValues.from_dict(ev.to_dict()) == ev
    with pytest.raises(FormatError):
        EdgeValues({"1-2": "0"})
    with pytest.raises(FormatError):
        EdgeValues({"1-2": "-3"})
    with pytest.raises(FormatError):
        EdgeValues({"1-2-3": "1"})
    with pytest.raises(FormatError):
        EdgeValues({"1-2": "sqrt2"})
    with pytest.raises(GeometryError):
        ev.get(1, 4)


def unit_seed(t):
    ev = EdgeValues()
    for side in polygon_sides(t.m):
        ev.set(side, 1)
    for d in t.diagonals:
        ev.set(d, 1)
    return ev


def test_propagate_square():
    t = Triangulation(4, [(1, 3)])
    out = ptolemy_propagate(t, unit_seed(t))
    assert out.get(2, 4) == 2
    assert len(out) == len(all_chords(4))


def test_propagate_pentagon_fan():
    t = fan_triangulation(5)
    out = ptolemy_propagate(t, unit_seed(t))
    assert out.get(2, 4) == 2
    assert out.get(3, 5) == 2
    assert out.get(2, 5) == 3


def test_propagate_octagon_reproduces_grid_rows():
    out = ptolemy_propagate(OCTAGON_T, unit_seed(OCTAGON_T))
    assert Fraction(11) in out.values.values()

    def row(r):
        return Counter(
            out.get(i, (i + r - 1) % 8 + 1) for i in range(1, 9)
        )

    assert row(2) == Counter({1: 2, 2: 3, 3: 2, 4: 1})
    assert row(3) == Counter({1: 2, 2: 1, 3: 2, 5: 2, 11: 1})
    # distance-4 chords are diameters: each appears twice going around
    assert row(4) == Counter({2: 2, 1: 2, 7: 2, 8: 2})


def test_propagate_requires_exact_cover():
    t = Triangulation(4, [(1, 3)])
    ev = unit_seed(t)
    ev.set((2, 4), 1)
    with pytest.raises(GeometryError):
        ptolemy_propagate(t, ev)
    ev2 = EdgeValues({"1-2": 1})
    with pytest.raises(GeometryError):
        ptolemy_propagate(t, ev2)


def test_propagate_flip_order_independent():
    rng_vals = random.Random(7)
    for m in (5, 6, 7):
        for trial in range(3):
            ts = enumerate_triangulations(m)
            t = ts[rng_vals.randrange(len(ts))]
            ev = EdgeValues()
            for arc in t.arcs():
                ev.set(
                    arc,
                    Fraction(rng_vals.randint(1, 12), rng_vals.randint(1, 12)),
                )
            base = ptolemy_propagate(t, ev)
            for seed in (1, 2, 3):
                assert ptolemy_propagate(t, ev, rng=random.Random(seed)) == base


def test_propagate_satisfies_all_quadrilaterals():
    rng = random.Random(3)
    for m in (5, 6):
        for t in enumerate_triangulations(m):
            ev = EdgeValues()
            for arc in t.arcs():
                ev.set(arc, Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            out = ptolemy_propagate(t, ev)
            for i, j, k, l in itertools.combinations(range(1, m + 1), 4):
                lhs = out.get(i, k) * out.get(j, l)
                rhs = out.get(i, j) * out.get(k, l) + out.get(j, k) * out.get(i, l)
                assert lhs == rhs


def test_pluecker_identity_matrix():
    p = pluecker_from_matrix([[1, 0, 0], [0, 1, 0]])
    assert p[(1, 2)] == 1 and p[(1, 3)] == 0 and p[(2, 3)] == 0


def test_pluecker_hand_values():
    p = pluecker_from_matrix([[1, 1, 1], [0, 1, 2]])
    assert p == {(1, 2): 1, (1, 3): 2, (2, 3): 1}


def test_pluecker_row_scaling():
    base = pluecker_from_matrix([[1, 1, 1], [0, 1, 2]])
    scaled = pluecker_from_matrix([[1, 1, 1], [0, 3, 6]])
    assert scaled == {k: 3 * v for k, v in base.items()}


def test_pluecker_degenerate():
    with pytest.raises(DegenerateSubspaceError):
        pluecker_from_matrix([[1, 2, 3], [2, 4, 6]])
    with pytest.raises(FormatError):
        pluecker_from_matrix([[1, 2, 3]])
    with pytest.raises(FormatError):
        pluecker_from_matrix([[1], [1]])


def test_verify_pluecker_matrix_output_clean():
    rng = random.Random(11)
    for _ in range(10):
        mat = [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(6)]
            for _ in range(2)
        ]
        try:
            p = pluecker_from_matrix(mat)
        except DegenerateSubspaceError:
            continue
        assert verify_pluecker(p) == []


def test_verify_pluecker_all_ones_fails_everywhere():
    n = 5
    p = {c: 1 for c in all_chords(n)}
    assert len(verify_pluecker(p)) == math.comb(n, 4)


def test_verify_pluecker_single_quadruple():
    p = {c: 1 for c in all_chords(4)}
    p[(1, 3)] = 2
    assert verify_pluecker(p) == []
    p[(1, 3)] = 3
    assert verify_pluecker(p) == [(1, 2, 3, 4)]


def test_propagate_reconstructs_pluecker_table():
    # restriction of a positive minor table to one triangulation determines
    # the rest of the table
    rng = random.Random(5)
    for trial in range(5):
        n = rng.choice((5, 6, 7))
        ts = rng.choice(enumerate_triangulations(n))
        cols = sorted(rng.sample(range(1, 60), n))
        mat = [[1] * n, cols]
        p = pluecker_from_matrix(mat)
        seed = EdgeValues()
        for arc in ts.arcs():
            seed.set(arc, p[arc])
        out = ptolemy_propagate(ts, seed)
        assert dict(out.items()) == {k: Fraction(v) for k, v in p.items()}


def test_euclid_unit_square():
    res, cyclic = verify_ptolemy_euclidean([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert abs(res) < 1e-12
    assert cyclic


def test_euclid_regular_pentagon():
    pts = [
        (math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5))
        for k in range(4)
    ]
    res, cyclic = verify_ptolemy_euclidean(pts)
    assert abs(res) < 1e-12
    assert cyclic


def test_euclid_non_cyclic():
    res, cyclic = verify_ptolemy_euclidean([(0, 0), (1, 0), (1, 1), (0, 2)])
    assert res > 1e-3
    assert not cyclic


def test_euclid_coincident_points():
    with pytest.raises(GeometryError):
        verify_ptolemy_euclidean([(0, 0), (0, 0), (1, 1), (0, 2)])


coord = st.floats(min_value=-100, max_value=100, allow_nan=False)


@given(st.tuples(coord, coord), st.tuples(coord, coord), st.tuples(coord, coord), st.tuples(coord, coord))
@settings(max_examples=200)
def test_euclid_inequality(a, b, c, d):
    pts = [a, b, c, d]
    for p, q in itertools.combinations(pts, 2):
        if p == q:
            return
    res, _ = verify_ptolemy_euclidean(pts)
    assert res >= -1e-9


def test_chords_cross():
    assert chords_cross((1, 3), (2, 4))
    assert not chords_cross((1, 3), (3, 5))
    assert not chords_cross((1, 3), (1, 4))
    assert not chords_cross((2, 4), (1, 5))
