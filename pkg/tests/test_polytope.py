import warnings
from fractions import Fraction

import numpy as np
import pytest

from rrkit.polytope import (Halfspace, UnboundedRegionError,
                            VariableMismatchError, contains, convex_hull,
                            equivalent, find_point, fm_eliminate, implies,
                            lp_feasible, make_row, nonnegativity_rows,
                            remove_redundant, reorder, substitute, system,
                            vertices2d)


def rows_of(variables, *triples):
    return system(variables, [make_row(c, b, label) for c, b, label in triples])


def test_fm_single_pairing():
    s = rows_of(("T", "R"), ((1, 0), 2.0, "cap"), ((-1, 1), 1.0, "link"),
                ((-1, 0), 0.0, "nonneg"))
    out = fm_eliminate(s, "T")
    assert out.variables == ("R",)
    assert len(out.rows) == 1
    assert out.rows[0].coeffs == (Fraction(1),)
    assert out.rows[0].bound == pytest.approx(3.0)


def test_fm_absent_variable_warns_identity():
    s = rows_of(("R",), ((1,), 1.0, "cap"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = fm_eliminate(s, "T1")
    assert out is s
    assert caught and "identity" in str(caught[0].message)


def test_fm_merges_duplicate_rows():
    s = rows_of(("T", "R"), ((1, 0), 1.0, "a"), ((1, 0), 2.0, "b"),
                ((-1, 1), 0.0, "c"))
    out = fm_eliminate(s, "T")
    # both pairings give R <= bound; tightest survives
    assert len(out.rows) == 1
    assert out.rows[0].bound == pytest.approx(1.0)


def test_fm_order_insensitive_solution_set():
    rng = np.random.default_rng(4)
    for _ in range(20):
        rows = []
        for i in range(8):
            coeffs = rng.integers(-2, 3, size=3)
            rows.append(make_row(coeffs, float(rng.uniform(-0.5, 2.0)), f"r{i}"))
        rows += nonnegativity_rows(("a", "b", "c"))
        s = system(("a", "b", "c"), rows)
        ab = fm_eliminate(fm_eliminate(s, "a"), "b")
        ba = reorder(fm_eliminate(fm_eliminate(s, "b"), "a"), ab.variables)
        assert equivalent(ab, ba)


def test_substitute_rewrites_rows():
    s = rows_of(("S1", "T1"), ((1, 0), 0.5, "13-1"))
    out = substitute(s, "S1", {"R1": Fraction(1), "T1": Fraction(-1)})
    assert set(out.variables) == {"T1", "R1"}
    r = out.rows[0]
    got = dict(zip(out.variables, r.coeffs))
    assert got == {"R1": Fraction(1), "T1": Fraction(-1)}
    assert r.bound == pytest.approx(0.5)


def test_substitute_identity_unchanged():
    s = rows_of(("S1", "T1"), ((1, 1), 0.5, "x"))
    out = substitute(s, "S1", {"S1": Fraction(1)})
    assert [dict(zip(out.variables, r.coeffs)) for r in out.rows] == \
        [dict(zip(s.variables, r.coeffs)) for r in s.rows]


def test_substitute_sign_flip_on_nonnegativity():
    s = system(("S2", "T2"), nonnegativity_rows(("S2", "T2"), {"S2"}))
    out = substitute(s, "S2", {"R2": Fraction(1), "T2": Fraction(-1)})
    got = dict(zip(out.variables, out.rows[0].coeffs))
    assert got == {"T2": Fraction(1), "R2": Fraction(-1)}  # T2 <= R2
    assert out.rows[0].bound == 0.0


def test_lp_feasible_point():
    s = rows_of(("x", "y"), ((1, 0), 1.0, "a"), ((0, 1), 1.0, "b"))
    assert lp_feasible(s, point=(0.0, 0.0))
    assert not lp_feasible(s, point=(2.0, 0.0))
    with pytest.raises(VariableMismatchError):
        lp_feasible(s, point=(0.0,))


def test_lp_feasible_free():
    s = rows_of(("x",), ((1,), 1.0, "ub"), ((-1,), -2.0, "lb"))
    assert not lp_feasible(s)
    s2 = rows_of(("x",), ((1,), 2.0, "ub"), ((-1,), -1.0, "lb"))
    assert lp_feasible(s2)
    p = find_point(s2)
    assert p is not None and 1.0 - 1e-9 <= p[0] <= 2.0 + 1e-9


def test_projection_agrees_with_grid_oracle():
    # fine-lattice search over the eliminated variable as an independent oracle
    s = rows_of(("T", "R"),
                ((1, 0), 1.0, "t-cap"),
                ((-1, 1), 1.0, "r-minus-t"),
                ((-1, 0), 0.0, "t-nonneg"),
                ((1, 1), 2.5, "mixed"))
    proj = fm_eliminate(s, "T")
    grid = np.linspace(-0.5, 1.5, 2001)
    rng = np.random.default_rng(7)
    for _ in range(300):
        r = float(rng.uniform(-1.0, 3.5))
        member = lp_feasible(proj, point=(r,))
        slacks = [abs(sum(float(c) * x for c, x in zip(row.coeffs, (r,))) - row.bound)
                  for row in proj.rows]
        if min(slacks) < 1e-3:  # skip the lattice's own resolution band
            continue
        lifted = np.array([lp_feasible(s, point=(t, r)) for t in grid])
        assert member == bool(lifted.any())


def test_remove_redundant_simple():
    s = rows_of(("x",), ((1,), 1.0, "tight"), ((1,), 2.0, "loose"))
    out = remove_redundant(s)
    assert [r.label for r in out.rows] == ["tight"]


def test_remove_redundant_duplicates_keep_one():
    s = rows_of(("x",), ((1,), 1.0, "a"), ((1,), 1.0, "b"), ((-1,), 0.0, "c"))
    out = remove_redundant(s)
    labels = [r.label for r in out.rows]
    assert labels.count("a") + labels.count("b") == 1


def test_remove_redundant_preserves_solution_set():
    rng = np.random.default_rng(11)
    for _ in range(15):
        rows = [make_row(rng.integers(-2, 3, size=2), float(rng.uniform(0.1, 2.0)), f"r{i}")
                for i in range(10)]
        rows += nonnegativity_rows(("x", "y"))
        s = system(("x", "y"), rows)
        red = remove_redundant(s)
        assert equivalent(s, red)


def test_contains_self_and_quarter():
    square = system(("x", "y"), [make_row((1, 0), 1.0, "x"), make_row((0, 1), 1.0, "y")]
                    + nonnegativity_rows(("x", "y")))
    quarter = system(("x", "y"), [make_row((1, 0), 0.5, "x"), make_row((0, 1), 0.5, "y")]
                     + nonnegativity_rows(("x", "y")))
    assert contains(square, square)[0]
    assert contains(square, quarter)[0]
    ok, witness = contains(quarter, square)
    assert not ok
    assert lp_feasible(square, point=witness)
    assert not lp_feasible(quarter, point=witness)


def test_contains_variable_mismatch():
    a = system(("x",), [make_row((1,), 1.0, "a")])
    b = system(("y",), [make_row((1,), 1.0, "b")])
    with pytest.raises(VariableMismatchError):
        contains(a, b)


def test_implies_shared_tight_row():
    s = rows_of(("x",), ((1,), 1.0, "cap"), ((-1,), 0.0, "lo"))
    assert implies(s, make_row((1,), 1.0, "same"))
    assert implies(s, make_row((1,), 1.5, "looser"))
    assert not implies(s, make_row((1,), 0.5, "tighter"))


def test_vertices_unit_square():
    square = system(("R1", "R2"),
                    [make_row((1, 0), 1.0, "a"), make_row((0, 1), 1.0, "b")]
                    + nonnegativity_rows(("R1", "R2")))
    poly = vertices2d(square)
    assert poly.kind == "polygon"
    assert sorted(poly.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    # counterclockwise: signed area positive
    area = 0.0
    v = poly.vertices
    for i in range(len(v)):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % len(v)]
        area += x1 * y2 - x2 * y1
    assert area > 0


def test_vertices_triangle():
    tri = system(("R1", "R2"),
                 [make_row((1, 0), 1.0, "a"), make_row((0, 1), 1.0, "b"),
                  make_row((1, 1), 1.0, "c")] + nonnegativity_rows(("R1", "R2")))
    poly = vertices2d(tri)
    assert sorted(poly.vertices) == [(0, 0), (0, 1), (1, 0)]


def test_vertices_empty_and_point():
    empty = system(("R1", "R2"),
                   [make_row((1, 0), -1.0, "bad")] + nonnegativity_rows(("R1", "R2")))
    assert vertices2d(empty).kind == "empty"
    point = system(("R1", "R2"),
                   [make_row((1, 0), 0.0, "a"), make_row((0, 1), 0.0, "b")]
                   + nonnegativity_rows(("R1", "R2")))
    assert vertices2d(point).kind == "point"


def test_vertices_unbounded_raises():
    s = system(("R1", "R2"),
               [make_row((0, 1), 1.0, "y-only")] + nonnegativity_rows(("R1", "R2")))
    with pytest.raises(UnboundedRegionError):
        vertices2d(s)


def test_convex_hull_basic():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5), (0.2, 0.9)]
    hull = convex_hull(pts)
    assert sorted(hull) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_coefficients_stay_exact():
    s = rows_of(("a", "b", "c"), ((1, 2, -3), 1.0, "r"), ((-2, 1, 1), 0.5, "s"),
                ((0, -1, 2), 0.25, "t"))
    out = fm_eliminate(s, "a")
    for r in out.rows:
        assert all(isinstance(c, Fraction) for c in r.coeffs)


def test_constant_row_handling():
    s = system(("x",), (Halfspace((Fraction(0),), -1.0, "contradiction"),))
    assert not lp_feasible(s)
    s2 = system(("x",), (Halfspace((Fraction(0),), 1.0, "vacuous"),
                         Halfspace((Fraction(1),), 1.0, "cap")))
    assert lp_feasible(s2)
