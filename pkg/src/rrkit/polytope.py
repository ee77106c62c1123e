"""Linear inequality systems over rate variables, with exact coefficients.

Rows are a.r <= b with rational coefficient vectors and floating bounds.
Provides Fourier-Motzkin elimination, substitution, feasibility (point or
free, decided by elimination over the exact coefficients), redundancy
removal, containment with witness points, and 2-D vertex enumeration.

Coefficient arithmetic is exact (fractions.Fraction); every comparison
against the floating bounds uses an absolute tolerance (default 1e-9).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

TOL = 1e-9

Coeffs = tuple[Fraction, ...]


class VariableMismatchError(ValueError):
    """Two systems do not share the same rate-variable space."""


class UnboundedRegionError(ValueError):
    """2-D vertex enumeration was asked for an unbounded region."""


@dataclass(frozen=True)
class Halfspace:
    """One inequality sum_j coeffs[j] * x_j <= bound."""

    coeffs: Coeffs
    bound: float
    label: str = ""

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _primitive(coeffs: Coeffs, bound: float) -> tuple[Coeffs, float]:
    """Scale so coefficients are integers with gcd 1 (direction preserved)."""
    nonzero = [c for c in coeffs if c != 0]
    if not nonzero:
        return coeffs, bound
    denom_lcm = math.lcm(*(c.denominator for c in nonzero))
    num_gcd = math.gcd(*(abs(c.numerator) for c in nonzero))
    factor = Fraction(denom_lcm, num_gcd)
    if factor == 1:
        return coeffs, bound
    return tuple(c * factor for c in coeffs), bound * float(factor)


def make_row(coeffs, bound: float, label: str = "") -> Halfspace:
    c, b = _primitive(tuple(Fraction(x) for x in coeffs), float(bound))
    return Halfspace(c, b, label)


@dataclass(frozen=True)
class InequalitySystem:
    """An ordered bundle of halfspaces over named rate variables."""

    variables: tuple[str, ...]
    rows: tuple[Halfspace, ...]

    def __post_init__(self):
        for r in self.rows:
            if len(r.coeffs) != len(self.variables):
                raise VariableMismatchError(
                    f"row {r.label!r} has {len(r.coeffs)} coefficients for "
                    f"{len(self.variables)} variables")

    def with_rows(self, rows) -> "InequalitySystem":
        return InequalitySystem(self.variables, tuple(rows))

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatchError(f"no variable {var!r} in {self.variables}") from None

    def describe(self) -> str:
        lines = []
        for r in self.rows:
            parts = []
            for c, v in zip(r.coeffs, self.variables):
                if c == 0:
                    continue
                if c == 1:
                    parts.append(f"+ {v}")
                elif c == -1:
                    parts.append(f"- {v}")
                else:
                    parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{v}")
            lhs = " ".join(parts) if parts else "0"
            lines.append(f"{lhs} <= {r.bound:.12g}   [{r.label}]")
        return "\n".join(lines)


def system(variables, rows) -> InequalitySystem:
    return InequalitySystem(tuple(variables), tuple(rows))


def nonnegativity_rows(variables, subset=None) -> list[Halfspace]:
    """-x <= 0 rows for each variable in subset (default all)."""
    out = []
    for i, v in enumerate(variables):
        if subset is not None and v not in subset:
            continue
        coeffs = [Fraction(0)] * len(variables)
        coeffs[i] = Fraction(-1)
        out.append(Halfspace(tuple(coeffs), 0.0, f"{v}>=0"))
    return out


def _merge_duplicates(rows) -> list[Halfspace]:
    """Keep one row per coefficient vector (tightest bound wins); drop vacuous."""
    best: dict[Coeffs, Halfspace] = {}
    order: list[Coeffs] = []
    for r in rows:
        if r.is_constant() and r.bound >= 0.0:
            continue
        old = best.get(r.coeffs)
        if old is None:
            best[r.coeffs] = r
            order.append(r.coeffs)
        elif r.bound < old.bound:
            best[r.coeffs] = r
    return [best[c] for c in order]


def fm_eliminate(sys: InequalitySystem, var: str, merge: bool = True) -> InequalitySystem:
    """Project ``var`` out by pairing each upper bound with each lower bound."""
    if var not in sys.variables:
        warnings.warn(f"variable {var!r} not in system; elimination is the identity")
        return sys
    k = sys.index(var)
    uppers, lowers, keep = [], [], []
    for r in sys.rows:
        c = r.coeffs[k]
        if c > 0:
            uppers.append(r)
        elif c < 0:
            lowers.append(r)
        else:
            keep.append(r)
    drop = lambda cs: cs[:k] + cs[k + 1:]
    new_rows = [Halfspace(drop(r.coeffs), r.bound, r.label) for r in keep]
    for up in uppers:
        cu = up.coeffs[k]
        for lo in lowers:
            cl = -lo.coeffs[k]
            coeffs = tuple(cl * a + cu * b for a, b in zip(drop(up.coeffs), drop(lo.coeffs)))
            bound = float(cl) * up.bound + float(cu) * lo.bound
            coeffs, bound = _primitive(coeffs, bound)
            new_rows.append(Halfspace(coeffs, bound, f"fm:{{{up.label}+{lo.label}}}"))
    if merge:
        new_rows = _merge_duplicates(new_rows)
    return InequalitySystem(drop(sys.variables), tuple(new_rows))


def substitute(sys: InequalitySystem, var: str, expr: dict[str, Fraction]) -> InequalitySystem:
    """Rewrite every row with ``var := sum expr[v] * v`` (exact, row by row).

    New variables named in ``expr`` are appended to the system in order.
    """
    k = sys.index(var)
    new_vars = list(sys.variables[:k] + sys.variables[k + 1:])
    for v in expr:
        if v not in new_vars:
            new_vars.append(v)
    rows = []
    for r in sys.rows:
        c = r.coeffs[k]
        out = {v: r.coeffs[i] for i, v in enumerate(sys.variables) if v != var}
        for v, e in expr.items():
            out[v] = out.get(v, Fraction(0)) + c * Fraction(e)
        rows.append(Halfspace(tuple(out.get(v, Fraction(0)) for v in new_vars),
                              r.bound, r.label))
    return InequalitySystem(tuple(new_vars), tuple(rows))


def _infeasible_constant(rows, tol: float) -> bool:
    return any(r.is_constant() and r.bound < -tol for r in rows)


def _greedy_order(sys: InequalitySystem) -> list[str]:
    """Cheapest-first elimination order (fewest upper*lower pairings)."""
    remaining = list(sys.variables)
    counts = {v: [0, 0] for v in remaining}
    for r in sys.rows:
        for v, c in zip(sys.variables, r.coeffs):
            if c > 0:
                counts[v][0] += 1
            elif c < 0:
                counts[v][1] += 1
    return sorted(remaining, key=lambda v: counts[v][0] * counts[v][1])


def lp_feasible(sys: InequalitySystem, point=None, tol: float = TOL) -> bool:
    """Point given: every row satisfied within tol.  No point: any solution?

    Free feasibility is decided by eliminating every variable on the exact
    coefficients and checking the residual constant rows.
    """
    if point is not None:
        if len(point) != len(sys.variables):
            raise VariableMismatchError(
                f"point has {len(point)} entries for {len(sys.variables)} variables")
        return all(
            sum(float(c) * x for c, x in zip(r.coeffs, point)) <= r.bound + tol
            for r in sys.rows)
    cur = sys
    if _infeasible_constant(cur.rows, tol):
        return False
    for var in _greedy_order(sys):
        cur = fm_eliminate(cur, var)
        if _infeasible_constant(cur.rows, tol):
            return False
    return True


def find_point(sys: InequalitySystem, tol: float = TOL):
    """A feasible point (list of floats, variable order) or None.

    Eliminates variables back to front, then back-substitutes midpoints of
    the remaining feasible intervals.
    """
    stages = []
    cur = sys
    for var in reversed(sys.variables):
        stages.append(cur)
        cur = fm_eliminate(cur, var)
        if _infeasible_constant(cur.rows, tol):
            return None
    values: list[float] = []
    for pre in reversed(stages):
        k = len(values)  # variables 0..k-1 already assigned; choose variable k
        lo, hi = -math.inf, math.inf
        for r in pre.rows:
            c = r.coeffs[k]
            if c == 0:
                continue
            partial = sum(float(a) * x for a, x in zip(r.coeffs[:k], values))
            limit = (r.bound - partial) / float(c)
            if c > 0:
                hi = min(hi, limit)
            else:
                lo = max(lo, limit)
        if lo == -math.inf and hi == math.inf:
            values.append(0.0)
        elif lo == -math.inf:
            values.append(hi - 1.0)
        elif hi == math.inf:
            values.append(lo + 1.0)
        else:
            values.append((lo + hi) / 2.0)
    return values


def negate_row(row: Halfspace, slack: float) -> Halfspace:
    """a.x >= bound + slack, as a <=-row (the relaxed negation)."""
    return Halfspace(tuple(-c for c in row.coeffs), -(row.bound + slack),
                     f"not:{row.label}")


def remove_redundant(sys: InequalitySystem, tol: float = TOL) -> InequalitySystem:
    """Minimal subsystem with the same solution set (input order preserved).

    A row is dropped iff the remaining rows plus its negation relaxed by tol
    are infeasible, i.e. the rest already imply it.  The probe feasibility is
    decided exactly (threshold 0) so the relaxation slack is not cancelled by
    the feasibility tolerance.
    """
    alive = list(sys.rows)
    i = 0
    while i < len(alive):
        trial = alive[:i] + alive[i + 1:]
        probe = InequalitySystem(sys.variables, tuple(trial) + (negate_row(alive[i], tol),))
        if not lp_feasible(probe, tol=0.0):
            alive = trial
        else:
            i += 1
    return sys.with_rows(alive)


def implies(sys: InequalitySystem, row: Halfspace, tol: float = TOL) -> bool:
    """Does every solution of sys satisfy the row (within tol slack)?"""
    probe = InequalitySystem(sys.variables, sys.rows + (negate_row(row, tol),))
    return not lp_feasible(probe, tol=0.0)


def contains(outer: InequalitySystem, inner: InequalitySystem, tol: float = TOL):
    """(True, None) if inner's solution set lies inside outer's.

    On failure returns (False, witness) with a point feasible for inner but
    violating some outer row.
    """
    if outer.variables != inner.variables:
        raise VariableMismatchError(
            f"systems over different variables: {outer.variables} vs {inner.variables}")
    for row in outer.rows:
        probe = InequalitySystem(inner.variables, inner.rows + (negate_row(row, tol),))
        if lp_feasible(probe, tol=0.0):
            return False, find_point(probe, tol=0.0)
    return True, None


def equivalent(a: InequalitySystem, b: InequalitySystem, tol: float = TOL) -> bool:
    ok_ab, _ = contains(a, b, tol)
    ok_ba, _ = contains(b, a, tol)
    return ok_ab and ok_ba


def reorder(sys: InequalitySystem, variables) -> InequalitySystem:
    """Permute the variable order (same solution set, relabelled columns)."""
    variables = tuple(variables)
    if set(variables) != set(sys.variables):
        raise VariableMismatchError(f"cannot reorder {sys.variables} as {variables}")
    perm = [sys.index(v) for v in variables]
    rows = [Halfspace(tuple(r.coeffs[i] for i in perm), r.bound, r.label) for r in sys.rows]
    return InequalitySystem(variables, tuple(rows))


@dataclass(frozen=True)
class Polytope2D:
    """Counterclockwise vertex list of a bounded 2-D region."""

    vertices: tuple[tuple[float, float], ...]
    kind: str  # empty | point | segment | polygon

    def contains_point(self, sys: InequalitySystem, tol: float = TOL) -> bool:
        return all(lp_feasible(sys, point=v, tol=tol) for v in self.vertices)


def _is_bounded_2d(sys: InequalitySystem, tol: float) -> bool:
    """No nonzero recession direction (requires the nonnegativity rows present)."""
    rows = [Halfspace(r.coeffs, 0.0, r.label) for r in sys.rows]
    rows.append(Halfspace((Fraction(-1), Fraction(-1)), -1.0, "ray"))
    return not lp_feasible(InequalitySystem(sys.variables, tuple(rows)), tol=tol)


def vertices2d(sys: InequalitySystem, tol: float = TOL) -> Polytope2D:
    """Enumerate vertices of a bounded 2-variable system, counterclockwise."""
    if len(sys.variables) != 2:
        raise VariableMismatchError(f"vertices2d needs 2 variables, got {sys.variables}")
    if not lp_feasible(sys, tol=tol):
        return Polytope2D((), "empty")
    if not _is_bounded_2d(sys, tol):
        raise UnboundedRegionError("region is unbounded; cannot enumerate vertices")
    pts: list[tuple[float, float]] = []
    rows = sys.rows
    for i in range(len(rows)):
        (a1, a2), b1 = rows[i].coeffs, rows[i].bound
        for j in range(i + 1, len(rows)):
            (c1, c2), b2 = rows[j].coeffs, rows[j].bound
            det = a1 * c2 - a2 * c1
            if det == 0:
                continue
            x = (b1 * float(c2) - float(a2) * b2) / float(det) + 0.0
            y = (float(a1) * b2 - b1 * float(c1)) / float(det) + 0.0
            if x == 0.0:
                x = 0.0  # drop negative zero for stable serialization
            if y == 0.0:
                y = 0.0
            if lp_feasible(sys, point=(x, y), tol=tol):
                if not any(abs(x - p) <= tol and abs(y - q) <= tol for p, q in pts):
                    pts.append((x, y))
    if not pts:
        return Polytope2D((), "empty")
    if len(pts) == 1:
        return Polytope2D(tuple(pts), "point")
    cx = sum(p for p, _ in pts) / len(pts)
    cy = sum(q for _, q in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    kind = "segment" if len(pts) == 2 else "polygon"
    return Polytope2D(tuple(pts), kind)


def convex_hull(points) -> list[tuple[float, float]]:
    """Andrew monotone chain; counterclockwise, no repeated endpoint."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    cross = lambda o, a, b: (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
