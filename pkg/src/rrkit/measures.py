"""Entropy and conditional mutual information over joint tables, in bits.

Conditional quantities are computed as entropy differences (base-2 logs,
0 log 0 = 0).  Round-off can leave values in [-1e-12, 0); they are clamped
to 0 only at the reporting boundary, never inside intermediate sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .prob import JointDistribution, marginalize

NEG_TOL = 1e-12


def _plain_entropy(d: JointDistribution, names) -> float:
    p = marginalize(d, set(names)).table.ravel()
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def entropy(d: JointDistribution, vars, given=()) -> float:
    """H(vars | given) in bits."""
    vars, given = tuple(vars), tuple(given)
    if not vars:
        raise ValueError("entropy needs at least one variable")
    if set(vars) & set(given):
        raise ValueError(f"variables {set(vars) & set(given)} appear on both sides")
    if not given:
        return _plain_entropy(d, vars)
    return _plain_entropy(d, vars + given) - _plain_entropy(d, given)


def cmi(d: JointDistribution, a, b, c=()) -> float:
    """I(a ; b | c) in bits, via H(ac) + H(bc) - H(abc) - H(c)."""
    a, b, c = tuple(a), tuple(b), tuple(c)
    if not a or not b:
        raise ValueError("cmi needs nonempty variable sets on both sides")
    for x, y in ((a, b), (a, c), (b, c)):
        if set(x) & set(y):
            raise ValueError(f"overlapping variable sets: {set(x) & set(y)}")
    h_ac = _plain_entropy(d, a + c)
    h_bc = _plain_entropy(d, b + c)
    h_abc = _plain_entropy(d, a + b + c)
    h_c = _plain_entropy(d, c) if c else 0.0
    return h_ac + h_bc - h_abc - h_c


def clamp(value: float) -> float:
    """Round tiny negative round-off up to 0 (reporting boundary only)."""
    return 0.0 if -NEG_TOL <= value < 0.0 else value


@dataclass(frozen=True)
class InfoTerm:
    """One signed, scaled entropy or mutual-information term.

    kind "H": coefficient * sign * H(left | cond)
    kind "I": coefficient * sign * I(left ; right | cond)
    """

    kind: str
    left: tuple[str, ...]
    right: tuple[str, ...] = ()
    cond: tuple[str, ...] = ()
    sign: int = 1
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ("H", "I"):
            raise ValueError(f"kind must be H or I, got {self.kind!r}")
        if self.kind == "I" and not self.right:
            raise ValueError("I-term needs a right-hand variable set")
        if self.sign not in (-1, 1):
            raise ValueError(f"sign must be +/-1, got {self.sign}")

    def describe(self) -> str:
        inner = ",".join(self.left)
        if self.kind == "I":
            inner += ";" + ",".join(self.right)
        if self.cond:
            inner += "|" + ",".join(self.cond)
        prefix = "-" if self.sign < 0 else ""
        if self.coefficient != 1:
            prefix += f"{self.coefficient}*"
        return f"{prefix}{self.kind}({inner})"


def eval_term(d: JointDistribution, t: InfoTerm) -> float:
    value = entropy(d, t.left, t.cond) if t.kind == "H" else cmi(d, t.left, t.right, t.cond)
    return float(t.coefficient) * t.sign * value


def eval_terms(d: JointDistribution, terms) -> float:
    return sum(eval_term(d, t) for t in terms)
