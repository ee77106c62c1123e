"""Bound constants and inequality systems for the catalogued rate regions.

Four families of evaluated right-hand sides over a fixed joint:

- "hod"  : the 14 quadruple constants A1..G1, A2..G2 (general binning region)
- "dmt"  : the 14 baseline constants a1..g1, a2..g2
- "rtd"  : the 8 quintuple bounds over (T1, S1a, S1b, T2, S2)
- "hod1" : the 8 simplified constants A1, D1, E1, G1, A2, D2, E2, G2

plus builders for every catalogued inequality description (quadruple systems,
the 20- and 11-row rate-pair systems, the 37-row intermediate list, and the
pre-binning budget system whose projection reproduces the user-2 rows).

Constants are floats in bits; inequality coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .measures import InfoTerm, eval_terms
from .polytope import (Halfspace, InequalitySystem, make_row,
                       nonnegativity_rows)
from .prob import FORMS, JointDistribution, ModelError, validate_factorization

CONSTANT_REJECT_TOL = 1e-6  # factorization violation above this rejects the input


def iterm(expr: str, sign: int = 1, coefficient=1) -> InfoTerm:
    """Parse "I(A,B;C|D,E)" or "H(A|B)" into an InfoTerm."""
    expr = expr.replace(" ", "")
    kind, rest = expr[0], expr[2:-1]
    body, _, cond = rest.partition("|")
    left, _, right = body.partition(";")
    split = lambda s: tuple(s.split(",")) if s else ()
    return InfoTerm(kind, split(left), split(right), split(cond), sign,
                    Fraction(coefficient))


def _terms(*specs) -> tuple[InfoTerm, ...]:
    """Each spec is "expr" or ("-", "expr") for a negated term."""
    out = []
    for s in specs:
        if isinstance(s, tuple):
            out.append(iterm(s[1], -1))
        else:
            out.append(iterm(s))
    return tuple(out)


# --- general-region constants (rows 10-1..10-14), grouped the way the
#     region is interpreted:
#     value = core + correlation + interference - binning, with every
#     add-on an individually nonnegative mutual information.
HOD_PARTS: dict[str, dict[str, tuple[InfoTerm, ...]]] = {
    "A1": {"interference": _terms("I(W2;U1,W1|Q)"), "core": _terms("I(Y1;U1|Q,W1,W2)")},
    "B1": {"correlation": _terms("I(U1;W1|Q)"), "interference": _terms("I(W2;U1,W1|Q)"),
           "core": _terms("I(Y1;W1|Q,W2,U1)")},
    "C1": {"correlation": _terms("I(U1;W1|Q)"), "core": _terms("I(Y1;W2|Q,U1,W1)")},
    "D1": {"interference": _terms("I(W2;W1,U1|Q)"), "core": _terms("I(Y1;U1,W1|Q,W2)")},
    "E1": {"core": _terms("I(Y1;U1,W2|Q,W1)")},
    "F1": {"correlation": _terms("I(U1;W1|Q)"), "core": _terms("I(Y1;W1,W2|Q,U1)")},
    "G1": {"core": _terms("I(Y1;U1,W1,W2|Q)")},
    "A2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W2,U2;W1|Q)"),
           "core": _terms("I(Y2;U2|Q,W1,W2)"), "binning": _terms("I(U2;U1,W1,W2|Q)")},
    "B2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W1;W2,U2|Q)"),
           "core": _terms("I(Y2;W2|Q,W1,U2)"), "binning": _terms("I(W2;W1,U1|Q)")},
    "C2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W2,U2;W1|Q)"),
           "core": _terms("I(Y2;W1|Q,W2,U2)")},
    "D2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W2,U2;W1|Q)"),
           "core": _terms("I(Y2;U2,W2|Q,W1)"),
           "binning": _terms("I(W2;U1,W1|Q)", "I(U2;U1,W1,W2|Q)")},
    "E2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W2,U2;W1|Q)"),
           "core": _terms("I(Y2;U2,W1|Q,W2)"), "binning": _terms("I(U2;U1,W1,W2|Q)")},
    "F2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W2,U2;W1|Q)"),
           "core": _terms("I(Y2;W1,W2|Q,U2)"), "binning": _terms("I(W2;U1,W1|Q)")},
    "G2": {"correlation": _terms("I(U2;W2|Q)"), "interference": _terms("I(W1;U2,W2|Q)"),
           "core": _terms("I(Y2;U2,W1,W2|Q)"),
           "binning": _terms("I(W2;W1,U1|Q)", "I(U2;U1,W1,W2|Q)")},
}

HOD_EQ = {label: f"10-{i + 1}" for i, label in enumerate(
    ["A1", "B1", "C1", "D1", "E1", "F1", "G1", "A2", "B2", "C2", "D2", "E2", "F2", "G2"])}


def hod_terms(label: str) -> tuple[InfoTerm, ...]:
    parts = HOD_PARTS[label]
    out: list[InfoTerm] = []
    for key in ("correlation", "interference", "core"):
        out.extend(parts.get(key, ()))
    for t in parts.get("binning", ()):
        out.append(InfoTerm(t.kind, t.left, t.right, t.cond, -1, t.coefficient))
    return tuple(out)


# --- baseline-region constants (rows 6-1..6-14).
DMT_TERMS: dict[str, tuple[InfoTerm, ...]] = {
    "a1": _terms("I(W1,W2;U1|Q)", "I(Y1;U1|Q,W1,W2)"),
    "b1": _terms("I(U1,W2;W1|Q)", "I(Y1;W1|Q,W2,U1)"),
    "c1": _terms("I(Y1;W2|Q,U1,W1)"),
    "d1": _terms("I(W2;W1,U1|Q)", "I(Y1;U1,W1|Q,W2)"),
    "e1": _terms("I(Y1;U1,W2|Q,W1)", "I(U1,W2;W1|Q)", ("-", "I(W2;W1,U1|Q)")),
    "f1": _terms("I(W1,W2;U1|Q)", "I(Y1;W1,W2|Q,U1)", ("-", "I(W2;W1,U1|Q)")),
    "g1": _terms("I(Y1;U1,W1,W2|Q)", ("-", "I(W2;W1,U1|Q)")),
    "a2": _terms("I(U2;W1,W2|Q)", "I(Y2;U2|Q,W1,W2)", ("-", "I(U2;U1,W1|Q)")),
    "b2": _terms("I(W2;W1,U2|Q)", "I(Y2;W2|Q,W1,U2)", ("-", "I(W2;W1,U1|Q)")),
    "c2": _terms("I(W2,U2;W1|Q)", "I(Y2;W1|Q,W2,U2)"),
    "d2": _terms("I(W2,U2;W1|Q)", "I(Y2;U2,W2|Q,W1)", ("-", "I(W2;U1,W1|Q)")),
    "e2": _terms("I(W1,U2;W2|Q)", "I(Y2;U2,W1|Q,W2)", ("-", "I(U2;U1,W1|Q)")),
    "f2": _terms("I(U2;W1,W2|Q)", "I(Y2;W1,W2|Q,U2)", ("-", "I(W2;U1,W1|Q)")),
    "g2": _terms("I(Y2;U2,W1,W2|Q)", ("-", "I(W2;W1,U1|Q)"), ("-", "I(U2;U1,W1|Q)")),
}

DMT_EQ = {label: f"6-{i + 1}" for i, label in enumerate(
    ["a1", "b1", "c1", "d1", "e1", "f1", "g1", "a2", "b2", "c2", "d2", "e2", "f2", "g2"])}

# --- split-private-message bounds (rows 8-1..8-8; no time-sharing
#     variable in this family).
RTD_TERMS: dict[str, tuple[InfoTerm, ...]] = {
    "8-1": _terms("I(Y1;W2,W1,U1a,U1b)", ("-", "I(U2;U1b|W1,W2,U1a)")),
    "8-2": _terms("I(Y1;W2,U1a,U1b|W1)", ("-", "I(U2;U1b|W1,W2,U1a)")),
    "8-3": _terms("I(Y1;U1a,U1b|W1,W2)", "I(W2;U1a|W1)", ("-", "I(U2;U1b|W1,W2,U1a)")),
    "8-4": _terms("I(Y1;W2,U1b|W1,U1a)", ("-", "I(U2;U1b|W1,W2,U1a)")),
    "8-5": _terms("I(Y1;U1b|W1,W2,U1a)", "I(W2;U1a|W1)", ("-", "I(U2;U1b|W1,W2,U1a)")),
    "8-6": _terms("I(Y2;W1,W2,U2)", ("-", "I(W2;U1a|W1)"), ("-", "I(U2;U1a|W1,W2)")),
    "8-7": _terms("I(Y2;W2,U2|W1)", ("-", "I(W2;U1a|W1)"), ("-", "I(U2;U1a|W1,W2)")),
    "8-8": _terms("I(Y2;U2|W1,W2)", ("-", "I(U2;U1a|W1,W2)")),
}

# --- simplified-region constants (rows 14-1..14-8); the channel-input
#     expressions are the definition, the auxiliary-variable spellings
#     live in EQ14_UFORM for the verifier.
HOD1_PARTS: dict[str, dict[str, tuple[InfoTerm, ...]]] = {
    "A1": {"interference": _terms("I(W2;X1|Q)"), "core": _terms("I(Y1;X1|W1,W2,Q)")},
    "D1": {"interference": _terms("I(W2;X1|Q)"), "core": _terms("I(Y1;X1|W2,Q)")},
    "E1": {"core": _terms("I(Y1;X1,W2|W1,Q)")},
    "G1": {"core": _terms("I(Y1;X1,W2|Q)")},
    "A2": {"interference": _terms("I(X2;W1|Q)"), "core": _terms("I(Y2;X2|W1,W2,Q)"),
           "binning": _terms("I(X2;X1|Q,W2)")},
    "D2": {"interference": _terms("I(X2;W1|Q)"), "core": _terms("I(Y2;X2|W1,Q)"),
           "binning": _terms("I(W2;X1|Q)", "I(X2;X1|Q,W2)")},
    "E2": {"interference": _terms("I(X2;W1|Q)"), "core": _terms("I(Y2;X2,W1|Q,W2)"),
           "binning": _terms("I(X2;X1|Q,W2)")},
    "G2": {"interference": _terms("I(X2;W1|Q)"), "core": _terms("I(Y2;X2,W1|Q)"),
           "binning": _terms("I(W2;X1|Q)", "I(X2;X1|Q,W2)")},
}

HOD1_EQ = {label: f"14-{i + 1}" for i, label in enumerate(
    ["A1", "D1", "E1", "G1", "A2", "D2", "E2", "G2"])}


def hod1_terms(label: str) -> tuple[InfoTerm, ...]:
    parts = HOD1_PARTS[label]
    out: list[InfoTerm] = []
    for key in ("interference", "core"):
        out.extend(parts.get(key, ()))
    for t in parts.get("binning", ()):
        out.append(InfoTerm(t.kind, t.left, t.right, t.cond, -1, t.coefficient))
    return tuple(out)


# Auxiliary-variable spellings of the same eight constants with the private
# messages identified with the channel inputs (U1 -> X1, U2 -> X2).
EQ14_UFORM: dict[str, tuple[InfoTerm, ...]] = {
    "A1": _terms("I(Y1;X1|W1,W2,Q)", "I(W2;W1,X1|Q)"),
    "D1": _terms("I(Y1;X1,W1|W2,Q)", "I(W2;W1,X1|Q)"),
    "E1": _terms("I(Y1;X1,W2|W1,Q)"),
    "G1": _terms("I(Y1;X1,W1,W2|Q)"),
    "A2": _terms("I(X2;W2|Q)", "I(W2,X2;W1|Q)", "I(Y2;X2|Q,W1,W2)",
                 ("-", "I(X2;X1,W1,W2|Q)")),
    "D2": _terms("I(X2;W2|Q)", "I(W2,X2;W1|Q)", "I(Y2;X2,W2|Q,W1)",
                 ("-", "I(W2;X1,W1|Q)"), ("-", "I(X2;X1,W1,W2|Q)")),
    "E2": _terms("I(X2;W2|Q)", "I(W2,X2;W1|Q)", "I(Y2;X2,W1|Q,W2)",
                 ("-", "I(X2;X1,W1,W2|Q)")),
    "G2": _terms("I(X2;W2|Q)", "I(W1;X2,W2|Q)", "I(Y2;X2,W1,W2|Q)",
                 ("-", "I(W2;W1,X1|Q)"), ("-", "I(X2;X1,W1,W2|Q)")),
}


@dataclass(frozen=True)
class BoundConstants:
    """Evaluated right-hand sides of one region family, in bits."""

    family: str  # hod | dmt | rtd | hod1
    values: dict[str, float]

    def __getitem__(self, label: str) -> float:
        return self.values[label]


def defining_terms(family: str, label: str) -> tuple[InfoTerm, ...]:
    if family == "hod":
        return hod_terms(label)
    if family == "dmt":
        return DMT_TERMS[label]
    if family == "rtd":
        return RTD_TERMS[label]
    if family == "hod1":
        return hod1_terms(label)
    raise ValueError(f"unknown family {family!r}")


def _guarded(d: JointDistribution, form: str):
    ok, worst = validate_factorization(d, FORMS[form])
    if worst > CONSTANT_REJECT_TOL:
        raise ModelError(
            f"distribution violates factorization {form} by {worst:.3g} "
            f"(limit {CONSTANT_REJECT_TOL})")
    return worst


def hod_constants(d: JointDistribution) -> BoundConstants:
    """All 14 general-region constants A1..G2 (rows 10-1..10-14)."""
    _guarded(d, "hod9")
    return BoundConstants("hod", {k: eval_terms(d, hod_terms(k)) for k in HOD_PARTS})


def dmt_constants(d: JointDistribution) -> BoundConstants:
    """All 14 baseline-region constants a1..g2 (rows 6-1..6-14)."""
    _guarded(d, "dmt5")
    return BoundConstants("dmt", {k: eval_terms(d, v) for k, v in DMT_TERMS.items()})


def rtd_constants(d: JointDistribution) -> BoundConstants:
    """The 8 split-private-message bounds (rows 8-1..8-8)."""
    _guarded(d, "rtd7")
    return BoundConstants("rtd", {k: eval_terms(d, v) for k, v in RTD_TERMS.items()})


def hod1_constants(d: JointDistribution) -> BoundConstants:
    """The 8 simplified-region constants, channel-input form (rows 14-1..14-8)."""
    _guarded(d, "hod12")
    return BoundConstants("hod1", {k: eval_terms(d, hod1_terms(k)) for k in HOD1_PARTS})


def collapsed_constants(d: JointDistribution, family: str) -> dict[str, float]:
    """Core decoding terms only: the constants with every add-on deleted.

    For "hod" this is the classical simultaneous-decoding region of the
    interference channel; for "hod1" its simplified superposition form.
    """
    parts = HOD_PARTS if family == "hod" else HOD1_PARTS
    return {k: eval_terms(d, p["core"]) for k, p in parts.items()}


def addon_values(d: JointDistribution, family: str) -> dict[str, float]:
    """The distinct correlation/interference/binning add-on terms, by spelling."""
    parts = HOD_PARTS if family == "hod" else HOD1_PARTS
    out: dict[str, float] = {}
    for p in parts.values():
        for key in ("correlation", "interference", "binning"):
            for t in p.get(key, ()):
                out.setdefault(t.describe(), eval_terms(d, [t]))
    return out


# --- rate vectors for the quadruple/quintuple rows, keyed by constant label.
_QUAD_VARS = ("T1", "S1", "T2", "S2")
_QUAD_RATES = {
    "A1": {"S1": 1}, "B1": {"T1": 1}, "C1": {"T2": 1}, "D1": {"S1": 1, "T1": 1},
    "E1": {"S1": 1, "T2": 1}, "F1": {"T1": 1, "T2": 1}, "G1": {"S1": 1, "T1": 1, "T2": 1},
    "A2": {"S2": 1}, "B2": {"T2": 1}, "C2": {"T1": 1}, "D2": {"S2": 1, "T2": 1},
    "E2": {"S2": 1, "T1": 1}, "F2": {"T1": 1, "T2": 1}, "G2": {"S2": 1, "T1": 1, "T2": 1},
}

_RTD_VARS = ("T1", "S1a", "S1b", "T2", "S2")
_RTD_RATES = {
    "8-1": {"T1": 1, "T2": 1, "S1a": 1, "S1b": 1},
    "8-2": {"T2": 1, "S1a": 1, "S1b": 1},
    "8-3": {"S1a": 1, "S1b": 1},
    "8-4": {"T2": 1, "S1b": 1},
    "8-5": {"S1b": 1},
    "8-6": {"T1": 1, "T2": 1, "S2": 1},
    "8-7": {"T2": 1, "S2": 1},
    "8-8": {"S2": 1},
}

# --- catalogued rate-pair descriptions: (label, rate vector, constant labels).
THM4_ROWS = [
    ("11-1", {"R1": 1}, ["D1"]),
    ("11-2", {"R1": 1}, ["A1", "C2"]),
    ("11-3", {"R1": 1}, ["G1"]),
    ("11-4", {"R1": 1}, ["F2", "A1"]),
    ("11-5", {"R1": 1}, ["C2", "E1"]),
    ("11-6", {"R1": 1}, ["B1", "E1"]),
    ("11-7", {"R1": 1}, ["E2", "A1"]),
    ("11-8", {"R1": 1}, ["F2", "E1"]),
    ("11-9", {"R2": 1}, ["D2"]),
    ("11-10", {"R2": 1}, ["A2", "C1"]),
    ("11-11", {"R2": 1}, ["E1", "A2"]),
    ("11-12", {"R1": 1, "R2": 1}, ["E1", "E2"]),
    ("11-13", {"R1": 1, "R2": 1}, ["G2", "A1"]),
    ("11-14", {"R1": 1, "R2": 1}, ["G1", "A2"]),
    ("11-15", {"R1": 1, "R2": 1}, ["B1", "E1", "A2"]),
    ("11-16", {"R1": 1, "R2": 1}, ["E1", "G2"]),
    ("11-17", {"R1": 2, "R2": 1}, ["G1", "E2", "A1"]),
    ("11-18", {"R1": 2, "R2": 1}, ["F2", "E2", "A1", "A1"]),
    ("11-19", {"R1": 1, "R2": 2}, ["F1", "E1", "A2", "A2"]),
    ("11-20", {"R1": 1, "R2": 2}, ["E1", "G2", "A2"]),
]

THM6_ROWS = [
    ("15-1", {"R1": 1}, ["D1"]),
    ("15-2", {"R1": 1}, ["A1", "E2"]),
    ("15-3", {"R1": 1}, ["G1"]),
    ("15-4", {"R2": 1}, ["D2"]),
    ("15-5", {"R2": 1}, ["A2", "E1"]),
    ("15-6", {"R1": 1, "R2": 1}, ["A1", "G2"]),
    ("15-7", {"R1": 1, "R2": 1}, ["A2", "G1"]),
    ("15-8", {"R1": 1, "R2": 1}, ["E1", "E2"]),
    ("15-9", {"R1": 1, "R2": 1}, ["E1", "G2"]),
    ("15-10", {"R1": 2, "R2": 1}, ["A1", "G1", "E2"]),
    ("15-11", {"R1": 1, "R2": 2}, ["A2", "G2", "E1"]),
]

# The 37-row intermediate list obtained by eliminating T1 and T2 before
# any redundancy removal, in its catalogued order.
INTERMEDIATE37_ROWS = [
    ({"R1": 1}, combo) for combo in (
        ["D1"], ["C2", "A1"], ["A1", "B1"], ["G1"], ["F2", "A1"], ["C2", "E1"],
        ["B1", "E1"], ["F1", "A1"], ["F1", "E1"], ["E2", "A1"], ["F2", "E1"])
] + [
    ({"R2": 1}, combo) for combo in (["D2"], ["A2", "C1"], ["A2", "B2"], ["A2", "E1"])
] + [
    ({"R1": 1, "R2": 1}, combo) for combo in (
        ["E2", "E1"], ["G2", "A1"], ["E2", "A1", "C1"], ["E2", "A1", "B2"],
        ["E2", "A1", "E1"], ["G1", "A2"], ["C2", "E1", "A2"], ["F2", "A1", "A2"],
        ["B1", "E1", "A2"], ["F1", "A1", "A2"], ["G2", "E1"])
] + [
    ({"R1": 2, "R2": 1}, combo) for combo in (
        ["E2", "A1", "G1"], ["E2", "A1", "C2", "E1"], ["E2", "F2", "A1", "A1"],
        ["E2", "A1", "B1", "E1"], ["E2", "F1", "A1", "A1"])
] + [
    ({"R1": 1, "R2": 2}, combo) for combo in (
        ["F1", "E1", "A2", "A2"], ["A2", "G2", "E1"], ["F2", "E1", "A2", "A2"])
] + [
    ({"R1": 3, "R2": 2}, combo) for combo in (
        ["F1", "E1", "E2", "E2", "A1", "A1"], ["F2", "E1", "E2", "E2", "A1", "A1"])
] + [
    ({"R1": 2, "R2": 2}, ["G2", "E1", "E2", "A1"]),
]

_FAMILY_FOR = {
    "thm3-quadruple": "hod", "thm4-ratepair": "hod",
    "thm5-quadruple": "hod1", "thm6-ratepair": "hod1",
    "dmt-quadruple": "dmt", "rtd-quintuple": "rtd",
}


def _vector_row(variables, rates: dict[str, int], bound: float, label: str) -> Halfspace:
    return make_row([rates.get(v, 0) for v in variables], bound, label)


def _quadruple_system(constants: BoundConstants, eq_of: dict[str, str],
                      labels) -> InequalitySystem:
    rows = [_vector_row(_QUAD_VARS, _QUAD_RATES[k.upper()], constants[k], eq_of[k])
            for k in labels]
    rows += nonnegativity_rows(_QUAD_VARS)
    return InequalitySystem(_QUAD_VARS, tuple(rows))


def _ratepair_system(constants: BoundConstants, row_list) -> InequalitySystem:
    variables = ("R1", "R2")
    rows = [_vector_row(variables, rates, sum(constants[k] for k in combo), label)
            for label, rates, combo in row_list]
    rows += nonnegativity_rows(variables)
    return InequalitySystem(variables, tuple(rows))


def build_system(constants: BoundConstants, description: str) -> InequalitySystem:
    """Assemble a catalogued inequality system from evaluated constants."""
    family = _FAMILY_FOR.get(description)
    if family is None:
        raise ValueError(f"unknown system description {description!r}")
    if constants.family != family:
        raise ValueError(
            f"{description} needs {family!r} constants, got {constants.family!r}")
    if description == "thm3-quadruple":
        return _quadruple_system(constants, HOD_EQ, list(HOD_PARTS))
    if description == "dmt-quadruple":
        return _quadruple_system(constants, DMT_EQ, list(DMT_TERMS))
    if description == "thm4-ratepair":
        return _ratepair_system(constants, THM4_ROWS)
    if description == "thm6-ratepair":
        return _ratepair_system(constants, THM6_ROWS)
    if description == "thm5-quadruple":
        labels = ["A1", "D1", "E1", "G1", "A2", "D2", "E2", "G2"]
        rows = [_vector_row(_QUAD_VARS, _QUAD_RATES[k], constants[k], f"13-{i + 1}")
                for i, k in enumerate(labels)]
        rows += nonnegativity_rows(_QUAD_VARS)
        return InequalitySystem(_QUAD_VARS, tuple(rows))
    # rtd-quintuple
    rows = [_vector_row(_RTD_VARS, _RTD_RATES[k], constants[k], k) for k in RTD_TERMS]
    rows += nonnegativity_rows(_RTD_VARS)
    return InequalitySystem(_RTD_VARS, tuple(rows))


def intermediate37_system(constants: BoundConstants) -> InequalitySystem:
    """The catalogued 37-row intermediate list over (R1, R2)."""
    if constants.family != "hod":
        raise ValueError(f"37-row list needs 'hod' constants, got {constants.family!r}")
    variables = ("R1", "R2")
    rows = [_vector_row(variables, rates, sum(constants[k] for k in combo), f"37:{i + 1}")
            for i, (rates, combo) in enumerate(INTERMEDIATE37_ROWS)]
    rows += nonnegativity_rows(variables)
    return InequalitySystem(variables, tuple(rows))


# --- pre-binning decoding budgets at the cognitive receiver, plus the two
#     binning costs linking budget rates (s2, t2) to message rates (S2, T2).
_BUDGET_ROWS = [
    ({"s2": 1},
     _terms("I(W1;U2,W2|Q)", "I(Y2;U2|Q,W1,W2)", "I(U2;W2|Q)"), "budget-s2"),
    ({"T1": 1},
     _terms("I(U2;W2|Q)", "I(W2,U2;W1|Q)", "I(Y2;W1|Q,U2,W2)"), "budget-T1"),
    ({"t2": 1},
     _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)", "I(Y2;W2|Q,W1,U2)"), "budget-t2"),
    ({"s2": 1, "T1": 1},
     _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)", "I(Y2;U2,W1|Q,W2)"), "budget-s2T1"),
    ({"s2": 1, "t2": 1},
     _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)", "I(Y2;U2,W2|Q,W1)"), "budget-s2t2"),
    ({"T1": 1, "t2": 1},
     _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)", "I(Y2;W1,W2|Q,U2)"), "budget-T1t2"),
    ({"T1": 1, "s2": 1, "t2": 1},
     _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)", "I(Y2;U2,W1,W2|Q)"), "budget-T1s2t2"),
]

BINNING_COST_W2 = iterm("I(W2;W1,U1|Q)")
BINNING_COST_U2 = iterm("I(U2;U1,W1,W2|Q)")


def binning_budget_system(d: JointDistribution) -> InequalitySystem:
    """Budget system over (S2, T2, T1, s2, t2); eliminating s2 and t2 must
    reproduce the user-2 rows of the quadruple region."""
    _guarded(d, "hod9")
    variables = ("S2", "T2", "T1", "s2", "t2")
    rows = [_vector_row(variables, rates, eval_terms(d, terms), label)
            for rates, terms, label in _BUDGET_ROWS]
    rows.append(_vector_row(variables, {"T2": 1, "t2": -1},
                            -eval_terms(d, [BINNING_COST_W2]), "bin-t2"))
    rows.append(_vector_row(variables, {"S2": 1, "s2": -1},
                            -eval_terms(d, [BINNING_COST_U2]), "bin-s2"))
    return InequalitySystem(variables, tuple(rows))


# --- identity tables used by the verifier ------------------------------------

# Baseline constant = general constant minus these terms (catalogued
# comparison table; holds on the baseline input family).
COROLLARY5_TABLE: dict[str, tuple[str, tuple[InfoTerm, ...]]] = {
    "a1": ("A1", _terms("I(W2;W1|Q)")),
    "b1": ("B1", _terms("I(W2;U1|Q)")),
    "c1": ("C1", _terms("I(U1;W1|Q)")),
    "d1": ("D1", ()),
    "e1": ("E1", _terms("I(W2;U1|Q)")),
    "f1": ("F1", _terms("I(W2;U1|Q)")),
    "g1": ("G1", _terms("I(W2;U1,W1|Q)")),
    "a2": ("A2", _terms("I(W2;W1|Q)")),
    "b2": ("B2", _terms("I(W1;U2|Q)")),
    "c2": ("C2", _terms("I(U2;W2|Q)")),
    "d2": ("D2", _terms("I(U2;W2|Q)", "I(W1;U2|Q)")),
    "e2": ("E2", _terms("I(W1;U2|Q)")),
    "f2": ("F2", _terms("I(W1;W2|Q)")),
    "g2": ("G2", _terms("I(U2;W2|Q)", "I(W1;W2,U2|Q)")),
}

# Quadruple-region bound expressions evaluated on the split-private-message
# joint (private message = (U1a, U1b), no time-sharing variable), for the
# split-region comparison.  Keys name the rate sum being bounded.
HOD_ON_SPLIT: dict[str, tuple[InfoTerm, ...]] = {
    "S1+T1+T2": _terms("I(Y1;U1a,U1b,W1,W2)"),
    "S1": _terms("I(W2;U1a,U1b,W1)", "I(Y1;U1a,U1b|W1,W2)"),
    "S1+T2": _terms("I(Y1;U1a,U1b,W2|W1)"),
    "S1b+T2": _terms("I(Y1;U1b,W2|W1,U1a)"),
    "S1b": _terms("I(W2;U1b,W1,U1a)", "I(Y1;U1b|W1,U1a,W2)"),
    "S2+T1+T2": _terms("I(U2;W2)", "I(W1;U2,W2)", "I(Y2;U2,W1,W2)",
                       ("-", "I(W2;W1,U1a,U1b)"), ("-", "I(U2;U1a,U1b,W1,W2)")),
    "S2+T2": _terms("I(U2;W2)", "I(W2,U2;W1)", "I(Y2;U2,W2|W1)",
                    ("-", "I(W2;U1a,U1b,W1)"), ("-", "I(U2;U1a,U1b,W1,W2)")),
    "S2": _terms("I(U2;W2)", "I(W2,U2;W1)", "I(Y2;U2|W1,W2)",
                 ("-", "I(U2;U1a,U1b,W1,W2)")),
}

# The eight split-region relations: rtd bound = matching quadruple bound
# minus delta (sign +1), or quadruple bound = rtd bound minus delta (-1).
# The S1 line is stated with the full I(U2,W2; U1b | W1,U1a) grouping, which
# is the exact identity; the narrow variant drops U2 there and its residual
# I(U2;U1b|W1,U1a,W2) is reported by the verifier rather than asserted.
COROLLARY6_LINES = [
    ("S1+T1+T2", "8-1", +1, _terms("I(U2;U1b|W1,W2,U1a)")),
    ("S1", "8-3", +1, _terms("I(W2;W1)", "I(U2,W2;U1b|W1,U1a)")),
    ("S1+T2", "8-2", +1, _terms("I(U2;U1b|W1,W2,U1a)")),
    ("S1b+T2", "8-4", +1, _terms("I(U2;U1b|W1,W2,U1a)")),
    ("S1b", "8-5", +1, _terms("I(W2;W1)", "I(U2,W2;U1b|W1,U1a)")),
    ("S2+T1+T2", "8-6", -1, _terms("I(W2,U2;U1b|W1,U1a)")),
    ("S2+T2", "8-7", -1, _terms("I(W2,U2;U1b|W1,U1a)")),
    ("S2", "8-8", -1, _terms(("-", "I(W2;W1)"), "I(U2;U1b|W1,W2,U1a)")),
]

COROLLARY6_NARROW_S1_DELTA = _terms("I(W2;W1)", "I(W2;U1b|W1,U1a)")

# Residual separating the two spellings in the duality table: zero whenever
# the public messages are recoverable from their channel inputs.
EQ14_MARKOV_RESIDUAL = iterm("I(W2;W1|Q,X1)")


def project_to_ratepair(sys: InequalitySystem) -> InequalitySystem:
    """Eliminate the per-message rates, leaving (R1, R2).

    Quadruple systems use R1 = S1 + T1, R2 = S2 + T2; the quintuple system
    uses R1 = T1 + S1a + S1b, R2 = T2 + S2.
    """
    from . import polytope as _p

    one = Fraction(1)
    if set(sys.variables) == set(_QUAD_VARS):
        s = _p.substitute(sys, "S1", {"R1": one, "T1": -one})
        s = _p.substitute(s, "S2", {"R2": one, "T2": -one})
        for var in ("T1", "T2"):
            s = _p.fm_eliminate(s, var)
    elif set(sys.variables) == set(_RTD_VARS):
        s = _p.substitute(sys, "S1a", {"R1": one, "T1": -one, "S1b": -one})
        s = _p.substitute(s, "S2", {"R2": one, "T2": -one})
        for var in ("T1", "S1b", "T2"):
            s = _p.fm_eliminate(s, var)
    else:
        raise ValueError(f"no rate-pair mapping for variables {sys.variables}")
    return _p.reorder(s, ("R1", "R2"))
