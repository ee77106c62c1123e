import numpy as np
import pytest

from rrkit.prob import FORMS, Factor, FactorizationSpec, compose


def binary_sizes(form: str, q: int = 2) -> dict[str, int]:
    sizes = {n: 2 for n in FORMS[form].variables}
    if "Q" in sizes:
        sizes["Q"] = q
    return sizes


def uniform_factors(form: str, sizes: dict[str, int]) -> list[np.ndarray]:
    out = []
    for f in FORMS[form].factors:
        shape = tuple(sizes[n] for n in f.given) + tuple(sizes[n] for n in f.targets)
        t = np.ones(shape)
        target_axes = tuple(range(len(f.given), len(shape)))
        out.append(t / t.sum(axis=target_axes, keepdims=True))
    return out


@pytest.fixture
def chain_qwu():
    """Three-variable chain p(q) p(w1|q) p(u1|q,w1) for hand-built tables."""
    return FactorizationSpec("test-chain", (
        Factor(("Q",), ()),
        Factor(("W1",), ("Q",)),
        Factor(("U1",), ("Q", "W1")),
    ))


def delta(n: int) -> np.ndarray:
    """Identity coupling table p(b|a) = 1[b == a], shape (n, n)."""
    return np.eye(n)


def compose_form(form: str, factors, sizes):
    return compose(factors, FORMS[form], sizes)
