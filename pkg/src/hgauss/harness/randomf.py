"""Seeded random smooth functions f(x, y), emitted as expression text."""
from __future__ import annotations

import numpy as np

_FUNCS = ("sin", "cos", "sinh", "cosh")


def _num(v: float) -> str:
    return f"{v:.3f}"


def _join(terms: list[tuple[float, str]]) -> str:
    out = ""
    for c, body in terms:
        mag = _num(abs(c))
        piece = mag if body == "1" else f"{mag}*{body}"
        if not out:
            out = piece if c >= 0 else f"-{piece}"
        else:
            out += f" {'+' if c >= 0 else '-'} {piece}"
    return out or "0"


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts) or "1"


def random_polynomial(rng: np.random.Generator, degree: int = 4) -> str:
    terms = []
    for total in range(1, degree + 1):
        for i in range(total, -1, -1):
            if rng.random() < 0.55:
                terms.append((float(rng.uniform(-0.5, 0.5)), _monomial(i, total - i)))
    if not any(t[1] not in ("x", "y") for t in terms):
        terms.append((float(rng.uniform(0.1, 0.5)), "x^2*y"))
    return _join(terms)


def random_transcendental(rng: np.random.Generator) -> str:
    terms = []
    for _ in range(int(rng.integers(2, 4))):
        fn = _FUNCS[int(rng.integers(len(_FUNCS)))]
        a, b = rng.uniform(-1.0, 1.0, size=2)
        arg = f"{_num(a)}*x {'+' if b >= 0 else '-'} {_num(abs(b))}*y"
        terms.append((float(rng.uniform(-0.5, 0.5)), f"{fn}({arg})"))
    terms.append((float(rng.uniform(-0.3, 0.3)), "x*y"))
    return _join(terms)


def random_functions(seed: int, n: int) -> list[str]:
    """Alternating polynomials (degree <= 4) and sin/cos/sinh/cosh mixtures."""
    rng = np.random.default_rng(seed)
    return [random_polynomial(rng) if k % 2 == 0 else random_transcendental(rng) for k in range(n)]
