"""Brute-force ground truth for small instances.

Exact partition values, exact polynomial coefficients, and residual-checked
complex roots. Everything here enumerates all 2^n spin configurations, so
it is only usable below the vertex cap (default 24); it exists to validate
the polynomial-time pipeline, not to compete with it.

Summations are performed blockwise with numpy's pairwise reduction in a
fixed order, so results do not depend on how work might be partitioned.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import OracleCapError, RootConvergenceError, SchemaError
from .hypergraph import Hypergraph, IsingActivity

DEFAULT_VERTEX_CAP = 24
_BLOCK_BITS = 20  # cap per-block scratch arrays at 2^20 entries

# Trailing coefficients below this relative threshold are treated as zero
# when determining the polynomial degree (cannot occur for finite Ising
# activities, where the leading coefficient is a product of phi(+...+)=1).
LEADING_STRIP_REL = 1e-12


def _check_cap(g: Hypergraph, cap: int) -> None:
    if g.n > cap:
        raise OracleCapError(
            f"exact enumeration over 2^{g.n} states exceeds cap n<={cap}"
        )


def _blocks(n: int):
    total = 1 << n
    step = min(total, 1 << _BLOCK_BITS)
    for start in range(0, total, step):
        yield np.arange(start, min(start + step, total), dtype=np.int64)


def _edge_weights(g: Hypergraph, states: np.ndarray) -> np.ndarray:
    """prod_e phi_e(sigma^S) for each subset bitmask S in `states`.

    Edges not meeting S contribute their normalized all-minus value 1, so
    the product may run over every edge.
    """
    w = np.ones(states.shape, dtype=np.complex128)
    for e in g.edges:
        if isinstance(e.activity, IsingActivity):
            mask = 0
            for v in e.vertices:
                mask |= 1 << v
            part = states & mask
            cut = (part != 0) & (part != mask)
            w[cut] *= e.activity.beta
        else:
            local = np.zeros(states.shape, dtype=np.int64)
            for j, v in enumerate(e.vertices):
                local |= (states >> v & 1) << j
            table = np.asarray(e.activity.values, dtype=np.complex128)
            w *= table[local]
    return w


def exact_partition(g: Hypergraph, lam: complex,
                    cap: int = DEFAULT_VERTEX_CAP) -> complex:
    """Z(lam) = sum over subsets S of prod_e phi_e(S) * lam^|S|."""
    _check_cap(g, cap)
    total = 0.0 + 0.0j
    for states in _blocks(g.n):
        w = _edge_weights(g, states)
        pc = np.bitwise_count(states)
        total += np.sum(w * np.power(complex(lam), pc))
    return complex(total)


def exact_coefficients(g: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> np.ndarray:
    """Coefficients c_0..c_n of Z(lam), c_i = sum over |S|=i of the weight.

    c_0 is forced to 1 by the all-minus normalization of every edge table.
    """
    _check_cap(g, cap)
    c = np.zeros(g.n + 1, dtype=np.complex128)
    for states in _blocks(g.n):
        w = _edge_weights(g, states)
        pc = np.bitwise_count(states)
        np.add.at(c, pc, w)
    return c


def exact_multivariate(g: Hypergraph, lams, cap: int = DEFAULT_VERTEX_CAP) -> complex:
    """Multivariate Ising value: sum_S prod_{e cut by S} beta_e prod_{i in S} lam_i."""
    _check_cap(g, cap)
    if any(not isinstance(e.activity, IsingActivity) for e in g.edges):
        raise SchemaError("multivariate evaluation is defined for Ising edges only")
    lams = [complex(x) for x in lams]
    if len(lams) != g.n:
        raise SchemaError(f"expected {g.n} vertex activities, got {len(lams)}")
    total = 0.0 + 0.0j
    for states in _blocks(g.n):
        w = _edge_weights(g, states)
        vf = np.ones(states.shape, dtype=np.complex128)
        for i, li in enumerate(lams):
            vf[(states >> i & 1) == 1] *= li
        total += np.sum(w * vf)
    return complex(total)


def polyval(coeffs: np.ndarray, z) -> np.ndarray:
    """Evaluate sum_i coeffs[i] z^i (ascending order)."""
    return np.polynomial.polynomial.polyval(z, np.asarray(coeffs, dtype=complex))


def polynomial_roots(coeffs, tol: float = 1e-8) -> np.ndarray:
    """All roots of sum c_i lam^i via companion-matrix eigenvalues.

    Near-zero leading coefficients (relative to max |c_i|) are stripped
    first so spurious huge roots cannot appear. Each returned root r must
    satisfy |P(r)| <= tol * max|c_i|; the list is sorted by (|r|, arg r).
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.size == 0:
        raise SchemaError("empty coefficient vector")
    scale = np.max(np.abs(c))
    if scale == 0:
        raise SchemaError("zero polynomial has no defined root set")
    deg = c.size - 1
    while deg > 0 and abs(c[deg]) < LEADING_STRIP_REL * scale:
        deg -= 1
    if deg == 0:
        return np.zeros(0, dtype=np.complex128)
    try:
        roots = np.roots(c[deg::-1])
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RootConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    resid = np.abs(polyval(c[: deg + 1], roots))
    if np.any(resid > tol * scale):
        worst = float(np.max(resid) / scale)
        raise RootConvergenceError(
            f"root residual {worst:.3e} above tolerance {tol:.1e} (relative)"
        )
    order = sorted(range(len(roots)),
                   key=lambda i: (abs(roots[i]), cmath.phase(roots[i])))
    return roots[order]


@dataclass(frozen=True)
class ZeroReport:
    """Exact coefficients, all roots, per-root residuals, circle deviation."""

    coefficients: np.ndarray
    roots: np.ndarray
    residuals: np.ndarray
    max_circle_deviation: float


def zero_report(g: Hypergraph, residual_tol: float = 1e-8,
                cap: int = DEFAULT_VERTEX_CAP) -> ZeroReport:
    """Root locations of the exact partition polynomial of g."""
    c = exact_coefficients(g, cap=cap)
    roots = polynomial_roots(c, tol=residual_tol)
    resid = np.abs(polyval(c, roots)) if roots.size else np.zeros(0)
    dev = float(np.max(np.abs(np.abs(roots) - 1.0))) if roots.size else 0.0
    return ZeroReport(c, roots, resid, dev)
