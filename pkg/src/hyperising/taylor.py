"""Deterministic approximation of Z(lam) by truncating the series of log Z.

With the all-minus normalization the partition polynomial factors as
prod_i (1 - lam/r_i), so log Z = -sum_{j>=1} p_j lam^j / j with p_j the
j-th power sum of the reciprocal roots. When every root lies on the unit
circle, truncating after m terms leaves an additive error of at most
n |lam|^{m+1} / ((m+1)(1-|lam|)) inside the open unit disk, and an
additive error of eps/4 in log Z yields a multiplicative error within
1 +/- eps in Z. Arguments outside the unit disk are pulled inside with
Z(lam) = lam^n * Z_conj(1/lam), valid for symmetric edge activities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .coefficients import (
    CoefficientTable,
    compute_coefficient_tables,
    extend_power_sums,
    power_sums,
    power_sums_to_elementary,
)
from .errors import OrderCapError, UnitCircleError
from .hypergraph import Hypergraph
from .leeyang import check_activity_ranges
from .subgraphs import DEFAULT_SET_CAP, ConnectedFamily, enumerate_connected

DEFAULT_ORDER_CAP = 24
UNIT_CIRCLE_TOL = 1e-12


def truncation_order(n: int, eps: float, abs_lambda: float) -> int:
    """Smallest m with m >= (log(4n/eps) + log(1/(1-|lam|))) / log(1/|lam|),
    which drives the truncation error below eps/4."""
    if not 0 < abs_lambda < 1:
        raise ValueError("truncation order requires 0 < |lambda| < 1")
    if not 0 < eps <= 1:
        raise ValueError("accuracy must lie in (0, 1]")
    if n < 1:
        return 1
    need = (math.log(4 * n / eps) + math.log(1 / (1 - abs_lambda))) / math.log(
        1 / abs_lambda
    )
    return max(1, math.ceil(need))


def truncation_bound(n: int, abs_lambda: float, m: int) -> float:
    """A-priori tail bound n |lam|^(m+1) / ((m+1)(1-|lam|)) on the
    truncated log, valid when all roots are on the unit circle."""
    if abs_lambda >= 1:
        raise ValueError("bound requires |lambda| < 1")
    if abs_lambda == 0:
        return 0.0
    return n * abs_lambda ** (m + 1) / ((m + 1) * (1 - abs_lambda))


def truncated_log_partition(p: Sequence[complex], lam: complex, m: int) -> complex:
    """-sum_{j=1}^{m} p_j lam^j / j."""
    if len(p) < m:
        raise ValueError(f"need power sums to order {m}, got {len(p)}")
    acc = 0.0 + 0.0j
    power = 1.0 + 0.0j
    for j in range(1, m + 1):
        power *= lam
        acc += p[j - 1] * power / j
    return -acc


def log_series_from_coefficients(c: Sequence[complex], lam: complex,
                                 m: int) -> complex:
    """Truncated log Z recovered from the polynomial coefficients alone.

    Writing log Z = sum_j g_j lam^j, differentiating Z = exp(log Z) gives
    the triangular system c_j = sum_{i=0}^{j-1} ((j-i)/j) c_i g_{j-i},
    solved forward for g_1..g_m. Agrees with truncated_log_partition term
    by term; kept as an independent cross-check of the power-sum path.
    """
    if len(c) < 1 or c[0] != 1:
        raise ValueError("coefficient prefix must start with c_0 = 1")
    cs = [complex(x) for x in c] + [0.0 + 0.0j] * max(0, m + 1 - len(c))
    g: list[complex] = []
    for j in range(1, m + 1):
        acc = cs[j]
        for i in range(1, j):
            acc -= ((j - i) / j) * cs[i] * g[j - i - 1]
        g.append(acc)
    acc = 0.0 + 0.0j
    power = 1.0 + 0.0j
    for j in range(1, m + 1):
        power *= lam
        acc += g[j - 1] * power
    return acc


@dataclass(frozen=True)
class TaylorApproximation:
    """Outcome of one truncation run.

    `value` estimates Z at `lam`; `log_estimate` is the truncated log at
    `lam_effective` (the argument after any inversion into the unit disk).
    `bound` is the a-priori tail bound at the chosen order; it certifies
    |value - Z| <= eps |Z| only when `guaranteed` is set, i.e. when every
    edge activity sits in a range with all partition zeros on the unit
    circle.
    """

    order: int
    lam: complex
    lam_effective: complex
    inverted: bool
    log_estimate: complex
    value: complex
    bound: float
    epsilon: float
    guaranteed: bool


class PartitionEstimator:
    """Truncation pipeline for one host, reusing enumeration and tables
    across calls with different arguments and accuracies."""

    def __init__(self, g: Hypergraph, order_cap: int = DEFAULT_ORDER_CAP,
                 set_cap: int = DEFAULT_SET_CAP):
        self.host = g
        self.order_cap = order_cap
        self.set_cap = set_cap
        self._fam: ConnectedFamily | None = None
        self._ctable: CoefficientTable | None = None
        self._p: list[complex] = []
        self._e: list[complex] | None = None
        self._conj: PartitionEstimator | None = None
        self._guaranteed: bool | None = None

    def _conj_estimator(self) -> "PartitionEstimator":
        if self._conj is None:
            conj_host = self.host.conjugate_activities()
            if conj_host == self.host:
                self._conj = self
            else:
                self._conj = PartitionEstimator(conj_host, self.order_cap,
                                                self.set_cap)
        return self._conj

    def _ensure_depth(self, depth: int) -> None:
        if self._ctable is not None and self._ctable.m >= depth:
            return
        fam = enumerate_connected(self.host, depth, set_cap=self.set_cap)
        ctable = compute_coefficient_tables(self.host, depth, fam=fam,
                                            set_cap=self.set_cap)
        self._fam = fam
        self._ctable = ctable
        self._p = power_sums(ctable)
        self._e = None

    def power_sums_up_to(self, m: int) -> list[complex]:
        """Power sums p_1..p_m; the table recurrence is run only up to the
        host size, beyond which Newton's identity continues the sequence."""
        n = self.host.n
        if n == 0:
            return [0.0 + 0.0j] * m
        depth = min(m, n)
        if depth > self.order_cap:
            raise OrderCapError(
                f"truncation order {m} needs tables to order {depth}, "
                f"above the cap {self.order_cap}"
            )
        self._ensure_depth(depth)
        if m <= len(self._p):
            return self._p[:m]
        return extend_power_sums(self._p, self.elementary(), m)

    def elementary(self) -> list[complex]:
        """e_1..e_depth for the deepest order computed so far."""
        if self._e is None:
            self._e = power_sums_to_elementary(self._p)
        return self._e

    def guaranteed(self) -> bool:
        if self._guaranteed is None:
            self._guaranteed = check_activity_ranges(self.host).all_pass
        return self._guaranteed

    def approximate(self, lam: complex, eps: float) -> TaylorApproximation:
        lam = complex(lam)
        if not 0 < eps < 1:
            raise ValueError("accuracy must lie in (0, 1)")
        if abs(abs(lam) - 1.0) <= UNIT_CIRCLE_TOL:
            raise UnitCircleError(
                "|lambda| = 1 is excluded: partition zeros accumulate on the"
                " unit circle"
            )
        n = self.host.n
        inverted = abs(lam) > 1
        if inverted:
            if not self.host.all_symmetric():
                raise ValueError(
                    "|lambda| > 1 requires symmetric edge activities for the"
                    " inversion identity"
                )
            inner = self._conj_estimator()
            lam_eff = 1 / lam
        else:
            inner = self
            lam_eff = lam
        abs_eff = abs(lam_eff)
        m = 1 if abs_eff == 0 else truncation_order(n, eps, abs_eff)
        p = inner.power_sums_up_to(m)
        log_est = truncated_log_partition(p, lam_eff, m)
        value = cmath.exp(log_est)
        if inverted:
            value *= lam**n
        return TaylorApproximation(
            order=m,
            lam=lam,
            lam_effective=lam_eff,
            inverted=inverted,
            log_estimate=log_est,
            value=value,
            bound=truncation_bound(n, abs_eff, m),
            epsilon=eps,
            guaranteed=self.guaranteed(),
        )


def approximate_partition(g: Hypergraph, lam: complex, eps: float,
                          order_cap: int = DEFAULT_ORDER_CAP,
                          set_cap: int = DEFAULT_SET_CAP) -> TaylorApproximation:
    """One-shot truncation run; see PartitionEstimator for amortized use."""
    return PartitionEstimator(g, order_cap=order_cap,
                              set_cap=set_cap).approximate(lam, eps)
