"""Closed-form size-bound evaluators and the multi-model regime classifier.

The average-size bound for minimal transversals of a random hypergraph
(n vertices, m edges with m = beta * n^alpha, vertex-in-edge probability
p) has the shape ``n ** E`` with::

    E = d(alpha) * log_{1/q}(m) + c * ln(ln(m)),   q = 1 - p

where ``d(alpha)`` is 1 for alpha <= 1 and ``(alpha+1)^2 / (4*alpha)``
above, and c is an unspecified positive constant. Per-attribute proper
premise counts follow by the context-to-hypergraph mapping: edge count
``m = n_objects * q_ctx`` and vertex-in-edge probability ``q_ctx``, so
the log base becomes ``1/p_ctx``. The almost-sure lower bound drops the
``d(alpha)`` factor and carries its own constant c2 (which may be
negative).

Bound magnitudes are returned as exponents or log10 values; the raw
counts overflow floats at experiment scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .randctx import MultiParamSpec

MIN_EDGE_COUNT = 3.0  # ln(ln(m)) must be defined and positive


@dataclass(frozen=True)
class BoundQuery:
    """Parameters of the hypergraph-level average bound.

    `alpha` defaults to ln(m/beta)/ln(n); pass it explicitly to pin a
    different scaling regime.
    """

    n: int
    m: float
    p: float
    c: float = 1.0
    beta: float = 1.0
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must be in (0, 1), got {self.p}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def resolved_alpha(self) -> float:
        if self.alpha is not None:
            return self.alpha
        return math.log(self.m / self.beta) / math.log(self.n)


def d_of_alpha(alpha: float) -> float:
    """Piecewise exponent factor; continuous at alpha = 1."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if alpha <= 1:
        return 1.0
    return (alpha + 1.0) ** 2 / (4.0 * alpha)


def avg_mt_exponent(query: BoundQuery) -> float:
    """Exponent E of the average minimal-transversal bound n**E."""
    if query.m < MIN_EDGE_COUNT:
        raise ValueError(
            f"edge count m must be >= {MIN_EDGE_COUNT} (ln ln m guard), got {query.m}")
    alpha = query.resolved_alpha
    if alpha <= 0:
        raise ValueError(f"resolved alpha must be > 0, got {alpha}")
    log_base = math.log(query.m) / math.log(1.0 / query.q)
    return d_of_alpha(alpha) * log_base + query.c * math.log(math.log(query.m))


class ContextBoundParams(NamedTuple):
    """Context-level inputs for the premise-count bounds."""

    n_attributes: int
    n_objects: int
    p: float
    c: float = 1.0


def map_context_to_hypergraph(params: ContextBoundParams) -> BoundQuery:
    """Variable mapping: the per-attribute hypergraph has one edge per
    missing cell (m = objects * q) and its vertices appear in edges with
    the blank probability q, flipping the log base to 1/p."""
    q_ctx = 1.0 - params.p
    return BoundQuery(
        n=params.n_attributes,
        m=params.n_objects * q_ctx,
        p=q_ctx,
        c=params.c,
    )


def avg_pp_exponent(params: ContextBoundParams) -> float:
    """Exponent of the average per-attribute proper-premise bound
    |A| ** E. Rejects degenerate-dense inputs (objects * q < 3)."""
    return avg_mt_exponent(map_context_to_hypergraph(params))


def total_base_bound_log10(params: ContextBoundParams) -> float:
    """log10 of |A| ** (E + 1): upper bound for the whole proper-premise
    base, and thereby for the pseudo-intent count as well."""
    exponent = avg_pp_exponent(params)
    return (exponent + 1.0) * math.log10(params.n_attributes)


class LowerBoundResult(NamedTuple):
    exponent: float        # per-attribute: count >~ |A| ** exponent
    total_log10: float     # whole base: log10(|A| ** (exponent + 1))


def almost_sure_lower_exponent(
        n_attributes: int, n_objects: int, p: float, c2: float = 0.0,
) -> LowerBoundResult:
    """Almost-sure lower bound on per-attribute transversal counts.

    Exponent is ``log_{1/p}(objects * q) + c2 * ln(ln(objects * q))``;
    c2 stands in for the unspecified O(ln ln m) constant and may be
    negative. The total is |A| times the per-attribute bound, reported
    in log10.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if n_attributes < 2:
        raise ValueError(f"n_attributes must be >= 2, got {n_attributes}")
    m = n_objects * (1.0 - p)
    if m < MIN_EDGE_COUNT:
        raise ValueError(
            f"objects * q must be >= {MIN_EDGE_COUNT} (ln ln guard), got {m}")
    exponent = (math.log(m) / math.log(1.0 / p)
                + c2 * math.log(math.log(m)))
    total_log10 = (exponent + 1.0) * math.log10(n_attributes)
    return LowerBoundResult(exponent, total_log10)


# -- regime classification ---------------------------------------------------------


@dataclass(frozen=True)
class RegimeThresholds:
    """Finite-size stand-ins for the asymptotic class conditions.

    polynomial:       |U ∪ R| <= k1 * ln(n)
    quasi-polynomial: |R|     <= k2 * ln(n) ** k3
    exponential:      |R|     >= k4 * n
    """

    k1: float = 1.0
    k2: float = 1.0
    k3: float = 2.0
    k4: float = 0.5


@dataclass(frozen=True)
class RegimeReport:
    regime: str   # polynomial | quasi-polynomial | exponential | unclassified
    witness: str  # the cardinality condition that matched


def classify_regime(spec: MultiParamSpec,
                    thresholds: RegimeThresholds = RegimeThresholds()) -> RegimeReport:
    """Classify a multi-model spec by its attribute-class cardinalities.

    The |U ∪ R| condition follows this package's reading of the
    polynomial case (the class-size symbol is ambiguous in its source).
    When several conditions match, the tightest regime wins
    (polynomial < quasi-polynomial < exponential).
    """
    n = spec.n_attributes
    if n < 2:
        return RegimeReport("unclassified", f"n={n} too small to classify")
    ln_n = math.log(n)
    ur = spec.u_size + spec.r_size
    r = spec.r_size
    if ur <= thresholds.k1 * ln_n:
        return RegimeReport(
            "polynomial",
            f"|U∪R|={ur} <= k1*ln(n)={thresholds.k1 * ln_n:.4f}")
    if r <= thresholds.k2 * ln_n ** thresholds.k3:
        return RegimeReport(
            "quasi-polynomial",
            f"|R|={r} <= k2*ln(n)^k3={thresholds.k2 * ln_n ** thresholds.k3:.4f}")
    if r >= thresholds.k4 * n:
        return RegimeReport(
            "exponential",
            f"|R|={r} >= k4*n={thresholds.k4 * n:.4f}")
    return RegimeReport("unclassified", "no cardinality condition matched")
