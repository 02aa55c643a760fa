"""Counting formulas, code-existence tests, and the distance lower bounds.

Everything combinatorial runs in exact Python integers (arbitrary precision,
so overflow cannot occur, let alone wrap); floating point enters only for the
asymptotic rate, the entropy, and the norm-ratio bounds.
"""

from __future__ import annotations

import math

from .hamiltonian import CoefficientVector

__all__ = [
    "param_count",
    "param_count_closed",
    "param_count_upper",
    "upper_bound_in_regime",
    "gv_exists",
    "binary_entropy",
    "gv_rate",
    "gv_threshold_k0",
    "coeff_ratio",
    "bound_intrinsic",
    "bound_generic",
    "bound_coarse",
    "minimizing_shift",
]


def _validate(n: int, locality: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= locality <= n:
        raise ValueError(f"locality must be in [0, n]; got {locality} for n={n}")
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")


def param_count(n: int, locality: int, d: int = 2) -> int:
    """Independent real parameters of a locality-bounded operator on n qudits.

    sum_{j=0}^{L} C(n, j) * (d^2 - 1)^j, exact.
    """
    _validate(n, locality, d)
    unit = d * d - 1
    return sum(math.comb(n, j) * unit**j for j in range(locality + 1))


def param_count_closed(n: int, locality: int) -> int:
    """Closed-form qubit counts for locality 2 and 3."""
    if locality == 2:
        num = 9 * n * n - 3 * n + 2
    elif locality == 3:
        num = 9 * n**3 - 18 * n * n + 15 * n + 2
    else:
        raise ValueError(f"closed form exists only for locality 2 or 3, got {locality}")
    if n < locality:
        raise ValueError(f"need n >= locality; got n={n}, locality={locality}")
    quotient, remainder = divmod(num, 2)
    assert remainder == 0
    return quotient


def upper_bound_in_regime(n: int, locality: int) -> bool:
    """Whether the (L+1)*C(n,L)*(d^2-1)^L bound is proved, i.e. L <= n/2."""
    return 2 * locality <= n


def param_count_upper(n: int, locality: int, d: int = 2) -> int:
    """(L+1) * C(n, L) * (d^2-1)^L; an upper bound on param_count when L <= n/2.

    Outside that regime the value is still returned; callers should consult
    upper_bound_in_regime and label it unverified.
    """
    _validate(n, locality, d)
    return (locality + 1) * math.comb(n, locality) * (d * d - 1) ** locality


def gv_exists(n: int, k: int, t: int) -> bool:
    """Existence condition for an ((n, k)) code correcting t errors.

    True iff param_count(n, 2t, 2) < (2^(2n) - 1)/(2^(n+k) - 1), compared by
    exact cross-multiplication (doubles would lose the strict inequality).
    """
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, n]; got {k} for n={n}")
    if not 0 <= 2 * t <= n:
        raise ValueError(f"need 0 <= 2t <= n; got t={t} for n={n}")
    lhs = param_count(n, 2 * t, 2)
    return lhs * ((1 << (n + k)) - 1) < (1 << (2 * n)) - 1


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0 by continuity."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must be in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gv_rate(tau: float) -> float:
    """Asymptotic achievable rate k/n at error ratio tau = t/n.

    1 - H(2 tau) - 2 tau log2(3), defined for 0 <= 2 tau <= 1.
    """
    if not 0.0 <= 2.0 * tau <= 1.0:
        raise ValueError(f"need 0 <= 2*tau <= 1, got tau={tau}")
    return 1.0 - binary_entropy(2.0 * tau) - 2.0 * tau * math.log2(3.0)


def gv_threshold_k0() -> float:
    """Root of gv_rate in (0, 0.25): the largest asymptotic t/n at k = 0.

    gv_rate is strictly decreasing on the bracket, so bisection to 1e-8.
    """
    lo, hi = 1e-6, 0.25
    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        if gv_rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def coeff_ratio(h: CoefficientVector) -> float:
    """l2/l1 ratio over all entries, identity included."""
    l1 = h.l1()
    if l1 == 0.0:
        raise ValueError("coefficient vector is zero")
    return h.l2() / l1


def _non_identity_sums(h: CoefficientVector) -> tuple[float, float]:
    items = h.non_identity_items()
    a = float(sum(abs(c) for _, c in items))
    b = float(sum(c * c for _, c in items))
    return a, b


def bound_intrinsic(h: CoefficientVector) -> float:
    """1/sqrt(1 + A^2/B) with A, B the non-identity l1 and squared-l2 sums.

    This equals the minimum over shifts E of coeff_ratio(shift(h, E)), so it
    depends only on the non-identity entries.
    """
    a, b = _non_identity_sums(h)
    if a == 0.0:
        raise ValueError("trivial coefficient vector: a multiple of the identity")
    return 1.0 / math.sqrt(1.0 + a * a / b)


def bound_generic(n: int, locality: int, d: int = 2) -> float:
    """Dimension-counting bound 1/sqrt(param_count(n, L, d))."""
    return 1.0 / math.sqrt(param_count(n, locality, d))


def bound_coarse(n: int, locality: int, d: int = 2) -> float:
    """Closed-form bound 1/sqrt((L+1) C(n,L) (d^2-1)^L)."""
    return 1.0 / math.sqrt(param_count_upper(n, locality, d))


def minimizing_shift(h: CoefficientVector) -> tuple[float, float]:
    """Both shifts E at which coeff_ratio(shift(h, E)) attains bound_intrinsic.

    Writing s = |h_I - E|, the ratio squared is (B + s^2)/(A + s)^2 whose
    derivative changes sign once, at s = B/A; hence E = h_I -/+ B/A.
    """
    a, b = _non_identity_sums(h)
    if a == 0.0:
        raise ValueError("trivial coefficient vector: a multiple of the identity")
    s = b / a
    h_i = h.identity_coeff
    return (h_i - s, h_i + s)
