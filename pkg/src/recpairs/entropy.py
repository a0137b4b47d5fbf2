"""Binary entropy, its two inverses, and the binomial tail sandwich."""

from __future__ import annotations

import math
from fractions import Fraction

BISECTION_ITERATIONS = 200
BISECTION_WIDTH = 1e-14


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def bisect(f, lo: float, hi: float) -> float:
    """Root of a function that is positive at ``lo`` and non-positive at ``hi``.

    Fixed schedule: at most 200 halvings, stopping once the bracket is no wider
    than 1e-14. Works for decreasing and increasing ``f`` alike as long as the
    sign convention at the endpoints holds.
    """
    f_lo_positive = f(lo) > 0
    for _ in range(BISECTION_ITERATIONS):
        if hi - lo <= BISECTION_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == f_lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _check_unit(y: float) -> None:
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"entropy inverse argument {y} outside [0, 1]")


def entropy_inv_increasing(y: float) -> float:
    """The x in [0, 1/2] with h(x) = y."""
    _check_unit(y)
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return bisect(lambda x: y - binary_entropy(x), 0.0, 0.5)


def entropy_inv_decreasing(y: float) -> float:
    """The x in [1/2, 1] with h(x) = y, i.e. 1 - entropy_inv_increasing(y)."""
    return 1.0 - entropy_inv_increasing(y)


def _floor_fraction(k, n: int) -> int:
    frac = Fraction(k).limit_denominator(10**9) if isinstance(k, float) else Fraction(k)
    return math.floor(frac * n)


def binomial_tail(n: int, k) -> int:
    """Exact sum of C(n, i) for i = 0..floor(k n)."""
    return sum(math.comb(n, i) for i in range(_floor_fraction(k, n) + 1))


def effective_fraction(n: int, k) -> Fraction:
    """The lattice point floor(k n)/n at which the tail sum is actually taken."""
    return Fraction(_floor_fraction(k, n), n)


def binomial_tail_check(n: int, k) -> bool:
    """Check 2^{h(k)n}/sqrt(8nk(1-k)) <= sum_{i<=kn} C(n,i) <= 2^{h(k)n}.

    The sum runs to an integer index, so ``k`` is snapped to floor(k n)/n
    before evaluating the entropy side; for k n integral nothing changes.
    The middle term is an exact integer and the comparison happens in log2
    space. Requires 0 < k <= 1/2 and k n >= 1.
    """
    if not 0 < float(k) <= 0.5:
        raise ValueError("binomial tail sandwich needs 0 < k <= 1/2")
    k_eff = effective_fraction(n, k)
    if k_eff == 0:
        raise ValueError("k n < 1 leaves the lower side undefined")
    kf = float(k_eff)
    log_sum = math.log2(binomial_tail(n, k_eff))
    upper = binary_entropy(kf) * n
    lower = upper - 0.5 * math.log2(8 * n * kf * (1 - kf))
    slack = 1e-12 * max(1.0, upper)
    return lower <= log_sum + slack and log_sum <= upper + slack
