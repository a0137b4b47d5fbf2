"""The two exponent bounds on |A||B|^{1/n} and the staircase certificate.

Everything is evaluated in double precision. A certified point must clear the
threshold by :data:`MARGIN`; coverage of the parameter rectangle by monotone
quadrants is decided exactly on rational corner coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .entropy import (
    binary_entropy,
    bisect,
    entropy_inv_decreasing,
    entropy_inv_increasing,
)

THRESHOLD = 1.1922
SECOND_THRESHOLD = 0.5961
MARGIN = 1e-6
F_EXPONENT_CAP = 1.3685
CLAIMED_BASE = 2.284
FIRST = "first"
SECOND = "second"


class DomainError(ValueError):
    """Parameters outside the region where a bound formula is defined."""


def to_fraction(x) -> Fraction:
    """Exact rational for a decimal coordinate; floats go through their repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def first_bound(u: float, t: float) -> float:
    """h(u) + t u."""
    return binary_entropy(u) + t * u


def first_bound_peak(t: float) -> float:
    """Maximiser (1 + 2^-t)^-1 of u -> h(u) + t u."""
    return 1.0 / (1.0 + 2.0 ** (-t))


def f_exponent_gap(s: float) -> float:
    """1 - 2s - h_i^{-1}(s); strictly decreasing, non-negative at admissible s."""
    return 1.0 - 2.0 * s - entropy_inv_increasing(s)


def solve_f_exponent() -> tuple[float, float]:
    """Root s of the exponent gap and the base 2^s bounding f(n)^{1/n}."""
    s = bisect(f_exponent_gap, 0.0, 0.5)
    base = 2.0**s
    if base > F_EXPONENT_CAP + 1e-4:
        raise RuntimeError(f"f(n) base {base} exceeds {F_EXPONENT_CAP}")
    return s, base


def first_bound_maximum(t_max: float = 0.4525) -> tuple[float, float, float]:
    """(u*, t*, value) maximising h(u) + t u over [0, 1] x [0, t_max].

    The bound increases in t and is unimodal in u, so the maximum sits at
    t = t_max on the peak curve.
    """
    u = first_bound_peak(t_max)
    return u, t_max, first_bound(u, t_max)


def m_s_lower(u: float, t: float) -> float:
    """Lower bound h_i^{-1}(t) u on the symmetric intersection size."""
    return entropy_inv_increasing(t) * u


def m_a_lower(u: float, t: float, c: float) -> float:
    """Lower bound c - h_d^{-1}(t u / (u - c)) (u - c) on the asymmetric size."""
    if not c < u <= 2 * c:
        raise DomainError(f"need c < u <= 2c, got u={u}, c={c}")
    arg = t * u / (u - c)
    if arg > 1.0:
        raise DomainError(f"entropy inverse argument {arg} > 1")
    return c - entropy_inv_decreasing(arg) * (u - c)


def a_value(u: float, t: float, m_s: float) -> float:
    """h_d^{-1}(2tu / (u - m_S)) (u - m_S) / 2, the surrogate for c - m_A."""
    width = u - m_s
    if width <= 0:
        if width == 0:
            return 0.0
        raise DomainError("m_S exceeds u")
    arg = 2 * t * u / width
    if arg > 1.0:
        raise DomainError(f"entropy inverse argument {arg} > 1")
    return entropy_inv_decreasing(arg) * width / 2


def second_bound_argument(t: float) -> float:
    return 2 * t / (1 - entropy_inv_increasing(t))


def second_bound(u: float, t: float) -> float:
    """Second exponent after minimising m_A and m_S; doubled it bounds the size.

    With x = h_i^{-1}(t) and A = h_d^{-1}(2t/(1-x)) (u/2)(1-x) this is
    h(A) - A + (u/2)(1 - x - 2t).
    """
    x = entropy_inv_increasing(t)
    arg = 2 * t / (1 - x)
    if arg > 1.0:
        raise DomainError(f"second bound undefined at t={t}: 2t/(1-h_i^-1(t)) = {arg} > 1")
    a = entropy_inv_decreasing(arg) * (u / 2) * (1 - x)
    return binary_entropy(a) - a + (u / 2) * (1 - x - 2 * t)


def second_bound_general(u: float, t: float, c: float, m_a: float) -> float:
    """h(c - m_A) + m_A - t u - m_S with m_S = 2c - u, before any reduction."""
    return binary_entropy(c - m_a) + m_a - t * u - (2 * c - u)


@dataclass(frozen=True)
class Rectangle:
    u_lo: Fraction
    u_hi: Fraction
    t_lo: Fraction
    t_hi: Fraction

    def __post_init__(self) -> None:
        for name in ("u_lo", "u_hi", "t_lo", "t_hi"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if not (0 <= self.u_lo < self.u_hi <= 1 and 0 <= self.t_lo < self.t_hi <= 1):
            raise ValueError(f"malformed rectangle {self}")

    def contains(self, u: Fraction, t: Fraction) -> bool:
        return self.u_lo <= u <= self.u_hi and self.t_lo <= t <= self.t_hi

    def as_dict(self) -> dict[str, float]:
        return {k: float(getattr(self, k)) for k in ("u_lo", "u_hi", "t_lo", "t_hi")}


DEFAULT_RECTANGLE = Rectangle("0.44", "0.71", "0.36", "0.4525")

_STAIRCASE_COORDS = [
    ("0.5893", "0.36"), ("0.5893", "0.364"), ("0.599", "0.364"), ("0.599", "0.367"),
    ("0.607", "0.367"), ("0.607", "0.37"), ("0.615", "0.37"), ("0.615", "0.374"),
    ("0.627", "0.374"), ("0.627", "0.38"), ("0.645", "0.38"), ("0.645", "0.392"),
    ("0.688", "0.392"), ("0.688", "0.43"), ("0.71", "0.43"), ("0.71", "0.4525"),
]  # fmt: skip

# Alternating, starting with the second bound.
STAIRCASE_16: list[tuple[str, str, str]] = [
    (u, t, SECOND if i % 2 == 0 else FIRST) for i, (u, t) in enumerate(_STAIRCASE_COORDS)
]

DATASETS = {"paper-staircase-16": STAIRCASE_16}


@dataclass(frozen=True)
class BoundPoint:
    u: Fraction
    t: Fraction
    which: str
    first: float
    second: float | None

    @classmethod
    def evaluate(cls, u, t, which: str) -> BoundPoint:
        if which not in (FIRST, SECOND):
            raise ValueError(f"unknown bound kind {which!r}")
        uf, tf = to_fraction(u), to_fraction(t)
        try:
            second = second_bound(float(uf), float(tf))
        except DomainError:
            second = None
        return cls(uf, tf, which, first_bound(float(uf), float(tf)), second)

    @property
    def value(self) -> float:
        """The certified quantity: the first bound, or twice the second."""
        if self.which == FIRST:
            return self.first
        return math.inf if self.second is None else 2 * self.second

    def passes(self, threshold: float, margin: float = MARGIN) -> bool:
        return self.value <= threshold - margin

    def covers(self, u: Fraction, t: Fraction) -> bool:
        """Whether the monotone quadrant anchored here contains (u, t)."""
        if self.which == SECOND:
            return u <= self.u and t >= self.t
        return u >= self.u and t <= self.t

    def as_dict(self, threshold: float) -> dict:
        return {
            "u": float(self.u),
            "t": float(self.t),
            "which": self.which,
            "first": self.first,
            "second": self.second,
            "value": self.value,
            "slack": threshold - self.value,
            "passes": self.passes(threshold),
        }


@dataclass
class NarrowingReport:
    rectangle: Rectangle
    threshold: float
    checks: dict[str, float]
    t_cap: float
    ok: bool

    @property
    def max_value(self) -> float:
        return max(self.checks.values())


def narrow_rectangle(
    threshold: float = THRESHOLD, rectangle: Rectangle = DEFAULT_RECTANGLE
) -> NarrowingReport:
    """Show the first bound stays below ``threshold`` outside the rectangle.

    Uses monotonicity in t and unimodality in u: below t_lo the peak value at
    t_lo dominates; above, the values at the two u-edges on the t cap do. The
    cap is max(t_hi, s) where s is the exact root of the exponent gap, so the
    sliver between a rounded t_hi and s is handled too.
    """
    s, _ = solve_f_exponent()
    t_lo, t_hi = float(rectangle.t_lo), float(rectangle.t_hi)
    u_lo, u_hi = float(rectangle.u_lo), float(rectangle.u_hi)
    t_cap = max(t_hi, s)
    peak_cap = first_bound_peak(t_cap)
    checks = {
        "peak_at_t_lo": first_bound(first_bound_peak(t_lo), t_lo),
        "u_lo_at_t_cap": first_bound(u_lo, t_cap),
        "u_hi_at_t_cap": first_bound(u_hi, t_cap),
    }
    ok = all(v <= threshold for v in checks.values()) and u_lo <= peak_cap <= u_hi
    return NarrowingReport(rectangle, threshold, checks, t_cap, ok)


@dataclass
class CertificationReport:
    rectangle: Rectangle
    threshold: float
    points: list[BoundPoint]
    coverage_ok: bool
    gap: tuple[Fraction, Fraction, Fraction, Fraction] | None
    applicability: list[str] = field(default_factory=list)
    narrowing: NarrowingReport | None = None
    margin: float = MARGIN

    @property
    def points_ok(self) -> bool:
        return all(p.passes(self.threshold, self.margin) for p in self.points)

    @property
    def verdict(self) -> bool:
        return self.coverage_ok and self.points_ok and not self.applicability and (
            self.narrowing is None or self.narrowing.ok
        )

    @property
    def certified_exponent(self) -> float:
        """Largest evaluated value; the certificate proves the bound with it."""
        values = [p.value for p in self.points]
        if self.narrowing is not None:
            values.append(self.narrowing.max_value)
        return max(values)

    @property
    def derived_bound(self) -> float:
        return 2.0**self.certified_exponent

    @property
    def threshold_bound(self) -> float:
        return 2.0**self.threshold

    def recheck(self) -> bool:
        """Recompute the verdict from the recorded points and coverage only."""
        return certify_staircase(
            [(p.u, p.t, p.which) for p in self.points],
            self.rectangle,
            self.threshold,
            narrowing=self.narrowing,
            margin=self.margin,
        ).verdict == self.verdict

    def as_dict(self) -> dict:
        gap = None if self.gap is None else [str(x) for x in self.gap]
        return {
            "rectangle": self.rectangle.as_dict(),
            "threshold": self.threshold,
            "margin": self.margin,
            "points": [p.as_dict(self.threshold) for p in self.points],
            "coverage_ok": self.coverage_ok,
            "uncovered_cell": gap,
            "applicability_errors": self.applicability,
            "narrowing": None
            if self.narrowing is None
            else {"ok": self.narrowing.ok, "t_cap": self.narrowing.t_cap, **self.narrowing.checks},
            "verdict": self.verdict,
            "certified_exponent": self.certified_exponent,
            "derived_bound": self.derived_bound,
            "threshold_bound": self.threshold_bound,
        }


def _coverage_gap(points: list[BoundPoint], rect: Rectangle):
    """First elementary cell of the arrangement not inside any quadrant.

    Quadrants are closed, so covering the (open) cells of the grid spanned by
    every anchor coordinate covers the closed rectangle.
    """
    us = sorted({rect.u_lo, rect.u_hi} | {p.u for p in points if rect.u_lo < p.u < rect.u_hi})
    ts = sorted({rect.t_lo, rect.t_hi} | {p.t for p in points if rect.t_lo < p.t < rect.t_hi})
    for u0, u1 in zip(us, us[1:]):
        um = (u0 + u1) / 2
        for t0, t1 in zip(ts, ts[1:]):
            tm = (t0 + t1) / 2
            if not any(p.covers(um, tm) for p in points):
                return (u0, u1, t0, t1)
    return None


def certify_staircase(
    points,
    rectangle: Rectangle = DEFAULT_RECTANGLE,
    threshold: float = THRESHOLD,
    narrowing: NarrowingReport | None = None,
    margin: float = MARGIN,
) -> CertificationReport:
    """Check every anchored point and that the quadrants tile the rectangle.

    ``points`` holds (u, t, which) triples. A second-bound point covers
    {u <= u_i, t >= t_i} (that bound grows with u and shrinks with t); a
    first-bound point covers {u >= u_i, t <= t_i}, valid only right of the
    peak curve.
    """
    evaluated = [BoundPoint.evaluate(u, t, w) for u, t, w in points]
    problems = []
    for p in evaluated:
        if not rectangle.contains(p.u, p.t):
            raise ValueError(f"point ({p.u}, {p.t}) lies outside the rectangle")
        if p.which == FIRST and float(p.u) < first_bound_peak(float(p.t)):
            problems.append(f"first-bound point ({p.u}, {p.t}) is left of the peak")
        if p.which == SECOND:
            try:
                second_bound(float(p.u), float(rectangle.t_hi))
            except DomainError as exc:
                problems.append(str(exc))
    gap = _coverage_gap(evaluated, rectangle)
    return CertificationReport(
        rectangle, threshold, evaluated, gap is None, gap, problems, narrowing, margin
    )


def certify_default() -> CertificationReport:
    """The built-in 16-point staircase with narrowing, at the default threshold."""
    return certify_staircase(
        STAIRCASE_16, DEFAULT_RECTANGLE, THRESHOLD, narrowing=narrow_rectangle(THRESHOLD)
    )
