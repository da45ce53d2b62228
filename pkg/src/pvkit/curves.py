"""Discount curves and the rates derived from them.

A curve assigns a strictly positive present-value factor ``P(t)`` to every
``t >= 0`` with ``P(0) = 1``.  Three families are provided:

* :class:`FlatCurve` -- constant annual effective rate, ``P(t) = (1+i)**-t``;
* :class:`SpotGridCurve` -- log-linear interpolation through discount-factor
  knots, extrapolated beyond the last knot at that segment's constant
  continuously-compounded forward rate;
* :class:`SvenssonCurve` -- six-parameter parametric yield curve; the yield
  is continuously compounded, ``P(t) = exp(-t * y(t))``.

:class:`ScaledCurve` multiplies another curve by a positive constant.  It
intentionally breaks ``P(0) = 1`` and exists so that pricing functionals
can discount against a positive weight function that is not a discount
curve (see the dual-functional module).

All curves are immutable.  ``horizon`` marks how far out the curve is
meant to be used; construction samples ``P`` densely on [0, horizon] and
rejects parameters that produce non-finite or non-positive values there.
Rates use annual effective compounding throughout: the spot rate is
``y_t = P_t**(-1/t) - 1`` and the forward rate over ``[s, t]`` is
``f = (P_s/P_t)**(1/(t-s)) - 1`` with ``f = 0`` when ``s == t``.  Negative
rates are fine as long as ``1 + i > 0``.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import DomainError

DEFAULT_HORIZON = 100.0
_VALIDATION_SAMPLES = 64


def _validate_sampled(curve) -> None:
    for k in range(_VALIDATION_SAMPLES + 1):
        t = curve.horizon * k / _VALIDATION_SAMPLES
        p = curve.discount(t)
        if not (math.isfinite(p) and p > 0.0):
            raise DomainError(
                f"curve is not positive and bounded on [0, {curve.horizon}]: "
                f"P({t}) = {p!r}"
            )


def _check_horizon(h: float) -> float:
    h = float(h)
    if not (math.isfinite(h) and h > 0.0):
        raise DomainError(f"horizon must be positive and finite, got {h!r}")
    return h


@dataclass(frozen=True)
class FlatCurve:
    """Constant annual effective rate i > -1."""

    rate: float
    horizon: float = DEFAULT_HORIZON

    def __post_init__(self):
        i = float(self.rate)
        if not (math.isfinite(i) and i > -1.0):
            raise DomainError(f"flat rate must be finite and > -1, got {i!r}")
        object.__setattr__(self, "rate", i)
        object.__setattr__(self, "horizon", _check_horizon(self.horizon))
        _validate_sampled(self)

    def discount(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"discount factor needs t >= 0, got {t}")
        return (1.0 + self.rate) ** (-t)

    def knot_times(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class SpotGridCurve:
    """Log-linear interpolation through ``knots = ((0, 1), (t1, P1), ...)``.

    Knot times are strictly increasing starting at 0 with P = 1; discount
    factors must be positive.  Beyond the last knot the curve grows at the
    final segment's constant continuously-compounded forward rate (flat
    at P = 1 if only the origin knot is given).
    """

    knots: tuple[tuple[float, float], ...]
    horizon: float = DEFAULT_HORIZON

    def __post_init__(self):
        ks = tuple((float(t), float(p)) for t, p in self.knots)
        if not ks or ks[0] != (0.0, 1.0):
            raise DomainError("spot grid must start with the knot (0, 1)")
        for (t0, p0), (t1, p1) in zip(ks, ks[1:]):
            if not t1 > t0:
                raise DomainError("spot grid times must be strictly increasing")
        for t, p in ks:
            if not (math.isfinite(t) and math.isfinite(p) and p > 0.0):
                raise DomainError(f"spot grid knot ({t!r}, {p!r}) is invalid")
        object.__setattr__(self, "knots", ks)
        object.__setattr__(self, "horizon", _check_horizon(self.horizon))
        times = tuple(t for t, _ in ks)
        object.__setattr__(self, "_times", times)
        if len(ks) >= 2:
            (ta, pa), (tb, pb) = ks[-2], ks[-1]
            tail = (math.log(pa) - math.log(pb)) / (tb - ta)
        else:
            tail = 0.0
        object.__setattr__(self, "_tail_forward", tail)
        _validate_sampled(self)

    def discount(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"discount factor needs t >= 0, got {t}")
        times = self._times
        last_t, last_p = self.knots[-1]
        if t >= last_t:
            return last_p * math.exp(-self._tail_forward * (t - last_t))
        k = bisect.bisect_right(times, t) - 1
        t0, p0 = self.knots[k]
        if t == t0:
            return p0
        t1, p1 = self.knots[k + 1]
        w = (t - t0) / (t1 - t0)
        return p0 * (p1 / p0) ** w

    def knot_times(self) -> tuple[float, ...]:
        # interpolation is non-smooth at every interior knot and at the
        # extrapolation boundary
        return self._times[1:]


def _hump1(x: float) -> float:
    # (1 - exp(-x)) / x, continuous limit 1 at x = 0
    if x == 0.0:
        return 1.0
    return -math.expm1(-x) / x


def _hump2(x: float) -> float:
    return _hump1(x) - math.exp(-x)


@dataclass(frozen=True)
class SvenssonCurve:
    """Parametric continuously-compounded yield curve.

    ``y(t) = b0 + b1*h1(t/tau1) + b2*h2(t/tau1) + b3*h2(t/tau2)`` with
    ``h1(x) = (1-exp(-x))/x`` and ``h2(x) = h1(x) - exp(-x)``;
    ``P(t) = exp(-t*y(t))``.  Requires tau1, tau2 > 0.
    """

    beta0: float
    beta1: float
    beta2: float
    beta3: float
    tau1: float
    tau2: float
    horizon: float = DEFAULT_HORIZON

    def __post_init__(self):
        for name in ("beta0", "beta1", "beta2", "beta3", "tau1", "tau2"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.tau1 <= 0.0 or self.tau2 <= 0.0:
            raise DomainError("tau1 and tau2 must be positive")
        object.__setattr__(self, "horizon", _check_horizon(self.horizon))
        _validate_sampled(self)

    def yield_at(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"yield needs t >= 0, got {t}")
        x1 = t / self.tau1
        x2 = t / self.tau2
        return (
            self.beta0
            + self.beta1 * _hump1(x1)
            + self.beta2 * _hump2(x1)
            + self.beta3 * _hump2(x2)
        )

    def discount(self, t: float) -> float:
        return math.exp(-t * self.yield_at(t))

    def knot_times(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class ScaledCurve:
    """A positive constant multiple of another curve; P(0) = factor != 1 allowed."""

    base: object
    factor: float

    def __post_init__(self):
        f = float(self.factor)
        if not (math.isfinite(f) and f > 0.0):
            raise DomainError(f"scale factor must be positive, got {f!r}")
        object.__setattr__(self, "factor", f)

    @property
    def horizon(self) -> float:
        return self.base.horizon

    def discount(self, t: float) -> float:
        return self.factor * self.base.discount(t)

    def knot_times(self) -> tuple[float, ...]:
        return self.base.knot_times()


def forward_rate(curve, s: float, t: float) -> float:
    """Annual effective forward rate locked in over [s, t]; 0 when s == t."""
    if not (0.0 <= s <= t):
        raise DomainError(f"forward rate needs 0 <= s <= t, got s={s}, t={t}")
    if s == t:
        return 0.0
    ratio = curve.discount(s) / curve.discount(t)
    return ratio ** (1.0 / (t - s)) - 1.0


def spot_rate(curve, t: float) -> float:
    """Annual effective spot rate for maturity t > 0 (undefined at t = 0)."""
    if not t > 0.0:
        raise DomainError(f"spot rate needs t > 0, got {t}")
    return forward_rate(curve, 0.0, t)


def forward_discount(curve, at: float, maturity: float) -> float:
    """Value at time ``at`` of a unit payment at ``maturity``: P(maturity)/P(at)."""
    return curve.discount(maturity) / curve.discount(at)


def forward_rate_composition_check(curve, r: float, s: float, t: float) -> float:
    """Relative residual of forward-rate composition over [r, r+s, r+s+t].

    Compounding the forward over [r, r+s+t] must equal compounding the two
    adjacent forwards; returns |lhs - rhs| / max(|lhs|, |rhs|) which is
    zero up to roundoff for any valid curve.
    """
    if s < 0.0 or t < 0.0 or r < 0.0:
        raise DomainError("composition check needs r, s, t >= 0")
    lhs = (1.0 + forward_rate(curve, r, r + s + t)) ** (s + t)
    rhs = (1.0 + forward_rate(curve, r, r + s)) ** s * (
        1.0 + forward_rate(curve, r + s, r + s + t)
    ) ** t
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
