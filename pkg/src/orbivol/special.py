"""Log-gamma, incomplete sine-power integrals and the ball-radius
root equation.

The sine-power integral is the numerically delicate piece: for small
upper limits the two-term reduction loses roughly a digit per step when
run upward in the exponent, so it is run downward instead (the start
error contracts by sin^2 per step), on variables scaled by sin^{k+1} so
the log of the result is available even where the value itself is far
below double range.  Near pi/2 the complementary cosine-power form is
used, whose upward reduction has no cancellation.
"""

from __future__ import annotations

import math

from .quaternion import DomainError

PI = math.pi
_RENORM = 1e250
_LN_RENORM = math.log(_RENORM)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_factorial(k: int) -> float:
    if k < 0:
        raise DomainError(f"factorial of negative {k}")
    return math.lgamma(k + 1.0)


def sin_power_half_period(m: int) -> float:
    """Integral of sin^m over [0, pi/2] (closed form via Gamma)."""
    return 0.5 * math.sqrt(PI) * math.exp(log_gamma((m + 1) / 2.0)
                                          - log_gamma(m / 2.0 + 1.0))


def _cos_power_integral(m: int, y: float) -> float:
    """Integral of cos^m over [0, y], y in [0, pi/2].

    Upward reduction J_k = (sin y cos^{k-1} y + (k-1) J_{k-2}) / k;
    both terms are nonnegative, so no cancellation.
    """
    s, c = math.sin(y), math.cos(y)
    prev = [y, s]  # J_0, J_1
    if m <= 1:
        return prev[m]
    cpow = c
    for k in range(2, m + 1):
        prev[k % 2] = (s * cpow + (k - 1) * prev[k % 2]) / k
        cpow *= c
    return prev[m % 2]


def _ln_sin_power_small(m: int, x: float) -> float:
    """ln of the [0, x] sine-power integral for sin^2 x <= 1/2.

    Downward reduction on T_k = I_k / sin^{k+1} x, which stays within
    float range after occasional renormalization:
        T_{k-2} = (T_k sin^2 x + cos x / k) * k / (k - 1).
    Started from zero at a padded exponent; the start error contracts by
    sin^2 x per step.
    """
    s, c = math.sin(x), math.cos(x)
    s2 = s * s
    pad = 2 * (int(42.0 / -math.log(s2)) + 2)
    value, offset = 0.0, 0.0
    for k in range(m + pad, m, -2):
        value = (value * s2 + c / k) * k / (k - 1.0)
        if value > _RENORM:
            value /= _RENORM
            offset += _LN_RENORM
    return math.log(value) + offset + (m + 1) * math.log(s)


def ln_sin_power_integral(m: int, x: float) -> float:
    """ln of the integral of sin^m over [0, x], x in [0, pi].

    Safe for exponents far beyond where the value underflows a double;
    relative accuracy of the value ~1e-13.
    """
    if m < 0:
        raise DomainError(f"exponent must be >= 0, got {m}")
    if x < 0.0 or x > PI + 1e-12:
        raise DomainError(f"upper limit must lie in [0, pi], got {x}")
    x = min(x, PI)
    if x == 0.0:
        return float("-inf")
    if m == 0:
        return math.log(x)
    if x > PI / 2.0:
        comp = sin_power_integral(m, PI - x)
        return math.log(2.0 * sin_power_half_period(m) - comp)
    if m == 1:
        # 1 - cos x, stably
        return math.log(2.0) + 2.0 * math.log(math.sin(x / 2.0))
    s = math.sin(x)
    if s * s > 0.5:
        value = sin_power_half_period(m) - _cos_power_integral(m, PI / 2.0 - x)
        return math.log(value)
    return _ln_sin_power_small(m, x)


def sin_power_integral(m: int, x: float) -> float:
    """Integral of sin^m over [0, x] for x in [0, pi].

    Returns 0.0 when the value underflows double precision; callers that
    need such extremes use ln_sin_power_integral.
    """
    ln = ln_sin_power_integral(m, x)
    return math.exp(ln) if ln > -745.0 else 0.0


def sin_power_integral_series(m: int, x: float, terms: int = 14) -> float:
    """Small-x Maclaurin evaluation, kept as an independent cross-check."""
    coeffs = [1.0] + [0.0] * (terms - 1)
    sin_series = [(-1.0) ** k / math.factorial(2 * k + 1) for k in range(terms)]
    for _ in range(m):
        new = [0.0] * terms
        for a in range(terms):
            if coeffs[a] == 0.0:
                continue
            for b in range(terms - a):
                new[a + b] += coeffs[a] * sin_series[b]
        coeffs = new
    total = 0.0
    for k in reversed(range(terms)):
        power = m + 2 * k + 1
        total += coeffs[k] * x ** power / power
    return total


# -- ball-radius equation ------------------------------------------------

def wang_F(t: float, c1: float, c2: float) -> float:
    """The printed radius function exp(c1 t) - 2 sin(c2 t) - c1 t/(exp(c1 t)-1).

    Continuously extended by F(0) = 0 (the last term tends to 1).
    """
    if t == 0.0:
        return 0.0
    u = c1 * t
    last = u / math.expm1(u) if abs(u) > 1e-14 else 1.0 - u / 2.0
    return math.exp(u) - 2.0 * math.sin(c2 * t) - last


class RootNotFoundError(ArithmeticError):
    """No sign change located in the scanned interval."""


def wang_root(c1: float, c2: float, t_max: float = 2.0,
              scan_step: float = 1e-4, eps: float = 1e-6,
              tol: float = 1e-12) -> float:
    """Least positive zero of the printed radius function.

    Sign-change scan from eps with the given step, then bisection.
    """
    if c1 <= 0.0 or c2 < 0.0:
        # c2 = 0 is admitted so the degenerate no-root case surfaces as
        # RootNotFoundError rather than a domain error
        raise DomainError("c1 must be positive and c2 nonnegative")
    t_prev, f_prev = eps, wang_F(eps, c1, c2)
    if f_prev == 0.0:
        return t_prev
    t = t_prev
    found = None
    while t < t_max:
        t = min(t + scan_step, t_max)
        f = wang_F(t, c1, c2)
        if f == 0.0:
            return t
        if f_prev * f < 0.0:
            found = (t_prev, t)
            break
        t_prev, f_prev = t, f
    if found is None:
        raise RootNotFoundError(
            f"no sign change of the radius function in ({eps}, {t_max}]")
    lo, hi = found
    flo = wang_F(lo, c1, c2)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = wang_F(mid, c1, c2)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


# the radius the source literature attributes to this equation for
# (c1, c2) = (1, sqrt 2); the printed function does not reproduce it,
# which the root report surfaces rather than hides
CLAIMED_SP_RADIUS = 0.228
