"""Scalar Gaussian special functions.

Standard normal density and distribution, Owen's T-function, and a set of
closed-form Gaussian integrals expressed through it.  These are the scalar
primitives behind the exact risk formulas.  Every function is pure, validates
its input, and is safe to call concurrently.

The module-level tolerances are the ones the test suite holds these functions
to: ``IDENTITY_TOL`` for algebraic identities and ``QUADRATURE_TOL`` for
agreement with adaptive quadrature of the defining integrals.
"""

import math

from scipy import special

IDENTITY_TOL = 1e-12
QUADRATURE_TOL = 1e-10

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_2 = math.sqrt(2.0)


def _require_finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def std_normal_pdf(x: float) -> float:
    """Standard normal density phi(x)."""
    x = _require_finite("x", x)
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    """Standard normal distribution function Phi(x).

    Evaluated through the complementary error function so both tails keep
    full relative accuracy.
    """
    x = _require_finite("x", x)
    return float(special.ndtr(x))


def std_normal_cdf_minus_half(x: float) -> float:
    """Phi(x) - 1/2 without cancellation for small ``x``."""
    x = _require_finite("x", x)
    return 0.5 * float(special.erf(x / _SQRT_2))


def owens_t(h: float, a: float) -> float:
    """Owen's T-function T(h, a) = phi(h) * integral_0^a phi(h*z)/(1+z^2) dz.

    ``h`` must be finite; ``a`` may be +/-inf, handled exactly through
    T(h, inf) = Phi(-|h|)/2 and oddness in ``a``.  Useful identities, all of
    which hold here to ``IDENTITY_TOL`` or better:

        T(h, 0) = 0,  T(0, a) = arctan(a) / (2 pi),
        T(h, -a) = -T(h, a),  T(-h, a) = T(h, a).
    """
    h = _require_finite("h", h)
    a = float(a)
    if math.isnan(a):
        raise ValueError("a must not be NaN")
    if math.isinf(a):
        return math.copysign(0.5 * float(special.ndtr(-abs(h))), a)
    return float(special.owens_t(h, a))


def int_phi_cdf(m: float, a: float, b: float) -> float:
    """Closed form of integral_0^m phi(z) * Phi(a + b*z) dz.

    With r = a / sqrt(1 + b^2), the value is

        T(m, r/m) + T(r, m/r) - T(m, a/m + b) - T(r, b + (m/a)(1 + b^2))
        + Phi(m) Phi(r) - Phi(r)/2 + T(r, b).

    The a = 0 case is the limit of this expression and is delegated to
    :func:`int_phi_cdf_linear` to avoid the divisions by ``a``.
    """
    m = _require_finite("m", m)
    a = _require_finite("a", a)
    b = _require_finite("b", b)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m!r}")
    if m == 0.0:
        return 0.0
    if a == 0.0:
        return int_phi_cdf_linear(m, b)
    r = a / math.sqrt(1.0 + b * b)
    phi_m = std_normal_cdf(m)
    phi_r = std_normal_cdf(r)
    return (
        owens_t(m, r / m)
        + owens_t(r, m / r)
        - owens_t(m, a / m + b)
        - owens_t(r, b + (m / a) * (1.0 + b * b))
        + phi_m * phi_r
        - 0.5 * phi_r
        + owens_t(r, b)
    )


def int_phi_cdf_linear(m: float, b: float) -> float:
    """Closed form of integral_0^m phi(z) * Phi(b*z) dz.

    Equals Phi(m)/2 - 1/4 - T(m, b) + arctan(b) / (2 pi).
    """
    m = _require_finite("m", m)
    b = _require_finite("b", b)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m!r}")
    return (
        0.5 * std_normal_cdf(m)
        - 0.25
        - owens_t(m, b)
        + math.atan(b) / (2.0 * math.pi)
    )


def int_z_phi_phi(m: float, a: float, b: float) -> float:
    """Closed form of integral_0^m z * phi(z) * phi(a + b*z) dz.

    With r = a / sqrt(1 + b^2) and s = sqrt(1 + b^2):

        phi(r) * [ (phi(b*r) - phi(m*s + b*r)) / s^2
                   + (a*b / s^3) * (Phi(b*r) - Phi(m*s + b*r)) ].
    """
    m = _require_finite("m", m)
    a = _require_finite("a", a)
    b = _require_finite("b", b)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m!r}")
    s2 = 1.0 + b * b
    s = math.sqrt(s2)
    r = a / s
    lo = b * r
    hi = m * s + b * r
    density_part = (std_normal_pdf(lo) - std_normal_pdf(hi)) / s2
    cdf_part = (a * b / (s2 * s)) * (std_normal_cdf(lo) - std_normal_cdf(hi))
    return std_normal_pdf(r) * (density_part + cdf_part)
