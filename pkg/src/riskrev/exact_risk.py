"""Closed-form risks of the projection estimator for the running example.

In the model Y = theta* + sigma * Z with Z standard normal in the plane, the
estimator is the Euclidean projection of Y onto a constraint set.  For the
segment conv{v1, v2} and the triangle conv{v1, v2, v3} the risk
E||thetahat - theta*||^2 admits exact expressions in Phi and Owen's T; this
module evaluates them in numerically stable form, exposes the triangle risk
as a sum of per-region contributions, and provides the two noise-limit
coefficients of the segment/triangle risk difference.
"""

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .gaussfn import (
    owens_t,
    std_normal_cdf,
    std_normal_cdf_minus_half,
    std_normal_pdf,
)
from .geometry import ExampleGeometry, RegionLabel

# |total - sum of region contributions| must stay below this
BREAKDOWN_TOL = 1e-12


@dataclass(frozen=True)
class RiskQuery:
    """One risk evaluation point: true parameter and noise level."""

    theta_star: tuple[float, ...]
    sigma: float

    def __post_init__(self):
        theta = tuple(float(t) for t in np.atleast_1d(np.asarray(self.theta_star, dtype=float)))
        if not all(math.isfinite(t) for t in theta):
            raise ValueError("theta_star must be finite")
        object.__setattr__(self, "theta_star", theta)
        sigma = float(self.sigma)
        if not (math.isfinite(sigma) and sigma > 0.0):
            raise ValueError(f"sigma must be a positive finite real, got {self.sigma!r}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def theta(self) -> np.ndarray:
        return np.array(self.theta_star)


@dataclass(frozen=True)
class RegionRiskBreakdown:
    """Triangle risk split over the seven projector regions.

    ``total`` is the full risk; ``regions`` maps each :class:`RegionLabel`
    to its contribution E[||thetahat - theta*||^2 ; Y in region].  The
    contributions are individually nonnegative (up to roundoff) and sum to
    the total within ``BREAKDOWN_TOL``.
    """

    regions: Mapping[RegionLabel, float]
    total: float

    def __post_init__(self):
        regions = dict(self.regions)
        if set(regions) != set(RegionLabel):
            raise ValueError("breakdown must cover all seven regions")
        for label, value in regions.items():
            if not math.isfinite(value) or value < -BREAKDOWN_TOL:
                raise ValueError(f"region {label.value} contribution {value!r} is invalid")
        if abs(sum(regions.values()) - self.total) > BREAKDOWN_TOL * max(1.0, abs(self.total)):
            raise ValueError("total does not match the sum of region contributions")
        object.__setattr__(self, "regions", regions)

    def __getitem__(self, label: RegionLabel) -> float:
        return self.regions[label]


def _int_z2_phi(a: float, b: float) -> float:
    """integral_a^b z^2 phi(z) dz = Phi(b) - Phi(a) - b phi(b) + a phi(a).

    The CDF difference goes through erf so the case of small |a|, |b| keeps
    absolute accuracy near machine precision.
    """
    return (
        std_normal_cdf_minus_half(b)
        - std_normal_cdf_minus_half(a)
        - b * std_normal_pdf(b)
        + a * std_normal_pdf(a)
    )


def risk_segment_exact(g: ExampleGeometry, t_star: float, sigma: float) -> float:
    """Exact risk of projection onto the segment conv{v1, v2}.

    The true parameter is theta* = t_star * v2 with t_star in [0, 1].  With
    a = -sqrt(alpha_c) t*/sigma and b = sqrt(alpha_c)(1 - t*)/sigma the risk is

        alpha_c [ t*^2 Phi(a) + (sigma^2/alpha_c) integral_a^b z^2 phi(z) dz
                  + (1 - t*)^2 Phi(-b) ].
    """
    t_star = float(t_star)
    if not (math.isfinite(t_star) and 0.0 <= t_star <= 1.0):
        raise ValueError(f"t_star must lie in [0, 1], got {t_star!r}")
    sigma = float(sigma)
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be a positive finite real, got {sigma!r}")
    alpha = g.alpha_c
    root = math.sqrt(alpha)
    a = -root * t_star / sigma
    b = root * (1.0 - t_star) / sigma
    return alpha * (
        t_star * t_star * std_normal_cdf(a)
        + (sigma * sigma / alpha) * _int_z2_phi(a, b)
        + (1.0 - t_star) ** 2 * std_normal_cdf(-b)
    )


def risk_triangle_exact(g: ExampleGeometry, sigma: float) -> RegionRiskBreakdown:
    """Exact risk of projection onto the triangle conv{v1, v2, v3} at theta* = v1.

    Each of the seven projector regions contributes in closed form.  Writing
    x = 1/(c sigma), s = sqrt(alpha_c)/sigma, and u = 1/sigma:

        Interior: sigma^2 [ u phi(u) (1/2 - Phi(x)) - 2 T(u, 1/c)
                            + arctan(1/c)/pi ]
        A1:       0
        A2:       alpha_c [ Phi(-s) Phi(-x) + T(x, c sqrt(alpha_c))
                            + T(s, 1/(c sqrt(alpha_c))) - T(x, c) ]
        A3:       Phi(-u) / 2
        A12:      (sigma^2/2) integral_0^s z^2 phi(z) dz
        A13:      (sigma^2/2) integral_0^u z^2 phi(z) dz
        A23:      Phi(-u) [ (Phi(x) - 1/2) + sigma^2 integral_0^x z^2 phi(z) dz ]
    """
    sigma = float(sigma)
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be a positive finite real, got {sigma!r}")
    c = g.c
    alpha = g.alpha_c
    root = math.sqrt(alpha)
    u = 1.0 / sigma
    x = 1.0 / (c * sigma)
    s = root / sigma
    sig2 = sigma * sigma

    interior = sig2 * (
        u * std_normal_pdf(u) * (-std_normal_cdf_minus_half(x))
        - 2.0 * owens_t(u, 1.0 / c)
        + math.atan(1.0 / c) / math.pi
    )
    # the bracket above cancels to O(sigma^-4) as sigma grows, so the sigma^2
    # prefactor amplifies machine roundoff; clamp negatives inside that
    # roundoff envelope to zero instead of reporting them as contributions
    roundoff = 32.0 * np.finfo(float).eps * max(1.0, sig2)
    if -roundoff <= interior < 0.0:
        interior = 0.0
    a2 = alpha * (
        std_normal_cdf(-s) * std_normal_cdf(-x)
        + owens_t(x, c * root)
        + owens_t(s, 1.0 / (c * root))
        - owens_t(x, c)
    )
    a3 = 0.5 * std_normal_cdf(-u)
    a12 = 0.5 * sig2 * _int_z2_phi(0.0, s)
    a13 = 0.5 * sig2 * _int_z2_phi(0.0, u)
    a23 = std_normal_cdf(-u) * (
        std_normal_cdf_minus_half(x) + sig2 * _int_z2_phi(0.0, x)
    )

    regions = {
        RegionLabel.INTERIOR: interior,
        RegionLabel.A1: 0.0,
        RegionLabel.A2: a2,
        RegionLabel.A3: a3,
        RegionLabel.A12: a12,
        RegionLabel.A13: a13,
        RegionLabel.A23: a23,
    }
    return RegionRiskBreakdown(regions=regions, total=sum(regions.values()))


def risk_difference(g: ExampleGeometry, sigma: float) -> float:
    """Segment risk minus triangle risk at theta* = v1.

    Negative means the smaller set wins (expected for small noise);
    positive is a risk reversal.
    """
    return risk_segment_exact(g, 0.0, sigma) - risk_triangle_exact(g, sigma).total


def small_noise_diff_coeff(c: float) -> float:
    """sigma^2 coefficient of the risk difference as sigma -> 0: -arctan(1/c)/pi."""
    c = float(c)
    if not (math.isfinite(c) and c > 0.0):
        raise ValueError(f"c must be a positive finite real, got {c!r}")
    return -math.atan(1.0 / c) / math.pi


def large_noise_limit_diff(c: float) -> float:
    """Limit of the risk difference as sigma -> infinity.

    g(c) = 1/(4 c^2) - ((1 + c^2)/(2 pi c^2)) arctan(1/c); positive exactly
    when 0 < c < 1 (reversal in the noise limit), zero at c = 1.
    """
    c = float(c)
    if not (math.isfinite(c) and c > 0.0):
        raise ValueError(f"c must be a positive finite real, got {c!r}")
    c2 = c * c
    return 0.25 / c2 - (1.0 + c2) / (2.0 * math.pi * c2) * math.atan(1.0 / c)
