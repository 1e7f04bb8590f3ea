"""Seeded, reproducibly parallel Monte Carlo risk estimation.

Sampling is split into fixed-size chunks.  Chunk ``j`` draws from its own
counter-based stream keyed by ``(seed, j)``, normals come from the inverse
CDF of those uniforms (one uniform per variate, so stream consumption never
depends on the values drawn), and per-chunk moments are merged in chunk
order with a pairwise-stable update.  A result is therefore bitwise
identical for a given ``(seed, n, chunk)`` no matter how many worker
threads execute the chunks; the ``RISKREV_THREADS`` environment variable
only caps the worker count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from .exact_risk import RiskQuery
from .geometry import (
    ConvexPolytope,
    ProjectionError,
    project_polygon_2d_batch,
    project_polytope,
)

DEFAULT_SEED = 20240613
DEFAULT_CHUNK = 1 << 18

# asymptotic Kolmogorov critical value at the 0.1% level: P(K > 1.95) ~ 0.001
KS_CRITICAL_0P1 = 1.95

_UINT64_MASK = (1 << 64) - 1
# smallest uniform fed to the inverse CDF; rng.random() can return exactly 0
_U_FLOOR = 2.0 ** -53


@dataclass(frozen=True)
class RiskEstimate:
    """Monte Carlo estimate of E||thetahat - theta*||^2 with its standard error."""

    mean: float
    stderr: float
    n: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not (math.isfinite(self.mean) and self.stderr >= 0.0):
            raise ValueError("mean must be finite and stderr nonnegative")


@dataclass(frozen=True)
class MCConfig:
    """Sample count, stream seed, and chunk size of one Monte Carlo run.

    The chunk size is part of the reproducibility contract: changing it
    changes which substream produces which sample, hence the result.
    """

    n: int
    seed: int = DEFAULT_SEED
    chunk: int = DEFAULT_CHUNK

    def __post_init__(self):
        if int(self.n) < 1 or int(self.chunk) < 1:
            raise ValueError("n and chunk must be at least 1")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "chunk", int(self.chunk))


def _worker_count() -> int:
    raw = os.environ.get("RISKREV_THREADS")
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"RISKREV_THREADS must be a positive integer, got {raw!r}") from None
    if count < 1:
        raise ValueError(f"RISKREV_THREADS must be a positive integer, got {raw!r}")
    return count


def _chunk_normals(seed: int, chunk_index: int, m: int, d: int) -> np.ndarray:
    """(m, d) standard normals from the substream keyed by (seed, chunk_index)."""
    key = np.array([seed & _UINT64_MASK, chunk_index], dtype=np.uint64)
    u = np.random.Generator(np.random.Philox(key=key)).random((m, d))
    np.maximum(u, _U_FLOOR, out=u)
    return special.ndtri(u)


def _merge_moments(parts):
    """Combine per-chunk (count, mean, M2) into overall moments, in the given order."""
    n_acc, mean_acc, m2_acc = 0, 0.0, 0.0
    for count, mean, m2 in parts:
        total = n_acc + count
        delta = mean - mean_acc
        m2_acc += m2 + delta * delta * (n_acc * count / total)
        mean_acc += delta * (count / total)
        n_acc = total
    return n_acc, mean_acc, m2_acc


def _chunked_estimate(d: int, cfg: MCConfig, loss_of_normals) -> RiskEstimate:
    """Deterministic chunked Monte Carlo mean of ``loss_of_normals(chunk_start, Z)``."""
    n, seed, chunk = cfg.n, cfg.seed, cfg.chunk
    n_chunks = (n + chunk - 1) // chunk

    def run(j: int):
        m = min(chunk, n - j * chunk)
        z = _chunk_normals(seed, j, m, d)
        loss = loss_of_normals(j * chunk, z)
        mean = float(loss.mean())
        m2 = float(np.sum((loss - mean) ** 2))
        return m, mean, m2

    workers = _worker_count()
    if workers == 1 or n_chunks == 1:
        parts = [run(j) for j in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(n_chunks)))
    count, mean, m2 = _merge_moments(parts)
    stderr = math.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
    return RiskEstimate(mean=mean, stderr=stderr, n=n, seed=seed)


def _require_member(P: ConvexPolytope, theta: np.ndarray):
    if P.dim == 2:
        nearest = project_polygon_2d_batch(P, theta[None, :])[0]
    else:
        nearest = project_polytope(P, theta)
    if float(np.linalg.norm(nearest - theta)) > 1e-9:
        raise ValueError("theta_star must belong to the polytope")


def mc_risk(P: ConvexPolytope, q: RiskQuery, cfg: MCConfig) -> RiskEstimate:
    """Monte Carlo risk of projecting Y = theta* + sigma Z onto ``P``.

    Planar polytopes use the exact vectorized polygon projection; other
    dimensions project sample by sample with the min-norm-point method, and
    a projection failure aborts with the failing sample index.  Every
    per-sample loss is checked against the squared diameter of ``P``, which
    bounds it because both points lie in the set.
    """
    theta = q.theta
    if theta.shape != (P.dim,):
        raise ValueError(f"theta_star must have dimension {P.dim}")
    _require_member(P, theta)
    sigma = q.sigma
    diam_sq = P.squared_diameter()
    loss_cap = diam_sq * (1.0 + 1e-9) + 1e-12

    def loss_of_normals(start: int, z: np.ndarray) -> np.ndarray:
        y = theta + sigma * z
        if P.dim == 2:
            projected = project_polygon_2d_batch(P, y)
        else:
            projected = np.empty_like(y)
            for i in range(len(y)):
                try:
                    projected[i] = project_polytope(P, y[i])
                except ProjectionError as err:
                    raise ProjectionError(f"sample {start + i}: {err}") from err
        loss = np.einsum("ij,ij->i", projected - theta, projected - theta)
        worst = int(np.argmax(loss))
        if loss[worst] > loss_cap:
            raise ProjectionError(
                f"sample {start + worst}: loss {loss[worst]!r} exceeds "
                f"squared diameter {diam_sq!r}"
            )
        return loss

    return _chunked_estimate(P.dim, cfg, loss_of_normals)


def mc_risk_effective(
    P: ConvexPolytope, theta_star, sigma: float, n_obs: int, cfg: MCConfig
) -> RiskEstimate:
    """Risk at the effective noise level sigma / sqrt(n_obs).

    Averaging n_obs independent observations of the same theta* is
    equivalent to a single observation with this reduced noise level.
    """
    n_obs = int(n_obs)
    if n_obs < 1:
        raise ValueError("n_obs must be at least 1")
    sigma_eff = float(sigma) / math.sqrt(n_obs)
    return mc_risk(P, RiskQuery(theta_star=tuple(np.asarray(theta_star, float)), sigma=sigma_eff), cfg)


def sample_unit_sphere(d: int, n: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """(n, d) directions uniform on the unit sphere (normalized Gaussians).

    The measure-zero zero draw is rejected and resampled from the same
    stream, keeping the output deterministic in ``seed``.
    """
    d = int(d)
    n = int(n)
    if d < 1 or n < 1:
        raise ValueError("d and n must be at least 1")
    key = np.array([int(seed) & _UINT64_MASK, 0], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))

    def draw(count):
        u = rng.random((count, d))
        np.maximum(u, _U_FLOOR, out=u)
        return special.ndtri(u)

    z = draw(n)
    norms = np.linalg.norm(z, axis=1)
    while np.any(norms == 0.0):
        bad = norms == 0.0
        z[bad] = draw(int(bad.sum()))
        norms = np.linalg.norm(z, axis=1)
    return z / norms[:, None]


def cauchy_cdf(r):
    """Distribution function of the standard Cauchy law, 1/2 + arctan(r)/pi."""
    return 0.5 + np.arctan(r) / math.pi


def _ks_distance(sample: np.ndarray, cdf) -> float:
    """Exact Kolmogorov-Smirnov sup distance of a sample to a continuous CDF."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    if n == 0:
        raise ValueError("empty sample")
    f = cdf(x)
    grid = np.arange(1, n + 1, dtype=float)
    return float(max(np.max(grid / n - f), np.max(f - (grid - 1.0) / n)))


@dataclass(frozen=True)
class CauchyRatioReport:
    """KS distances of sphere-coordinate ratios against the standard Cauchy law.

    ``d_full`` uses all ratios u2/u1 for uniform directions (u1, u2) on the
    circle; ``d_cond_first`` conditions on u1 >= 0 and ``d_cond_second`` on
    u2 > 0.  All three laws are standard Cauchy (the tangent map is
    pi-periodic, so either half-circle yields the same distribution), and
    both conditionings are reported so the two equivalent formulations can
    be checked independently.  ``scaled_*`` are the sqrt(sample size)-scaled
    statistics comparable to Kolmogorov critical values such as
    ``KS_CRITICAL_0P1``.
    """

    n: int
    seed: int
    d_full: float
    d_cond_first: float
    d_cond_second: float
    scaled_full: float
    scaled_cond_first: float
    scaled_cond_second: float


def cauchy_ratio_check(n: int, seed: int = DEFAULT_SEED) -> CauchyRatioReport:
    """Compare circle-coordinate ratios to the standard Cauchy distribution."""
    n = int(n)
    if n < 1000:
        raise ValueError("n must be at least 1000 for a meaningful KS statistic")
    u = sample_unit_sphere(2, n, seed)
    with np.errstate(divide="ignore"):
        ratio = u[:, 1] / u[:, 0]
    first = ratio[u[:, 0] >= 0.0]
    second = ratio[u[:, 1] > 0.0]
    d_full = _ks_distance(ratio, cauchy_cdf)
    d_first = _ks_distance(first, cauchy_cdf)
    d_second = _ks_distance(second, cauchy_cdf)
    return CauchyRatioReport(
        n=n,
        seed=int(seed),
        d_full=d_full,
        d_cond_first=d_first,
        d_cond_second=d_second,
        scaled_full=d_full * math.sqrt(n),
        scaled_cond_first=d_first * math.sqrt(len(first)),
        scaled_cond_second=d_second * math.sqrt(len(second)),
    )
