"""Convex polytopes in vertex form: projections, faces, and cones.

Polytopes are given by their vertices, conv{v_1, ..., v_K}.  Projections are
exact in the plane (segment clip formula, polygon edge search, and a
region-table projector for the running triangle family) and fall back to a
min-norm-point iteration in general dimension.  Tangent and normal cones are
classified for planar polytopes, and cones given by generators support
nonnegative least-squares projection.

All types are immutable after construction and all operations are pure, so
everything here is safe for shared concurrent use.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# distance below which a point counts as belonging to a set; callers pass
# floating-point vertices, so exact membership would be too strict
MEMBERSHIP_TOL = 1e-9

# subset enumeration in project_cone_nonneg grows as 2^m
MAX_CONE_GENERATORS = 16


class ProjectionError(RuntimeError):
    """An iterative projection failed to certify its result."""


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull_ccw(points: np.ndarray) -> np.ndarray:
    """Extreme points of a 2D point set, counterclockwise.

    Monotone chain; collinear boundary points are dropped so every stored
    vertex is extreme.  The first vertex is the lexicographically smallest.
    """
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = [tuple(p) for p in points[order]]

    def half_hull(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross2(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half_hull(pts)
    upper = half_hull(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all input points collinear, or a single point
        hull = [pts[0], pts[-1]] if len(pts) > 1 else [pts[0]]
    return np.array(hull, dtype=float)


class ConvexPolytope:
    """Compact convex polytope conv{v_1, ..., v_K} stored by its vertices.

    Planar vertex lists with K >= 3 are convexified at construction: the
    stored vertices are the extreme points in counterclockwise order starting
    at the lexicographically smallest, so redundant (non-extreme) input points
    are dropped.  Exactly duplicated input vertices are rejected.  For d != 2
    the vertex list is stored as given.
    """

    __slots__ = ("vertices", "dim")

    def __init__(self, vertices):
        arr = np.array(vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("vertices must be a nonempty K x d array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("vertices must have finite coordinates")
        rows = [tuple(row) for row in arr.tolist()]
        if len(set(rows)) != len(rows):
            raise ValueError("duplicate vertices are not allowed")
        if arr.shape[1] == 2 and arr.shape[0] >= 3:
            arr = _convex_hull_ccw(arr)
        arr.setflags(write=False)
        self.vertices = arr
        self.dim = int(arr.shape[1])

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    def squared_diameter(self) -> float:
        """max_{i,j} ||v_i - v_j||^2, an upper bound for any squared projection error."""
        v = self.vertices
        diff = v[:, None, :] - v[None, :, :]
        return float(np.max(np.einsum("ijk,ijk->ij", diff, diff)))

    def __repr__(self):
        return f"ConvexPolytope(K={self.n_vertices}, dim={self.dim})"


@dataclass(frozen=True)
class ExampleGeometry:
    """The running segment/triangle family in the plane.

    Vertices are v1 = (0, 0), v2 = (1/c, 1), v3 = (0, 1) for a slope
    parameter c > 0; the segment is conv{v1, v2} and the triangle is
    conv{v1, v2, v3}.  The optional ``x`` in [0, 1/c] places a movable vertex
    vx = (x, 1) on the top edge, giving the intermediate triangle
    conv{v1, v2, vx} that interpolates between the two (x = 0 recovers the
    full triangle, x = 1/c collapses onto the segment).
    """

    c: float
    x: float | None = None

    def __post_init__(self):
        c = float(self.c)
        if not (math.isfinite(c) and c > 0.0):
            raise ValueError(f"c must be a positive finite real, got {self.c!r}")
        object.__setattr__(self, "c", c)
        if self.x is not None:
            x = float(self.x)
            if not (math.isfinite(x) and 0.0 <= x <= 1.0 / c):
                raise ValueError(f"x must lie in [0, 1/c] = [0, {1.0 / c!r}], got {self.x!r}")
            object.__setattr__(self, "x", x)

    @property
    def alpha_c(self) -> float:
        """||v2||^2 = 1 + 1/c^2."""
        return 1.0 + 1.0 / (self.c * self.c)

    @property
    def v1(self) -> np.ndarray:
        return np.array([0.0, 0.0])

    @property
    def v2(self) -> np.ndarray:
        return np.array([1.0 / self.c, 1.0])

    @property
    def v3(self) -> np.ndarray:
        return np.array([0.0, 1.0])

    @property
    def vx(self) -> np.ndarray:
        if self.x is None:
            raise ValueError("this geometry has no movable vertex (x is None)")
        return np.array([self.x, 1.0])

    def segment(self) -> ConvexPolytope:
        return ConvexPolytope([self.v1, self.v2])

    def triangle(self) -> ConvexPolytope:
        return ConvexPolytope([self.v1, self.v2, self.v3])

    def theta_x_polytope(self) -> ConvexPolytope:
        """conv{v1, v2, vx}; the degenerate x = 1/c collapses to the segment."""
        if self.x is None:
            raise ValueError("this geometry has no movable vertex (x is None)")
        if self.x == 1.0 / self.c:
            return self.segment()
        return ConvexPolytope([self.v1, self.v2, self.vx])


class RegionLabel(Enum):
    """Affine pieces of the triangle projector: interior, three edges, three vertices."""

    INTERIOR = "Interior"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A12 = "A12"
    A13 = "A13"
    A23 = "A23"


class ConeKind(Enum):
    POINT = "point"
    RAY = "ray"
    WEDGE = "wedge"
    HALFPLANE = "halfplane"
    FULL = "full"


@dataclass(frozen=True)
class Cone2D:
    """Closed convex cone in the plane, described by the arc of its directions.

    ``apex_angle`` is the arc measure (radians) of the cone's unit directions:
    0 for a point or ray, the opening angle in (0, pi) for a wedge, pi for a
    halfplane, and 2*pi for the full plane.
    """

    kind: ConeKind
    apex_angle: float

    def __post_init__(self):
        angle = float(self.apex_angle)
        object.__setattr__(self, "apex_angle", angle)
        expected = {
            ConeKind.POINT: 0.0,
            ConeKind.RAY: 0.0,
            ConeKind.HALFPLANE: math.pi,
            ConeKind.FULL: 2.0 * math.pi,
        }
        if self.kind is ConeKind.WEDGE:
            if not 0.0 < angle < math.pi:
                raise ValueError(f"wedge apex angle must lie in (0, pi), got {angle!r}")
        elif abs(angle - expected[self.kind]) > 1e-12:
            raise ValueError(f"apex angle {angle!r} inconsistent with kind {self.kind}")


def project_segment(v_start, v_end, y) -> np.ndarray:
    """Euclidean projection of ``y`` onto the segment [v_start, v_end].

    Computes v_start + t * (v_end - v_start) with
    t = clip(<y - v_start, v_end - v_start> / ||v_end - v_start||^2, 0, 1).
    """
    a = np.asarray(v_start, dtype=float)
    b = np.asarray(v_end, dtype=float)
    y = np.asarray(y, dtype=float)
    if a.shape != b.shape or a.shape != y.shape or a.ndim != 1:
        raise ValueError("v_start, v_end, y must be vectors of equal dimension")
    d = b - a
    norm_sq = float(d @ d)
    if norm_sq == 0.0:
        raise ValueError("degenerate segment: endpoints coincide")
    t = float((y - a) @ d) / norm_sq
    t = min(1.0, max(0.0, t))
    return a + t * d


def project_polygon_2d(P: ConvexPolytope, y) -> np.ndarray:
    """Exact Euclidean projection onto a planar polytope.

    Interior points are fixed; otherwise the nearest point over all edges
    (equivalently, the boundary) is returned.  Handles the degenerate
    one- and two-vertex polytopes as point and segment.
    """
    if P.dim != 2:
        raise ValueError("project_polygon_2d requires a planar polytope")
    y = np.asarray(y, dtype=float)
    if y.shape != (2,):
        raise ValueError("y must be a 2-vector")
    v = P.vertices
    k = P.n_vertices
    if k == 1:
        return v[0].copy()
    if k == 2:
        return project_segment(v[0], v[1], y)
    nxt = np.roll(v, -1, axis=0)
    edge = nxt - v
    # vertices are counterclockwise, so y is inside iff it is left of every edge
    lhs = edge[:, 0] * (y[1] - v[:, 1]) - edge[:, 1] * (y[0] - v[:, 0])
    if np.all(lhs >= 0.0):
        return y.copy()
    best = None
    best_d2 = math.inf
    for i in range(k):
        p = project_segment(v[i], nxt[i], y)
        d2 = float((y - p) @ (y - p))
        if d2 < best_d2:
            best_d2 = d2
            best = p
    return best


def project_polygon_2d_batch(P: ConvexPolytope, Y: np.ndarray) -> np.ndarray:
    """Vectorized :func:`project_polygon_2d` for an (n, 2) array of points."""
    if P.dim != 2:
        raise ValueError("project_polygon_2d_batch requires a planar polytope")
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2 or Y.shape[1] != 2:
        raise ValueError("Y must be an (n, 2) array")
    v = P.vertices
    k = P.n_vertices
    if k == 1:
        return np.broadcast_to(v[0], Y.shape).copy()
    nxt = np.roll(v, -1, axis=0)
    edge = nxt - v
    len_sq = np.einsum("ij,ij->i", edge, edge)
    if k == 2:
        t = ((Y - v[0]) @ edge[0]) / len_sq[0]
        np.clip(t, 0.0, 1.0, out=t)
        return v[0] + t[:, None] * edge[0]
    # one fused pass per edge keeps the temporaries one-dimensional
    y0, y1 = Y[:, 0], Y[:, 1]
    out = np.empty_like(Y)
    best_d2 = np.full(len(Y), np.inf)
    inside = np.ones(len(Y), dtype=bool)
    for i in range(k):
        e0, e1 = edge[i]
        d0 = y0 - v[i, 0]
        d1 = y1 - v[i, 1]
        inside &= e0 * d1 - e1 * d0 >= 0.0
        t = (d0 * e0 + d1 * e1) / len_sq[i]
        np.clip(t, 0.0, 1.0, out=t)
        fx = v[i, 0] + t * e0
        fy = v[i, 1] + t * e1
        d2 = (y0 - fx) ** 2 + (y1 - fy) ** 2
        better = d2 < best_d2
        best_d2[better] = d2[better]
        out[better, 0] = fx[better]
        out[better, 1] = fy[better]
    out[inside] = Y[inside]
    return out


def project_triangle_example(g: ExampleGeometry, y):
    """Region-table projection onto the triangle conv{v1, v2, v3}.

    Classifies ``y`` into the affine piece of the projector that contains it
    and returns ``(projection, label)``.  Writing s = (y1 + c*y2)/(1 + c^2)
    for the foot parameter on the line through v1 and v2, the pieces are

        Interior: y1 >= 0, y2 <= 1, y2 >= c*y1         -> y
        A12: y2 <= c*y1, 0 <= s <= 1/c                 -> (s, c*s)
        A13: y1 <= 0, 0 <= y2 <= 1                     -> (0, y2)
        A23: 0 <= y1 <= 1/c, y2 >= 1                   -> (y1, 1)
        A1:  y2 <= 0, y1 + c*y2 <= 0                   -> v1
        A2:  y1 >= 1/c, y1/c + y2 >= 1 + 1/c^2        -> v2
        A3:  y1 <= 0, y2 >= 1                          -> v3

    The pieces overlap only on their boundaries, where the projections agree;
    ties resolve to the first match in the order listed above.
    """
    if g.x is not None:
        raise ValueError("region table applies to the full triangle (x must be None)")
    y = np.asarray(y, dtype=float)
    if y.shape != (2,):
        raise ValueError("y must be a 2-vector")
    c = g.c
    y1, y2 = float(y[0]), float(y[1])
    if y1 >= 0.0 and y2 <= 1.0 and y2 >= c * y1:
        return y.copy(), RegionLabel.INTERIOR
    s = (y1 + c * y2) / (1.0 + c * c)
    if y2 <= c * y1 and 0.0 <= s <= 1.0 / c:
        return np.array([s, c * s]), RegionLabel.A12
    if y1 <= 0.0 and 0.0 <= y2 <= 1.0:
        return np.array([0.0, y2]), RegionLabel.A13
    if 0.0 <= y1 <= 1.0 / c and y2 >= 1.0:
        return np.array([y1, 1.0]), RegionLabel.A23
    if y2 <= 0.0 and y1 + c * y2 <= 0.0:
        return g.v1, RegionLabel.A1
    if y1 >= 1.0 / c and y1 / c + y2 >= g.alpha_c:
        return g.v2, RegionLabel.A2
    if y1 <= 0.0 and y2 >= 1.0:
        return g.v3, RegionLabel.A3
    raise AssertionError(f"region table failed to classify {y!r}")  # unreachable


def _affine_min_norm_weights(A: np.ndarray) -> np.ndarray:
    """Weights a (summing to 1, free sign) minimizing ||a @ A|| over the affine hull."""
    s = A.shape[0]
    gram = A @ A.T
    system = np.zeros((s + 1, s + 1))
    system[:s, :s] = gram
    system[:s, s] = 1.0
    system[s, :s] = 1.0
    rhs = np.zeros(s + 1)
    rhs[s] = 1.0
    solution = np.linalg.lstsq(system, rhs, rcond=None)[0]
    return solution[:s]


def project_polytope(P: ConvexPolytope, y, tol: float = 1e-9) -> np.ndarray:
    """Euclidean projection onto a polytope in any dimension.

    Runs the min-norm-point iteration on the shifted vertex set {v_i - y}:
    the minimum-norm point w of conv{v_i - y} satisfies y + w = projection.
    The returned point q is certified by the variational inequality

        max_i <y - q, v_i - q>  <=  tol * (1 + ||y||),

    which bounds ||q - projection||^2 by the same quantity.  Raises
    :class:`ProjectionError` with the residual if the iteration cap is hit
    before certification.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    y = np.asarray(y, dtype=float)
    if y.shape != (P.dim,):
        raise ValueError(f"y must be a {P.dim}-vector")
    v = P.vertices
    k = P.n_vertices
    if k == 1:
        return v[0].copy()
    shifted = v - y
    threshold = tol * (1.0 + float(np.linalg.norm(y)))
    start = int(np.argmin(np.einsum("ij,ij->i", shifted, shifted)))
    active = [start]
    weights = np.array([1.0])
    w = shifted[start].copy()
    max_iter = 64 * k + 256
    residual = math.inf
    for _ in range(max_iter):
        gaps = float(w @ w) - shifted @ w
        entering = int(np.argmax(gaps))
        residual = float(gaps[entering])
        if residual <= threshold:
            return y + w
        if entering in active:
            break  # numerically stuck: the best vertex is already active
        active.append(entering)
        weights = np.append(weights, 0.0)
        while True:
            candidate = _affine_min_norm_weights(shifted[active])
            if np.all(candidate > 1e-12):
                weights = candidate
                break
            # step from weights toward candidate until a coordinate hits zero
            shrinking = candidate < weights
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = weights[shrinking] / (weights[shrinking] - candidate[shrinking])
            step = min(1.0, float(np.min(ratios)))
            weights = (1.0 - step) * weights + step * candidate
            keep = weights > 1e-12
            if not np.any(keep):
                keep[int(np.argmax(weights))] = True
            active = [a for a, flag in zip(active, keep) if flag]
            weights = weights[keep]
            weights = weights / weights.sum()
            if len(active) == 1:
                break
        w = weights @ shifted[active]
    raise ProjectionError(
        f"min-norm point did not certify within {max_iter} iterations: "
        f"residual {residual:.3e} > threshold {threshold:.3e}"
    )


def exposed_face_vertex(P: ConvexPolytope, u) -> int:
    """Index of the vertex maximizing <v_i, u>; ties break to the smallest index."""
    u = np.asarray(u, dtype=float)
    if u.shape != (P.dim,):
        raise ValueError(f"direction must be a {P.dim}-vector")
    if not np.all(np.isfinite(u)) or float(u @ u) == 0.0:
        raise ValueError("direction must be finite and nonzero")
    return int(np.argmax(P.vertices @ u))


def normal_cone_angle_2d(P: ConvexPolytope, i: int) -> float:
    """Arc length (radians) of the normal cone of vertex ``i`` on the unit circle.

    For a polygon this is pi minus the interior angle at the vertex (the
    exterior turning angle); over all vertices the angles sum to 2*pi.  Both
    endpoints of a segment get pi.
    """
    if P.dim != 2:
        raise ValueError("normal_cone_angle_2d requires a planar polytope")
    k = P.n_vertices
    if k < 2:
        raise ValueError("normal cone angle needs at least two vertices")
    if not 0 <= i < k:
        raise ValueError(f"vertex index {i} out of range for {k} vertices")
    if k == 2:
        return math.pi
    v = P.vertices
    before = v[i] - v[(i - 1) % k]
    after = v[(i + 1) % k] - v[i]
    angle = math.atan2(
        before[0] * after[1] - before[1] * after[0], float(before @ after)
    )
    if angle <= 0.0:
        raise ValueError(f"vertex {i} is not extreme")
    return angle


def tangent_cone_2d(P: ConvexPolytope, theta) -> Cone2D:
    """Tangent cone of a planar polytope at ``theta``, up to rotation.

    Returns the full plane at interior points, a halfplane on the relative
    interior of a polygon edge, a wedge with the interior angle at a polygon
    vertex, a ray at segment endpoints, and the origin cone for a one-point
    polytope.  Membership and case classification use ``MEMBERSHIP_TOL``.
    A point in the relative interior of a segment has a full line as tangent
    cone, which this classification cannot express; that case raises.
    """
    if P.dim != 2:
        raise ValueError("tangent_cone_2d requires a planar polytope")
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (2,):
        raise ValueError("theta must be a 2-vector")
    nearest = project_polygon_2d(P, theta)
    if float(np.linalg.norm(nearest - theta)) > MEMBERSHIP_TOL:
        raise ValueError("theta is not a member of the polytope")
    v = P.vertices
    k = P.n_vertices
    if k == 1:
        return Cone2D(ConeKind.POINT, 0.0)
    if k == 2:
        if min(np.linalg.norm(v[0] - theta), np.linalg.norm(v[1] - theta)) <= MEMBERSHIP_TOL:
            return Cone2D(ConeKind.RAY, 0.0)
        raise ValueError(
            "tangent cone at the relative interior of a segment is a full line, "
            "which Cone2D does not represent"
        )
    for i in range(k):
        if float(np.linalg.norm(v[i] - theta)) <= MEMBERSHIP_TOL:
            return Cone2D(ConeKind.WEDGE, math.pi - normal_cone_angle_2d(P, i))
    nxt = np.roll(v, -1, axis=0)
    for i in range(k):
        foot = project_segment(v[i], nxt[i], theta)
        if float(np.linalg.norm(foot - theta)) <= MEMBERSHIP_TOL:
            return Cone2D(ConeKind.HALFPLANE, math.pi)
    return Cone2D(ConeKind.FULL, 2.0 * math.pi)


def project_cone_nonneg_batch(generators, Z: np.ndarray) -> np.ndarray:
    """Vectorized projection of rows of ``Z`` onto cone{g_1, ..., g_m}.

    Solves min ||z - sum_j lambda_j g_j|| over lambda >= 0 exactly, by
    enumerating candidate active sets: the optimal projection is achieved by
    an unconstrained least-squares fit on some subset of generators whose
    coefficients come out nonnegative, so taking the best feasible fit over
    all subsets (including the empty one, i.e. the origin) is exact.
    """
    G = np.asarray(generators, dtype=float)
    if G.ndim != 2 or G.shape[0] < 1:
        raise ValueError("generators must be a nonempty m x d array")
    if not np.all(np.isfinite(G)):
        raise ValueError("generators must be finite")
    m, d = G.shape
    if m > MAX_CONE_GENERATORS:
        raise ValueError(
            f"subset enumeration supports at most {MAX_CONE_GENERATORS} generators, got {m}"
        )
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[1] != d:
        raise ValueError(f"Z must be an (n, {d}) array")
    best = np.zeros_like(Z)
    best_d2 = np.einsum("ij,ij->i", Z, Z)
    # an optimal active set can always be chosen linearly independent
    for size in range(1, min(m, d) + 1):
        for subset in itertools.combinations(range(m), size):
            A = G[list(subset)]  # (size, d)
            coef = Z @ np.linalg.pinv(A)  # (n, size)
            feasible = np.all(coef >= -1e-12, axis=1)
            if not np.any(feasible):
                continue
            proj = coef @ A
            d2 = np.einsum("ij,ij->i", Z - proj, Z - proj)
            better = feasible & (d2 < best_d2)
            best[better] = proj[better]
            best_d2[better] = d2[better]
    return best


def project_cone_nonneg(generators, z, tol: float = 1e-9) -> np.ndarray:
    """Projection of ``z`` onto the cone spanned nonnegatively by ``generators``.

    Exact subset-enumeration nonnegative least squares; the result additionally
    passes a KKT check (residual has nonpositive inner product with every
    generator, and is orthogonal to the projection) at tolerance ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    G = np.asarray(generators, dtype=float)
    z = np.asarray(z, dtype=float)
    if G.ndim != 2 or z.shape != (G.shape[1],):
        raise ValueError("z must be a vector matching the generator dimension")
    p = project_cone_nonneg_batch(G, z[None, :])[0]
    r = z - p
    z_norm = float(np.linalg.norm(z))
    norms = np.linalg.norm(G, axis=1)
    norms[norms == 0.0] = 1.0
    kkt_dual = float(np.max((G @ r) / norms))
    kkt_comp = abs(float(p @ r))
    if kkt_dual > tol * (1.0 + z_norm) or kkt_comp > tol * (1.0 + z_norm * z_norm):
        raise ProjectionError(
            f"cone projection failed KKT check: dual residual {kkt_dual:.3e}, "
            f"complementarity {kkt_comp:.3e}, tol {tol:.3e}"
        )
    return p
