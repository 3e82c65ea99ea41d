"""Hilbert distance, Finsler norm, metric balls, Busemann volume."""

import numpy as np

from . import _kernels
from .domain import Chord, chord, chord_roots, contains, unit_directions
from .errors import InvalidInput, NotInterior
from .projlin import cross_ratio
from .rng import generator

INF_T = _kernels.INF_T


def _chart_of(body, p, frame):
    v = body.lift(p)
    return frame.chart(v)[0]


def hilbert_distance(body, a, b, frame=None):
    """d(a, b) = log |CR(x, a, b, y)| along the chord through a and b."""
    frame = frame or body.frame
    if contains(body, a) != "interior" or contains(body, b) != "interior":
        raise NotInterior("both points must be interior")
    ua = _chart_of(body, a, frame)
    ub = _chart_of(body, b, frame)
    return float(hilbert_distance_chart(body, ua[None, :], ub[None, :], frame)[0])


def hilbert_distance_chart(body, A, B, frame=None):
    """Batched distance between chart-coordinate arrays (k, n)."""
    frame = frame or body.frame
    form = body.fast_form(frame)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if form is not None:
        if form[0] == "ellipsoid":
            return _kernels.pair_distance_ellipsoid(A, B, *form[1:])
        return _kernels.pair_distance_polytope(A, B, *form[1:])
    out = np.zeros(len(A))
    for i in range(len(A)):
        d = B[i] - A[i]
        tb = np.linalg.norm(d)
        if tb <= 0.0:
            continue
        roots = chord_roots(body, A[i][None, :], (d / tb)[None, :], frame)
        out[i] = float(_kernels.cr_distance(roots[:, 0], roots[:, 1],
                                            np.array([tb]))[0])
    return out


def hilbert_distance_points(body, x, a, b, y):
    """Distance from explicit chord endpoints via the cross ratio."""
    return abs(float(np.log(abs(cross_ratio(x, a, b, y)))))


def finsler_norm(body, a, v, frame=None):
    """Infinitesimal Hilbert length of the chart vector v at interior point a.

    Equals (1/|a-x| + 1/|a-y|) |v| for the chord endpoints x, y through a
    along v; hilbert_distance(a, a + h v) / h converges to it as h -> 0.
    """
    frame = frame or body.frame
    if contains(body, a) != "interior":
        raise NotInterior("base point must be interior")
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) == 0.0:
        raise InvalidInput("direction must be nonzero")
    u = _chart_of(body, a, frame)
    roots = chord_roots(body, u[None, :], v[None, :], frame)
    return float(_kernels.finsler_factor(roots[:, 0], roots[:, 1])[0])


def ball_radius_parameter(tm, tp, r):
    """Parameter t with d(0, t) = r along a chord with roots (tm, tp).

    Closed form from the cross-ratio equation; handles infinite roots.
    """
    tm = np.asarray(tm, dtype=float)
    tp = np.asarray(tp, dtype=float)
    er = np.exp(r)
    with np.errstate(invalid="ignore", over="ignore"):
        t = tp * tm * (1.0 - er) / (tp - tm * er)
        t = np.where(tp >= INF_T / 2, -tm * (er - 1.0), t)
        t = np.where(tm <= -INF_T / 2, tp * (1.0 - 1.0 / er), t)
    return t


def metric_ball(body, center, r, samples=256, seed=0, frame=None):
    """Boundary sample of the metric ball B_r(center) as chart coordinates.

    Solves d(center, center + t u) = r along sampled unit chart directions;
    monotonicity of t -> d is guaranteed by convexity of metric balls.
    """
    frame = frame or body.frame
    if contains(body, center) != "interior":
        raise NotInterior("center must be interior")
    if r <= 0:
        raise InvalidInput("radius must be positive")
    u = _chart_of(body, center, frame)
    rng = generator(seed)
    if body.dim == 2:
        ang = rng.uniform(0.0, 2.0 * np.pi) + 2.0 * np.pi * np.arange(samples) / samples
        dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    else:
        dirs = rng.standard_normal((samples, body.dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    roots = chord_roots(body, np.tile(u, (samples, 1)), dirs, frame)
    t = ball_radius_parameter(roots[:, 0], roots[:, 1], r)
    return u[None, :] + t[:, None] * dirs


class VolumeEstimate:
    """Monte Carlo volume with its standard error and sampling metadata."""

    def __init__(self, estimate, std_error, samples, rejected):
        self.estimate = estimate
        self.std_error = std_error
        self.samples = samples
        self.rejected = rejected

    def __iter__(self):
        return iter((self.estimate, self.std_error))

    def as_dict(self):
        return {"estimate": self.estimate, "std_error": self.std_error,
                "samples": self.samples, "rejected": self.rejected}

    def __repr__(self):
        return (f"VolumeEstimate({self.estimate:.6g} +/- {self.std_error:.2g}, "
                f"samples={self.samples}, rejected={self.rejected})")


def interior_mask(body, U, frame=None, band=0.0):
    """Vectorized interior test for chart coordinate arrays."""
    frame = frame or body.frame
    U = np.atleast_2d(np.asarray(U, dtype=float))
    form = body.fast_form(frame)
    if form is not None:
        if form[0] == "ellipsoid":
            _, M, b, c0 = form
            q = np.einsum("ij,ij->i", U @ M, U) + 2.0 * (U @ b) + c0
            return q < -band
        _, G, h = form
        return np.all(U @ G.T < h[None, :] - band, axis=1)
    vecs = frame.unchart(U)
    return np.array([body.margin(v / np.linalg.norm(v)) > band for v in vecs])


def busemann_density(body, U, frame=None, directions=256, dir_seed=23):
    """Busemann volume density at chart points: vol(B^n) / vol(Finsler ball).

    The unit-Finsler-ball volume is estimated from a fixed direction set; on
    Riemannian data (Euclidean unit balls) the density is exactly 1.
    """
    frame = frame or body.frame
    U = np.atleast_2d(np.asarray(U, dtype=float))
    dirs = unit_directions(body.dim, directions, seed=dir_seed)
    form = body.fast_form(frame)
    if form is not None:
        if form[0] == "ellipsoid":
            return _kernels.density_ellipsoid(U, dirs, *form[1:], body.dim)
        return _kernels.density_polytope(U, dirs, *form[1:], body.dim)
    out = np.empty(len(U))
    for i in range(len(U)):
        roots = chord_roots(body, np.tile(U[i], (len(dirs), 1)), dirs, frame)
        F = _kernels.finsler_factor(roots[:, 0], roots[:, 1])
        out[i] = 1.0 / np.mean(F ** (-float(body.dim)))
    return out


def busemann_volume(body, region, samples=100000, seed=0, bbox=None,
                    directions=256, frame=None, chunk=65536):
    """Monte Carlo estimate of the Busemann (Hausdorff) measure of a region.

    region: vectorized predicate on chart coordinate arrays (k, n) -> bool.
    Samples outside the body are rejected, counted and reported.
    """
    frame = frame or body.frame
    if bbox is None:
        w, dirs, t = body.boundary_fan(frame=frame)
        if np.any(t >= INF_T / 2):
            raise InvalidInput("body is unbounded in this chart: pass bbox")
        pts = w[None, :] + t[:, None] * dirs
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    else:
        lo, hi = (np.asarray(b, dtype=float) for b in bbox)
    boxvol = float(np.prod(hi - lo))
    rng = generator(seed)
    total = 0.0
    total_sq = 0.0
    rejected = 0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        U = rng.uniform(lo, hi, size=(k, body.dim))
        inside = interior_mask(body, U, frame)
        mask = inside & np.asarray(region(U), dtype=bool)
        rejected += int(k - np.sum(inside))
        vals = np.zeros(k)
        if np.any(mask):
            vals[mask] = busemann_density(body, U[mask], frame, directions)
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals * vals))
        done += k
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    est = boxvol * mean
    se = boxvol * np.sqrt(var / samples)
    return VolumeEstimate(est, se, samples, rejected)


def segment_points(a, b, k):
    """k chart points evenly placed on the open segment (a, b)."""
    s = np.linspace(0.0, 1.0, k + 2)[1:-1]
    return a[None, :] * (1 - s[:, None]) + b[None, :] * s[:, None]


def point_to_set(body, u, S, frame=None):
    """min Hilbert distance from chart point u to a chart point set S."""
    U = np.tile(np.asarray(u, dtype=float), (len(S), 1))
    return float(np.min(hilbert_distance_chart(body, U, S, frame)))
