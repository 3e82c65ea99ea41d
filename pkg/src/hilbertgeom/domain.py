"""Convex-body representations, chord/membership oracles, example constructors.

A body is a properly convex open subset of S^n presented through:

* an io frame: the affine chart used for user-facing coordinates,
* a separating covector (strictly positive on the closed cone of the body),
  certifying proper convexity; its chart is where marching/bisection happens
  because the closure is compact there,
* a membership margin function, plus exact structure (quadratic form, facet
  list, vertex list) when available.

Charts map a homogeneous vector v with c.v > 0 to u = W^T (v/(c.v) - o); the
frame origin satisfies o = c/|c|^2 so the chart is an isometry of the patch.
"""

import numpy as np
import scipy.spatial

from . import _kernels
from .config import DEFAULT_BUDGET, DEFAULT_TOL
from .errors import (
    InvalidInput,
    NotBoundary,
    NotInterior,
    NumericalFailure,
    TargetNotMet,
    UnknownExample,
)
from .projlin import ProjHyperplane, ProjMap, ProjPoint, vec_to_sym

INF_T = _kernels.INF_T


class Frame:
    """Affine chart of the patch {c.x = 1} with orthonormal basis of ker c."""

    def __init__(self, covector, basis=None):
        c = np.asarray(covector, dtype=float).reshape(-1)
        self.covector = c
        self.origin = c / float(c @ c)
        if basis is None:
            # orthonormal completion: null space of c
            _, _, vh = np.linalg.svd(c.reshape(1, -1))
            basis = vh[1:].T
        self.basis = np.asarray(basis, dtype=float)  # (n+1, n), columns span ker c

    @property
    def dim(self):
        return self.basis.shape[1]

    def chart(self, vecs):
        """Homogeneous (k, n+1) -> chart coordinates (k, n)."""
        V = np.atleast_2d(np.asarray(vecs, dtype=float))
        denom = V @ self.covector
        return ((V / denom[:, None]) - self.origin) @ self.basis

    def chart_point(self, p):
        return self.chart(p.vec)[0]

    def unchart(self, coords):
        U = np.atleast_2d(np.asarray(coords, dtype=float))
        return self.origin + U @ self.basis.T

    def unchart_point(self, u):
        return ProjPoint(self.unchart(u)[0])

    def direction_vec(self, d):
        """Chart direction -> homogeneous direction vector (in ker c)."""
        return self.basis @ np.asarray(d, dtype=float)


def standard_frame(nplus1):
    """Last-coordinate patch with the identity basis: u -> (u, 1)."""
    c = np.zeros(nplus1)
    c[-1] = 1.0
    W = np.zeros((nplus1, nplus1 - 1))
    W[: nplus1 - 1, :] = np.eye(nplus1 - 1)
    return Frame(c, W)


class Chord:
    """A maximal open segment of a projective line inside a body."""

    def __init__(self, x_minus, x_plus):
        self.x_minus = x_minus
        self.x_plus = x_plus

    def __iter__(self):
        return iter((self.x_minus, self.x_plus))

    def __repr__(self):
        return f"Chord({self.x_minus}, {self.x_plus})"


class ConvexBody:
    """Properly convex open domain with membership and chord oracles."""

    def __init__(self, dim, kind, margin_fn, frame, sep_covector, witness_vec,
                 quadratic=None, facets=None, vertices=None, meta=None):
        self.dim = dim
        self.kind = kind
        self._margin = margin_fn
        self.frame = frame
        self.sep = np.asarray(sep_covector, dtype=float)
        self.sep = self.sep / np.linalg.norm(self.sep)
        self.sep_frame = Frame(self.sep)
        self.quadratic = quadratic
        self.facets = facets            # homogeneous covectors, f.v >= 0 on the lift
        self.vertices = vertices        # homogeneous unit representatives
        self.meta = meta or {}
        w = np.asarray(witness_vec, dtype=float)
        if float(self.sep @ w) < 0:
            w = -w
        self.witness = ProjPoint(w)
        self._cache = {}
        if self.margin(self.witness.vec) <= 0:
            raise InvalidInput(f"witness of {kind} body is not interior")

    # -- membership ---------------------------------------------------------
    def lift(self, p):
        """Representative of p on the body's side of the double cover."""
        v = p.vec if isinstance(p, ProjPoint) else np.asarray(p, dtype=float)
        v = v / np.linalg.norm(v)
        return v if float(self.sep @ v) >= 0 else -v

    def margin(self, v):
        """Scaled signed interior margin at a unit homogeneous vector."""
        return float(self._margin(self.lift(v)))

    def __repr__(self):
        return f"ConvexBody(kind={self.kind!r}, dim={self.dim})"

    # -- chart-level closed forms -------------------------------------------
    def chart_quadratic(self, frame=None):
        """(M, b, c0) with q(u) = u^T M u + 2 b.u + c0 < 0 inside, in a chart."""
        if self.quadratic is None:
            return None
        frame = frame or self.frame
        key = ("quad", id(frame))
        if key not in self._cache:
            Q, W, o = self.quadratic, frame.basis, frame.origin
            self._cache[key] = (W.T @ Q @ W, W.T @ (Q @ o), float(o @ Q @ o))
        return self._cache[key]

    def chart_facets(self, frame=None):
        """(G, h) with G u < h inside, in a chart."""
        if self.facets is None:
            return None
        frame = frame or self.frame
        key = ("facets", id(frame))
        if key not in self._cache:
            F = self.facets
            self._cache[key] = (-(F @ frame.basis), F @ frame.origin)
        return self._cache[key]

    def fast_form(self, frame=None):
        if self.quadratic is not None:
            return ("ellipsoid",) + self.chart_quadratic(frame)
        if self.facets is not None:
            return ("polytope",) + self.chart_facets(frame)
        return None

    # -- cached geometry ------------------------------------------------------
    def boundary_fan(self, m=256, frame=None, seed=7):
        """Boundary points as radial distances from the witness in a chart."""
        frame = frame or self.sep_frame
        key = ("fan", id(frame), m, seed)
        if key not in self._cache:
            dirs = unit_directions(self.dim, m, seed)
            w = frame.chart(self.witness.vec)[0]
            roots = chord_roots(self, np.tile(w, (m, 1)), dirs, frame)
            self._cache[key] = (w, dirs, roots[:, 1])
        return self._cache[key]

    def bounding_radius(self, frame=None):
        frame = frame or self.sep_frame
        key = ("brad", id(frame))
        if key not in self._cache:
            w, dirs, t = self.boundary_fan(frame=frame)
            pts = w[None, :] + t[:, None] * dirs
            self._cache[key] = float(np.max(np.linalg.norm(pts, axis=1))) + 1e-9
        return self._cache[key]


def unit_directions(n, m, seed=7):
    """Deterministic, roughly uniform unit directions in R^n."""
    if n == 1:
        return np.array([[1.0], [-1.0]] * ((m + 1) // 2))[:m]
    if n == 2:
        ang = 2.0 * np.pi * np.arange(m) / m
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    rng = np.random.Generator(np.random.PCG64(seed))
    v = rng.standard_normal((m, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# -- membership -------------------------------------------------------------

def contains(body, p, band=DEFAULT_TOL.boundary_band):
    """Classify a point as 'interior', 'boundary' or 'exterior'."""
    m = body.margin(p.vec if isinstance(p, ProjPoint) else p)
    if m > band:
        return "interior"
    if m >= -band:
        return "boundary"
    return "exterior"


def _require_interior(body, p, what="point"):
    if contains(body, p) != "interior":
        raise NotInterior(f"{what} is not interior to the {body.kind} body")


def _require_boundary(body, p, band=1e-7):
    if contains(body, p, band=band) != "boundary":
        raise NotBoundary(f"point is not on the boundary of the {body.kind} body")


# -- chords -------------------------------------------------------------------

def chord_roots(body, P, D, frame=None, tol=DEFAULT_TOL.chord_bisect,
                max_iter=DEFAULT_BUDGET.chord_iters):
    """Chord parameters (t-, t+) for chart lines p + t d, batched.

    Closed form for quadric and facet bodies; membership bisection on the
    great circle otherwise.
    """
    frame = frame or body.frame
    form = body.fast_form(frame)
    P = np.atleast_2d(np.asarray(P, dtype=float))
    D = np.atleast_2d(np.asarray(D, dtype=float))
    if form is not None:
        if form[0] == "ellipsoid":
            return _kernels.chord_roots_ellipsoid(P, D, *form[1:])
        return _kernels.chord_roots_polytope(P, D, *form[1:])
    out = np.empty((len(P), 2))
    for i in range(len(P)):
        out[i, 1] = _bisect_exit(body, P[i], D[i], frame, tol, max_iter)
        out[i, 0] = -_bisect_exit(body, P[i], -D[i], frame, tol, max_iter)
    return out


def _bisect_exit(body, u, d, frame, tol, max_iter):
    """Smallest t > 0 with u + t d on the boundary (angular bisection)."""
    a = body.lift(frame.unchart(u)[0])
    dh = frame.direction_vec(d)
    nd = np.linalg.norm(dh)
    if nd == 0.0:
        raise InvalidInput("zero direction")
    dh = dh / nd
    c = body.sep
    phi = np.arctan2(float(c @ dh), float(c @ a))
    hi = phi + np.pi / 2.0        # patch exit angle, certainly not interior
    lo = 0.0
    if body.margin(np.cos(1e-15) * a + np.sin(1e-15) * dh) <= 0:
        raise NumericalFailure("chord base point is not interior (broken oracle)")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        x = np.cos(mid) * a + np.sin(mid) * dh
        if body.margin(x) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, hi):
            break
    t_ang = 0.5 * (lo + hi)
    # convert the angular parameter back to the chart parameter t:
    # x(ang) = cos(ang) a + sin(ang) dh, chart coordinate shift solves below
    x = np.cos(t_ang) * a + np.sin(t_ang) * dh
    cx = float(frame.covector @ x)
    if abs(cx) < 1e-14:
        return INF_T
    u_exit = frame.chart(x)[0]
    # parameter along d in chart units
    dd = np.asarray(d, dtype=float)
    return float((u_exit - u) @ dd / (dd @ dd))


def chord(body, a, direction, frame=None):
    """The chord through interior point a along a chart direction.

    Returns the boundary endpoints ordered against/along the direction.
    """
    _require_interior(body, a)
    frame = frame or body.frame
    d = np.asarray(direction, dtype=float)
    if np.linalg.norm(d) == 0.0:
        raise InvalidInput("zero direction")
    u = frame.chart(body.lift(a))[0]
    roots = chord_roots(body, u[None, :], d[None, :], frame)
    tm, tp = float(roots[0, 0]), float(roots[0, 1])
    x_minus = _endpoint(body, frame, u, d, tm)
    x_plus = _endpoint(body, frame, u, d, tp)
    return Chord(x_minus, x_plus)


def _endpoint(body, frame, u, d, t):
    if abs(t) >= INF_T / 2:
        v = frame.direction_vec(d) * (1.0 if t > 0 else -1.0)
        return ProjPoint(v)
    return ProjPoint(frame.unchart(u + t * d)[0])


# -- boundary structure -------------------------------------------------------

def supporting_cone(body, p, samples=64, tol=DEFAULT_TOL.incidence):
    """Supporting covectors at a boundary point.

    Exact single covector for quadrics; active facets for polytopes; a
    sampled generating set otherwise.  Every returned covector vanishes at p
    and is nonnegative on the closure.
    """
    _require_boundary(body, p)
    v = body.lift(p)
    if body.quadratic is not None:
        phi = body.quadratic @ v
        if float(phi @ body.witness.vec) < 0:
            phi = -phi
        return [ProjHyperplane(phi)]
    if body.facets is not None:
        vals = body.facets @ v
        scale = np.linalg.norm(body.facets, axis=1) + 1e-300
        active = np.abs(vals) <= 1e-8 * scale
        if not np.any(active):
            active = np.abs(vals) <= 1e-6 * scale
        return [ProjHyperplane(f) for f in body.facets[active]]
    # sampled cone for oracle bodies: covectors positive on boundary samples
    w, dirs, t = body.boundary_fan(m=max(samples * 4, 128))
    pts = body.sep_frame.unchart(w[None, :] + t[:, None] * dirs)
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    out = []
    import scipy.optimize

    n1 = v.size
    rng = np.random.Generator(np.random.PCG64(3))
    # feasible covectors: phi . p = 0, phi . sample >= 0; probe extreme ones
    A_eq = v.reshape(1, -1)
    A_ub = -pts
    for _ in range(samples):
        cvec = rng.standard_normal(n1)
        res = scipy.optimize.linprog(
            cvec, A_ub=A_ub, b_ub=np.zeros(len(pts)),
            A_eq=A_eq, b_eq=[0.0], bounds=[(-1.0, 1.0)] * n1, method="highs")
        if res.status == 0 and np.linalg.norm(res.x) > 1e-7:
            phi = res.x / np.linalg.norm(res.x)
            if not any(np.linalg.norm(phi - q.covector) < 1e-6 or
                       np.linalg.norm(phi + q.covector) < 1e-6 for q in out):
                out.append(ProjHyperplane(phi))
    return out


def boundary_probe(body, p, samples=64, seg_tol=1e-8, angle_tol=1e-6):
    """Probabilistic C1 / strict-convexity probe at a boundary point.

    False negatives are possible: the probe only inspects finitely many
    supporting covectors and boundary chords.
    """
    _require_boundary(body, p)
    cone = supporting_cone(body, p, samples=samples)
    is_c1 = True
    for i in range(len(cone)):
        for j in range(i + 1, len(cone)):
            a, b = cone[i].covector, cone[j].covector
            if min(np.linalg.norm(a - b), np.linalg.norm(a + b)) > angle_tol:
                is_c1 = False
    v = body.lift(p)
    frame = body.sep_frame
    pu = frame.chart(v)[0]
    w, dirs, t = body.boundary_fan(m=samples)
    qs = w[None, :] + t[:, None] * dirs
    strict = True
    for q in qs:
        d = pu - q
        nq = np.linalg.norm(d)
        if nq < 1e-12:
            continue
        d = d / nq
        # continue past p: how far does the segment stay in the closure?
        s_max = _boundary_continuation(body, frame, pu, d, seg_tol)
        if s_max > 1e-6:
            mid = 0.5 * (q + (pu + s_max * d))
            if contains(body, frame.unchart_point(mid), band=seg_tol) == "boundary":
                strict = False
                break
    return {"is_C1": is_c1, "is_strictly_convex_point": strict}


def _boundary_continuation(body, frame, pu, d, band):
    """sup s with p + s d still in the closure (0 if the body ends at p)."""
    lo, hi = 0.0, body.bounding_radius(frame) * 2.0
    if contains(body, frame.unchart_point(pu + 1e-7 * d), band=band) == "exterior":
        return 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if contains(body, frame.unchart_point(pu + mid * d), band=band) == "exterior":
            hi = mid
        else:
            lo = mid
    return lo


def space_of_directions(body, p, eps=1e-6):
    """The space of directions of the body at a boundary point, as a body.

    A direction class [v] belongs iff the ray from p toward v immediately
    enters the body; the result is an oracle body of dimension n-1.
    """
    _require_boundary(body, p)
    v = body.lift(p)
    H = supporting_cone(body, p)[0].covector
    if float(H @ body.witness.vec) < 0:
        H = -H
    # orthonormal complement of p: quotient coordinates
    _, _, vh = np.linalg.svd(v.reshape(1, -1))
    B = vh[1:].T  # (n+1, n)
    h_red = B.T @ H

    def margin(w_hat):
        lift = B @ w_hat
        x = v + eps * lift / max(np.linalg.norm(lift), 1e-300)
        return body.margin(x / np.linalg.norm(x)) / eps

    w0 = B.T @ body.witness.vec
    return ConvexBody(
        dim=body.dim - 1, kind="directions", margin_fn=margin,
        frame=Frame(h_red), sep_covector=h_red, witness_vec=w0,
        meta={"base_kind": body.kind})


# -- Benzecri normalization ---------------------------------------------------

def _affine_to_projmap(frame, A, b):
    """Homogeneous matrix acting as u -> A u + b in the given chart."""
    W, o, c = frame.basis, frame.origin, frame.covector
    return ProjMap((o + W @ b)[:, None] @ c[None, :] + W @ A @ W.T)


def _pull_map(frame, w):
    """Homogeneous matrix acting as u -> u / (1 + w.u) in the given chart."""
    W, o, c = frame.basis, frame.origin, frame.covector
    return ProjMap(o[:, None] @ (c + W @ w)[None, :] + W @ W.T)


def _transformed_radial(body, tau_inv, frame, dirs, tol=1e-11):
    """Radial boundary distances of tau(body) from the chart origin."""
    out = np.empty(len(dirs))
    for i, d in enumerate(dirs):
        lo, hi = 0.0, 1.0
        # bracket: grow until exterior
        def member(t):
            x = frame.unchart(t * d)[0]
            y = tau_inv.matrix @ x
            return body.margin(y) > 0
        while member(hi):
            hi *= 2.0
            if hi > 1e8:
                raise NumericalFailure("transformed body appears unbounded")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if member(mid):
                lo = mid
            else:
                hi = mid
            if hi - lo <= tol * max(1.0, hi):
                break
        out[i] = 0.5 * (lo + hi)
    return out


def _mvie_fixed_center(pts):
    """Maximum-volume ellipsoid {S u : |u|<=1} centered at 0 inside hull(pts)."""
    import cvxpy as cp

    hull = scipy.spatial.ConvexHull(pts)
    A = hull.equations[:, :-1]
    b = -hull.equations[:, -1]
    # normalize A x <= b with 0 strictly inside (b > 0)
    if np.any(b <= 0):
        raise NumericalFailure("chart origin escaped the sampled hull")
    n = pts.shape[1]
    S = cp.Variable((n, n), PSD=True)
    cons = [cp.norm(S @ A[i]) <= b[i] for i in range(len(b))]
    prob = cp.Problem(cp.Maximize(cp.log_det(S)), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except Exception:
        prob.solve(solver=cp.SCS)
    if S.value is None:
        raise NumericalFailure("inscribed-ellipsoid optimization failed")
    return np.asarray(S.value)


def _ellipsoid_chart(body, p, frame):
    """Exact Benzecri chart for quadric bodies: quadric -> ball -> recenter."""
    Q = body.quadratic
    vals, vecs = np.linalg.eigh(Q)
    order = np.argsort(vals)[::-1]  # positive eigenvalues first, negative last
    vals, vecs = vals[order], vecs[:, order]
    if not (vals[-1] < 0 < vals[0]) or np.sum(vals < 0) != 1:
        raise NumericalFailure("quadratic form does not have ball signature")
    T1 = np.diag(np.sqrt(np.abs(vals))) @ vecs.T
    n1 = Q.shape[0]
    ball_frame = standard_frame(n1)
    w = T1 @ body.lift(p)
    if w[-1] < 0:
        w = -w
    x0 = w[:-1] / w[-1]
    beta = np.linalg.norm(x0)
    if beta >= 1.0:
        raise NumericalFailure("point image escaped the unit ball")
    boost = np.eye(n1)
    if beta > 1e-14:
        e = x0 / beta
        s = np.arctanh(beta)
        boost[:-1, :-1] += (np.cosh(s) - 1.0) * np.outer(e, e)
        boost[:-1, -1] = -np.sinh(s) * e
        boost[-1, :-1] = -np.sinh(s) * e
        boost[-1, -1] = np.cosh(s)
    return ProjMap(boost @ T1), ball_frame


def benzecri_chart(body, p, r_target=9.0, grid=None, centroid_dirs=128,
                   max_rounds=40):
    """Projective chart with tau(p) = 0 and B(1) inside tau(body) inside B(R).

    Returns (tau, R_achieved, frame); the frame is the chart in which the
    sandwich holds.  Raises TargetNotMet (carrying the best chart) when
    R_achieved exceeds r_target.
    """
    _require_interior(body, p)
    if r_target <= 1.0:
        raise InvalidInput("r_target must exceed 1")
    grid = grid or (DEFAULT_BUDGET.benzecri_grid if body.dim <= 2 else 500)

    if body.quadratic is not None:
        tau, frame = _ellipsoid_chart(body, p, body.sep_frame)
    else:
        frame = body.sep_frame
        p0 = frame.chart(body.lift(p))[0]
        tau = _affine_to_projmap(frame, np.eye(body.dim), -p0)
        dirs = unit_directions(body.dim, centroid_dirs, seed=11)
        # move the centroid of the chart image onto the image of p (= 0)
        for _ in range(max_rounds):
            cen = _fan_centroid(body, tau, frame, dirs)
            scale = float(np.mean(_transformed_radial(body, tau.inverse(), frame, dirs)))
            if np.linalg.norm(cen) <= 1e-3 * scale:
                break
            J = np.empty((body.dim, body.dim))
            h = 0.05 / max(scale, 1e-9)
            for j in range(body.dim):
                wj = np.zeros(body.dim)
                wj[j] = h
                tau_j = _pull_map(frame, wj).compose(tau)
                J[:, j] = (_fan_centroid(body, tau_j, frame, dirs) - cen) / h
            try:
                delta = np.linalg.solve(J, -cen)
            except np.linalg.LinAlgError:
                delta = -cen / max(scale, 1e-9) ** 2
            lim = 0.5 / (scale * max(np.linalg.norm(delta), 1e-12))
            delta = delta * min(1.0, lim)
            tau = _pull_map(frame, delta).compose(tau)
        # affine step: map the inscribed ellipsoid at 0 to the unit ball
        fan_dirs = unit_directions(body.dim, max(centroid_dirs, 64), seed=13)
        t = _transformed_radial(body, tau.inverse(), frame, fan_dirs)
        S = _mvie_fixed_center(t[:, None] * fan_dirs)
        tau = _affine_to_projmap(frame, np.linalg.inv(S), np.zeros(body.dim)).compose(tau)

    vdirs = unit_directions(body.dim, grid, seed=17)
    radial = _transformed_radial(body, tau.inverse(), frame, vdirs)
    r_min, r_max = float(np.min(radial)), float(np.max(radial))
    if r_min < 1.0 - 1e-6:
        # shrink so the unit ball is genuinely inscribed
        tau = _affine_to_projmap(frame, np.eye(body.dim) / r_min,
                                 np.zeros(body.dim)).compose(tau)
        r_max = r_max / r_min
    if r_max > r_target:
        raise TargetNotMet(
            f"achieved outer radius {r_max:.4f} exceeds target {r_target}",
            chart=tau, achieved=r_max)
    return tau, r_max, frame


def _fan_centroid(body, tau, frame, dirs):
    """Centroid estimate of tau(body) from radial boundary samples at 0."""
    t = _transformed_radial(body, tau.inverse(), frame, dirs)
    n = dirs.shape[1]
    num = (t ** (n + 1))[:, None] * dirs / (n + 1)
    den = np.mean(t ** n) / n
    return np.mean(num, axis=0) / den


# -- constructors -------------------------------------------------------------

def ellipsoid_body(Q, frame=None, witness=None, kind="ellipsoid", sep=None):
    """Body {q(v) < 0} for a quadratic form of ball signature (n, 1)."""
    Q = np.asarray(Q, dtype=float)
    Q = 0.5 * (Q + Q.T)
    n1 = Q.shape[0]
    vals, vecs = np.linalg.eigh(Q)
    if np.sum(vals < 0) != 1 or np.sum(vals > 0) != n1 - 1:
        raise InvalidInput("quadratic form must have signature (n, 1)")
    neg = vecs[:, np.argmin(vals)]
    if witness is None:
        witness = neg
    if sep is None:
        sep = neg if float(neg @ witness) > 0 else -neg
    frame = frame or standard_frame(n1)
    scale = np.linalg.norm(Q, 2)

    def margin(v):
        return -float(v @ Q @ v) / scale

    return ConvexBody(n1 - 1, kind, margin, frame, sep, witness, quadratic=Q)


def polytope_h_body(facets, frame=None, witness=None, kind="polytope_h", sep=None):
    """Body {f_i . v > 0} for homogeneous facet covectors spanning a sharp cone."""
    F = np.asarray(facets, dtype=float)
    if witness is None:
        # interior cone direction: least-squares solution of F w = 1
        witness = np.linalg.lstsq(F, np.ones(len(F)), rcond=None)[0]
    w = np.asarray(witness, dtype=float)
    if np.min(F @ w) <= 0:
        raise InvalidInput("polytope facets do not strictly contain the witness")
    if sep is None:
        sep = F.T @ np.ones(len(F))
    frame = frame or standard_frame(F.shape[1])
    scale = np.linalg.norm(F, axis=1) + 1e-300

    def margin(v):
        return float(np.min((F @ v) / scale))

    return ConvexBody(F.shape[1] - 1, kind, margin, frame, sep, w, facets=F)


def find_separating_covector(vertices):
    """Covector strictly positive on all vertex representatives, via LP."""
    import scipy.optimize

    V = np.asarray(vertices, dtype=float)
    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    k, n1 = V.shape
    # maximize eps s.t. V c >= eps, -1 <= c <= 1
    cobj = np.zeros(n1 + 1)
    cobj[-1] = -1.0
    A_ub = np.hstack([-V, np.ones((k, 1))])
    res = scipy.optimize.linprog(
        cobj, A_ub=A_ub, b_ub=np.zeros(k),
        bounds=[(-1.0, 1.0)] * n1 + [(0.0, None)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-9:
        raise InvalidInput("vertex set is not properly convex (no separating covector)")
    return res.x[:-1]


def polytope_v_body(vertices, frame=None, kind="polytope_v",
                    dim_cap=DEFAULT_BUDGET.polytope_dim_cap):
    """Body = interior of the convex hull of vertex representatives.

    Facets are enumerated with qhull when the dimension permits, giving exact
    membership and closed-form chords; otherwise membership falls back to LP
    feasibility (dimension capped).
    """
    V = np.asarray(vertices, dtype=float)
    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    n1 = V.shape[1]
    if n1 - 1 > dim_cap:
        raise InvalidInput(f"vertex-list bodies are capped at dimension {dim_cap}")
    sep = find_separating_covector(V)
    sep_frame = Frame(sep / np.linalg.norm(sep))
    U = sep_frame.chart(V)
    witness = np.mean(V / (V @ (sep / np.linalg.norm(sep)))[:, None], axis=0)
    hull = scipy.spatial.ConvexHull(U, qhull_options="QJ" if n1 - 1 >= 5 else None)
    A, boff = hull.equations[:, :-1], -hull.equations[:, -1]
    # chart halfspaces A u <= b -> homogeneous covectors f.v >= 0
    W, o, c = sep_frame.basis, sep_frame.origin, sep_frame.covector
    F = boff[:, None] * c[None, :] - A @ W.T
    body = polytope_h_body(F, frame=frame or sep_frame, witness=witness,
                           kind=kind, sep=sep)
    body.vertices = V
    return body


def oracle_body(dim, margin_fn, frame, sep, witness, kind="oracle", meta=None):
    return ConvexBody(dim, kind, margin_fn, frame, sep, witness, meta=meta)


# -- canonical examples -------------------------------------------------------

def make_example(name, **params):
    """Canonical bodies addressable by name (also from the CLI)."""
    if name == "klein_ball":
        n = int(params.get("n", 2))
        Q = np.eye(n + 1)
        Q[-1, -1] = -1.0
        return ellipsoid_body(Q, kind="klein_ball")
    if name == "paraboloid":
        n = int(params.get("n", 2))
        # first chart coordinate is vertical: u_1 > (u_2^2+...+u_n^2)/2
        Q = np.zeros((n + 1, n + 1))
        for i in range(1, n):
            Q[i, i] = 1.0
        Q[0, -1] = Q[-1, 0] = -1.0
        w = np.zeros(n + 1)
        w[0] = 1.0
        w[-1] = 1.0
        sep = np.zeros(n + 1)
        sep[0] = sep[-1] = 1.0
        return ellipsoid_body(Q, witness=w, sep=sep, kind="paraboloid")
    if name == "hex_simplex":
        F = np.eye(3)
        frame = Frame(np.array([1.0, 1.0, 1.0]))
        return polytope_h_body(F, frame=frame, witness=np.array([1.0, 1.0, 1.0]) / 3,
                               kind="hex_simplex")
    if name == "simplex":
        n = int(params.get("n", 2))
        F = np.eye(n + 1)
        frame = Frame(np.ones(n + 1))
        return polytope_h_body(F, frame=frame, witness=np.ones(n + 1) / (n + 1),
                               kind="simplex")
    if name == "square":
        F = np.array([
            [1.0, 0.0, 1.0],
            [-1.0, 0.0, 1.0],
            [0.0, 1.0, 1.0],
            [0.0, -1.0, 1.0],
        ])
        return polytope_h_body(F, frame=standard_frame(3),
                               witness=np.array([0.0, 0.0, 1.0]), kind="square")
    if name == "cone_over_disc":
        frame = standard_frame(4)
        sep = np.array([0.0, 0.0, 0.4, 1.0])

        def margin(v):
            vv = v if v[3] >= 0 else -v
            if vv[3] <= 1e-300:
                return -1.0
            u = vv[:3] / vv[3]
            lid = 1.0 - u[2]
            return min(u[2], lid * lid - u[0] ** 2 - u[1] ** 2, lid)

        return oracle_body(3, margin, frame, sep,
                           np.array([0.0, 0.0, 0.4, 1.0]), kind="cone_over_disc")
    if name == "pos_cone":
        m = int(params.get("m", 2))
        n1 = m * (m + 1) // 2
        trace_cov = np.zeros(n1)
        k = 0
        for i in range(m):
            for j in range(i, m):
                if i == j:
                    trace_cov[k] = 1.0
                k += 1

        def margin(v):
            vv = v if float(trace_cov @ v) >= 0 else -v
            X = vec_to_sym(vv)
            return float(np.min(np.linalg.eigvalsh(X)))

        from .projlin import sym_to_vec
        witness = sym_to_vec(np.eye(m))
        return oracle_body(n1 - 1, margin, Frame(trace_cov), trace_cov, witness,
                           kind="pos_cone", meta={"m": m})
    if name == "sl5_orbit_hull":
        count = int(params.get("count", params.get("samples", 200)))
        span = float(params.get("span", 2.0))
        t = np.linspace(-span, span, count)
        curve = np.stack([t ** 4 / 24.0, t ** 3 / 6.0, t ** 2 / 2.0, t,
                          np.ones_like(t)], axis=1)
        limit = np.zeros(5)
        limit[0] = 1.0
        verts = np.vstack([curve, limit])
        body = polytope_v_body(verts, kind="sl5_orbit_hull")
        body.meta["limit_point"] = ProjPoint(limit)
        return body
    raise UnknownExample(f"no example named {name!r}")


def sample_interior(body, k, seed=0, frame=None):
    """Rejection-sample k interior points (chart coords) in a bounded chart."""
    from .rng import generator

    frame = frame or body.sep_frame
    R = body.bounding_radius(frame)
    rng = generator(seed)
    out = np.empty((k, body.dim))
    got = 0
    tries = 0
    while got < k:
        tries += 1
        if tries > 10000:
            raise NumericalFailure("interior sampling failed to accept points")
        batch = rng.uniform(-R, R, size=(max(64, 2 * (k - got)), body.dim))
        vecs = frame.unchart(batch)
        keep = np.array([body.margin(v / np.linalg.norm(v)) > 1e-9 for v in vecs])
        take = batch[keep][: k - got]
        out[got: got + len(take)] = take
        got += len(take)
    return out
