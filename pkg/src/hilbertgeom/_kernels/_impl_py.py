"""Pure-numpy implementations of the hot chart-level kernels.

Every function here has a fused Cython twin in `_impl_cy.pyx`; the package
selects one backend at import time.  All inputs are float64 arrays living in
a fixed affine chart of projective space:

* ellipsoid bodies:  q(u) = u^T M u + 2 b.u + c0 < 0  inside,
* polytope bodies:   G u < h  (row-wise)             inside.

Chord roots are the parameters t of the boundary crossings of u(t) = p + t*d
with t- < 0 < t+.  A crossing pushed to infinity (possible in charts whose
patch meets the closure, e.g. the paraboloid model) is reported as +/-INF_T.
"""

import numpy as np

INF_T = 1e300
_DEG_EPS = 1e-14


def chord_roots_ellipsoid(P, D, M, b, c0):
    """Boundary-crossing parameters for lines p + t*d against a quadric.

    P, D: (k, n).  Returns (k, 2) array [t_minus, t_plus].  Assumes q(p) < 0.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    D = np.atleast_2d(np.asarray(D, dtype=float))
    MD = D @ M
    aq = np.einsum("ij,ij->i", MD, D)
    bq = np.einsum("ij,ij->i", P @ M, D) + D @ b
    cq = np.einsum("ij,ij->i", P @ M, P) + 2.0 * (P @ b) + c0

    disc = bq * bq - aq * cq
    disc = np.maximum(disc, 0.0)
    s = np.sqrt(disc)
    # stable quadratic roots: u = -(bq + sign(bq)*s), roots u/aq and cq/u
    sgn = np.where(bq >= 0.0, 1.0, -1.0)
    u = -(bq + sgn * s)

    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(np.abs(aq) > _DEG_EPS * (np.abs(bq) + np.abs(cq) + 1.0),
                      u / aq, np.sign(u) * INF_T)
        t2 = np.where(np.abs(u) > 0.0, cq / u, -np.sign(bq) * INF_T)
    t1 = np.nan_to_num(t1, nan=INF_T, posinf=INF_T, neginf=-INF_T)
    t2 = np.nan_to_num(t2, nan=-INF_T, posinf=INF_T, neginf=-INF_T)

    # degenerate direction with bq ~ 0 as well: whole line inside (should not
    # happen for properly convex data); keep +/-INF_T sentinels
    both_zero = (np.abs(aq) <= _DEG_EPS * (np.abs(bq) + np.abs(cq) + 1.0)) & (np.abs(bq) <= _DEG_EPS)
    t1 = np.where(both_zero, INF_T, t1)
    t2 = np.where(both_zero, -INF_T, t2)

    tm = np.minimum(t1, t2)
    tp = np.maximum(t1, t2)
    np.clip(tm, -INF_T, -0.0, out=tm)
    np.clip(tp, 0.0, INF_T, out=tp)
    return np.stack([tm, tp], axis=1)


def chord_roots_polytope(P, D, G, h):
    """Boundary-crossing parameters against the polytope G u < h."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    D = np.atleast_2d(np.asarray(D, dtype=float))
    slack = h[None, :] - P @ G.T          # (k, m) > 0 inside
    rate = D @ G.T                         # (k, m)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = slack / rate
    pos = rate > 0.0
    neg = rate < 0.0
    tp = np.min(np.where(pos, ratio, INF_T), axis=1)
    tm = np.max(np.where(neg, ratio, -INF_T), axis=1)
    return np.stack([np.minimum(tm, 0.0), np.maximum(tp, 0.0)], axis=1)


def cr_distance(tm, tp, tb):
    """Hilbert distance from chord roots: points at t=0 and t=tb on the chord.

    log of the cross ratio ((tb - tm) * tp) / ((tp - tb) * (-tm)) with the
    infinite-endpoint limits taken where a root escaped to +/-INF_T.
    """
    tm = np.asarray(tm, dtype=float)
    tp = np.asarray(tp, dtype=float)
    tb = np.asarray(tb, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(tm <= -INF_T / 2, 1.0, (tb - tm) / (-tm))
        r2 = np.where(tp >= INF_T / 2, 1.0, tp / (tp - tb))
        out = np.log(r1 * r2)
    return out


def finsler_factor(tm, tp):
    """Finsler norm per unit chart length of the parametrizing direction."""
    tm = np.asarray(tm, dtype=float)
    tp = np.asarray(tp, dtype=float)
    a = np.where(tm <= -INF_T / 2, 0.0, 1.0 / np.maximum(-tm, 1e-300))
    c = np.where(tp >= INF_T / 2, 0.0, 1.0 / np.maximum(tp, 1e-300))
    return a + c


def pair_distance_ellipsoid(A, B, M, b, c0):
    """Row-wise Hilbert distance between chart point arrays A and B."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    diff = B - A
    tb = np.linalg.norm(diff, axis=1)
    safe = tb > 0.0
    dirs = np.where(safe[:, None], diff / np.where(safe, tb, 1.0)[:, None], 0.0)
    out = np.zeros(len(A))
    if np.any(safe):
        roots = chord_roots_ellipsoid(A[safe], dirs[safe], M, b, c0)
        out[safe] = cr_distance(roots[:, 0], roots[:, 1], tb[safe])
    return out


def pair_distance_polytope(A, B, G, h):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    diff = B - A
    tb = np.linalg.norm(diff, axis=1)
    safe = tb > 0.0
    dirs = np.where(safe[:, None], diff / np.where(safe, tb, 1.0)[:, None], 0.0)
    out = np.zeros(len(A))
    if np.any(safe):
        roots = chord_roots_polytope(A[safe], dirs[safe], G, h)
        out[safe] = cr_distance(roots[:, 0], roots[:, 1], tb[safe])
    return out


def density_ellipsoid(P, DIRS, M, b, c0, nd, chunk=8192):
    """Busemann density at chart points P: unit-ball volume ratio.

    density(x) = vol(B^n) / vol({v : F(x, v) <= 1})
               = 1 / mean_j (1 / F(x, u_j))^n   over unit directions u_j.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    DIRS = np.asarray(DIRS, dtype=float)
    k = len(P)
    out = np.empty(k)
    for lo in range(0, k, chunk):
        hi = min(lo + chunk, k)
        block = P[lo:hi]
        kk = hi - lo
        m = len(DIRS)
        Pg = np.repeat(block, m, axis=0)
        Dg = np.tile(DIRS, (kk, 1))
        roots = chord_roots_ellipsoid(Pg, Dg, M, b, c0)
        F = finsler_factor(roots[:, 0], roots[:, 1]).reshape(kk, m)
        out[lo:hi] = 1.0 / np.mean(F ** (-float(nd)), axis=1)
    return out


def density_polytope(P, DIRS, G, h, nd, chunk=8192):
    P = np.atleast_2d(np.asarray(P, dtype=float))
    DIRS = np.asarray(DIRS, dtype=float)
    k = len(P)
    out = np.empty(k)
    for lo in range(0, k, chunk):
        hi = min(lo + chunk, k)
        block = P[lo:hi]
        kk = hi - lo
        m = len(DIRS)
        Pg = np.repeat(block, m, axis=0)
        Dg = np.tile(DIRS, (kk, 1))
        roots = chord_roots_polytope(Pg, Dg, G, h)
        F = finsler_factor(roots[:, 0], roots[:, 1]).reshape(kk, m)
        out[lo:hi] = 1.0 / np.mean(F ** (-float(nd)), axis=1)
    return out
