"""Classification of projective isometries: elliptic / parabolic / hyperbolic.

The decision procedure follows the fixed-point structure: an isometry is
elliptic iff it fixes an interior point; otherwise it is hyperbolic iff some
eigenvalue modulus differs from 1 (within a configurable relative band,
because the parabolic/hyperbolic dichotomy is discontinuous), else parabolic.
Translation length is log of the ratio of extreme eigenvalue moduli.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .config import DEFAULT_TOL
from .domain import Chord, chord_roots, contains, sample_interior, supporting_cone
from .errors import (
    DegeneratePencil,
    NotAnIsometry,
    NotHyperbolic,
    NotUnitModulus,
)
from .metric import hilbert_distance_chart
from .projlin import ProjHyperplane, ProjMap, ProjPoint, dual_action, spectrum
from .rng import generator


@dataclass
class IsometryClassification:
    kind: str                      # Elliptic | Parabolic | Hyperbolic
    translation_length: float
    fixed_sets: list               # [(eigenvalue, [ProjPoint, ...]), ...]
    axis: Chord | None
    certificate: dict = field(default_factory=dict)


def preserves(body, A, samples=50, tol=1e-8, seed=5):
    """True iff A maps the body to itself.

    Exact for quadric bodies (form congruence) and facet bodies (facet
    permutation); sampled interior/boundary check otherwise.
    """
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    if body.quadratic is not None:
        Q = body.quadratic
        C = M.T @ Q @ M
        lam = np.trace(C @ np.linalg.inv(Q)) / Q.shape[0]
        return bool(np.linalg.norm(C - lam * Q, 2) <= 1e-9 * abs(lam) * np.linalg.norm(Q, 2) + 1e-12)
    if body.facets is not None:
        # dual action must permute the facet covectors up to positive scale
        F = body.facets / np.linalg.norm(body.facets, axis=1, keepdims=True)
        G = np.linalg.solve(M.T, F.T).T
        G = G / np.linalg.norm(G, axis=1, keepdims=True)
        sign = np.where(G @ body.witness.vec < 0, -1.0, 1.0)
        G = G * sign[:, None]
        dist = np.linalg.norm(F[:, None, :] - G[None, :, :], axis=2)
        # require a perfect matching within tolerance
        used = set()
        for i in range(len(F)):
            j = int(np.argmin(dist[i]))
            if dist[i, j] > 1e-8 or j in used:
                return False
            used.add(j)
        return True
    U = sample_interior(body, samples, seed=seed)
    vecs = body.sep_frame.unchart(U)
    for v in vecs:
        if contains(body, ProjPoint(M @ v)) != "interior":
            return False
    w, dirs, t = body.boundary_fan(m=samples)
    finite = t < 1e290
    pts = body.sep_frame.unchart(w[None, :] + t[finite][:, None] * dirs[finite])
    for v in pts:
        if abs(body.margin(M @ v / np.linalg.norm(M @ v))) > tol:
            return False
    return True


def _real_eigenpairs(M, tol=1e-9):
    """(eigenvalue, unit eigenvector) pairs with positive real eigenvalues."""
    vals, vecs = np.linalg.eig(M)
    out = []
    for i, lam in enumerate(vals):
        if abs(lam.imag) <= tol * max(1.0, abs(lam)) and lam.real > tol:
            v = vecs[:, i]
            # rotate a numerically complex eigenvector onto its real line
            j = int(np.argmax(np.abs(v)))
            v = (v / v[j]).real
            out.append((float(lam.real), v / np.linalg.norm(v)))
    return out


def _eigenspace(M, lam, rtol=1e-8):
    """Orthonormal basis of the geometric eigenspace ker(M - lam I)."""
    B = M - lam * np.eye(M.shape[0])
    _, s, vh = np.linalg.svd(B)
    scale = max(s[0], 1.0)
    nullity = int(np.sum(s <= rtol * scale))
    if nullity == 0:
        # accept the weakest direction if it is an eigenvector in practice
        nullity = 1 if s[-1] <= 1e-6 * scale else 0
    return vh[len(s) - nullity:].T if nullity else np.zeros((M.shape[0], 0))


def _is_fixed(M, p, tol=1e-8):
    img = M @ p.vec
    img = img / np.linalg.norm(img)
    return min(np.linalg.norm(img - p.vec), np.linalg.norm(img + p.vec)) <= tol


def _interior_fixed_point(body, M, modulus_band=DEFAULT_TOL.modulus_band):
    """Search Fix(A) for an interior point.

    Scans real positive-eigenvalue eigenvectors, projects the witness onto
    higher-dimensional geometric eigenspaces, and (for unit-modulus maps)
    refines a Cesaro orbit average; every candidate is verified fixed.
    """
    pairs = _real_eigenpairs(M)
    seen = set()
    for lam, v in pairs:
        for s in (1.0, -1.0):
            p = ProjPoint(s * v)
            if contains(body, p, band=1e-9) == "interior" and _is_fixed(M, p):
                return p
        key = round(lam, 7)
        if key in seen:
            continue
        seen.add(key)
        E = _eigenspace(M, lam)
        if E.shape[1] >= 2:
            proj = E @ (E.T @ body.witness.vec)
            if np.linalg.norm(proj) > 1e-9:
                cand = ProjPoint(proj)
                if contains(body, cand, band=1e-9) == "interior" and _is_fixed(M, cand):
                    return cand
    # unit-modulus case: Cesaro average of the witness orbit approaches a
    # fixed point when the closure of <A> is compact; the average is then
    # snapped onto a nearby geometric eigenspace and re-verified.
    spec = spectrum(M)
    radius = spec.spectral_radius
    if abs(radius - 1.0) <= 1e-3 and abs(1.0 / radius - 1.0) <= 1e-3:
        x = body.witness.vec.copy()
        acc = np.zeros_like(x)
        cur = x.copy()
        for _ in range(600):
            acc += cur
            cur = M @ cur
            nc = np.linalg.norm(cur)
            if not np.isfinite(nc) or nc > 1e12 or nc < 1e-12:
                return None
            cur = cur / nc
        if np.linalg.norm(acc) <= 1e-9:
            return None
        rough = acc / np.linalg.norm(acc)
        for lam in sorted({round(lam, 7) for lam, _ in pairs}, reverse=True):
            E = _eigenspace(M, lam)
            if E.shape[1] == 0:
                continue
            proj = E @ (E.T @ rough)
            if np.linalg.norm(proj) <= 1e-9:
                continue
            cand = ProjPoint(proj)
            if contains(body, cand, band=1e-9) == "interior" and _is_fixed(M, cand):
                return cand
    return None


def _fixed_sets(body, M):
    """Representatives of Fix(A, lam) in the closure, per positive eigenvalue."""
    out = {}
    for lam, v in _real_eigenpairs(M):
        key = round(lam, 7)
        for s in (1.0, -1.0):
            p = ProjPoint(s * v)
            if contains(body, p, band=1e-7) in ("interior", "boundary"):
                reps = out.setdefault(key, [])
                if not any(p.same_projective(q, tol=1e-7) for q in reps):
                    reps.append(p)
                break
    return [(lam, pts) for lam, pts in sorted(out.items())]


def classify(body, A, modulus_band=DEFAULT_TOL.modulus_band):
    """Full elliptic/parabolic/hyperbolic classification with certificate."""
    if not preserves(body, A):
        raise NotAnIsometry("the map does not preserve the body")
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    spec = spectrum(M)
    moduli = np.array([abs(lam) for lam, _, _ in spec.eigenvalues])
    r_max, r_min = float(np.max(moduli)), float(np.min(moduli))
    t_formula = float(np.log(r_max / r_min))
    fixed = _fixed_sets(body, M)
    cert = {
        "moduli": sorted(float(m) for m in moduli),
        "modulus_band": modulus_band,
        "spectral_radius": spec.spectral_radius,
    }

    p_int = _interior_fixed_point(body, M, modulus_band)
    if p_int is not None:
        cert["interior_fixed_point"] = p_int.vec.tolist()
        return IsometryClassification("Elliptic", 0.0, fixed, None, cert)

    cert["max_block"] = int(max(blk for _, _, blk in spec.eigenvalues))
    if r_max / r_min > 1.0 + modulus_band:
        axis = None
        top = [(lam, v) for lam, v in _real_eigenpairs(M)
               if abs(lam - r_max) <= modulus_band * r_max]
        bot = [(lam, v) for lam, v in _real_eigenpairs(M)
               if abs(lam - r_min) <= modulus_band * r_max]
        if len(top) == 1 and len(bot) == 1:
            x_plus = _boundary_rep(body, top[0][1])
            x_minus = _boundary_rep(body, bot[0][1])
            if x_plus is not None and x_minus is not None:
                axis = Chord(x_minus, x_plus)
                cert["positive_proximal"] = True
        return IsometryClassification("Hyperbolic", t_formula, fixed, axis, cert)

    return IsometryClassification("Parabolic", 0.0, fixed, None, cert)


def _boundary_rep(body, v):
    for s in (1.0, -1.0):
        p = ProjPoint(s * v)
        if contains(body, p, band=1e-6) == "boundary":
            return p
    return None


def empirical_translation_length(body, A, samples=100, seed=0, descent_iters=400):
    """inf of d(x, Ax) over seeded samples refined by local descent.

    Returns (estimate, argmin chart point).  For non-elliptic maps a ray
    march toward the attracting fixed point augments the Nelder-Mead local
    step, which is what makes parabolic estimates decrease to 0 with budget.
    """
    if not preserves(body, A):
        raise NotAnIsometry("the map does not preserve the body")
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    frame = body.sep_frame

    def disp(U):
        U = np.atleast_2d(U)
        V = frame.unchart(U)
        W = (M @ V.T).T
        ok = V @ body.sep > 0
        img = np.where((W @ body.sep > 0)[:, None], W, -W)
        den = img @ frame.covector
        good = ok & (den > 1e-12)
        out = np.full(len(U), np.inf)
        if np.any(good):
            UB = ((img[good] / den[good][:, None]) - frame.origin) @ frame.basis
            inside = np.array([body.margin(v / np.linalg.norm(v)) > 1e-12
                               for v in V[good]])
            d = hilbert_distance_chart(body, U[good], UB, frame)
            d = np.where(inside, d, np.inf)
            out[good] = d
        return out

    U = sample_interior(body, samples, seed=seed)
    vals = disp(U)
    best = int(np.argmin(vals))
    u0, f0 = U[best], float(vals[best])

    res = scipy.optimize.minimize(
        lambda u: float(disp(u[None, :])[0]), u0, method="Nelder-Mead",
        options={"maxfev": descent_iters, "xatol": 1e-10, "fatol": 1e-12})
    if res.fun < f0:
        u0, f0 = res.x, float(res.fun)

    # march toward the attracting fixed point while displacement decreases
    top = sorted(_real_eigenpairs(M), key=lambda p: -p[0])
    if top:
        v = top[0][1]
        p = _boundary_rep(body, v)
        if p is not None:
            target = frame.chart(body.lift(p))[0]
            step = 0.5
            u = u0.copy()
            budget = descent_iters
            while budget > 0 and step > 1e-14:
                cand = u + step * (target - u)
                f = float(disp(cand[None, :])[0])
                budget -= 1
                if np.isfinite(f) and f < f0:
                    u, u0, f0 = cand, cand, f
                else:
                    step *= 0.5
    return f0, u0


@dataclass
class JnfReport:
    blocks: list          # [(eigenvalue, multiplicity, max block size)]
    index_one: int        # largest Jordan block for eigenvalue 1
    parity_ok: bool       # i(1) odd and >= 3
    one_attains_max: bool
    passes: bool
    o_n1_necessary: bool | None = None


def parabolic_jnf_check(A, modulus_band=DEFAULT_TOL.modulus_band):
    """Jordan-structure admissibility of a unit-modulus map as a parabolic.

    Passes iff eigenvalue 1 attains the maximal block size, which is odd and
    at least 3.  In (projective) dimensions 2 and 3 the report also carries
    the necessary conditions for conjugacy into O(n,1): a single size-3 block
    at eigenvalue 1 with every other eigenvalue semisimple.
    """
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    spec = spectrum(M)
    moduli = [abs(lam) for lam, _, _ in spec.eigenvalues]
    if any(abs(m - 1.0) > modulus_band for m in moduli):
        raise NotUnitModulus("some eigenvalue modulus differs from 1")
    blocks = [(lam, mult, blk) for lam, mult, blk in spec.eigenvalues]
    i1 = 0
    for lam, _, blk in blocks:
        if abs(lam - 1.0) <= 1e-6:
            i1 = max(i1, blk)
    max_block = max(blk for _, _, blk in blocks)
    parity_ok = (i1 >= 3) and (i1 % 2 == 1)
    one_attains = i1 == max_block
    passes = parity_ok and one_attains
    n = M.shape[0] - 1
    o_n1 = None
    if n in (2, 3):
        others_semisimple = all(
            blk == 1 for lam, _, blk in blocks if abs(lam - 1.0) > 1e-6)
        o_n1 = passes and i1 == 3 and others_semisimple
    return JnfReport(blocks, i1, parity_ok, one_attains, passes, o_n1)


def invariant_pencil(body, A, fibers=32, samples=100, seed=0):
    """Invariant pencil of hyperplanes of a hyperbolic isometry.

    Center = intersection of the invariant supporting hyperplanes at the
    attracting and repelling fixed points; returns (center basis, sampled
    fiber hyperplanes crossing the body).
    """
    cls = classify(body, A)
    if cls.kind != "Hyperbolic":
        raise NotHyperbolic("invariant pencils require a hyperbolic isometry")
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    Ad = dual_action(ProjMap(M))
    pairs = _real_eigenpairs(Ad.matrix)
    if len(pairs) < 2:
        raise DegeneratePencil("dual fixed covectors not found")
    lams = [lam for lam, _ in pairs]
    phi_plus = pairs[int(np.argmax(lams))][1]
    phi_minus = pairs[int(np.argmin(lams))][1]
    for i, phi in enumerate((phi_plus, phi_minus)):
        if float(phi @ body.witness.vec) < 0:
            phi = -phi
        if i == 0:
            phi_plus = phi
        else:
            phi_minus = phi
    if min(np.linalg.norm(phi_plus - phi_minus),
           np.linalg.norm(phi_plus + phi_minus)) < 1e-9:
        raise DegeneratePencil("supporting hyperplanes coincide")
    stack = np.stack([phi_plus, phi_minus])
    _, _, vh = np.linalg.svd(stack)
    center = vh[2:].T  # basis of the codimension-2 center subspace
    # fibers crossing the body are the mixed-sign combinations: both
    # supporting covectors are nonnegative on the body, so same-sign
    # combinations stay in the dual cone and miss the interior
    ss = np.linspace(0.05, 0.95, fibers)
    fam = [ProjHyperplane((1 - s) * phi_plus - s * phi_minus) for s in ss]
    crossing = [h for h in fam if _crosses(body, h, samples, seed)]
    return center, crossing


def _crosses(body, hyp, samples, seed):
    U = sample_interior(body, min(samples, 40), seed=seed)
    vals = body.sep_frame.unchart(U) @ hyp.covector
    return bool(np.any(vals > 0) and np.any(vals < 0))


def pencil_projection(body, A, u_chart, frame=None):
    """Project a chart point to the axis along the invariant pencil fiber."""
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    frame = frame or body.sep_frame
    Ad = dual_action(ProjMap(M))
    pairs = sorted(_real_eigenpairs(Ad.matrix), key=lambda p: p[0])
    phi_minus, phi_plus = pairs[0][1], pairs[-1][1]
    top = sorted(_real_eigenpairs(M), key=lambda p: p[0])
    v_minus, v_plus = top[0][1], top[-1][1]
    x = frame.unchart(np.atleast_2d(u_chart))[0]
    # fiber through x: s with ((1-s) phi+ + s phi-) . x = 0
    a, b = float(phi_plus @ x), float(phi_minus @ x)
    s = a / (a - b)
    phi = (1 - s) * phi_plus + s * phi_minus
    # axis point on that fiber: t with phi.((1-t) v+ + t v-) = 0
    c, d = float(phi @ v_plus), float(phi @ v_minus)
    t = c / (c - d)
    y = (1 - t) * v_plus + t * v_minus
    if float(body.sep @ y) < 0:
        y = -y
    return frame.chart(y)[0]


def invariant_supporting_covector(body, A, p, tol=1e-7):
    """A supporting covector at fixed boundary point p fixed by the dual map."""
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    Ad = dual_action(ProjMap(M))
    v = body.lift(p)
    for lam, phi in _real_eigenpairs(Ad.matrix):
        if abs(float(phi @ v)) <= tol:
            if float(phi @ body.witness.vec) < 0:
                phi = -phi
            w, dirs, t = body.boundary_fan(m=64)
            finite = t < 1e290
            pts = body.sep_frame.unchart(w[None, :] + t[finite][:, None] * dirs[finite])
            if np.min(pts @ phi / np.linalg.norm(pts, axis=1)) >= -1e-6:
                return ProjHyperplane(phi)
    return None
