"""Projective linear algebra: points, hyperplanes, maps, cross-ratios, spectra.

Points live on the double cover S^n (unit representatives with a chosen
lift), maps are matrices normalized to determinant +/-1, and the spectral
machinery exposes Jordan block structure through rank sequences, which is
what the attracting/repelling subspace computations are built on.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOL
from .errors import (
    DegenerateConfiguration,
    InvalidInput,
    NonCollinear,
    NumericalFailure,
    Singular,
)


def _as_vector(coords):
    v = np.asarray(coords, dtype=float).reshape(-1)
    if v.size < 2 or not np.all(np.isfinite(v)):
        raise InvalidInput("coordinates must be a finite vector of length >= 2")
    n = np.linalg.norm(v)
    if n == 0.0:
        raise InvalidInput("zero vector does not define a projective point")
    return v / n


@dataclass(frozen=True)
class ProjPoint:
    """A point of S^n: a unit-norm representative with a chosen lift."""

    vec: np.ndarray

    def __init__(self, coords, lift_sign=1):
        v = _as_vector(coords) * (1 if lift_sign >= 0 else -1)
        v.flags.writeable = False
        object.__setattr__(self, "vec", v)

    @property
    def dim(self):
        return self.vec.size - 1

    def antipode(self):
        return ProjPoint(-self.vec)

    def same_lift(self, other, tol=DEFAULT_TOL.point_eq):
        """Equality on the double cover (representatives up to positive scale)."""
        return float(np.linalg.norm(self.vec - other.vec)) <= tol

    def same_projective(self, other, tol=DEFAULT_TOL.point_eq):
        """Equality in projective space (either lift)."""
        d = min(np.linalg.norm(self.vec - other.vec),
                np.linalg.norm(self.vec + other.vec))
        return float(d) <= tol

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.same_lift(other)

    def __hash__(self):
        return hash(tuple(np.round(self.vec, 9)))

    def __repr__(self):
        return f"ProjPoint({np.array2string(self.vec, precision=6)})"


@dataclass(frozen=True)
class ProjHyperplane:
    """A projective hyperplane, stored as a unit-norm covector."""

    covector: np.ndarray

    def __init__(self, covector):
        v = _as_vector(covector)
        v.flags.writeable = False
        object.__setattr__(self, "covector", v)

    @property
    def dim(self):
        return self.covector.size - 1

    def __repr__(self):
        return f"ProjHyperplane({np.array2string(self.covector, precision=6)})"


def incidence(point, hyperplane, tol=DEFAULT_TOL.incidence):
    """True iff the point lies on the hyperplane within tol."""
    return abs(float(hyperplane.covector @ point.vec)) <= tol


@dataclass(frozen=True)
class ProjMap:
    """Projective transformation normalized to |det| = 1."""

    matrix: np.ndarray
    det_sign: int

    def __init__(self, matrix, det_tol=DEFAULT_TOL.det):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidInput("matrix must be square")
        if not np.all(np.isfinite(m)):
            raise InvalidInput("matrix entries must be finite")
        det = float(np.linalg.det(m))
        scale = np.linalg.norm(m, ord="fro") ** m.shape[0] + 1e-300
        if abs(det) / scale < 1e-18 or det == 0.0:
            raise Singular("matrix is singular or numerically near-singular")
        m = m / abs(det) ** (1.0 / m.shape[0])
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "det_sign", 1 if det > 0 else -1)

    @property
    def dim(self):
        return self.matrix.shape[0] - 1

    def apply(self, point):
        return ProjPoint(self.matrix @ point.vec)

    def apply_hyperplane(self, hyperplane):
        # covectors transform by the inverse transpose
        return ProjHyperplane(np.linalg.solve(self.matrix.T, hyperplane.covector))

    def compose(self, other):
        return ProjMap(self.matrix @ other.matrix)

    def inverse(self):
        return ProjMap(np.linalg.inv(self.matrix))

    @staticmethod
    def identity(dim):
        return ProjMap(np.eye(dim + 1))

    def __repr__(self):
        return f"ProjMap(det_sign={self.det_sign}, matrix=\n{np.array2string(self.matrix, precision=6)})"


def compose(a, b):
    return a.compose(b)


def cross_ratio(x, a, b, y, tol=DEFAULT_TOL.collinear):
    """Cross ratio of four collinear points ordered x, a, b, y.

    Evaluates (|b-x| |a-y|) / (|b-y| |a-x|) through 2x2 determinants in an
    orthonormal basis of the spanned plane, which equals the affine-chart
    expression in any chart containing all four points.
    """
    pts = [p.vec if isinstance(p, ProjPoint) else _as_vector(p) for p in (x, a, b, y)]
    stack = np.stack(pts)
    svals = np.linalg.svd(stack, compute_uv=False)
    if svals.size > 2 and svals[2] > tol * svals[0]:
        raise NonCollinear("the four points do not span a projective line")
    # orthonormal basis of the 2-dimensional span
    _, _, vh = np.linalg.svd(stack)
    basis = vh[:2]
    c = stack @ basis.T  # (4, 2) coordinates on the line

    def det2(p, q):
        return c[p, 0] * c[q, 1] - c[p, 1] * c[q, 0]

    ix, ia, ib, iy = 0, 1, 2, 3
    num = det2(ix, ib) * det2(iy, ia)
    den = det2(iy, ib) * det2(ix, ia)
    if abs(den) <= tol * max(1.0, abs(num)):
        raise DegenerateConfiguration("cross-ratio denominator distances vanish")
    return num / den


class Spectrum(NamedTuple):
    """Eigenvalue clusters (value, algebraic multiplicity, max Jordan block)."""

    eigenvalues: tuple
    spectral_radius: float
    power: tuple  # (spectral radius, max block size among modulus-maximal clusters)


def _cluster_eigenvalues(vals, cluster_tol):
    """Group eigenvalues within relative distance cluster_tol of each other."""
    order = np.argsort(-np.abs(vals), kind="stable")
    vals = vals[order]
    scale = max(1.0, float(np.max(np.abs(vals))))
    used = np.zeros(len(vals), dtype=bool)
    clusters = []
    for i in range(len(vals)):
        if used[i]:
            continue
        group = [i]
        used[i] = True
        for j in range(i + 1, len(vals)):
            if not used[j] and abs(vals[j] - vals[i]) <= cluster_tol * scale:
                group.append(j)
                used[j] = True
        mean = complex(np.mean(vals[group]))
        if abs(mean.imag) <= cluster_tol * scale:
            mean = complex(mean.real, 0.0)
        clusters.append((mean, len(group)))
    return clusters


def _rank_sequence_blocks(A, lam, mult, rel_tol):
    """Largest Jordan block for eigenvalue lam from ranks of (A - lam I)^k."""
    n = A.shape[0]
    B = A.astype(complex) - lam * np.eye(n)
    nb = np.linalg.norm(B, 2)
    if nb == 0.0:
        return 1
    B = B / nb
    prev_rank = n
    P = np.eye(n, dtype=complex)
    max_block = 1
    for k in range(1, mult + 1):
        P = P @ B
        nP = np.linalg.norm(P, 2)
        if nP <= rel_tol:
            rank = 0
        else:
            P = P / nP
            s = np.linalg.svd(P, compute_uv=False)
            rank = int(np.sum(s > rel_tol * s[0]))
        if prev_rank - rank > 0:
            max_block = k
        if rank == prev_rank or rank == n - mult:
            break
        prev_rank = rank
    return max_block


def spectrum(A, cluster_tol=DEFAULT_TOL.eig_cluster):
    """Eigenvalue clusters with multiplicities, Jordan block sizes, and power.

    The clustering radius is configurable because Jordan structure is
    discontinuous; nearby eigenvalues within cluster_tol (relative) are
    treated as one eigenvalue.
    """
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    if not np.all(np.isfinite(M)):
        raise InvalidInput("matrix entries must be finite")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue computation failed: {exc}") from exc
    clusters = _cluster_eigenvalues(vals, cluster_tol)
    rel_rank_tol = max(cluster_tol, M.shape[0] * np.finfo(float).eps * 1e2)
    entries = []
    for lam, mult in clusters:
        block = 1 if mult == 1 else _rank_sequence_blocks(M, lam, mult, rel_rank_tol)
        entries.append((lam, mult, block))
    radius = max(abs(lam) for lam, _, _ in entries)
    band = cluster_tol * max(1.0, radius)
    top_block = max(blk for lam, _, blk in entries if abs(lam) >= radius - band)
    return Spectrum(tuple(entries), float(radius), (float(radius), int(top_block)))


class AttractingSubspaces(NamedTuple):
    E: np.ndarray       # (n+1, dim E) basis of the attracting subspace
    K: np.ndarray       # (n+1, dim K) basis of the complementary invariant subspace
    method: str


def _poly_factors(M, spec, band):
    """Real factors of h(t) = char poly / prod over max-power eigenvalues."""
    r, top_block = spec.power
    factors = []
    seen_conj = set()
    for lam, mult, block in spec.eigenvalues:
        in_top = abs(abs(lam) - r) <= band * max(1.0, r) and block == top_block
        if abs(lam.imag) == 0.0:
            expo = mult - (1 if in_top else 0)
            if expo > 0:
                factors.append((np.eye(M.shape[0]) * (-lam.real) + M, expo))
        else:
            key = (round(lam.real, 9), round(abs(lam.imag), 9))
            if key in seen_conj:
                continue
            seen_conj.add(key)
            expo = mult - (1 if in_top else 0)
            if expo > 0:
                quad = M @ M - 2.0 * lam.real * M + (abs(lam) ** 2) * np.eye(M.shape[0])
                factors.append((quad, expo))
    return factors


def _eval_product(factors, n):
    H = np.eye(n)
    for mat, expo in factors:
        base = mat / max(np.linalg.norm(mat, 2), 1e-300)
        for _ in range(expo):
            H = H @ base
            nH = np.linalg.norm(H, 2)
            if nH <= 1e-280:
                return np.zeros((n, n))
            H = H / nH
    return H


def attracting_subspaces(A, cluster_tol=DEFAULT_TOL.eig_cluster, rank_tol=1e-8):
    """Splitting V = E + K into the attracting subspace and its invariant complement.

    E is spanned by eigenvectors of the maximum-power Jordan blocks; K is the
    kernel of the same polynomial in A.  Iterating A attracts points outside
    P(K) to P(E).
    """
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    n = M.shape[0]
    spec = spectrum(M, cluster_tol)
    band = cluster_tol
    factors = _poly_factors(M, spec, band)

    def split(H):
        U, s, Vh = np.linalg.svd(H)
        if s[0] <= 1e-300:
            return np.zeros((n, 0)), np.eye(n)
        rank = int(np.sum(s > rank_tol * s[0]))
        return U[:, :rank], Vh[rank:].T

    H = _eval_product(factors, n)
    E, K = split(H)
    method = "factored"
    ok = (E.shape[1] + K.shape[1] == n) and _invariant(M, E, 1e-6) and _invariant(M, K, 1e-6)
    if not ok:
        # Schur fallback: evaluate the same factor product in triangular
        # coordinates, which keeps intermediate products better scaled.
        T, Q = scipy.linalg.schur(M, output="complex")
        factors_t = _poly_factors(np.asarray(T), spectrum(M, cluster_tol), band)
        Ht = _eval_product(factors_t, n)
        H = np.real(Q @ Ht @ Q.conj().T)
        E, K = split(H)
        method = "schur"
        if E.shape[1] + K.shape[1] != n:
            raise NumericalFailure("attracting-subspace split is inconsistent")
    return AttractingSubspaces(E, K, method)


def _invariant(M, basis, tol):
    if basis.shape[1] == 0:
        return True
    img = M @ basis
    proj = basis @ (basis.T @ img)
    return float(np.linalg.norm(img - proj, 2)) <= tol * max(1.0, np.linalg.norm(img, 2))


def dual_action(A, tol=DEFAULT_TOL.det):
    """Action of A on the dual space: transpose of the inverse."""
    M = A.matrix if isinstance(A, ProjMap) else np.asarray(A, dtype=float)
    det = float(np.linalg.det(M))
    if abs(det) < tol * 1e-6:
        raise Singular("map is not invertible")
    return ProjMap(np.linalg.inv(M).T)


# symmetric-square representation, used by the positive-definite cone example
def sym_basis(m):
    """Basis of Sym(m): E_ii then E_ij + E_ji in row-wise upper-triangle order."""
    out = []
    for i in range(m):
        for j in range(i, m):
            E = np.zeros((m, m))
            if i == j:
                E[i, i] = 1.0
            else:
                E[i, j] = E[j, i] = 1.0
            out.append(E)
    return out


def sym_to_vec(X):
    m = X.shape[0]
    return np.array([X[i, j] for i in range(m) for j in range(i, m)])


def vec_to_sym(v):
    d = len(v)
    m = int((np.sqrt(8 * d + 1) - 1) / 2)
    X = np.zeros((m, m))
    k = 0
    for i in range(m):
        for j in range(i, m):
            X[i, j] = X[j, i] = v[k]
            k += 1
    return X


def sym_square_rep(B):
    """Matrix of X -> B X B^T acting on Sym(m) in the sym_basis coordinates."""
    B = np.asarray(B, dtype=float)
    basis = sym_basis(B.shape[0])
    cols = [sym_to_vec(B @ E @ B.T) for E in basis]
    return np.column_stack(cols)
