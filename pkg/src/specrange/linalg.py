"""Dense complex matrix arithmetic for desk-scale problems (n <= 256).

Induced operator norms for the l1 / l2 / linf vector norms, eigenvalues via
the characteristic polynomial, polynomial functional calculus, and resolvent
norms.  All functions are pure; inputs are validated once and never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64

KINDS = ("l1", "l2", "linf")

POWER_RTOL = 1e-12
POWER_MAXIT = 100_000
ABERTH_MAXIT = 10_000

_EPS = float(np.finfo(np.float64).eps)


class ConvergenceError(RuntimeError):
    """An iterative scheme ran out of its iteration budget.

    Carries the last iterate (and a residual, when meaningful) so callers
    can inspect how far the scheme got.
    """

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class SingularMatrixError(ValueError):
    """A linear solve met a pivot too small to trust."""

    def __init__(self, message, pivot=0.0):
        super().__init__(message)
        self.pivot = float(pivot)


def check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unsupported norm tag {kind!r}; expected one of {KINDS}")
    return kind


def as_matrix(a):
    """Validate and convert to a square complex128 array."""
    T = np.array(a, dtype=np.complex128, order="C")
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise ValueError(f"field 'entries': matrix must be square and nonempty, got shape {T.shape}")
    if not np.all(np.isfinite(T.view(np.float64))):
        raise ValueError("field 'entries': matrix entries must be finite")
    return T


def identity(n):
    return np.eye(n, dtype=np.complex128)


def jordan_block(n):
    """The n x n nilpotent upper-shift matrix."""
    return np.eye(n, k=1, dtype=np.complex128)


def transpose(T):
    """Plain transpose (no conjugation): the Banach adjoint of a matrix
    acting on (C^n, l^p) is the transpose acting on the dual (C^n, l^q)."""
    return as_matrix(T).T.copy()


# ---------------------------------------------------------------------------
# power iteration
# ---------------------------------------------------------------------------

def _aux_start(n):
    # Fixed real-valued secondary start vector.  Real entries matter: they
    # make the iteration for a conjugated Hermitian matrix produce exactly
    # conjugated iterates, so transpose-dual computations agree bitwise.
    rng = SplitMix64(0xA5A5_1234_5678_9ABC ^ n)
    return np.array([0.5 + rng.uniform() for _ in range(n)])


def hermitian_top_eigenvalue(H, rtol=POWER_RTOL, maxit=POWER_MAXIT, psd=False):
    """Largest eigenvalue of each Hermitian matrix in a (..., n, n) stack.

    Power iteration on H + cI (c = 0 for declared-PSD input, otherwise a
    row-sum bound on the spectral radius so the target dominates in
    modulus), run on a two-dimensional subspace with Rayleigh-Ritz
    extraction: a near-degenerate top pair is then resolved exactly instead
    of stalling the iteration.  Start vectors are fixed, real and
    deterministic; an iterate that collapses into a one-dimensional or zero
    subspace is restarted with a perturbed vector.
    """
    H = np.asarray(H, dtype=np.complex128)
    single = H.ndim == 2
    if single:
        return _hermitian_top_scalar(H, rtol, maxit, psd)
    Hs = H.reshape(-1, H.shape[-2], H.shape[-1])
    b, n, _ = Hs.shape
    if n == 1:
        return Hs[:, 0, 0].real.copy().reshape(H.shape[:-2])
    if psd:
        c = np.zeros(b)
        M = Hs
        scale = np.maximum(np.abs(Hs).sum(axis=2).max(axis=1), 1e-300)
    else:
        c = np.abs(Hs).sum(axis=2).max(axis=1)
        M = Hs + c[:, None, None] * np.eye(n)
        scale = np.maximum(c, 1e-300)

    ones = np.ones(n) / np.sqrt(n)
    aux = _aux_start(n)
    aux = aux - (ones @ aux) * ones
    aux = aux / np.linalg.norm(aux)
    v1 = np.repeat(ones[None, :], b, axis=0).astype(np.complex128)
    v2 = np.repeat(aux[None, :], b, axis=0).astype(np.complex128)

    rho = np.zeros(b)
    hits = np.zeros(b, dtype=np.int64)
    res_tol = np.maximum(10.0 * rtol * scale, 1e-300)
    ok = False
    for _ in range(maxit):
        w1 = np.einsum("bij,bj->bi", M, v1)
        w2 = np.einsum("bij,bj->bi", M, v2)
        # Ritz values of the 2x2 projection of M onto span{v1, v2}
        a11 = np.einsum("bi,bi->b", np.conj(v1), w1).real
        a22 = np.einsum("bi,bi->b", np.conj(v2), w2).real
        a12 = np.einsum("bi,bi->b", np.conj(v1), w2)
        mid = 0.5 * (a11 + a22)
        half = 0.5 * (a11 - a22)
        top = mid + np.sqrt(half * half + np.abs(a12) ** 2)
        rho = top
        # top Ritz vector y = alpha v1 + beta v2; for Hermitian M its
        # residual norm ||M y - top y|| bounds the eigenvalue error, so
        # this criterion cannot fire on a deceptive plateau.  The two
        # parallel eigenvector formulas degrade at opposite corners, so
        # take whichever has the larger norm.
        alpha_a = a12
        beta_a = (top - a11).astype(np.complex128)
        alpha_b = (top - a22).astype(np.complex128)
        beta_b = np.conj(a12)
        norm_a = np.sqrt(np.abs(alpha_a) ** 2 + np.abs(beta_a) ** 2)
        norm_b = np.sqrt(np.abs(alpha_b) ** 2 + np.abs(beta_b) ** 2)
        use_a = norm_a >= norm_b
        alpha = np.where(use_a, alpha_a, alpha_b)
        beta = np.where(use_a, beta_a, beta_b)
        ynorm = np.where(use_a, norm_a, norm_b)
        degen = ynorm <= 1e-30 * np.maximum(np.abs(top), 1.0)
        alpha = np.where(degen, 1.0, alpha)
        beta = np.where(degen, 0.0, beta)
        ynorm = np.where(degen, 1.0, ynorm)
        alpha = alpha / ynorm
        beta = beta / ynorm
        resid = (alpha[:, None] * w1 + beta[:, None] * w2
                 - top[:, None] * (alpha[:, None] * v1 + beta[:, None] * v2))
        rnorm = np.linalg.norm(resid, axis=1)
        hits = np.where(rnorm <= res_tol, hits + 1, 0)
        if np.all(hits >= 2):
            ok = True
            break
        # subspace update with modified Gram-Schmidt
        n1 = np.linalg.norm(w1, axis=1)
        dead = n1 <= 1e-150 * np.maximum(scale, 1.0)
        if np.any(dead):
            w1 = w1.copy()
            w1[dead] = v1[dead] + 0.25 * aux
            n1 = np.linalg.norm(w1, axis=1)
        v1 = w1 / n1[:, None]
        proj = np.einsum("bi,bi->b", np.conj(v1), w2)
        w2 = w2 - proj[:, None] * v1
        n2 = np.linalg.norm(w2, axis=1)
        collapsed = n2 <= 1e-12 * np.maximum(n1, 1e-300)
        if np.any(collapsed):
            w2 = w2.copy()
            w2[collapsed] = aux
            proj = np.einsum("bi,bi->b", np.conj(v1), w2)
            w2 = w2 - proj[:, None] * v1
            n2 = np.linalg.norm(w2, axis=1)
        v2 = w2 / np.maximum(n2, 1e-300)[:, None]
    if not ok:
        raise ConvergenceError(
            f"power iteration did not converge within {maxit} sweeps",
            last_iterate=v1, residual=float(np.max(np.abs(rho))))
    return (rho - c).reshape(H.shape[:-2])


def _hermitian_top_scalar(H, rtol, maxit, psd):
    # same iteration as the batched path, written with 2-D ops to keep the
    # per-sweep overhead small for one-off calls
    n = H.shape[0]
    if n == 1:
        return float(H[0, 0].real)
    if psd:
        c = 0.0
        M = H
        scale = max(float(np.abs(H).sum(axis=1).max()), 1e-300)
    else:
        c = float(np.abs(H).sum(axis=1).max())
        M = H + c * np.eye(n)
        scale = max(c, 1e-300)
    ones = np.ones(n) / np.sqrt(n)
    aux = _aux_start(n)
    aux = aux - (ones @ aux) * ones
    aux = aux / np.linalg.norm(aux)
    v1 = ones.astype(np.complex128)
    v2 = aux.astype(np.complex128)
    res_tol = max(10.0 * rtol * scale, 1e-300)
    hits = 0
    rho = 0.0
    for _ in range(maxit):
        w1 = M @ v1
        w2 = M @ v2
        a11 = np.vdot(v1, w1).real
        a22 = np.vdot(v2, w2).real
        a12 = np.vdot(v1, w2)
        mid = 0.5 * (a11 + a22)
        half = 0.5 * (a11 - a22)
        top = mid + np.sqrt(half * half + abs(a12) ** 2)
        rho = top
        norm_a = np.hypot(abs(a12), top - a11)
        norm_b = np.hypot(top - a22, abs(a12))
        if norm_a >= norm_b:
            alpha, beta, ynorm = a12, top - a11, norm_a
        else:
            alpha, beta, ynorm = top - a22, np.conj(a12), norm_b
        if ynorm <= 1e-30 * max(abs(top), 1.0):
            alpha, beta, ynorm = 1.0, 0.0, 1.0
        alpha /= ynorm
        beta /= ynorm
        resid = alpha * w1 + beta * w2 - top * (alpha * v1 + beta * v2)
        hits = hits + 1 if np.linalg.norm(resid) <= res_tol else 0
        if hits >= 2:
            return float(top - c)
        n1 = np.linalg.norm(w1)
        if n1 <= 1e-150 * max(scale, 1.0):
            w1 = v1 + 0.25 * aux
            n1 = np.linalg.norm(w1)
        v1 = w1 / n1
        w2 = w2 - np.vdot(v1, w2) * v1
        n2 = np.linalg.norm(w2)
        if n2 <= 1e-12 * max(n1, 1e-300):
            w2 = aux - np.vdot(v1, aux) * v1
            n2 = np.linalg.norm(w2)
        v2 = w2 / max(n2, 1e-300)
    raise ConvergenceError(
        f"power iteration did not converge within {maxit} sweeps",
        last_iterate=v1, residual=float(abs(rho)))


def sigma_max(M, rtol=POWER_RTOL, maxit=POWER_MAXIT):
    """Largest singular value(s) of a (..., n, n) stack via power iteration
    on the positive semidefinite Gram matrix M* M."""
    M = np.asarray(M, dtype=np.complex128)
    H = np.swapaxes(M, -1, -2).conj() @ M
    lam = hermitian_top_eigenvalue(H, rtol=rtol, maxit=maxit, psd=True)
    return np.sqrt(np.maximum(lam, 0.0))


def induced_norm(T, kind):
    """Operator norm of T induced by the l1, l2 or linf vector norm."""
    T = as_matrix(T)
    check_kind(kind)
    if kind == "l1":
        return float(np.abs(T).sum(axis=0).max())
    if kind == "linf":
        return float(np.abs(T).sum(axis=1).max())
    return float(sigma_max(T))


def batched_norm(Ms, kind):
    """Induced norms of a stack of matrices (B, n, n) -> (B,)."""
    Ms = np.asarray(Ms, dtype=np.complex128)
    check_kind(kind)
    if kind == "l1":
        return np.abs(Ms).sum(axis=1).max(axis=1)
    if kind == "linf":
        return np.abs(Ms).sum(axis=2).max(axis=1)
    return sigma_max(Ms)


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with algebraic multiplicity, sorted by (re, im), plus the
    largest characteristic-polynomial modulus at the computed roots."""
    eigenvalues: np.ndarray
    residual: float


def char_poly(T):
    """Monic characteristic polynomial det(zI - T) by the Faddeev-LeVerrier
    recursion; coefficients low order first."""
    T = as_matrix(T)
    n = T.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    M = np.eye(n, dtype=np.complex128)
    prev = 0.0 + 0.0j
    for k in range(1, n + 1):
        if k > 1:
            M = T @ M + prev * np.eye(n)
        a = -np.trace(T @ M) / k
        coeffs[n - k] = a
        prev = a
    return coeffs


def _horner_with_error(c, z):
    """Evaluate p, p' and a running rounding-error bound at the points z."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    err = np.zeros(z.shape, dtype=np.float64)
    az = np.abs(z)
    for ck in c[::-1]:
        dp = dp * z + p
        p = p * z + ck
        err = err * az + np.abs(p)
    # classic running bound: |fl(p) - p| <= ~2 deg eps * sum |c_k||z|^k
    return p, dp, (2 * len(c)) * _EPS * err


def aberth_roots(coeffs, maxit=ABERTH_MAXIT):
    """All roots of a complex polynomial by the Aberth-Ehrlich simultaneous
    iteration.  Returns (roots, residual) with residual = max |p(root)|."""
    c = np.asarray(coeffs, dtype=np.complex128)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    d = int(nz[-1])
    if d == 0:
        return np.array([], dtype=np.complex128), 0.0
    c = c[:d + 1] / c[d]
    center = -c[d - 1] / d
    radius = 1.0 + float(np.max(np.abs(c[:-1])))
    z = center + radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.7))
    converged = False
    for _ in range(maxit):
        p, dp, err = _horner_with_error(c, z)
        small = np.abs(p) <= err
        safe_dp = np.where(dp == 0, 1.0, dp)
        newton = np.where(small, 0.0, p / safe_dp)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        if np.any(diff == 0):
            z = z + 1e-12 * (1.0 + np.abs(z)) * np.exp(1j * np.arange(d))
            continue
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - newton * s
        w = np.where(np.abs(denom) > 1e-12, newton / np.where(denom == 0, 1.0, denom), newton)
        z = z - w
        if np.all(small | (np.abs(w) <= 1e-14 * (1.0 + np.abs(z)))):
            converged = True
            break
    p, _, _ = _horner_with_error(c, z)
    residual = float(np.max(np.abs(p))) if d else 0.0
    if not converged:
        raise ConvergenceError(
            f"root iteration did not converge within {maxit} sweeps",
            last_iterate=z, residual=residual)
    return z, residual


def eigenvalues(T):
    """Spectrum of T: roots of the characteristic polynomial, sorted
    lexicographically by (re, im).

    The characteristic-polynomial route is simple to verify at desk scale
    but is not backward stable for large n or wild conditioning; the
    residual field reports max |chi(root)| so callers can judge.
    """
    T = as_matrix(T)
    if T.shape[0] > 256:
        raise ValueError("eigenvalues supports n <= 256")
    roots, residual = aberth_roots(char_poly(T))
    order = np.lexsort((roots.imag, roots.real))
    return Spectrum(eigenvalues=roots[order], residual=residual)


# ---------------------------------------------------------------------------
# polynomial calculus
# ---------------------------------------------------------------------------

def poly_apply(coeffs, T):
    """Evaluate p(T) by the matrix Horner scheme."""
    T = as_matrix(T)
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if c.size == 0:
        raise ValueError("field 'coeffs': coefficient list must be nonempty")
    n = T.shape[0]
    P = c[-1] * np.eye(n, dtype=np.complex128)
    for ck in c[-2::-1]:
        P = P @ T + ck * np.eye(n)
    return P


def toeplitz_calculus(coeffs, n):
    """p(J_n) in closed form: the upper-triangular Toeplitz matrix whose
    first row is (c_0, ..., c_{n-1}).  Exact structure oracle for
    poly_apply on Jordan blocks."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    M = np.zeros((n, n), dtype=np.complex128)
    for k in range(min(n, c.size)):
        M += c[k] * np.eye(n, k=k)
    return M


# ---------------------------------------------------------------------------
# linear solves / resolvent
# ---------------------------------------------------------------------------

def _lu_factor(A):
    """Partial-pivot LU.  Returns (LU, perm); raises SingularMatrixError
    (carrying the offending pivot magnitude) when a pivot falls below the
    roundoff scale of the matrix."""
    A = A.copy()
    n = A.shape[0]
    perm = np.arange(n)
    amax = float(np.max(np.abs(A))) if A.size else 0.0
    floor = n * _EPS * max(amax, 1e-300)
    for k in range(n):
        j = k + int(np.argmax(np.abs(A[k:, k])))
        if j != k:
            A[[k, j]] = A[[j, k]]
            perm[[k, j]] = perm[[j, k]]
        piv = abs(A[k, k])
        if piv <= floor:
            raise SingularMatrixError(
                f"matrix is numerically singular (pivot {piv:.3e})", pivot=piv)
        A[k + 1:, k] /= A[k, k]
        if k + 1 < n:
            A[k + 1:, k + 1:] -= np.outer(A[k + 1:, k], A[k, k + 1:])
    return A, perm


def _lu_solve(LU, perm, B):
    X = B[perm].astype(np.complex128, copy=True)
    n = LU.shape[0]
    for k in range(n):        # forward substitution, unit lower triangle
        X[k + 1:] -= np.outer(LU[k + 1:, k], X[k])
    for k in range(n - 1, -1, -1):
        X[k] /= LU[k, k]
        X[:k] -= np.outer(LU[:k, k], X[k])
    return X


def solve(A, B):
    """Solve A X = B by partial-pivot LU."""
    A = as_matrix(A)
    LU, perm = _lu_factor(A)
    return _lu_solve(LU, perm, np.asarray(B, dtype=np.complex128))


def matrix_inverse(A):
    return solve(A, np.eye(as_matrix(A).shape[0], dtype=np.complex128))


def resolvent_norm(T, lam, kind):
    """||(lam I - T)^{-1}|| in the requested induced norm."""
    T = as_matrix(T)
    check_kind(kind)
    A = complex(lam) * np.eye(T.shape[0]) - T
    return induced_norm(matrix_inverse(A), kind)
