"""Algebraic numerical ranges as sampled support functions.

A region is stored as a support function sampled on an angle grid together
with the polygon obtained by intersecting the supporting half-planes
Re(e^{-i theta} z) <= r_theta.  All constructions are OUTER approximations:
a finite intersection of half-planes contains the full intersection, so
every region returned here is a superset of the true range.  Inner
certification comes only from the containment checks on the eigenvalues of
the generating matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import (
    ConvergenceError,
    as_matrix,
    check_kind,
    hermitian_top_eigenvalue,
    induced_norm,
)


class GridMismatchError(ValueError):
    """Two regions were combined but their angle grids differ."""


class RegionConsistencyError(RuntimeError):
    """A computed region failed its internal consistency check (it must
    contain the spectrum of the generating matrix)."""


@dataclass(frozen=True)
class SupportFunction:
    """Sampled support function: angles strictly increasing in [0, 2pi)."""
    angles: np.ndarray
    radii: np.ndarray
    norm_kind: str
    method: str           # "closed_form" | "limit_scheme"


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float


@dataclass(frozen=True)
class ConvexRegion:
    """Support samples plus the boundary polygon they induce (counter-
    clockwise, duplicates removed)."""
    support: SupportFunction
    vertices: np.ndarray

    @property
    def angles(self):
        return self.support.angles

    @property
    def radii(self):
        return self.support.radii


def theta_grid(m):
    return np.arange(m) * (2.0 * np.pi / m)


# ---------------------------------------------------------------------------
# support radii
# ---------------------------------------------------------------------------

def _support_l1_grid(T, thetas):
    # max over columns of (off-diagonal absolute column sum + Re(e^{-i t} diag));
    # the off-diagonal part is rotation invariant.
    off = np.abs(T).sum(axis=0) - np.abs(np.diag(T))
    rot = np.exp(-1j * np.asarray(thetas, dtype=np.float64))[:, None] * np.diag(T)[None, :]
    return (off[None, :] + rot.real).max(axis=1)


def _support_l2_grid(T, thetas):
    # top eigenvalue of the Hermitian part of e^{-i t} T, batched over the grid
    ph = np.exp(-1j * np.asarray(thetas, dtype=np.float64))
    H = 0.5 * (ph[:, None, None] * T[None] + np.conj(ph)[:, None, None] * T.conj().T[None])
    return np.atleast_1d(hermitian_top_eigenvalue(H))


def _h_value(A, t, kind):
    """h(t) = ||A + tI|| - t for the limit scheme, evaluated without
    catastrophic cancellation."""
    if kind in ("l1", "linf"):
        B = A if kind == "l1" else A.T
        off = np.abs(B).sum(axis=0) - np.abs(np.diag(B))
        z = np.diag(B)
        # |z + t| - t = (|z|^2 + 2 t Re z) / (|z + t| + t)
        stable = (np.abs(z) ** 2 + 2.0 * t * z.real) / (np.abs(z + t) + t)
        return float((off + stable).max())
    # l2: ||A + tI||^2 = t^2 + t * lammax((A + A*) + A*A / t)
    Bt = (A + A.conj().T) + (A.conj().T @ A) / t
    mu = float(hermitian_top_eigenvalue(Bt))
    return t * mu / (np.sqrt(max(t * t + t * mu, 0.0)) + t)


def _support_limit(T, theta, kind, tol):
    """Generic fallback: h(t) = ||e^{-i theta}T + tI|| - t is nonincreasing
    and converges to the support radius; sample t on doubling steps and stop
    once two consecutive decrements fall below tol."""
    A = np.exp(-1j * theta) * T
    t0 = max(1.0, induced_norm(T, kind))
    prev = None
    small = 0
    h = None
    for k in range(61):
        t = t0 * 2.0 ** k
        h = _h_value(A, t, kind)
        if prev is not None:
            small = small + 1 if prev - h < tol else 0
            if small >= 2:
                return h
        prev = h
    raise ConvergenceError(
        "limit scheme did not settle within 60 doublings",
        last_iterate=(t0 * 2.0 ** 60, h))


def support_radii(T, thetas, kind, method="closed_form", tol=1e-8):
    """Support radii r_theta(T) = inf_t (||e^{-i theta}T + tI|| - t) on a
    grid of angles."""
    T = as_matrix(T)
    check_kind(kind)
    if method == "closed_form":
        if kind == "l1":
            return _support_l1_grid(T, thetas)
        if kind == "linf":
            # row form via duality: identical code path on the transpose,
            # which keeps l1/linf dual values exactly equal
            return _support_l1_grid(T.T, thetas)
        return _support_l2_grid(T, thetas)
    if method != "limit_scheme":
        raise ValueError(f"unknown support method {method!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    return np.array([_support_limit(T, th, kind, tol) for th in np.asarray(thetas, dtype=np.float64)])


def support_radius(T, theta, kind, tol=1e-8, method="closed_form"):
    """Single-angle support radius; see support_radii."""
    return float(support_radii(T, [float(theta)], kind, method=method, tol=tol)[0])


# ---------------------------------------------------------------------------
# polygon construction
# ---------------------------------------------------------------------------

def _vertices_from_support(angles, radii, dedup_tol):
    # vertex i solves the pair of tangent-line equations at angles i, i+1;
    # for exact support data of a convex set these are exactly the polygon
    # vertices (possibly repeated where tangent lines concur)
    a1 = angles
    a2 = np.roll(angles, -1)
    r1 = radii
    r2 = np.roll(radii, -1)
    det = np.sin(a2 - a1)
    x = (r1 * np.sin(a2) - r2 * np.sin(a1)) / det
    y = (r2 * np.cos(a1) - r1 * np.cos(a2)) / det
    v = x + 1j * y
    keep = [v[0]]
    for z in v[1:]:
        if abs(z - keep[-1]) > dedup_tol:
            keep.append(z)
    if len(keep) > 1 and abs(keep[0] - keep[-1]) <= dedup_tol:
        keep.pop()
    return np.asarray(keep, dtype=np.complex128)


def region_from_support(angles, radii, kind, method, scale=None):
    """Build a ConvexRegion from support samples.  `scale` controls the
    vertex deduplication tolerance 1e-12 * (1 + scale)."""
    angles = np.asarray(angles, dtype=np.float64)
    radii = np.asarray(radii, dtype=np.float64)
    if angles.size < 3:
        raise ValueError("need at least 3 support angles")
    if angles.shape != radii.shape:
        raise ValueError("angles and radii must have matching length")
    if scale is None:
        scale = float(np.max(np.abs(radii)))
    verts = _vertices_from_support(angles, radii, 1e-12 * (1.0 + scale))
    return ConvexRegion(SupportFunction(angles, radii, kind, method), verts)


def _check_contains_spectrum(T, region, scale):
    # Base containment tolerance 1e-8 * (1 + ||T||).  Repeated eigenvalues
    # are computed as root clusters whose spread reflects their intrinsic
    # conditioning, so each eigenvalue additionally gets its nearest-
    # neighbour gap (capped) as slack.
    ev = linalg.eigenvalues(T).eigenvalues
    base = 1e-8 * (1.0 + scale)
    cap = 1e-3 * (1.0 + scale)
    for j, z in enumerate(ev):
        gap = 0.0
        if ev.size > 1:
            others = np.abs(np.delete(ev, j) - z)
            gap = min(float(others.min()), cap)
        d = region_distance(region, z)
        if d > base + gap:
            raise RegionConsistencyError(
                f"an eigenvalue escapes the computed region by {d:.3e}; "
                "the half-plane intersection is numerically inconsistent")


def range_polygon(T, kind, m=360, method="closed_form", tol=1e-8):
    """Outer polygon approximation of the algebraic numerical range on a
    uniform m-point angle grid.  The eigenvalues of T are checked to lie
    inside (within 1e-8 * (1 + ||T||))."""
    T = as_matrix(T)
    check_kind(kind)
    if m < 8:
        raise ValueError("grid must have at least 8 angles")
    th = theta_grid(m)
    r = support_radii(T, th, kind, method=method, tol=tol)
    scale = induced_norm(T, "l1")
    region = region_from_support(th, r, kind, method, scale=scale)
    _check_contains_spectrum(T, region, scale)
    return region


def gershgorin_disks(T):
    """Column Gershgorin disks D(t_jj, sum_{k != j} |t_kj|)."""
    T = as_matrix(T)
    off = np.abs(T).sum(axis=0) - np.abs(np.diag(T))
    return [Disk(complex(T[j, j]), float(off[j])) for j in range(T.shape[0])]


def gershgorin_hull_l1(T, m=360):
    """Exact l1-induced range: the closed convex hull of the column
    Gershgorin disks, with support function
    rho(theta) = max_j (Re(e^{-i theta} t_jj) + sum_{k != j} |t_kj|)."""
    T = as_matrix(T)
    if m < 8:
        raise ValueError("grid must have at least 8 angles")
    th = theta_grid(m)
    r = _support_l1_grid(T, th)
    scale = induced_norm(T, "l1")
    region = region_from_support(th, r, "l1", "closed_form", scale=scale)
    _check_contains_spectrum(T, region, scale)
    return region


def range_disks(T, kind, lam_grid, m=360):
    """Outer approximation by intersecting the disks D(-lam, ||T + lam I||)
    over a finite grid of shifts; each disk contributes its tangent
    half-planes on the shared theta grid."""
    T = as_matrix(T)
    check_kind(kind)
    lam = np.atleast_1d(np.asarray(lam_grid, dtype=np.complex128))
    if lam.size == 0:
        raise ValueError("field 'lam_grid': must be nonempty")
    th = theta_grid(m)
    ph = np.exp(-1j * th)
    rows = []
    eye = np.eye(T.shape[0])
    for l in lam:
        radius = induced_norm(T + complex(l) * eye, kind)
        rows.append((ph * (-complex(l))).real + radius)
    r = np.min(rows, axis=0)
    return region_from_support(th, r, kind, "closed_form",
                               scale=induced_norm(T, "l1"))


# ---------------------------------------------------------------------------
# region geometry
# ---------------------------------------------------------------------------

def region_distance(A, lam):
    """max(0, max_theta (Re(e^{-i theta} lam) - r_theta)): zero inside, and
    a lower bound on the Euclidean distance outside."""
    proj = (np.exp(-1j * A.angles) * complex(lam)).real
    return float(max(0.0, np.max(proj - A.radii)))


def region_contains(A, lam, tol=0.0):
    proj = (np.exp(-1j * A.angles) * complex(lam)).real
    return bool(np.all(proj - A.radii <= tol))


def region_diameter(A):
    """Diameter from opposite support pairs on uniform even grids (exact for
    the sampled directions), otherwise from the vertex set."""
    m = A.angles.size
    if m % 2 == 0 and abs(A.angles[0]) == 0.0 and np.allclose(np.diff(A.angles), 2 * np.pi / m):
        return float(np.max(A.radii + np.roll(A.radii, m // 2)))
    v = A.vertices
    if v.size < 2:
        return 0.0
    return float(np.max(np.abs(v[:, None] - v[None, :])))


def hausdorff(A, B):
    """Hausdorff distance of two regions sharing an angle grid, computed as
    the sup-norm of the support-function difference (an identity for convex
    compact sets, adopted as the definition at the grid level)."""
    if A.angles.shape != B.angles.shape or not np.array_equal(A.angles, B.angles):
        raise GridMismatchError("regions do not share a theta grid")
    return float(np.max(np.abs(A.radii - B.radii)))


def epsilon_hull(A, eps):
    """The eps-neighbourhood: all support radii grow by eps."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return region_from_support(A.angles, A.radii + float(eps),
                               A.support.norm_kind, A.support.method)


def region_boundary_points(A, degree):
    """Boundary samples for sup estimation of a degree-`degree` polynomial:
    polygon edges subdivided to spacing <= diameter / (64 * max(1, degree)).
    Vertices are always included, so affine maxima are met exactly."""
    v = A.vertices
    if v.size <= 1:
        return v.copy()
    diam = region_diameter(A)
    if diam <= 0.0:
        return v[:1].copy()
    spacing = diam / (64.0 * max(1, int(degree)))
    pts = []
    nxt = np.roll(v, -1)
    for a, b in zip(v, nxt):
        cnt = max(1, int(np.ceil(abs(b - a) / spacing)))
        pts.append(a + (b - a) * (np.arange(cnt) / cnt))
    return np.concatenate(pts)


def affine_transform_region(A, alpha, beta):
    """The region of alpha*T + beta*I from the region of T: rotate the angle
    grid by arg(alpha), scale radii by |alpha| and shift by Re(e^{-i t} beta).
    Vertices are transported exactly, preserving point-for-point
    correspondence of boundary samples."""
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    ang = np.mod(A.angles + np.angle(alpha), 2.0 * np.pi)
    order = np.argsort(ang, kind="stable")
    ang = ang[order]
    rad = np.abs(alpha) * A.radii[order] + (np.exp(-1j * ang) * beta).real
    verts = alpha * A.vertices + beta
    return ConvexRegion(
        SupportFunction(ang, rad, A.support.norm_kind, A.support.method), verts)


def _support_at_angles(Ts, thetas, kind):
    """Support radius of Ts[i] at its own angle thetas[i]; Ts is (B, n, n)."""
    ph = np.exp(-1j * thetas)
    if kind in ("l1", "linf"):
        Bs = Ts if kind == "l1" else np.swapaxes(Ts, 1, 2)
        off = np.abs(Bs).sum(axis=1) - np.abs(np.diagonal(Bs, axis1=1, axis2=2))
        rot = ph[:, None] * np.diagonal(Bs, axis1=1, axis2=2)
        return (off + rot.real).max(axis=1)
    H = 0.5 * (ph[:, None, None] * Ts
               + np.conj(ph)[:, None, None] * np.swapaxes(Ts, 1, 2).conj())
    return np.atleast_1d(hermitian_top_eigenvalue(H))


def numerical_radius_many(Ts, kind, m=360, refine_iters=40):
    """Vectorized numerical radii of a stack of same-size matrices: grid
    maximum of the support function refined by golden-section search on the
    bracket around each matrix's best grid angle."""
    Ts = np.asarray(Ts, dtype=np.complex128)
    check_kind(kind)
    b = Ts.shape[0]
    th = theta_grid(m)
    grid = np.stack([support_radii(Ts[i], th, kind) for i in range(b)])
    idx = np.argmax(grid, axis=1)
    best = grid[np.arange(b), idx]
    lo = th[idx] - 2.0 * np.pi / m
    hi = th[idx] + 2.0 * np.pi / m
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - phi * (hi - lo)
    x2 = lo + phi * (hi - lo)
    f1 = _support_at_angles(Ts, x1, kind)
    f2 = _support_at_angles(Ts, x2, kind)
    best = np.maximum(best, np.maximum(f1, f2))
    for _ in range(refine_iters):
        # keep the sub-bracket holding the larger probe, then re-probe both
        # interior points (evaluations are batched, so the extra probe per
        # step is cheaper than golden bookkeeping)
        right = f1 < f2
        lo = np.where(right, x1, lo)
        hi = np.where(right, hi, x2)
        x1 = hi - phi * (hi - lo)
        x2 = lo + phi * (hi - lo)
        f1 = _support_at_angles(Ts, x1, kind)
        f2 = _support_at_angles(Ts, x2, kind)
        best = np.maximum(best, np.maximum(f1, f2))
    return best


def numerical_radius(T, kind, m=360, refine_iters=40):
    """nu(T) = max_theta r_theta(T): grid maximum refined by golden-section
    search on the bracket around the best grid angle."""
    T = as_matrix(T)
    return float(numerical_radius_many(T[None], kind, m, refine_iters)[0])
