"""Spectral-constant ratios for polynomial calculus against the numerical
range, a seeded lower-bound search, and the named experiment suites
(Jordan-block growth, 2x2 l1 bounds, the cosine example, shift
compressions, epsilon-hull and Bohr disk checks)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    as_matrix,
    batched_norm,
    check_kind,
    induced_norm,
    jordan_block,
    poly_apply,
)
from .numrange import (
    ConvexRegion,
    affine_transform_region,
    gershgorin_hull_l1,
    range_polygon,
    region_boundary_points,
    region_diameter,
    epsilon_hull,
)
from .polytools import (
    SupBound,
    chebyshev_on_segment,
    compose_affine,
    flat_sign_polynomial,
    poly_degree,
    rudin_shapiro,
    sup_on_circle,
    sup_on_region,
    taylor_cos,
)
from .rng import SplitMix64

CROUZEIX_UPPER = 1.0 + math.sqrt(2.0)


@dataclass
class PsiEstimate:
    """A certified-by-construction lower bound for the spectral constant:
    the ratio ||p(T)|| / (sampled sup of |p| over an OUTER region), which can
    only undershoot the true constant."""
    lower_bound: float
    witness: np.ndarray
    region: ConvexRegion
    numerator: float
    denominator: SupBound
    family_log: list
    seed: int


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    measured: float
    paper_bound: float
    satisfied: bool
    details: list

    def to_dict(self):
        return {
            "name": self.name,
            "parameters": self.parameters,
            "measured": self.measured,
            "paper_bound": self.paper_bound,
            "satisfied": self.satisfied,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# random draws (all through the seeded splitmix stream)
# ---------------------------------------------------------------------------

def random_gaussian_matrix(rng, n):
    return np.array([[rng.complex_normal() for _ in range(n)] for _ in range(n)],
                    dtype=np.complex128)


def random_polynomial(rng, max_degree):
    deg = 1 + rng.below(max_degree)
    return np.array([rng.complex_normal() for _ in range(deg + 1)],
                    dtype=np.complex128)


def _similarity_2x2(rng, cond_cap):
    """Random det-normalized 2x2 similarity with ||S||_1 ||S^-1||_1 <= cap."""
    while True:
        S = random_gaussian_matrix(rng, 2)
        det = S[0, 0] * S[1, 1] - S[0, 1] * S[1, 0]
        if abs(det) < 1e-6:
            continue
        S = S / np.sqrt(det)
        Sinv = np.array([[S[1, 1], -S[0, 1]], [-S[1, 0], S[0, 0]]])
        if induced_norm(S, "l1") * induced_norm(Sinv, "l1") <= cond_cap:
            return S, Sinv


# ---------------------------------------------------------------------------
# ratios
# ---------------------------------------------------------------------------

def default_region(T, kind, m=360):
    """Region used by the searches: the exact Gershgorin hull for l1,
    otherwise the sampled support polygon."""
    if kind == "l1":
        return gershgorin_hull_l1(T, m)
    return range_polygon(T, kind, m)


def psi_ratio(T, p, kind, region):
    """||p(T)|| / (sampled sup of |p| over the region boundary).

    The region must contain the spectrum of T (true for every region built
    by this package from T itself).
    """
    T = as_matrix(T)
    check_kind(kind)
    c = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    if not np.any(c):
        raise ValueError("p must not be the zero polynomial")
    num = induced_norm(poly_apply(c, T), kind)
    den = sup_on_region(c, region)[0].value
    if den == 0.0:
        raise ValueError("sup of |p| over the region vanished")
    return num / den


class _SearchContext:
    """Batched candidate evaluation: boundary powers and matrix powers are
    precomputed once so a batch of coefficient columns costs one GEMM."""

    def __init__(self, T, kind, region, max_degree):
        self.T = T
        self.kind = kind
        self.region = region
        pts = region_boundary_points(region, max_degree)
        self.Z = pts[:, None] ** np.arange(max_degree + 1)[None, :]
        n = T.shape[0]
        Tp = np.empty((max_degree + 1, n, n), dtype=np.complex128)
        Tp[0] = np.eye(n)
        for k in range(1, max_degree + 1):
            Tp[k] = Tp[k - 1] @ T
        self.Tpow = Tp

    def ratios(self, A):
        """Ratios for a (D+1, B) batch of coefficient columns."""
        den = np.abs(self.Z @ A).max(axis=0)
        M = np.tensordot(self.Tpow, A, axes=(0, 0))
        num = batched_norm(np.moveaxis(M, -1, 0), self.kind)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(den > 0, num / den, 0.0)

    def scalar_ratio(self, coeffs):
        """The quotation-grade ratio: matrix Horner numerator over the
        degree-adapted boundary sampling, exactly as psi_ratio reports it."""
        num = induced_norm(poly_apply(coeffs, self.T), self.kind)
        den = sup_on_region(coeffs, self.region)[0]
        val = num / den.value if den.value > 0 else 0.0
        return val, num, den


def _pad(c, D):
    out = np.zeros(D + 1, dtype=np.complex128)
    out[: c.size] = c
    return out


def _candidate_families(region, max_degree, seed):
    """Deterministic candidate batches, one (name, columns) pair per family."""
    D = max_degree
    v = region.vertices
    c0 = complex(v.mean())
    s = float(np.abs(v - c0).max()) if v.size else 0.0
    scale_ok = s > 1e-9 * (1.0 + abs(c0))
    fams = []

    fams.append(("monomials", np.eye(D + 1, dtype=np.complex128)))

    cols = [_pad(np.array([0.0, 1.0], dtype=np.complex128), D)]
    if scale_ok:
        cols.append(_pad(np.array([-c0 / s, 1.0 / s]), D))
        cols.append(_pad(np.array([-c0, 1.0]), D))
    fams.append(("affine", np.stack(cols, axis=1)))

    if v.size >= 2:
        dist = np.abs(v[:, None] - v[None, :])
        i, j = np.unravel_index(int(np.argmax(dist)), dist.shape)
        if dist[i, j] > 1e-6 * (1.0 + abs(c0)):
            chebs = chebyshev_on_segment(D, complex(v[i]), complex(v[j]))
            fams.append(("chebyshev", np.stack([_pad(c, D) for c in chebs], axis=1)))

    if scale_ok:
        cols = []
        k = 1
        while 2 ** k <= D + 1:
            for f in rudin_shapiro(k):
                cols.append(_pad(compose_affine(f.coeffs, 1.0 / s, -c0 / s), D))
            k += 1
        rng = SplitMix64(seed)
        for _ in range(8):
            signs = np.array([rng.sign() for _ in range(D + 1)], dtype=np.complex128)
            cols.append(_pad(compose_affine(signs, 1.0 / s, -c0 / s), D))
        fams.append(("sign_polys", np.stack(cols, axis=1)))

    dcos = min(D, 24)
    dcos -= dcos % 2
    if dcos >= 2:
        base = taylor_cos(dcos, 3.0)[0]
        cols = []
        if v.size and float(np.abs(v).max()) <= 3.0:
            cols.append(_pad(base, D))
        if scale_ok:
            for r_target in (1.0, 2.0):
                for rot in (1.0, 1j):
                    al = rot * r_target / s
                    cols.append(_pad(compose_affine(base, al, -al * c0), D))
        if cols:
            fams.append(("cos_surrogate", np.stack(cols, axis=1)))
    return fams


def psi_lower_bound(T, kind, max_degree, budget, seed):
    """Searched lower bound for the spectral constant of T.

    Candidate families are tried in a fixed order (monomials; affine maps;
    Chebyshev on the diameter segment; +-1 sign polynomials on the bounding
    disk; cosine Taylor surrogates), then the incumbent is refined by
    coordinate-wise complex coefficient perturbations with step halving,
    spending at most `budget` batched evaluations.  Deterministic given the
    seed, and monotone in the budget (the incumbent is never dropped).
    """
    T = as_matrix(T)
    check_kind(kind)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    region = default_region(T, kind)
    ctx = _SearchContext(T, kind, region, max_degree)

    family_log = []
    inc = None
    inc_val = -np.inf
    best = None          # (value, coeffs, numerator, denominator)

    def bump(coeffs):
        nonlocal best
        val, num, den = ctx.scalar_ratio(coeffs)
        if best is None or val > best[0]:
            best = (val, coeffs.copy(), num, den)

    for name, A in _candidate_families(region, max_degree, seed):
        r = ctx.ratios(A)
        j = int(np.argmax(r))
        family_log.append([name, float(r[j])])
        if r[j] > inc_val:
            inc_val = float(r[j])
            inc = A[:, j].copy()
            bump(inc)

    # one refinement round = every coordinate nudged in the four complex
    # axis directions, evaluated as a single batch; the best strict
    # improvement wins, otherwise the step halves
    spent = 0
    step = 0.25 * max(1.0, float(np.abs(inc).max()))
    dirs = np.array([1.0, -1.0, 1j, -1j])
    ncoef = max_degree + 1
    batch = 4 * ncoef
    while spent + batch <= budget and step > 1e-13:
        A = np.repeat(inc[:, None], batch, axis=1)
        for k in range(ncoef):
            A[k, 4 * k:4 * k + 4] += dirs * step
        r = ctx.ratios(A)
        spent += batch
        j = int(np.argmax(r))
        if r[j] > inc_val:
            inc_val = float(r[j])
            inc = A[:, j].copy()
            bump(inc)
        else:
            step *= 0.5
    family_log.append(["refinement", float(inc_val)])

    val, coeffs, num, den = best
    return PsiEstimate(lower_bound=float(val), witness=coeffs, region=region,
                       numerator=float(num), denominator=den,
                       family_log=family_log, seed=seed)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def jordan_experiment(n, kind, seed=0, draws=200):
    """Growth of ||f(J_n)|| / sup_{|z|=1} |f| for a measured flat +-1
    polynomial of length n.  Under l1/linf the last column/first row of the
    Toeplitz calculus pins ||f(J_n)|| = n, so the ratio grows like
    sqrt(n); under l2 the ratio stays below the universal constant
    1 + sqrt(2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    check_kind(kind)
    f = flat_sign_polynomial(n, seed=seed, draws=draws)
    sup = sup_on_circle(f.coeffs, 1.0, 4096)[0].value
    num = induced_norm(poly_apply(f.coeffs, jordan_block(n)), kind)
    ratio = num / sup
    expo = 1.0 if kind in ("l1", "linf") else 0.5
    floor = n ** expo / sup
    ok = ratio >= floor - 1e-9
    if kind == "l2":
        ok = ok and ratio <= CROUZEIX_UPPER + 1e-6
    paper_bound = n ** (expo - 0.5) / math.sqrt(6.0)
    details = [{
        "n": n, "kind": kind, "polynomial": f.construction,
        "norm": float(num), "sup_unit_circle": float(sup),
        "ratio": float(ratio),
        "beats_paper_bound": bool(ratio >= paper_bound - 1e-9),
    }]
    return ExperimentReport("jordan_block_growth",
                            {"n": n, "kind": kind, "seed": seed},
                            float(ratio), float(paper_bound), bool(ok), details)


def shift_compression(n, direction):
    """Finite compression of the shifts: the left shift compresses to J_n,
    the right shift to its transpose."""
    if direction not in ("left", "right"):
        raise ValueError(f"field 'direction': unknown {direction!r}")
    J = jordan_block(n)
    return J if direction == "left" else J.T.copy()


def direct_sum_example(p_kind, degree, m=64, seed=0):
    """Finite-section version of the direct sum E + half-shift: the block
    norm is max(||f(E)||_2, ||f(J_m / 2)||_p).

    Checks the disk bound max(...) <= (2 sqrt(3) / 3) sup_{|z|<=1} |f| on the
    flat +-1 family, and exhibits the growth of ratios against the radius-1/2
    disk as the section size grows (for p in {l1, linf}; under l2 the ratios
    stay below 1 + sqrt(2) instead).
    """
    check_kind(p_kind)
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if m < 8:
        raise ValueError("m must be at least 8")
    E = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    bound = 2.0 * math.sqrt(3.0) / 3.0
    sections = sorted(set([v for v in (8, 16, 32, 64) if v <= m] + [m]))
    rows = []
    curve = []
    ok = True
    for mm in sections:
        half_j = 0.5 * jordan_block(mm)
        best = 0.0
        k = 1
        while 2 ** k <= min(degree + 1, mm):
            L = 2 ** k
            f = rudin_shapiro(k)[0].coeffs
            sup_disk = sup_on_circle(f, 1.0, 4096)[0].value
            lhs_flat = max(induced_norm(poly_apply(f, E), "l2"),
                           induced_norm(poly_apply(f, half_j), p_kind))
            disk_ok = lhs_flat <= bound * sup_disk * (1.0 + 1e-6)
            g = compose_affine(f, 2.0, 0.0)          # transplant to the half disk
            sup_half = sup_on_circle(g, 0.5, 4096)[0].value
            lhs_g = max(induced_norm(poly_apply(g, E), "l2"),
                        induced_norm(poly_apply(g, half_j), p_kind))
            ratio = lhs_g / sup_half
            if p_kind == "l2":
                grow_ok = ratio <= CROUZEIX_UPPER + 1e-6
            else:
                grow_ok = ratio >= math.sqrt(L / 2.0) - 1e-9
            ok = ok and disk_ok and grow_ok
            best = max(best, ratio)
            rows.append({"sections": mm, "length": L,
                         "norm_flat": float(lhs_flat),
                         "sup_unit_circle": float(sup_disk),
                         "disk_check": bool(disk_ok),
                         "ratio_half_disk": float(ratio)})
            k += 1
        curve.append((mm, best))
    if p_kind != "l2":
        mono = all(curve[i + 1][1] >= curve[i][1] - 1e-12 for i in range(len(curve) - 1))
        ok = ok and mono
        rows.append({"growth_curve": [[mm, float(b)] for mm, b in curve],
                     "monotone": bool(mono)})
    measured = curve[-1][1] if curve else 0.0
    return ExperimentReport("direct_sum_half_shift",
                            {"p_kind": p_kind, "degree": degree, "m": m, "seed": seed},
                            float(measured), float(bound), bool(ok), rows)


def two_by_two_l1_suite(samples, seed, degree=24, budget=2000):
    """Randomized 2x2 l1 bound check: lower-bound searches on defective
    matrices (similar to a size-2 Jordan block) must stay below 2 + sqrt(2),
    and on diagonalizable matrices below 13.  The extremal diagonalizable
    matrix [[2, 1], [0, 0]] is always injected so the suite maximum clears
    1.1 via the cosine surrogate family."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = SplitMix64(seed)
    lim_all = 13.0 + 1e-6
    lim_def = 2.0 + math.sqrt(2.0) + 1e-6
    J2 = jordan_block(2)
    rows = []
    worst = 0.0
    worst_def = 0.0
    ok = True

    injected = np.array([[2.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    est0 = psi_lower_bound(injected, "l1", degree, budget, seed).lower_bound
    ok = ok and est0 <= lim_all
    worst = max(worst, est0)
    rows.append({"family": "diagonalizable", "sample": -1, "estimate": float(est0)})

    for i in range(samples):
        S, Sinv = _similarity_2x2(rng, 1e3)
        Td = S @ J2 @ Sinv
        e_def = psi_lower_bound(Td, "l1", degree, budget, rng.spawn_seed()).lower_bound
        ok = ok and e_def <= lim_def
        worst_def = max(worst_def, e_def)
        worst = max(worst, e_def)
        rows.append({"family": "defective", "sample": i, "estimate": float(e_def)})

        S2, S2inv = _similarity_2x2(rng, 1e3)
        D = np.diag([rng.complex_normal(), rng.complex_normal()])
        Tg = S2 @ D @ S2inv
        e_diag = psi_lower_bound(Tg, "l1", degree, budget, rng.spawn_seed()).lower_bound
        ok = ok and e_diag <= lim_all
        worst = max(worst, e_diag)
        rows.append({"family": "diagonalizable", "sample": i, "estimate": float(e_diag)})

    rows.append({"max_estimate": float(worst), "max_defective": float(worst_def)})
    return ExperimentReport("two_by_two_l1_bounds",
                            {"samples": samples, "seed": seed,
                             "degree": degree, "budget": budget},
                            float(worst), 13.0, bool(ok), rows)


def cos_example():
    """The cosine witness on T = [[2, 1], [0, 0]] under the l1 norm.

    Numerator by the exact 2x2 spectral identity
    f(T) = ((f(2) - f(0)) / 2) T + f(0) I; denominator by sampling the
    degree-24 cosine Taylor surrogate over the Gershgorin hull plus its
    remainder.  Asserts numerator > 1.708, sup bound <= 1.55, ratio > 1.1.
    """
    T = np.array([[2.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    c2 = math.cos(2.0)
    cosT = ((c2 - 1.0) / 2.0) * T + np.eye(2)
    num = induced_norm(cosT, "l1")
    region = gershgorin_hull_l1(T)
    p, rem = taylor_cos(24, 3.0)
    sup_bound = sup_on_region(p, region)[0].value + rem
    ratio = num / sup_bound
    ok = (num > 1.708) and (sup_bound <= 1.55) and (ratio > 1.1)
    details = [{"numerator": float(num), "sup_bound": float(sup_bound),
                "taylor_remainder": float(rem), "ratio": float(ratio)}]
    return ExperimentReport("cos_on_2x2", {"matrix": [[2.0, 1.0], [0.0, 0.0]]},
                            float(ratio), 1.1, bool(ok), details)


def epsilon_hull_check(T, kind, eps, trials, seed):
    """Random-polynomial check of the eps-hull bounds:
    ||p(T)|| <= (1 + 1/(2 eps)) sup over the (eps * diameter)-hull, and
    ||p(T)|| <= (1+eps)/sqrt(eps(2+eps)) sup over the disk of radius
    (1+eps)||T||.  Right-hand sides use certified (inflated) sampled sups
    plus relative slack 1e-6."""
    T = as_matrix(T)
    check_kind(kind)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    region = default_region(T, kind)
    d = region_diameter(region)
    hull = epsilon_hull(region, eps * d)
    c_hull = 1.0 + 1.0 / (2.0 * eps)
    c_disk = (1.0 + eps) / math.sqrt(eps * (2.0 + eps))
    r_disk = (1.0 + eps) * induced_norm(T, kind)
    rng = SplitMix64(seed)
    rows = []
    ok = True
    worst = 0.0
    for t in range(trials):
        p = random_polynomial(rng, 16)
        lhs = induced_norm(poly_apply(p, T), kind)
        rhs_hull = c_hull * sup_on_region(p, hull)[1].value
        if r_disk > 0:
            rhs_disk = c_disk * sup_on_circle(p, r_disk, 2048)[1].value
        else:
            rhs_disk = c_disk * abs(p[0])
        m_hull = lhs / rhs_hull if rhs_hull > 0 else np.inf
        m_disk = lhs / rhs_disk if rhs_disk > 0 else np.inf
        good = m_hull <= 1.0 + 1e-6 and m_disk <= 1.0 + 1e-6
        ok = ok and good
        worst = max(worst, m_hull, m_disk)
        rows.append({"trial": t, "degree": poly_degree(p),
                     "margin_hull": float(m_hull), "margin_disk": float(m_disk)})
    return ExperimentReport("epsilon_hull_bounds",
                            {"kind": kind, "eps": eps, "trials": trials, "seed": seed},
                            float(worst), 1.0, bool(ok), rows)


def bohr_check(T, kind, trials, seed):
    """Random-polynomial check of the disk bound
    ||p(T)|| <= sup_{|z| <= 3 ||T||} |p| (constant one)."""
    T = as_matrix(T)
    check_kind(kind)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    radius = 3.0 * induced_norm(T, kind)
    rng = SplitMix64(seed)
    rows = []
    ok = True
    worst = 0.0
    for t in range(trials):
        p = random_polynomial(rng, 16)
        lhs = induced_norm(poly_apply(p, T), kind)
        rhs = sup_on_circle(p, radius, 2048)[1].value if radius > 0 else abs(p[0])
        margin = lhs / rhs if rhs > 0 else np.inf
        good = margin <= 1.0 + 1e-6
        ok = ok and good
        worst = max(worst, margin)
        rows.append({"trial": t, "degree": poly_degree(p), "margin": float(margin)})
    return ExperimentReport("bohr_disk_bound",
                            {"kind": kind, "trials": trials, "seed": seed},
                            float(worst), 1.0, bool(ok), rows)


def affine_invariance_check(T, kind, alpha, beta, p):
    """Ratio-level invariance under z -> alpha z + beta: the ratio of
    p(alpha z + beta) on T against the region of T equals the ratio of p on
    alpha T + beta I against the exactly transported region."""
    T = as_matrix(T)
    check_kind(kind)
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    c = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    region = default_region(T, kind)
    region2 = affine_transform_region(region, alpha, beta)
    T2 = alpha * T + beta * np.eye(T.shape[0])
    r1 = psi_ratio(T, compose_affine(c, alpha, beta), kind, region)
    r2 = psi_ratio(T2, c, kind, region2)
    diff = abs(r1 - r2) / max(1.0, abs(r1))
    ok = diff <= 1e-8
    details = [{"ratio_original": float(r1), "ratio_transformed": float(r2),
                "relative_difference": float(diff)}]
    return ExperimentReport("affine_invariance",
                            {"kind": kind, "alpha": [alpha.real, alpha.imag],
                             "beta": [beta.real, beta.imag]},
                            float(diff), 1e-8, bool(ok), details)
