"""Polynomial utilities: sign polynomials that stay flat on the unit
circle, sampled suprema over circles and region boundaries, and the cosine
Taylor surrogate with an explicit remainder."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numrange import epsilon_hull, region_boundary_points, region_diameter
from .rng import SplitMix64


@dataclass(frozen=True)
class SignPolynomial:
    """Polynomial with +-1 coefficients; `construction` records its origin."""
    signs: tuple
    construction: str

    @property
    def coeffs(self):
        return np.asarray(self.signs, dtype=np.complex128)

    def __len__(self):
        return len(self.signs)


@dataclass(frozen=True)
class SupBound:
    """A supremum estimate.  kind == "certified_upper" means the value is an
    upper bound for the true supremum; "exact_sampled" is a max over samples
    and therefore a lower bound."""
    value: float
    kind: str
    samples: int
    inflation: float


# ---------------------------------------------------------------------------
# coefficient helpers
# ---------------------------------------------------------------------------

def poly_degree(coeffs):
    c = np.atleast_1d(np.asarray(coeffs))
    nz = np.nonzero(c)[0]
    return int(nz[-1]) if nz.size else 0


def poly_eval(coeffs, z):
    """Horner evaluation at a scalar or array of points."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros_like(z)
    for ck in c[::-1]:
        out = out * z + ck
    return out


def poly_mul(a, b):
    return np.convolve(np.atleast_1d(np.asarray(a, dtype=np.complex128)),
                       np.atleast_1d(np.asarray(b, dtype=np.complex128)))


def compose_affine(coeffs, alpha, beta):
    """Coefficients of p(alpha * z + beta)."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    res = np.array([c[-1]], dtype=np.complex128)
    lin = np.array([beta, alpha], dtype=np.complex128)
    for ck in c[-2::-1]:
        res = np.convolve(res, lin)
        res[0] += ck
    return res


def chebyshev_on_segment(max_deg, z0, z1):
    """Chebyshev polynomials T_1..T_max_deg transplanted to the complex
    segment [z0, z1] via w = (2z - z0 - z1)/(z1 - z0); returned as a list of
    coefficient arrays."""
    z0 = complex(z0)
    z1 = complex(z1)
    if z0 == z1:
        raise ValueError("segment endpoints must differ")
    lin = np.array([-(z0 + z1) / (z1 - z0), 2.0 / (z1 - z0)], dtype=np.complex128)
    prev = np.array([1.0 + 0.0j])
    cur = lin.copy()
    out = []
    for _ in range(max_deg):
        out.append(cur.copy())
        nxt = 2.0 * np.convolve(lin, cur)
        nxt[: prev.size] -= prev
        prev, cur = cur, nxt
    return out


# ---------------------------------------------------------------------------
# sign polynomials
# ---------------------------------------------------------------------------

def rudin_shapiro(k):
    """The length-2^k pair (P_k, Q_k) from the concatenation recursion
    P_{k+1} = P_k || Q_k,  Q_{k+1} = P_k || (-Q_k).  On the unit circle
    |P_k|^2 + |Q_k|^2 = 2^{k+1}, hence sup |P_k| <= sqrt(2) * sqrt(2^k)."""
    if not 0 <= k <= 20:
        raise ValueError("k must lie in 0..20")
    p = [1]
    q = [1]
    for _ in range(k):
        p, q = p + q, p + [-s for s in q]
    return (SignPolynomial(tuple(p), "rudin_shapiro"),
            SignPolynomial(tuple(q), "rudin_shapiro"))


def random_sign_polynomial(length, seed):
    if length < 1:
        raise ValueError("length must be positive")
    rng = SplitMix64(seed)
    signs = tuple(rng.sign() for _ in range(length))
    return SignPolynomial(signs, f"random({seed})")


def flat_sign_polynomial(length, seed=0, draws=200, m=4096):
    """A +-1 polynomial of the given length with small measured supremum on
    the unit circle: the Rudin-Shapiro P when the length is a power of two,
    otherwise the flattest of `draws` random draws.  The supremum is always
    measured, never assumed."""
    if length >= 1 and length & (length - 1) == 0:
        return rudin_shapiro(length.bit_length() - 1)[0]
    rng = SplitMix64(seed)
    best = None
    best_sup = np.inf
    z = np.exp(2j * np.pi * np.arange(m) / m)
    for _ in range(draws):
        signs = tuple(rng.sign() for _ in range(length))
        sup = float(np.abs(poly_eval(np.asarray(signs, dtype=np.complex128), z)).max())
        if sup < best_sup:
            best_sup = sup
            best = signs
    return SignPolynomial(best, f"best_of_random({draws},seed={seed})")


# ---------------------------------------------------------------------------
# suprema
# ---------------------------------------------------------------------------

def sup_on_circle(p, r, m):
    """Supremum of |p| on the circle of radius r: max over the m scaled
    roots of unity, plus a certified upper bound from the Bernstein-type
    inflation 1 / (1 - pi * deg / m)."""
    c = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    d = poly_degree(c)
    if r <= 0:
        raise ValueError("field 'radius': must be positive")
    if m <= np.pi * d:
        raise ValueError(f"field 'samples': m = {m} must exceed pi * deg = {np.pi * d:.1f}")
    z = r * np.exp(2j * np.pi * np.arange(m) / m)
    sampled = float(np.abs(poly_eval(c, z)).max())
    inflation = 1.0 / (1.0 - np.pi * d / m)
    return (SupBound(sampled, "exact_sampled", m, 1.0),
            SupBound(sampled * inflation, "certified_upper", m, inflation))


def sup_on_region(p, region):
    """Supremum of |p| over a convex region, via the maximum-modulus
    principle: |p| is sampled on the boundary polygon with spacing
    diameter / (64 * max(1, deg)).

    The certified upper bound adds spacing/2 times a crude Lipschitz
    constant: |p'| <= deg / rho * sup_{rho-enlargement} |p| with
    rho = diameter / 100, and the enlarged supremum is bounded by the
    coefficient sum at the enlarged bounding radius.  Crude but safe; dense
    sampled values are what the experiments consume.
    """
    c = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    d = poly_degree(c)
    diam = region_diameter(region)
    if region.vertices.size <= 1 or diam <= 0.0:
        point = region.vertices[0] if region.vertices.size else 0.0 + 0.0j
        s = float(abs(poly_eval(c, point)))
        return (SupBound(s, "exact_sampled", 1, 1.0),
                SupBound(s, "certified_upper", 1, 1.0))
    pts = region_boundary_points(region, d)
    sampled = float(np.abs(poly_eval(c, pts)).max())
    if d == 0:
        return (SupBound(sampled, "exact_sampled", pts.size, 1.0),
                SupBound(sampled, "certified_upper", pts.size, 1.0))
    rho = diam / 100.0
    grown = epsilon_hull(region, rho)
    big_r = float(np.abs(grown.vertices).max())
    coeff_bound = float(np.abs(c) @ (big_r ** np.arange(c.size, dtype=np.float64)))
    lipschitz = d / rho * coeff_bound
    spacing = diam / (64.0 * max(1, d))
    certified = sampled + 0.5 * spacing * lipschitz
    inflation = certified / sampled if sampled > 0 else 1.0
    return (SupBound(sampled, "exact_sampled", pts.size, 1.0),
            SupBound(certified, "certified_upper", pts.size, inflation))


def taylor_cos(d, R):
    """Degree-d Taylor polynomial of cos at 0 and the Lagrange remainder
    bound R^(d+1) / (d+1)! for |z| <= R."""
    if d < 2 or d % 2 != 0:
        raise ValueError("degree must be even and at least 2")
    c = np.zeros(d + 1, dtype=np.complex128)
    sign = 1.0
    for j in range(0, d + 1, 2):
        c[j] = sign / math.factorial(j)
        sign = -sign
    rem = float(R) ** (d + 1) / math.factorial(d + 1)
    return c, rem
