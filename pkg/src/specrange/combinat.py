"""Combinatorial Banach norms on finitely supported sequences, the cut-shift
operator, and its polynomial growth experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polytools import flat_sign_polynomial, sup_on_circle

INDEX_CAP = 10 ** 6
BRUTE_FORCE_SUPPORT_CAP = 24


@dataclass(frozen=True)
class SparseVector:
    """Finitely supported sequence: (index, value) pairs with strictly
    increasing positive indices and no stored zeros."""
    pairs: tuple

    def indices(self):
        return [i for i, _ in self.pairs]

    def values(self):
        return [v for _, v in self.pairs]


def sparse_vector(pairs):
    """Validate/normalize a pair list into a SparseVector."""
    norm = []
    for item in pairs:
        i, v = item
        i = int(i)
        v = complex(v)
        if i < 1:
            raise ValueError("field 'pairs': indices must be positive")
        if v != 0:
            norm.append((i, v))
    idx = [i for i, _ in norm]
    if len(set(idx)) != len(idx):
        raise ValueError("field 'pairs': duplicate indices")
    norm.sort(key=lambda t: t[0])
    return SparseVector(tuple(norm))


def unit_vector(i):
    return sparse_vector([(i, 1.0)])


@dataclass(frozen=True)
class SpreadingFamily:
    """Family of admissible finite index sets.  Required behaviour: every
    singleton is admissible, admissibility survives replacing indices by
    larger ones, and sets of every cardinality occur."""
    name: str
    admits: object
    has_closed_form: bool = False

    def is_admissible(self, indices):
        f = tuple(sorted(set(int(i) for i in indices)))
        if not f or f[0] < 1:
            return False
        return bool(self.admits(f))

    def validate(self, max_card=8, index_cap=64):
        """Spot-check the defining properties up to the given caps; raises
        on the first failure."""
        for i in range(1, index_cap + 1):
            if not self.is_admissible((i,)):
                raise ValueError(f"family {self.name}: singleton {{{i}}} not admissible")
        # right-spreading on a deterministic sample of admissible windows
        for c in range(1, max_card + 1):
            base = self._find_of_cardinality(c, index_cap)
            if base is None:
                raise ValueError(f"family {self.name}: no admissible set of size {c} "
                                 f"with indices <= {index_cap}")
            for shift in (1, 2, 5):
                spread = tuple(i + shift for i in base)
                if not self.is_admissible(spread):
                    raise ValueError(f"family {self.name}: right-spread of {base} "
                                     f"by {shift} not admissible")
        return True

    def _find_of_cardinality(self, c, index_cap):
        for start in range(1, index_cap):
            window = tuple(range(start, start + c))
            if window[-1] > index_cap:
                break
            if self.is_admissible(window):
                return window
        return None


SCHREIER = SpreadingFamily("schreier", lambda f: len(f) <= f[0], has_closed_form=True)


def _schreier_norm(x):
    # sup over thresholds m of the sum of the min(m, count) largest |x_i|
    # with i >= m; the sup is attained at m equal to some support index.
    idx = np.asarray(x.indices(), dtype=np.int64)
    vals = np.abs(np.asarray(x.values(), dtype=np.complex128))
    best = 0.0
    for j, m in enumerate(idx):
        pool = np.sort(vals[j:])[::-1]
        k = min(int(m), pool.size)
        best = max(best, float(pool[:k].sum()))
    return best


def _brute_force_norm(x, family):
    idx = x.indices()
    vals = [abs(v) for v in x.values()]
    s = len(idx)
    best = 0.0
    for mask in range(1, 1 << s):
        subset = [idx[j] for j in range(s) if mask >> j & 1]
        if family.is_admissible(subset):
            total = sum(vals[j] for j in range(s) if mask >> j & 1)
            best = max(best, total)
    return best


def family_norm(x, family=SCHREIER):
    """||x|| = sup over admissible F of sum_{i in F} |x_i|.

    The Schreier family (|F| <= min F) uses an exact closed form; other
    families are evaluated by brute force over subsets of the support.
    """
    if not isinstance(x, SparseVector):
        x = sparse_vector(x)
    if not x.pairs:
        return 0.0
    if x.pairs[-1][0] > INDEX_CAP:
        raise ValueError(f"support index beyond cap {INDEX_CAP}")
    if family.has_closed_form and family.name == "schreier":
        return _schreier_norm(x)
    if len(x.pairs) > BRUTE_FORCE_SUPPORT_CAP:
        raise ValueError(
            f"support of size {len(x.pairs)} is too large for brute force "
            f"(cap {BRUTE_FORCE_SUPPORT_CAP}); use the Schreier closed form")
    return _brute_force_norm(x, family)


@dataclass(frozen=True)
class CutShiftSpec:
    """Cut-shift S_n: entries in the window [k, k+n-1] move one slot right,
    everything else is zeroed.  The window must be admissible; the Schreier
    default is the minimal spread k = 2n - 1."""
    n: int
    k: int = None
    family: SpreadingFamily = field(default=SCHREIER)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.k is None:
            object.__setattr__(self, "k", 2 * self.n - 1)
        if self.k < 1:
            raise ValueError("k must be positive")
        window = range(self.k, self.k + self.n)
        if not self.family.is_admissible(window):
            raise ValueError(f"window [{self.k}, {self.k + self.n - 1}] is not admissible")


def cut_shift_apply(spec, x):
    """Apply S_n: output position i+1 holds x_i for i in the window."""
    if not isinstance(x, SparseVector):
        x = sparse_vector(x)
    lo, hi = spec.k, spec.k + spec.n - 1
    return SparseVector(tuple((i + 1, v) for i, v in x.pairs if lo <= i <= hi))


def cut_shift_experiment(n, seed=0):
    """Growth of ||f(S_n)|| for a flat +-1 polynomial f of length n + 1.

    Applying f to the cut-shift at the canonical Schreier window k = 2n - 1
    and hitting e_k produces a vector with unit-modulus coefficients on the
    admissible window, so its norm is at least n while sup |f| on the unit
    circle is only O(sqrt(n)).
    """
    from .psi import ExperimentReport   # local import; psi depends on this module

    if n < 2:
        raise ValueError("n must be at least 2")
    spec = CutShiftSpec(n)
    f = flat_sign_polynomial(n + 1, seed=seed)
    coeffs = f.coeffs
    sup = sup_on_circle(coeffs, 1.0, 4096)[0].value

    acc = {}
    cur = unit_vector(spec.k)
    for j, a in enumerate(coeffs):
        if j > 0:
            cur = cut_shift_apply(spec, cur)
        for i, v in cur.pairs:
            acc[i] = acc.get(i, 0.0 + 0.0j) + a * v
    y = sparse_vector(sorted(acc.items()))
    norm = family_norm(y)

    ratio = n / sup
    paper_bound = n / (math.sqrt(6.0) * math.sqrt(n + 1))
    ok = norm >= n
    details = [{
        "n": n,
        "window_start": spec.k,
        "polynomial": f.construction,
        "support": y.indices(),
        "norm": norm,
        "sup_unit_circle": sup,
        "ratio": ratio,
    }]
    return ExperimentReport(
        name="cut_shift_growth",
        parameters={"n": n, "seed": seed},
        measured=ratio,
        paper_bound=paper_bound,
        satisfied=bool(ok),
        details=details,
    )
