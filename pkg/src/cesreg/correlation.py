"""Correlation-coefficient family and the rank machinery behind it.

Seven coefficients behind one dispatcher, all mapping a pair of
equal-length vectors into [-1, 1]:

- ``pearson``: product-moment correlation.
- ``spearman``: Pearson on midranks.
- ``kendall``: tau-b (tie-corrected denominator).
- ``gini``: cograduation index on midranks,
  ``[sum |p_i + q_i - (n+1)| - sum |p_i - q_i|] / floor(n^2 / 2)``.
- ``gdcc``: greatest-deviation coefficient, built from maxima of cumulative
  exceedance counts of the y-rank permutation taken in x-sorted order and
  of its reversal. Ties are broken by order of first appearance so the
  input always reduces to a permutation.
- ``absolute``: difference-of-distances coefficient
  ``(sum |u+v| - sum |u-v|) / (sum |u+v| + sum |u-v|)`` on median-centered,
  MAD-scaled inputs.
- ``mad``: same standardization, with squared MADs of the sum and
  difference in place of the distance sums.

The ``absolute`` and ``mad`` forms are reconstructions of the
difference-of-distances scheme, not transcriptions of a published
reference; the self-normalizing denominators guarantee the [-1, 1] range
and the value 1 on identical standardized inputs. MADs carry no
consistency factor: only ratios appear, so the factor would cancel.
"""

from __future__ import annotations

import numpy as np

from ._validation import check_vector, is_constant
from .exceptions import DegenerateInputError, InvalidInputError

CC_KINDS = ("pearson", "spearman", "kendall", "gini", "gdcc", "absolute", "mad")

# Median/MAD standardization needs n >= 3 to be meaningful.
_MIN_N = {
    "pearson": 2,
    "spearman": 2,
    "kendall": 2,
    "gini": 2,
    "gdcc": 2,
    "absolute": 3,
    "mad": 3,
}


def midranks(v) -> np.ndarray:
    """Ranks of ``v`` with ties assigned the mean of the positions they occupy.

    The ranks always sum to n(n+1)/2; without ties they are a permutation
    of 1..n.
    """
    v = check_vector(v, "v")
    n = v.size
    order = np.argsort(v, kind="stable")
    sv = v[order]
    inv = np.empty(n, dtype=np.intp)
    inv[order] = np.arange(n)
    new_group = np.r_[True, sv[1:] != sv[:-1]]
    group_id = np.cumsum(new_group) - 1
    starts = np.flatnonzero(new_group)
    ends = np.r_[starts[1:], n]
    group_rank = 0.5 * (starts + ends + 1.0)  # mean of 1-based positions
    return group_rank[group_id][inv]


def _permutation_ranks(v: np.ndarray) -> np.ndarray:
    """Integer ranks 1..n with ties broken by order of first appearance."""
    ranks = np.empty(v.size, dtype=np.intp)
    ranks[np.argsort(v, kind="stable")] = np.arange(1, v.size + 1)
    return ranks


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    ac = a - a.mean()
    bc = b - b.mean()
    denom = np.sqrt((ac * ac).sum() * (bc * bc).sum())
    if denom == 0.0:
        raise DegenerateInputError("pearson is undefined for constant input")
    return float(np.clip((ac * bc).sum() / denom, -1.0, 1.0))


def _spearman(a: np.ndarray, b: np.ndarray) -> float:
    if is_constant(a) or is_constant(b):
        raise DegenerateInputError("spearman is undefined for constant input")
    return _pearson(midranks(a), midranks(b))


def _tie_term(v: np.ndarray) -> float:
    _, counts = np.unique(v, return_counts=True)
    return float((counts * (counts - 1) // 2).sum())


def _kendall(a: np.ndarray, b: np.ndarray) -> float:
    n = a.size
    sa = np.sign(a[:, None] - a[None, :])
    sb = np.sign(b[:, None] - b[None, :])
    num = float((sa * sb).sum()) / 2.0  # concordant minus discordant pairs
    n0 = n * (n - 1) / 2.0
    denom = np.sqrt((n0 - _tie_term(a)) * (n0 - _tie_term(b)))
    if denom == 0.0:
        raise DegenerateInputError("kendall tau-b is undefined for constant input")
    return num / denom


def _gini(a: np.ndarray, b: np.ndarray) -> float:
    if is_constant(a) or is_constant(b):
        raise DegenerateInputError("gini cograduation is undefined for constant input")
    n = a.size
    p = midranks(a)
    q = midranks(b)
    num = np.abs(p + q - (n + 1)).sum() - np.abs(p - q).sum()
    return float(num) / (n * n // 2)


def _gdcc(a: np.ndarray, b: np.ndarray) -> float:
    n = a.size
    order = np.argsort(a, kind="stable")
    p = _permutation_ranks(b)[order]

    def peak_exceedance(perm: np.ndarray) -> int:
        ivals = np.arange(1, n + 1)
        exceed = perm[None, :] > ivals[:, None]
        diag = np.arange(n)
        return int(np.cumsum(exceed, axis=1)[diag, diag].max())

    d_fwd = peak_exceedance(p)
    d_rev = peak_exceedance(n + 1 - p)
    return (d_rev - d_fwd) / (n // 2)


def _standardize_median_mad(v: np.ndarray, kind: str) -> np.ndarray:
    dev = v - np.median(v)
    mad = np.median(np.abs(dev))
    if mad == 0.0:
        raise DegenerateInputError(f"{kind} is undefined when the MAD vanishes")
    return dev / mad


def _absolute(a: np.ndarray, b: np.ndarray) -> float:
    u = _standardize_median_mad(a, "absolute")
    v = _standardize_median_mad(b, "absolute")
    plus = np.abs(u + v).sum()
    minus = np.abs(u - v).sum()
    return float((plus - minus) / (plus + minus))


def _mad_cc(a: np.ndarray, b: np.ndarray) -> float:
    u = _standardize_median_mad(a, "mad")
    v = _standardize_median_mad(b, "mad")
    sp = np.median(np.abs((u + v) - np.median(u + v)))
    sm = np.median(np.abs((u - v) - np.median(u - v)))
    denom = sp * sp + sm * sm
    if denom == 0.0:
        raise DegenerateInputError("mad coefficient is undefined: both spreads vanish")
    return float((sp * sp - sm * sm) / denom)


_FUNCS = {
    "pearson": _pearson,
    "spearman": _spearman,
    "kendall": _kendall,
    "gini": _gini,
    "gdcc": _gdcc,
    "absolute": _absolute,
    "mad": _mad_cc,
}


# ---------------------------------------------------------------------------
# Profiled evaluators for the zero-correlation solves.
#
# The inner equation corr(kind, base, response - s*base) = 0 is solved by
# bisection, so one fit evaluates the same coefficient thousands of times
# with a fixed ``base`` and, per candidate slope, a fixed ``response``.
# These evaluators precompute whatever depends only on those fixed vectors
# (difference matrices, midranks, moment quadratics) and agree with
# ``corr`` to floating-point noise, with one deliberate extension: an
# exactly constant ``response - s*base`` marks the zero-correlation point
# and evaluates to 0 instead of raising.
# ---------------------------------------------------------------------------


def _pearson_evaluator(base: np.ndarray):
    w = base - base.mean()
    sxx = float(w @ w)
    if sxx == 0.0:
        raise DegenerateInputError("pearson is undefined for constant input")

    def make_f(response: np.ndarray):
        num0 = float(w @ response)  # w sums to 0, so centering r is implicit

        def f(s: float) -> float:
            # denominator from the difference vector itself; a precomputed
            # quadratic in s cancels catastrophically near the root
            t = response - s * base
            tc = t - t.mean()
            q = float(tc @ tc)
            if q == 0.0:
                return 0.0  # constant t: the zero-correlation point
            return float(np.clip((num0 - s * sxx) / np.sqrt(sxx * q), -1.0, 1.0))

        return f

    return make_f


def _spearman_evaluator(base: np.ndarray):
    p = midranks(base)
    pc = p - p.mean()
    spp = float(pc @ pc)
    if spp == 0.0:
        raise DegenerateInputError("spearman is undefined for constant input")

    def make_f(response: np.ndarray):
        def f(s: float) -> float:
            t = response - s * base
            if t.max() == t.min():
                return 0.0
            qc = midranks(t) - (t.size + 1) / 2.0  # midranks center at (n+1)/2
            sqq = float(qc @ qc)
            return float(np.clip((pc @ qc) / np.sqrt(spp * sqq), -1.0, 1.0))

        return f

    return make_f


def _kendall_evaluator(base: np.ndarray):
    n = base.size
    db = base[:, None] - base[None, :]
    sb = np.sign(db)
    n0 = n * (n - 1) / 2.0
    ties_b = ((sb == 0.0).sum() - n) / 2.0
    if n0 - ties_b == 0.0:
        raise DegenerateInputError("kendall tau-b is undefined for constant input")

    def make_f(response: np.ndarray):
        dr = response[:, None] - response[None, :]

        def f(s: float) -> float:
            st = np.sign(dr - s * db)
            ties_t = ((st == 0.0).sum() - n) / 2.0
            if n0 - ties_t == 0.0:
                return 0.0  # constant t: the zero-correlation point
            num = float((sb * st).sum()) / 2.0
            return num / np.sqrt((n0 - ties_b) * (n0 - ties_t))

        return f

    return make_f


def _gini_evaluator(base: np.ndarray):
    if is_constant(base):
        raise DegenerateInputError("gini cograduation is undefined for constant input")
    n = base.size
    p = midranks(base)
    denom = n * n // 2

    def make_f(response: np.ndarray):
        def f(s: float) -> float:
            t = response - s * base
            if t.max() == t.min():
                return 0.0
            q = midranks(t)
            return float(np.abs(p + q - (n + 1)).sum() - np.abs(p - q).sum()) / denom

        return f

    return make_f


def _gdcc_evaluator(base: np.ndarray):
    n = base.size
    order = np.argsort(base, kind="stable")
    ivals = np.arange(1, n + 1)
    diag = np.arange(n)
    halves = n // 2

    def peak(perm: np.ndarray) -> int:
        return int(np.cumsum(perm[None, :] > ivals[:, None], axis=1)[diag, diag].max())

    def make_f(response: np.ndarray):
        def f(s: float) -> float:
            t = response - s * base
            if t.max() == t.min():
                return 0.0
            p = _permutation_ranks(t)[order]
            return (peak(n + 1 - p) - peak(p)) / halves

        return f

    return make_f


def _mad_family_evaluator(kind: str):
    def evaluator(base: np.ndarray):
        u = _standardize_median_mad(base, kind)

        def make_f(response: np.ndarray):
            def f(s: float) -> float:
                t = response - s * base
                if t.max() == t.min():
                    return 0.0
                v = _standardize_median_mad(t, kind)
                if kind == "absolute":
                    plus = np.abs(u + v).sum()
                    minus = np.abs(u - v).sum()
                    return float((plus - minus) / (plus + minus))
                sp = np.median(np.abs((u + v) - np.median(u + v)))
                sm = np.median(np.abs((u - v) - np.median(u - v)))
                denom = sp * sp + sm * sm
                if denom == 0.0:
                    raise DegenerateInputError(
                        "mad coefficient is undefined: both spreads vanish"
                    )
                return float((sp * sp - sm * sm) / denom)

            return f

        return make_f

    return evaluator


_EVALUATORS = {
    "pearson": _pearson_evaluator,
    "spearman": _spearman_evaluator,
    "kendall": _kendall_evaluator,
    "gini": _gini_evaluator,
    "gdcc": _gdcc_evaluator,
    "absolute": _mad_family_evaluator("absolute"),
    "mad": _mad_family_evaluator("mad"),
}


def zero_corr_evaluator(kind: str, base: np.ndarray):
    """Factory of fast inner-equation evaluators for a fixed ``base``.

    ``zero_corr_evaluator(kind, base)(response)`` returns
    ``f(s) = corr(kind, base, response - s*base)``, except that a constant
    difference vector evaluates to 0 (the zero-correlation point) rather
    than raising.
    """
    return _EVALUATORS[check_cc(kind)](np.asarray(base, dtype=float))


def check_cc(kind: str) -> str:
    """Validate a correlation-kind name, returning its canonical form."""
    canon = str(kind).strip().lower()
    if canon not in _FUNCS:
        raise InvalidInputError(
            f"unknown correlation kind {kind!r}; expected one of {', '.join(CC_KINDS)}"
        )
    return canon


def corr(kind: str, a, b) -> float:
    """Correlation of ``a`` and ``b`` under the named coefficient.

    Parameters
    ----------
    kind : str
        One of ``CC_KINDS``.
    a, b : array_like
        Equal-length 1-D samples. Length must be at least 2 (3 for the
        ``absolute`` and ``mad`` kinds).

    Returns
    -------
    float in [-1, 1].

    Raises
    ------
    DegenerateInputError
        When the coefficient is undefined on the input, e.g. a constant
        vector for kinds whose denominator then vanishes.
    """
    kind = check_cc(kind)
    a = check_vector(a, "a", min_len=_MIN_N[kind])
    b = check_vector(b, "b", min_len=_MIN_N[kind])
    if a.size != b.size:
        raise InvalidInputError(f"a and b must have equal length, got {a.size} and {b.size}")
    return _FUNCS[kind](a, b)
