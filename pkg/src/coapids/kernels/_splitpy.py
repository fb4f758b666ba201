"""Pure numpy split-search kernels.

Fallback backend used when the compiled extension is unavailable. Every
function here mirrors its compiled twin operation-for-operation (same
accumulation order, same branch structure, no fused multiply-adds) so both
backends grow bit-identical trees. Do not "simplify" the arithmetic.
"""

import numpy as np

GINI = 0
ENTROPY = 1

# Rational approximation of log2 on [sqrt(1/2), sqrt(2)), exact on powers
# of two. Both backends use this instead of their platform log2, whose low
# bits differ between numpy's SIMD path and libm.
_P = (
    1.01875663804580931796e-4,
    4.97494994976747001425e-1,
    4.70579119878881725854e0,
    1.44989225341610930846e1,
    1.79368678507819816313e1,
    7.70838733755885391666e0,
)
_Q = (
    1.12873587189167450590e1,
    4.52279145837532221105e1,
    8.29875266912776603211e1,
    7.11544750618563894466e1,
    2.31251620126765340583e1,
)
_LOG2EA = 4.4269504088896340735992e-1
_SQRTH = 0.70710678118654752440


def log2_shared(values):
    """Vectorized shared log2; input must be positive and finite."""
    x, e = np.frexp(np.asarray(values, dtype=np.float64))
    e = e.astype(np.float64)
    low = x < _SQRTH
    e = np.where(low, e - 1.0, e)
    x = np.where(low, 2.0 * x - 1.0, x - 1.0)
    z = x * x
    num = np.full_like(x, _P[0])
    for c in _P[1:]:
        num = num * x + c
    den = x + _Q[0]
    for c in _Q[1:]:
        den = den * x + c
    y = x * (z * num / den) - 0.5 * z
    r = y * _LOG2EA
    r += x * _LOG2EA
    r += y
    r += x
    r += e
    return r


def log2_scalar(value):
    """Scalar twin of :func:`log2_shared` in plain Python floats."""
    import math

    x, e = math.frexp(value)
    e = float(e)
    if x < _SQRTH:
        e -= 1.0
        x = 2.0 * x - 1.0
    else:
        x = x - 1.0
    z = x * x
    num = _P[0]
    for c in _P[1:]:
        num = num * x + c
    den = x + _Q[0]
    for c in _Q[1:]:
        den = den * x + c
    y = x * (z * num / den) - 0.5 * z
    r = y * _LOG2EA
    r += x * _LOG2EA
    r += y
    r += x
    r += e
    return r


def class_stats(idx, y, w, k):
    """Weighted class masses of the rows in ``idx``, accumulated in order."""
    totals = np.zeros(k, dtype=np.float64)
    np.add.at(totals, y[idx], w[idx])
    return totals


def grad_stats(idx, g, h):
    """Gradient/hessian sums of the rows in ``idx``, accumulated in order."""
    gs = np.cumsum(g[idx])
    hs = np.cumsum(h[idx])
    if len(gs) == 0:
        return 0.0, 0.0
    return float(gs[-1]), float(hs[-1])


def scan_classification(X, idx, j, y, w, totals, total_weight, parent_cost, criterion):
    """Best boundary on feature ``j`` over the node rows ``idx`` (presorted).

    Returns ``(gain, threshold)``; gain is ``-inf`` when the feature offers
    no candidate boundary. The first maximum along ascending values wins.
    """
    vals = X[idx, j]
    m = vals.shape[0]
    if m < 2:
        return -np.inf, np.nan
    ys = y[idx]
    ws = w[idx]

    boundary = np.nonzero(vals[1:] != vals[:-1])[0] + 1
    if boundary.shape[0] == 0:
        return -np.inf, np.nan

    onehot = np.zeros((m, totals.shape[0]), dtype=np.float64)
    onehot[np.arange(m), ys] = ws
    cum = np.cumsum(onehot, axis=0)
    left = cum[boundary - 1]

    k = totals.shape[0]
    wl = left[:, 0].copy()
    for c in range(1, k):
        wl += left[:, c]
    wr = total_weight - wl

    if criterion == GINI:
        acc_l = np.zeros(wl.shape[0])
        acc_r = np.zeros(wl.shape[0])
        for c in range(k):
            pl = left[:, c] / wl
            acc_l += pl * pl
            pr = (totals[c] - left[:, c]) / wr
            acc_r += pr * pr
        imp_l = 1.0 - acc_l
        imp_r = 1.0 - acc_r
    else:
        imp_l = np.zeros(wl.shape[0])
        imp_r = np.zeros(wl.shape[0])
        for c in range(k):
            pl = left[:, c] / wl
            mask = pl > 0.0
            term = np.zeros_like(pl)
            term[mask] = pl[mask] * log2_shared(pl[mask])
            imp_l -= term
            pr = (totals[c] - left[:, c]) / wr
            mask = pr > 0.0
            term = np.zeros_like(pr)
            term[mask] = pr[mask] * log2_shared(pr[mask])
            imp_r -= term

    child = wl * imp_l + wr * imp_r
    gains = parent_cost - child
    best = int(np.argmax(gains))
    pos = boundary[best]
    threshold = (vals[pos - 1] + vals[pos]) / 2.0
    return float(gains[best]), float(threshold)


def scan_regression(X, idx, j, g, h, g_total, h_total, lam, min_child_weight, parent_score):
    """Best boundary on feature ``j`` for a second-order regression split."""
    vals = X[idx, j]
    m = vals.shape[0]
    if m < 2:
        return -np.inf, np.nan
    gs = np.cumsum(g[idx])
    hs = np.cumsum(h[idx])

    boundary = np.nonzero(vals[1:] != vals[:-1])[0] + 1
    if boundary.shape[0] == 0:
        return -np.inf, np.nan
    gl = gs[boundary - 1]
    hl = hs[boundary - 1]
    gr = g_total - gl
    hr = h_total - hl

    gains = gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent_score
    invalid = (hl < min_child_weight) | (hr < min_child_weight)
    gains[invalid] = -np.inf
    best = int(np.argmax(gains))
    if gains[best] == -np.inf:
        return -np.inf, np.nan
    pos = boundary[best]
    threshold = (vals[pos - 1] + vals[pos]) / 2.0
    return float(gains[best]), float(threshold)


def partition(cols, flags):
    """Stable split of per-feature sorted row indices by the ``flags`` mask."""
    d = cols.shape[0]
    take = flags[cols[0]].astype(bool)
    ml = int(take.sum())
    mr = cols.shape[1] - ml
    left = np.empty((d, ml), dtype=np.int32)
    right = np.empty((d, mr), dtype=np.int32)
    for j in range(d):
        row = cols[j]
        mask = flags[row].astype(bool)
        left[j] = row[mask]
        right[j] = row[~mask]
    return left, right
