"""Split-search kernels with a compiled core and a pure numpy fallback.

The tree learners funnel all their per-node work through this module:
class/gradient statistics, the best-split scan over one presorted feature,
and the stable partition of presorted row indices. The compiled extension
is preferred when importable; the numpy fallback is an exact behavioural
twin (bit-identical gains, thresholds and partitions), so models do not
depend on which backend built them.

Set ``COAPIDS_KERNEL=python`` in the environment to force the fallback.
"""

import os

from . import _splitpy

if os.environ.get("COAPIDS_KERNEL") == "python":
    _impl = _splitpy
    BACKEND = "python"
else:
    try:
        from . import _splitcy as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _splitpy
        BACKEND = "python"

GINI = _splitpy.GINI
ENTROPY = _splitpy.ENTROPY

class_stats = _impl.class_stats
grad_stats = _impl.grad_stats
scan_classification = _impl.scan_classification
scan_regression = _impl.scan_regression
partition = _impl.partition
log2_shared = _impl.log2_shared
log2_scalar = _impl.log2_scalar


def impurity(totals, total_weight, criterion):
    """Scalar node impurity, computed with the same ops as the scan kernels."""
    if criterion == GINI:
        acc = 0.0
        for t in totals:
            p = t / total_weight
            acc += p * p
        return 1.0 - acc
    imp = 0.0
    for t in totals:
        p = t / total_weight
        if p > 0.0:
            imp -= p * log2_scalar(p)
    return imp


def get_backend(name):
    """Return a specific backend module ("python" or "cython") for tests."""
    if name == "python":
        return _splitpy
    from . import _splitcy

    return _splitcy
