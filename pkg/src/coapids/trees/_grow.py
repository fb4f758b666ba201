"""Best-first tree growth over presorted feature columns.

One engine serves all three learners: plain classification trees (leaf-count
capped), forest member trees (bootstrap weights, per-split feature subsets)
and boosting's second-order regression trees (depth capped). Per-node numeric
work is delegated to :mod:`coapids.kernels`; this module owns the frontier
policy and tie rules:

* within one feature the lowest qualifying threshold wins,
* across features the lowest feature index wins,
* frontier leaves with equal impurity decrease split in creation order.
"""

import heapq

import numpy as np

from .. import kernels


class TreeArrays:
    """Frozen array form of a fitted tree, ready for vectorized routing."""

    __slots__ = ("feature", "threshold", "left", "right", "value", "depth", "n_leaves")

    def __init__(self, feature, threshold, left, right, value, depth, n_leaves):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.value = value
        self.depth = depth
        self.n_leaves = n_leaves

    def apply(self, X):
        """Leaf index reached by every row of ``X``."""
        pos = np.zeros(X.shape[0], dtype=np.int32)
        safe_feature = np.where(self.feature < 0, 0, self.feature)
        rows = np.arange(X.shape[0])
        for _ in range(self.depth):
            f = safe_feature[pos]
            go_right = X[rows, f] > self.threshold[pos]
            pos = np.where(go_right, self.right[pos], self.left[pos])
        return pos

    def predict_value(self, X):
        return self.value[self.apply(X)]


def presort_columns(X):
    """Stable per-feature argsort of the full dataset, shared between trees."""
    n, d = X.shape
    cols = np.empty((d, n), dtype=np.int32)
    for j in range(d):
        cols[j] = np.argsort(X[:, j], kind="stable").astype(np.int32)
    return cols


class _Node:
    __slots__ = ("node_id", "cols", "depth", "best_gain", "best_feature",
                 "best_threshold", "value", "left_id", "right_id")

    def __init__(self, node_id, cols, depth):
        self.node_id = node_id
        self.cols = cols
        self.depth = depth


def _grow(X, presorted, root_flags, search, max_leaf_nodes):
    """Generic best-first loop; ``search`` fills a node's split candidate."""
    n = X.shape[0]
    if root_flags is None:
        root_cols = presorted
    else:
        root_cols, _ = kernels.partition(presorted, root_flags)

    nodes = []
    root = _Node(0, root_cols, 0)
    nodes.append(root)
    search(root)

    heap = []
    counter = 0
    if root.best_gain > 0.0:
        heapq.heappush(heap, (-root.best_gain, counter, root))
        counter += 1

    n_leaves = 1
    max_depth_seen = 0
    while heap and (max_leaf_nodes is None or n_leaves < max_leaf_nodes):
        _, _, node = heapq.heappop(heap)
        sub = node.cols[0]
        flags = np.zeros(n, dtype=np.uint8)
        go_left = X[sub, node.best_feature] <= node.best_threshold
        flags[sub[go_left]] = 1
        left_cols, right_cols = kernels.partition(node.cols, flags)
        node.cols = None  # children own the rows now

        left_child = _Node(len(nodes), left_cols, node.depth + 1)
        nodes.append(left_child)
        search(left_child)
        right_child = _Node(len(nodes), right_cols, node.depth + 1)
        nodes.append(right_child)
        search(right_child)
        for child in (left_child, right_child):
            if child.best_gain > 0.0:
                heapq.heappush(heap, (-child.best_gain, counter, child))
                counter += 1
        node.left_id = left_child.node_id
        node.right_id = right_child.node_id
        max_depth_seen = max(max_depth_seen, node.depth + 1)
        n_leaves += 1

    return nodes, max_depth_seen


def _freeze(nodes, max_depth_seen, value_shape):
    n_nodes = len(nodes)
    feature = np.full(n_nodes, -1, dtype=np.int32)
    threshold = np.full(n_nodes, np.nan)
    left = np.arange(n_nodes, dtype=np.int32)
    right = np.arange(n_nodes, dtype=np.int32)
    value = np.zeros((n_nodes,) + value_shape)
    n_leaves = 0
    for node in nodes:
        value[node.node_id] = node.value
        if getattr(node, "left_id", None) is not None:
            feature[node.node_id] = node.best_feature
            threshold[node.node_id] = node.best_threshold
            left[node.node_id] = node.left_id
            right[node.node_id] = node.right_id
        else:
            n_leaves += 1
    return TreeArrays(feature, threshold, left, right, value, max_depth_seen, n_leaves)


def grow_classification(X, y, w, k, criterion, presorted, root_flags=None,
                        max_leaf_nodes=None, min_samples_split=2,
                        features_per_split=None, rng=None):
    """Fit one classification tree; returns :class:`TreeArrays` with
    per-node class probability vectors."""
    d = X.shape[1]

    def search(node):
        node.left_id = None
        totals = kernels.class_stats(node.cols[0], y, w, k)
        total_w = 0.0
        present = 0
        for t in totals:
            total_w += t
            if t > 0.0:
                present += 1
        node.value = totals / total_w
        node.best_gain = -np.inf
        node.best_feature = -1
        node.best_threshold = np.nan
        m = node.cols.shape[1]
        if present <= 1 or m < min_samples_split:
            return
        parent_cost = total_w * kernels.impurity(totals, total_w, criterion)
        if features_per_split is not None and features_per_split < d:
            feats = np.sort(rng.choice(d, size=features_per_split, replace=False))
        else:
            feats = range(d)
        best_gain = 0.0
        for j in feats:
            gain, thr = kernels.scan_classification(
                X, node.cols[j], j, y, w, totals, total_w, parent_cost, criterion)
            if gain > best_gain:
                best_gain = gain
                node.best_feature = int(j)
                node.best_threshold = thr
        node.best_gain = best_gain if node.best_feature >= 0 else -np.inf

    nodes, depth = _grow(X, presorted, root_flags, search, max_leaf_nodes)
    return _freeze(nodes, depth, (k,))


def grow_regression(X, g, h, lam, min_child_weight, learning_rate, presorted,
                    max_depth=None, root_flags=None):
    """Fit one second-order regression tree; per-node values are the Newton
    leaf weights already scaled by the learning rate."""
    d = X.shape[1]

    def search(node):
        node.left_id = None
        g_total, h_total = kernels.grad_stats(node.cols[0], g, h)
        node.value = -g_total / (h_total + lam) * learning_rate
        node.best_gain = -np.inf
        node.best_feature = -1
        node.best_threshold = np.nan
        m = node.cols.shape[1]
        if m < 2 or (max_depth is not None and node.depth >= max_depth):
            return
        parent_score = g_total * g_total / (h_total + lam)
        best_gain = 0.0
        for j in range(d):
            gain, thr = kernels.scan_regression(
                X, node.cols[j], j, g, h, g_total, h_total,
                lam, min_child_weight, parent_score)
            if gain > best_gain:
                best_gain = gain
                node.best_feature = int(j)
                node.best_threshold = thr
        node.best_gain = best_gain if node.best_feature >= 0 else -np.inf

    nodes, depth = _grow(X, presorted, root_flags, search, None)
    return _freeze(nodes, depth, ())
