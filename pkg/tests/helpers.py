"""Shared generators and independent oracles used across the test suite."""

import math
import random

from coapids.wire import CoapMessage, CoapOption, MessageType


def random_message(rand: random.Random) -> CoapMessage:
    """Draw a random structurally valid CoAP message."""
    token = rand.randbytes(rand.randint(0, 8))
    n_options = rand.randint(0, 6)
    numbers = sorted(rand.choice([rand.randint(0, 40), rand.randint(0, 3000)])
                     for _ in range(n_options))
    options = []
    for number in numbers:
        # Length buckets chosen to exercise all three length encodings.
        bucket = rand.random()
        if bucket < 0.7:
            size = rand.randint(0, 12)
        elif bucket < 0.93:
            size = rand.randint(13, 268)
        else:
            size = rand.randint(269, 900)
        options.append(CoapOption(number, rand.randbytes(size)))
    payload = rand.randbytes(rand.choice([0, 0, rand.randint(1, 200)]))
    return CoapMessage(
        msg_type=MessageType(rand.randint(0, 3)),
        code=(rand.randint(0, 7), rand.randint(0, 31)),
        message_id=rand.randint(0, 0xFFFF),
        token=token,
        options=options,
        payload=payload,
    )


def confusion_matrix_oracle(y_true, y_pred, k):
    """Count-based confusion matrix built by direct pair enumeration."""
    matrix = [[0] * k for _ in range(k)]
    for t, p in zip(y_true, y_pred):
        matrix[t][p] += 1
    return matrix


def metrics_from_confusion(matrix):
    """Per-class and support-weighted P/R/F1 recomputed from a confusion matrix."""
    k = len(matrix)
    n = sum(sum(row) for row in matrix)
    per_class = []
    for c in range(k):
        tp = matrix[c][c]
        fp = sum(matrix[r][c] for r in range(k)) - tp
        fn = sum(matrix[c]) - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class.append((precision, recall, f1, sum(matrix[c])))
    weighted = [
        sum(row[i] * row[3] / n for row in per_class) if n else 0.0
        for i in range(3)
    ]
    return per_class, tuple(weighted)


def gini_oracle(counts):
    total = sum(counts)
    if total == 0:
        return 0.0
    return 1.0 - sum((c / total) ** 2 for c in counts)


def entropy_oracle(counts):
    total = sum(counts)
    if total == 0:
        return 0.0
    acc = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            acc -= p * math.log2(p)
    return acc
