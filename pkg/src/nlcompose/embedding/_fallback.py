"""Numpy implementation of the similarity kernel, used when the compiled
extension is unavailable. Same contract as ``_simcore.cosine_scores``."""

from __future__ import annotations

import numpy as np


def cosine_scores(
    matrix: np.ndarray, row_norms: np.ndarray, query: np.ndarray
) -> np.ndarray:
    qnorm = float(np.linalg.norm(query))
    out = np.zeros(matrix.shape[0], dtype=np.float64)
    if qnorm == 0.0:
        return out
    nonzero = row_norms != 0.0
    if np.any(nonzero):
        dots = matrix[nonzero] @ query
        out[nonzero] = dots / (row_norms[nonzero] * qnorm)
    return out
