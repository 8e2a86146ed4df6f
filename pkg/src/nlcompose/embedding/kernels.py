"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

Set NLCOMPOSE_KERNEL=python to force the fallback (used by the kernel
benchmark and by tests that compare both paths).
"""

from __future__ import annotations

import os

from nlcompose.embedding import _fallback

try:
    from nlcompose.embedding import _simcore
except ImportError:  # extension not built
    _simcore = None

_FORCED = os.environ.get("NLCOMPOSE_KERNEL", "").lower()

if _FORCED == "python" or _simcore is None:
    cosine_scores = _fallback.cosine_scores
    ACTIVE_KERNEL = "python"
else:
    cosine_scores = _simcore.cosine_scores
    ACTIVE_KERNEL = "compiled"


def active_kernel() -> str:
    """'compiled' when the extension is loaded, else 'python'."""
    return ACTIVE_KERNEL


def available_kernels() -> dict[str, object]:
    """Implementations by name, for benchmarks and equivalence tests."""
    kernels: dict[str, object] = {"python": _fallback.cosine_scores}
    if _simcore is not None:
        kernels["compiled"] = _simcore.cosine_scores
    return kernels
