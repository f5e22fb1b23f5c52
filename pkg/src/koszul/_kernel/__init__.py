"""Integer row-reduction kernel with backend selection.

The compiled int64 backend is used when built and not disabled via
KOSZUL_PURE=1; any per-call overflow bail falls back to the big-integer
implementation transparently.
"""

from __future__ import annotations

import os

from koszul._kernel.bareiss_py import OverflowBail, echelon_py

_fast = None
_backend = "python"
if os.environ.get("KOSZUL_PURE") != "1":
    try:
        from koszul._kernel import _bareiss_cy

        _fast = _bareiss_cy.echelon_i64
        _backend = "cython"
    except ImportError:
        pass


def kernel_backend() -> str:
    """Active backend name: 'cython' or 'python'."""
    return _backend


def echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon of integer rows; see bareiss_py.echelon_py."""
    if _fast is not None:
        try:
            return _fast(rows)
        except OverflowBail:
            pass
    return echelon_py(rows)


__all__ = ["echelon", "echelon_py", "kernel_backend", "OverflowBail"]
