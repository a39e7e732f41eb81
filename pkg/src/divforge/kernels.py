"""Kernel dispatch: compiled Dhar reduction when available, Python otherwise.

Set ``DIVFORGE_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os

from . import _dhar_py

try:
    if os.environ.get("DIVFORGE_PURE", "") not in ("", "0"):
        raise ImportError("pure kernel requested")
    from . import _dhar as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# int64 headroom kept for the compiled path
_LIMIT = 1 << 62


def _fits_int64(adj, dist, chips) -> bool:
    # Chips move by at most (total degree) per unit fired and the layer phase
    # multiplies debt by at most that factor per layer.
    total = sum(map(sum, adj)) + 1
    bound = (sum(abs(c) for c in chips) + 1) * total ** (max(dist) + 2)
    return bound < _LIMIT


def reduce_chips(adj, dist, chips, q, backend: str | None = None):
    """Dispatch to a reduction kernel.

    ``backend`` may be ``"python"`` or ``"cython"`` to force a choice; by
    default the compiled kernel is used whenever it is built and the
    overflow bound allows it.
    """
    if backend == "python":
        return _dhar_py.reduce_chips(adj, dist, chips, q)
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernel is not built")
        if not _fits_int64(adj, dist, chips):
            raise OverflowError("chip counts too large for the 64-bit kernel")
        return _compiled.reduce_chips(adj, dist, chips, q)
    if _compiled is not None and _fits_int64(adj, dist, chips):
        return _compiled.reduce_chips(adj, dist, chips, q)
    return _dhar_py.reduce_chips(adj, dist, chips, q)


def rank_levels(adj, dist, chips, q, backend: str | None = None) -> int:
    """Baker-Norine rank of ``chips`` on a weight-zero graph."""
    # D - E never has more debt than D plus its degree
    probe = list(chips) + [sum(abs(c) for c in chips) + 1]
    if backend == "python":
        return _dhar_py.rank_levels(adj, dist, chips, q)
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernel is not built")
        if not _fits_int64(adj, dist, probe):
            raise OverflowError("chip counts too large for the 64-bit kernel")
        return _compiled.rank_levels(adj, dist, chips, q)
    if _compiled is not None and _fits_int64(adj, dist, probe):
        return _compiled.rank_levels(adj, dist, chips, q)
    return _dhar_py.rank_levels(adj, dist, chips, q)
