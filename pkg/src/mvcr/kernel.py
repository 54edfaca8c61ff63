"""Backend selection for the transport kernels.

The compiled extension ``_kernel_c`` is used when importable; otherwise the
pure-Python ``_kernel_py`` is used.  Setting ``MVCR_PURE_PYTHON=1`` forces the
fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernel_py

try:
    if os.environ.get("MVCR_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python requested")
    from . import _kernel_c
except ImportError:  # pragma: no cover - depends on build
    _kernel_c = None

BACKEND = "cython" if _kernel_c is not None else "python"


class TransportPlan:
    """Precomputed BFS transport over R(w0) from a fixed root word.

    ``steps``: ``(parent, child, kind, k)`` move list in BFS order.
    ``elt[u][l]``: W-index of the prefix ``w_l`` of word ``u``.
    ``dirs[u][l]``: the coweight ``w_l . h_{i_{l+1}}`` (0-based ``l``).
    """

    def __init__(self, root, steps, elt, dirs, nW):
        self.root = root
        self.steps = steps
        self.elt = elt
        self.dirs = dirs
        self.nW = nW
        self.nwords = len(elt)
        self._arrays = None

    def arrays(self):
        if self._arrays is None:
            steps = np.asarray(self.steps, dtype=np.int64).reshape(-1, 4)
            self._arrays = (steps, np.asarray(self.elt, dtype=np.int64),
                            np.asarray(self.dirs, dtype=np.int64))
        return self._arrays


def _rebuild_c(plan: TransportPlan, n0, lam):
    steps, elt, dirs = plan.arrays()
    data = _kernel_c.transport(np.asarray(n0, dtype=np.int64), plan.root, steps, plan.nwords)
    mu, bad = _kernel_c.accumulate(data, np.asarray(lam, dtype=np.int64), elt, dirs, plan.nW)
    if mu is None:
        return None, bad
    return tuple(map(tuple, mu.tolist())), -1


def rebuild(plan: TransportPlan, n0, lam, backend: str | None = None):
    """GGMS datum ``mu`` from Lusztig data ``n0`` on the plan's root word.

    Returns ``(mu, -1)`` or ``(None, conflicting_w_index)``.
    """
    b = backend or BACKEND
    if b == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel not available")
        return _rebuild_c(plan, n0, lam)
    return _kernel_py.rebuild(plan, n0, lam)


def transport(plan: TransportPlan, n0, backend: str | None = None) -> list[tuple]:
    """Lusztig data of ``n0`` on every reduced word, indexed like the move graph."""
    b = backend or BACKEND
    if b == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel not available")
        steps, _, _ = plan.arrays()
        data = _kernel_c.transport(np.asarray(n0, dtype=np.int64), plan.root, steps, plan.nwords)
        return [tuple(r) for r in data.tolist()]
    return [tuple(r) for r in _kernel_py.transport(n0, plan.root, plan.steps, plan.nwords)]
