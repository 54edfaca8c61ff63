"""Pure-Python reference kernels for Lusztig-datum transport.

These mirror ``_kernel_c.pyx`` exactly and are used when the compiled
extension is unavailable (or ``MVCR_PURE_PYTHON=1``).
"""
from __future__ import annotations


def transport(n0, root, steps, nwords):
    """Lusztig data on every reduced word of w0.

    ``steps`` is a BFS list of ``(parent, child, kind, k)`` moves starting at
    ``root``; ``kind`` is 2 or 3 and ``k`` the 0-based offset of the move.
    """
    data = [None] * nwords
    data[root] = list(n0)
    for parent, child, kind, k in steps:
        n = data[parent][:]
        if kind == 2:
            n[k], n[k + 1] = n[k + 1], n[k]
        else:
            a, b, c = n[k], n[k + 1], n[k + 2]
            m = a if a < c else c
            n[k] = b + c - m
            n[k + 1] = m
            n[k + 2] = a + b - m
        data[child] = n
    return data


def accumulate(data, lam, elt, dirs, nW):
    """Assemble the GGMS datum from Lusztig data on every word.

    Walks each word downward from ``mu_{w0} = lam``.  Returns ``(mu, -1)`` or
    ``(None, w)`` where ``w`` is the W-index of the first vertex two words
    disagree on.
    """
    mu = [None] * nW
    for u, n in enumerate(data):
        row_e = elt[u]
        row_d = dirs[u]
        v = tuple(lam)
        m = len(n)
        top = row_e[m]
        if mu[top] is None:
            mu[top] = v
        elif mu[top] != v:
            return None, top
        for l in range(m - 1, -1, -1):
            c = n[l]
            if c:
                v = tuple(a - c * d for a, d in zip(v, row_d[l]))
            w = row_e[l]
            if mu[w] is None:
                mu[w] = v
            elif mu[w] != v:
                return None, w
    return tuple(mu), -1


def rebuild(plan, n0, lam):
    data = transport(n0, plan.root, plan.steps, plan.nwords)
    return accumulate(data, lam, plan.elt, plan.dirs, plan.nW)
