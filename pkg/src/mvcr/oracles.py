"""Representation-theoretic oracles that share no code paths with the crystal.

Only the Cartan matrix is taken from :mod:`mvcr.rootdata`.  Positive roots come
from a reflection closure written here, the Weyl dimension formula and
Freudenthal's recursion use the invariant form ``(u, v) = u A^{-1} v`` on
fundamental-coweight coordinates.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .rootdata import CartanDatum


def _inverse(A) -> list:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [a / piv for a in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                fac = M[r][c]
                M[r] = [a - fac * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


@lru_cache(maxsize=None)
def positive_roots(cd: CartanDatum) -> tuple:
    """Positive roots in simple-root coordinates, by closing under reflections."""
    n = cd.rank
    A = cd.A
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                # <beta, alpha_i^vee> with symmetric A
                c = sum(beta[k] * A[k][i] for k in range(n))
                gamma = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
                if all(g >= 0 for g in gamma) and any(gamma) and gamma not in seen:
                    seen.add(gamma)
                    new.append(gamma)
        frontier = new
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def _pair(lam, beta) -> int:
    """``(lam, beta)`` for ``lam`` in fundamental coordinates, ``beta`` in root
    coordinates."""
    return sum(a * b for a, b in zip(lam, beta))


def weyl_dimension(cd: CartanDatum, lam) -> int:
    num = Fraction(1)
    rho = (1,) * cd.rank
    lr = tuple(a + 1 for a in lam)
    for beta in positive_roots(cd):
        num *= Fraction(_pair(lr, beta), _pair(rho, beta))
    assert num.denominator == 1
    return int(num)


def _form(Ainv, u, v) -> Fraction:
    n = len(u)
    return sum(u[i] * Ainv[i][j] * v[j] for i in range(n) for j in range(n))


def freudenthal(cd: CartanDatum, lam) -> Counter:
    """Weight multiplicities of ``L(lam)`` as a Counter over integer weights."""
    n = cd.rank
    A = cd.A
    lam = tuple(lam)
    if any(a < 0 for a in lam):
        raise ValueError("lambda must be dominant")
    Ainv = _inverse(A)
    roots = [tuple(sum(r[k] * A[k][i] for k in range(n)) for i in range(n))
             for r in positive_roots(cd)]  # in fundamental coordinates
    rho = (1,) * n
    lr = tuple(a + b for a, b in zip(lam, rho))
    top = _form(Ainv, lr, lr)
    mult: dict = {lam: 1}
    layer = [lam]
    while layer:
        nxt = set()
        for mu in layer:
            for i in range(n):
                nxt.add(tuple(a - b for a, b in zip(mu, A[i])))
        layer = []
        for mu in sorted(nxt):
            if mu in mult:
                continue
            mr = tuple(a + b for a, b in zip(mu, rho))
            denom = top - _form(Ainv, mr, mr)
            if denom <= 0:
                continue
            s = Fraction(0)
            for r in roots:
                k = 1
                while True:
                    nu = tuple(a + k * b for a, b in zip(mu, r))
                    m = mult.get(nu)
                    if m is None:
                        break
                    s += m * _form(Ainv, nu, r)
                    k += 1
            val = 2 * s / denom
            assert val.denominator == 1
            if val > 0:
                mult[mu] = int(val)
                layer.append(mu)
    return Counter(mult)


def tensor_multiplicities(cd: CartanDatum, lam1, lam2) -> Counter:
    """``{lam: m}`` with ``L(lam1) (x) L(lam2) = sum m L(lam)``, by peeling
    highest weights off the product character."""
    c1, c2 = freudenthal(cd, lam1), freudenthal(cd, lam2)
    chi: Counter = Counter()
    for a, m in c1.items():
        for b, k in c2.items():
            chi[tuple(x + y for x, y in zip(a, b))] += m * k
    Ainv = _inverse(cd.A)
    rho = (1,) * cd.rank
    out: Counter = Counter()
    while chi:
        # a maximal weight: largest pairing with rho in the invariant form
        top = max(chi, key=lambda v: (_form(Ainv, v, rho), v))
        m = chi[top]
        assert m > 0 and all(a >= 0 for a in top)
        out[top] += m
        for w, k in freudenthal(cd, top).items():
            chi[w] -= m * k
            if chi[w] == 0:
                del chi[w]
    return out
