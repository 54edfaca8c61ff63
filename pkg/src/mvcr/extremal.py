"""Extremal MV polytopes ``P_{x.lam}`` from min-lex subwords and y-sequences."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .mvcrystal import MVPolytope, context, f_power, highest, is_mv_datum
from .polytope import contains_point
from .rootdata import (
    CartanDatum,
    NotDominant,
    WeylElt,
    is_dominant,
    min_coset_rep,
    min_coset_reps,
    weyl_group_of,
)


class InconsistentVertex(RuntimeError):
    pass


def min_lex_subword(x: WeylElt, word: Sequence[int]) -> tuple:
    """Lexicographically least positions ``a_1 < ... < a_p`` (1-based) with
    ``s_{i_{a_1}} ... s_{i_{a_p}} = x w0`` reduced.

    Greedy: take the leftmost letter that is a left descent of the remaining
    target and leaves a target still below the product of the remaining suffix.
    """
    W = x.group
    target = W.mul(x, W.w0)
    word = tuple(word)
    m = len(word)
    # suffix products s_{i_{a+1}} ... s_{i_m}
    suffix = [0] * (m + 1)
    for a in range(m - 1, -1, -1):
        suffix[a] = W.left[suffix[a + 1]][word[a]]
    positions = []
    t = target.index
    a = 0
    while W.lengths[t] > 0:
        while a < m:
            i = word[a]
            rest = W.left[t][i]
            if W.lengths[rest] < W.lengths[t] and rest in W._below[suffix[a + 1]]:
                positions.append(a + 1)
                t = rest
                a += 1
                break
            a += 1
        else:
            raise AssertionError("no reduced subword found")
    return tuple(positions)


def min_lex_subword_bruteforce(x: WeylElt, word: Sequence[int]) -> tuple:
    """Exhaustive oracle for :func:`min_lex_subword`."""
    W = x.group
    target = W.mul(x, W.w0)
    p = target.length
    for pos in combinations(range(1, len(word) + 1), p):  # lexicographic
        if W.elem_from_word(word[a - 1] for a in pos) == target:
            return pos
    raise AssertionError("empty S(x w0, i)")


@dataclass(frozen=True)
class YSequence:
    word: tuple
    positions: tuple
    y: tuple  # y_0 .. y_m
    v: tuple  # v_0 .. v_m


def y_sequence(x: WeylElt, word: Sequence[int]) -> YSequence:
    W = x.group
    word = tuple(word)
    m = len(word)
    pos = set(min_lex_subword(x, word))
    prefixes = [W.e]
    for i in word:
        prefixes.append(W.mul(prefixes[-1], W.s(i)))
    y = [None] * (m + 1)
    v = [None] * (m + 1)
    y[m] = v[m] = W.e
    for l in range(m, 0, -1):
        i = word[l - 1]
        if l in pos:
            y[l - 1] = y[l]
            v[l - 1] = W.mul(W.s(i), v[l])
            assert v[l - 1].length == v[l].length + 1
        else:
            y[l - 1] = W.mul(W.reflection(prefixes[l - 1], i), y[l])
            v[l - 1] = v[l]
    w0inv = W.inverse(W.w0)
    for l in range(m + 1):
        assert y[l] == W.mul(W.mul(prefixes[l], v[l]), w0inv), "y_l != w_l v_l w0^-1"
    return YSequence(word, tuple(sorted(pos)), tuple(y), tuple(v))


def extremal_datum_on_words(x: WeylElt, lam, words) -> tuple:
    W = x.group
    lam = tuple(lam)
    mu = [None] * len(W)
    for word in words:
        ys = y_sequence(x, word)
        k = 0
        for l in range(len(word) + 1):
            if l:
                k = W.right[k][word[l - 1]]
            val = ys.y[l].act(lam)
            if mu[k] is None:
                mu[k] = val
            elif mu[k] != val:
                raise InconsistentVertex(f"words disagree at {W[k].label()}")
    if any(a is None for a in mu):
        raise ValueError("the given words do not cover W")
    return tuple(mu)


@lru_cache(maxsize=None)
def _extremal_cached(cd: CartanDatum, x_index: int, lam: tuple) -> MVPolytope:
    W = weyl_group_of(cd)
    ctx = context(cd)
    mu = extremal_datum_on_words(W[x_index], lam, ctx.words)
    return MVPolytope(cd, mu, lam)


def extremal_polytope(x: WeylElt, lam, check: bool = False) -> MVPolytope:
    """``P_{x.lam}`` with ``mu_{w_l} = y_l . lam`` on every reduced word.

    With ``check`` the result is also verified to be an MV datum equal to
    ``Conv(W_{<=x} . lam)``.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    cd = x.group.cartan
    P = _extremal_cached(cd, x.index, lam)
    if check:
        assert is_mv_datum(cd, P.mu), "extremal datum is not an MV datum"
        assert equals_bruhat_hull(P, x, lam), "extremal polytope != Conv(W_{<=x}.lam)"
    return P


def equals_bruhat_hull(P, x: WeylElt, lam) -> bool:
    """``P == Conv(W_{<=x} . lam)``, decided by two exact inclusions."""
    W = x.group
    pts = {z.act(tuple(lam)) for z in W.bruhat_interval_below(x)}
    # every vertex of P is one of the points, and every point lies in P
    return set(P.vertices()) <= pts and all(contains_point(P, p) for p in pts)


def extremal_by_strings(x: WeylElt, lam) -> MVPolytope | None:
    """``f_{j_1}^{c_1} ... f_{j_r}^{c_r} P_lam`` along the ShortLex word of x,
    with ``c_t = <s_{j_{t+1}} ... s_{j_r} lam, alpha_{j_t}>``."""
    W = x.group
    lam = tuple(lam)
    P = highest(W.cartan, lam)
    cur = W.e
    for j in reversed(x.word):
        c = cur.act(lam)[j]
        assert c >= 0
        P = f_power(P, j, c)
        cur = W.mul(W.s(j), cur)
    return P


def is_extremal(P: MVPolytope) -> WeylElt | None:
    """The minimal coset representative ``x`` with ``P = P_{x.lam}``, if any."""
    cd = P.cartan
    for x in min_coset_reps(cd, P.lam):
        if x.act(P.lam) == P.wt:
            # lowest vertex x.lam determines the only candidate
            return x if extremal_polytope(x, P.lam).mu == P.mu else None
    return None


def reduce_to_min_rep(x: WeylElt, lam) -> WeylElt:
    return min_coset_rep(x, lam)


def edge_inequality_violations(P: MVPolytope) -> list:
    """Edges ``w < w s_j`` of an extremal datum violating either
    ``mu_{ws_j} in {mu_w, (w s_j w^-1) mu_w}`` or ``<mu_{ws_j}, w.alpha_j> >= 0``."""
    W = P.W
    bad = []
    for w in W:
        winv = W.inverse(w)
        for j in range(W.rank):
            k = W.right[w.index][j]
            if W.lengths[k] < W.lengths[w.index]:
                continue
            a, b = P.mu[w.index], P.mu[k]
            refl = W.reflection(w, j)
            if b != a and b != refl.act(a):
                bad.append((w, j, "vertex"))
            # <mu, w.alpha_j> = <w^-1 mu, alpha_j>
            if winv.act(b)[j] < 0:
                bad.append((w, j, "pairing"))
    return bad
