"""Demazure crystals MV_x(lam) and the Demazure character oracle."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .extremal import extremal_polytope
from .mvcrystal import LusztigDatum, MVPolytope, context, f, highest, polytope_from_lusztig
from .polytope import contains
from .rootdata import (
    CartanDatum,
    NotDominant,
    build_cartan,
    WeylElt,
    is_dominant,
    min_coset_rep,
    parse_word,
    weyl_group_of,
    word_label,
)


@dataclass(frozen=True)
class DemazureSet:
    x: WeylElt
    lam: tuple
    members: frozenset  # of MVPolytope

    def __len__(self):
        return len(self.members)

    def __contains__(self, P):
        return P in self.members

    def __iter__(self):
        return iter(self.sorted_members())

    def sorted_members(self) -> list[MVPolytope]:
        return sorted(self.members, key=lambda P: (sum(P.cartan.to_coroot_basis(
            tuple(a - b for a, b in zip(self.lam, P.wt)))), P.lusztig().n))

    def weight_multiset(self) -> Counter:
        return Counter(P.wt for P in self.members)

    def to_json(self) -> dict:
        ctx = context(self.x.group.cartan)
        return {
            "cartan": self.x.group.cartan.name or [list(r) for r in self.x.group.cartan.A],
            "x": self.x.label(),
            "lambda": list(self.lam),
            "lusztig_word": word_label(ctx.words[ctx.base_word]),
            "members": [list(P.lusztig().n) for P in self.sorted_members()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "DemazureSet":
        cd = build_cartan(data["cartan"])
        W = weyl_group_of(cd)
        lam = tuple(data["lambda"])
        word = parse_word(data["lusztig_word"], cd.rank)
        members = frozenset(polytope_from_lusztig(cd, lam, LusztigDatum(word, n))
                            for n in data["members"])
        return cls(W.elem_from_word(parse_word(data["x"], cd.rank)), lam, members)


def _check(x: WeylElt, lam) -> tuple:
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return lam


def string_closure(S, j: int) -> set:
    """``{f_j^k b : b in S, k >= 0} minus {0}``."""
    out = set()
    for b in S:
        while b is not None and b not in out:
            out.add(b)
            b = f(b, j)
    return out


def demazure_set(x: WeylElt, lam, word: Sequence[int] | None = None) -> DemazureSet:
    """``{f_{j_1}^{c_1} ... f_{j_r}^{c_r} P_lam}`` over a reduced word of ``x``.

    ``x`` is first replaced by its minimal coset representative.  The default
    word is the ShortLex-least one.
    """
    lam = _check(x, lam)
    x = min_coset_rep(x, lam)
    if word is None:
        word = x.word
    elif x.group.elem_from_word(word) != x or len(word) != x.length:
        raise ValueError(f"{word_label(word)} is not a reduced word of {x.label()}")
    S = {highest(x.group.cartan, lam)}
    for j in reversed(tuple(word)):
        S = string_closure(S, j)
    return DemazureSet(x, lam, frozenset(S))


def demazure_set_recursive(x: WeylElt, lam) -> DemazureSet:
    """``B_x = U_k f_j^k B_{s_j x}`` for the largest left descent ``j`` of x."""
    lam = _check(x, lam)
    W = x.group
    memo: dict[int, frozenset] = {}

    def rec(w: WeylElt) -> frozenset:
        if w.index in memo:
            return memo[w.index]
        if w.length == 0:
            res = frozenset([highest(W.cartan, lam)])
        else:
            j = max(i for i in range(W.rank) if W.lengths[W.left[w.index][i]] < w.length)
            res = frozenset(string_closure(rec(W[W.left[w.index][j]]), j))
        memo[w.index] = res
        return res

    return DemazureSet(min_coset_rep(x, lam), lam, rec(x))


def in_demazure(P: MVPolytope, x: WeylElt, lam) -> bool:
    return P in demazure_set(x, lam).members


def opposite_demazure_member(P: MVPolytope, x: WeylElt, lam) -> bool:
    """``P`` contains the extremal polytope ``P_{x.lam}``."""
    return contains(P, extremal_polytope(x, lam))


def demazure_operator(cd: CartanDatum, chi: Counter, j: int) -> Counter:
    """Apply ``D_j(e^mu) = (e^mu - e^{s_j mu - h_j}) / (1 - e^{-h_j})``."""
    h = cd.A[j]
    out: Counter = Counter()
    for mu, c in chi.items():
        n = mu[j]
        if n >= 0:
            for t in range(n + 1):
                out[tuple(a - t * b for a, b in zip(mu, h))] += c
        elif n <= -2:
            for t in range(1, -n):
                out[tuple(a + t * b for a, b in zip(mu, h))] -= c
    return Counter({k: v for k, v in out.items() if v})


def demazure_character_oracle(x: WeylElt, lam) -> Counter:
    """Weight multiset of ``V_x(lam)``: ``D_{j_1} ... D_{j_r} e^lam``."""
    lam = _check(x, lam)
    cd = x.group.cartan
    chi = Counter({lam: 1})
    for j in reversed(x.word):
        chi = demazure_operator(cd, chi, j)
    assert all(v > 0 for v in chi.values())
    return chi
