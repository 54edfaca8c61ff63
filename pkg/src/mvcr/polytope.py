"""GGMS data and pseudo-Weyl polytopes with exact containment tests.

A pseudo-Weyl polytope is stored as its GGMS datum: a dense tuple of integer
coweights indexed by the deterministic order of the Weyl group.  Every
geometric question (containment, hull membership) reduces to cone tests of the
form ``w^{-1}(v - mu_w) in sum_j R_{>=0} h_j`` and is decided over the integers
or rationals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootdata import (
    CartanDatum,
    NotDominant,
    WeylElt,
    WeylGroup,
    dominant_translate,
    is_dominant,
    parse_word,
    vadd,
    vscale,
    vsub,
    weyl_group_of,
)


class NotProportional(ValueError):
    """A difference of adjacent GGMS vertices is not a nonnegative multiple of
    the expected coroot."""


def proportionality(d: Sequence[int], r: Sequence[int]) -> int | None:
    """Return ``c`` with ``d == c * r`` for an integer ``c``, else ``None``."""
    k = next((t for t, a in enumerate(r) if a), None)
    if k is None:
        return 0 if not any(d) else None
    c, rem = divmod(d[k], r[k])
    if rem or any(a != c * b for a, b in zip(d, r)):
        return None
    return c


@dataclass(frozen=True)
class PseudoWeylPolytope:
    """Pseudo-Weyl polytope given by its GGMS datum ``mu[w.index]``."""

    cartan: CartanDatum
    mu: tuple

    @property
    def W(self) -> WeylGroup:
        return weyl_group_of(self.cartan)

    def __getitem__(self, w: WeylElt):
        return self.mu[w.index]

    def vertex(self, w: WeylElt):
        return self.mu[w.index]

    def vertices(self) -> list[tuple]:
        """Distinct vertices in W order."""
        return list(dict.fromkeys(self.mu))

    @property
    def lowest(self):
        return self.mu[0]

    @property
    def highest(self):
        return self.mu[-1]

    def to_json(self) -> dict:
        return {w.label(): list(self.mu[w.index]) for w in self.W}

    @classmethod
    def from_json(cls, cartan: CartanDatum, data: dict) -> "PseudoWeylPolytope":
        W = weyl_group_of(cartan)
        mu = [None] * len(W)
        for key, coords in data.items():
            w = W.elem_from_word(parse_word(key, cartan.rank))
            mu[w.index] = tuple(coords)
        if any(v is None for v in mu):
            raise ValueError("GGMS datum JSON does not cover every Weyl group element")
        return cls(cartan, tuple(mu))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


GGMSDatum = PseudoWeylPolytope


def point(cartan: CartanDatum, v) -> PseudoWeylPolytope:
    """The constant datum, i.e. the one-point polytope ``{v}``."""
    v = tuple(v)
    return PseudoWeylPolytope(cartan, (v,) * len(weyl_group_of(cartan)))


def orbit_polytope(cartan: CartanDatum, lam) -> PseudoWeylPolytope:
    """``Conv(W . lam)`` for dominant ``lam``; vertex in the w-cone is ``w w0 lam``."""
    if not is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    W = weyl_group_of(cartan)
    low = W.w0.act(tuple(lam))
    return PseudoWeylPolytope(cartan, tuple(w.act(low) for w in W))


def is_ggms(cartan: CartanDatum, mu: Sequence) -> bool:
    """Check ``mu_{w s_i} - mu_w in Z_{>=0} (w . h_i)`` on every edge."""
    W = weyl_group_of(cartan)
    if len(mu) != len(W):
        return False
    for w in W:
        for i in range(cartan.rank):
            ws = W.right[w.index][i]
            if W.lengths[ws] < W.lengths[w.index]:
                continue
            c = proportionality(vsub(mu[ws], mu[w.index]), w.act(cartan.A[i]))
            if c is None or c < 0:
                return False
    return True


def edge_lengths(P: PseudoWeylPolytope, word: Sequence[int]) -> tuple:
    """Lusztig data ``(N_1, ..., N_m)`` of ``P`` along a reduced word of w0."""
    W = P.W
    A = P.cartan.A
    out = []
    k = 0
    for i in word:
        nk = W.right[k][i]
        c = proportionality(vsub(P.mu[nk], P.mu[k]), W.elements[k].act(A[i]))
        if c is None or c < 0:
            raise NotProportional(
                f"edge {W.elements[k].label()} -> {W.elements[nk].label()} is not a "
                "nonnegative multiple of the reflected coroot")
        out.append(c)
        k = nk
    return tuple(out)


def minkowski_sum(*polys: PseudoWeylPolytope) -> PseudoWeylPolytope:
    """Minkowski sum as the componentwise sum of GGMS data."""
    first = polys[0]
    for P in polys[1:]:
        if P.cartan != first.cartan:
            raise ValueError("Minkowski sum of polytopes for different Cartan data")
    mu = first.mu
    for P in polys[1:]:
        mu = tuple(vadd(a, b) for a, b in zip(mu, P.mu))
    return PseudoWeylPolytope(first.cartan, mu)


def scale(P: PseudoWeylPolytope, N: int) -> PseudoWeylPolytope:
    if N < 1:
        raise ValueError("scale factor must be a positive integer")
    return PseudoWeylPolytope(P.cartan, tuple(vscale(N, v) for v in P.mu))


def in_cone(P: PseudoWeylPolytope, w: WeylElt, v) -> bool:
    """``w^{-1}(v - mu_w)`` is a nonnegative combination of simple coroots."""
    winv = w.inverse()
    return P.cartan.in_positive_cone(winv.act(vsub(v, P.mu[w.index])))


def membership_witness(P: PseudoWeylPolytope, v) -> WeylElt | None:
    """First chamber ``w`` whose cone excludes ``v``, or ``None`` if ``v in P``."""
    for w in P.W:
        if not in_cone(P, w, v):
            return w
    return None


def contains_point(P: PseudoWeylPolytope, v) -> bool:
    return membership_witness(P, v) is None


def containment_witness(outer: PseudoWeylPolytope, inner: PseudoWeylPolytope):
    """``None`` if ``inner`` lies in ``outer``; else ``(vertex, chamber)`` with
    the vertex of ``inner`` outside the cone of ``outer`` at that chamber."""
    if outer.cartan != inner.cartan:
        raise ValueError("containment between polytopes of different Cartan data")
    for v in inner.vertices():
        w = membership_witness(outer, v)
        if w is not None:
            return v, w
    return None


def contains(outer: PseudoWeylPolytope, inner: PseudoWeylPolytope) -> bool:
    return containment_witness(outer, inner) is None


def in_worbit_hull(cartan: CartanDatum, v, lam) -> bool:
    """Exact test of ``v in Conv(W . lam)`` for dominant ``lam``.

    ``v`` may have rational coordinates.
    """
    if not is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    dom, _ = dominant_translate(cartan, v)
    return cartan.in_positive_cone(vsub(tuple(lam), dom))


def hull_of_points_contains(P: PseudoWeylPolytope, points: Iterable) -> bool:
    """``Conv(points) <= P``."""
    return all(contains_point(P, p) for p in points)
