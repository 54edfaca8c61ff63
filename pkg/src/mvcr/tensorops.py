"""Tensor products of MV crystals, N-multiple maps and extremal factorisations.

Tensor convention (Kashiwara): for ``b (x) b'`` with ``b`` on the left,
``f_j`` acts on ``b`` iff ``phi_j(b) > eps_j(b')`` and ``e_j`` acts on ``b``
iff ``phi_j(b) >= eps_j(b')``.  For N factors this is the signature rule:
each factor contributes ``-^eps +^phi``, adjacent ``+-`` pairs cancel, ``f``
hits the leftmost surviving ``+`` and ``e`` the rightmost surviving ``-``.

``MV(lam2) (x) MV(lam1)`` is stored with the ``lam2`` factor first (left).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .extremal import is_extremal
from .mvcrystal import (
    MVPolytope,
    crystal,
    e,
    epsilon,
    f,
    highest,

    raising_path,
)
from .polytope import in_worbit_hull, scale
from .rootdata import CartanDatum, WeylElt, vadd, vscale


class PathDeadEnd(RuntimeError):
    pass


class NotFound(RuntimeError):
    """No extremal factorisation with ``N <= n_max``; not a proof of absence."""

    def __init__(self, n_max: int):
        super().__init__(f"no extremal factorisation found with N <= {n_max}")
        self.n_max = n_max


@dataclass(frozen=True)
class TensorNode:
    factors: tuple  # left factor first

    def __len__(self):
        return len(self.factors)

    @property
    def wt(self):
        out = self.factors[0].wt
        for b in self.factors[1:]:
            out = vadd(out, b.wt)
        return out

    def epsilon(self, j: int) -> int:
        return _signature(self.factors, j)[2]

    def phi(self, j: int) -> int:
        return _signature(self.factors, j)[3]


def _signature(factors, j: int):
    """``(f_target, e_target, eps, phi)``; targets are factor indices or None."""
    stack: list[list[int]] = []  # [factor, surviving plus count]
    minus_count = 0
    last_minus = None
    for k, b in enumerate(factors):
        m = epsilon(b, j)
        p = m + b.wt[j]
        while m and stack:
            top = stack[-1]
            c = min(m, top[1])
            top[1] -= c
            m -= c
            if top[1] == 0:
                stack.pop()
        if m:
            minus_count += m
            last_minus = k
        if p:
            stack.append([k, p])
    plus_count = sum(c for _, c in stack)
    f_target = stack[0][0] if stack else None
    return f_target, last_minus, minus_count, plus_count


def tensor_f(node: TensorNode | None, j: int) -> TensorNode | None:
    if node is None:
        return None
    k = _signature(node.factors, j)[0]
    if k is None:
        return None
    b = f(node.factors[k], j)
    if b is None:
        raise AssertionError("signature rule selected a factor with phi_j = 0")
    return TensorNode(node.factors[:k] + (b,) + node.factors[k + 1:])


def tensor_e(node: TensorNode | None, j: int) -> TensorNode | None:
    if node is None:
        return None
    k = _signature(node.factors, j)[1]
    if k is None:
        return None
    b = e(node.factors[k], j)
    assert b is not None
    return TensorNode(node.factors[:k] + (b,) + node.factors[k + 1:])


def tensor_f_power(node, j: int, k: int):
    for _ in range(k):
        node = tensor_f(node, j)
    return node


def is_highest(node: TensorNode) -> bool:
    return all(node.epsilon(j) == 0 for j in range(node.factors[0].cartan.rank))


# --------------------------------------------------------------------------
# Component decomposition and embeddings
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentEmbedding:
    lam: tuple
    highest: TensorNode
    index: int  # copy number among components of the same highest weight


def decompose(cd: CartanDatum, lam2, lam1) -> list[ComponentEmbedding]:
    """Highest-weight nodes of ``MV(lam2) (x) MV(lam1)`` (``lam2`` on the left)."""
    B2, B1 = crystal(cd, tuple(lam2)), crystal(cd, tuple(lam1))
    found = []
    for P2 in B2:
        for P1 in B1:
            node = TensorNode((P2, P1))
            if is_highest(node):
                found.append(node)
    found.sort(key=lambda n: (tuple(-a for a in cd.to_coroot_basis(n.wt)), B2.node_id(n.factors[0]),
                              B1.node_id(n.factors[1])))
    out, seen = [], {}
    for node in found:
        lam = node.wt
        out.append(ComponentEmbedding(lam, node, seen.get(lam, 0)))
        seen[lam] = seen.get(lam, 0) + 1
    total = sum(len(crystal(cd, c.lam)) for c in out)
    assert total == len(B1) * len(B2), "component dimensions do not add up"
    return out


def component_map(emb: ComponentEmbedding) -> dict:
    """``{P.mu: iota(P)}`` for every ``P`` in ``MV(emb.lam)``, built by walking
    both crystals along the same ``f``-edges."""
    cd = emb.highest.factors[0].cartan
    B = crystal(cd, emb.lam)
    image = {B.highest.mu: emb.highest}
    for s, d, j in B.edges:  # edges are sorted by source; sources precede targets
        src = B.nodes[s]
        if B.nodes[d].mu in image:
            continue
        img = tensor_f(image[src.mu], j)
        if img is None:
            raise AssertionError("tensor component is not isomorphic to MV(lam)")
        image[B.nodes[d].mu] = img
    return image


def embed(P: MVPolytope, emb: ComponentEmbedding, path: Sequence[int] | None = None) -> TensorNode:
    """``iota(P)``: raise ``P`` to ``P_lam`` and replay the lowering path."""
    if tuple(P.lam) != tuple(emb.lam):
        raise ValueError("polytope does not belong to MV(emb.lam)")
    if path is None:
        path = raising_path(P)
    node = emb.highest
    for j in reversed(path):
        node = tensor_f(node, j)
        if node is None:
            raise PathDeadEnd("lowering path fell off the tensor component")
    return node


# --------------------------------------------------------------------------
# N-multiple maps
# --------------------------------------------------------------------------

def s_multiple(P: MVPolytope, N: int) -> MVPolytope:
    """``S_N(P) = N . P`` in ``MV(N lam)``."""
    return MVPolytope(P.cartan, scale(P, N).mu, vscale(N, P.lam))


def power_highest(cd: CartanDatum, lam, N: int) -> TensorNode:
    return TensorNode((highest(cd, lam),) * N)


def g_embed(Q: MVPolytope, N: int, lam) -> TensorNode:
    """Canonical ``MV(N lam) -> MV(lam)^{(x)N}`` sending ``P_{N lam}`` to
    ``P_lam^{(x)N}``."""
    lam = tuple(lam)
    if tuple(Q.lam) != vscale(N, lam):
        raise ValueError("Q must lie in MV(N lam)")
    node = power_highest(Q.cartan, lam, N)
    for j in reversed(raising_path(Q)):
        node = tensor_f(node, j)
        if node is None:
            raise PathDeadEnd("lowering path fell off the Cartan component")
    return node


def k_multiple(P: MVPolytope, N: int) -> TensorNode:
    """``K_N = G_N o S_N``."""
    return g_embed(s_multiple(P, N), N, P.lam)


def k_multiple_via_strings(P: MVPolytope, N: int) -> TensorNode:
    """``f_*^N P_lam^{(x)N}`` for ``P = f_* P_lam``: the other side of the
    commutative square."""
    node = power_highest(P.cartan, P.lam, N)
    for j in reversed(raising_path(P)):
        node = tensor_f_power(node, j, N)
    return node


# --------------------------------------------------------------------------
# Extremal factorisation and LS paths
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    N: int
    xs: tuple  # of WeylElt, minimal coset representatives
    node: TensorNode


def extremal_factorization(P: MVPolytope, n_max: int = 24) -> Factorization:
    """Smallest ``N <= n_max`` with every factor of ``K_N(P)`` extremal."""
    W = P.W
    for N in range(1, n_max + 1):
        node = k_multiple(P, N)
        xs = []
        for b in node.factors:
            x = is_extremal(b)
            if x is None:
                break
            xs.append(x)
        else:
            for a, b in zip(xs, xs[1:]):
                assert W.bruhat_leq(b, a), "factor sequence is not Bruhat-decreasing"
            return Factorization(N, tuple(xs), node)
    raise NotFound(n_max)


@dataclass(frozen=True)
class LSPath:
    lam: tuple
    N: int
    segments: tuple  # ((t_start, t_end, direction), ...) with Fraction times
    turning_points: tuple  # times t where the direction changes

    def at(self, t) -> tuple:
        t = Fraction(t)
        pos = tuple(Fraction(0) for _ in self.lam)
        for a, b, d in self.segments:
            if t <= a:
                break
            span = min(t, b) - a
            pos = tuple(p + span * c for p, c in zip(pos, d))
        return pos

    def breakpoints(self) -> list:
        return [Fraction(0)] + [b for _, b, _ in self.segments]

    def to_json(self) -> dict:
        return {"N": self.N,
                "segments": [{"start": str(a), "end": str(b), "direction": list(d)}
                             for a, b, d in self.segments],
                "turning_points": [str(t) for t in self.turning_points]}


def ls_path(P: MVPolytope, fact: Factorization) -> LSPath:
    """Piecewise-linear path with direction ``x_k . lam`` on ``[(k-1)/N, k/N]``."""
    lam = tuple(P.lam)
    N = fact.N
    segs = []
    for k, x in enumerate(fact.xs):
        d = x.act(lam)
        a, b = Fraction(k, N), Fraction(k + 1, N)
        if segs and segs[-1][2] == d:
            segs[-1] = (segs[-1][0], b, d)
        else:
            segs.append((a, b, d))
    path = LSPath(lam, N, tuple(segs), tuple(s[0] for s in segs[1:]))
    assert path.at(1) == tuple(P.wt), "LS path does not end at wt(P)"
    for t in path.breakpoints():
        assert in_worbit_hull(P.cartan, path.at(t), lam), "LS path leaves Conv(W.lam)"
    return path


def factorization_record(P: MVPolytope, fact: Factorization, pid=None) -> dict:
    return {"P_id": pid, "N": fact.N, "x": [x.label() for x in fact.xs],
            "path": ls_path(P, fact).to_json()}


def bruhat_decreasing(xs: Sequence[WeylElt]) -> bool:
    return all(b.group.bruhat_leq(b, a) for a, b in zip(xs, xs[1:]))
