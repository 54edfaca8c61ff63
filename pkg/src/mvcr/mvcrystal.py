"""MV data, Lusztig data and the LBZ crystal structure on MV(lambda).

The Kashiwara operators act on the first Lusztig coordinate of a reduced word
of ``w0`` starting with ``j``: every other vertex on that chain is fixed and
only ``mu_e`` moves by ``-/+ h_j``.  The full datum is rebuilt by transporting
the Lusztig datum across the 2-/3-move graph (see :mod:`mvcr.kernel`).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from . import kernel
from .polytope import (
    NotProportional,
    PseudoWeylPolytope,
    edge_lengths,
    in_worbit_hull,
    is_ggms,
    point,
    proportionality,
)
from .rootdata import (
    CartanDatum,
    Move,
    NotDominant,
    RootDataError,
    apply_move_to_word,
    build_cartan,
    is_dominant,
    move_graph,
    vsub,
    weyl_group_of,
    word_label,
)


class InvalidMove(RootDataError):
    pass


class InconsistentTransport(RuntimeError):
    """Two reduced words assign different coordinates to the same vertex."""


class OutsideHull(ValueError):
    """The rebuilt polytope is not contained in ``Conv(W . lambda)``."""


class NoWordStartingWithJ(RuntimeError):
    pass


# --------------------------------------------------------------------------
# Per-Cartan context: reduced words, move graph and transport plans
# --------------------------------------------------------------------------

class MVContext:
    def __init__(self, cd: CartanDatum):
        self.cartan = cd
        self.W = weyl_group_of(cd)
        self.graph = move_graph(cd)
        self.words = self.graph.words
        self.m = len(self.words[0])
        W, A = self.W, cd.A
        self.elt, self.dirs = [], []
        for word in self.words:
            k, es, ds = 0, [0], []
            for i in word:
                ds.append(W.elements[k].act(A[i]))
                k = W.right[k][i]
                es.append(k)
            self.elt.append(es)
            self.dirs.append(ds)
        self._plans: dict[int, kernel.TransportPlan] = {}
        self.first_word = {}
        for j in range(cd.rank):
            # words are sorted, so the first hit is ShortLex-least
            u = next((u for u, w in enumerate(self.words) if w[0] == j), None)
            if u is None:
                raise NoWordStartingWithJ(j)
            self.first_word[j] = u
        self.base_word = 0
        self.op_cache: dict = {}

    def plan(self, root: int) -> kernel.TransportPlan:
        p = self._plans.get(root)
        if p is None:
            order, parent = self.graph.bfs_tree(root)
            steps = [(parent[v][0], v, parent[v][1].kind, parent[v][1].k) for v in order[1:]]
            p = kernel.TransportPlan(root, steps, self.elt, self.dirs, len(self.W))
            self._plans[root] = p
        return p


@lru_cache(maxsize=None)
def context(cd: CartanDatum) -> MVContext:
    return MVContext(cd)


# --------------------------------------------------------------------------
# Lusztig data and moves
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LusztigDatum:
    word: tuple
    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "n", tuple(int(a) for a in self.n))
        if len(self.word) != len(self.n):
            raise ValueError("Lusztig datum length does not match the word")
        if any(a < 0 for a in self.n):
            raise ValueError(f"negative Lusztig datum {self.n}")


def move_lusztig(n: Sequence[int], mv: Move) -> tuple:
    n = list(n)
    k = mv.k
    if mv.kind == 2:
        n[k], n[k + 1] = n[k + 1], n[k]
    else:
        a, b, c = n[k], n[k + 1], n[k + 2]
        m = min(a, c)
        n[k], n[k + 1], n[k + 2] = b + c - m, m, a + b - m
    return tuple(n)


def apply_move(cd: CartanDatum, L: LusztigDatum, mv: Move) -> LusztigDatum:
    """Transport a Lusztig datum across one 2- or 3-move."""
    try:
        word = apply_move_to_word(cd, L.word, mv)
    except (RootDataError, IndexError) as exc:
        raise InvalidMove(str(exc)) from None
    return LusztigDatum(word, move_lusztig(L.n, mv))


def transport_all(cd: CartanDatum, L: LusztigDatum) -> dict:
    """Lusztig data on every reduced word of w0, keyed by word."""
    ctx = context(cd)
    root = ctx.graph.index[L.word]
    data = kernel.transport(ctx.plan(root), L.n)
    return {ctx.words[u]: d for u, d in enumerate(data)}


def transport_around(cd: CartanDatum, L: LusztigDatum, cycle) -> LusztigDatum:
    """Apply the moves of a closed walk ``[(u, v, Move), ...]`` in order."""
    ctx = context(cd)
    cur = L
    for u, v, mv in cycle:
        if ctx.words[u] != cur.word:
            raise InvalidMove("cycle does not start at the datum's word")
        cur = apply_move(cd, cur, mv)
        assert cur.word == ctx.words[v]
    return cur


# --------------------------------------------------------------------------
# MV polytopes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MVPolytope(PseudoWeylPolytope):
    """An MV polytope in MV(lam): GGMS datum plus its highest vertex."""

    lam: tuple = field(default=())

    def lusztig(self, word: Sequence[int] | None = None) -> LusztigDatum:
        ctx = context(self.cartan)
        w = tuple(word) if word is not None else ctx.words[ctx.base_word]
        return LusztigDatum(w, edge_lengths(self, w))

    @property
    def wt(self):
        return self.mu[0]

    def label(self) -> str:
        n = self.lusztig().n
        return f"wt={list(self.wt)} n={list(n)}"


def _inside_hull(cd: CartanDatum, mu, lam) -> bool:
    return all(in_worbit_hull(cd, v, lam) for v in dict.fromkeys(mu))


def _rebuild(cd: CartanDatum, lam, word_index: int, n) -> tuple:
    ctx = context(cd)
    mu, bad = kernel.rebuild(ctx.plan(word_index), n, lam)
    if mu is None:
        raise InconsistentTransport(
            f"move transport assigns two different vertices to {ctx.W[bad].label()}")
    return mu


def polytope_from_lusztig(cd: CartanDatum, lam, L: LusztigDatum, check_hull: bool = True) -> MVPolytope:
    """The MV polytope with highest vertex ``lam`` and Lusztig datum ``L``."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    ctx = context(cd)
    if L.word not in ctx.graph.index:
        raise ValueError(f"{word_label(L.word)} is not a reduced word of w0")
    mu = _rebuild(cd, lam, ctx.graph.index[L.word], L.n)
    if check_hull and not _inside_hull(cd, mu, lam):
        raise OutsideHull(f"Lusztig datum {L.n} leaves Conv(W.{list(lam)})")
    return MVPolytope(cd, mu, lam)


def highest(cd: CartanDatum, lam) -> MVPolytope:
    """``P_lam = {lam}``."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return MVPolytope(cd, point(cd, lam).mu, lam)


def is_mv_datum(cd: CartanDatum, mu) -> bool:
    """GGMS datum whose edge lengths satisfy every 2-/3-move relation."""
    mu = tuple(mu)
    if not is_ggms(cd, mu):
        return False
    ctx = context(cd)
    P = PseudoWeylPolytope(cd, mu)
    try:
        lengths = [edge_lengths(P, w) for w in ctx.words]
    except NotProportional:
        return False
    for u, v, mv in ctx.graph.edges():
        if move_lusztig(lengths[u], mv) != lengths[v]:
            return False
    return True


def as_mv(P: PseudoWeylPolytope, lam=None) -> MVPolytope:
    lam = tuple(lam) if lam is not None else P.highest
    return MVPolytope(P.cartan, P.mu, lam)


# --------------------------------------------------------------------------
# Crystal structure
# --------------------------------------------------------------------------

def wt(P: MVPolytope):
    return P.mu[0]


def epsilon(P: MVPolytope, j: int) -> int:
    W = P.W
    c = proportionality(vsub(P.mu[W.left[0][j]], P.mu[0]), P.cartan.A[j])
    assert c is not None and c >= 0, "datum violates the length condition at s_j"
    return c


def phi(P: MVPolytope, j: int) -> int:
    return P.mu[0][j] + epsilon(P, j)


def _shift_first(P: MVPolytope, j: int, delta: int, check_hull: bool) -> MVPolytope:
    ctx = context(P.cartan)
    u = ctx.first_word[j]
    n = list(edge_lengths(P, ctx.words[u]))
    n[0] += delta
    mu = _rebuild(P.cartan, P.lam, u, n)
    if check_hull and not _inside_hull(P.cartan, mu, P.lam):
        raise OutsideHull("rebuilt polytope leaves Conv(W.lam)")
    return MVPolytope(P.cartan, mu, P.lam)


def f(P: MVPolytope, j: int) -> MVPolytope | None:
    """Lowering operator ``f_j``; ``None`` stands for the zero element."""
    cache = context(P.cartan).op_cache
    key = ("f", j, P.lam, P.mu)
    if key in cache:
        return cache[key]
    if phi(P, j) == 0:
        # geometric nullity must agree with phi_j = 0
        assert not _inside_hull(P.cartan, _shift_first(P, j, 1, False).mu, P.lam), \
            "phi_j = 0 but f_j P stays inside Conv(W.lam)"
        out = None
    else:
        out = _shift_first(P, j, 1, False)
        assert _inside_hull(P.cartan, out.mu, P.lam), "phi_j > 0 but f_j P leaves Conv(W.lam)"
    cache[key] = out
    return out


def e(P: MVPolytope, j: int) -> MVPolytope | None:
    """Raising operator ``e_j``; ``None`` stands for the zero element."""
    cache = context(P.cartan).op_cache
    key = ("e", j, P.lam, P.mu)
    if key in cache:
        return cache[key]
    out = None if epsilon(P, j) == 0 else _shift_first(P, j, -1, False)
    cache[key] = out
    return out


def f_geometric(P: MVPolytope, j: int) -> MVPolytope | None:
    """``f_j`` decided by the containment ``P(f_j mu) <= Conv(W.lam)`` alone."""
    Q = _shift_first(P, j, 1, False)
    return Q if _inside_hull(P.cartan, Q.mu, P.lam) else None


def f_on_word(P: MVPolytope, j: int, word: Sequence[int]) -> MVPolytope:
    """``f_j`` realised on an arbitrary reduced word starting with ``j``."""
    ctx = context(P.cartan)
    word = tuple(word)
    if word[0] != j:
        raise ValueError("word must start with j")
    n = list(edge_lengths(P, word))
    n[0] += 1
    mu = _rebuild(P.cartan, P.lam, ctx.graph.index[word], n)
    return MVPolytope(P.cartan, mu, P.lam)


def f_power(P: MVPolytope | None, j: int, k: int) -> MVPolytope | None:
    for _ in range(k):
        if P is None:
            return None
        P = f(P, j)
    return P


def e_power(P: MVPolytope | None, j: int, k: int) -> MVPolytope | None:
    for _ in range(k):
        if P is None:
            return None
        P = e(P, j)
    return P


def raising_path(P: MVPolytope) -> tuple:
    """Indices ``(j_1, ..., j_r)`` with ``e_{j_r} ... e_{j_1} P = P_lam``, always
    raising along the smallest ``j`` with ``epsilon_j > 0``."""
    path = []
    cur = P
    rank = P.cartan.rank
    while True:
        j = next((j for j in range(rank) if epsilon(cur, j) > 0), None)
        if j is None:
            return tuple(path)
        cur = e(cur, j)
        path.append(j)


# --------------------------------------------------------------------------
# The crystal graph MV(lambda)
# --------------------------------------------------------------------------

@dataclass
class CrystalGraph:
    cartan: CartanDatum
    lam: tuple
    nodes: list
    edges: list  # (src, dst, j) with dst = f_j src
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {P.mu: k for k, P in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    def __iter__(self) -> Iterator[MVPolytope]:
        return iter(self.nodes)

    def __contains__(self, P) -> bool:
        return P.mu in self.index

    def node_id(self, P) -> int:
        return self.index[P.mu]

    @property
    def highest(self) -> MVPolytope:
        return self.nodes[0]

    @property
    def lowest(self) -> MVPolytope:
        return self.nodes[-1]

    def weight_multiset(self) -> dict:
        out: dict = {}
        for P in self.nodes:
            out[P.wt] = out.get(P.wt, 0) + 1
        return out

    def sources(self) -> list[int]:
        has_in = {d for _, d, _ in self.edges}
        return [k for k in range(len(self.nodes)) if k not in has_in]

    def sinks(self) -> list[int]:
        has_out = {s for s, _, _ in self.edges}
        return [k for k in range(len(self.nodes)) if k not in has_out]

    # ---- export ----
    def to_dot(self) -> str:
        ctx = context(self.cartan)
        base = word_label(ctx.words[ctx.base_word])
        lines = ["digraph MV {",
                 f'  label="MV({",".join(map(str, self.lam))}) Cartan {self.cartan.name}; '
                 f'Lusztig data on word {base}";',
                 "  node [shape=box];"]
        for k, P in enumerate(self.nodes):
            n = ",".join(map(str, P.lusztig().n))
            w = ",".join(map(str, P.wt))
            lines.append(f'  n{k} [label="wt=({w})\\nn=({n})"];')
        for s, d, j in self.edges:
            lines.append(f'  n{s} -> n{d} [label="{j + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        ctx = context(self.cartan)
        return {
            "cartan": [list(r) for r in self.cartan.A],
            "cartan_name": self.cartan.name,
            "lambda": list(self.lam),
            "lusztig_word": word_label(ctx.words[ctx.base_word]),
            "nodes": [{"id": k, "weight": list(P.wt), "lusztig": list(P.lusztig().n),
                       "datum": P.to_json()} for k, P in enumerate(self.nodes)],
            "edges": [{"source": s, "target": d, "label": j + 1} for s, d, j in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "CrystalGraph":
        cd = build_cartan(data["cartan"])
        if data.get("cartan_name"):
            cd = CartanDatum(cd.A, name=data["cartan_name"])
        lam = tuple(data["lambda"])
        nodes = []
        for rec in data["nodes"]:
            P = PseudoWeylPolytope.from_json(cd, rec["datum"])
            nodes.append(MVPolytope(cd, P.mu, lam))
        edges = [(r["source"], r["target"], r["label"] - 1) for r in data["edges"]]
        return cls(cd, lam, nodes, edges)


def generate_mv(cd: CartanDatum, lam) -> CrystalGraph:
    """All of MV(lam) as the closure of ``{P_lam}`` under the ``f_j``."""
    top = highest(cd, lam)
    nodes = [top]
    index = {top.mu: 0}
    edges = []
    q = deque([0])
    while q:
        k = q.popleft()
        P = nodes[k]
        for j in range(cd.rank):
            Q = f(P, j)
            if Q is None:
                continue
            t = index.get(Q.mu)
            if t is None:
                t = index[Q.mu] = len(nodes)
                nodes.append(Q)
                q.append(t)
            edges.append((k, t, j))
    # canonical order: BFS depth then Lusztig datum on the base word
    depth = {0: 0}
    for s, d, _ in edges:
        depth.setdefault(d, depth[s] + 1)
    order = sorted(range(len(nodes)), key=lambda k: (depth[k], nodes[k].lusztig().n))
    # lowest weight element must sit last; it is the unique deepest node
    remap = {old: new for new, old in enumerate(order)}
    nodes = [nodes[k] for k in order]
    edges = sorted((remap[s], remap[d], j) for s, d, j in edges)
    return CrystalGraph(cd, tuple(lam), nodes, edges)


@lru_cache(maxsize=256)
def crystal(cd: CartanDatum, lam: tuple) -> CrystalGraph:
    """Memoised :func:`generate_mv`."""
    return generate_mv(cd, tuple(lam))
