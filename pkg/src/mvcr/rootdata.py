"""Simply-laced root data, Weyl groups, reduced words and Bruhat order.

Coweights are plain integer tuples in the fundamental-coweight basis, so the
pairing with a simple root is a coordinate read: ``<v, alpha_j> = v[j]``.  The
simple coroot ``h_i`` has coordinates ``A[i]`` (row ``i`` of the Cartan matrix).

Indices are 0-based internally.  Words shown to users are 1-based.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Coweight = tuple  # tuple[int, ...] (or Fractions for rational points)


class RootDataError(ValueError):
    pass


class NonSimplyLaced(RootDataError):
    pass


class NotFiniteType(RootDataError):
    pass


class NotDominant(RootDataError):
    pass


# --------------------------------------------------------------------------
# Cartan data
# --------------------------------------------------------------------------

def _type_matrix(letter: str, n: int) -> list[list[int]]:
    if letter == "A":
        if n < 1:
            raise NotFiniteType(f"A{n}: rank must be >= 1")
        edges = [(k, k + 1) for k in range(n - 1)]
    elif letter == "D":
        if n < 4:
            raise NotFiniteType(f"D{n}: rank must be >= 4")
        edges = [(k, k + 1) for k in range(n - 2)] + [(n - 3, n - 1)]
    elif letter == "E":
        if n not in (6, 7, 8):
            raise NotFiniteType(f"E{n} is not of finite type")
        # Bourbaki labelling: 1-3-4-5-...-n with 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    elif letter in "BCFG":
        raise NonSimplyLaced(
            f"type {letter}{n} is not simply-laced; only A/D/E components are supported")
    else:
        raise RootDataError(f"unknown Cartan type {letter!r}")
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        A[i][j] = A[j][i] = -1
    return A


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    A = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, a in enumerate(row):
                A[off + i][off + j] = a
        off += len(b)
    return A


def _leading_minors_positive(A: Sequence[Sequence[int]]) -> bool:
    # exact Gaussian elimination; positive definite iff all pivots > 0
    M = [[Fraction(a) for a in row] for row in A]
    n = len(M)
    for k in range(n):
        if M[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            r = M[i][k] / M[k][k]
            if r:
                for j in range(k, n):
                    M[i][j] -= r * M[k][j]
    return True


def _inverse(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for k in range(n):
        p = next(i for i in range(k, n) if M[i][k] != 0)
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [a / piv for a in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                r = M[i][k]
                M[i] = [a - r * b for a, b in zip(M[i], M[k])]
    return [row[n:] for row in M]


@dataclass(frozen=True)
class CartanDatum:
    """A simply-laced Cartan matrix of finite type (possibly reducible)."""

    A: tuple
    name: str = field(default="", compare=False)
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        object.__setattr__(self, "A", A)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise RootDataError("Cartan matrix must be square and non-empty")
        for i in range(n):
            if A[i][i] != 2:
                raise RootDataError(f"diagonal entry a_{i+1}{i+1} = {A[i][i]} != 2")
            for j in range(n):
                if i == j:
                    continue
                if A[i][j] > 0:
                    raise RootDataError(f"off-diagonal entry a_{i+1}{j+1} = {A[i][j]} > 0")
                if A[i][j] not in (0, -1) or A[i][j] != A[j][i]:
                    raise NonSimplyLaced(
                        f"entries a_{i+1}{j+1} = {A[i][j]}, a_{j+1}{i+1} = {A[j][i]} "
                        "are not simply-laced")
        if not _leading_minors_positive(A):
            raise NotFiniteType("Cartan matrix is not positive definite")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, n + 1)))
        if not self.name:
            object.__setattr__(self, "name", json.dumps([list(r) for r in A]))

    @property
    def rank(self) -> int:
        return len(self.A)

    def coroot(self, i: int) -> Coweight:
        return self.A[i]

    @property
    def adjugate(self) -> tuple:
        """``det(A) * A^{-1}`` as an integer matrix."""
        return _adjugate(self.A)

    @property
    def det(self) -> int:
        return _det(self.A)

    def to_coroot_basis(self, v: Sequence) -> tuple:
        """Exact coordinates ``c`` with ``v = sum_i c_i h_i``."""
        inv = _inv_cached(self.A)
        # v_j = sum_i c_i a_ij, A symmetric
        return tuple(sum(inv[j][k] * v[k] for k in range(self.rank)) for j in range(self.rank))

    def from_coroot_basis(self, c: Sequence) -> tuple:
        return tuple(sum(c[i] * self.A[i][j] for i in range(self.rank)) for j in range(self.rank))

    def in_positive_cone(self, v: Sequence) -> bool:
        """True iff ``v`` is a nonnegative real combination of simple coroots."""
        adj = self.adjugate
        n = self.rank
        # det > 0 for positive definite A
        return all(sum(adj[j][k] * v[k] for k in range(n)) >= 0 for j in range(n))

    def in_root_lattice_cone(self, v: Sequence) -> bool:
        """True iff ``v`` lies in Q^vee_+ (nonnegative integer combination)."""
        c = self.to_coroot_basis(v)
        return all(x >= 0 and Fraction(x).denominator == 1 for x in c)

    def components(self) -> list[list[int]]:
        n = self.rank
        seen, comps = set(), []
        for s in range(n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if self.A[i][j] and j not in seen:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps


@lru_cache(maxsize=None)
def _inv_cached(A: tuple) -> tuple:
    return tuple(tuple(r) for r in _inverse(A))


@lru_cache(maxsize=None)
def _det(A: tuple) -> int:
    M = [[Fraction(a) for a in row] for row in A]
    n, d = len(M), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            M[k], M[p] = M[p], M[k]
            d = -d
        d *= M[k][k]
        for i in range(k + 1, n):
            r = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= r * M[k][j]
    return int(d)


@lru_cache(maxsize=None)
def _adjugate(A: tuple) -> tuple:
    d = _det(A)
    inv = _inv_cached(A)
    return tuple(tuple(int(x * d) for x in row) for row in inv)


_TYPE_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def build_cartan(spec) -> CartanDatum:
    """Build a Cartan datum from ``"A2"``, ``"A1xA1"``, ``"D4"``, a JSON matrix
    string, or a nested list."""
    if isinstance(spec, CartanDatum):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("["):
            return CartanDatum(tuple(tuple(r) for r in json.loads(s)))
        blocks = []
        for part in re.split(r"[xX×]", s):
            m = _TYPE_RE.match(part.strip())
            if not m:
                raise RootDataError(f"cannot parse Cartan type {part!r}")
            blocks.append(_type_matrix(m.group(1).upper(), int(m.group(2))))
        return CartanDatum(tuple(tuple(r) for r in _block_diag(blocks)), name=s.upper().replace("×", "x"))
    return CartanDatum(tuple(tuple(r) for r in spec))


# --------------------------------------------------------------------------
# Coweight arithmetic
# --------------------------------------------------------------------------

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def is_dominant(v) -> bool:
    return all(a >= 0 for a in v)


def reflect(cd: CartanDatum, i: int, v):
    """``s_i v = v - <v, alpha_i> h_i``."""
    c = v[i]
    if not c:
        return tuple(v)
    return tuple(a - c * h for a, h in zip(v, cd.A[i]))


def dominant_translate(cd: CartanDatum, v):
    """Return ``(dom, w_word)`` with ``dom`` dominant and ``dom = s_word v``."""
    v = tuple(v)
    word = []
    while True:
        i = next((k for k, a in enumerate(v) if a < 0), None)
        if i is None:
            return v, tuple(word)
        v = reflect(cd, i, v)
        word.insert(0, i)


# --------------------------------------------------------------------------
# Weyl group
# --------------------------------------------------------------------------

def _matmul(X, Y):
    n = len(X)
    return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _matvec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


@dataclass(frozen=True, eq=False)
class WeylElt:
    """An element of W, canonically its matrix on coweight coordinates.

    ``word`` is the ShortLex-least reduced word (0-based generators), ``index``
    the position in the deterministic enumeration of the owning group.
    """

    matrix: tuple
    word: tuple
    index: int
    group: "WeylGroup" = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __lt__(self, other):
        return self.index < other.index

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return self.group.mul(self, other)

    def inverse(self) -> "WeylElt":
        return self.group.inverse(self)

    def act(self, v):
        return _matvec(self.matrix, v)

    def label(self) -> str:
        return word_label(self.word)

    def __repr__(self):
        return f"WeylElt({self.label()})"


def word_label(word: Sequence[int]) -> str:
    """1-based comma-free label, ``"e"`` for the empty word."""
    if not word:
        return "e"
    if all(i < 9 for i in word):
        return "".join(str(i + 1) for i in word)
    return ",".join(str(i + 1) for i in word)


def parse_word(text: str, rank: int) -> tuple:
    """Parse ``"121"``, ``"1,2,1"`` or ``"e"`` into a 0-based tuple."""
    t = text.strip()
    if t in ("", "e"):
        return ()
    parts = [p for p in re.split(r"[,\s]+", t) if p] if ("," in t or " " in t) else list(t)
    word = tuple(int(p) - 1 for p in parts)
    for i in word:
        if not 0 <= i < rank:
            raise RootDataError(f"generator {i + 1} out of range 1..{rank}")
    return word


class WeylGroup:
    """The finite Weyl group of a Cartan datum with full multiplication tables.

    Elements are enumerated by (length, ShortLex word).  Bruhat order is
    precomputed from the subword property.
    """

    def __init__(self, cd: CartanDatum):
        self.cartan = cd
        n = cd.rank
        self.rank = n
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = []
        for i in range(n):
            # column k of s_i is s_i(omega_k)
            cols = [reflect(cd, i, tuple(int(k == j) for j in range(n))) for k in range(n)]
            gens.append(tuple(tuple(cols[k][r] for k in range(n)) for r in range(n)))
        self.gen_matrices = gens

        # closure under right multiplication; BFS visits elements by length
        lengths = {ident: 0}
        queue = deque([ident])
        while queue:
            M = queue.popleft()
            for g in gens:
                P = _matmul(M, g)
                if P not in lengths:
                    lengths[P] = lengths[M] + 1
                    queue.append(P)
        self._canonicalize_words(lengths)

        N = len(self.elements)
        self.right = [[self._index[_matmul(w.matrix, gens[i])] for i in range(n)]
                      for w in self.elements]
        self.left = [[self._index[_matmul(gens[i], w.matrix)] for i in range(n)]
                     for w in self.elements]
        self.lengths = [w.length for w in self.elements]
        self.e = self.elements[0]
        self.w0 = self.elements[-1]
        self._inv = [self._index[_matmul_inv_hint(self, w)] for w in self.elements]
        self._below = self._bruhat_sets()
        self.order = N

    def _canonicalize_words(self, lengths: dict):
        # ShortLex-least reduced word: first letter is the smallest left
        # descent, then recurse on s_i w
        gens = self.gen_matrices
        words: dict = {}
        for M in sorted(lengths, key=lengths.get):
            L = lengths[M]
            if L == 0:
                words[M] = ()
                continue
            best = None
            for i in range(self.rank):
                P = _matmul(gens[i], M)
                if lengths[P] == L - 1:
                    best = (i,) + words[P]
                    break
            words[M] = best
        items = sorted(words, key=lambda M: (len(words[M]), words[M]))
        self.elements = [WeylElt(M, words[M], k, self) for k, M in enumerate(items)]
        self._index = {w.matrix: w.index for w in self.elements}

    def _bruhat_sets(self) -> list[frozenset]:
        below: list[frozenset] = [frozenset()] * len(self.elements)
        below[0] = frozenset([0])
        for w in self.elements[1:]:
            # w = u s_i with u the prefix of the reduced word
            i = w.word[-1]
            u = self.elem_from_word(w.word[:-1]).index
            bu = below[u]
            below[w.index] = bu | frozenset(self.right[z][i] for z in bu)
        return below

    # ---- basic API ----
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k: int) -> WeylElt:
        return self.elements[k]

    def elem(self, M) -> WeylElt:
        return self.elements[self._index[M]]

    def s(self, i: int) -> WeylElt:
        return self.elements[self.left[0][i]]

    def elem_from_word(self, word: Iterable[int]) -> WeylElt:
        k = 0
        for i in word:
            k = self.right[k][i]
        return self.elements[k]

    def mul(self, x: WeylElt, y: WeylElt) -> WeylElt:
        k = x.index
        for i in y.word:
            k = self.right[k][i]
        return self.elements[k]

    def inverse(self, w: WeylElt) -> WeylElt:
        return self.elements[self._inv[w.index]]

    def length(self, w: WeylElt) -> int:
        return self.lengths[w.index]

    def bruhat_leq(self, x: WeylElt, y: WeylElt) -> bool:
        return x.index in self._below[y.index]

    def bruhat_interval_below(self, x: WeylElt) -> list[WeylElt]:
        return [self.elements[k] for k in sorted(self._below[x.index])]

    def is_reduced(self, word: Sequence[int]) -> bool:
        k = 0
        for i in word:
            nk = self.right[k][i]
            if self.lengths[nk] < self.lengths[k]:
                return False
            k = nk
        return True

    def reflection(self, w: WeylElt, i: int) -> WeylElt:
        """The reflection ``s_beta`` for ``beta = w . alpha_i``, i.e. ``w s_i w^-1``."""
        return self.mul(self.mul(w, self.s(i)), self.inverse(w))


def _matmul_inv_hint(G: WeylGroup, w: WeylElt):
    M = G.elements[0].matrix
    for i in reversed(w.word):
        M = _matmul(M, G.gen_matrices[i])
    return M


@lru_cache(maxsize=None)
def weyl_group_of(cd: CartanDatum) -> WeylGroup:
    return WeylGroup(cd)


def weyl_group(cd: CartanDatum) -> list[WeylElt]:
    return list(weyl_group_of(cd).elements)


def act(w: WeylElt, v) -> tuple:
    return w.act(v)


def bruhat_leq(x: WeylElt, y: WeylElt) -> bool:
    return x.group.bruhat_leq(x, y)


def reduced_words(w: WeylElt) -> list[tuple]:
    """All reduced words of ``w`` in lexicographic order (0-based)."""
    G = w.group
    return list(_reduced_words(G, w.index))


@lru_cache(maxsize=4096)
def _reduced_words_cached(G: WeylGroup, k: int) -> tuple:
    if k == 0:
        return ((),)
    out = []
    for i in range(G.rank):
        u = G.left[k][i]
        if G.lengths[u] < G.lengths[k]:
            out.extend((i,) + rest for rest in _reduced_words_cached(G, u))
    return tuple(sorted(out))


def _reduced_words(G: WeylGroup, k: int) -> tuple:
    return _reduced_words_cached(G, k)


def min_coset_reps(cd: CartanDatum, lam) -> list[WeylElt]:
    """Minimal-length representatives of ``W / W_lam``, one per orbit point."""
    if not is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    G = weyl_group_of(cd)
    lam = tuple(lam)
    reps: dict[tuple, WeylElt] = {}
    for w in G.elements:  # ordered by length, so first hit is minimal
        p = w.act(lam)
        if p not in reps:
            reps[p] = w
    return sorted(reps.values())


def min_coset_rep(w: WeylElt, lam) -> WeylElt:
    p = w.act(lam)
    for u in w.group.elements:
        if u.act(lam) == p:
            return u
    raise AssertionError("unreachable")


# --------------------------------------------------------------------------
# Move graph on R(w0)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    kind: int  # 2 or 3
    k: int     # 0-based offset; the move touches positions k+1 .. k+kind (1-based)

    def __str__(self):
        return f"Move{self.kind}{{{self.k}}}"


@dataclass
class MoveGraph:
    words: list
    index: dict
    adj: list  # adj[u] = list of (v, Move)

    def edges(self):
        for u, nbrs in enumerate(self.adj):
            for v, mv in nbrs:
                if u < v:
                    yield u, v, mv

    def is_connected(self) -> bool:
        return len(self.bfs_tree(0)[0]) == len(self.words)

    def bfs_tree(self, root: int):
        """BFS order and parent map ``{child: (parent, Move)}`` from ``root``."""
        order, parent = [root], {root: None}
        q = deque([root])
        while q:
            u = q.popleft()
            for v, mv in self.adj[u]:
                if v not in parent:
                    parent[v] = (u, mv)
                    order.append(v)
                    q.append(v)
        return order, parent

    def fundamental_cycles(self, root: int = 0) -> list[list[tuple]]:
        """One closed walk per non-tree edge of a BFS spanning tree.

        Each cycle is a list of ``(from, to, Move)`` steps starting and ending at
        ``root``.
        """
        order, parent = self.bfs_tree(root)
        depth = {root: 0}
        for v in order[1:]:
            depth[v] = depth[parent[v][0]] + 1

        def path_down(v):  # root -> v
            steps = []
            while parent[v] is not None:
                u, mv = parent[v]
                steps.append((u, v, mv))
                v = u
            return steps[::-1]

        cycles = []
        tree = {(v, p[0]) for v, p in parent.items() if p} | {(p[0], v) for v, p in parent.items() if p}
        for u, v, mv in self.edges():
            if (u, v) in tree:
                continue
            down = path_down(u)
            up = [(b, a, m) for a, b, m in reversed(path_down(v))]
            cycles.append(down + [(u, v, mv)] + up)
        return cycles


def move_between(cd: CartanDatum, a: Sequence[int], b: Sequence[int]) -> Move | None:
    diff = [p for p in range(len(a)) if a[p] != b[p]]
    if not diff:
        return None
    k = diff[0]
    if len(diff) == 2 and diff[1] == k + 1:
        i, j = a[k], a[k + 1]
        if cd.A[i][j] == 0 and b[k] == j and b[k + 1] == i:
            return Move(2, k)
    if k + 2 < len(a) and all(p in (k, k + 1, k + 2) for p in diff):
        i, j = a[k], a[k + 1]
        if (cd.A[i][j] == -1 and a[k + 2] == i and b[k] == j and b[k + 1] == i and b[k + 2] == j):
            return Move(3, k)
    return None


def apply_move_to_word(cd: CartanDatum, word: Sequence[int], mv: Move) -> tuple:
    w = list(word)
    k = mv.k
    if mv.kind == 2:
        if cd.A[w[k]][w[k + 1]] != 0 or w[k] == w[k + 1]:
            raise RootDataError(f"{mv} not applicable to {word_label(word)}")
        w[k], w[k + 1] = w[k + 1], w[k]
    else:
        i, j = w[k], w[k + 1]
        if not (cd.A[i][j] == -1 and w[k + 2] == i):
            raise RootDataError(f"{mv} not applicable to {word_label(word)}")
        w[k], w[k + 1], w[k + 2] = j, i, j
    return tuple(w)


@lru_cache(maxsize=None)
def move_graph(cd: CartanDatum) -> MoveGraph:
    G = weyl_group_of(cd)
    words = reduced_words(G.w0)
    index = {w: k for k, w in enumerate(words)}
    adj: list[list] = [[] for _ in words]
    for u, a in enumerate(words):
        for k in range(len(a) - 1):
            for kind in (2, 3):
                mv = Move(kind, k)
                try:
                    b = apply_move_to_word(cd, a, mv)
                except (RootDataError, IndexError):
                    continue
                adj[u].append((index[b], mv))
    return MoveGraph(words, index, adj)
