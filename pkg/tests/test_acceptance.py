"""Acceptance criteria 1-10, each with its exactness requirement and time limit.

A one-line PASS/FAIL summary per criterion is printed at the end of the pytest
run (see ``conftest.pytest_terminal_summary``).  Caches are cleared before each
criterion so the timings include crystal generation.
"""
import time
from collections import Counter
from contextlib import contextmanager

import pytest

from mvcr import rootdata
from mvcr.demazure import demazure_character_oracle, demazure_set, demazure_set_recursive
from mvcr.extremal import (
    _extremal_cached,
    equals_bruhat_hull,
    extremal_polytope,
    edge_inequality_violations,
    y_sequence,
)
from mvcr.mvcrystal import (
    LusztigDatum,
    context,
    crystal,
    f,
    f_power,
    is_mv_datum,
    transport_all,
    transport_around,
)
from mvcr.oracles import freudenthal, weyl_dimension
from mvcr.polytope import contains, minkowski_sum, scale
from mvcr.rootdata import build_cartan, min_coset_reps, reduced_words, weyl_group_of
from mvcr.tensorops import extremal_factorization, s_multiple
from mvcr.verify import (
    converse_records,
    load_converse_witnesses,
    recheck_converse_witness,
    save_converse_witnesses,
    verify_corollary,
    verify_main_theorem,
    verify_min_ext,
    verify_tensor_estimate,
)

RESULTS: dict = {}


def _cold():
    crystal.cache_clear()
    context.cache_clear()
    _extremal_cached.cache_clear()
    rootdata.weyl_group_of.cache_clear()
    rootdata.move_graph.cache_clear()


@contextmanager
def criterion(k: str, title: str, limit: float):
    _cold()
    t0 = time.perf_counter()
    RESULTS[k] = ("FAIL", title, None, limit)
    yield
    dt = time.perf_counter() - t0
    RESULTS[k] = ("PASS" if dt < limit else "FAIL", title, dt, limit)
    assert dt < limit, f"criterion {k} took {dt:.2f}s (limit {limit}s)"


def test_c01_crystal_character():
    suite = [("A2", (1, 0)), ("A2", (0, 1)), ("A2", (1, 1)), ("A2", (2, 0)),
             ("A3", (1, 0, 0)), ("A3", (0, 1, 0)), ("A1xA1", (1, 1)), ("A1xA1", (2, 1))]
    with criterion("1", "crystal size = Weyl dimension, weights = Freudenthal", 5.0):
        for name, lam in suite:
            cd = build_cartan(name)
            B = crystal(cd, lam)
            assert len(B) == weyl_dimension(cd, lam), (name, lam)
            assert Counter(B.weight_multiset()) == freudenthal(cd, lam), (name, lam)


def test_c02_move_cycles():
    with criterion("2", "Lusztig data return unchanged around every fundamental cycle", 10.0):
        for name, lam in [("A3", (1, 0, 0)), ("A2", (1, 1))]:
            cd = build_cartan(name)
            ctx = context(cd)
            cycles = {u: ctx.graph.fundamental_cycles(u) for u in range(len(ctx.words))}
            for P in crystal(cd, lam):
                for word, n in transport_all(cd, P.lusztig()).items():
                    L = LusztigDatum(word, n)
                    for c in cycles[ctx.graph.index[word]]:
                        assert transport_around(cd, L, c) == L


def test_c03_multiple_map_intertwines():
    with criterion("3", "S_N(f_j P) = f_j^N S_N(P), A2 (1,1), N = 2, 3", 10.0):
        cd = build_cartan("A2")
        for P in crystal(cd, (1, 1)):
            for N in (2, 3):
                for j in range(2):
                    fP = f(P, j)
                    lhs = None if fP is None else s_multiple(fP, N)
                    rhs = f_power(s_multiple(P, N), j, N)
                    assert lhs == rhs
                    if lhs is not None:
                        assert lhs.mu == rhs.mu


def test_c04_scale_is_minkowski_power():
    with criterion("4", "scale(P, N) = N-fold Minkowski sum, N <= 4", 5.0):
        cd = build_cartan("A2")
        for P in crystal(cd, (1, 1)):
            for N in range(1, 5):
                assert scale(P, N).mu == minkowski_sum(*([P] * N)).mu


def test_c05_extremal_polytopes():
    with criterion("5", "y-sequence data = Conv(W_{<=x} lam), MV, edge inequalities", 5.0):
        cd = build_cartan("A2")
        W = weyl_group_of(cd)
        words = reduced_words(W.w0)
        assert len(words) == 2
        for lam in [(1, 0), (0, 1), (1, 1), (2, 1)]:
            for x in W:
                P = extremal_polytope(x, lam)
                for word in words:
                    part = extremal_datum_on_words_partial(x, lam, word)
                    for k, v in part.items():
                        assert P.mu[k] == v
                assert equals_bruhat_hull(P, x, lam)
                assert is_mv_datum(cd, P.mu)
                assert edge_inequality_violations(P) == []


def extremal_datum_on_words_partial(x, lam, word):
    """``{w_l: y_l . lam}`` along a single reduced word."""
    W = x.group
    ys = y_sequence(x, word)
    out, k = {0: ys.y[0].act(lam)}, 0
    for l, i in enumerate(word, start=1):
        k = W.right[k][i]
        out[k] = ys.y[l].act(lam)
    return out


def test_c06_demazure_three_ways():
    with criterion("6", "Demazure enumeration = recursion = character", 10.0):
        cd = build_cartan("A2")
        W = weyl_group_of(cd)
        for lam in [(1, 0), (1, 1)]:
            for x in W:
                D = demazure_set(x, lam)
                assert D.members == demazure_set_recursive(x, lam).members
                assert D.weight_multiset() == demazure_character_oracle(x, lam)


def _main_suite(name, lam):
    cd = build_cartan(name)
    W = weyl_group_of(cd)
    for x in min_coset_reps(cd, lam):
        rep = verify_main_theorem(cd, lam, x, n_max=24)
        assert rep.ok, rep.dumps()
        for P in demazure_set(x, lam):
            fact = extremal_factorization(P, 24)
            assert fact.N <= 24
            assert all(W.bruhat_leq(xk, x) for xk in fact.xs)
            assert all(W.bruhat_leq(b, a) for a, b in zip(fact.xs, fact.xs[1:]))
            total = minkowski_sum(*(extremal_polytope(xk, lam) for xk in fact.xs))
            assert contains(total, scale(P, fact.N))
            assert contains(extremal_polytope(x, lam), P)
        assert verify_corollary(cd, lam, x).ok


def test_c07a_main_theorem_a2():
    with criterion("7a", "factorisation N <= 24 and both containments, A2 (1,1)", 60.0):
        _main_suite("A2", (1, 1))


def test_c07b_main_theorem_a3():
    with criterion("7b", "factorisation N <= 24 and both containments, A3 (1,0,0)", 60.0):
        _main_suite("A3", (1, 0, 0))


def test_c08_tensor_estimate():
    with criterion("8", "P inside P1 + P2 for extremal P2, three A2 pairs", 120.0):
        cd = build_cartan("A2")
        for l1, l2 in [((1, 0), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 0))]:
            rep = verify_tensor_estimate(cd, l1, l2)
            assert rep.ok and len(rep.instances) > 0


def test_c09_min_ext():
    with criterion("9", "extremal data add vertexwise and embed as P_{x l1} (x) P_{x l2}", 10.0):
        cd = build_cartan("A2")
        for l1, l2 in [((1, 0), (0, 1)), ((1, 0), (1, 0))]:
            rep = verify_min_ext(cd, l1, l2)
            assert rep.ok and len(rep.instances) == 6


def test_c10_converse_fails(tmp_path):
    with criterion("10", "some P inside P_{x lam} but outside MV_x(lam), persisted", 60.0):
        records = []
        for name, lams in [("A2", [(1, 0), (0, 1), (1, 1), (2, 0)]),
                           ("A3", [(1, 0, 0), (0, 1, 0)])]:
            cd = build_cartan(name)
            for lam in lams:
                for x in min_coset_reps(cd, lam):
                    records += converse_records(verify_corollary(cd, lam, x))
        assert len(records) >= 1
        path = tmp_path / "converse.json"
        save_converse_witnesses(path, records)
        loaded = load_converse_witnesses(path)
        assert loaded == records
        assert all(recheck_converse_witness(r) for r in loaded)


def summary_lines() -> list:
    lines = []
    for k in sorted(RESULTS, key=lambda k: (int(k.rstrip("ab")), k)):
        status, title, dt, limit = RESULTS[k]
        t = f"{dt:.2f}s" if dt is not None else "n/a"
        lines.append(f"{status} criterion {k}: {title} [{t} / {limit:g}s]")
    return lines


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
