from itertools import combinations
from math import factorial

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from mvcr.rootdata import (
    CartanDatum,
    NonSimplyLaced,
    NotDominant,
    NotFiniteType,
    RootDataError,
    build_cartan,
    dominant_translate,
    is_dominant,
    min_coset_rep,
    min_coset_reps,
    move_graph,
    parse_word,
    reduced_words,
    reflect,
    weyl_group_of,
)


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("A3", 24), ("A1xA1", 4), ("D4", 192)])
def test_weyl_group_order(name, order):
    assert len(weyl_group_of(build_cartan(name))) == order


def test_type_a_order_is_factorial():
    for n in range(1, 5):
        assert len(weyl_group_of(build_cartan(f"A{n}"))) == factorial(n + 1)


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 2), ("A3", 16), ("A1xA1", 2), ("D4", 2316)])
def test_reduced_words_of_longest(name, count):
    W = weyl_group_of(build_cartan(name))
    assert len(reduced_words(W.w0)) == count


def test_rejects_non_simply_laced():
    for s in ("B2", "C3", "G2", "F4"):
        with pytest.raises(NonSimplyLaced):
            build_cartan(s)


def test_rejects_affine():
    with pytest.raises(NotFiniteType):
        build_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def test_rejects_garbage():
    with pytest.raises(RootDataError):
        build_cartan("Q7")


def test_name_does_not_affect_equality(A2):
    assert build_cartan([[2, -1], [-1, 2]]) == A2


def test_a2_order_and_labels(W2):
    assert [w.label() for w in W2] == ["e", "1", "2", "12", "21", "121"]
    assert W2.w0.length == 3


def test_reflection_examples(A2, W2):
    assert reflect(A2, 0, (1, 1)) == (-1, 2)
    assert W2.w0.act((1, 1)) == (-1, -1)


def test_min_coset_reps(A2):
    assert [x.label() for x in min_coset_reps(A2, (1, 0))] == ["e", "1", "21"]
    assert len(min_coset_reps(A2, (1, 1))) == 6
    with pytest.raises(NotDominant):
        min_coset_reps(A2, (1, -1))


def test_min_coset_rep_reduces(A2, W2):
    x = W2.elem_from_word((0, 1))  # s1 s2 fixes... s2 stabilises (1,0)
    assert min_coset_rep(x, (1, 0)).label() == "1"


def test_parse_word():
    assert parse_word("121", 2) == (0, 1, 0)
    assert parse_word("1,2,1", 2) == (0, 1, 0)
    assert parse_word("e", 2) == ()
    with pytest.raises(RootDataError):
        parse_word("3", 2)


def _bruhat_by_subwords(W, u, w):
    word = w.word
    for k in range(len(word) + 1):
        for pos in combinations(range(len(word)), k):
            if W.elem_from_word(word[p] for p in pos) == u:
                return True
    return False


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_bruhat_matches_subword_oracle(name):
    W = weyl_group_of(build_cartan(name))
    for u in W:
        for w in W:
            assert W.bruhat_leq(u, w) == _bruhat_by_subwords(W, u, w)


@pytest.mark.parametrize("name", ["A2", "A3", "D4", "A1xA1"])
def test_move_graph_connected(name):
    G = move_graph(build_cartan(name))
    g = nx.Graph()
    g.add_nodes_from(range(len(G.words)))
    g.add_edges_from((u, v) for u, v, _ in G.edges())
    assert nx.is_connected(g)
    assert G.is_connected()


def test_fundamental_cycles_close(A3):
    G = move_graph(A3)
    for cyc in G.fundamental_cycles(0):
        assert cyc[0][0] == 0 and cyc[-1][1] == 0
        for (a, b, _), (c, _, _) in zip(cyc, cyc[1:]):
            assert b == c


words2 = st.lists(st.integers(0, 1), max_size=8)
words3 = st.lists(st.integers(0, 2), max_size=10)


@given(words3, words3)
def test_multiplication_is_action_composition(u, v):
    W = weyl_group_of(build_cartan("A3"))
    a, b = W.elem_from_word(u), W.elem_from_word(v)
    x = (1, -2, 3)
    assert W.mul(a, b).act(x) == a.act(b.act(x))
    assert W.mul(a, W.inverse(a)) == W.e


@given(words3)
def test_canonical_word_is_reduced(u):
    W = weyl_group_of(build_cartan("A3"))
    w = W.elem_from_word(u)
    assert len(w.word) == w.length and W.elem_from_word(w.word) == w


@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
def test_dominant_translate(v):
    cd = build_cartan("A3")
    dom, word = dominant_translate(cd, v)
    assert is_dominant(dom)
    W = weyl_group_of(cd)
    assert W.elem_from_word(word).act(v) == dom


@given(st.integers(0, 2), st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_reflection_is_involution(i, v):
    cd = build_cartan("A3")
    assert reflect(cd, i, reflect(cd, i, v)) == tuple(v)


def test_cartan_datum_validation():
    with pytest.raises(RootDataError):
        CartanDatum(((2, -1), (0, 2)))
