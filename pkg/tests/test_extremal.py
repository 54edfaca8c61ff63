import pytest
from hypothesis import given, strategies as st

from helpers import lp_extreme_points
from mvcr.extremal import (
    equals_bruhat_hull,
    extremal_by_strings,
    extremal_datum_on_words,
    extremal_polytope,
    is_extremal,
    edge_inequality_violations,
    min_lex_subword,
    min_lex_subword_bruteforce,
    y_sequence,
)
from mvcr.mvcrystal import crystal, highest, is_mv_datum
from mvcr.polytope import orbit_polytope
from mvcr.rootdata import build_cartan, min_coset_reps, reduced_words, weyl_group_of


def test_min_lex_subword_example(W2):
    x = W2.s(0)
    assert min_lex_subword(x, (0, 1, 0)) == (2, 3)
    ys = y_sequence(x, (0, 1, 0))
    assert [y.label() for y in ys.y] == ["1", "e", "e", "e"]


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_min_lex_matches_bruteforce(name):
    W = weyl_group_of(build_cartan(name))
    for word in reduced_words(W.w0):
        for x in W:
            assert min_lex_subword(x, word) == min_lex_subword_bruteforce(x, word)


def test_identity_and_longest(A2, W2):
    lam = (1, 1)
    assert extremal_polytope(W2.e, lam) == highest(A2, lam)
    assert extremal_polytope(W2.w0, lam).mu == orbit_polytope(A2, lam).mu


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A2", (1, 0)), ("A2", (2, 1)),
                                      ("A3", (1, 0, 0)), ("A3", (1, 1, 1))])
def test_extremal_is_bruhat_hull_and_in_crystal(name, lam):
    cd = build_cartan(name)
    W = weyl_group_of(cd)
    B = crystal(cd, lam)
    for x in W:
        P = extremal_polytope(x, lam, check=True)
        assert P in B
        assert extremal_by_strings(x, lam) == P
        assert edge_inequality_violations(P) == []


def test_extremal_vertices_against_lp(A3, W3):
    lam = (1, 0, 1)
    for x in W3:
        P = extremal_polytope(x, lam)
        pts = {z.act(lam) for z in W3.bruhat_interval_below(x)}
        assert set(P.vertices()) == lp_extreme_points(pts)


def test_words_agree(A3, W3):
    # every reduced word is walked; a disagreement would raise InconsistentVertex
    words = reduced_words(W3.w0)
    for x in W3:
        mu = extremal_datum_on_words(x, (1, 1, 0), words)
        assert mu == extremal_polytope(x, (1, 1, 0)).mu
    with pytest.raises(ValueError):
        extremal_datum_on_words(W3.e, (1, 1, 0), words[:1])


def test_is_extremal_counts(A2):
    B = crystal(A2, (1, 1))
    flags = [is_extremal(P) for P in B]
    assert sum(x is not None for x in flags) == 6  # one per orbit point
    assert sorted(x.label() for x in flags if x is not None) == ["1", "12", "121", "2", "21", "e"]
    # every extremal element is recognised at its own coset representative
    for x in min_coset_reps(A2, (1, 0)):
        assert is_extremal(extremal_polytope(x, (1, 0))) == x


def test_extremal_is_mv(A3, W3):
    for x in W3:
        assert is_mv_datum(A3, extremal_polytope(x, (0, 1, 0)).mu)


@given(st.integers(0, 23), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_coset_invariance(k, a, b, c):
    cd = build_cartan("A3")
    W = weyl_group_of(cd)
    lam = (a, b, c)
    x = W[k]
    from mvcr.rootdata import min_coset_rep
    assert extremal_polytope(x, lam).mu == extremal_polytope(min_coset_rep(x, lam), lam).mu
    assert equals_bruhat_hull(extremal_polytope(x, lam), x, lam)
