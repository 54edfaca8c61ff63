from math import comb

import pytest

from mvcr.oracles import freudenthal, positive_roots, tensor_multiplicities, weyl_dimension
from mvcr.rootdata import build_cartan


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 3), ("A3", 6), ("D4", 12),
                                        ("E6", 36), ("A1xA1", 2)])
def test_positive_root_count(name, count):
    assert len(positive_roots(build_cartan(name))) == count


def test_type_a_fundamental_dimensions():
    for n in range(1, 5):
        cd = build_cartan(f"A{n}")
        for k in range(n):
            lam = tuple(int(i == k) for i in range(n))
            assert weyl_dimension(cd, lam) == comb(n + 1, k + 1)


def test_known_dimensions():
    assert weyl_dimension(build_cartan("A2"), (1, 1)) == 8
    assert weyl_dimension(build_cartan("D4"), (0, 1, 0, 0)) == 28
    assert weyl_dimension(build_cartan("E6"), (1, 0, 0, 0, 0, 0)) == 27
    assert weyl_dimension(build_cartan("A3"), (1, 0, 0)) == 4


def test_freudenthal_adjoint_a2():
    F = freudenthal(build_cartan("A2"), (1, 1))
    assert F[(0, 0)] == 2 and sum(F.values()) == 8


def test_freudenthal_total_is_dimension():
    cd = build_cartan("A3")
    for lam in [(2, 1, 0), (1, 1, 1), (0, 2, 0)]:
        assert sum(freudenthal(cd, lam).values()) == weyl_dimension(cd, lam)


def test_tensor_square_of_adjoint():
    cd = build_cartan("A2")
    t = tensor_multiplicities(cd, (1, 1), (1, 1))
    assert t == {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}
