import json

import pytest
from hypothesis import given, strategies as st

from hirzebruch.cpn import (
    CPnModel,
    HodgeTable,
    ModelError,
    binomial_chern,
    chern_to_pontrjagin,
    euler_characteristic,
    infer_hodge,
    standard_pontrjagin,
    todd_from_hodge,
)
from hirzebruch.genus import CHERN, GradedClassPoly


def test_infer_hodge_small():
    assert infer_hodge(1).h == ((1, 0), (0, 1))
    h4 = infer_hodge(4)
    assert all(h4[p, q] == (p == q) for p in range(5) for q in range(5))
    assert h4.betti(3) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_infer_hodge_betti_and_euler(n):
    h = infer_hodge(n)
    assert h.betti_numbers() == [(1 + (-1) ** i) // 2 for i in range(2 * n + 1)]
    assert sum(h.betti_numbers()) == n + 1 == euler_characteristic(n) == h.euler_number()
    assert todd_from_hodge(h) == 1


def test_hodge_table_validation():
    with pytest.raises(ModelError, match="symmetry"):
        HodgeTable.from_rows([[1, 1], [0, 1]])
    with pytest.raises(ModelError, match="negative"):
        HodgeTable.from_rows([[1, -1], [-1, 1]])
    with pytest.raises(ModelError):
        HodgeTable(2, ((1, 0), (0, 1)))


def test_todd_from_hodge_with_extra_class():
    assert todd_from_hodge(HodgeTable.from_rows([[1, 1], [1, 1]])) == 0


@pytest.mark.parametrize(
    "n, expected", [(2, (3,)), (4, (5, 10)), (7, (8, 28, 56)), (1, ())]
)
def test_standard_pontrjagin(n, expected):
    assert standard_pontrjagin(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 2), (4, 5), (6, 7)])
def test_euler_characteristic(n, expected):
    assert euler_characteristic(n) == expected


def test_chern_to_pontrjagin_examples():
    assert chern_to_pontrjagin((5, 10, 10, 5)) == (5, 10)
    assert chern_to_pontrjagin((0, 0, 0, 0)) == (0, 0)
    c1, c2 = GradedClassPoly.variable(CHERN, 1), GradedClassPoly.variable(CHERN, 2)
    (p1,) = chern_to_pontrjagin((c1, c2))
    assert p1 == c1 * c1 - 2 * c2


@pytest.mark.parametrize("n", range(1, 9))
def test_binomial_chern_gives_standard_pontrjagin(n):
    assert chern_to_pontrjagin(binomial_chern(n), n) == standard_pontrjagin(n)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_chern_to_pontrjagin_matches_total_class(c):
    # p(E) from c(E) c(conj E) = sum (-1)^i p_i
    n = len(c)
    cs = [1] + c
    conj = [(-1) ** i * v for i, v in enumerate(cs)]
    prod = [sum(cs[a] * conj[d - a] for a in range(d + 1)) for d in range(n + 1)]
    expected = tuple((-1) ** i * prod[2 * i] for i in range(1, n // 2 + 1))
    assert chern_to_pontrjagin(c) == expected


def test_model_rejects_inconsistent_chern_data():
    with pytest.raises(ModelError, match="Pontrjagin"):
        CPnModel(4, 5, (5, 10), chern=(5, 11, 10, 5))
    with pytest.raises(ModelError, match="contradicts"):
        CPnModel(4, 4, (5, 10), chern=(5, 10, 10, 5))
    with pytest.raises(ModelError):
        CPnModel(4, 5, (5,))


def test_model_defaults_and_fano():
    m = CPnModel.standard(4)
    assert m.k == 5 and m.chern == (5, 10, 10, 5) and m.is_fano
    assert m.hodge == infer_hodge(4)
    assert not CPnModel.standard(4, k=-5).is_fano
    assert m.euler_number == 5


def test_model_json_round_trip():
    big = 10**40
    m = CPnModel(2, big, (big * big - 2,), simply_connected=True)
    record = json.loads(m.to_json())
    assert record["k"] == str(big)
    assert all(isinstance(v, str) for v in record["pontrjagin"])
    assert CPnModel.from_json(m.to_json()) == m
    std = CPnModel.standard(6, simply_connected=True)
    assert CPnModel.from_record(std.to_record()) == std


def test_model_from_malformed_record():
    with pytest.raises(ModelError):
        CPnModel.from_record({"n": "4"})
