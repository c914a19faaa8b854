from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopf2.exactlin import DimensionError
from hopf2.tensorspace import (
    BasedSpace,
    LinearMap,
    NotWellDefined,
    QuotientSpace,
    flatten,
    format_element,
    induce_map,
    otimes,
    subspace_membership,
    unflatten,
)

coef = st.integers(-3, 3).map(Fraction)


def vectors(n):
    return st.dictionaries(st.integers(0, n - 1), coef).map(lambda d: {k: c for k, c in d.items() if c})


LABELS = ("1", "g", "x", "gx")


def test_format_element_basis_order_and_coefficients():
    V = BasedSpace(LABELS)
    W = V @ V
    v = {W.index("x⊗g"): Fraction(1), W.index("1⊗gx"): Fraction(2)}
    assert format_element(v, W.labels) == "2·(1⊗gx) + x⊗g"
    assert format_element({8: Fraction(-1), 10: Fraction(1)}, W.labels) == "−x⊗1 + x⊗x"
    assert format_element({}, W.labels) == "0"
    assert format_element({0: Fraction(-1, 2)}, V.labels) == "−1/2·(1)"


def test_tensor_labels_row_major():
    V = BasedSpace(LABELS)
    assert (V @ V).labels[4 * 2 + 1] == "x⊗g"


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.data())
def test_flatten_unflatten_roundtrip(dims, data):
    key = tuple(data.draw(st.integers(0, d - 1)) for d in dims)
    idx = next(iter(flatten({key: Fraction(1)}, dims)))
    assert unflatten(idx, dims) == key


def test_flatten_rejects_out_of_range():
    with pytest.raises(DimensionError):
        flatten({(0, 5): Fraction(1)}, (2, 2))


def test_otimes_bilinear():
    assert otimes({0: 2, 1: 1}, {1: 3}) == {(0, 1): 6, (1, 1): 3}


@given(st.lists(vectors(5), max_size=3), vectors(5))
def test_quotient_projection_properties(rels, v):
    V = BasedSpace(tuple("abcde"))
    Q = QuotientSpace(V, rels)
    assert Q.dim + Q.relation_rank == 5
    for r in rels:
        assert Q.project(r) == {}
    p = Q.project(v)
    assert Q.project(Q.lift(p)) == p  # section then projection is the identity


@given(st.lists(vectors(4), max_size=4), vectors(4))
def test_membership_certificates(gens, v):
    V = BasedSpace(tuple("abcd"))
    m = subspace_membership(V, gens, v)
    if m.member:
        total: dict = {}
        for i, c in m.coefficients.items():
            for k, x in gens[i].items():
                total[k] = total.get(k, 0) + c * x
        assert {k: c for k, c in total.items() if c} == v
    else:
        pair = lambda u: sum(m.functional.get(k, 0) * c for k, c in u.items())  # noqa: E731
        assert all(pair(g) == 0 for g in gens) and pair(v) != 0


def test_induce_map_certifies_descent():
    V = BasedSpace(("a", "b"))
    dom = QuotientSpace(V, [{0: 1, 1: -1}])  # a = b
    swap = LinearMap.from_function(V, V, lambda i: {1 - i: 1})
    ind = induce_map(swap, dom, dom)
    assert ind.matrix.is_identity()
    killer = LinearMap.from_function(V, V, lambda i: {0: 1} if i == 0 else {})
    with pytest.raises(NotWellDefined) as err:
        induce_map(killer, dom, QuotientSpace(V))
    assert err.value.relation == {0: 1, 1: -1}
