import pytest
from hypothesis import given, strategies as st

from chssrigid.algebra import composition_algebra


def elements(dim):
    return st.tuples(*[st.integers(-20, 20)] * dim)


@pytest.mark.parametrize("dim", [1, 2, 4, 8])
def test_norm_is_multiplicative(dim):
    A = composition_algebra(dim)

    @given(elements(dim), elements(dim))
    def check(x, y):
        assert A.norm(A.mul(x, y)) == A.norm(x) * A.norm(y)

    check()


@pytest.mark.parametrize("dim", [1, 2, 4, 8])
def test_unit_and_conjugation(dim):
    A = composition_algebra(dim)
    one = A.unit(0)
    for k in range(dim):
        e = A.unit(k)
        assert A.mul(one, e) == e == A.mul(e, one)
        # x conj(x) = |x|^2
        assert A.mul(e, A.conj(e)) == one


def test_associativity_and_commutativity_by_dimension():
    flags = {d: (composition_algebra(d).is_associative(), composition_algebra(d).is_commutative())
             for d in (1, 2, 4, 8)}
    assert flags == {1: (True, True), 2: (True, True), 4: (True, False), 8: (False, False)}


def test_octonions_are_alternative():
    O = composition_algebra(8)
    units = [O.unit(i) for i in range(8)]
    for x in units:
        for y in units:
            assert not any(O.associator(x, x, y))
            assert not any(O.associator(x, y, y))


def test_multiplication_table_is_signed_permutation():
    O = composition_algebra(8)
    for row in O.table:
        assert sorted(k for _, k in row) == list(range(8))
        assert all(s in (1, -1) for s, _ in row)


@pytest.mark.parametrize("dim", [0, 3, 16])
def test_invalid_dimension(dim):
    with pytest.raises(ValueError):
        composition_algebra(dim)
