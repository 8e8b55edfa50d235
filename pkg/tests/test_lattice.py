import pytest

from exceptions import InputDomainError
from lattice import (FinitePoset, MeetSemilattice, build_blowup_poset, build_boolean_lattice,
                     interval_elements, maximal_chain_lengths, mobius, product_poset)


def test_blowup_poset_shape(q3):
    assert q3.labels == ("0", "l1", "l2", "l3", "V")
    assert q3.top == 4 and q3.bottom == 0
    assert q3.proper_elements == (0, 1, 2, 3)
    assert q3.rank_weights == (2, 1, 1, 1, 0)
    assert q3.is_graded
    assert q3.gamma_weights == (6, 4, 4, 4, 0)


def test_meet_of_distinct_lines_is_zero(q3):
    assert q3.meet(1, 2) == 0
    assert q3.meet(1, 4) == 1
    assert q3.leq(0, 3) and not q3.leq(1, 2)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_mobius_zero_to_top(r):
    Q = build_blowup_poset(r, 3)
    assert mobius(Q, Q.zero, Q.top) == r - 1
    assert mobius(Q, Q.zero, Q.line(1)) == -1


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_boolean_lattice_mobius(n):
    B = build_boolean_lattice(n)
    assert B.size == 2 ** n
    assert mobius(B, B.bottom, B.top) == (-1) ** n


def test_interval_and_longest_chain(q3):
    assert interval_elements(q3, 0, 4, open_lo=True, open_hi=True) == [1, 2, 3]
    assert maximal_chain_lengths(q3, 0, 4) == 2


def test_interval_requires_comparable(q3):
    with pytest.raises(InputDomainError):
        interval_elements(q3, 1, 2)


def test_product_poset_orders_componentwise(q1):
    P = product_poset(q1, q1)
    assert P.size == 9
    assert P.leq(0 * 3 + 1, 2 * 3 + 1)
    assert not P.leq(1 * 3 + 0, 0 * 3 + 2)
    assert P.label(1 * 3 + 2) == "(l1,V)"


def test_invalid_parameters():
    with pytest.raises(InputDomainError):
        build_blowup_poset(0, 3)
    with pytest.raises(InputDomainError):
        build_blowup_poset(2, 2)


def test_relation_must_be_antisymmetric():
    with pytest.raises(InputDomainError):
        FinitePoset.from_relation(["a", "b"], lambda i, j: True)


def test_meet_table_is_validated():
    table = [[0, 0, 0], [1, 1, 1], [0, 1, 2]]  # not commutative
    with pytest.raises(InputDomainError):
        MeetSemilattice(["x", "y", "t"], table, top=2)


def test_boolean_lattice_is_graded():
    B = build_boolean_lattice(3)
    assert B.is_graded
    assert B.rank_weights[B.bottom] == 3
