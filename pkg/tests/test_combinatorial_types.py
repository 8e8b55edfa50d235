import pytest

from chains import DepthFunction, word_to_chain
from combinatorial_types import (ABSOLUTE, RELATIVE, CombinatorialType, SatOrder, TypeBounds, as_relative,
                                 enumerate_saturated_types, kappa_of, kappa_of_representative,
                                 leq_plus, leq_plus_sat, letter_counts, minimal_types, representative,
                                 sat_preimages, sat_step, saturate_type, stratum_record, successor_types,
                                 type_from_words, type_of, type_rank)
from divisors import LabeledConfiguration, RelativePair
from exceptions import InputDomainError


def test_types_forget_order_and_trivial_points(q3):
    a = type_from_words(q3, ["1*0", "1*l1", "V"])
    b = type_from_words(q3, ["1*l1", "1*0"])
    assert a == b
    assert hash(a) == hash(b)
    assert a.size == 2


def test_type_strings(q3):
    assert str(type_from_words(q3, ["1*l1"])) == "{1*l1}"
    assert str(type_from_words(q3, [("1*l1", "2*l1")])) == "{1*l1<2*l1}"
    assert str(type_from_words(q3, ["1*l1"], basepoint="1*l2")) == "[*1*l2] {1*l1}"


def test_mixed_entries_rejected(q3):
    with pytest.raises(InputDomainError):
        CombinatorialType(q3, (word_to_chain(q3, "1*l1"),), relative=True)


def test_leq_plus_merges_points(q3):
    S = type_from_words(q3, ["2*l1"])
    T = type_from_words(q3, ["1*l1", "1*l1"])
    assert leq_plus(S, T)
    assert not leq_plus(T, S)
    assert leq_plus(type_from_words(q3, ["1*l1"]), type_from_words(q3, ["1*l1", "1*l2"]))


def test_empty_type_is_below_only_itself(q3):
    empty = type_from_words(q3, [])
    assert leq_plus(empty, empty)
    assert not leq_plus(empty, type_from_words(q3, ["1*l1"]))


def test_sat_step_uses_preimages(q2):
    S = type_from_words(q2, ["1*0"])
    T = type_from_words(q2, ["1*l1", "1*l2"])
    assert not leq_plus(S, T)
    assert sat_step(S, T)
    preimages = sat_preimages(S.entries[0])
    assert [g.depths for g in preimages] == [(0, 1, 1)]


def test_sat_order_path_and_antisymmetry(q2):
    universe = enumerate_saturated_types(q2, TypeBounds(2, 2), ABSOLUTE)
    order = SatOrder(universe)
    assert order.antisymmetry_violations() == []
    S = type_from_words(q2, ["1*0"])
    T = type_from_words(q2, ["1*l1", "1*l2"])
    result = leq_plus_sat(S, T, order)
    assert result.related
    assert result.witness[0] == S and result.witness[-1] == T


def test_enumeration_counts(q1, q3):
    assert len(enumerate_saturated_types(q3, TypeBounds(1, 1), ABSOLUTE)) == 5
    assert len(enumerate_saturated_types(q3, TypeBounds(1, 1), ABSOLUTE, essential_only=True)) == 5
    assert len(enumerate_saturated_types(q1, TypeBounds(1, 1), ABSOLUTE, essential_only=True)) == 2


def test_enumeration_is_duplicate_free_and_sorted(q2):
    found = enumerate_saturated_types(q2, TypeBounds(2, 2), RELATIVE)
    assert len(found) == len(set(found))
    assert [T.sort_key() for T in found] == sorted(T.sort_key() for T in found)


@pytest.mark.parametrize("pair,kappa", [
    (("V", "1*l1"), 2),
    (("V", "1*0"), 3),
    (("1*l1", "2*l1"), 2),
    (("2*l1", "1*l1+1*0"), 0),
])
def test_kappa_of_single_points(q3, pair, kappa):
    T = type_from_words(q3, [pair])
    assert kappa_of(T, 3) == kappa
    assert kappa_of_representative(T, 3) == kappa


def test_kappa_needs_relative_type(q3):
    with pytest.raises(InputDomainError):
        kappa_of(type_from_words(q3, ["1*l1"]))


def test_representative_labels_points(q3):
    T = type_from_words(q3, [("1*l1", "2*l1"), ("V", "1*l2")])
    pair = representative(T)
    assert len(pair.labels) == 2
    assert set(pair.upper.to_json().values()) == {"2*l1", "1*l2"}


def test_letter_counts(q3):
    T = type_from_words(q3, [("1*l1", "2*l1+1*0")])
    assert letter_counts(T) == (1, (1, 0, 0))


def test_successors_of_empty(q2):
    empty = type_from_words(q2, [("V", "V")])
    assert empty.size == 0
    assert len(successor_types(empty)) == 2
    lower = [word_to_chain(q2, "1*l1")]
    assert {str(T) for T in successor_types(empty, lower)} == {
        "{V<1*l1}", "{V<1*l2}", "{1*l1<2*l1}", "{1*l1<1*0}",
    }


def test_minimal_types_after_new_lines(q3):
    empty = type_from_words(q3, [("V", "V")])
    lower = [word_to_chain(q3, "1*l1")]
    minimal = {str(T) for T in minimal_types(successor_types(empty, lower))}
    assert minimal == {"{V<1*l1}", "{V<1*l2}", "{V<1*l3}"}


def test_successors_raise_kappa(q3):
    for T in enumerate_saturated_types(q3, TypeBounds(1, 2), ABSOLUTE):
        R = as_relative(T)
        assert type_rank(R) <= kappa_of(R, 3)
        for S in successor_types(R):
            assert kappa_of(S, 3) >= kappa_of(R, 3) + 1


def test_stratum_record_of_a_line(q3):
    record = stratum_record(type_from_words(q3, ["1*l1"]), 3, with_mu=True)
    assert (record.gamma, record.rank, record.supp, record.kappa) == (4, 1, 1, 2)
    assert record.essential
    assert record.mobius == -1
    assert record.mu_betti == [0, 1]
    assert record.to_row()["type"] == "{1*l1}"


def test_type_of_forgets_labels(q3):
    pair = RelativePair.from_words(q3, {"p": "1*l1"}, {"p": "2*l1", "q": "1*l2"})
    assert type_of(pair) == type_from_words(q3, [("1*l1", "2*l1"), ("V", "1*l2")])
    x = LabeledConfiguration.from_words(q3, {"a": "1*l1", "b": "1*l1"})
    assert type_of(x) == type_from_words(q3, ["1*l1", "1*l1"])


def test_saturate_type(q2):
    T = CombinatorialType(q2, (DepthFunction(q2, (0, 1, 1)),))
    assert not T.saturated
    assert saturate_type(T) == type_from_words(q2, ["1*0"])
    with pytest.raises(InputDomainError):
        stratum_record(T, 3)


@pytest.mark.slow
def test_sat_order_is_antisymmetric_on_q3(q3):
    order = SatOrder(enumerate_saturated_types(q3, TypeBounds(2, 2), ABSOLUTE))
    assert order.antisymmetry_violations() == []


def test_rank_can_exceed_kappa_on_relative_types(q3):
    # an l -> 0 conversion costs rank without adding support; absolute types never do this
    T = type_from_words(q3, [("2*l1", "1*l1+1*0")])
    assert kappa_of(T, 3) == 0
    assert type_rank(T) == 1 > kappa_of(T, 3)
