import pytest
from hypothesis import given, strategies as st

from chains import (Chain, DepthFunction, chain_join, chain_to_word, covers_above, crosscut_maximum,
                    enumerate_chains, essential_above, interval_poset, is_essential_pair, saturate,
                    word_to_chain)
from exceptions import InputDomainError
from lattice import build_blowup_poset

Q3 = build_blowup_poset(3, 3)


def trivial(poset):
    return saturate(DepthFunction.trivial(poset))


def words(chains):
    return {str(c) for c in chains}


@st.composite
def depth_functions(draw):
    lines = draw(st.lists(st.integers(0, 4), min_size=3, max_size=3))
    zero = draw(st.integers(0, min(lines)))
    return DepthFunction(Q3, [zero] + lines)


def test_word_round_trip(q2):
    c = word_to_chain(q2, "2*l1+1*0")
    assert c.depths == (1, 3, 1)
    assert str(c) == "2*l1+1*0"
    assert c.total_depth == 3
    assert word_to_chain(q2, chain_to_word(c)) == c


def test_trivial_chain_is_written_as_top(q2):
    assert str(trivial(q2)) == "V"
    assert word_to_chain(q2, "V") == trivial(q2)


def test_incomparable_letters_are_rejected(q2):
    with pytest.raises(InputDomainError):
        word_to_chain(q2, "1*l1+1*l2")


def test_depth_functions_must_be_order_compatible(q2):
    with pytest.raises(InputDomainError):
        DepthFunction(q2, (1, 0, 0))


def test_chain_must_be_meet_preserving(q2):
    with pytest.raises(InputDomainError):
        Chain(q2, (0, 1, 1))
    assert saturate(DepthFunction(q2, (0, 1, 1))) == word_to_chain(q2, "1*0")


def test_enumerate_chains_counts(q1, q3):
    assert len(enumerate_chains(q3, 3)) == 22
    assert len(enumerate_chains(q1, 3)) == 10
    assert enumerate_chains(q3, 0) == (trivial(q3),)


def test_covers_of_trivial(q1, q3):
    assert words(covers_above(trivial(q3), 1)) == {"1*l1", "1*l2", "1*l3"}
    assert words(covers_above(trivial(q1), 1)) == {"1*l1"}


def test_covers_budget_below_depth(q3):
    with pytest.raises(InputDomainError):
        covers_above(word_to_chain(q3, "2*l1"), 1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_essential_catalogue_above_multiple_line(q3, d):
    w = word_to_chain(q3, f"{d}*l2")
    lower = f"{d - 1}*l2+1*0" if d > 1 else "1*0"
    found = words(e.chain for e in essential_above(w, d + 1))
    assert found == {f"{d + 1}*l2", lower, f"{d}*l2+1*0"}


def test_essential_catalogue_above_trivial(q1, q3):
    assert words(e.chain for e in essential_above(trivial(q3), 1)) == {"1*l1", "1*l2", "1*l3", "1*0"}
    assert words(e.chain for e in essential_above(trivial(q1), 1)) == {"1*l1"}


def test_join_of_two_lines_is_zero(q2):
    l1, l2 = word_to_chain(q2, "1*l1"), word_to_chain(q2, "1*l2")
    assert chain_join(l1, l2) == word_to_chain(q2, "1*0")


def test_essential_pairs_and_crosscut(q1, q2):
    assert is_essential_pair(trivial(q2), word_to_chain(q2, "1*0"))
    assert not is_essential_pair(trivial(q1), word_to_chain(q1, "1*0"))
    x = word_to_chain(q2, "2*l1")
    assert crosscut_maximum(trivial(q2), x) == word_to_chain(q2, "1*l1")
    assert not is_essential_pair(trivial(q2), x)


def test_interval_poset_between_trivial_and_zero(q2):
    poset, members = interval_poset(trivial(q2), word_to_chain(q2, "1*0"))
    assert words(members) == {"V", "1*l1", "1*l2", "1*0"}
    assert poset.size == 4


@given(g=depth_functions())
def test_saturation_is_a_closure(g):
    s = saturate(g)
    assert g <= s
    assert saturate(s) == s
    assert s.total_depth == g.total_depth


@given(g=depth_functions(), h=depth_functions())
def test_saturation_is_monotone_and_adjoint(g, h):
    if g <= h:
        assert saturate(g) <= saturate(h)
    c = saturate(h)
    assert (saturate(g) <= c) == (g <= c)


@given(g=depth_functions(), h=depth_functions())
def test_join_is_least_upper_bound(g, h):
    a, b = saturate(g), saturate(h)
    j = chain_join(a, b)
    assert a <= j and b <= j
    assert j <= saturate(g + h)
