from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chains import DepthFunction, enumerate_chains, word_to_chain
from divisors import (LabeledConfiguration, RelativePair, chain_rank, config_dim_real, e_functional,
                      extend_function, gamma_of, gamma_weights_for, line_multiplicity,
                      longest_chain_rank, multiplicity, rank_of, saturate_config,
                      subadditivity_holds, supp_of)
from exceptions import InputDomainError
from lattice import build_blowup_poset

Q3 = build_blowup_poset(3, 3)
CHAINS = enumerate_chains(Q3, 3)


def test_absolute_configuration_values(q3):
    x = LabeledConfiguration.from_words(q3, {"p": "1*l1", "q": "1*0"})
    assert gamma_of(x, 3) == 10
    assert rank_of(x) == 3
    assert supp_of(x) == 2
    assert config_dim_real(x) == 4
    assert multiplicity(x, "0") == 1
    assert line_multiplicity(x) == 1


def test_relative_pair_values(q3):
    pair = RelativePair.from_words(q3, {"p": "1*l1"}, {"p": "2*l1", "q": "1*l2"})
    assert gamma_of(pair, 3) == 8
    assert rank_of(pair) == 2
    assert supp_of(pair) == 2
    assert pair.labels == ("p", "q")


def test_relative_pair_needs_lower_below_upper(q3):
    with pytest.raises(InputDomainError):
        RelativePair.from_words(q3, {"p": "2*l1"}, {"p": "1*l1"})


def test_trivial_points_are_dropped(q3):
    x = LabeledConfiguration.from_words(q3, {"p": "V", "q": "1*l3"})
    assert x.labels() == ["q"]


def test_duplicate_labels_rejected(q3):
    c = word_to_chain(q3, "1*l1")
    with pytest.raises(InputDomainError):
        LabeledConfiguration(q3, (("p", c), ("p", c)))


def test_pointed_configuration_counts_basepoint_in_gamma_only(q3):
    x = LabeledConfiguration.from_words(q3, {"p": "1*l1"}, basepoint="*", basepoint_word="1*l2")
    assert supp_of(x) == 1
    assert gamma_of(x, 3) == 8
    assert x.to_json() == {"*": "1*l2", "p": "1*l1"}


def test_gamma_weights_follow_ambient_dimension(q3):
    assert gamma_weights_for(q3, 4) == (8, 6, 6, 6, 0)
    with pytest.raises(InputDomainError):
        gamma_weights_for(q3, 2)


def test_extend_function_from_mapping(q3):
    x = LabeledConfiguration.from_words(q3, {"p": "2*l1+1*0"})
    assert extend_function({"0": 1}, x) == 1
    assert extend_function({"l1": 1}, x) == 2
    with pytest.raises(InputDomainError):
        extend_function({"V": 1}, x)


def test_rank_matches_longest_chain(q3):
    c = word_to_chain(q3, "2*l1+1*0")
    assert chain_rank(c) == 4
    assert longest_chain_rank(c) == 4


def test_e_functional(q3):
    c = word_to_chain(q3, "1*l1+1*0")
    assert e_functional(c, Fraction(1, 2)) == Fraction(3, 2)


def test_saturation_can_lower_e(q2):
    g1, g2 = word_to_chain(q2, "1*l1"), word_to_chain(q2, "1*l2")
    J = Fraction(3, 5)
    assert subadditivity_holds(g1, g2, J)
    assert e_functional(g1 + g2, J) < e_functional(g1, J) + e_functional(g2, J)


@given(a=st.sampled_from(CHAINS), b=st.sampled_from(CHAINS))
def test_gamma_is_additive_over_points(a, b):
    both = LabeledConfiguration(Q3, (("p", a), ("q", b)))
    parts = [LabeledConfiguration(Q3, ((label, c),)) for label, c in (("p", a), ("q", b))]
    assert gamma_of(both, 3) == sum(gamma_of(x, 3) for x in parts)
    assert rank_of(both) == sum(rank_of(x) for x in parts)


@given(a=st.sampled_from(CHAINS), b=st.sampled_from(CHAINS),
       J=st.sampled_from([Fraction(3, 5), Fraction(4, 5), Fraction(1)]))
def test_e_is_subadditive_under_saturation(a, b, J):
    assert subadditivity_holds(a, b, J)


def test_saturate_config(q2):
    x = LabeledConfiguration(q2, (("p", DepthFunction(q2, (0, 1, 1))),))
    saturated = saturate_config(x)
    assert saturated.get("p") == word_to_chain(q2, "1*0")
    assert gamma_of(x, 3) == gamma_of(saturated, 3) == 6
