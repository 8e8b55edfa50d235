import pytest
from hypothesis import given, strategies as st

from del_pezzo import (ANTICANONICAL, DISTINCT, GENERATORS, MIN_DISTINCT, DPClass, apply_generator,
                       apply_word, cremona, disjoint_curve_pairs, dp_is_ample, dp_minus_one_curves,
                       dp_normalize, dp_pairing, n_alpha, sample_ample_classes, weyl_group, weyl_orbit)
from exceptions import InputDomainError

classes = st.builds(
    DPClass,
    st.integers(-30, 30),
    st.tuples(*[st.integers(-30, 30)] * 4),
)


def test_minus_one_curves():
    curves = dp_minus_one_curves()
    assert len(curves) == 10
    assert all(dp_pairing(e, e) == -1 for e in curves)
    assert all(dp_pairing(ANTICANONICAL, e) == 1 for e in curves)
    assert len(disjoint_curve_pairs()) == 30


def test_ampleness():
    assert dp_is_ample(DPClass(3, (1, 1, 1, 1)))
    assert not dp_is_ample(DPClass(1, (1, 1, 0, 0)))
    assert not dp_is_ample(DPClass(5, (1, 1, 1, 0)))


def test_parse_needs_five_numbers():
    assert DPClass.parse([3, 1, 1, 1, 1]) == ANTICANONICAL
    with pytest.raises(InputDomainError):
        DPClass.parse([3, 1, 1, 1])


def test_anticanonical_class_is_cremona_fixed():
    assert cremona(ANTICANONICAL) == ANTICANONICAL
    normal = dp_normalize(ANTICANONICAL)
    assert normal.dp_class == ANTICANONICAL
    assert normal.witness == ('c123',)
    assert not normal.strict


def test_normalize_strict():
    normal = dp_normalize(DPClass(10, (4, 3, 2, 1)))
    assert normal.dp_class == DPClass(11, (5, 4, 3, 1))
    assert normal.witness == ('c123',)
    assert normal.strict
    assert apply_word(DPClass(10, (4, 3, 2, 1)), normal.witness) == normal.dp_class


def test_normalize_sorts_first():
    a = DPClass(10, (1, 2, 3, 4))
    normal = dp_normalize(a)
    assert normal.witness[-1] == 'c123'
    assert apply_word(a, normal.witness) == normal.dp_class


def test_normalize_rejects_non_ample():
    with pytest.raises(InputDomainError):
        dp_normalize(DPClass(1, (1, 1, 0, 0)))


def test_weyl_group():
    group = weyl_group()
    assert len(group) == 120
    assert group[0].word == ()
    assert all(g.act(ANTICANONICAL) == ANTICANONICAL for g in group)


def test_orbit_words_reach_their_images():
    a = DPClass(10, (4, 3, 2, 1))
    orbit = weyl_orbit(a)
    assert orbit[0] == (a, ())
    assert len({image for image, _ in orbit}) == len(orbit)
    for image, word in orbit:
        assert apply_word(a, word) == image


def test_n_alpha():
    fixed = n_alpha(ANTICANONICAL)
    assert not fixed.feasible
    assert fixed.orbit_size == 1
    result = n_alpha(DPClass(10, (4, 3, 2, 1)))
    assert result.feasible
    assert result.value >= 4
    assert apply_word(DPClass(10, (4, 3, 2, 1)), result.argmax_word) == result.argmax_class


@pytest.mark.parametrize("n,hypothesis", [
    ((4, 3, 2, 1), DISTINCT),
    ((4, 4, 3, 2), MIN_DISTINCT),
    ((4, 4, 3, 3), None),
])
def test_n_alpha_reports_distinctness(n, hypothesis):
    a = DPClass(10, n)
    assert dp_is_ample(a)
    result = n_alpha(a)
    assert result.hypothesis == hypothesis
    assert result.to_json()['hypotheses_hold'] is (hypothesis is not None)


def test_equal_multiplicities_fail_the_hypothesis():
    assert not n_alpha(ANTICANONICAL).hypotheses_hold


def test_sampling_is_seeded():
    first = sample_ample_classes(5, seed=7)
    assert first == sample_ample_classes(5, seed=7)
    assert all(dp_is_ample(a) for a in first)


@given(a=classes)
def test_cremona_is_an_involution(a):
    assert cremona(cremona(a)) == a


@given(a=classes, b=classes, name=st.sampled_from(GENERATORS))
def test_generators_preserve_the_pairing(a, b, name):
    assert dp_pairing(apply_generator(a, name), apply_generator(b, name)) == dp_pairing(a, b)


@given(a=classes)
def test_n_alpha_is_orbit_invariant(a):
    if not dp_is_ample(a):
        return
    images = weyl_orbit(a)
    assert n_alpha(images[-1][0]).value == n_alpha(a).value
