import pytest

from chains import word_to_chain
from exceptions import ArithmeticOverflowError, InputDomainError, TorsionDetectedError
from homalg import (SimplicialComplex, boundary_matrix, boundary_squared_zero, cohomology, euler_vs_mobius,
                    homology, interval_mobius, kunneth, kunneth_betti, mu_stalk, order_complex,
                    pair_euler_consistent, relative_cells, relative_homology, smith_invariants)
from lattice import build_boolean_lattice

RP2_FACETS = [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
              (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)]


@pytest.fixture
def circle():
    return SimplicialComplex.from_facets("abc", [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def rp2():
    return SimplicialComplex.from_facets([f"v{i}" for i in range(6)], RP2_FACETS)


def test_circle_homology(circle):
    assert homology(circle).betti_vector() == [1, 1]
    assert boundary_matrix(circle, 1).shape == (3, 3)
    assert boundary_squared_zero(relative_cells(circle, None)) is None


def test_filled_triangle_is_acyclic():
    disk = SimplicialComplex.from_facets("abc", [(0, 1, 2)])
    assert homology(disk).betti_vector() == [1, 0, 0]
    assert disk.euler_characteristic() == 1


def test_faces_must_be_present():
    with pytest.raises(InputDomainError):
        SimplicialComplex("ab", [(0, 1)])


def test_proper_part_of_boolean_lattice_is_a_circle():
    B3 = build_boolean_lattice(3)
    proper = [q for q in B3.elements if q not in (0, B3.top)]
    assert homology(order_complex(B3, proper)).betti_vector() == [1, 1]


def test_projective_plane_has_torsion(rp2):
    H = homology(rp2)
    assert rp2.f_vector == [6, 15, 10]
    assert H.betti_vector() == [1, 0, 0]
    assert H.group(1).torsion == (2,)
    assert H.group(2).is_zero
    assert cohomology(H).group(2).torsion == (2,)
    with pytest.raises(TorsionDetectedError):
        kunneth([cohomology(H)])


def test_relative_homology_of_circle_rel_point(circle):
    point = SimplicialComplex("a", [(0,)])
    H = relative_homology(circle, point)
    assert H.betti_vector() == [0, 1]
    assert pair_euler_consistent(circle, point)


def test_smith_invariants():
    assert smith_invariants([{0: 2}, {1: 3}]) == [1, 6]
    assert smith_invariants([{0: 1, 1: 1}, {0: 1, 1: 1}]) == [1]
    with pytest.raises(ArithmeticOverflowError):
        smith_invariants([{0: 2}, {1: 3}], limit=2)


def test_entry_limit_follows_config(circle, small_config, monkeypatch):
    class TinyLimit(small_config):
        SNF_ENTRY_LIMIT = 0

    monkeypatch.setattr('homalg.get_config', lambda: TinyLimit)
    with pytest.raises(ArithmeticOverflowError):
        homology(circle)
    assert homology(circle, limit=2 ** 62).betti_vector() == [1, 1]


def test_stalk_of_a_cover(q3):
    w, x = word_to_chain(q3, "V"), word_to_chain(q3, "1*l1")
    assert mu_stalk(w, x).betti_vector() == [0, 1]
    assert interval_mobius(w, x) == -1
    assert euler_vs_mobius(w, x).equal


def test_unit_stalk(q3):
    c = word_to_chain(q3, "1*l1")
    assert mu_stalk(c, c).betti_vector() == [1]
    assert interval_mobius(c, c) == 1


def test_stalk_below_the_zero_letter(q2):
    w, x = word_to_chain(q2, "V"), word_to_chain(q2, "1*0")
    assert mu_stalk(w, x).betti_vector() == [0, 0, 1]
    assert interval_mobius(w, x) == 1


def test_non_essential_stalk_vanishes(q3):
    stalk = mu_stalk(word_to_chain(q3, "V"), word_to_chain(q3, "2*l1"))
    assert stalk.is_zero
    assert interval_mobius(word_to_chain(q3, "V"), word_to_chain(q3, "2*l1")) == 0


def test_kunneth_adds_degrees(q3):
    trivial = word_to_chain(q3, "V")
    a, b = word_to_chain(q3, "1*l1"), word_to_chain(q3, "1*l2")
    stalks = [mu_stalk(trivial, a), mu_stalk(trivial, b)]
    assert kunneth_betti(stalks) == [0, 0, 1]
    assert mu_stalk((trivial, trivial), (a, b)).betti_vector() == [0, 0, 1]


def test_endpoints_must_be_ordered(q3):
    with pytest.raises(InputDomainError):
        mu_stalk(word_to_chain(q3, "2*l1"), word_to_chain(q3, "1*l1"))
