from fractions import Fraction
from itertools import product

import pytest

from adlv.root_system import RootDatum, cartan_matrix, parse_group

KNOWN_POSITIVE = {("A", 1): 1, ("A", 2): 3, ("B", 2): 4, ("G", 2): 6, ("A", 3): 6,
                  ("B", 3): 9, ("C", 3): 9, ("D", 4): 12, ("F", 4): 24}


@pytest.mark.parametrize("t,n", sorted(KNOWN_POSITIVE))
def test_positive_root_counts_and_longest_element(t, n):
    D = RootDatum(t, n)
    assert len(D.positive_roots) == KNOWN_POSITIVE[(t, n)]
    assert D.weyl_length(D.longest) == KNOWN_POSITIVE[(t, n)]


def test_exceptional_e_rejected():
    with pytest.raises(ValueError):
        cartan_matrix("E", 6)


@pytest.mark.parametrize("text,rank,order", [
    ("A2:adjoint:sigma=id", 2, 1),
    ("A3 adjoint sigma=flip", 3, 2),
    ("A1:adjoint sigma=id", 1, 1),
    ("B2:sc", 2, 1),
])
def test_parse_group(text, rank, order):
    D = parse_group(text)
    assert D.rank == rank
    assert D.sigma_order == order


@pytest.mark.parametrize("bad", ["Z2", "A2:weird", "A2:adjoint:sigma=nonsense", "B2:adjoint:sigma=flip"])
def test_parse_group_rejects(bad):
    with pytest.raises(ValueError):
        parse_group(bad)


def test_dominant_rep_examples():
    A1 = parse_group("A1")
    dom, x = A1.dominant_rep((-1,))
    assert dom == (1,) and A1.weyl_words[x] == (0,)
    A2 = parse_group("A2")
    mu = (1, -1)
    dom, x = A2.dominant_rep(mu)
    assert A2.is_dominant(dom)
    assert A2.act(x, dom) == mu
    assert dom in {A2.act(u, mu) for u in range(A2.weyl_size)}


@pytest.mark.parametrize("spec", ["A2", "B2", "G2", "A3", "C3"])
def test_dominant_rep_equivariant(spec):
    D = parse_group(spec)
    for mu in product(range(-2, 3), repeat=D.rank):
        dom = D.dominant(mu)
        assert D.dominant(dom) == dom
        for u in range(D.weyl_size):
            assert D.dominant(D.act(u, mu)) == dom


def test_rho_like():
    A1 = parse_group("A1")
    assert A1.rho_check(()) == (0,)
    assert A1.eta_check(()) == (0,)
    assert A1.rho_check((0,)) == (1,)
    assert A1.eta_check((0,)) == (1,)
    A2 = parse_group("A2")
    rho = A2.rho_check()
    assert A2.coroot_coords(rho) == (1, 1)
    assert A2.eta_check((0, 1)) == rho


def test_diamond():
    A3 = parse_group("A3:adjoint:sigma=flip")
    assert A3.diamond((1, 0, 0)) == (Fraction(1, 2), 0, Fraction(1, 2))
    A2 = parse_group("A2")
    assert A2.diamond((3, -1)) == (3, -1)


def test_geq_orders():
    A2 = parse_group("A2")
    rho = A2.rho_check()
    assert A2.geq_Z(rho, (0, 0)) and A2.geq_Q(rho, (0, 0))
    assert A2.geq_Q((1, 0), (0, 0))
    assert not A2.geq_Z((1, 0), (0, 0))
    for a in product(range(-1, 2), repeat=2):
        assert A2.geq_Z(a, a) and A2.geq_Q(a, a)


def test_supp_sigma():
    A2 = parse_group("A2")
    assert A2.supp_sigma(0) == frozenset()
    s1 = A2.from_word([0])
    assert A2.supp_sigma(s1) == {0}
    flip = parse_group("A2:adjoint:sigma=flip")
    assert flip.supp_sigma(flip.from_word([0])) == {0, 1}


@pytest.mark.parametrize("spec", ["A3:adjoint:sigma=flip", "D4:adjoint:sigma=triality", "A2:adjoint:sigma=flip"])
def test_sigma_is_length_preserving_automorphism(spec):
    D = parse_group(spec)
    for u in range(D.weyl_size):
        assert D.weyl_length(D.sigma_weyl(u)) == D.weyl_length(u)
        assert D.sigma_inv_weyl(D.sigma_weyl(u)) == u
    for u in range(0, D.weyl_size, 3):
        for v in range(0, D.weyl_size, 5):
            assert D.sigma_weyl(D.mul(u, v)) == D.mul(D.sigma_weyl(u), D.sigma_weyl(v))


def test_parabolic_factor():
    D = parse_group("B3")
    J = {0, 2}
    for u in range(D.weyl_size):
        x, z = D.parabolic_factor(u, J)
        assert D.mul(x, z) == u
        assert D.in_parabolic(z, J)
        assert all(not D.right_descent(x, j) for j in J)
        assert D.weyl_length(u) == D.weyl_length(x) + D.weyl_length(z)


def test_lattice_coordinates_round_trip():
    for spec in ("A2", "A2:sc", "B2:sc", "G2"):
        D = parse_group(spec)
        for c in product(range(-2, 3), repeat=D.rank):
            v = D.from_lattice_coords(c)
            assert D.in_lattice(v)
            assert tuple(D.to_lattice_coords(v)) == c
