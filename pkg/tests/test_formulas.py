from fractions import Fraction

import pytest

from adlv.formulas import (
    BELOW_2RHO, KAPPA_MISMATCH, NOT_SHRUNKEN, SUPPORT_DEFICIENT, alcove_emptiness, alcove_witness,
    cordial_certificate, large_translation_verdict, dom_minus, dom_minus_exhaustive, double_flat,
    is_alcove_element, predicted_verdict, reduction_target, virtual_dim,
)
from adlv.notation import parse_element
from adlv.reduction_oracle import InvariantViolation
from adlv.root_system import all_small_dominant
from adlv.sigma_classes import ClassInvariant, basic_class
from adlv.sweep import target_failures
from conftest import group, oracle


def test_dom_minus_examples(A2):
    D = A2.datum
    assert dom_minus(D, (3, 1), (1, 1)) == (2, 0)
    assert dom_minus(D, (1, 0), (0, 1)) == (0, 1)
    assert dom_minus(D, (1, 1), (2, 2)) == (0, 0)
    with pytest.raises(ValueError):
        dom_minus(D, (-1, 0), (0, 0))


@pytest.mark.parametrize("spec,bound", [("A2", 8), ("B2", 8), ("G2", 20)])
def test_dom_minus_greedy_equals_exhaustive(spec, bound):
    D = group(spec).datum
    small = all_small_dominant(D, 2)
    for lam in small:
        for lam2 in small:
            if not D.in_lattice(tuple(a - b for a, b in zip(lam, lam2))):
                continue
            assert dom_minus(D, lam, lam2) == dom_minus_exhaustive(D, lam, lam2, bound=bound)


def test_double_flat_examples(A1, A2):
    w = parse_element(A1, "x=[]; lam=[4]; y=[s1]")
    assert double_flat(A1, w) == (2,)
    t = A2.translation((2, 1))
    assert double_flat(A2, t) == (2, 1)
    # minuscule lambda_w is fixed
    for w in A2.elements_up_to(4):
        if A2.lambda_w(w) in {(1, 0), (0, 1)}:
            assert double_flat(A2, w) == A2.lambda_w(w)


def test_virtual_dim_examples(A1):
    s0 = A1.simple[0]
    assert virtual_dim(A1, s0, ClassInvariant(0, (0,))) == 1
    assert virtual_dim(A1, A1.one, ClassInvariant(0, (0,))) == 0
    tau = A1.element((1,), 1)
    assert virtual_dim(A1, tau, ClassInvariant(1, (0,))) == 0
    assert virtual_dim(A1, tau, ClassInvariant(1, (1,))) == Fraction(0)


def test_predicted_verdict_examples(A1):
    assert predicted_verdict(A1, A1.one, ClassInvariant(0, (0,))).reason == NOT_SHRUNKEN
    s0 = A1.simple[0]
    v = predicted_verdict(A1, s0, ClassInvariant(0, (0,)))
    assert v.kind == "nonempty" and v.dim == 1
    w = parse_element(A1, "x=[]; lam=[4]; y=[s1]")
    table = oracle("A1").table_dict(w)
    for b in (ClassInvariant(0, (0,)), ClassInvariant(0, (2,))):
        v = predicted_verdict(A1, w, b)
        if v.applicable:
            assert v.kind == "nonempty" and table[b] == v.dim
    assert predicted_verdict(A1, w, ClassInvariant(1, (0,))).reason in (KAPPA_MISMATCH, "lambda-nu-not-strictly-positive")


def test_predicted_verdict_support_deficient(A2):
    # shrunken translation with eta = 1 has deficient support
    t = A2.translation((3, 3))
    b = ClassInvariant(0, (0, 0))
    v = predicted_verdict(A2, t, b)
    assert v.kind == "empty" and v.reason == SUPPORT_DEFICIENT
    assert oracle("A2").table_dict(t).get(b) is None


def test_large_translation_implies_predicted(A2):
    hits = 0
    for w in A2.elements_up_to(9):
        for b in oracle("A2").table_dict(w):
            c = large_translation_verdict(A2, w, b)
            if c.applicable:
                hits += 1
                assert c == predicted_verdict(A2, w, b)
            else:
                assert c.reason in (NOT_SHRUNKEN, BELOW_2RHO)
    assert hits > 0


def test_cordial_certificates(A1, A2):
    assert cordial_certificate(A1, A1.translation((2,))) == "x-translation"
    assert cordial_certificate(A1, A1.mul(A1.simple[1], A1.translation((2,)))) == "x-translation"
    D = A2.datum
    w = A2.prod(A2.finite(D.longest), A2.translation((2, 1)), A2.finite(D.from_word([0])))
    assert cordial_certificate(A2, w) == "antidominant"
    assert cordial_certificate(A2, A2.simple[0]) is None


def test_alcove_element_examples(A2):
    D = A2.datum
    for w in A2.elements_up_to(4):
        assert is_alcove_element(A2, w, range(D.rank), D.from_word([0]))
    assert is_alcove_element(A2, A2.one, (), 0)
    with pytest.raises(ValueError):
        is_alcove_element(group("A2:adjoint:sigma=flip"), A2.one, (0,), 0)


@pytest.mark.parametrize("spec", ["A2", "B2", "A3:adjoint:sigma=flip"])
def test_shrunken_support_deficient_are_alcove_elements(spec):
    W = group(spec)
    D = W.datum
    seen = 0
    for w in W.elements_up_to(7):
        J = D.supp_sigma(W.eta_sigma(w))
        if W.is_shrunken(w) and J != frozenset(range(D.rank)):
            seen += 1
            assert is_alcove_element(W, w, J, alcove_witness(W, w))
    assert seen > 0


def test_alcove_emptiness_agrees_with_oracle(B2):
    O = oracle("B2")
    empties = 0
    for w in B2.elements_up_to(7):
        table = O.table_dict(w)
        for b in set(table) | {basic_class(B2, B2.kappa(w))}:
            if alcove_emptiness(B2, w, b) == "empty":
                empties += 1
                assert b not in table
    assert empties > 0
    assert alcove_emptiness(B2, B2.one, ClassInvariant(1, (0, 0))) == "empty"


def test_reduction_target_A1(A1):
    w = parse_element(A1, "x=[]; lam=[4]; y=[s1]")
    t = reduction_target(A1, w)
    assert A1.datum.geq_Z(t.gamma, double_flat(A1, w))
    assert A1.datum.supp_sigma(t.a) == {0}
    assert A1.mul(t.w1, t.w2) == w
    assert all(k == "ok" for k, _, _ in target_failures(A1, oracle("A1"), w))


def test_reduction_target_needs_full_support(A2):
    with pytest.raises(ValueError):
        reduction_target(A2, A2.translation((1, 1)))


def test_reduction_target_nonshrunken_identity_failure(A1):
    tau = A1.element((1,), 1)
    with pytest.raises(InvariantViolation):
        reduction_target(A1, tau)
    t = reduction_target(A1, tau, strict=False)
    assert not t.lengths_additive
    bad = [m for k, m, _ in target_failures(A1, oracle("A1"), tau, strict=False) if k != "ok"]
    assert bad == ["a t^gamma nonempty at b but w empty"]
