import pytest

from adlv.notation import ParseError, format_element, format_word, parse_element
from conftest import group


@pytest.mark.parametrize("spec", ["A1", "A2", "B2", "G2", "A3:adjoint:sigma=flip", "B2:sc"])
def test_round_trips(spec):
    W = group(spec)
    for w in W.elements_up_to(5):
        assert parse_element(W, format_element(W, w)) == w
        assert parse_element(W, format_word(W, w)) == w


def test_identity_spellings(A2):
    for text in ("", "1", "e", "id", "x=[]; lam=[0,0]; y=[]", "lam=[0,0]"):
        assert parse_element(A2, text) == A2.one


def test_triple_form(A1):
    assert parse_element(A1, "x=[]; lam=[2]; y=[s1]") == A1.simple[0]
    assert parse_element(A1, "lam=[1]; y=[s1]") == A1.omega_elements()[1]


def test_demazure_star(A2):
    assert parse_element(A2, "s1 * s1 s2") == parse_element(A2, "s1 s2")


@pytest.mark.parametrize("text,pos,needle", [
    ("s9", 0, "s9"),
    ("s1 s2 s7", 6, "s7"),
    ("s1 tau5", 3, "tau5"),
    ("s1 foo", 3, "foo"),
])
def test_parse_errors_name_token_and_position(A2, text, pos, needle):
    with pytest.raises(ParseError) as e:
        parse_element(A2, text)
    assert e.value.pos == pos
    assert needle in str(e.value)


def test_triple_errors(A2):
    with pytest.raises(ParseError):
        parse_element(A2, "lam=[1]")
    with pytest.raises(ParseError):
        parse_element(A2, "lam=[a,b]")
    with pytest.raises(ParseError):
        parse_element(A2, "x=[s0]; lam=[0,0]")
    with pytest.raises(ParseError):
        parse_element(group("G2"), "tau1")
