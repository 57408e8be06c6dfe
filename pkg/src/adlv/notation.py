"""Text forms of elements of W~.

Two input forms are accepted:

* a word of generators ``s0 .. sn`` and ``tau1 .. tauk`` separated by
  whitespace, e.g. ``"s0 s1 tau1"``; ``1``/``e``/``id`` or the empty string
  is the identity.  Words joined by ``*`` are combined with the Demazure
  product, e.g. ``"s1 * s1 s2"``;
* a triple ``"x=[s1 s2]; lam=[2,0]; y=[s1]"`` meaning ``x t^lam y`` with
  ``lam`` in the lattice basis (fundamental coweights for adjoint groups,
  simple coroots for simply connected ones).

Elements are printed canonically as ``"x=[]; lam=[...]; y=[word]"``, i.e.
``t^lam u`` with ``u`` given by its canonical reduced word.
"""

from __future__ import annotations

import re

from .affine_weyl import AffineElement, AffineWeylGroup

__all__ = ["ParseError", "parse_element", "format_element", "format_word", "format_finite"]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\S+")


def _parse_word(W: AffineWeylGroup, text: str, offset: int, full: str) -> AffineElement:
    n = W.rank
    r = W.one
    omega = W.omega_elements()
    for m in _TOKEN.finditer(text):
        tok = m.group()
        pos = offset + m.start()
        if tok in ("1", "e", "id"):
            continue
        mt = re.fullmatch(r"s(\d+)", tok)
        if mt:
            k = int(mt.group(1))
            if k > n:
                raise ParseError(f"bad token {tok!r}: simple reflections are s0..s{n}", full, pos)
            r = W.mul(r, W.simple[k])
            continue
        mt = re.fullmatch(r"tau(\d+)", tok)
        if mt:
            k = int(mt.group(1))
            if not 1 <= k < len(omega):
                lim = f"tau1..tau{len(omega) - 1}" if len(omega) > 1 else "none (Omega is trivial)"
                raise ParseError(f"bad token {tok!r}: length-zero generators are {lim}", full, pos)
            r = W.mul(r, omega[k])
            continue
        raise ParseError(f"bad token {tok!r}", full, pos)
    return r


def _parse_finite_word(W: AffineWeylGroup, text: str, offset: int, full: str) -> int:
    D = W.datum
    word = []
    for m in _TOKEN.finditer(text.replace(",", " ")):
        tok = m.group()
        if tok in ("1", "e", "id"):
            continue
        mt = re.fullmatch(r"s(\d+)", tok)
        if not mt or not 1 <= int(mt.group(1)) <= W.rank:
            raise ParseError(f"bad finite token {tok!r}: expected s1..s{W.rank}", full, offset + m.start())
        word.append(int(mt.group(1)) - 1)
    return D.from_word(word)


_TRIPLE = re.compile(
    r"^\s*(?:x\s*=\s*\[(?P<x>[^\]]*)\]\s*;\s*)?lam\s*=\s*\[(?P<lam>[^\]]*)\]\s*(?:;\s*y\s*=\s*\[(?P<y>[^\]]*)\]\s*)?;?\s*$"
)


def parse_element(W: AffineWeylGroup, text: str) -> AffineElement:
    if "lam" in text:
        m = _TRIPLE.match(text)
        if not m:
            raise ParseError("malformed triple, expected 'x=[...]; lam=[...]; y=[...]'", text, 0)
        D = W.datum
        x = _parse_finite_word(W, m.group("x") or "", m.start("x") if m.group("x") else 0, text)
        y = _parse_finite_word(W, m.group("y") or "", m.start("y") if m.group("y") else 0, text)
        try:
            coords = [int(c) for c in m.group("lam").split(",") if c.strip()]
        except ValueError:
            raise ParseError("lam coordinates must be integers", text, m.start("lam")) from None
        if len(coords) != W.rank:
            raise ParseError(f"lam needs {W.rank} coordinates", text, m.start("lam"))
        lam = D.from_lattice_coords(coords)
        if any(not isinstance(c, int) for c in lam):
            raise ParseError("lam is not in the cocharacter lattice", text, m.start("lam"))
        return W.prod(W.finite(x), W.element(lam), W.finite(y))
    parts = text.split("*")
    result = None
    offset = 0
    for part in parts:
        w = _parse_word(W, part, offset, text)
        result = w if result is None else W.demazure(result, w)
        offset += len(part) + 1
    return result


def format_finite(W: AffineWeylGroup, u: int) -> str:
    return " ".join(f"s{i + 1}" for i in W.datum.weyl_words[u])


def format_element(W: AffineWeylGroup, w: AffineElement) -> str:
    lam = ",".join(str(c) for c in W.datum.to_lattice_coords(w.lam))
    return f"x=[]; lam=[{lam}]; y=[{format_finite(W, w.u)}]"


def format_word(W: AffineWeylGroup, w: AffineElement) -> str:
    """Reduced word such as ``"s0 s1 tau1"``; ``"1"`` for the identity."""
    word, tau = W.reduced_word(w)
    toks = [f"s{k}" for k in word]
    if tau != W.one:
        toks.append(f"tau{W.omega_elements().index(tau)}")
    return " ".join(toks) or "1"
