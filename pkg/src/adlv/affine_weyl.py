"""The Iwahori-Weyl group ``X_* x| W_0`` of a :class:`RootDatum`.

An element ``t^lam u`` is stored as ``AffineElement(lam, u)`` with ``lam``
in pairing coordinates and ``u`` a :data:`WeylIndex`.  Multiplication is
``(t^lam u)(t^mu v) = t^(lam + u mu) uv``.

Geometric convention: the base alcove lies in the antidominant chamber,
``-1 < <v, alpha> < 0`` for all positive roots, and ``t^lam u`` acts on the
apartment by ``v -> u(v) - lam``.  With this choice the Iwahori-Matsumoto
formula reads ``l(t^lam u) = sum_{u^-1 a > 0} |<lam,a>| +
sum_{u^-1 a < 0} |<lam,a> - 1|`` and ``s_0 = t^theta^v s_theta``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .root_system import RootDatum, Vector, WeylIndex

__all__ = ["AffineElement", "CosetDecomposition", "AffineWeylGroup"]


class AffineElement(NamedTuple):
    lam: Vector
    u: int


@dataclass(frozen=True)
class CosetDecomposition:
    """``w = x t^mu y`` with ``mu`` dominant and ``t^mu y`` minimal in ``W_0 t^mu y``."""
    x: WeylIndex
    mu: Vector
    y: WeylIndex


class AffineWeylGroup:
    def __init__(self, datum: RootDatum):
        self.datum = D = datum
        self.rank = n = D.rank
        self.one = AffineElement((0,) * n, 0)
        theta = D.highest_root
        theta_v = D.positive_coroot(theta)
        s_theta = self._finite_reflection(theta)
        self.simple = tuple(
            [AffineElement(tuple(theta_v), s_theta)]
            + [AffineElement((0,) * n, D.simple_reflections[i]) for i in range(n)]
        )
        self._omega = self._find_omega()
        self._kappa = self._build_kappa()
        self._word_cache: dict[AffineElement, tuple[tuple[int, ...], AffineElement]] = {}
        self._bruhat_cache: dict[tuple[AffineElement, AffineElement], bool] = {}
        self._len_cache: dict[AffineElement, int] = {}
        # conjugation by tau permutes simple affine reflections
        self.omega_action = tuple(
            tuple(self.simple.index(self.mul(self.mul(t, s), self.inv(t))) for s in self.simple)
            for t in self._omega
        )

    def __repr__(self) -> str:
        return f"AffineWeylGroup({self.datum.spec!r})"

    def _finite_reflection(self, root) -> WeylIndex:
        D = self.datum
        cv = D.positive_coroot(root)
        basis = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        for u in range(D.weyl_size):
            if all(D.act(u, e) == tuple(e[j] - D.pairing(e, root) * cv[j] for j in range(self.rank))
                   for e in basis):
                return WeylIndex(u)
        raise AssertionError(f"no reflection for root {root}")

    # ------------------------------------------------------------------
    # group law

    def element(self, lam: Sequence[int], u: int = 0) -> AffineElement:
        lam = tuple(lam)
        if len(lam) != self.rank:
            raise ValueError(f"translation has {len(lam)} coordinates, expected {self.rank}")
        if not self.datum.in_lattice(lam):
            raise ValueError(f"{lam} is not in the cocharacter lattice")
        return AffineElement(tuple(int(x) for x in lam), u)

    def translation(self, lam: Sequence[int]) -> AffineElement:
        return self.element(lam, 0)

    def finite(self, u: int) -> AffineElement:
        return AffineElement((0,) * self.rank, u)

    def mul(self, a: AffineElement, b: AffineElement) -> AffineElement:
        D = self.datum
        ub = D.act(a.u, b.lam)
        return AffineElement(tuple(x + y for x, y in zip(a.lam, ub)), D.mul(a.u, b.u))

    def prod(self, *ws: AffineElement) -> AffineElement:
        r = self.one
        for w in ws:
            r = self.mul(r, w)
        return r

    def inv(self, w: AffineElement) -> AffineElement:
        D = self.datum
        ui = D.inverse(w.u)
        return AffineElement(tuple(-x for x in D.act(ui, w.lam)), ui)

    def sigma(self, w: AffineElement) -> AffineElement:
        D = self.datum
        return AffineElement(D.sigma_coweight(w.lam), D.sigma_weyl(w.u))

    def sigma_inv(self, w: AffineElement) -> AffineElement:
        D = self.datum
        return AffineElement(D.sigma_inv_coweight(w.lam), D.sigma_inv_weyl(w.u))

    def sigma_conj(self, g: AffineElement, w: AffineElement) -> AffineElement:
        """``g w sigma(g)^-1``."""
        return self.mul(self.mul(g, w), self.inv(self.sigma(g)))

    # ------------------------------------------------------------------
    # length, Omega, kappa

    def length(self, w: AffineElement) -> int:
        r = self._len_cache.get(w)
        if r is None:
            D = self.datum
            lam = w.lam
            r = 0
            for alpha, f in zip(D.positive_roots, D.inversion_flags[w.u]):
                r += abs(sum(a * b for a, b in zip(lam, alpha)) - f)
            if len(self._len_cache) < 2_000_000:
                self._len_cache[w] = r
        return r

    def _find_omega(self) -> tuple[AffineElement, ...]:
        D = self.datum
        out = []
        cands = [tuple((m >> i) & 1 for i in range(self.rank)) for m in range(1 << self.rank)]
        for lam in cands:
            if not D.in_lattice(lam):
                continue
            if not all(D.pairing(lam, a) in (0, 1) for a in D.positive_roots):
                continue
            want = tuple(D.pairing(lam, a) for a in D.positive_roots)
            for u in range(D.weyl_size):
                if D.inversion_flags[u] == want:
                    out.append(AffineElement(lam, u))
                    break
        out.sort(key=lambda t: (sum(t.lam), tuple(-x for x in t.lam)))
        return tuple(out)

    def omega_elements(self) -> tuple[AffineElement, ...]:
        """Length-zero elements; index 0 is the identity, ``tau_k`` is index k."""
        return self._omega

    def simple_reflections(self) -> tuple[AffineElement, ...]:
        """``(s_0, s_1, ..., s_n)``."""
        return self.simple

    def _build_kappa(self):
        D = self.datum
        classes = [D.pi1_class(t.lam) for t in self._omega]
        pos = {c: k for k, c in enumerate(classes)}
        parent = list(range(len(classes)))

        def find(k):
            while parent[k] != k:
                k = parent[k]
            return k

        # coinvariants: x ~ x + sigma(y) - y
        for k, c in enumerate(classes):
            for t in self._omega:
                y = D.pi1_class(t.lam)
                sy = D.pi1_class(D.sigma_coweight(t.lam))
                d = tuple((a + b - e) % 1 for a, b, e in zip(c, sy, y))
                a, b = find(k), find(pos[d])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = sorted({find(k) for k in range(len(classes))})
        label = {r: i for i, r in enumerate(roots)}
        self.kappa_size = len(roots)
        return {c: label[find(k)] for k, c in enumerate(classes)}

    def kappa(self, w: AffineElement) -> int:
        """Image in ``(X_*/Q^v)_sigma``, labelled ``0..kappa_size-1``."""
        return self._kappa[self.datum.pi1_class(w.lam)]

    def kappa_of_coweight(self, lam: Sequence) -> int:
        return self._kappa[self.datum.pi1_class(lam)]

    def omega_component(self, w: AffineElement) -> int:
        """Index of the ``tau`` with ``w`` in ``W_a tau`` (no sigma-coinvariants)."""
        c = self.datum.pi1_class(w.lam)
        for k, t in enumerate(self._omega):
            if self.datum.pi1_class(t.lam) == c:
                return k
        raise AssertionError("translation class not represented in Omega")

    # ------------------------------------------------------------------
    # words

    def reduced_word(self, w: AffineElement) -> tuple[tuple[int, ...], AffineElement]:
        """``(word, tau)`` with ``w = s_word[0] ... s_word[-1] tau``."""
        hit = self._word_cache.get(w)
        if hit is not None:
            return hit
        word: list[int] = []
        cur = w
        L = self.length(cur)
        while L > 0:
            for k, s in enumerate(self.simple):
                v = self.mul(s, cur)
                if self.length(v) < L:
                    word.append(k)
                    cur, L = v, L - 1
                    break
            else:
                raise AssertionError(f"no left descent for {w}")
        res = (tuple(word), cur)
        self._word_cache[w] = res
        return res

    def from_word(self, word: Sequence[int], tau: int = 0) -> AffineElement:
        r = self._omega[tau]
        for k in reversed(word):
            r = self.mul(self.simple[k], r)
        return r

    def left_descents(self, w: AffineElement) -> list[int]:
        L = self.length(w)
        return [k for k, s in enumerate(self.simple) if self.length(self.mul(s, w)) < L]

    # ------------------------------------------------------------------
    # Bruhat order and Demazure product

    def bruhat_leq(self, w: AffineElement, v: AffineElement) -> bool:
        """``w <= v`` by the lifting property along a left descent of ``v``."""
        if w == v:
            return True
        key = (w, v)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        lw, lv = self.length(w), self.length(v)
        if lw >= lv or self.omega_component(w) != self.omega_component(v):
            res = False
        else:
            k = self.left_descents(v)[0]
            s = self.simple[k]
            sv = self.mul(s, v)
            sw = self.mul(s, w)
            if self.length(sw) < lw:
                res = self.bruhat_leq(sw, sv)
            else:
                res = self.bruhat_leq(w, sv)
        self._bruhat_cache[key] = res
        return res

    def demazure(self, w: AffineElement, v: AffineElement) -> AffineElement:
        """Maximum of ``{u v : u <= w}``."""
        word, tau = self.reduced_word(w)
        r = self.mul(tau, v)
        for k in reversed(word):
            sr = self.mul(self.simple[k], r)
            if self.length(sr) > self.length(r):
                r = sr
        return r

    def bruhat_interval_below(self, w: AffineElement) -> set[AffineElement]:
        """All ``u <= w`` via subexpressions of a reduced word."""
        word, tau = self.reduced_word(w)
        cur = {tau}
        for k in reversed(word):
            s = self.simple[k]
            cur = cur | {self.mul(s, u) for u in cur}
        return cur

    # ------------------------------------------------------------------
    # cosets, eta, lambda_w

    def coset_decompose(self, w: AffineElement) -> CosetDecomposition:
        D = self.datum
        x = 0
        cur = w
        L = self.length(cur)
        while True:
            for i in range(self.rank):
                v = self.mul(self.simple[i + 1], cur)
                if self.length(v) < L:
                    cur, L = v, L - 1
                    x = D.mul(x, D.simple_reflections[i])
                    break
            else:
                break
        if not D.is_dominant(cur.lam):
            raise AssertionError(f"minimal coset representative {cur} has non-dominant translation")
        return CosetDecomposition(WeylIndex(x), cur.lam, WeylIndex(cur.u))

    def eta_sigma(self, w: AffineElement) -> WeylIndex:
        c = self.coset_decompose(w)
        D = self.datum
        return D.mul(D.sigma_inv_weyl(c.y), c.x)

    def lambda_w(self, w: AffineElement) -> Vector:
        return self.datum.dominant(w.lam)

    def recompose(self, c: CosetDecomposition) -> AffineElement:
        return self.prod(self.finite(c.x), AffineElement(c.mu, 0), self.finite(c.y))

    # ------------------------------------------------------------------
    # alcove geometry

    def alcove_point(self, w: AffineElement) -> tuple[Fraction, ...]:
        """Barycenter of ``w a`` in pairing coordinates."""
        D = self.datum
        p = D.act(w.u, D.alcove_barycenter())
        return tuple(a - b for a, b in zip(p, w.lam))

    def is_shrunken(self, w: AffineElement) -> bool:
        p = self.alcove_point(w)
        D = self.datum
        return not any(-1 < D.pairing(p, a) < 0 for a in D.positive_roots)

    # ------------------------------------------------------------------
    # enumeration

    def elements_up_to(self, max_len: int) -> list[AffineElement]:
        """All elements of length ``<= max_len``, ordered by length then serialization."""
        layers = self.length_layers(max_len)
        return [w for layer in layers for w in layer]

    def length_layers(self, max_len: int) -> list[list[AffineElement]]:
        cache = getattr(self, "_layers", None)
        if cache is not None and len(cache) > max_len:
            return cache[: max_len + 1]
        layers = [sorted(self._omega, key=self.sort_key)]
        seen = set(layers[0])
        for L in range(1, max_len + 1):
            nxt = set()
            for w in layers[-1]:
                for s in self.simple:
                    v = self.mul(s, w)
                    if v not in seen and self.length(v) == L:
                        nxt.add(v)
            seen |= nxt
            layers.append(sorted(nxt, key=self.sort_key))
        self._layers = layers
        return layers

    def sort_key(self, w: AffineElement):
        return (self.length(w), w.lam, self.datum.weyl_words[w.u])

    def iter_sigma_twists(self, w: AffineElement) -> Iterator[tuple[str, AffineElement]]:
        """Length-preserving or length-changing conjugates ``s w sigma(s)`` and ``tau w sigma(tau)^-1``."""
        for k, s in enumerate(self.simple):
            yield f"s{k}", self.mul(self.mul(s, w), self.sigma(s))
        for k, t in enumerate(self._omega[1:], start=1):
            yield f"tau{k}", self.sigma_conj(t, w)
