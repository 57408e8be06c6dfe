"""Root data and finite Weyl groups for simple groups of rank <= 4.

Coweights are stored by their pairings with the simple roots, i.e. in the
basis of fundamental coweights.  Roots are stored in simple-root coordinates.
Everything is exact: integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NewType, Sequence

__all__ = [
    "WeylIndex", "Vector", "RationalVector", "RootDatum", "cartan_matrix",
    "parse_group",
]

# index into RootDatum.weyl_words; the identity is always 0
WeylIndex = NewType("WeylIndex", int)

# coweight pairings (<v, alpha_1>, ..., <v, alpha_n>)
Vector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]

SUPPORTED_TYPES = "ABCDFG"


def cartan_matrix(cartan_type: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki-labelled Cartan matrix with ``C[i][j] = <alpha_i^v, alpha_j>``."""
    t = cartan_type.upper()
    if t not in SUPPORTED_TYPES:
        raise ValueError(f"unsupported Cartan type {cartan_type!r}")
    if n < 1 or n > 4:
        raise ValueError(f"rank {n} outside the supported range 1..4")
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if t in "ABC":
        if t in "BC" and n < 2:
            raise ValueError(f"{t}{n} is not a valid Cartan type")
        for i in range(n - 1):
            C[i][i + 1] = C[i + 1][i] = -1
        if t == "B":
            C[n - 1][n - 2] = -2
        elif t == "C":
            C[n - 2][n - 1] = -2
    elif t == "D":
        if n != 4:
            raise ValueError("type D is supported for rank 4 only")
        for i, j in ((0, 1), (1, 2), (1, 3)):
            C[i][j] = C[j][i] = -1
    elif t == "F":
        if n != 4:
            raise ValueError("type F exists in rank 4 only")
        for i in range(3):
            C[i][i + 1] = C[i + 1][i] = -1
        C[2][1] = -2
    elif t == "G":
        if n != 2:
            raise ValueError("type G exists in rank 2 only")
        C[0][1] = -3
        C[1][0] = -1
    return tuple(tuple(row) for row in C)


def _flip(cartan_type: str, n: int) -> tuple[int, ...]:
    t = cartan_type.upper()
    if t == "A" and n >= 2:
        return tuple(range(n - 1, -1, -1))
    if t == "D":
        return (0, 1, 3, 2)
    raise ValueError(f"{t}{n} has no nontrivial diagram automorphism")


def _triality(cartan_type: str, n: int) -> tuple[int, ...]:
    if cartan_type.upper() != "D" or n != 4:
        raise ValueError("triality exists only for D4")
    return (2, 1, 3, 0)


def _solve(M: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Exact solution of the square nonsingular system ``M x = b``."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


@dataclass(frozen=True)
class _GroupSpec:
    cartan_type: str
    rank: int
    lattice: str
    sigma: tuple[int, ...] | None


_GROUP_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*(.*)$")


def parse_group(text: str) -> "RootDatum":
    """Parse ``"A2:adjoint:sigma=id"``; ``:`` and whitespace both separate fields.

    The lattice field is ``adjoint`` (default) or ``simply_connected`` /
    ``sc``; sigma is ``id``, ``flip``, ``triality`` or an explicit
    permutation such as ``sigma=[2,1,0]``.
    """
    m = _GROUP_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse group {text!r}: expected e.g. 'A2:adjoint:sigma=id'")
    t, n = m.group(1).upper(), int(m.group(2))
    lattice = "adjoint"
    sigma: tuple[int, ...] | None = None
    rest = m.group(3)
    for tok in re.split(r"[:\s]+(?![^\[]*\])", rest):
        tok = tok.strip()
        if not tok:
            continue
        if tok in ("adjoint", "ad"):
            lattice = "adjoint"
        elif tok in ("simply_connected", "sc", "simply-connected"):
            lattice = "simply_connected"
        elif tok.startswith("sigma="):
            val = tok[len("sigma="):].strip()
            if val == "id":
                sigma = None
            elif val == "flip":
                sigma = _flip(t, n)
            elif val == "triality":
                sigma = _triality(t, n)
            elif val.startswith("["):
                try:
                    sigma = tuple(int(x) for x in val.strip("[]").split(",") if x.strip())
                except ValueError:
                    raise ValueError(f"bad sigma permutation {val!r}") from None
            else:
                raise ValueError(f"unknown sigma {val!r}")
        else:
            raise ValueError(f"unexpected token {tok!r} in group {text!r}")
    return RootDatum(t, n, lattice=lattice, sigma=sigma)


class RootDatum:
    """Root system, finite Weyl group and diagram automorphism.

    The finite Weyl group is enumerated once at construction; elements are
    referred to by :data:`WeylIndex`.  The object is read-only afterwards.
    """

    def __init__(self, cartan_type: str, rank: int, lattice: str = "adjoint",
                 sigma: Sequence[int] | None = None):
        if lattice not in ("adjoint", "simply_connected"):
            raise ValueError(f"unknown lattice mode {lattice!r}")
        self.cartan_type = cartan_type.upper()
        self.rank = n = rank
        self.cartan = C = cartan_matrix(cartan_type, rank)
        self.lattice = lattice
        sig = tuple(range(n)) if sigma is None else tuple(sigma)
        if sorted(sig) != list(range(n)):
            raise ValueError(f"sigma {sig} is not a permutation of range({n})")
        if any(C[sig[i]][sig[j]] != C[i][j] for i in range(n) for j in range(n)):
            raise ValueError(f"sigma {sig} does not preserve the Cartan matrix")
        self.sigma_perm = sig
        self.sigma_inv_perm = tuple(sig.index(i) for i in range(n))
        o, p = 1, sig
        while p != tuple(range(n)):
            p = tuple(sig[i] for i in p)
            o += 1
        self.sigma_order = o

        self._coroot_coords = [
            [Fraction(x) for x in row] for row in zip(*C)
        ]  # C^T: coroot coords -> pairings
        self._build_roots()
        self._build_weyl()

    # ------------------------------------------------------------------
    # construction

    def __repr__(self) -> str:
        return f"RootDatum({self.spec!r})"

    @property
    def spec(self) -> str:
        if self.sigma_perm == tuple(range(self.rank)):
            s = "id"
        elif self.rank > 1 and self.sigma_perm == _safe_flip(self.cartan_type, self.rank):
            s = "flip"
        else:
            s = "[" + ",".join(map(str, self.sigma_perm)) + "]"
        return f"{self.cartan_type}{self.rank}:{self.lattice}:sigma={s}"

    @property
    def sigma_is_trivial(self) -> bool:
        return self.sigma_perm == tuple(range(self.rank))

    def _root_reflect(self, i: int, beta: Sequence[int]) -> Vector:
        c = sum(beta[j] * self.cartan[i][j] for j in range(self.rank))
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def _build_roots(self) -> None:
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(n):
                g = self._root_reflect(i, beta)
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        pos = [r for r in seen if all(x >= 0 for x in r)]
        pos.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        self.positive_roots: tuple[Vector, ...] = tuple(pos)
        self.roots: tuple[Vector, ...] = tuple(pos) + tuple(tuple(-x for x in r) for r in pos)
        self.highest_root: Vector = max(pos, key=sum)
        self._root_index = {r: k for k, r in enumerate(self.positive_roots)}

    def _build_weyl(self) -> None:
        n = self.rank
        C = self.cartan
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

        def reflect_matrix(i, M):
            # s_i acts on pairing coordinates by p -> p - p_i C[i]
            rows = [list(r) for r in M]
            for j in range(n):
                rows[j] = [rows[j][k] - C[i][j] * M[i][k] for k in range(n)]
            return tuple(tuple(r) for r in rows)

        mats = [ident]
        words: list[tuple[int, ...]] = [()]
        index = {ident: 0}
        lmul: list[list[int]] = [[-1] * n]
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for i in range(n):
                if lmul[u][i] >= 0:
                    continue
                M = reflect_matrix(i, mats[u])
                v = index.get(M)
                if v is None:
                    v = len(mats)
                    index[M] = v
                    mats.append(M)
                    words.append((i,) + words[u])
                    lmul.append([-1] * n)
                    queue.append(v)
                lmul[u][i] = v
                lmul[v][i] = u
        self.weyl_size = len(mats)
        self.weyl_matrices: tuple[tuple[tuple[int, ...], ...], ...] = tuple(mats)
        self.weyl_words: tuple[tuple[int, ...], ...] = tuple(words)
        self.weyl_lengths: tuple[int, ...] = tuple(len(w) for w in words)
        self._lmul = tuple(tuple(r) for r in lmul)
        self._mat_index = index
        self._mult_cache: dict[tuple[int, int], int] = {}

        inv = [0] * len(mats)
        for u, w in enumerate(words):
            v = 0
            for i in w:  # u^{-1} = s_ik ... s_i1
                v = self._lmul[v][i]
            inv[u] = v
        self.weyl_inverse: tuple[int, ...] = tuple(inv)

        # positive roots sent to negative roots by u^{-1}
        flags = []
        for u in range(len(mats)):
            wi = words[inv[u]]
            fl = []
            for alpha in self.positive_roots:
                beta = alpha
                for i in reversed(wi):
                    beta = self._root_reflect(i, beta)
                fl.append(1 if any(x < 0 for x in beta) else 0)
            flags.append(tuple(fl))
        self.inversion_flags: tuple[tuple[int, ...], ...] = tuple(flags)

        sig = []
        for w in words:
            v = 0
            for i in reversed(w):
                v = self._lmul[v][self.sigma_perm[i]]
            sig.append(v)
        self._sigma_weyl = tuple(sig)
        self._sigma_inv_weyl = tuple(sig.index(u) for u in range(len(sig)))
        self.longest: WeylIndex = WeylIndex(max(range(len(mats)), key=lambda u: len(words[u])))

        self.simple_reflections: tuple[WeylIndex, ...] = tuple(
            WeylIndex(self._lmul[0][i]) for i in range(n))

    # ------------------------------------------------------------------
    # finite Weyl group

    def identity(self) -> WeylIndex:
        return WeylIndex(0)

    def lmul_simple(self, i: int, u: int) -> WeylIndex:
        return WeylIndex(self._lmul[u][i])

    def mul(self, a: int, b: int) -> WeylIndex:
        key = (a, b)
        r = self._mult_cache.get(key)
        if r is None:
            r = b
            for i in reversed(self.weyl_words[a]):
                r = self._lmul[r][i]
            self._mult_cache[key] = r
        return WeylIndex(r)

    def inverse(self, u: int) -> WeylIndex:
        return WeylIndex(self.weyl_inverse[u])

    def weyl_length(self, u: int) -> int:
        return self.weyl_lengths[u]

    def from_word(self, word: Sequence[int]) -> WeylIndex:
        u = 0
        for i in reversed(word):
            if not 0 <= i < self.rank:
                raise ValueError(f"simple reflection index {i} out of range")
            u = self._lmul[u][i]
        return WeylIndex(u)

    def sigma_weyl(self, u: int) -> WeylIndex:
        return WeylIndex(self._sigma_weyl[u])

    def sigma_inv_weyl(self, u: int) -> WeylIndex:
        return WeylIndex(self._sigma_inv_weyl[u])

    def support(self, u: int) -> frozenset[int]:
        return frozenset(self.weyl_words[u])

    def supp_sigma(self, u: int) -> frozenset[int]:
        """Union of all sigma-translates of the support of ``u``."""
        out = set(self.weyl_words[u])
        frontier = set(out)
        while frontier:
            frontier = {self.sigma_perm[i] for i in frontier} - out
            out |= frontier
        return frozenset(out)

    def left_descent(self, u: int, i: int) -> bool:
        return self.weyl_lengths[self._lmul[u][i]] < self.weyl_lengths[u]

    def right_descent(self, u: int, i: int) -> bool:
        return self.left_descent(self.weyl_inverse[u], i)

    def in_parabolic(self, u: int, J) -> bool:
        return set(self.weyl_words[u]) <= set(J)

    def parabolic_factor(self, u: int, J) -> tuple[WeylIndex, WeylIndex]:
        """``u = x z`` with ``x`` minimal in ``u W_J`` and ``z`` in ``W_J``."""
        x, z = u, 0
        J = tuple(sorted(J))
        while True:
            for i in J:
                if self.right_descent(x, i):
                    x = self.mul(x, self._lmul[0][i])
                    z = self._lmul[z][i]
                    break
            else:
                return WeylIndex(x), WeylIndex(z)

    def elements_of(self, J) -> list[WeylIndex]:
        return [WeylIndex(u) for u in range(self.weyl_size) if self.in_parabolic(u, J)]

    # ------------------------------------------------------------------
    # coweights

    def act(self, u: int, v: Sequence) -> tuple:
        M = self.weyl_matrices[u]
        return tuple(sum(M[i][k] * v[k] for k in range(self.rank)) for i in range(self.rank))

    def reflect(self, i: int, v: Sequence) -> tuple:
        p = v[i]
        C = self.cartan[i]
        return tuple(v[j] - p * C[j] for j in range(self.rank))

    def sigma_coweight(self, v: Sequence) -> tuple:
        out = [None] * self.rank
        for i in range(self.rank):
            out[self.sigma_perm[i]] = v[i]
        return tuple(out)

    def sigma_inv_coweight(self, v: Sequence) -> tuple:
        out = [None] * self.rank
        for i in range(self.rank):
            out[self.sigma_inv_perm[i]] = v[i]
        return tuple(out)

    def pairing(self, v: Sequence, root: Sequence[int]):
        """``<v, root>`` for a root given in simple-root coordinates."""
        if len(v) != self.rank or len(root) != self.rank:
            raise ValueError("dimension mismatch in pairing")
        return sum(a * b for a, b in zip(v, root))

    def coroot(self, i: int) -> Vector:
        return tuple(self.cartan[i])

    def positive_coroot(self, root: Sequence[int]) -> Vector:
        """Coroot of a positive root, in pairing coordinates."""
        root = tuple(root)
        for u in range(self.weyl_size):
            for i in range(self.rank):
                beta = tuple(self.act_root(u, tuple(1 if j == i else 0 for j in range(self.rank))))
                if beta == root:
                    return self.act(u, self.coroot(i))
        raise ValueError(f"{root} is not a root")

    def act_root(self, u: int, beta: Sequence[int]) -> Vector:
        out = tuple(beta)
        for i in reversed(self.weyl_words[u]):
            out = self._root_reflect(i, out)
        return out

    def coroot_coords(self, v: Sequence) -> RationalVector:
        """Coefficients of ``v`` in the basis of simple coroots."""
        return tuple(_solve(self._coroot_coords, [Fraction(x) for x in v]))

    def from_coroot_coords(self, c: Sequence) -> tuple:
        C = self.cartan
        return tuple(sum(c[i] * C[i][j] for i in range(self.rank)) for j in range(self.rank))

    def in_lattice(self, v: Sequence) -> bool:
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        if self.lattice == "adjoint":
            return True
        return all(c.denominator == 1 for c in self.coroot_coords(v))

    def is_dominant(self, v: Sequence) -> bool:
        return all(x >= 0 for x in v)

    def dominant_rep(self, mu: Sequence) -> tuple[tuple, WeylIndex]:
        """Dominant ``dom`` and minimal ``x`` with ``x(dom) == mu``."""
        v = tuple(mu)
        x = 0
        while True:
            for i in range(self.rank):
                if v[i] < 0:
                    v = self.reflect(i, v)
                    x = self.mul(x, self._lmul[0][i])
                    break
            else:
                return v, WeylIndex(x)

    def dominant(self, mu: Sequence) -> tuple:
        return self.dominant_rep(mu)[0]

    def geq_Q(self, a: Sequence, b: Sequence) -> bool:
        return all(c >= 0 for c in self.coroot_coords([x - y for x, y in zip(a, b)]))

    def geq_Z(self, a: Sequence, b: Sequence) -> bool:
        return all(c >= 0 and c.denominator == 1
                   for c in self.coroot_coords([x - y for x, y in zip(a, b)]))

    def strictly_positive(self, v: Sequence) -> bool:
        """``v`` has all simple-coroot coefficients > 0."""
        return all(c > 0 for c in self.coroot_coords(v))

    def diamond(self, mu: Sequence) -> RationalVector:
        """Average of the sigma-orbit of ``mu``."""
        acc = [Fraction(x) for x in mu]
        v = tuple(mu)
        for _ in range(self.sigma_order - 1):
            v = self.sigma_coweight(v)
            acc = [a + x for a, x in zip(acc, v)]
        return tuple(a / self.sigma_order for a in acc)

    def rho_check(self, J=None) -> Vector:
        """Pairing 1 on ``J`` (default: all simple roots), 0 elsewhere."""
        if J is None:
            J = range(self.rank)
        J = set(J)
        return tuple(1 if i in J else 0 for i in range(self.rank))

    def eta_check(self, J) -> tuple:
        rho_J = self.rho_check(J)
        return self.dominant(tuple(-x for x in self.sigma_inv_coweight(rho_J)))

    def rho_like(self, J) -> tuple[Vector, Vector, tuple]:
        """``(rho, rho_check_J, eta_check_J)``; ``rho`` in fundamental-weight coordinates."""
        return tuple([1] * self.rank), self.rho_check(J), self.eta_check(J)

    def pair_2rho(self, v: Sequence):
        """``<v, 2 rho>``, the sum of pairings over all positive roots."""
        return sum(self.pairing(v, a) for a in self.positive_roots)

    def pair_rho(self, v: Sequence):
        return sum(self.coroot_coords(v))

    def alcove_barycenter(self) -> RationalVector:
        """Barycenter of the base alcove in the antidominant chamber."""
        n = self.rank
        return tuple(Fraction(-1, c * (n + 1)) for c in self.highest_root)

    # ------------------------------------------------------------------
    # lattice basis for I/O

    def to_lattice_coords(self, v: Sequence) -> tuple:
        if self.lattice == "adjoint":
            return tuple(v)
        return tuple(_int_if_possible(c) for c in self.coroot_coords(v))

    def from_lattice_coords(self, c: Sequence) -> tuple:
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(c)}")
        if self.lattice == "adjoint":
            return tuple(c)
        return tuple(_int_if_possible(x) for x in self.from_coroot_coords(c))

    # ------------------------------------------------------------------

    def fundamental_group(self) -> list[RationalVector]:
        """Representatives of ``X_* / Q^v`` as fractional coroot coordinates."""
        if self.lattice == "simply_connected":
            return [tuple(Fraction(0) for _ in range(self.rank))]
        reps = set()
        for i in range(self.rank):
            e = tuple(1 if j == i else 0 for j in range(self.rank))
            reps.add(self.pi1_class(e))
        group = {tuple(Fraction(0) for _ in range(self.rank))}
        frontier = set(group)
        while frontier:
            new = set()
            for g in frontier:
                for r in reps:
                    h = tuple((a + b) % 1 for a, b in zip(g, r))
                    if h not in group:
                        new.add(h)
            group |= new
            frontier = new
        return sorted(group)

    def pi1_class(self, v: Sequence) -> RationalVector:
        return tuple(c % 1 for c in self.coroot_coords(v))


def _safe_flip(t: str, n: int):
    try:
        return _flip(t, n)
    except ValueError:
        return None


def _int_if_possible(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def all_small_dominant(datum: RootDatum, bound: int) -> list[Vector]:
    """Dominant lattice coweights with every pairing in ``0..bound``."""
    return [v for v in product(range(bound + 1), repeat=datum.rank) if datum.in_lattice(v)]
