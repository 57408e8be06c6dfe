"""Newton points, Kottwitz invariants and defects of sigma-conjugacy classes."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .affine_weyl import AffineElement, AffineWeylGroup
from .root_system import RationalVector

__all__ = [
    "ClassInvariant", "DefectError", "newton_point", "class_of_element",
    "is_sigma_straight", "defect", "class_leq", "basic_class", "format_class",
    "parse_class", "class_sort_key",
]


class ClassInvariant(NamedTuple):
    kappa: int
    nu: RationalVector  # dominant, pairing coordinates


class DefectError(RuntimeError):
    pass


def _twist_order(W: AffineWeylGroup, u: int) -> int:
    """Order of the linear map ``u o sigma`` on coweights."""
    D = W.datum
    basis = [tuple(1 if j == i else 0 for j in range(D.rank)) for i in range(D.rank)]
    cur = basis
    k = 0
    while True:
        cur = [D.act(u, D.sigma_coweight(v)) for v in cur]
        k += 1
        if cur == basis:
            return k


def newton_point(W: AffineWeylGroup, w: AffineElement) -> RationalVector:
    D = W.datum
    n = _twist_order(W, w.u)
    mu = (0,) * D.rank
    for _ in range(n):
        # (w sigma)(t^mu) = t^(lam + u sigma(mu)) (w sigma)
        mu = tuple(a + b for a, b in zip(w.lam, D.act(w.u, D.sigma_coweight(mu))))
    avg = tuple(Fraction(x, n) for x in mu)
    return D.dominant(avg)


def is_sigma_straight(W: AffineWeylGroup, w: AffineElement) -> bool:
    return W.length(w) == W.datum.pair_2rho(newton_point(W, w))


def class_of_element(W: AffineWeylGroup, w: AffineElement, check: bool = True) -> ClassInvariant:
    """Class of ``w``; only meaningful for ``w`` of minimal length in its sigma-conjugacy class."""
    if check:
        from .reduction_oracle import is_minimal
        if not is_minimal(W, w):
            raise ValueError(f"{w} is not of minimal length in its sigma-conjugacy class")
    return ClassInvariant(W.kappa(w), newton_point(W, w))


def class_leq(W: AffineWeylGroup, b: ClassInvariant, b2: ClassInvariant) -> bool:
    return b.kappa == b2.kappa and W.datum.geq_Q(b2.nu, b.nu)


def basic_class(W: AffineWeylGroup, kappa: int) -> ClassInvariant:
    for t in W.omega_elements():
        if W.kappa(t) == kappa:
            return ClassInvariant(kappa, newton_point(W, t))
    raise ValueError(f"no Omega element with kappa {kappa}")


_defect_cache: dict[tuple[str, ClassInvariant], int] = {}


def defect(W: AffineWeylGroup, b: ClassInvariant) -> int:
    """``dim V^sigma - dim V^(u sigma)`` for a length-zero ``t^mu u`` of the Levi of ``nu``.

    The Levi ``M`` has simple roots ``{alpha : <nu, alpha> = 0}``; ``t^mu u``
    ranges over length-zero elements of its Iwahori-Weyl group whose Kottwitz
    image is ``b.kappa`` and whose Newton vector is exactly ``b.nu``.
    """
    key = (W.datum.spec, b)
    hit = _defect_cache.get(key)
    if hit is not None:
        return hit
    D = W.datum
    n = D.rank
    nu = b.nu
    J = [i for i in range(n) if nu[i] == 0]
    fixed_sigma = _fixed_dim(W, 0)
    if not J:
        _defect_cache[key] = 0
        return 0
    roots_J = [a for a in D.positive_roots if all(a[i] == 0 for i in range(n) if i not in J)]
    free = [i for i in range(n) if i not in J]
    R = 2 * n + 2
    ranges = [range(int(nu[i]) - R, int(nu[i]) + R + 2) for i in free]
    for u in D.elements_of(J):
        if D.act(u, D.sigma_coweight(nu)) != nu:
            continue
        flags = dict(zip(D.positive_roots, D.inversion_flags[u]))
        base = [0] * n
        for j in J:
            base[j] = flags[tuple(1 if k == j else 0 for k in range(n))]
        order = _twist_order(W, u)
        for vals in product(*ranges):
            mu = list(base)
            for i, v in zip(free, vals):
                mu[i] = v
            mu = tuple(mu)
            if any(D.pairing(mu, a) != flags[a] for a in roots_J):
                continue
            if not D.in_lattice(mu):
                continue
            acc = (0,) * n
            for _ in range(order):
                acc = tuple(a + b for a, b in zip(mu, D.act(u, D.sigma_coweight(acc))))
            if tuple(Fraction(x, order) for x in acc) != nu:
                continue
            if W.kappa_of_coweight(mu) != b.kappa:
                continue
            res = fixed_sigma - _fixed_dim(W, u)
            _defect_cache[key] = res
            return res
    raise DefectError(f"no length-zero Levi representative for class {b}")


def _fixed_dim(W: AffineWeylGroup, u: int) -> int:
    """Dimension of the fixed space of ``u o sigma`` on ``V``."""
    D = W.datum
    n = D.rank
    # matrix of u o sigma minus identity; rank via exact elimination
    cols = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        img = D.act(u, D.sigma_coweight(e))
        cols.append([Fraction(img[j] - e[j]) for j in range(n)])
    rows = [list(r) for r in zip(*cols)]
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, n) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(n):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return n - rank


def straight_defect(W: AffineWeylGroup, x: AffineElement) -> int:
    """Defect read off a sigma-straight representative from its finite part."""
    return _fixed_dim(W, 0) - _fixed_dim(W, x.u)


# ----------------------------------------------------------------------
# serialization


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def class_to_json(W: AffineWeylGroup, b: ClassInvariant) -> dict:
    return {"kappa": b.kappa, "nu": [_frac(c) for c in W.datum.to_lattice_coords(b.nu)]}


def format_class(W: AffineWeylGroup, b: ClassInvariant) -> str:
    return f"{b.kappa}:" + ",".join(_frac(c) for c in W.datum.to_lattice_coords(b.nu))


def parse_class(W: AffineWeylGroup, text: str) -> ClassInvariant:
    """Parse ``"kappa:nu1,nu2,..."`` with ``nu`` in the lattice basis."""
    try:
        k, _, rest = text.partition(":")
        kappa = int(k)
        coords = [Fraction(c.strip()) for c in rest.split(",") if c.strip()]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse class {text!r}; expected 'kappa:nu1,...,nun'") from None
    D = W.datum
    if len(coords) != D.rank:
        raise ValueError(f"class {text!r} needs {D.rank} Newton coordinates")
    nu = tuple(Fraction(x) for x in D.from_lattice_coords(coords))
    if not D.is_dominant(nu):
        raise ValueError(f"Newton point {text!r} is not dominant")
    if D.sigma_coweight(nu) != nu:
        raise ValueError(f"Newton point {text!r} is not sigma-invariant")
    if not 0 <= kappa < W.kappa_size:
        raise ValueError(f"kappa {kappa} out of range 0..{W.kappa_size - 1}")
    return ClassInvariant(kappa, nu)


def class_sort_key(W: AffineWeylGroup, b: ClassInvariant):
    return (b.kappa, W.datum.to_lattice_coords(b.nu))
