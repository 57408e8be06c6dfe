"""Closed-form nonemptiness and dimension criteria for X_w(b)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .affine_weyl import AffineElement, AffineWeylGroup
from .reduction_oracle import InvariantViolation
from .root_system import RootDatum, WeylIndex
from .sigma_classes import ClassInvariant, defect

__all__ = [
    "Verdict", "NOT_SHRUNKEN", "NOT_STRICT", "FLAT_TOO_SMALL", "KAPPA_MISMATCH",
    "SUPPORT_DEFICIENT", "BELOW_2RHO", "dom_minus", "dom_minus_exhaustive",
    "double_flat", "virtual_dim", "predicted_verdict", "large_translation_verdict",
    "cordial_certificate", "cordial_saturation_check", "is_alcove_element",
    "alcove_emptiness", "alcove_witness", "ReductionTarget", "reduction_target",
]

NOT_SHRUNKEN = "not-shrunken"
NOT_STRICT = "lambda-nu-not-strictly-positive"
FLAT_TOO_SMALL = "double-flat-below-nu"
BELOW_2RHO = "lambda-below-nu-plus-2rho"
KAPPA_MISMATCH = "kappa-mismatch"
SUPPORT_DEFICIENT = "support-deficient"


@dataclass(frozen=True)
class Verdict:
    kind: str  # "not-applicable" | "empty" | "nonempty"
    reason: str | None = None
    dim: int | None = None

    @classmethod
    def not_applicable(cls, reason: str) -> "Verdict":
        return cls("not-applicable", reason)

    @classmethod
    def empty(cls, reason: str) -> "Verdict":
        return cls("empty", reason)

    @classmethod
    def nonempty(cls, dim: int) -> "Verdict":
        return cls("nonempty", None, dim)

    @property
    def applicable(self) -> bool:
        return self.kind != "not-applicable"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.dim is not None:
            out["dim"] = self.dim
        return out


def _fmt(W: AffineWeylGroup, w: AffineElement) -> str:
    from .notation import format_element
    return format_element(W, w)


# ----------------------------------------------------------------------
# normalized subtraction


def dom_minus(D: RootDatum, lam: Sequence, lam2: Sequence, max_steps: int = 10_000) -> tuple:
    """Smallest dominant ``mu`` with ``mu + lam2 >=_Z lam``.

    Greedy saturation of ``lam - lam2`` by simple coroots; never overshoots
    the minimum, so the first dominant vector reached is the answer.
    """
    if not (D.is_dominant(lam) and D.is_dominant(lam2)):
        raise ValueError("dom_minus needs dominant arguments")
    mu = tuple(a - b for a, b in zip(lam, lam2))
    for _ in range(max_steps):
        i = next((i for i in range(D.rank) if mu[i] < 0), None)
        if i is None:
            return mu
        cv = D.coroot(i)
        mu = tuple(a + c for a, c in zip(mu, cv))
    return dom_minus_exhaustive(D, lam, lam2, bound=max_steps)


def dom_minus_exhaustive(D: RootDatum, lam: Sequence, lam2: Sequence, bound: int = 6) -> tuple:
    """Bounded brute force over ``lam - lam2 + sum c_i alpha_i^v`` with ``0 <= c_i <= bound``."""
    theta = tuple(a - b for a, b in zip(lam, lam2))
    cands = []
    for cs in product(range(bound + 1), repeat=D.rank):
        mu = tuple(t + sum(c * D.cartan[i][j] for i, c in enumerate(cs)) for j, t in enumerate(theta))
        if D.is_dominant(mu):
            cands.append(mu)
    if not cands:
        raise RuntimeError(f"bound {bound} exhausted in dom_minus search")
    minima = [m for m in cands if all(D.geq_Z(c, m) for c in cands)]
    if len(minima) != 1:
        raise InvariantViolation(f"dominant set above {theta} has {len(minima)} minima")
    return minima[0]


def double_flat(W: AffineWeylGroup, w: AffineElement) -> tuple:
    D = W.datum
    c = W.coset_decompose(w)
    J = [i for i in range(D.rank) if D.left_descent(c.y, i)]
    rho_J = D.rho_check(J)
    eta_J = D.eta_check(J)
    base = tuple(a - b for a, b in zip(c.mu, rho_J))
    if not D.is_dominant(base):
        raise InvariantViolation(f"lambda - rho_J = {base} is not dominant for {_fmt(W, w)}")
    one = dom_minus(D, base, eta_J)
    two = dom_minus(D, c.mu, tuple(a + b for a, b in zip(rho_J, eta_J)))
    if one != two:
        raise InvariantViolation(f"double flat disagrees: {one} != {two}")
    return one


# ----------------------------------------------------------------------
# virtual dimension and the main criteria


def virtual_dim(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> Fraction:
    D = W.datum
    eta = W.eta_sigma(w)
    return (Fraction(W.length(w) + D.weyl_length(eta) - defect(W, b), 2)
            - Fraction(D.pair_rho(b.nu)))


def _verdict_tail(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> Verdict:
    if b.kappa != W.kappa(w):
        return Verdict.empty(KAPPA_MISMATCH)
    D = W.datum
    if D.supp_sigma(W.eta_sigma(w)) != frozenset(range(D.rank)):
        return Verdict.empty(SUPPORT_DEFICIENT)
    d = virtual_dim(W, w, b)
    if d.denominator != 1 or d < 0:
        raise InvariantViolation(f"virtual dimension {d} of {_fmt(W, w)} at {b} is not a natural number")
    return Verdict.nonempty(int(d))


def predicted_verdict(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> Verdict:
    D = W.datum
    if not W.is_shrunken(w):
        return Verdict.not_applicable(NOT_SHRUNKEN)
    lam = D.diamond(W.lambda_w(w))
    if not D.strictly_positive([a - c for a, c in zip(lam, b.nu)]):
        return Verdict.not_applicable(NOT_STRICT)
    if not D.geq_Q(D.diamond(double_flat(W, w)), b.nu):
        return Verdict.not_applicable(FLAT_TOO_SMALL)
    return _verdict_tail(W, w, b)


def flat_condition_integral(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> bool:
    """The double-flat hypothesis read with ``>=_Z`` instead of ``>=``."""
    D = W.datum
    return D.geq_Z(D.diamond(double_flat(W, w)), b.nu)


def large_translation_verdict(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> Verdict:
    D = W.datum
    if not W.is_shrunken(w):
        return Verdict.not_applicable(NOT_SHRUNKEN)
    lam = D.diamond(W.lambda_w(w))
    bound = [x + 2 * r for x, r in zip(b.nu, D.rho_check())]
    if not D.geq_Q(lam, bound):
        return Verdict.not_applicable(BELOW_2RHO)
    v = _verdict_tail(W, w, b)
    m = predicted_verdict(W, w, b)
    if m != v:
        raise InvariantViolation(f"large-translation verdict {v} differs from the predicted verdict {m} for {_fmt(W, w)}, {b}")
    return v


# ----------------------------------------------------------------------
# cordial families


def cordial_certificate(W: AffineWeylGroup, w: AffineElement) -> str | None:
    """``"x-translation"`` for ``x t^lam`` with ``lam`` dominant, ``"antidominant"``
    for ``w_S t^lam y`` with ``t^lam y`` minimal in its coset, else ``None``."""
    D = W.datum
    lam = D.act(D.inverse(w.u), w.lam)
    if D.is_dominant(lam) and W.length(w) == D.weyl_length(w.u) + W.length(W.translation(lam)):
        return "x-translation"
    if W.coset_decompose(w).x == D.longest:
        return "antidominant"
    return None


def classes_between(W: AffineWeylGroup, candidates, lo: ClassInvariant, hi: ClassInvariant):
    from .sigma_classes import class_leq
    return [b for b in candidates if class_leq(W, lo, b) and class_leq(W, b, hi)]


def cordial_saturation_check(W: AffineWeylGroup, oracle, w: AffineElement, all_classes) -> bool:
    """Down-closure of the nonempty set below ``b_max`` and dim = virtual dim on it.

    ``all_classes`` must contain every class of the kappa-component with
    Newton point at most that of ``b_max``.
    """
    from .sigma_classes import class_leq
    table = oracle.table_dict(w)
    top = oracle.b_max(w)
    for b, d in table.items():
        if d != virtual_dim(W, w, b):
            return False
    region = [b for b in all_classes if class_leq(W, b, top)]
    for b in table:
        for b2 in region:
            if class_leq(W, b, b2) and b2 not in table:
                return False
    return True


# ----------------------------------------------------------------------
# alcove elements and emptiness


def _floor_pairing(D: RootDatum, p, beta) -> int:
    v = D.pairing(p, beta)
    return v.numerator // v.denominator


def is_alcove_element(W: AffineWeylGroup, w: AffineElement, J, x: int) -> bool:
    """Combinatorial ``(J, x, sigma)``-alcove test.

    ``x^-1 w sigma(x)`` must have finite part in ``W_J``; and for every
    positive root ``alpha`` outside the span of ``J`` with ``beta = x(alpha)``,
    the alcove ``w a`` must not lie on a higher ``beta``-level than the base
    alcove ``a`` (the base alcove is antidominant here).
    """
    D = W.datum
    J = frozenset(J)
    if frozenset(D.sigma_perm[j] for j in J) != J:
        raise ValueError(f"J = {sorted(J)} is not sigma-stable")
    v = W.prod(W.finite(D.inverse(x)), w, W.sigma(W.finite(x)))
    if not D.in_parabolic(v.u, J):
        return False
    here = W.alcove_point(w)
    base = D.alcove_barycenter()
    for alpha in D.positive_roots:
        if all(alpha[i] == 0 for i in range(D.rank) if i not in J):
            continue
        beta = D.act_root(x, alpha)
        if _floor_pairing(D, here, beta) > _floor_pairing(D, base, beta):
            return False
    return True


def alcove_witness(W: AffineWeylGroup, w: AffineElement) -> int:
    """``sigma^-1(y)^-1`` for ``w = x t^lam y``; conjugates ``w`` to ``eta t^lam``."""
    D = W.datum
    return D.inverse(D.sigma_inv_weyl(W.coset_decompose(w).y))


def alcove_emptiness(W: AffineWeylGroup, w: AffineElement, b: ClassInvariant) -> str:
    """``"empty"`` when the Levi-Kottwitz obstruction applies, else ``"unknown"``."""
    D = W.datum
    if b.kappa != W.kappa(w):
        return "empty"
    c = W.coset_decompose(w)
    J = D.supp_sigma(W.eta_sigma(w))
    if J == frozenset(range(D.rank)):
        return "unknown"
    lam = D.diamond(c.mu)
    if not D.strictly_positive([a - n for a, n in zip(lam, b.nu)]):
        return "unknown"
    if not is_alcove_element(W, w, J, alcove_witness(W, w)):
        return "unknown"
    return "empty"


# ----------------------------------------------------------------------
# explicit reduction target


@dataclass(frozen=True)
class ReductionTarget:
    a: WeylIndex
    gamma: tuple
    J: frozenset
    J_prime: frozenset
    x_prime: WeylIndex
    z: WeylIndex
    y_prime: WeylIndex
    w1: AffineElement
    w2: AffineElement
    # l(w) = l(w1) + l(w2) and l(y'^-1 z) + l(x'y') = l(eta); False only in non-strict mode
    lengths_additive: bool = True

    def element(self, W: AffineWeylGroup) -> AffineElement:
        return W.mul(W.finite(self.a), W.translation(self.gamma))


def reduction_target(W: AffineWeylGroup, w: AffineElement, strict: bool = True) -> ReductionTarget:
    """Build ``(a, gamma)`` with ``w =>_sigma a t^gamma`` and check the length identities.

    The two length identities hold for shrunken ``w`` but can fail otherwise.
    With ``strict`` any failed identity raises ``InvariantViolation``; without
    it, failures of the length identities are only recorded in
    ``lengths_additive`` (the remaining checks always raise).
    """
    D = W.datum
    n = D.rank
    full = frozenset(range(n))
    eta = W.eta_sigma(w)
    if D.supp_sigma(eta) != full:
        raise ValueError("reduction_target needs supp_sigma(eta_sigma(w)) = S")
    c = W.coset_decompose(w)
    x, lam, y = c.x, c.mu, c.y
    J = frozenset(i for i in range(n) if D.left_descent(y, i))
    rho_J = D.rho_check(J)
    base = tuple(a - b for a, b in zip(lam, rho_J))
    Jp = frozenset(i for i in range(n) if base[i] == 0)
    x_prime, z = D.parabolic_factor(eta, Jp)
    shift = D.act(D.inverse(x_prime), D.sigma_inv_coweight(rho_J))
    target = tuple(a + b for a, b in zip(base, shift))
    gamma = D.dominant(target)
    K = frozenset(i for i in range(n) if gamma[i] == 0)
    y_prime = _min_mover(D, gamma, target, K)
    zi = D.inverse(z)
    yi = D.inverse(y_prime)
    w1 = W.prod(W.finite(x), W.finite(zi), W.translation(base), W.finite(y_prime))
    w2 = W.prod(W.finite(yi), W.finite(z), W.translation(rho_J), W.finite(y))
    a = W.demazure(W.finite(D.mul(yi, z)), W.sigma(W.finite(D.mul(x_prime, y_prime))))
    tgt = ReductionTarget(a.u, gamma, J, Jp, x_prime, z, y_prime, w1, w2)
    additive = _check_target(W, w, tgt, a, strict)
    if not additive:
        tgt = ReductionTarget(a.u, gamma, J, Jp, x_prime, z, y_prime, w1, w2, False)
    return tgt


def _min_mover(D: RootDatum, gamma, target, K) -> WeylIndex:
    for u in sorted(range(D.weyl_size), key=D.weyl_length):
        if D.act(u, gamma) == tuple(target):
            if not any(D.right_descent(u, k) for k in K):
                return WeylIndex(u)
    raise InvariantViolation(f"no minimal coset element maps {gamma} to {target}")


def _check_target(W: AffineWeylGroup, w: AffineElement, t: ReductionTarget, a: AffineElement,
                  strict: bool) -> bool:
    D = W.datum
    problems = []
    if a.lam != (0,) * D.rank:
        problems.append("a is not in W_0")
    if W.mul(t.w1, t.w2) != w:
        problems.append("w != w1 w2")
    soft = []
    if W.length(w) != W.length(t.w1) + W.length(t.w2):
        soft.append("l(w) != l(w1) + l(w2)")
    yz = D.mul(D.inverse(t.y_prime), t.z)
    xy = D.mul(t.x_prime, t.y_prime)
    if D.weyl_length(yz) + D.weyl_length(xy) != D.weyl_length(W.eta_sigma(w)):
        soft.append("l(y'^-1 z) + l(x'y') != l(eta_sigma(w))")
    if soft and strict:
        problems.extend(soft)
    if not D.geq_Z(t.gamma, double_flat(W, w)):
        problems.append("gamma is not >=_Z the double flat")
    if D.supp_sigma(t.a) != frozenset(range(D.rank)):
        problems.append("supp_sigma(a) != S")
    at = t.element(W)
    if W.length(at) != D.weyl_length(t.a) + W.length(W.translation(t.gamma)):
        problems.append("l(a t^gamma) != l(a) + l(t^gamma)")
    if problems:
        raise InvariantViolation(f"reduction target for {_fmt(W, w)}: " + "; ".join(problems))
    return not soft
