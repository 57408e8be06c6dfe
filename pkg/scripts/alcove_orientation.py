"""Pin the floor inequality of the alcove-element test empirically.

For shrunken w = x t^lam y whose eta_sigma(w) has proper support J, w should be
a (J, witness, sigma)-alcove element.  Count, for both candidate witnesses and
both floor orientations, how often conditions (i) and (ii) hold.

    python3 scripts/alcove_orientation.py A2 B2 A3:adjoint:sigma=flip
"""

import sys
from collections import Counter

from adlv.affine_weyl import AffineWeylGroup
from adlv.formulas import _floor_pairing
from adlv.root_system import parse_group


def scan(spec: str, L: int = 7) -> None:
    W = AffineWeylGroup(parse_group(spec))
    D = W.datum
    base = D.alcove_barycenter()
    tally = Counter()
    for w in W.elements_up_to(L):
        J = D.supp_sigma(W.eta_sigma(w))
        if not W.is_shrunken(w) or J == frozenset(range(D.rank)):
            continue
        y = W.coset_decompose(w).y
        for name, x in (("sigma^-1(y)", D.sigma_inv_weyl(y)), ("sigma^-1(y)^-1", D.inverse(D.sigma_inv_weyl(y)))):
            v = W.prod(W.finite(D.inverse(x)), w, W.sigma(W.finite(x)))
            here = W.alcove_point(w)
            le = ge = True
            for alpha in D.positive_roots:
                if all(alpha[i] == 0 for i in range(D.rank) if i not in J):
                    continue
                beta = D.act_root(x, alpha)
                a, b = _floor_pairing(D, here, beta), _floor_pairing(D, base, beta)
                le &= a <= b
                ge &= a >= b
            tally[(name, D.in_parabolic(v.u, J), le, ge)] += 1
    print(f"{spec}: (witness, cond (i), floor <=, floor >=) -> count")
    for k, v in sorted(tally.items()):
        print(f"  {k}: {v}")


if __name__ == "__main__":
    for spec in sys.argv[1:] or ["A2", "B2", "A3:adjoint:sigma=flip"]:
        scan(spec)
