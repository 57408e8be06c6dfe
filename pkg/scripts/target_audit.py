"""Where does the reduction-target construction break?

For every w with full sigma-support of eta_sigma(w), build the target without
the strict length checks and tabulate (shrunken, lengths additive,
dimension inequality holds).

    python3 scripts/target_audit.py A2 10 B2 9
"""

import sys
from collections import Counter

from adlv.affine_weyl import AffineWeylGroup
from adlv.formulas import reduction_target
from adlv.notation import format_element
from adlv.reduction_oracle import Oracle
from adlv.root_system import parse_group
from adlv.sweep import target_failures


def audit(spec: str, L: int) -> Counter:
    W = AffineWeylGroup(parse_group(spec))
    O = Oracle(W)
    D = W.datum
    full = frozenset(range(D.rank))
    tally = Counter()
    example = None
    for w in W.elements_up_to(L):
        if D.supp_sigma(W.eta_sigma(w)) != full:
            continue
        t = reduction_target(W, w, strict=False)
        holds = all(k == "ok" for k, _, _ in target_failures(W, O, w, strict=False))
        key = (W.is_shrunken(w), t.lengths_additive, holds)
        tally[key] += 1
        if not holds and example is None:
            example = format_element(W, w)
    print(f"{spec} L={L}  (shrunken, additive, inequality) -> count")
    for k, v in sorted(tally.items()):
        print(f"  {k}: {v}")
    if example:
        print(f"  first inequality failure: {example}")
    return tally


if __name__ == "__main__":
    args = sys.argv[1:] or ["A1", "10", "A2", "10", "B2", "9", "G2", "9"]
    for spec, L in zip(args[::2], args[1::2]):
        audit(spec, int(L))
