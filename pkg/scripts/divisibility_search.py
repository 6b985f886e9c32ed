"""Search weighted projective spaces where the hat T_y divisibility statement is non-vacuous.

The statement needs a genuine N-th root of the anticanonical bundle, l coprime
to N and a non-trivial action.  This script lists candidate (a, c, N), the
hat T_y polynomial in zeta = -y and the result of dividing it by
1 + zeta + ... + zeta^(N-1).

    python3 scripts/divisibility_search.py --max-weight 4
"""

import argparse
import itertools
import math
from dataclasses import dataclass

from orbigenus.errors import DegenerateAction
from orbigenus.model import genuine_levels, weighted_projective_model
from orbigenus.verify import check_divisibility


@dataclass
class SearchConfig:
    dim: int = 2
    max_weight: int = 4
    max_shift: int = 6


def candidates(cfg):
    for a in itertools.combinations_with_replacement(range(1, cfg.max_weight + 1), cfg.dim + 1):
        if math.gcd(*a) != 1:
            continue
        for N in genuine_levels(a):
            for tail in itertools.product(range(1, cfg.max_shift + 1), repeat=cfg.dim):
                c = (0,) + tail
                if math.gcd(sum(c), N) != 1:
                    continue
                try:
                    yield weighted_projective_model(list(a), list(c), N)
                except DegenerateAction:
                    continue
                break  # one action per (a, N) is enough


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=SearchConfig.dim)
    ap.add_argument("--max-weight", type=int, default=SearchConfig.max_weight)
    args = ap.parse_args()
    cfg = SearchConfig(args.dim, args.max_weight)
    for m in candidates(cfg):
        rep = check_divisibility(m, m.bundle.N)
        d = rep.details
        print(f"{m.name:<12} c = {m.meta['c']}  N = {m.bundle.N}  l = {m.bundle.l}  hatTy = {d['hatTy']}")
        print(f"{'':<12} quotient = {d['quotient']}  remainder = {d['remainder']}  "
              f"{'PASS' if rep.passed else 'FAIL'}{' (vacuous)' if d['vacuous'] else ''}")


if __name__ == "__main__":
    main()
