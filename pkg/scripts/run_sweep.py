"""Run the verification sweep for one group and print a JSON summary.

    python3 scripts/run_sweep.py --group B2 --max-len 10 --jobs 4
"""

import argparse
import json
import time

from adlv.sweep import ALL_CHECKS, SweepConfig, run_sweep


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--group", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checks", default=",".join(ALL_CHECKS), help="comma separated subset")
    p.add_argument("--show", type=int, default=10, help="violations to print")
    args = p.parse_args()
    cfg = SweepConfig(args.group, args.max_len, tuple(args.checks.split(",")))
    t0 = time.perf_counter()
    res = run_sweep(cfg, jobs=args.jobs)
    out = res.summary()
    out["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps(out, indent=2))
    for v in res.violations[: args.show]:
        print(json.dumps(v))
    return 0 if res.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
