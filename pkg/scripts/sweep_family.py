"""Sweep the winning family and summarise worst cases per θ.

Writes the full record set (CSV) and prints, for a handful of θ values, the
worst s3, the worst back-end gap and the tilt of the rotation axis.

    python3 scripts/sweep_family.py --theta-steps 201 --out sweep.csv
"""

import argparse
import math
import time
from collections import defaultdict

from pennyflip import records
from pennyflip.game import StrategyParams, solve_family, tilt_angle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--theta-steps", type=int, default=201)
    ap.add_argument("--phi-steps", type=int, default=9)
    ap.add_argument("--p-steps", type=int, default=11)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    t0 = time.perf_counter()
    thetas = records.theta_grid(args.theta_steps)
    recs = records.sweep_records(thetas, records.phi_grid(args.phi_steps), records.p_grid(args.p_steps))
    elapsed = time.perf_counter() - t0
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(records.to_csv(recs))

    by_theta = defaultdict(list)
    for r in recs:
        by_theta[r.theta].append(r)

    print(f"{len(recs)} records in {elapsed:.2f}s, {sum(r.passed for r in recs)} pass")
    print(f"{'theta/pi':>9} {'min s3':>22} {'max gap':>9} {'|cos psi|':>10}")
    stride = max(1, len(thetas) // 10)
    shown = list(thetas[::stride])
    if shown[-1] != thetas[-1]:
        shown.append(thetas[-1])
    for theta in shown:
        rows = by_theta[float(theta)]
        worst = min(min(r.s3_ga, r.s3_dm) for r in rows)
        gap = max(r.backend_deviation for r in rows)
        tilt = abs(math.cos(tilt_angle(solve_family(StrategyParams(theta)))))
        print(f"{theta / math.pi:9.3f} {worst:22.17g} {gap:9.1e} {tilt:10.6f}")


if __name__ == "__main__":
    main()
