"""Search for a falsify seed whose first draw lands within the near-family band.

The CLI's boundary-handling path needs a seed like this. The coarse filter uses
the closed-form image of σ₃ under the sampled rotation; hits are confirmed with
the library before being printed.

    python scripts/find_near_family_seed.py --start 0 --stop 5000000
"""

import argparse

import numpy as np

from pennyflip.game import NEAR_FAMILY_TOL, random_rotor, target_distance, trial_rng


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--stop", type=int, default=1_000_000)
    ap.add_argument("--trial", type=int, default=0)
    args = ap.parse_args()

    for seed in range(args.start, args.stop):
        rng = np.random.default_rng([seed, args.trial])
        v = rng.normal(size=3)
        n = v / np.linalg.norm(v)
        angle = rng.uniform(0.0, 2 * np.pi)
        x = n[0] * n[2] * (1 - np.cos(angle)) - n[1] * np.sin(angle)
        if 1.0 - abs(x) < 10 * NEAR_FAMILY_TOL:
            d = target_distance(random_rotor(trial_rng(seed, args.trial)))
            print(f"seed={seed} distance={d:.3e}", flush=True)
            if d < NEAR_FAMILY_TOL:
                break


if __name__ == "__main__":
    main()
