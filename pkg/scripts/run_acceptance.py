"""Run the eleven acceptance checks outside pytest and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed S] [--only 4 7]
"""
import argparse
import sys
import time

from padic_tate.config import REFERENCE_CONFIGS
from padic_tate.suites import SUITES, suite_family_a, suite_table_b

CRITERIA = [
    (1, "basic transforms", SUITES["transforms"], 5),
    (2, "Fourier inversion", SUITES["inversion"], 30),
    (3, "translation, dilation, Poisson", SUITES["poisson"], 30),
    (4, "duality lab", SUITES["duality"], 60),
    (5, "golden zeta tables", suite_table_b, 10),
    (6, "rho coherence", SUITES["rho"], 10),
    (7, "functional equation", SUITES["fe"], 120),
    (8, "geometric shell family", suite_family_a, 30),
    (9, "Gauss sums and twist law", SUITES["gauss"], 30),
    (10, "p-adic layer", SUITES["rl"], 60),
    (11, "continuation bookkeeping", SUITES["continuation"], 10),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", type=int, nargs="*", default=None)
    args = ap.parse_args()
    all_ok = True
    for k, title, fn, limit in CRITERIA:
        if args.only and k not in args.only:
            continue
        start = time.perf_counter()
        tallies = [(cfg.label, fn(cfg, None, args.seed)) for cfg in REFERENCE_CONFIGS]
        elapsed = time.perf_counter() - start
        failures = [f"{label}: {t.failure}" for label, t in tallies if not t.ok]
        ok = not failures and elapsed < limit
        all_ok = all_ok and ok
        checks = sum(t.total for _, t in tallies)
        print(f"criterion {k:>2} {title:<32} {'PASS' if ok else 'FAIL'}  "
              f"{checks:>5} checks  {elapsed:6.1f} s / {limit} s")
        for line in failures:
            print(f"    {line}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
