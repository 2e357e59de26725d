"""Print one PASS/FAIL line per acceptance criterion.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 2 3 9      # a subset
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import test_acceptance as acc  # noqa: E402


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    args = parser.parse_args(argv)
    chosen = args.criteria or range(1, len(acc.CRITERIA) + 1)
    failed = 0
    for k in chosen:
        start = time.perf_counter()
        try:
            ok, detail = acc.CRITERIA[k - 1]()
        except Exception as exc:  # noqa: BLE001
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        acc._report(k, ok, f"{detail}  [{time.perf_counter() - start:.1f}s]")
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
