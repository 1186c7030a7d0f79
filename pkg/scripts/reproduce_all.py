#!/usr/bin/env python3
"""Run every registered scenario and print a one-line verdict per check."""
import sys

from cremona.scenarios import list_scenarios, run_scenario


def main() -> int:
    failures = 0
    for name, summary in list_scenarios():
        rep = run_scenario(name)
        mark = "ok " if rep.passed else "FAIL"
        print(f"[{mark}] {name:<24} {rep.elapsed_s:6.2f}s  {summary}")
        for c in rep.checks:
            if not c.passed:
                failures += 1
                print(f"       FAILED: {c.label}  {c.detail}")
    print("all scenarios passed" if failures == 0 else f"{failures} checks failed")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
