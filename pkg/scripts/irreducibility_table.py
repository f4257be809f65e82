"""Run the irreducibility schedules and print a status table.

For each shape the engine either cites a known base factorization or rules
out every nontrivial factor pattern by degree arithmetic; the table shows
which, together with the deciding data.
"""

import argparse

from blockhess.degree import feasible_degrees
from blockhess.irreducibility import KnownFactorTable, run_schedule


def fmt_patterns(record) -> str:
    if record.verdict is not None and record.verdict.patterns:
        pats = sorted(p.degrees for p in record.verdict.patterns)
        return ", ".join("{" + ",".join(map(str, p)) + "}" for p in pats)
    if record.factors is not None:
        return "x".join(str(d) for d in record.factors)
    return "-"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, action="append", help="row sizes to schedule (repeatable; default 3 4 5)")
    parser.add_argument("--N-max", type=int, default=16, help="largest column count per schedule")
    args = parser.parse_args()

    ks = args.k if args.k else [3, 4, 5]
    table = KnownFactorTable.seeded()
    print(f"{'k':>2} {'N':>3} {'total':>6} {'feasible':>14} {'status':<12} deciding patterns")
    undecided = 0
    for k in ks:
        for record in run_schedule(k, args.N_max, table):
            feas = feasible_degrees(record.k, record.N)
            feas_s = ",".join(map(str, feas.degrees)) if feas.degrees else "-"
            total = feas.total
            undecided += record.status == "undecided"
            print(
                f"{record.k:>2} {record.N:>3} {total:>6} {feas_s:>14} "
                f"{record.status:<12} {fmt_patterns(record)}"
            )
    if undecided:
        print(f"{undecided} shape(s) undecided")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
