"""Verify the bundled certificate catalog and print one verdict line per record.

Exit status is 0 when every selected record passes, 1 otherwise.
"""

import argparse

from blockhess.certificates import CERTIFICATE_IDS, verify


def describe(report: dict) -> str:
    if "discrepancy" in report:
        d = report["discrepancy"]
        return f"payload differs from embedded copy at {d['field']}[{d['row']}][{d['col']}]"
    if "error" in report:
        return report["error"]
    kind = report["kind"]
    if kind == "corank1":
        return (
            f"rank {report['rank']}/{report['side']}, corank {report['corank']}, "
            f"block rows {report['block_row_ranks']}"
        )
    if kind == "invertible":
        return f"det = {report['det']}"
    node = report["node"]
    return (
        f"det H(x0) = {node['det_H0']}, det H(x') = {node['det_H1']}, "
        f"completion seed {node['completion_seed']}"
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--id",
        action="append",
        choices=CERTIFICATE_IDS,
        help="verify only this record (repeatable; default: all)",
    )
    parser.add_argument(
        "--completion-seed",
        type=int,
        default=0,
        help="starting seed for node-pair completions",
    )
    args = parser.parse_args()

    ids = tuple(args.id) if args.id else CERTIFICATE_IDS
    failures = 0
    for cid in ids:
        report = verify(cid, completion_seed=args.completion_seed)
        verdict = "PASS" if report["pass"] else "FAIL"
        failures += verdict == "FAIL"
        print(f"{verdict}  {cid:<16} ({report['k']},{report['N']})  {describe(report)}")
    print(f"{len(ids) - failures}/{len(ids)} records verified")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
