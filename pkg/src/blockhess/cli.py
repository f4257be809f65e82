"""Command-line surface wiring the library end to end.

Conventions, fixed across every subcommand:

* all configuration arrives via flags (no environment variables); the seed
  defaults to 0 and every random draw flows from it through per-task
  derived generators, so identical invocations produce byte-identical
  reports;
* stdout carries the report as JSON lines — a meta line (command, version,
  config, checksums of any embedded records used) followed by one line per
  result — or an indented plain rendering under ``--format text``;
* stderr carries a one-line human summary, plus ``{"error": ...}`` as JSON
  when the invocation itself is bad;
* exit status: 0 success/pass, 1 a verification ran and failed, 2 input
  error.

Query commands (``hessian``, ``det``, ``rank``, ``degrees``, ``node``,
``critical``) report data and exit 0 unless the input is bad; checking
commands (``irreducible``, ``specialize``, ``duality``, ``verify-*``,
``identity-h36``) exit 1 when the checked property fails to hold.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .certificates import (
    CERTIFICATE_IDS,
    CHECKSUMS,
    import_certificate,
    load,
    payload_checksum,
    verify as verify_certificate,
)
from .degree import feasible_degrees
from .exterior import ChartPoint, ExteriorArray, gradient, is_critical
from .hessian import (
    HessianMatrix,
    assemble,
    assemble_dual,
    assemble_symbolic,
    block_row_rank,
    coefficient_names,
    corank,
    det_exact,
    det_mod,
    dualize_layout,
    rank_exact,
    specialize_embed,
    symbolic_coefficient_array,
)
from .irreducibility import KnownFactorTable, ensure, run_schedule
from .linalg import det_exact_generic
from .multiindex import NodeIndexSet, enumerate_indices
from .node_cusp import (
    NodePointSpec,
    build_x_J_T,
    chart_point_at,
    cusp_membership,
    defining_forms_at,
    extra_equations,
    limit_T0,
    render_laurent,
)
from .ring import (
    MultiPoly,
    lagrange_interpolate_mod,
    prime_for_trial,
    scalar_to_string,
    uni_root_structure_mod,
)


class CliInputError(Exception):
    """Bad invocation or unreadable input; mapped to exit status 2."""


# ---------------------------------------------------------------------------
# run configuration and deterministic seeding


@dataclass(frozen=True)
class RunConfig:
    """Everything an invocation depends on; serialized into the meta line."""

    command: str
    inputs: tuple[str, ...] = ()
    k: int | None = None
    N: int | None = None
    J: tuple[int, ...] | None = None
    T: str | None = None
    seed: int = 0
    trials: int = 1
    prime_policy: str = "fixed-table"
    output: str | None = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise CliInputError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise CliInputError("seed must fit in 64 unsigned bits")
        if self.fmt not in ("json", "text"):
            raise CliInputError(f"unknown format {self.fmt!r}")

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "k": self.k,
            "N": self.N,
            "J": list(self.J) if self.J is not None else None,
            "T": self.T,
            "seed": self.seed,
            "trials": self.trials,
            "prime_policy": self.prime_policy,
            "output": self.output,
            "format": self.fmt,
        }


def split_rng(seed: int, label: str) -> random.Random:
    """An independent generator derived from the single CLI seed."""
    return random.Random(f"{seed}/{label}")


# ---------------------------------------------------------------------------
# small I/O helpers


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_array(path: str) -> ExteriorArray:
    doc = _load_json(path)
    try:
        return ExteriorArray.from_json_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliInputError(f"{path} is not a coefficient array: {exc}") from exc


def _render_entry(e, names: list[str] | None = None):
    if isinstance(e, MultiPoly):
        return e.to_str(names)
    if isinstance(e, Fraction):
        return int(e) if e.denominator == 1 else scalar_to_string(e)
    return e


def _render_rows(rows, names: list[str] | None = None) -> list[list]:
    return [[_render_entry(e, names) for e in row] for row in rows]


def _parse_J(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise CliInputError(f"cannot parse index set {text!r}: {exc}") from exc


def _parse_T(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliInputError(f"cannot parse T value {text!r}: {exc}") from exc


def _random_array(k: int, N: int, rng: random.Random, lo: int = -4, hi: int = 4) -> ExteriorArray:
    return ExteriorArray(k, N, {I: rng.randint(lo, hi) for I in enumerate_indices(k, N)})


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (records, passed, used_checksums)

Handled = tuple[list[dict], bool, "dict[str, str] | None"]


def _need_kN(args) -> tuple[int, int]:
    if args.k is None or args.N is None:
        raise CliInputError("--k and --N are required here")
    return args.k, args.N


def _cmd_hessian(args) -> Handled:
    if args.input:
        A = _load_array(args.input)
        names = None
    elif args.k is not None:
        k, N = _need_kN(args)
        A = symbolic_coefficient_array(k, N)
        names = coefficient_names(k, N)
    else:
        raise CliInputError("provide --input FILE or --k/--N for the symbolic matrix")
    H = assemble_dual(A) if args.dual else assemble(A)
    rec = {
        "k": H.k,
        "N": H.N,
        "side": H.k * (H.N - H.k),
        "dual": bool(args.dual),
        "structure_ok": H.is_structurally_valid(),
        "rows": _render_rows(H.rows, names),
    }
    return [rec], True, None


def _cmd_det(args) -> Handled:
    A = _load_array(args.input)
    H = assemble_dual(A) if args.dual else assemble(A)
    if args.mod is not None:
        if args.mod < 2:
            raise CliInputError("--mod needs a modulus >= 2")
        rec = {"det": det_mod(H, args.mod), "mod": args.mod}
    else:
        rec = {"det": _render_entry(det_exact(H))}
    return [rec], True, None


def _cmd_rank(args) -> Handled:
    A = _load_array(args.input)
    H = assemble_dual(A) if args.dual else assemble(A)
    rec = {
        "side": H.k * (H.N - H.k),
        "rank": rank_exact(H),
        "corank": corank(H),
        "block_row_ranks": [block_row_rank(H, i) for i in range(1, H.k + 1)],
    }
    return [rec], True, None


def _cmd_degrees(args) -> Handled:
    k, N = _need_kN(args)
    try:
        feas = feasible_degrees(k, N)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    return [{"total": feas.total, "degrees": list(feas.degrees)}], True, None


def _cmd_irreducible(args) -> Handled:
    if args.k is None:
        raise CliInputError("--k is required here")
    try:
        if args.N_max is not None:
            records = [r.to_json_dict() for r in run_schedule(args.k, args.N_max)]
        else:
            _, N = _need_kN(args)
            records = [ensure(KnownFactorTable.seeded(), args.k, N).to_json_dict()]
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    passed = all(r["status"] != "undecided" for r in records)
    return records, passed, None


def _cmd_specialize(args) -> Handled:
    A1, A2 = _load_array(args.inputs[0]), _load_array(args.inputs[1])
    H1, H2 = assemble(A1), assemble(A2)
    try:
        E = specialize_embed(H1, H2)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    d1, d2, de = det_exact(H1), det_exact(H2), det_exact(E)
    rec = {
        "k": E.k,
        "a": H1.N,
        "b": H2.N,
        "N": E.N,
        "det_first": _render_entry(d1),
        "det_second": _render_entry(d2),
        "det_embedded": _render_entry(de),
        "multiplicative": de == d1 * d2,
    }
    if args.full:
        rec["rows"] = _render_rows(E.rows)
    return [rec], bool(rec["multiplicative"]), None


def _cmd_duality(args) -> Handled:
    k, N = _need_kN(args)
    records: list[dict] = []
    passed = True
    if args.symbolic:
        Hd = dualize_layout(assemble_symbolic(k, N))
        ok = Hd.is_structurally_valid()
        records.append({"mode": "symbolic", "relabeled_as": [N - k, N], "structure_ok": ok})
        passed &= ok
    for i in range(args.trials):
        rng = split_rng(args.seed, f"duality:{k}:{N}:{i}")
        H = assemble(_random_array(k, N, rng))
        Hd = dualize_layout(H)
        d, dd = det_exact(H), det_exact(Hd)
        ok = Hd.is_structurally_valid() and d == dd
        records.append(
            {
                "mode": "numeric",
                "trial": i,
                "structure_ok": Hd.is_structurally_valid(),
                "det": _render_entry(d),
                "det_relabeled": _render_entry(dd),
                "equal": d == dd,
            }
        )
        passed &= ok
    return records, passed, None


def _render_linear_form(form) -> dict[str, str]:
    return {",".join(map(str, I)): render_laurent(lau) for I, lau in sorted(form.items())}


def _render_rational_form(form) -> dict[str, str]:
    return {",".join(map(str, I)): scalar_to_string(c) for I, c in sorted(form.items())}


def _cmd_node(args) -> Handled:
    k, N = _need_kN(args)
    if args.J is None:
        raise CliInputError("--J is required (comma-separated index set)")
    if args.symbolic and args.T is not None:
        raise CliInputError("--symbolic and --T are mutually exclusive")
    try:
        node = NodeIndexSet(k, N, _parse_J(args.J))
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    records: list[dict] = []
    passed = True
    if args.T is not None:
        try:
            spec = NodePointSpec(node, _parse_T(args.T))
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
        X = chart_point_at(spec)
        records.append(
            {
                "J": list(node.J),
                "T": args.T,
                "frame_rows": _render_rows(build_x_J_T(spec)),
                "chart_point": _render_rows(X.X),
                "meet_first": len(node.in_first),
            }
        )
        return records, passed, None
    spec = NodePointSpec(node, None)
    try:
        forms = defining_forms_at(spec)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    rec = {
        "J": list(node.J),
        "meet_first": len(node.in_first),
        "frame_rows": [[render_laurent(e) for e in row] for row in build_x_J_T(spec)],
        "base_forms": [_render_linear_form(f) for f in forms.base],
        "moving_forms": [
            {"label": lab, "replaced": rep, "form": _render_linear_form(f)}
            for lab, rep, f in zip(forms.moving_labels, forms.replaced, forms.moving)
        ],
    }
    if len(node.in_first) == k - 2:
        rec["extra_equations"] = [_render_rational_form(f) for f in extra_equations(node)]
    records.append(rec)
    if args.limits:
        try:
            lims = limit_T0(forms)
        except ValueError as exc:
            records.append({"limits_independent": False, "error": str(exc)})
            return records, False, None
        records.append(
            {
                "limits_independent": True,
                "count": len(lims),
                "limits": [_render_rational_form(f) for f in lims],
            }
        )
    return records, passed, None


def _cmd_verify_certificates(args) -> Handled:
    if args.input:
        try:
            certs = [import_certificate(args.input)]
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
    elif args.id:
        try:
            certs = [load(args.id)]
        except KeyError as exc:
            raise CliInputError(str(exc.args[0])) from exc
    else:
        certs = [load(cid) for cid in CERTIFICATE_IDS]
    records = [verify_certificate(c, completion_seed=args.seed) for c in certs]
    used = {c.id: payload_checksum(c) for c in certs}
    return records, all(r["pass"] for r in records), used


def _cmd_verify_node(args) -> Handled:
    if not args.id:
        raise CliInputError("--id is required (a nodepair certificate id)")
    try:
        cert = load(args.id)
    except KeyError as exc:
        raise CliInputError(str(exc.args[0])) from exc
    if cert.kind != "nodepair":
        raise CliInputError(f"{cert.id} has kind {cert.kind!r}, not nodepair")
    rec = verify_certificate(cert, completion_seed=args.seed)
    return [rec], bool(rec["pass"]), {cert.id: CHECKSUMS[cert.id]}


# the nine plain-named coefficients of the cube identity, row by row
_M_ROWS = (
    ((3, 4, 5), (3, 4, 6), (3, 5, 6)),
    ((2, 4, 5), (2, 4, 6), (2, 5, 6)),
    ((1, 4, 5), (1, 4, 6), (1, 5, 6)),
)


def identity_h36(trials: int = 20, seed: int = 0, include_symbolic: bool = True) -> dict:
    """Check det(H(3,6)) = 2 * det(M)^3 symbolically and over prime fields.

    The symbolic route expands the 9x9 determinant as a polynomial in the
    nine independent entry variables and subtracts twice the cube of the
    3x3 determinant of the plain-named coefficients.  Each trial is an
    independent corroboration at a random prime-field point (both sides
    computed from scratch), plus a line-restriction check that the degree-9
    polynomial on a random line is a cube up to a constant.
    """
    if trials < 1:
        raise CliInputError(f"trials must be >= 1, got {trials}")
    A = symbolic_coefficient_array(3, 6)
    M = [[A.get(I) for I in row] for row in _M_ROWS]
    report: dict = {"identity": "det H(3,6) = 2 det(M)^3"}
    if include_symbolic:
        D = det_exact(assemble(A))
        dM = det_exact_generic(M)
        diff = D - dM * dM * dM * 2
        report["symbolic_zero"] = not diff.terms
    else:
        report["symbolic_zero"] = "skipped"
    support = [I for I in enumerate_indices(3, 6) if A.get(I) != 0]
    trial_records = []
    for i in range(trials):
        rng = split_rng(seed, f"identity-h36:{i}")
        p = prime_for_trial(i)
        point = {I: rng.randrange(p) for I in support}
        H = assemble(ExteriorArray(3, 6, point))
        Mi = [[point.get(I, 0) for I in row] for row in _M_ROWS]
        lhs = det_mod(H, p)
        rhs = 2 * pow(det_exact_generic(Mi), 3, p) % p
        # line restriction: interpolate det on a(s) = base + s*direction mod p
        direction = {I: rng.randrange(p) for I in support}
        xs = list(range(10))
        ys = []
        for s in xs:
            As = ExteriorArray(3, 6, {I: (point[I] + s * direction[I]) % p for I in support})
            ys.append(det_mod(assemble(As), p))
        coeffs = lagrange_interpolate_mod(xs, ys, p)
        cube_ok = all(c == 0 for c in coeffs) or uni_root_structure_mod(coeffs, 3, p) is not None
        trial_records.append({"trial": i, "prime": p, "point_match": lhs == rhs, "cube_ok": cube_ok})
    report["trials"] = trial_records
    report["pass"] = (
        (report["symbolic_zero"] is True or report["symbolic_zero"] == "skipped")
        and all(t["point_match"] and t["cube_ok"] for t in trial_records)
    )
    return report


def _cmd_identity_h36(args) -> Handled:
    rec = identity_h36(args.trials, args.seed, include_symbolic=not args.skip_symbolic)
    return [rec], bool(rec["pass"]), None


def _cmd_critical(args) -> Handled:
    A = _load_array(args.input)
    if args.point:
        doc = _load_json(args.point)
        try:
            X = ChartPoint.from_rows(A.k, A.N, [[Fraction(str(e)) for e in row] for row in doc["rows"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise CliInputError(f"{args.point} is not a chart point: {exc}") from exc
        at_zero = all(e == 0 for row in X.X for e in row)
    else:
        X = ChartPoint.zero(A.k, A.N)
        at_zero = True
    rec = {
        "k": A.k,
        "N": A.N,
        "critical": is_critical(A, X),
        "gradient": _render_rows(gradient(A, X)),
    }
    if at_zero:
        rec["cusp_membership"] = cusp_membership(A)
    return [rec], True, None


# ---------------------------------------------------------------------------
# wiring


_HANDLERS = {
    "hessian": _cmd_hessian,
    "det": _cmd_det,
    "rank": _cmd_rank,
    "degrees": _cmd_degrees,
    "irreducible": _cmd_irreducible,
    "specialize": _cmd_specialize,
    "duality": _cmd_duality,
    "node": _cmd_node,
    "verify-certificates": _cmd_verify_certificates,
    "verify-node": _cmd_verify_node,
    "identity-h36": _cmd_identity_h36,
    "critical": _cmd_critical,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from exiting on its own
        raise CliInputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="single 64-bit seed for all randomness")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    shape = _Parser(add_help=False)
    shape.add_argument("--k", type=int, default=None)
    shape.add_argument("--N", type=int, default=None)

    p = _Parser(prog="blockhess", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hessian", parents=[common, shape], help="assemble and print a matrix")
    sp.add_argument("--input", default=None, help="coefficient array JSON; omit for symbolic entries")
    sp.add_argument("--dual", action="store_true", help="matrix at the opposite coordinate point")

    sp = sub.add_parser("det", parents=[common], help="exact (or modular) determinant")
    sp.add_argument("--input", required=True)
    sp.add_argument("--dual", action="store_true")
    sp.add_argument("--mod", type=int, default=None)

    sp = sub.add_parser("rank", parents=[common], help="exact rank, corank, block-row ranks")
    sp.add_argument("--input", required=True)
    sp.add_argument("--dual", action="store_true")

    sub.add_parser("degrees", parents=[common, shape], help="admissible factor degrees")

    sp = sub.add_parser("irreducible", parents=[common, shape], help="factor-degree verdict")
    sp.add_argument("--N-max", type=int, default=None, help="run the whole schedule up to here")

    sp = sub.add_parser("specialize", parents=[common], help="direct-sum embedding of two arrays")
    sp.add_argument("inputs", nargs=2, metavar="FILE")
    sp.add_argument("--full", action="store_true", help="include the embedded matrix rows")

    sp = sub.add_parser("duality", parents=[common, shape], help="relabel (k,N) as (N-k,N) and check")
    sp.add_argument("--symbolic", action="store_true")
    sp.add_argument("--trials", type=int, default=10)

    sp = sub.add_parser("node", parents=[common, shape], help="degenerating frames and defining forms")
    sp.add_argument("--J", default=None, help="comma-separated target index set")
    sp.add_argument("--T", default=None, help="numeric parameter value (rational)")
    sp.add_argument("--symbolic", action="store_true", help="one-parameter family (the default when --T is omitted)")
    sp.add_argument("--limits", action="store_true", help="include the T=0 limit system")

    sp = sub.add_parser("verify-certificates", parents=[common], help="verify embedded records")
    sp.add_argument("--id", default=None, choices=CERTIFICATE_IDS, metavar="ID")
    sp.add_argument("--input", default=None, help="verify an imported certificate JSON instead")

    sp = sub.add_parser("verify-node", parents=[common], help="node-pair record, condition by condition")
    sp.add_argument("--id", default=None, metavar="ID")

    sp = sub.add_parser("identity-h36", parents=[common], help="cube identity, symbolic + prime fields")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--skip-symbolic", action="store_true", help="corroborations only")

    sp = sub.add_parser("critical", parents=[common], help="gradient and criticality at a chart point")
    sp.add_argument("--input", required=True)
    sp.add_argument("--point", default=None, help="path to a JSON file {\"rows\": [[...]]}; default: the zero point")

    return p


def _config_from_args(args) -> RunConfig:
    inputs = []
    for attr in ("input", "point"):
        v = getattr(args, attr, None)
        if v:
            inputs.append(v)
    inputs.extend(getattr(args, "inputs", ()) or ())
    return RunConfig(
        command=args.command,
        inputs=tuple(inputs),
        k=getattr(args, "k", None),
        N=getattr(args, "N", None),
        J=_parse_J(args.J) if getattr(args, "J", None) else None,
        T=getattr(args, "T", None),
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 1),
        output=getattr(args, "output", None),
        fmt=getattr(args, "fmt", "json"),
    )


def _text_block(rec: dict, indent: str = "") -> list[str]:
    lines: list[str] = []
    for key, val in rec.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_block(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  " + "  ".join(str(e) for e in row) for row in val)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.extend(_text_block(item, indent + "  "))
                lines.append(f"{indent}  -")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        records, passed, used_checksums = _HANDLERS[args.command](args)
    except CliInputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    meta: dict = {"command": config.command, "version": __version__, "config": config.to_json_dict()}
    if used_checksums is not None:
        meta["certificate_checksums"] = dict(sorted(used_checksums.items()))
    if config.fmt == "json":
        lines = [json.dumps(meta, separators=(",", ":"))]
        lines += [json.dumps(rec, separators=(",", ":")) for rec in records]
    else:
        lines = []
        for rec in records:
            lines.extend(_text_block(rec))
            lines.append("")
    text = "\n".join(lines) + "\n"
    if config.output:
        try:
            Path(config.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(json.dumps({"error": f"cannot write {config.output}: {exc}"}), file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    print(f"{config.command}: {len(records)} record(s), {'PASS' if passed else 'FAIL'}", file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
