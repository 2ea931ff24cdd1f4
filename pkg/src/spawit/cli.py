"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 expectation-flag mismatch,
3 optimizer non-convergence.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, io
from .channels import ChoiMatrix, apply_map, choi_of_witness, spa_map
from .errors import SpawitError
from .linalg import BipartiteOperator, min_eigenvalue
from .spa import Claim, conjecture_check, pt_spectra, spa_witness, theorem3_check
from .witness import DEFAULT_SEED, SeeSawOptions, c_max, validate_witness, weak_optimality

EXIT_OK, EXIT_INPUT, EXIT_EXPECT, EXIT_NOCONV = 0, 1, 2, 3


class InputError(Exception):
    pass


def _opts(args) -> SeeSawOptions:
    return SeeSawOptions(restarts=args.restarts, seed=args.seed, max_iter=args.max_iter)


def _load(args) -> tuple[BipartiteOperator, str]:
    if args.catalog and args.input:
        raise InputError("give either an input file or --catalog, not both")
    if args.catalog:
        entry = catalog.lookup(args.catalog)
        return entry.operator, args.catalog
    if not args.input:
        raise InputError("no input: pass a file path or --catalog NAME[:params]")
    return io.read(args.input).operator(), str(args.input)


def _emit(obj, args=None) -> None:
    text = json.dumps(obj, indent=2)
    print(text)
    path = getattr(args, "json", None)
    if path:
        Path(path).write_text(text + "\n")


def _witness(op, args):
    try:
        return validate_witness(op, _opts(args))
    except SpawitError as exc:
        raise InputError(f"not a witness: {exc}") from None


def cmd_spa(args) -> int:
    op, label = _load(args)
    report = spa_witness(_witness(op, args))
    out = {
        "input": label,
        "shift_s": report.shift_s,
        "noise_p": report.noise_p,
        "verdict": report.verdict.outcome.value,
        "certificate": report.verdict.certificate.value,
        "entanglement_breaking": report.entanglement_breaking,
        **pt_spectra(op),
    }
    _emit(out, args)
    if args.expect_separable and report.verdict.entangled:
        return EXIT_EXPECT
    return EXIT_OK


def cmd_cmax(args) -> int:
    op, label = _load(args)
    res = c_max(op, _opts(args))
    _emit({
        "input": label,
        "value": res.value,
        "argmin": res.argmin.tolist(),
        "starts_used": res.starts_used,
        "converged": res.converged,
        "certified_lower_bound": res.lower_bound,
        "certified_upper_bound": res.certified_upper_bound,
        "seed": args.seed,
        "restarts": args.restarts,
    }, args)
    return EXIT_OK if res.converged else EXIT_NOCONV


def cmd_check_witness(args) -> int:
    op, label = _load(args)
    out = {"input": label, "lambda_min": min_eigenvalue(op), "seed": args.seed}
    res = c_max(op, _opts(args))
    out["min_product_expectation"] = res.value
    try:
        w = validate_witness(op, cmax=res)
    except SpawitError as exc:
        out.update(is_witness=False, reason=str(exc))
    else:
        flag, vec = weak_optimality(w)
        t3 = theorem3_check(w)
        out.update(
            is_witness=True,
            weakly_optimal=flag,
            vanishing_product_vector=vec.tolist() if vec is not None else None,
            theorem3_violating=t3.violating,
            lambda_min_pt=t3.lambda_wpt,
        )
    _emit(out, args)
    return EXIT_OK if res.converged else EXIT_NOCONV


def cmd_conjecture(args) -> int:
    op, label = _load(args)
    report = conjecture_check(_witness(op, args), Claim.parse(args.claim))
    _emit({
        "input": label,
        "claim": report.claim.name,
        "spa_verdict": report.spa_verdict.asdict(),
        "weakly_optimal": report.weakly_optimal,
        "lambda_min_w": report.theorem3.lambda_w,
        "lambda_min_wpt": report.theorem3.lambda_wpt,
        "violates": report.violates,
        "certificates": [c.asdict() for c in report.certificates],
    }, args)
    return EXIT_OK


def cmd_choi(args) -> int:
    op, label = _load(args)
    choi = choi_of_witness(op)
    meta = {"source": label}
    if args.spa:
        res = spa_map(choi)
        choi = res.choi
        meta.update(p_star=res.p_star, already_cp=res.already_cp)
    f = io.OperatorFile.from_operator(choi.operator, kind="choi", **meta)
    _emit(f.to_json(), args)
    return EXIT_OK


def cmd_apply(args) -> int:
    choi = ChoiMatrix(io.read(args.input).operator())
    state = io.read(args.state)
    if state.bipartite:
        raise InputError("--state must be a single-system matrix with dims [d]")
    try:
        out = apply_map(choi, state.matrix)
    except SpawitError as exc:
        raise InputError(str(exc)) from None
    _emit(io.OperatorFile([choi.dim_out], out, "raw").to_json(), args)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if not args.name:
        for name in sorted(catalog.BUILDERS):
            print(name)
        return EXIT_OK
    entry = catalog.lookup(args.name)
    f = io.OperatorFile.from_operator(
        entry.operator,
        kind=entry.kind,
        name=entry.name,
        params={k: v for k, v in entry.params.items()},
        optimality_claim=entry.optimality_claim.name,
        source=entry.source,
    )
    _emit(f.to_json(), args)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from . import reproduce

    rows = reproduce.run(args.filter, _opts(args))
    print(reproduce.format_table(rows))
    ok = all(r.passed for r in rows)
    print(f"\n{sum(r.passed for r in rows)}/{len(rows)} rows pass (seed {args.seed:#x})")
    if args.json:
        payload = {"seed": args.seed, "all_passed": ok, "rows": [r.asdict() for r in rows]}
        Path(args.json).write_text(json.dumps(payload, indent=2, default=_json_default) + "\n")
    return EXIT_OK if ok else 1


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(type(x))


def _int(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spawit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_int, default=DEFAULT_SEED, help="optimizer seed (default 0x5EED)")
    common.add_argument("--restarts", type=int, default=64, help="random see-saw restarts")
    common.add_argument("--max-iter", type=int, default=2000, help="see-saw sweeps per start")
    common.add_argument("--json", metavar="PATH", help="also write the report to PATH")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="operator JSON file")
    source.add_argument("--catalog", metavar="NAME[:params]", help="use a catalog operator instead of a file")

    p = sub.add_parser("spa", parents=[common, source], help="structural physical approximation of a witness")
    p.add_argument("--expect-separable", action="store_true", help="exit 2 if the SPA is entangled")
    p.set_defaults(func=cmd_spa)

    p = sub.add_parser("cmax", parents=[common, source], help="minimum expectation over product vectors")
    p.set_defaults(func=cmd_cmax)

    p = sub.add_parser("check-witness", parents=[common, source], help="witness validity and weak optimality")
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("conjecture", parents=[common, source], help="SPA-conjecture violation certificates")
    p.add_argument("--claim", default="none", choices=["none", "weak", "optimal", "onew"])
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("choi", parents=[common, source], help="Choi matrix of a witness (optionally its SPA)")
    p.add_argument("--spa", action="store_true", help="emit the map-level SPA Choi matrix")
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("apply", parents=[common], help="apply a map given by its Choi matrix")
    p.add_argument("input", help="Choi matrix file")
    p.add_argument("--state", required=True, help="single-system state file, dims [d]")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries or dump one")
    p.add_argument("name", nargs="?", help="NAME[:params]")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("reproduce", parents=[common], help="recompute every reference number")
    p.add_argument("--filter", help="only groups whose name contains this text")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpawitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
