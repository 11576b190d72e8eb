"""Command line entry point: ``oswap <verb> ...``.

Exit codes: 0 success / pass, 1 verified inequality or failed test,
2 usage error or unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from typing import Sequence

from . import __version__

log = logging.getLogger("oswap")

CHECKPOINT_ENV = "OSWAP_CHECKPOINT_DIR"


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _open_out(path: str | None, force: bool):
    if path is None or path == "-":
        return sys.stdout, False
    if os.path.exists(path) and not force:
        raise UsageError(f"{path} exists; pass --force to overwrite")
    return open(path, "w", newline=""), True


def _emit(obj, args, human: str | None = None):
    out, close = _open_out(getattr(args, "out", None), getattr(args, "force", False))
    try:
        if human is not None and not args.json and out is sys.stdout:
            out.write(human.rstrip("\n") + "\n")
        else:
            json.dump(obj, out, indent=None if out is sys.stdout else 2, default=str)
            out.write("\n")
    finally:
        if close:
            out.close()


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


def _tableau_arg(args):
    from .combinatorics import Tableau

    obj = _read_json(args.input)
    try:
        return Tableau.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.input}: not a tableau: {exc}") from exc


def cmd_verify(args) -> int:
    from .symbolic import verify_identity

    def progress(kind, count):
        log.info("%s_%d: %d objects", kind, args.n, count)

    if args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.components and args.mode != "exact":
        raise UsageError("--components needs --mode exact")
    dump = _open_out(args.components, args.force) if args.components else None
    try:
        report = verify_identity(args.n, args.mode, args.seed, args.checkpoint,
                                 workers=args.workers, progress=progress,
                                 with_components=dump is not None)
        if dump is not None:
            json.dump({"n": args.n, "components": report.pop("reduced_components")},
                      dump[0], indent=2)
            dump[0].write("\n")
    finally:
        if dump is not None and dump[1]:
            dump[0].close()
    report["version"] = __version__
    report["config"] = _config(args)
    human = (f"n={args.n} mode={args.mode} components={report['components']} "
             f"equal={str(report['equal']).lower()} wall_time={report['wall_time']:.2f}s")
    _emit(report, args, human)
    return 0 if report["equal"] else 1


def _traj_text(batch, r) -> str:
    if batch.trajectories is None:
        return ""
    row = [int(v) for v in batch.trajectories[r]]
    if batch.model == "osp":
        return " ".join(map(str, row))
    parts, pos = [], 0
    for length in range(batch.n - 1, 0, -1):
        parts.append(" ".join(map(str, row[pos:pos + length])))
        pos += length
    return "/".join(parts)


def cmd_simulate(args) -> int:
    from .simulate import run_model

    if args.n < 2 or args.trials < 1:
        raise UsageError("--n must be >= 2 and --trials >= 1")
    batch = run_model(args.model, args.n, args.trials, args.seed, args.workers)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial"] + [f"t{k}" for k in range(1, args.n)] + ["absorb", "trajectory"])
    absorb = batch.absorb
    for r in range(len(batch)):
        w.writerow([r] + [repr(float(v)) for v in batch.times[r]]
                   + [repr(float(absorb[r])), _traj_text(batch, r)])
    out, close = _open_out(args.out, args.force)
    try:
        out.write(buf.getvalue())
    finally:
        if close:
            out.close()
    return 0


def cmd_compare(args) -> int:
    from .stats import compare_processes

    checks = tuple(c for c in args.checks.split(",") if c)
    unknown = set(checks) - {"marginals", "ordering", "absorb"}
    if unknown or not checks:
        raise UsageError(f"--checks takes marginals, ordering, absorb; got {args.checks!r}")
    if not 0 < args.alpha < 1:
        raise UsageError("--alpha must lie in (0, 1)")
    if args.n < 2 or args.trials < 2:
        raise UsageError("--n must be >= 2 and --trials >= 2")
    start = time.perf_counter()
    rep = compare_processes(args.a, args.b, args.n, args.trials, args.seed, args.alpha,
                            checks, args.workers)
    obj = rep.to_json()
    obj.update(version=__version__, config=_config(args), wall_time=time.perf_counter() - start)
    if args.report:
        out, close = _open_out(args.report, args.force)
        try:
            json.dump(obj, out, indent=2)
            out.write("\n")
        finally:
            if close:
                out.close()
    if args.json:
        json.dump(obj, sys.stdout)
        sys.stdout.write("\n")
    else:
        print("\n".join(rep.lines()))
    return 0 if rep.verdict else 1


def cmd_density(args) -> int:
    from .stats import density_spec, joint_density

    if len(args.point) != args.n - 1:
        raise UsageError(f"--point needs {args.n - 1} coordinates")
    try:
        spec = density_spec(args.model, args.n)
    except MemoryError as exc:
        raise UsageError(str(exc)) from exc
    value = joint_density(spec, args.point)
    _emit({"model": args.model.upper(), "n": args.n, "point": args.point, "density": value,
           "version": __version__}, args, repr(value))
    return 0


def cmd_rsk(args) -> int:
    from .correspondences import burge, rsk

    x = _tableau_arg(args)
    out = (burge if args.verb == "burge" else rsk)(x)
    _emit(out.to_json(), args)
    return 0


def cmd_eg(args) -> int:
    from .correspondences import edelman_greene

    t = _tableau_arg(args)
    try:
        s = edelman_greene(t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(s.to_json(), args)
    return 0


def cmd_eg_inv(args) -> int:
    from .combinatorics import SortingNetwork
    from .correspondences import edelman_greene_inverse

    obj = _read_json(args.input)
    try:
        s = SortingNetwork.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.input}: not a sorting network: {exc}") from exc
    _emit(edelman_greene_inverse(s).to_json(), args)
    return 0


def cmd_lpp(args) -> int:
    from .lpp import dual_lpp_tableau, lpp_tableau

    x = _tableau_arg(args)
    if any(v < 0 for v in x.values()):
        raise UsageError("weights must be non-negative")
    L, Ls = lpp_tableau(x), dual_lpp_tableau(x)
    n = len(x.shape.rows) + 1
    obj = {"L": [list(r) for r in L.rows], "Lstar": [list(r) for r in Ls.rows]}
    if x.shape.rows == tuple(range(n - 1, 0, -1)):
        obj["V"] = [L[(n - k, k)] for k in range(1, n)]
        obj["W"] = [Ls[(n - k, k)] for k in range(1, n)]
    _emit(obj, args)
    return 0


def cmd_enumerate(args) -> int:
    from .combinatorics import (
        enumerate_sorting_networks, enumerate_syt, network_walk, staircase, syt_walk,
    )

    if args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.count_only:
        walk = syt_walk(staircase(args.n)) if args.what == "syt" else network_walk(args.n)
        count = sum(1 for _ in walk)
        _emit({"what": args.what, "n": args.n, "count": count}, args, str(count))
        return 0
    out, close = _open_out(args.out, args.force)
    try:
        items = enumerate_syt(staircase(args.n)) if args.what == "syt" \
            else enumerate_sorting_networks(args.n)
        for obj in items:
            out.write(json.dumps(obj.to_json()) + "\n")
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oswap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, out=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if out:
            sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--force", action="store_true", help="overwrite existing outputs")

    sp = sub.add_parser("verify", help="check F_n == G_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("exact", "modular"), default="exact")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--checkpoint", default=os.environ.get(CHECKPOINT_ENV))
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--components", default=None,
                    help="write every reduced component of F_n as JSON (exact mode)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="sample last-swap / growth / dual vectors to CSV")
    sp.add_argument("--model", choices=("osp", "growth", "dual"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("compare", help="two-sample comparison of two models")
    sp.add_argument("--a", choices=("osp", "growth", "dual"), required=True)
    sp.add_argument("--b", choices=("osp", "growth", "dual"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alpha", type=float, default=0.01)
    sp.add_argument("--checks", default="marginals,ordering,absorb")
    sp.add_argument("--report", default=None)
    sp.add_argument("--workers", type=int, default=1)
    common(sp, out=False)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("density", help="exact joint density of U_n or V_n")
    sp.add_argument("--model", type=str.lower, choices=("u", "v"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--point", type=float, nargs="+", required=True)
    common(sp)
    sp.set_defaults(func=cmd_density)

    for verb, func, what in (("rsk", cmd_rsk, "RSK image of a tableau"),
                             ("burge", cmd_rsk, "Burge image of a tableau"),
                             ("eg", cmd_eg, "Edelman-Greene: staircase SYT -> sorting network"),
                             ("eg-inv", cmd_eg_inv, "sorting network -> staircase SYT"),
                             ("lpp", cmd_lpp, "LPP and dual LPP tableaux of a weight tableau")):
        sp = sub.add_parser(verb, help=what)
        sp.add_argument("input", nargs="?", default="-", help="JSON file or - for stdin")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("enumerate", help="list staircase SYT or sorting networks")
    sp.add_argument("--what", choices=("syt", "sn"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s", stream=sys.stderr)
    if getattr(args, "workers", 1) < 1:
        print("oswap: error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"oswap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
