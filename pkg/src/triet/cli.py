"""Command line front end.

Every subcommand prints one JSON document (sorted keys, exact numbers as
canonical literal strings) or, with ``--out text``, a flat human summary.
Exit status: 0 success, 1 domain error (error JSON on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import bridge, induct, morph, wordstat
from .catalog import TABLE1, example_iet
from .errors import TrietError
from .iet import Interval, ThreeIET, code_prefix, cylinder
from .qfield import parse_exact

__all__ = ["main", "run", "run_job", "run_jobfile", "table1_jobs", "dumps"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit on its own
        raise UsageError(f"{self.prog}: {message}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _text(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            lines += _text(obj[k], f"{prefix}{k}." if isinstance(obj[k], (dict, list)) and obj[k] else f"{prefix}{k}")
        return lines
    if isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        lines = []
        for i, x in enumerate(obj):
            lines += _text(x, f"{prefix}{i}.")
        return lines
    key = prefix.rstrip(".")
    if isinstance(obj, list):
        return [f"{key}: {', '.join(str(x) for x in obj)}"]
    return [f"{key}: {obj}"]


# -- argument helpers -----------------------------------------------------------


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _iet(args) -> ThreeIET:
    _need(args, "alpha", "beta")
    alpha = parse_exact(args.alpha)
    beta = parse_exact(args.beta)
    if args.beta_is_length:
        beta = 1 - beta
    return ThreeIET(alpha, beta)


def _num(text: str, T: ThreeIET | None = None):
    if T is None:
        return parse_exact(text)
    return parse_exact(text, T.alpha.d if not T.alpha.is_rational() else T.beta.d)


def _interval(args, T: ThreeIET | None) -> Interval:
    _need(args, "gamma", "delta")
    return Interval(_num(args.gamma, T), _num(args.delta, T))


def _map(text: str | None, flag: str = "--map") -> morph.Morphism:
    if text is None:
        raise UsageError(f"missing {flag}")
    try:
        return morph.parse_morphism(text)
    except ValueError as exc:
        if isinstance(exc, TrietError):
            raise
        raise UsageError(f"{flag}: {exc}") from None


def _count(args, default: int | None = None) -> int:
    n = args.n if args.n is not None else default
    if n is None:
        raise UsageError(f"{args.command}: missing --n")
    if n < 0:
        raise UsageError("--n must be nonnegative")
    return n


# -- commands -------------------------------------------------------------------


def cmd_induce(args) -> dict:
    T = _iet(args)
    res = induct.itineraries(T, _interval(args, T), args.cap)
    out = res.to_dict()
    out["caseTag"] = res.case_tag
    out["caseRelations"] = induct.verify_case_relations(res)
    return out


def cmd_code(args) -> dict:
    T = _iet(args)
    _need(args, "rho")
    n = _count(args, 50)
    return {"rho": args.rho, "n": n, "word": code_prefix(T, _num(args.rho, T), n)}


def cmd_return_times(args) -> dict:
    T = _iet(args)
    return induct.return_time_set(T, _interval(args, T), args.cap).to_dict()


def cmd_cylinder(args) -> dict:
    T = _iet(args)
    _need(args, "word")
    I = cylinder(T, args.word)
    if I is None:
        from .errors import NotAFactor

        raise NotAFactor(f"{args.word!r} is not a factor")
    return {"word": args.word, "interval": I.to_dict(), "length": str(I.length)}


def cmd_complexity(args) -> dict:
    T = _iet(args)
    n = _count(args, 10)
    table = [wordstat.complexity(T, k) for k in range(n + 1)]
    return {"n": n, "complexity": table, "nondegenerate": T.nondegenerate}


def cmd_return_words(args) -> dict:
    T = _iet(args)
    _need(args, "word")
    return {"word": args.word, "returnWords": wordstat.return_words(T, args.word, args.cap)}


def cmd_bispecials(args) -> dict:
    T = _iet(args)
    n = _count(args, 8)
    return {"maxLength": n, "bispecials": [b.to_dict() for b in wordstat.bispecials(T, n, args.cap)]}


def cmd_frequencies(args) -> dict:
    T = _iet(args)
    n = _count(args, 5)
    values = wordstat.frequencies(T, n)
    return {"n": n, "frequencies": [str(v) for v in values], "distinct": len(set(values))}


def cmd_gaps(args) -> dict:
    _need(args, "alpha")
    n = _count(args, 200)
    if args.beta is None:
        alpha = parse_exact(args.alpha)
        I = _interval(args, None)
        rho = parse_exact(args.rho) if args.rho else alpha * 0
        return wordstat.rotation_gaps(alpha, rho, I, n).to_dict()
    T = _iet(args)
    rho = _num(args.rho, T) if args.rho else T.alpha * 0
    return wordstat.iet_gaps(T, rho, _interval(args, T), n, args.cap).to_dict()


def cmd_distances(args) -> dict:
    _need(args, "alpha")
    n = _count(args, 50)
    if args.beta is None:
        alpha = parse_exact(args.alpha)
        rho = parse_exact(args.rho) if args.rho else alpha * 0
        return wordstat.rotation_distances(alpha, rho, n).to_dict()
    T = _iet(args)
    rho = _num(args.rho, T) if args.rho else T.alpha * 0
    return wordstat.three_distance(T, rho, n).to_dict()


def cmd_morphism(args) -> dict:
    phi = _map(args.map)
    op = args.op
    if op == "conjugate":
        psi, cert = morph.extreme_conjugate(phi, args.side)
        return {"map": str(phi), "side": args.side, "conjugate": str(psi), "certificate": cert.to_dict()}
    if op == "mirror":
        return {"map": str(phi), "mirror": str(morph.mirror(phi))}
    if op == "classp":
        cert = morph.class_p(phi)
        return {"map": str(phi), "inP": cert is not None, "certificate": cert.to_dict() if cert else None}
    if op == "classpprime":
        cert = morph.class_p_prime(phi)
        return {"map": str(phi), "inPPrime": cert is not None, "certificate": cert.to_dict() if cert else None}
    if op == "fixedpoint":
        _need(args, "word")
        n = _count(args, 40)
        return {"map": str(phi), "seed": args.word, "prefix": morph.fixed_point_prefix(phi, args.word, n)}
    if op == "incidence":
        return {"map": str(phi), "incidence": morph.incidence(phi), "primitive": morph.primitive(phi)}
    raise UsageError(f"unknown morphism operation {op!r}")


def cmd_ternarize(args) -> dict:
    phi, psi = _map(args.map), _map(args.map2, "--map2")
    eta = bridge.ternarize_morphisms(phi, psi)
    return {"amicable": eta is not None, "eta": str(eta) if eta else None}


def cmd_split(args) -> dict:
    eta = _map(args.map)
    pair = bridge.split_ternary(eta)
    if pair is None:
        return {"amicable": False, "phi": None, "psi": None}
    return {"amicable": True, "phi": str(pair[0]), "psi": str(pair[1])}


def cmd_recover(args) -> dict:
    xi = _map(args.map)
    out = bridge.recover_parameters(xi).to_dict()
    out["structuralRelation"] = bridge.structural_relation(xi)
    return out


def cmd_verify(args) -> dict:
    xi = _map(args.map)
    params = bridge.recover_parameters(xi)
    report = bridge.verify_invariance(xi, params, _count(args, 2000), args.cap)
    out = params.to_dict()
    out["checks"] = report.to_dict()
    return out


def cmd_hks(args) -> dict:
    return bridge.hks_check(_map(args.map)).to_dict()


def table1_jobs() -> list[dict]:
    from .catalog import EXAMPLE_ALPHA, EXAMPLE_BETA

    return [
        {
            "command": "induce",
            "alpha": EXAMPLE_ALPHA,
            "beta": EXAMPLE_BETA,
            "gamma": row.gamma,
            "delta": row.delta,
            "expect": {"caseTag": row.case, "lengths": list(row.lengths), "keane.ordering": row.ordering},
        }
        for row in TABLE1
    ]


def cmd_table1(args) -> dict:
    if args.emit_jobs:
        return {"jobs": table1_jobs()}
    T = example_iet()
    rows = []
    for row in TABLE1:
        res = induct.itineraries(T, row.interval(), args.cap)
        ok = (res.case_tag == row.case and tuple(res.lengths) == row.lengths
              and res.keane.ordering_str() == row.ordering)
        rows.append({
            "case": row.case,
            "gamma": row.gamma,
            "delta": row.delta,
            "expectedOrdering": row.ordering,
            "ordering": res.keane.ordering_str(),
            "expectedLengths": list(row.lengths),
            "lengths": res.lengths,
            "match": ok,
        })
    matched = sum(r["match"] for r in rows)
    return {"rows": rows, "matched": matched, "total": len(rows),
            "summary": f"{matched}/{len(rows)} rows match"}


COMMANDS: dict[str, Callable[[argparse.Namespace], dict]] = {
    "induce": cmd_induce,
    "code": cmd_code,
    "return-times": cmd_return_times,
    "cylinder": cmd_cylinder,
    "complexity": cmd_complexity,
    "return-words": cmd_return_words,
    "bispecials": cmd_bispecials,
    "frequencies": cmd_frequencies,
    "gaps": cmd_gaps,
    "distances": cmd_distances,
    "morphism": cmd_morphism,
    "ternarize": cmd_ternarize,
    "split": cmd_split,
    "recover": cmd_recover,
    "verify": cmd_verify,
    "hks": cmd_hks,
    "table1": cmd_table1,
}

MORPHISM_OPS = ("conjugate", "mirror", "classp", "classpprime", "fixedpoint", "incidence")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alpha")
    common.add_argument("--beta")
    common.add_argument("--beta-is-length", action="store_true",
                        help="read --beta as the length of J_C, i.e. the discontinuity is 1 - beta")
    common.add_argument("--gamma")
    common.add_argument("--delta")
    common.add_argument("--rho")
    common.add_argument("--n", type=int)
    common.add_argument("--cap", type=int, default=induct.DEFAULT_CAP)
    common.add_argument("--map")
    common.add_argument("--map2")
    common.add_argument("--word")
    common.add_argument("--side", choices=("left", "right"), default="left")
    common.add_argument("--out", choices=("json", "text"), default=argparse.SUPPRESS)

    parser = _Parser(prog="triet", description="Exact toolkit for symmetric three-interval exchanges.")
    parser.add_argument("--jobs", metavar="PATH", help="run a JSON array of jobs")
    parser.add_argument("--parallel", type=int, default=0, metavar="N",
                        help="with --jobs: run jobs in N worker processes")
    parser.add_argument("--out", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "morphism":
            p.add_argument("op", choices=MORPHISM_OPS)
        if name == "table1":
            p.add_argument("--emit-jobs", action="store_true", help="print the rows as a job file")
    return parser


def _expect_ok(result: dict, expect: dict) -> bool:
    for dotted, want in expect.items():
        got: Any = result
        for part in dotted.split("."):
            if not isinstance(got, dict) or part not in got:
                return False
            got = got[part]
        if got != want:
            return False
    return True


def _job_argv(job: dict) -> list[str]:
    if not isinstance(job, dict) or "command" not in job:
        raise UsageError("a job must be an object with a 'command' field")
    argv = [str(job["command"])]
    if job["command"] == "morphism":
        argv.append(str(job.get("op", "")))
    for key, value in job.items():
        if key in ("command", "op", "expect"):
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        else:
            argv += [flag, str(value)]
    return argv


def run_job(job: dict) -> dict:
    """Run one job object; never raises."""
    try:
        argv = _job_argv(job)
        status, result = _execute(argv)
    except UsageError as exc:
        return {"status": "error", "exit": 2, "error": {"error": "UsageError", "message": str(exc)}}
    if status != 0:
        return {"status": "error", "exit": status, "error": result}
    out = {"status": "ok", "exit": 0, "result": result}
    if "expect" in job:
        out["matches"] = _expect_ok(result, job["expect"])
        if not out["matches"]:
            out["status"] = "mismatch"
    return out


def run_jobfile(path: str, parallel: int = 0) -> tuple[int, dict]:
    p = Path(path)
    if not p.is_file():
        return 1, {"error": "FileNotFound", "message": f"no such job file: {path}"}
    try:
        jobs = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        return 1, {"error": "SyntaxError", "message": f"job file is not valid JSON: {exc}"}
    if not isinstance(jobs, list):
        return 1, {"error": "SyntaxError", "message": "job file must hold a JSON array"}
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run_job, jobs))
    else:
        results = [run_job(job) for job in jobs]
    for i, r in enumerate(results):
        r["index"] = i
    ok = sum(r["status"] == "ok" for r in results)
    expected = [r for r in results if "matches" in r]
    report = {
        "jobs": results,
        "total": len(results),
        "ok": ok,
        "failed": len(results) - ok,
    }
    if expected:
        matched = sum(r["matches"] for r in expected)
        report["summary"] = f"{matched}/{len(expected)} rows match"
    return (0 if ok == len(results) else 1), report


def _dispatch(args: argparse.Namespace) -> tuple[int, dict]:
    if args.command is None:
        raise UsageError("triet: no command given (try --help)")
    try:
        return 0, COMMANDS[args.command](args)
    except TrietError as exc:
        return 1, exc.to_dict()


def _execute(argv: Sequence[str]) -> tuple[int, dict]:
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as exc:  # --help inside a job
        raise UsageError(f"unsupported arguments {list(argv)}") from exc
    return _dispatch(args)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.jobs:
            status, report = run_jobfile(args.jobs, args.parallel)
        else:
            status, report = _dispatch(args)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.out == "text":
        lines = _text(report)
        if "summary" in report:
            lines = [ln for ln in lines if not ln.startswith("summary: ")] + [report["summary"]]
        print("\n".join(lines), file=stdout)
    else:
        print(dumps(report), file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
