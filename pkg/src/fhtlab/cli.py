"""Command-line interface: a thin client over the lab service.

Subcommands: run (execute a batch), bounds (evaluate the closed-form
bounds), verify (batch + consistency verdicts), derive (brute-force
instance quantities), trace (single seeded run dump), serve (start the
HTTP service).  By default commands execute against an in-process service;
--server points them at a remote one.

Exit codes: 0 ok, 1 usage/config error, 2 censored runs, 3 verification
verdict inconsistent.  Errors are emitted as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from fhtlab.client import LabClient

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CENSORED = 2
EXIT_INCONSISTENT = 3

_ROW_FIELDS = ("n", "t0_hat", "t_max", "k_hat", "alpha_hat",
               "avg_bound", "worst_bound", "klow_theoretical", "runs")


def _fail(kind: str, detail, code: int = EXIT_USAGE) -> int:
    print(json.dumps({"error": kind, "detail": detail}), file=sys.stderr)
    return code


def _http_fail(status: int, body: dict) -> int:
    err = body.get("error", body)
    kind = err.get("kind", f"http-{status}") if isinstance(err, dict) else str(err)
    detail = err.get("detail", err) if isinstance(err, dict) else err
    code = EXIT_CENSORED if kind == "censored-runs" else EXIT_USAGE
    print(json.dumps({"error": kind, "detail": detail}), file=sys.stderr)
    return code


def _problem_payload(problem: str) -> str | dict:
    """Named problems pass through; file paths are read client-side."""
    path = Path(problem)
    if problem.endswith(".json") or path.is_file():
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot load instance file {problem!r}: {exc}") from exc
    return problem


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot load config file {path!r}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValueError(f"config file {path!r} must hold a JSON object")
    return cfg


def _merged(args: argparse.Namespace, file_cfg: dict, key: str, default=None):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    return file_cfg.get(key, default)


def _print_rows(rows: list[dict]) -> None:
    widths = {f: max(len(f), *(len(_cell(r.get(f))) for r in rows)) for f in _ROW_FIELDS}
    print("  ".join(f.rjust(widths[f]) for f in _ROW_FIELDS))
    for r in rows:
        print("  ".join(_cell(r.get(f)).rjust(widths[f]) for f in _ROW_FIELDS))


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _experiment_payload(args: argparse.Namespace, file_cfg: dict) -> dict:
    problem = _merged(args, file_cfg, "problem")
    if problem is None:
        raise ValueError("--problem is required (flag or config file)")
    n_min = _merged(args, file_cfg, "n_min")
    n_max = _merged(args, file_cfg, "n_max")
    single = _merged(args, file_cfg, "n")
    if single is not None and (n_min is None or n_max is None):
        n_min = n_max = single
    if n_min is None or n_max is None:
        raise ValueError("an n-range is required (--n-min/--n-max or --n)")
    payload = {
        "problem": _problem_payload(str(problem)),
        "n_min": int(n_min),
        "n_max": int(n_max),
        "mu": int(_merged(args, file_cfg, "mu", 2)),
        "lambda": int(_merged(args, file_cfg, "lambda", 10)),
        "runs": int(_merged(args, file_cfg, "runs", 500)),
        "seed": int(_merged(args, file_cfg, "seed", 7)),
        "k_source": _merged(args, file_cfg, "k_source", "empirical"),
        "workers": int(_merged(args, file_cfg, "workers", 1)),
        "include_traces": bool(_merged(args, file_cfg, "traces", False)),
    }
    for key, field in (("poisson-lambda", "poisson_lambda"),
                       ("max-generations", "max_generations"), ("out", "out_dir")):
        value = _merged(args, file_cfg, field if key != "out" else "out")
        if value is not None:
            payload[field] = value
    return payload


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        payload = _experiment_payload(args, _load_config_file(args.config))
    except ValueError as exc:
        return _fail("config-error", str(exc))
    with LabClient(args.server) as client:
        status, body = client.post("/run", payload)
    if status != 200:
        return _http_fail(status, body)
    _print_rows(body["rows"])
    for f in body.get("files", []):
        print(f"wrote {f}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        file_cfg = _load_config_file(args.config)
        payload = _experiment_payload(args, file_cfg)
        payload["r_min"] = float(_merged(args, file_cfg, "r_min", 0.91))
    except ValueError as exc:
        return _fail("config-error", str(exc))
    with LabClient(args.server) as client:
        status, body = client.post("/verify", payload)
    if status != 200:
        return _http_fail(status, body)
    _print_rows(body["rows"])
    print()
    for name in ("avg", "worst", "k"):
        pair = body["orderings"][name]
        held = sum(pair["ordering_holds_per_n"].values())
        total = len(pair["ordering_holds_per_n"])
        print(f"{name:>5}: r({pair['first']}, {pair['second']}) = {pair['correlation']:.4f}  "
              f"ordering {held}/{total} n-points  -> {pair['verdict']}")
    print(f"overall: {body['verdicts']['overall']} (r_min = {body['thresholds']['r_min']})")
    for f in body.get("files", []):
        print(f"wrote {f}")
    return EXIT_OK if body["verdicts"]["overall"] == "consistent" else EXIT_INCONSISTENT


def _empirical_k_from_file(spec: str, n: int) -> float:
    path = spec.split(":", 1)[1]
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            for row in csv.DictReader(fh):
                if int(row["n"]) == n:
                    return float(row["k_hat"])
    except (OSError, KeyError, ValueError) as exc:
        raise ValueError(f"cannot read k_hat from {path!r}: {exc}") from exc
    raise ValueError(f"no row with n={n} in {path!r}")


def _cmd_bounds(args: argparse.Namespace) -> int:
    try:
        problem = _problem_payload(args.problem)
        k = None
        source = args.k_source or "theoretical"
        if source.startswith("empirical:"):
            if args.n is None:
                raise ValueError("--n is required with --k-source empirical:<file>")
            k = _empirical_k_from_file(source, args.n)
        elif source != "theoretical":
            raise ValueError("--k-source must be 'theoretical' or 'empirical:<summary.csv>'")
    except ValueError as exc:
        return _fail("config-error", str(exc))
    payload = {"problem": problem, "n": args.n, "mu": args.mu, "lambda": args.lambda_,
               "poisson_lambda": args.poisson_lambda, "k": k}
    with LabClient(args.server) as client:
        status, body = client.post("/bounds", payload)
    if status != 200:
        return _http_fail(status, body)
    print(f"problem={body['problem']} n={body['n']} y0={body['y0']} "
          f"alpha={body['alpha']} beta={body['beta']}")
    print(f"{'avg_bound':>18} {'klow_theoretical':>18} {'worst_bound':>18}  k_source")
    print(f"{body['avg_bound']:>18.6f} {body['klow_theoretical']:>18.6f} "
          f"{body['worst_bound']:>18.6f}  {body['k_source']} (k={body['k_used']:.6f})")
    print(json.dumps(body))
    return EXIT_OK


def _cmd_derive(args: argparse.Namespace) -> int:
    try:
        problem = _problem_payload(args.problem)
    except ValueError as exc:
        return _fail("config-error", str(exc))
    payload = {"problem": problem, "n": args.n, "enumeration_cap": args.cap}
    with LabClient(args.server) as client:
        status, body = client.post("/derive", payload)
    if status != 200:
        return _http_fail(status, body)
    for key in ("problem", "n", "optimum_fitness", "alpha", "beta", "q", "feasible_count",
                "p1", "p2", "d_min", "v_min", "optimum_count", "clause_count"):
        if body.get(key) is not None:
            print(f"{key} = {body[key]}")
    print(f"values = {body['values']}")
    return EXIT_OK


def _cmd_trace(args: argparse.Namespace) -> int:
    try:
        problem = _problem_payload(args.problem)
    except ValueError as exc:
        return _fail("config-error", str(exc))
    payload = {"problem": problem, "n": args.n, "mu": args.mu, "lambda": args.lambda_,
               "seed": args.seed, "poisson_lambda": args.poisson_lambda,
               "max_generations": args.max_generations}
    with LabClient(args.server) as client:
        status, body = client.post("/trace", payload)
    if status != 200:
        return _http_fail(status, body)
    lines = ["t,best_fitness,best_count,potential,gain,hit_optimum"]
    for ev in body["events"]:
        gain = "" if ev["gain"] is None else ev["gain"]
        lines.append(f"{ev['t']},{ev['best_fitness']},{ev['best_count']},"
                     f"{ev['potential']},{gain},{str(ev['hit_optimum']).lower()}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
        print(f"fht={body['fht']} evaluations={body['evaluations']} wrote {args.out}")
    else:
        sys.stdout.write(text)
        print(f"fht={body['fht']} evaluations={body['evaluations']}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("fhtlab.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def _add_server(p: argparse.ArgumentParser) -> None:
    p.add_argument("--server", help="URL of a remote lab service (default: in-process)")


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", help="paper-knapsack | paper-maxsat | paper-tsp | instance.json")
    p.add_argument("--n-min", type=int, dest="n_min")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--n", type=int, help="single encoding length (shorthand for --n-min/--n-max)")
    p.add_argument("--mu", type=int)
    p.add_argument("--lambda", type=int, dest="lambda_")
    p.add_argument("--runs", type=int, help="independent runs per n (default 500)")
    p.add_argument("--seed", type=int, help="base seed; run seeds derive from (seed, n, run)")
    p.add_argument("--poisson-lambda", type=float, dest="poisson_lambda")
    p.add_argument("--max-generations", type=int, dest="max_generations",
                   help="generation cap (default: 100x the theoretical worst bound)")
    p.add_argument("--out", help="directory for summary.csv, report.json, series files")
    p.add_argument("--k-source", dest="k_source", choices=["empirical", "theoretical"],
                   help="k for the worst bound: empirical k_hat (default) or theoretical klow")
    p.add_argument("--workers", type=int, help="process pool width (default 1)")
    p.add_argument("--traces", action="store_const", const=True, dest="traces",
                   help="also export the per-generation trace CSV")
    p.add_argument("--config", help="JSON config file; flags override its values")
    _add_server(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fhtlab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment batch")
    _add_experiment_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="batch + consistency verdicts")
    _add_experiment_flags(p_verify)
    p_verify.add_argument("--r-min", type=float, dest="r_min",
                          help="correlation threshold (default 0.91)")
    p_verify.set_defaults(func=_cmd_verify)

    p_bounds = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    p_bounds.add_argument("--problem", required=True)
    p_bounds.add_argument("--n", type=int)
    p_bounds.add_argument("--mu", type=int, default=2)
    p_bounds.add_argument("--lambda", type=int, dest="lambda_", default=10)
    p_bounds.add_argument("--poisson-lambda", type=float, dest="poisson_lambda")
    p_bounds.add_argument("--k-source", dest="k_source",
                          help="theoretical (default) or empirical:<summary.csv>")
    _add_server(p_bounds)
    p_bounds.set_defaults(func=_cmd_bounds)

    p_derive = sub.add_parser("derive", help="brute-force derived quantities")
    p_derive.add_argument("--problem", required=True)
    p_derive.add_argument("--n", type=int)
    p_derive.add_argument("--cap", type=int, default=24, help="enumeration cap (default 24)")
    _add_server(p_derive)
    p_derive.set_defaults(func=_cmd_derive)

    p_trace = sub.add_parser("trace", help="single seeded run with per-generation dump")
    p_trace.add_argument("--problem", required=True)
    p_trace.add_argument("--n", type=int)
    p_trace.add_argument("--mu", type=int, default=2)
    p_trace.add_argument("--lambda", type=int, dest="lambda_", default=10)
    p_trace.add_argument("--seed", type=int, default=0)
    p_trace.add_argument("--poisson-lambda", type=float, dest="poisson_lambda")
    p_trace.add_argument("--max-generations", type=int, dest="max_generations")
    p_trace.add_argument("--out", help="write the dump to a CSV file instead of stdout")
    _add_server(p_trace)
    p_trace.set_defaults(func=_cmd_trace)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
