"""Command-line interface: simulate, sweep, gen-data, learn, score-graph,
score-forecasts, serve."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .core import ValidationError, profile_from_dict
from .dataset import DiscreteDataset, SamplerSpec, generate_dataset
from .engine import simulate
from .forecast import ForecastTriple, rps
from .graphs import compare_graphs, graph_from_json
from .params import load_params
from .structlearn import SearchOptions, hill_climb, tabu_search
from .sweeps import SweepSpec, run_sweep

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_VALIDATION)


def _add_params_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", default="kb-probabilistic",
                   choices=["kb-probabilistic", "kb-regression"])
    p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                   help="dotted parameter override, repeatable")


def _params_from_args(args) -> "EngineParams":
    overrides = {}
    for item in args.override:
        if "=" not in item:
            raise ValidationError(f"override {item!r} must look like key=value")
        key, raw = item.split("=", 1)
        overrides[key] = json.loads(raw)
    return load_params(args.preset, overrides)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise _IoError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise _IoError(f"cannot write {path}: {e}")


class _IoError(Exception):
    pass


def _profile(path: str, label: str):
    from .core import require_valid
    return require_valid(profile_from_dict(_read_json(path), path=label), label)


def cmd_simulate(args) -> int:
    params = _params_from_args(args)
    report = simulate(_profile(args.home, "home"), _profile(args.away, "away"),
                      params, trials=args.trials, seed=args.seed,
                      workers=args.workers)
    _write_text(args.out, json.dumps(report.to_json_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    params = _params_from_args(args)
    doc = _read_json(args.spec)
    spec = SweepSpec(
        base_home=profile_from_dict(doc["base_home"], "base_home"),
        base_away=profile_from_dict(doc["base_away"], "base_away"),
        vary=doc["vary"], points=doc["points"],
        trials_per_point=doc.get("trials_per_point", 20_000),
        seed=doc.get("seed", 0), delta=doc.get("delta", False),
    )
    result = run_sweep(spec, params)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "p_win", "p_draw", "p_lose", "mean_total_goals"])
    for pt in result.points:
        w.writerow([pt.value, pt.p_win, pt.p_draw, pt.p_lose, pt.mean_total_goals])
    _write_text(args.out, buf.getvalue())
    if args.json:
        _write_text(args.json, json.dumps(result.to_json_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_gen_data(args) -> int:
    params = _params_from_args(args)
    spec = (SamplerSpec.from_json_dict(_read_json(args.config))
            if args.config else SamplerSpec())
    ds = generate_dataset(args.n, spec, params, seed=args.seed)
    _write_text(args.out, ds.to_csv())
    return EXIT_OK


def cmd_learn(args) -> int:
    try:
        with open(args.data) as fh:
            ds = DiscreteDataset.from_csv(fh.read())
    except OSError as e:
        raise _IoError(f"cannot read {args.data}: {e}")
    opts = SearchOptions(max_indegree=args.max_indegree,
                         tabu_length=args.tabu_length,
                         max_worsening_steps=args.max_worsening,
                         time_budget_s=args.time_budget)
    search = tabu_search if args.algo == "tabu" else hill_climb
    scored = search(ds, opts)
    out = scored.dag.to_json_dict()
    out["bic"] = scored.bic
    out["log_likelihood"] = scored.ll
    out["free_params"] = scored.free_params
    _write_text(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def cmd_score_graph(args) -> int:
    learned = graph_from_json(_read_json(args.learned))
    truth = graph_from_json(_read_json(args.truth))
    cmp_ = compare_graphs(learned, truth, as_cpdag=not args.raw_dag)
    print(f"F1  {cmp_.f1:.4f}")
    print(f"BSF {cmp_.bsf:.4f}")
    print(f"SHD {cmp_.shd:.1f}")
    return EXIT_OK


def cmd_score_forecasts(args) -> int:
    try:
        with open(args.csv) as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise _IoError(f"cannot read {args.csv}: {e}")
    if rows and rows[0][:1] and rows[0][0].lower() in ("ph", "p_h", "home"):
        rows = rows[1:]  # optional header
    scores = []
    for i, row in enumerate(rows):
        if len(row) < 4:
            raise ValidationError(f"row {i + 1}: expected pH,pD,pA,observed")
        triple = ForecastTriple(float(row[0]), float(row[1]), float(row[2]))
        scores.append(rps(triple, row[3].strip()))
    if not scores:
        raise ValidationError("no forecast rows found")
    print(f"rows {len(scores)}")
    print(f"mean RPS {sum(scores) / len(scores):.5f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn
    from .server import app
    port = args.port or int(os.environ.get("HATSIM_PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hatsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo match simulation")
    p.add_argument("--home", required=True)
    p.add_argument("--away", required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    _add_params_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="what-if sweep over one input")
    p.add_argument("--spec", required=True, help="SweepSpec JSON file")
    p.add_argument("--out", default="-", help="CSV output (one row per point)")
    p.add_argument("--json", default=None, help="also write JSON result")
    _add_params_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen-data", help="generate a discretised match dataset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None, help="SamplerSpec JSON file")
    p.add_argument("--out", default="-")
    _add_params_args(p)
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("learn", help="structure search over a dataset CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--algo", choices=["hc", "tabu"], default="tabu")
    p.add_argument("--max-indegree", type=int, default=5)
    p.add_argument("--tabu-length", type=int, default=10)
    p.add_argument("--max-worsening", type=int, default=10)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("score-graph", help="compare a learned graph to a reference")
    p.add_argument("--learned", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--raw-dag", action="store_true",
                   help="compare raw DAGs instead of equivalence classes")
    p.set_defaults(func=cmd_score_graph)

    p = sub.add_parser("score-forecasts", help="mean RPS of forecast CSV rows")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_score_forecasts)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        path = f" ({e.field_path})" if e.field_path else ""
        sys.stderr.write(f"validation error{path}: {e}\n")
        return EXIT_VALIDATION
    except _IoError as e:
        sys.stderr.write(f"io error: {e}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
