"""Command line front-end: preprocess, run, validate, viz, synth, serve.

Exit codes: 0 success, 1 validation/domain failure, 2 usage error.
Diagnostics go to stderr; results go to files or stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .core import (BiclustError, ParameterError, derive_seed, load_bicluster_set,
                   load_matrix, save_bicluster_set, save_matrix)
from .algorithms import algorithm_names, get_algorithm, run_algorithm
from . import preprocess as pp
from . import synth as synth_mod
from . import validation as val
from . import viz as viz_mod

DEFAULT_SEED = 42


def _log(args, msg):
    if getattr(args, "verbose", 0) >= 0:
        print(msg, file=sys.stderr)


def _parse_params(pairs):
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ParameterError(f"--param expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        out[key.strip()] = raw.strip()
    return out


def _coerce_params(algo, raw):
    info = get_algorithm(algo)
    specs = {p.name: p for p in info.params}
    out = {}
    for key, text in raw.items():
        if key not in specs:
            raise ParameterError(
                f"unknown parameter {key!r} for {algo}; "
                f"valid: {', '.join(sorted(specs))}")
        spec = specs[key]
        if spec.type == "int":
            out[key] = int(text)
        elif spec.type == "float":
            out[key] = float(text)
        elif spec.type == "bool":
            out[key] = text.lower() in ("1", "true", "yes")
        else:
            out[key] = text
    return out


def cmd_preprocess(args):
    m = load_matrix(args.input)
    steps = json.loads(args.steps) if args.steps else []
    if isinstance(steps, dict):
        steps = [steps]
    out = pp.apply_steps(m, steps)
    save_matrix(out, args.output)
    _log(args, f"seed={args.seed} wrote {out.shape[0]}x{out.shape[1]} matrix to {args.output}")
    return 0


def _run_one(name, m, params, seed):
    out = run_algorithm(name, m, params, seed)
    return name, out


def cmd_run(args):
    m = load_matrix(args.input)
    raw = _parse_params(args.param)
    if args.algo == "all":
        names = algorithm_names()
        results = {}
        with ThreadPoolExecutor(max_workers=min(4, len(names))) as pool:
            futures = {}
            for idx, name in enumerate(names):
                # each --param applies only to the algorithms that define it
                known = {p.name for p in get_algorithm(name).params}
                params = {k: v for k, v in raw.items() if k in known}
                futures[pool.submit(_run_one, name, m,
                                    _coerce_params(name, params),
                                    derive_seed(args.seed, idx))] = name
            for fut in futures:
                name = futures[fut]
                try:
                    results[name] = fut.result()[1]
                except BiclustError as exc:
                    _log(args, f"{name}: skipped ({exc})")
        base, ext = os.path.splitext(args.output)
        for name in sorted(results):
            path = f"{base}.{name}{ext or '.json'}"
            save_bicluster_set(results[name], path, matrix=m)
            _log(args, f"seed={args.seed} {name}: {len(results[name])} "
                       f"biclusters -> {path}")
        return 0
    if args.algo not in algorithm_names():
        print(f"error: unknown algorithm {args.algo!r}; valid: "
              f"{', '.join(algorithm_names())} or all", file=sys.stderr)
        return 2
    out = run_algorithm(args.algo, m, _coerce_params(args.algo, raw), args.seed)
    save_bicluster_set(out, args.output, matrix=m)
    _log(args, f"seed={args.seed} {args.algo}: {len(out)} biclusters -> {args.output}")
    return 0


def cmd_validate(args):
    m = load_matrix(args.input)
    s = load_bicluster_set(args.biclusters, matrix=m)
    reference = (load_bicluster_set(args.reference, matrix=m)
                 if args.reference else None)
    indices = ("all",) if args.index in (None, "all") else (args.index,)
    report = val.validate_set(m, s, reference=reference, indices=indices)
    doc = report.to_dict()
    doc["seed"] = args.seed
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_viz(args):
    m = load_matrix(args.input)
    s = load_bicluster_set(args.biclusters, matrix=m)
    spec = viz_mod.RenderSpec(kind=args.kind, target=args.bicluster,
                              color_map=args.color_map, width=args.width,
                              height=args.height,
                              highlight=args.bicluster is not None)
    doc = viz_mod.render(m, s, spec)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    _log(args, f"seed={args.seed} rendered {args.kind}")
    return 0


def cmd_synth(args):
    with open(args.spec) as fh:
        raw = json.load(fh)
    plants = [synth_mod.Plant(
        rows=tuple(p["rows"]), cols=tuple(p["cols"]),
        kind=p.get("kind", "constant"), level=p.get("level", 1.0),
        mu=p.get("mu", 0.0),
        row_effects=tuple(p["row_effects"]) if p.get("row_effects") else None,
        col_effects=tuple(p["col_effects"]) if p.get("col_effects") else None,
        u=tuple(p["u"]) if p.get("u") else None,
        v=tuple(p["v"]) if p.get("v") else None,
    ) for p in raw.get("plants", [])]
    cb = None
    if raw.get("checkerboard"):
        c = raw["checkerboard"]
        cb = synth_mod.Checkerboard(
            tuple(tuple(part) for part in c["row_partition"]),
            tuple(tuple(part) for part in c["col_partition"]),
            tuple(tuple(row) for row in c["levels"]))
    spec = synth_mod.PlantedSpec(tuple(raw["shape"]),
                                 noise_sd=raw.get("noise_sd", 1.0),
                                 plants=plants, checkerboard=cb)
    m, truth = synth_mod.generate(spec, args.seed)
    save_matrix(m, args.output)
    if args.truth:
        save_bicluster_set(truth, args.truth, matrix=m)
    _log(args, f"seed={args.seed} generated {m.shape[0]}x{m.shape[1]} -> {args.output}")
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app
    app = create_app(data_dir=args.data_dir, worker_count=args.workers)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biclustlab", description="biclustering analysis toolkit")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="apply preprocessing steps to a matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--steps", help='JSON list of steps, e.g. '
                   '[{"op": "normalize", "kind": "log2"}]')
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("run", help="run a biclustering algorithm")
    p.add_argument("--algo", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="compute validation indices")
    p.add_argument("--input", required=True)
    p.add_argument("--biclusters", required=True)
    p.add_argument("--reference")
    p.add_argument("--index", default="all")
    p.add_argument("--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("viz", help="render a visualization document")
    p.add_argument("--input", required=True)
    p.add_argument("--biclusters", required=True)
    p.add_argument("--kind", default="heatmap",
                   choices=("heatmap", "gene_plot", "cluster_plot"))
    p.add_argument("--bicluster", type=int)
    p.add_argument("--color-map", default="diverging")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--output")
    p.set_defaults(func=cmd_viz)

    p = sub.add_parser("synth", help="generate planted synthetic data")
    p.add_argument("--spec", required=True, help="JSON PlantedSpec file")
    p.add_argument("--output", required=True)
    p.add_argument("--truth", help="optional ground-truth bicluster set path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8400)
    p.add_argument("--workers", type=int, default=2)
    p.add_argument("--data-dir",
                   default=os.environ.get("BICLUSTLAB_DATA_DIR", "biclustlab-data"))
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BiclustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
