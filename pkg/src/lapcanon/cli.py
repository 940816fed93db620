"""Command-line interface: ``lapcanon {canonize,verify,stats,gen}``.

Exit codes: 0 success, 1 runtime failure (or failed verification), 2 usage error.
Default tolerances may be overridden with ``LAPCANON_EPS_EIG``,
``LAPCANON_EPS_ZERO``, ``LAPCANON_EPS_GROUP`` and ``LAPCANON_C``.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .discrimination import isomorphism_discrimination_test
from .errors import ConvergenceError, GeneratorError, LapCanonError
from .generate import gen_basis_ambiguous, gen_er
from .graph import FORMATS, dump_graph, guess_format, iter_graph_paths, parse_graph, parse_jsonl
from .pipeline import canonize
from .spectral import CanonConfig
from .stats import corpus_stats
from .verify import verify_basis, verify_sign



class UsageError(Exception):
    pass


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _probability(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _bool(text):
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _add_tolerances(p):
    p.add_argument("--tol-eig", type=_positive_float, default=None, help="eigenvalue grouping tolerance")
    p.add_argument("--tol-zero", type=_positive_float, default=None, help="zero-projection threshold")
    p.add_argument("--tol-group", type=_positive_float, default=None, help="axis-length grouping tolerance")
    p.add_argument("--c", type=float, default=None, help="constant added to summary vectors")


def _config(args, k=None) -> CanonConfig:
    return CanonConfig.from_env(eps_eig=args.tol_eig, eps_zero=args.tol_zero, eps_group=args.tol_group,
                                c=args.c, k_pe=k)


# -- input -------------------------------------------------------------------


def _read_inputs(path, fmt):
    """Yield ``(name, graph_or_exception)`` for a file, a JSON-lines file or a directory."""
    path = Path(path)
    if path.is_dir():
        for p in iter_graph_paths(path):
            try:
                yield str(p), parse_graph(p.read_bytes(), fmt or guess_format(p), source=str(p))
            except LapCanonError as exc:
                yield str(p), exc
        return
    data = path.read_bytes()
    if path.suffix.lower() == ".jsonl":
        for i, g in enumerate(parse_jsonl(data, source=str(path))):
            yield f"{path}:{i + 1}", g
        return
    yield str(path), parse_graph(data, fmt or guess_format(path), source=str(path))


# -- canonize ----------------------------------------------------------------


def _record(name, g, cfg, args):
    try:
        out = canonize(g, cfg, sign=args.sign, basis=args.basis, hash_propagate=args.hash_propagate,
                       reweight=not args.no_reweight)
    except ConvergenceError as exc:
        return {"graph": name, "error": str(exc)}, None
    columns = [
        {
            "index": j,
            "eigenvalue": float(out.eigenvalues[j]),
            "eigenspace": int(out.eigenspace[j]),
            "status": out.status[j],
            "values": [float(x) for x in out.embedding[:, j]],
        }
        for j in range(out.embedding.shape[1])
    ]
    return {"graph": name, "n": g.n, "k_pe": out.embedding.shape[1], "columns": columns}, out


def cmd_canonize(args) -> int:
    if args.k is not None and args.k < 1:
        raise UsageError("k must be >= 1")
    base_cfg = _config(args)
    echo = {
        "eps_eig": base_cfg.eps_eig,
        "eps_zero": base_cfg.eps_zero,
        "eps_group": base_cfg.eps_group,
        "c": base_cfg.c,
        "sign": args.sign,
        "basis": args.basis,
        "hash_propagate": args.hash_propagate,
        "reweight": not args.no_reweight,
    }
    items = list(_read_inputs(args.input, args.format))

    def work(item):
        name, g = item
        if isinstance(g, Exception):
            return {"graph": name, "error": str(g)}, None
        k = args.k if args.k is not None else g.n
        if k > g.n:
            return {"graph": name, "error": f"k={k} exceeds n={g.n}"}, None
        return _record(name, g, base_cfg.with_k(k), args)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(work, items))

    out_stream = open(args.output, "w") if args.output else sys.stdout
    try:
        for rec, _ in results:
            if "error" not in rec:
                rec["config"] = dict(echo, k_pe=rec["k_pe"])
                rec["version"] = __version__
            else:
                print(f"lapcanon: {rec['graph']}: {rec['error']}", file=sys.stderr)
            out_stream.write(json.dumps(rec) + "\n")
    finally:
        if args.output:
            out_stream.close()
    if args.csv:
        _write_csv(args.csv, results)
    return 0


def _write_csv(path, results):
    path = Path(path)
    width = max((rec["k_pe"] for rec, _ in results if "error" not in rec), default=0)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["graph", "node"] + [f"pe{j}" for j in range(width)])
        for rec, out in results:
            if out is None:
                continue
            for i, row in enumerate(out.embedding):
                writer.writerow([rec["graph"], i] + [repr(float(x)) for x in row] + [""] * (width - len(row)))
    meta = [
        {"graph": rec["graph"], "columns": [{k: c[k] for k in ("index", "eigenvalue", "eigenspace", "status")}
                                            for c in rec["columns"]]}
        for rec, _ in results
        if "error" not in rec
    ]
    path.with_suffix(path.suffix + ".meta.json").write_text(json.dumps(meta, indent=1) + "\n")


# -- verify / stats / gen ------------------------------------------------------


def cmd_verify(args) -> int:
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    cfg = _config(args)
    if args.kind == "sign":
        seed = 42 if args.seed is None else args.seed
        report = verify_sign(args.trials, (args.n_min, args.n_max), seed, args.eps, algorithm=args.sign, cfg=cfg)
    else:
        seed = 7 if args.seed is None else args.seed
        report = verify_basis(args.trials, seed, args.eps, (args.n_min, args.n_max), algorithm=args.basis, cfg=cfg)
    print(json.dumps(report.to_json()))
    return 0 if report.passed else 1


def _load_corpus(path):
    graphs, errors = [], []
    path = Path(path)
    if not path.exists():
        raise UsageError(f"no such file or directory: {path}")
    try:
        for name, g in _read_inputs(path, None):
            if isinstance(g, Exception):
                errors.append({"graph": name, "error": str(g)})
            else:
                graphs.append(g)
    except LapCanonError as exc:
        errors.append({"graph": str(path), "error": str(exc)})
    return graphs, errors


def cmd_stats(args) -> int:
    graphs, errors = _load_corpus(args.input)
    stats = corpus_stats(graphs, _config(args), min_nodes=args.min_nodes, sign=args.sign, basis=args.basis)
    out = stats.to_json()
    out["parse_errors"] = errors
    print(json.dumps(out))
    return 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.kind == "er":
        if args.p is None:
            raise UsageError("gen er requires --p")
        graphs = gen_er(args.n, args.p, args.weighted, args.count, args.seed, connected=args.connected)
        prefix = "er"
    else:
        graphs = gen_basis_ambiguous(args.count, args.seed, n=args.n)
        prefix = "ambiguous"
    for i, g in enumerate(graphs):
        dump_graph(g, out / f"{prefix}_{i:04d}.json")
    print(json.dumps({"written": len(graphs), "out": str(out)}))
    return 0


def cmd_discriminate(args) -> int:
    base = gen_basis_ambiguous(args.graphs, args.seed, n=args.n, basis=args.basis)
    report = isomorphism_discrimination_test(base, args.instances, args.seed, _config(args),
                                             canonize=not args.raw, basis=args.basis)
    print(json.dumps(report.to_json()))
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lapcanon", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonize", help="emit canonized spectral embeddings as JSON lines")
    p.add_argument("--input", required=True, help="graph file, .jsonl file or directory")
    p.add_argument("--format", choices=FORMATS, default=None, help="default: from the file extension")
    p.add_argument("--k", type=int, default=None, help="embedding columns kept (default: n)")
    _add_tolerances(p)
    p.add_argument("--sign", choices=("map", "polynomial"), default="map")
    p.add_argument("--basis", choices=("map", "strong"), default="map")
    p.add_argument("--hash-propagate", type=_bool, nargs="?", const=True, default=False)
    p.add_argument("--no-reweight", type=_bool, nargs="?", const=True, default=False)
    p.add_argument("--output", default=None)
    p.add_argument("--csv", default=None, help="also write a flat CSV matrix plus a .meta.json sidecar")
    p.add_argument("--seed", type=int, default=0, help="unused by canonization (it is deterministic)")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=cmd_canonize)

    p = sub.add_parser("verify", help="randomized invariance/equivariance simulation")
    p.add_argument("kind", choices=("sign", "basis"))
    p.add_argument("--trials", type=_nonneg_int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps", type=_positive_float, default=1e-6)
    p.add_argument("--n-min", type=_positive_int, default=3)
    p.add_argument("--n-max", type=_positive_int, default=30)
    p.add_argument("--sign", choices=("map", "polynomial"), default="map")
    p.add_argument("--basis", choices=("map", "strong"), default="map")
    _add_tolerances(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="corpus statistics of canonizability")
    p.add_argument("--input", required=True, help="directory of graph files or a .jsonl file")
    p.add_argument("--min-nodes", type=_nonneg_int, default=5)
    p.add_argument("--sign", choices=("map", "polynomial"), default="map")
    p.add_argument("--basis", choices=("map", "strong"), default="map")
    _add_tolerances(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write random graphs as JSON files")
    p.add_argument("kind", choices=("er", "basis-ambiguous"))
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--p", type=_probability, default=None)
    p.add_argument("--weighted", type=_bool, nargs="?", const=True, default=False)
    p.add_argument("--connected", type=_bool, nargs="?", const=True, default=False)
    p.add_argument("--count", type=_nonneg_int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("discriminate", help="isomorphism discrimination on basis-ambiguous graphs")
    p.add_argument("--graphs", type=_positive_int, default=10)
    p.add_argument("--instances", type=_nonneg_int, default=20)
    p.add_argument("--n", type=_positive_int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--basis", choices=("map", "strong"), default="map")
    p.add_argument("--raw", action="store_true", help="skip canonization (baseline)")
    _add_tolerances(p)
    p.set_defaults(func=cmd_discriminate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.n is None:
        args.n = 20 if args.kind == "er" else 12
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lapcanon: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, LapCanonError, GeneratorError) as exc:
        print(f"lapcanon: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
