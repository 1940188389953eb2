"""Command-line front end.

Exit status: 0 on success, including algorithmic failures such as a failed
extraction (those are results); 1 when a certificate is rejected; 2 on bad
input; 3 when an internal invariant of the pipeline is violated.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .canon import DEFAULT_ENUMERATION_CAP, EnumerationCapError, count_induced_iso_classes, sampled_iso_lower_bound
from .constructions import blowup, blowup_iso_bound, search_ramsey_witness
from .graph import Graph, GraphFormatError, graph6_encode
from .harness import (
    GENERATOR_HELP,
    ExperimentConfig,
    IsoCountCache,
    default_cache_dir,
    experiment_sweep,
    generate,
    read_graphs,
)
from .pipeline import (
    PipelineInvariantError,
    derive_constants,
    format_certificate,
    parse_certificate,
    run_pipeline,
    verify_certificate,
)
from .pipeline.certificate import Homogeneous, IsoRich
from .pipeline.constants import OVERRIDABLE
from .ramsey import SearchCapError, bipartite_rm, es_bound, ramsey_extract, rm_number


class CliError(Exception):
    pass


def _graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="infile", metavar="PATH", help="graph6 (one per line) or edge-list file; '-' for stdin")
    src.add_argument("--gen", metavar="SPEC", help=GENERATOR_HELP)
    p.add_argument("--index", type=int, default=0, help="which graph of a multi-line graph6 file (default 0)")
    p.add_argument("--seed", type=int, default=0)


def _csv_opt(p: argparse.ArgumentParser) -> None:
    p.add_argument("--csv", metavar="PATH", help="also write a one-row CSV")


def _constants_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c1", default="1", help="homogeneity exponent c1 (default 1)")
    for name in OVERRIDABLE:
        p.add_argument(f"--{name}", dest=f"ov_{name}", metavar="VALUE", help=f"override {name}")


def _load_graph(args: argparse.Namespace) -> Graph:
    if args.gen:
        return generate(args.gen, args.seed)
    graphs = read_graphs(args.infile)
    if not 0 <= args.index < len(graphs):
        raise CliError(f"--index {args.index} out of range: file holds {len(graphs)} graph(s)")
    return graphs[args.index]


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    return {k: getattr(args, f"ov_{k}") for k in OVERRIDABLE if getattr(args, f"ov_{k}") is not None}


def _write_csv(path: str | None, row: dict[str, Any]) -> None:
    if not path:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(row))
        w.writerow(["" if v is None else v for v in row.values()])


def cmd_rm(args) -> int:
    g = _load_graph(args)
    k, hs = rm_number(g, args.cap)
    print(f"Rm {k}")
    print(f"witness {hs.kind} {' '.join(map(str, hs.members))}")
    _write_csv(args.csv, {"n": g.n, "rm": k, "kind": hs.kind, "members": " ".join(map(str, hs.members))})
    return 0


def cmd_bipartite(args) -> int:
    g = _load_graph(args)
    k, a1, a2 = bipartite_rm(g, args.cap)
    print(f"Bipartite {k}")
    print(f"A1 {' '.join(map(str, sorted(a1)))}")
    print(f"A2 {' '.join(map(str, sorted(a2)))}")
    _write_csv(args.csv, {"n": g.n, "bipartite": k})
    return 0


def cmd_count_iso(args) -> int:
    g = _load_graph(args)
    key = graph6_encode(g)
    cache_dir = args.cache_dir or default_cache_dir()
    cache = IsoCountCache(cache_dir) if cache_dir else None
    if args.sample:
        lb = sampled_iso_lower_bound(g, args.sample, args.seed)
        print(f"I >= {lb} (lower bound from {args.sample} sampled subsets)")
        _write_csv(args.csv, {"n": g.n, "iso_lower_bound": lb, "samples": args.sample})
        return 0
    count = cache.get(key) if cache else None
    if count is None:
        count = count_induced_iso_classes(g, args.cap)
        if cache:
            cache.put(key, count)
    print(count)
    _write_csv(args.csv, {"n": g.n, "iso_classes": count})
    return 0


def cmd_es_bound(args) -> int:
    print(es_bound(args.r1, args.r2))
    return 0


def cmd_ramsey_extract(args) -> int:
    g = _load_graph(args)
    hs = ramsey_extract(g, args.r1, args.r2)
    if hs is None:
        print("failure")
    else:
        print(f"{hs.kind} {' '.join(map(str, hs.members))}")
    _write_csv(args.csv, {"n": g.n, "found": hs is not None, "kind": hs.kind if hs else ""})
    return 0


def cmd_blowup(args) -> int:
    h = _load_graph(args)
    g = blowup(h, args.m)
    _emit_graph(g, args.out)
    print(f"# I(G) <= {blowup_iso_bound(h, args.m)}", file=sys.stderr)
    return 0


def _emit_graph(g: Graph, out: str | None) -> None:
    line = graph6_encode(g) + "\n"
    if out:
        Path(out).write_text(line)
    else:
        sys.stdout.write(line)


def cmd_gen(args) -> int:
    g = generate(args.spec, args.seed)
    _emit_graph(g, args.out)
    return 0


def cmd_witness(args) -> int:
    found = search_ramsey_witness(args.n, args.r, args.trials, args.seed)
    if found is None:
        print("failure")
        return 0
    g, t = found
    print(f"# trial {t}", file=sys.stderr)
    _emit_graph(g, args.out)
    return 0


def cmd_constants(args) -> int:
    c = derive_constants(args.c1, _overrides(args))
    for k, v in c.as_dict().items():
        print(f"{k} {v}")
    print(f"c5_printed {c.c5_printed}")
    return 0


def cmd_pipeline(args) -> int:
    g = _load_graph(args)
    c = derive_constants(args.c1, _overrides(args))
    res = run_pipeline(g, c, args.seed, args.max_attempts, args.evidence_budget)
    cert = res.certificate
    text = format_certificate(cert, g) if cert is not None else "no certificate: sampling failed\n"
    sys.stdout.write(text)
    if args.out and cert is not None:
        Path(args.out).write_text(text)
    if args.trace:
        print("\n".join(res.trace.lines()))
    verified = None
    if args.verify and cert is not None:
        verified, report = verify_certificate(g, cert)
        for line in report:
            print(f"# {line}")
        print("VERIFIED" if verified else "REJECTED")
    row = {"n": g.n, "seed": args.seed, "status": res.trace.status, "branch": res.trace.branch,
           "ell": res.trace.ell, "a_size": res.trace.a_size, "i_star": res.trace.i_star,
           "w_prime": res.trace.w_prime, "verify": verified}
    if isinstance(cert, Homogeneous):
        row.update(kind=cert.hset.kind, size=len(cert.hset))
    elif isinstance(cert, IsoRich):
        row.update(kind="iso_rich", size="")
    _write_csv(args.csv, row)
    return 1 if verified is False else 0


def cmd_verify(args) -> int:
    cert, embedded = parse_certificate(Path(args.cert).read_text())
    if args.infile or args.gen:
        g = _load_graph(args)
    elif embedded is not None:
        g = embedded
    else:
        raise CliError("certificate has no embedded graph; pass --in or --gen")
    ok, report = verify_certificate(g, cert)
    for line in report:
        print(f"# {line}")
    print("VERIFIED" if ok else "REJECTED")
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_json(Path(args.config).read_text())
    else:
        cfg = ExperimentConfig(
            families=args.family or ["gnp:{n}:0.5"],
            sizes=args.n or [64],
            trials=args.trials,
            seed=args.seed,
            c1=args.c1,
            overrides=_overrides(args),
            max_attempts=args.max_attempts,
            evidence_budget=args.evidence_budget,
            pipeline=not args.no_pipeline,
            workers=args.workers,
            output=args.out,
        )
    if args.trials_override is not None:
        cfg.trials = args.trials_override
    if cfg.trials < 0:
        raise CliError("trials must be >= 0")
    if args.write_config:
        Path(args.write_config).write_text(cfg.to_json())
    text = experiment_sweep(cfg)
    out = args.out or cfg.output
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ramsey-induced", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rm", help="exact Rm(G) with a witness")
    _graph_source(p)
    _csv_opt(p)
    p.add_argument("--cap", type=int, default=512)
    p.set_defaults(func=cmd_rm)

    p = sub.add_parser("bipartite", help="exact Bipartite(G)")
    _graph_source(p)
    _csv_opt(p)
    p.add_argument("--cap", type=int, default=16)
    p.set_defaults(func=cmd_bipartite)

    p = sub.add_parser("count-iso", help="exact I(G), or a sampled lower bound")
    _graph_source(p)
    _csv_opt(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--sample", type=int, metavar="K", help="lower bound from K random subsets instead")
    p.add_argument("--cache-dir", help="memo directory (default: $RAMSEY_INDUCED_CACHE)")
    p.set_defaults(func=cmd_count_iso)

    p = sub.add_parser("es-bound", help="Erdős–Szekeres threshold C(r1+r2-2, r1-1)")
    p.add_argument("r1", type=int)
    p.add_argument("r2", type=int)
    p.set_defaults(func=cmd_es_bound)

    p = sub.add_parser("ramsey-extract", help="greedy clique r1 / independent r2")
    _graph_source(p)
    _csv_opt(p)
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.set_defaults(func=cmd_ramsey_extract)

    p = sub.add_parser("blowup", help="blow every node up into m independent copies")
    _graph_source(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("gen", help="write a generated graph as graph6")
    p.add_argument("spec", help=GENERATOR_HELP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("witness", help="random search for a graph with Rm < r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("constants", help="derive pipeline constants")
    _constants_opts(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("pipeline", help="run the dichotomy and print a certificate")
    _graph_source(p)
    _csv_opt(p)
    _constants_opts(p)
    p.add_argument("--max-attempts", type=int, default=64)
    p.add_argument("--evidence-budget", type=int, default=256)
    p.add_argument("--verify", action="store_true", help="re-check the certificate")
    p.add_argument("--trace", action="store_true", help="print the trace")
    p.add_argument("--out", help="write the certificate here")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify", help="check a certificate file against a graph")
    p.add_argument("--cert", required=True)
    p.add_argument("--in", dest="infile")
    p.add_argument("--gen")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV sweep over graph families and seeds")
    p.add_argument("--config", help="JSON experiment config (flags below are ignored)")
    p.add_argument("--family", action="append", help="generator template with {n}, e.g. gnp:{n}:0.5")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--trials-override", type=int, help="replace the config's trial count")
    p.add_argument("--seed", type=int, default=0)
    _constants_opts(p)
    p.add_argument("--max-attempts", type=int, default=64)
    p.add_argument("--evidence-budget", type=int, default=256)
    p.add_argument("--no-pipeline", action="store_true", help="only measure Rm / Bipartite")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--write-config", metavar="PATH", help="save the config record used")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PipelineInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except (CliError, GraphFormatError, EnumerationCapError, SearchCapError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
