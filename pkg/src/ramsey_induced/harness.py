"""Graph sources, experiment configs and the CSV sweep."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .constructions import blowup
from .graph import (
    Graph,
    GraphFormatError,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph6_decode,
    parse_graphs,
    path_graph,
    random_graph,
)
from .pipeline import derive_constants, run_pipeline, verify_certificate
from .pipeline.certificate import Homogeneous, IsoRich
from .ramsey import DEFAULT_BIPARTITE_CAP, DEFAULT_RM_CAP, alon_hajnal_log2, bipartite_rm, rm_number

CACHE_ENV = "RAMSEY_INDUCED_CACHE"

GENERATOR_HELP = (
    "gnp:N:P | empty:N | complete:N | cycle:N | path:N | kbip:A:B | "
    "blowup:K:M (C_K blown up by M) | c5blowup:N (C_5 blown up by N//5) | g6:STRING"
)


def generate(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a generator spec such as ``gnp:64:0.5``; see GENERATOR_HELP."""
    name, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "g6":
            return graph6_decode(rest)
        if name == "gnp" and len(args) == 2:
            return random_graph(int(args[0]), float(args[1]), seed)
        if name in ("empty", "complete", "cycle", "path") and len(args) == 1:
            make = {"empty": empty_graph, "complete": complete_graph, "cycle": cycle_graph, "path": path_graph}[name]
            return make(int(args[0]))
        if name == "kbip" and len(args) == 2:
            return complete_bipartite(int(args[0]), int(args[1]))
        if name == "blowup" and len(args) == 2:
            return blowup(cycle_graph(int(args[0])), int(args[1]))
        if name == "c5blowup" and len(args) == 1:
            return blowup(cycle_graph(5), max(1, int(args[0]) // 5))
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown generator spec {spec!r}; expected {GENERATOR_HELP}")


def read_graphs(path: str) -> list[Graph]:
    import sys

    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graphs(text)


@dataclass
class ExperimentConfig:
    """Everything a sweep depends on; the CSV is a pure function of this record.

    Row ``t`` of each (family, size) uses ``seed + t`` both to generate the
    graph and to seed the pipeline.
    """

    command: str = "sweep"
    families: list[str] = field(default_factory=lambda: ["gnp:{n}:0.5"])
    sizes: list[int] = field(default_factory=lambda: [64])
    trials: int = 10
    seed: int = 0
    c1: str = "1"
    overrides: dict[str, Any] = field(default_factory=dict)
    max_attempts: int = 64
    evidence_budget: int = 256
    rm_cap: int = DEFAULT_RM_CAP
    bipartite_cap: int = DEFAULT_BIPARTITE_CAP
    pipeline: bool = True
    workers: int = 1
    output: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        if cfg.trials < 0:
            raise ValueError("trials must be >= 0")
        return cfg


COLUMNS = [
    "row", "family", "n", "seed", "rm", "bipartite", "ell", "a_size", "i_star",
    "w_prime", "branch", "cert_kind", "cert_size", "cert_log2_bound",
    "alon_hajnal_log2", "verify", "status",
]


def _clean(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value).replace(",", ";").replace("\n", " ")


def _row_jobs(cfg: ExperimentConfig) -> list[tuple[int, str, int, int]]:
    jobs = []
    row = 0
    for fam in cfg.families:
        for n in cfg.sizes:
            for t in range(cfg.trials):
                jobs.append((row, fam, n, cfg.seed + t))
                row += 1
    return jobs


def sweep_row(cfg: ExperimentConfig, row: int, family: str, size: int, seed: int) -> dict[str, Any]:
    out: dict[str, Any] = {"row": row, "family": family.format(n=size), "seed": seed}
    try:
        g = generate(family.format(n=size), seed)
        out["n"] = g.n
        rm = None
        if g.n <= cfg.rm_cap:
            rm, _ = rm_number(g, cfg.rm_cap)
            out["rm"] = rm
            if rm >= 1:
                out["alon_hajnal_log2"] = repr(alon_hajnal_log2(g.n, rm))
        if g.n <= cfg.bipartite_cap:
            out["bipartite"] = bipartite_rm(g, cfg.bipartite_cap)[0]
        if cfg.pipeline and g.n >= 4:
            c = derive_constants(cfg.c1, cfg.overrides or None)
            res = run_pipeline(g, c, seed, cfg.max_attempts, cfg.evidence_budget)
            tr = res.trace
            out.update(ell=tr.ell, a_size=tr.a_size, i_star=tr.i_star, w_prime=tr.w_prime, branch=tr.branch)
            cert = res.certificate
            if cert is None:
                out["cert_kind"] = "none"
            else:
                ok, _ = verify_certificate(g, cert)
                out["verify"] = ok
                if isinstance(cert, IsoRich):
                    out["cert_kind"] = "iso_rich"
                    out["cert_log2_bound"] = repr(cert.log2_bound)
                elif isinstance(cert, Homogeneous):
                    out["cert_kind"] = cert.hset.kind
                    out["cert_size"] = len(cert.hset)
                    if cert.iso is not None:
                        out["cert_log2_bound"] = repr(cert.iso.log2_bound)
            out["status"] = tr.status
        else:
            out["status"] = "measured"
    except Exception as exc:  # a failing row is recorded, never fatal to the sweep
        out["status"] = f"error:{type(exc).__name__}:{exc}"
    return out


def _run_job(args: tuple[ExperimentConfig, tuple[int, str, int, int]]) -> dict[str, Any]:
    cfg, job = args
    return sweep_row(cfg, *job)


def experiment_sweep(cfg: ExperimentConfig) -> str:
    """Run the sweep and return the CSV text (rows in row-index order)."""
    jobs = _row_jobs(cfg)
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_run_job, [(cfg, j) for j in jobs]))
    else:
        rows = [sweep_row(cfg, *j) for j in jobs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_clean(r.get(k)) for k in COLUMNS])
    return buf.getvalue()


def default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV) or None


class IsoCountCache:
    """On-disk memo of exact I(G) values keyed by graph6."""

    def __init__(self, directory: str):
        self.path = Path(directory) / "iso_counts.json"

    def _load(self) -> dict[str, int]:
        if self.path.exists():
            return json.loads(self.path.read_text())
        return {}

    def get(self, key: str) -> int | None:
        return self._load().get(key)

    def put(self, key: str, value: int) -> None:
        data = self._load()
        data[key] = value
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(data, sort_keys=True))
