"""Command-line interface: generate posets, emit double descriptions, compute
f-vectors by either pipeline, verify the injection/monotonicity claims, and
reproduce the full two-pipeline f-vector table for a given ground-set size.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .errors import BudgetError
from .facelattice import enumerate_faces, f_vector, incidence_matrix
from .normalform import f_vector_normal_form, verify_injection, verify_monotone
from .polytopes import (
    chain_order_hrep,
    chain_polytope_dd,
    order_polytope_dd,
    zero_one_vertices,
)
from .posets import (
    Poset,
    check_tau,
    element_name,
    make_maximal_ranked,
    poset_from_json,
    poset_to_json,
)

DEFAULT_FACE_BUDGET = 5_000_000
DEFAULT_POINT_BUDGET = 1 << 22


@dataclass
class RunConfig:
    command: str
    tau: tuple[int, ...] | None = None
    k: int | None = None
    poset_file: str | None = None
    polytope: str | None = None
    method: str = "both"
    output: str | None = None
    format: str = "csv"
    export_lattice: str | None = None
    table_n: int | None = None
    verify_what: str | None = None
    json_out: str | None = None
    budget_faces: int = DEFAULT_FACE_BUDGET
    budget_points: int = DEFAULT_POINT_BUDGET


class ConfigError(ValueError):
    pass


def _parse_tau(text: str) -> tuple[int, ...]:
    try:
        return check_tau(tuple(int(t) for t in text.split(",")))
    except ValueError as exc:
        raise ConfigError(f"bad tau {text!r}: {exc}") from exc


def _tau_label(tau) -> str:
    return ",".join(map(str, tau))


def _polytope_label(tau, k: int) -> str:
    if k == 0:
        return "order"
    if k == len(tau):
        return "chain"
    return "chain-order"


def _load_poset(cfg: RunConfig) -> Poset:
    with open(cfg.poset_file, "r", encoding="utf-8") as fh:
        return poset_from_json(fh.read())


def _dd_for(cfg: RunConfig, tau, k: int | None, poset: Poset | None):
    """(VRep, HRep, label) for the requested polytope."""
    if poset is not None:
        if cfg.polytope == "chain":
            v, h = chain_polytope_dd(poset)
            return v, h, "chain"
        v, h = order_polytope_dd(poset)
        return v, h, "order"
    h = chain_order_hrep(tau, k)
    if (1 << h.n_vars) > cfg.budget_points:
        raise BudgetError(f"2^{h.n_vars} candidate points exceed --budget-points")
    v = zero_one_vertices(h)
    return v, h, _polytope_label(tau, k)


def _geometric_fvector(cfg: RunConfig, tau, k: int | None, poset: Poset | None):
    v, h, label = _dd_for(cfg, tau, k, poset)
    lattice = enumerate_faces(incidence_matrix(v, h), max_faces=cfg.budget_faces)
    return f_vector(lattice), lattice, label


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_rows(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _export_lattice(path: str, lattice) -> None:
    data = {
        "faces": [
            {"vertices": list(lattice.face_vertices(fid)), "dim": lattice.dims[fid]}
            for fid in range(lattice.n_faces)
        ],
        "covers": [list(edge) for edge in lattice.covers],
        "bottom": lattice.bottom,
        "top": lattice.top,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)


def _fvector_command(cfg: RunConfig) -> int:
    poset = _load_poset(cfg) if cfg.poset_file else None
    tau, k = cfg.tau, cfg.k
    if poset is None:
        if tau is None:
            raise ConfigError("fvector needs --tau or --poset")
        if k is None:
            raise ConfigError("fvector with --tau needs --k")
        label = _polytope_label(tau, k)
    else:
        if cfg.method != "geometric":
            raise ConfigError("--poset input supports only --method geometric")
        label = cfg.polytope or "order"

    geo = norm = None
    lattice = None
    if cfg.method in ("geometric", "both"):
        geo, lattice, label = _geometric_fvector(cfg, tau, k, poset)
    if cfg.method in ("normalform", "both"):
        norm = f_vector_normal_form(tau, k)
    if cfg.method == "both" and geo != norm:
        sys.stderr.write(f"pipeline mismatch: geometric {geo} vs normal form {norm}\n")
        return 1
    fv = geo if geo is not None else norm
    if cfg.export_lattice and lattice is not None:
        _export_lattice(cfg.export_lattice, lattice)
    tau_field = _tau_label(tau) if tau else cfg.poset_file
    k_field = k if k is not None else ""
    if cfg.format == "json":
        _emit(cfg, json.dumps({"tau": tau_field, "k": k_field, "polytope": label, "f": list(fv)}, sort_keys=True) + "\n")
    else:
        _emit(cfg, _csv_rows([[tau_field, k_field, label, *fv]]))
    return 0


def table_taus(n: int) -> list[tuple[int, ...]]:
    """Rank-size rows of the f-vector table: partitions of n with at least
    three ranks and at least two ranks of size >= 2, in lexicographic order."""

    def partitions(total, cap):
        if total == 0:
            yield ()
            return
        for first in range(min(total, cap), 0, -1):
            for rest in partitions(total - first, first):
                yield (first,) + rest

    rows = [
        t
        for t in partitions(n, n)
        if len(t) >= 3 and sum(1 for x in t if x >= 2) >= 2
    ]
    return sorted(rows)


def _table_command(cfg: RunConfig) -> int:
    rows_out: list[list] = []
    status = 0
    for tau in table_taus(cfg.table_n):
        for k in (0, len(tau)):
            label = _polytope_label(tau, k)
            geo = norm = None
            if cfg.method in ("geometric", "both"):
                geo, _, _ = _geometric_fvector(cfg, tau, k, None)
            if cfg.method in ("normalform", "both"):
                norm = f_vector_normal_form(tau, k)
            if cfg.method == "both" and geo != norm:
                sys.stderr.write(f"pipeline mismatch at tau={tau}, k={k}\n")
                status = 1
            fv = geo if geo is not None else norm
            rows_out.append([_tau_label(tau), k, label, *fv])
    if cfg.format == "json":
        payload = [
            {"tau": r[0], "k": r[1], "polytope": r[2], "f": list(r[3:])} for r in rows_out
        ]
        _emit(cfg, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        _emit(cfg, _csv_rows(rows_out))
    return status


def _verify_command(cfg: RunConfig) -> int:
    tau = cfg.tau
    if tau is None:
        raise ConfigError("verify needs --tau")
    lines: list[str] = []
    payload: dict = {"tau": list(tau)}
    ok = True
    if cfg.verify_what == "injectivity":
        ks = [cfg.k] if cfg.k is not None else list(range(len(tau)))
        reports = []
        for k in ks:
            rep = verify_injection(tau, k)
            reports.append(rep)
            lines.append(
                f"cut {k} -> {k + 1}: injective={rep.injective} "
                f"codim_preserved={rep.codim_preserved} failures={len(rep.failures)}"
            )
            for c in sorted(rep.per_codim_counts_src):
                lines.append(
                    f"  codim {c}: {rep.per_codim_counts_src[c]} -> "
                    f"{rep.per_codim_counts_img.get(c, 0)} available"
                )
            ok = ok and rep.ok
        payload["reports"] = [
            {
                "k": rep.k,
                "injective": rep.injective,
                "codim_preserved": rep.codim_preserved,
                "per_codim_src": rep.per_codim_counts_src,
                "per_codim_img": rep.per_codim_counts_img,
                "failures": rep.failures,
            }
            for rep in reports
        ]
    else:  # monotone
        rep = verify_monotone(tau)
        for k in sorted(rep.f_vectors):
            lines.append(f"k={k}: f = {rep.f_vectors[k]}")
        lines.append(f"monotone={rep.monotone}")
        lines.extend(rep.failures)
        ok = rep.monotone
        payload["f_vectors"] = {str(k): list(v) for k, v in rep.f_vectors.items()}
        payload["monotone"] = rep.monotone
        payload["failures"] = rep.failures
    payload["ok"] = ok
    _emit(cfg, "\n".join(lines) + "\n")
    if cfg.json_out:
        with open(cfg.json_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    return 0 if ok else 1


def _dd_command(cfg: RunConfig) -> int:
    poset = _load_poset(cfg) if cfg.poset_file else None
    if poset is None and cfg.tau is None:
        raise ConfigError("dd needs --tau or --poset")
    if cfg.polytope == "chain-order":
        if cfg.tau is None or cfg.k is None:
            raise ConfigError("chain-order needs --tau and --k")
        v, h, _ = _dd_for(cfg, cfg.tau, cfg.k, None)
    else:
        if poset is None:
            poset = make_maximal_ranked(cfg.tau)
        v, h = (chain_polytope_dd if cfg.polytope == "chain" else order_polytope_dd)(poset)
    data = {
        "vars": [element_name(e) for e in h.var_names],
        "ineqs": [{"coeffs": list(c), "rhs": r} for c, r in h.ineqs],
        "eqs": [{"coeffs": list(c), "rhs": r} for c, r in h.eqs],
        "vertices": [list(vert) for vert in v.vertices],
    }
    _emit(cfg, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return 0


def _gen_command(cfg: RunConfig) -> int:
    if cfg.tau is None:
        raise ConfigError("gen needs --tau")
    _emit(cfg, poset_to_json(make_maximal_ranked(cfg.tau)) + "\n")
    return 0


def run(cfg: RunConfig) -> int:
    """Dispatch a validated configuration; returns the process exit code."""
    handlers = {
        "gen": _gen_command,
        "dd": _dd_command,
        "fvector": _fvector_command,
        "verify": _verify_command,
        "table": _table_command,
    }
    if cfg.command not in handlers:
        raise ConfigError(f"unknown command {cfg.command!r}")
    return handlers[cfg.command](cfg)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainorder",
        description="Exact f-vectors of order, chain, and chain-order polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tau_required=False):
        p.add_argument("--tau", type=str, required=tau_required, help="comma-separated rank sizes, e.g. 5,2,1,4,2,3")
        p.add_argument("--output", type=str, default=None)

    g = sub.add_parser("gen", help="write a ranked poset as JSON")
    common(g, tau_required=True)

    d = sub.add_parser("dd", help="double description (vertices and inequalities)")
    common(d)
    d.add_argument("--polytope", choices=["order", "chain", "chain-order"], default="order")
    d.add_argument("--k", type=int, default=None)
    d.add_argument("--poset", dest="poset_file", type=str, default=None)
    d.add_argument("--budget-points", type=int, default=DEFAULT_POINT_BUDGET)

    f = sub.add_parser("fvector", help="f-vector by one or both pipelines")
    common(f)
    f.add_argument("--k", type=int, default=None)
    f.add_argument("--poset", dest="poset_file", type=str, default=None)
    f.add_argument("--polytope", choices=["order", "chain"], default=None, help="for --poset input")
    f.add_argument("--method", choices=["geometric", "normalform", "both"], default="both")
    f.add_argument("--format", choices=["csv", "json"], default="csv")
    f.add_argument("--export-lattice", dest="export_lattice", type=str, default=None)
    f.add_argument("--budget-faces", type=int, default=DEFAULT_FACE_BUDGET)
    f.add_argument("--budget-points", type=int, default=DEFAULT_POINT_BUDGET)

    v = sub.add_parser("verify", help="machine-check the injection or monotonicity")
    v.add_argument("what", choices=["injectivity", "monotone"])
    common(v, tau_required=True)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--json", dest="json_out", type=str, default=None)

    t = sub.add_parser("table", help="order and chain f-vectors for all table rows of size n")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--method", choices=["geometric", "normalform", "both"], default="both")
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.add_argument("--output", type=str, default=None)
    t.add_argument("--budget-faces", type=int, default=DEFAULT_FACE_BUDGET)
    t.add_argument("--budget-points", type=int, default=DEFAULT_POINT_BUDGET)
    return parser


def config_from_args(argv=None) -> RunConfig:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    if getattr(args, "tau", None):
        cfg.tau = _parse_tau(args.tau)
    for attr in (
        "k",
        "poset_file",
        "polytope",
        "method",
        "output",
        "format",
        "export_lattice",
        "json_out",
        "budget_faces",
        "budget_points",
    ):
        if hasattr(args, attr) and getattr(args, attr) is not None:
            setattr(cfg, attr, getattr(args, attr))
    if args.command == "verify":
        cfg.verify_what = args.what
    if args.command == "table":
        cfg.table_n = args.n
    if cfg.tau is not None and cfg.k is not None and not 0 <= cfg.k <= len(cfg.tau):
        raise ConfigError(f"k={cfg.k} out of range for tau={cfg.tau}")
    return cfg


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BudgetError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
