"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 on data or runtime errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .baselines import cfg, louvain
from .bench import (
    fig2_bundle,
    fig4_bundle,
    fig5_bundle,
    fig6_bundle,
    fig7_bundle,
    fig8_bundle,
    sweep_configs,
    table1_bundle,
)
from .detector import DetectorConfig, detect
from .dynamics import DynParams
from .generators import PlantedSpec, planted_partition
from .io import (
    ParseError,
    read_edge_list,
    read_gml_subset,
    read_lfr_community,
    write_csv,
    write_edge_list,
    write_partition,
    write_trace_csv,
)
from .metrics import adjusted_rand_index, modularity, nmi


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _stop_rule(text: str) -> tuple[str, int]:
    """Parse 'exhaust', 'patience' or 'patience:W'."""
    if text == "exhaust":
        return ("exhaust", 5)
    if text == "patience":
        return ("patience", 5)
    if text.startswith("patience:"):
        try:
            window = int(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad patience window in {text!r}")
        return ("patience", window)
    raise argparse.ArgumentTypeError(
        f"stop rule must be 'exhaust' or 'patience[:W]', got {text!r}"
    )


def _load_graph(path: str, indexing: str):
    """Read a graph file; .gml files may carry labels and ground truth."""
    if Path(path).suffix.lower() == ".gml":
        dataset = read_gml_subset(path)
        return dataset.graph, dataset.truth
    return read_edge_list(path, indexing=indexing), None


def _fmt(value) -> str:
    return repr(float(value)) if isinstance(value, float) else str(value)


def _print_kv(**pairs) -> None:
    print(" ".join(f"{key}={_fmt(value)}" for key, value in pairs.items() if value is not None))


# -- subcommands -----------------------------------------------------------------


def _cmd_generate(args) -> int:
    spec = PlantedSpec(tuple(args.sizes), k_des=args.kdes, p_in=args.pin)
    g, truth = planted_partition(spec, args.seed)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    edges_path = prefix.with_suffix(".edges")
    truth_path = prefix.with_suffix(".truth")
    write_edge_list(edges_path, g)
    write_partition(truth_path, truth)
    _print_kv(n=g.n, m=g.m, edges=str(edges_path), truth=str(truth_path))
    return 0


def _detector_config(args, seed) -> DetectorConfig:
    dyn = DynParams(
        alpha=args.alpha,
        d=args.dims,
        t_max=args.tmax,
        conv_tol=args.conv_tol,
        floor_tol=args.floor_tol,
    )
    stop, patience = args.stop
    count = args.remove_count
    fraction = args.remove_frac
    if count is None and fraction is None:
        count = 1
    return DetectorConfig(
        dyn=dyn,
        runs_per_round=args.runs,
        remove_count=count,
        remove_fraction=fraction,
        stop=stop,
        patience=patience,
        seed=seed,
    )


def _read_truth(args, gml_truth):
    if args.truth is not None:
        return read_lfr_community(args.truth)
    return gml_truth


def _cmd_detect(args) -> int:
    g, gml_truth = _load_graph(args.graph, args.indexing)
    truth = _read_truth(args, gml_truth)
    config = _detector_config(args, args.seed)
    best, trace = detect(g, config, truth)
    info = {
        "rounds": len(trace.rows),
        "best_round": trace.best_round,
        "best_q": trace.rows[trace.best_round - 1].q if trace.best_round else 0.0,
        "n_communities": best.n_communities,
    }
    if truth is not None:
        info["ari"] = adjusted_rand_index(best, truth)
        info["nmi"] = nmi(best, truth)
    if args.out is not None:
        prefix = Path(args.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        trace_path = prefix.parent / (prefix.name + ".trace.csv")
        part_path = prefix.parent / (prefix.name + ".part")
        write_trace_csv(trace_path, trace, kind="trace")
        write_partition(part_path, best)
        info["trace"] = str(trace_path)
        info["partition"] = str(part_path)
    _print_kv(**info)
    return 0


def _cmd_baseline(args) -> int:
    g, gml_truth = _load_graph(args.graph, args.indexing)
    truth = _read_truth(args, gml_truth)
    if args.algo == "cfg":
        part, q = cfg(g)
    else:
        part, q = louvain(g, args.seed)
    info = {"algo": args.algo, "q": q, "n_communities": part.n_communities}
    if truth is not None:
        info["ari"] = adjusted_rand_index(part, truth)
        info["nmi"] = nmi(part, truth)
    if args.out is not None:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        write_partition(args.out, part)
        info["partition"] = args.out
    _print_kv(**info)
    return 0


def _cmd_evaluate(args) -> int:
    pred = read_lfr_community(args.pred)
    truth = read_lfr_community(args.truth)
    info = {
        "ari": adjusted_rand_index(pred, truth),
        "nmi": nmi(pred, truth),
    }
    if args.graph is not None:
        g, _ = _load_graph(args.graph, args.indexing)
        info["modularity"] = modularity(g, pred)
    _print_kv(**info)
    return 0


def _cmd_sweep(args) -> int:
    g, gml_truth = _load_graph(args.graph, args.indexing)
    truth = _read_truth(args, gml_truth)
    if not args.counts and not args.fracs:
        raise ValueError("sweep needs --counts and/or --fracs")
    stop, patience = args.stop
    rows = sweep_configs(
        g,
        truth,
        counts=args.counts,
        fractions=args.fracs,
        t_grid=args.tmax_grid,
        runs=args.runs,
        alpha=args.alpha,
        d=args.dims,
        stop=stop,
        patience=patience,
        seed=args.seed,
        jobs=args.jobs,
        label=Path(args.graph).stem,
    )
    if args.out is not None:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        write_csv(args.out, rows, kind="summary")
        print(args.out)
    else:
        for row in rows:
            _print_kv(**row)
    best = max(rows, key=lambda r: r["best_q"])
    _print_kv(
        best_q=best["best_q"],
        remove_mode=best["remove_mode"],
        remove_param=best["remove_param"],
        t_max=best["t_max"],
    )
    return 0


def _cmd_reproduce(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = args.name
    if name == "fig2":
        paths = fig2_bundle(out_dir, args.seed, jobs=args.jobs)
    elif name == "fig4":
        paths = fig4_bundle(out_dir, args.seed, jobs=args.jobs)
    elif name == "fig6":
        paths = fig6_bundle(out_dir, args.seed, jobs=args.jobs)
    elif name == "fig5":
        paths = fig5_bundle(out_dir, args.seed, trials=args.trials or 50, jobs=args.jobs)
    elif name == "fig7":
        paths = fig7_bundle(out_dir, args.seed, trials=args.trials or 50, jobs=args.jobs)
    elif name == "fig8":
        lfr_dir = args.lfr_dir or os.environ.get("FLOCKCUT_LFR_DIR")
        if not lfr_dir:
            raise ValueError(
                "fig8 needs --lfr-dir (or FLOCKCUT_LFR_DIR) pointing at "
                "mu*/trial*/network.dat fixtures"
            )
        paths = fig8_bundle(out_dir, args.seed, lfr_dir, trials=args.trials,
                            mus=args.mus, jobs=args.jobs)
    else:
        data_dir = args.data or os.environ.get("FLOCKCUT_DATA_DIR")
        if not data_dir:
            raise ValueError("table1 needs --data (or FLOCKCUT_DATA_DIR) with .gml datasets")
        paths = table1_bundle(out_dir, args.seed, data_dir, jobs=args.jobs)
    for path in paths:
        print(path)
    return 0


# -- parser ----------------------------------------------------------------------


def _add_graph_arg(sub) -> None:
    sub.add_argument("graph", help="edge-list file (or .gml)")
    sub.add_argument("--indexing", choices=("zero", "one"), default="zero",
                     help="vertex indexing of the edge list (default zero)")


def _add_dyn_args(sub) -> None:
    sub.add_argument("--alpha", type=float, default=0.1, help="neighbor weight in (0, 0.5)")
    sub.add_argument("--dims", type=int, default=3, help="heading dimension (default 3)")
    sub.add_argument("--tmax", type=int, default=100, help="steps per run (default 100)")
    sub.add_argument("--conv-tol", type=float, default=0.0,
                     help="stop a run when max heading change drops below this")
    sub.add_argument("--floor-tol", type=float, default=1e-12,
                     help="stop a run when mean edge misalignment drops below this")
    sub.add_argument("--runs", type=int, default=10, help="runs aggregated per round")


def build_parser() -> _Parser:
    parser = _Parser(prog="flockcut",
                     description="Community detection by misaligned-edge removal.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = subs.add_parser("generate", help="write a planted-partition benchmark graph")
    gen.add_argument("--sizes", type=_int_list, required=True,
                     help="comma-separated community sizes, e.g. 200,200,200,200")
    gen.add_argument("--kdes", type=int, default=10,
                     help="even desired average degree (default 10)")
    gen.add_argument("--pin", type=float, default=0.66,
                     help="probability a drawn edge stays inside the community")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix (.edges/.truth)")
    gen.set_defaults(func=_cmd_generate)

    det = subs.add_parser("detect", help="detect communities on a graph file")
    _add_graph_arg(det)
    _add_dyn_args(det)
    group = det.add_mutually_exclusive_group()
    group.add_argument("--remove-count", type=int, default=None,
                       help="edges removed per round (default 1)")
    group.add_argument("--remove-frac", type=float, default=None,
                       help="fraction of current edges removed per round")
    det.add_argument("--stop", type=_stop_rule, default=("patience", 5),
                     help="'exhaust' or 'patience[:W]' (default patience:5)")
    det.add_argument("--seed", type=int, default=0)
    det.add_argument("--truth", default=None,
                     help="ground-truth partition file ('vertex label', one-indexed)")
    det.add_argument("--out", default=None, help="output prefix (.trace.csv/.part)")
    det.set_defaults(func=_cmd_detect)

    base = subs.add_parser("baseline", help="run a reference detector")
    _add_graph_arg(base)
    base.add_argument("--algo", choices=("cfg", "louvain"), required=True)
    base.add_argument("--seed", type=int, default=0)
    base.add_argument("--truth", default=None)
    base.add_argument("--out", default=None, help="partition output file")
    base.set_defaults(func=_cmd_baseline)

    ev = subs.add_parser("evaluate", help="score a partition file against ground truth")
    ev.add_argument("pred", help="predicted partition ('vertex label', one-indexed)")
    ev.add_argument("truth", help="ground-truth partition in the same format")
    ev.add_argument("--graph", default=None, help="graph file for modularity")
    ev.add_argument("--indexing", choices=("zero", "one"), default="zero")
    ev.set_defaults(func=_cmd_evaluate)

    sw = subs.add_parser("sweep", help="grid-search removal settings for best modularity")
    _add_graph_arg(sw)
    sw.add_argument("--counts", type=_int_list, default=(),
                    help="comma-separated per-round removal counts")
    sw.add_argument("--fracs", type=_float_list, default=(),
                    help="comma-separated per-round removal fractions")
    sw.add_argument("--tmax-grid", type=_int_list, default=(100,),
                    help="comma-separated step caps (default 100)")
    sw.add_argument("--alpha", type=float, default=0.1)
    sw.add_argument("--dims", type=int, default=3)
    sw.add_argument("--runs", type=int, default=10)
    sw.add_argument("--stop", type=_stop_rule, default=("exhaust", 5),
                    help="'exhaust' (default) or 'patience[:W]'")
    sw.add_argument("--truth", default=None)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--out", default=None, help="summary CSV path")
    sw.set_defaults(func=_cmd_sweep)

    rep = subs.add_parser("reproduce", help="rebuild a published result bundle")
    rep.add_argument("name", choices=("fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "table1"))
    rep.add_argument("--out", required=True, help="output directory for bundle CSVs")
    rep.add_argument("--seed", type=int, required=True,
                     help="master seed (results are deterministic given it)")
    rep.add_argument("--trials", type=int, default=None,
                     help="trial count override (fig5/fig7 default 50)")
    rep.add_argument("--mus", type=_float_list, default=None,
                     help="fig8: restrict to these mixing values")
    rep.add_argument("--data", default=None, help="table1: directory with .gml datasets")
    rep.add_argument("--lfr-dir", default=None, help="fig8: directory with LFR fixtures")
    rep.add_argument("--jobs", type=int, default=1)
    rep.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"flockcut: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"flockcut: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
