"""Benchmark protocols behind `flockcut sweep` and `flockcut reproduce`.

Every bundle writes schema-versioned CSVs (kind=trace / misalign / boxes /
nmi_mu / summary) that the plotting package renders without recomputing
anything. All protocols are deterministic given the master seed; --jobs
only distributes independently seeded work items, so the output is
identical for any job count.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .baselines import cfg, louvain
from .detector import DetectorConfig, detect
from .dynamics import DynParams, _as_seedseq, init_state, misalignment, step
from .generators import PlantedSpec, planted_partition
from .graph import Graph, Partition
from .io import Dataset, read_edge_list, read_gml_subset, read_lfr_community, write_csv, write_trace_csv
from .metrics import adjusted_rand_index, nmi

BALANCED = PlantedSpec((200, 200, 200, 200), k_des=10, p_in=0.66)
UNBALANCED = PlantedSpec((800, 400, 200, 100), k_des=10, p_in=0.66)
BIG = PlantedSpec((2000, 2000, 2000, 2000), k_des=10, p_in=0.66)
DENSE = PlantedSpec((200, 200, 200, 200), k_des=20, p_in=0.66)

TABLE1_DATASETS = ("karate", "dolphins", "football", "polbooks")
TABLE1_FRACTIONS = tuple(f / 100 for f in range(1, 11))
TABLE1_T_GRID = (30, 40, 50, 60, 70)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- misalignment evolution ----------------------------------------------------


def misalignment_evolution(
    g: Graph,
    truth: Partition,
    params: DynParams,
    n_runs: int,
    seed=0,
    network: str = "main",
) -> list[dict]:
    """Mean intra/inter/overall edge misalignment at every step, averaged
    over independently seeded runs evolved to params.t_max (no early stop).
    """
    eu, ev = g.endpoints
    intra_mask = truth.labels[eu] == truth.labels[ev]
    inter_mask = ~intra_mask
    if not intra_mask.any() or not inter_mask.any():
        raise ValueError("evolution protocol needs both intra and inter edges")
    t_len = params.t_max + 1
    sums = np.zeros((3, t_len))
    seeds = _as_seedseq(seed).spawn(n_runs)
    for child in seeds:
        state = init_state(g, params.d, child)
        for t in range(t_len):
            if t > 0:
                state = step(g, state, params.alpha)
            values = misalignment(g, state).values
            sums[0, t] += values[intra_mask].mean()
            sums[1, t] += values[inter_mask].mean()
            sums[2, t] += values.mean()
    means = sums / n_runs
    rows = []
    for t in range(t_len):
        intra, inter, overall = means[0, t], means[1, t], means[2, t]
        rows.append(
            {
                "network": network,
                "t": t,
                "mean_intra": float(intra),
                "mean_inter": float(inter),
                "mean_all": float(overall),
                "ratio": float(inter / intra) if intra > 0 else float("inf"),
            }
        )
    return rows


# -- sweep engine ---------------------------------------------------------------


def sweep_configs(
    g: Graph,
    truth: Partition | None,
    *,
    counts: tuple[int, ...] = (),
    fractions: tuple[float, ...] = (),
    t_grid: tuple[int, ...],
    runs: int,
    alpha: float,
    d: int,
    stop: str,
    patience: int,
    seed,
    jobs: int = 1,
    label: str = "",
) -> list[dict]:
    """Run `detect` over a grid of removal settings and iteration caps."""
    modes = [("count", c) for c in counts] + [("fraction", f) for f in fractions]
    if not modes:
        raise ValueError("sweep needs at least one removal setting")
    master = _as_seedseq(seed)
    tasks = []
    for mode, value in modes:
        for t_max in t_grid:
            tasks.append((g, truth, mode, value, int(t_max), runs, alpha, d,
                          stop, patience, master.spawn(1)[0], label))
    results = _run_tasks(_sweep_task, tasks, jobs)
    return list(results)


def _sweep_task(args) -> dict:
    (g, truth, mode, value, t_max, runs, alpha, d, stop, patience, seed, label) = args
    dyn = DynParams(alpha=alpha, d=d, t_max=t_max)
    cfg_kwargs = dict(
        dyn=dyn, runs_per_round=runs, stop=stop, patience=patience, seed=seed
    )
    if mode == "count":
        config = DetectorConfig(remove_count=int(value), remove_fraction=None, **cfg_kwargs)
    else:
        config = DetectorConfig(remove_count=None, remove_fraction=float(value), **cfg_kwargs)
    best, trace = detect(g, config, truth)
    row = {
        "dataset": label,
        "remove_mode": mode,
        "remove_param": value,
        "t_max": t_max,
        "best_q": trace.rows[trace.best_round - 1].q if trace.best_round else None,
        "best_round": trace.best_round,
        "n_rounds": len(trace.rows),
        "n_communities": best.n_communities,
    }
    if truth is not None:
        row["ari"] = adjusted_rand_index(best, truth)
        row["nmi"] = nmi(best, truth)
    return row


def _run_tasks(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# -- reproduce bundles -----------------------------------------------------------


def fig2_bundle(out_dir, seed, jobs: int = 1) -> list[Path]:
    """Full modularity-vs-round trace on one balanced network, with
    reference scores from both baseline detectors."""
    out_dir = Path(out_dir)
    master = _as_seedseq(seed)
    g, truth = planted_partition(BALANCED, master.spawn(1)[0])
    _progress(f"fig2: balanced network n={g.n} m={g.m}, exhausting one edge per round")
    config = DetectorConfig(
        dyn=DynParams(alpha=0.1, d=3, t_max=100),
        runs_per_round=10,
        remove_count=1,
        stop="exhaust",
        seed=master.spawn(1)[0],
    )
    _, trace = detect(g, config, truth)
    _, cfg_q = cfg(g)
    _, louvain_q = louvain(g, master.spawn(1)[0])
    path = out_dir / "fig2_trace.csv"
    write_trace_csv(path, trace, baselines={"cfg_q": cfg_q, "louvain_q": louvain_q},
                    kind="trace")
    return [path]


def _evolution_bundle(name: str, networks, out_dir, seed) -> list[Path]:
    out_dir = Path(out_dir)
    master = _as_seedseq(seed)
    rows: list[dict] = []
    for label, spec, params, n_runs in networks:
        g, truth = planted_partition(spec, master.spawn(1)[0])
        _progress(f"{name}: evolving '{label}' network n={g.n} m={g.m} to t={params.t_max}")
        rows += misalignment_evolution(g, truth, params, n_runs, master.spawn(1)[0],
                                       network=label)
    path = out_dir / f"{name}_misalign.csv"
    write_csv(path, rows, kind="misalign")
    return [path]


def fig4_bundle(out_dir, seed, jobs: int = 1) -> list[Path]:
    """Intra vs inter misalignment evolution on the balanced network."""
    params = DynParams(alpha=0.1, d=3, t_max=1000, floor_tol=0.0)
    return _evolution_bundle("fig4", [("main", BALANCED, params, 10)], out_dir, seed)


def fig6_bundle(out_dir, seed, jobs: int = 1) -> list[Path]:
    """Same evolution protocol on the big and the dense variants."""
    params = DynParams(alpha=0.1, d=3, t_max=1000, floor_tol=0.0)
    return _evolution_bundle(
        "fig6", [("big", BIG, params, 10), ("dense", DENSE, params, 10)], out_dir, seed
    )


def _boxes_task(args) -> list[dict]:
    """One benchmark trial: every removal setting plus both baselines.

    Emits one row per (method, round) so downstream plots can select the
    best-modularity round per trial without recomputing anything;
    baselines contribute a single round-1 row.
    """
    (spec, counts, t_max, runs, trial, seed) = args
    master = _as_seedseq(seed)
    g, truth = planted_partition(spec, master.spawn(1)[0])
    rows = []
    for count in counts:
        config = DetectorConfig(
            dyn=DynParams(alpha=0.1, d=3, t_max=t_max),
            runs_per_round=runs,
            remove_count=count,
            stop="exhaust",
            seed=master.spawn(1)[0],
        )
        _, trace = detect(g, config, truth)
        for record in trace.rows:
            rows.append({
                "trial": trial,
                "method": f"remove_{count}",
                "round": record.round,
                "q": record.q,
                "ari": record.ari,
            })
    part, q = cfg(g)
    rows.append({"trial": trial, "method": "cfg", "round": 1, "q": q,
                 "ari": adjusted_rand_index(part, truth)})
    part, q = louvain(g, master.spawn(1)[0])
    rows.append({"trial": trial, "method": "louvain", "round": 1, "q": q,
                 "ari": adjusted_rand_index(part, truth)})
    return rows


def _boxes_bundle(name, spec, counts, t_max, out_dir, seed, trials, jobs) -> list[Path]:
    out_dir = Path(out_dir)
    master = _as_seedseq(seed)
    tasks = [(spec, counts, t_max, 10, trial, master.spawn(1)[0])
             for trial in range(trials)]
    _progress(f"{name}: {trials} trials, removal counts {counts}, t_max={t_max}")
    rows: list[dict] = []
    for i, chunk in enumerate(_run_tasks(_boxes_task, tasks, jobs)):
        rows += chunk
        _progress(f"{name}: trial {i + 1}/{trials} done")
    path = out_dir / f"{name}_boxes.csv"
    write_csv(path, rows, kind="boxes")
    return [path]


def fig5_bundle(out_dir, seed, trials: int = 50, jobs: int = 1) -> list[Path]:
    """Best-Q and ARI box-plot data on balanced networks, three removal
    counts per round against both baselines."""
    return _boxes_bundle("fig5", BALANCED, (1, 40, 80), 100, out_dir, seed, trials, jobs)


def fig7_bundle(out_dir, seed, trials: int = 50, jobs: int = 1) -> list[Path]:
    """Unbalanced-community variant of the box-plot protocol."""
    return _boxes_bundle("fig7", UNBALANCED, (10, 40, 80), 250, out_dir, seed, trials, jobs)


def lfr_fixtures(lfr_dir) -> list[tuple[float, int, Path, Path]]:
    """Discover (mu, trial, network.dat, community.dat) under lfr_dir.

    Expected layout: lfr_dir/mu<value>/trial<k>/network.dat + community.dat.
    """
    lfr_dir = Path(lfr_dir)
    found = []
    for mu_dir in sorted(lfr_dir.glob("mu*")):
        try:
            mu = float(mu_dir.name[2:])
        except ValueError:
            continue
        for trial_dir in sorted(mu_dir.glob("trial*")):
            try:
                trial = int(trial_dir.name[5:])
            except ValueError:
                continue
            net, com = trial_dir / "network.dat", trial_dir / "community.dat"
            if net.is_file() and com.is_file():
                found.append((mu, trial, net, com))
    return found


def _fig8_task(args) -> list[dict]:
    (mu, trial, net_path, com_path, seed) = args
    master = _as_seedseq(seed)
    g = read_edge_list(net_path, indexing="one")
    truth = read_lfr_community(com_path)
    config = DetectorConfig(
        dyn=DynParams(alpha=0.05, d=3, t_max=5000, conv_tol=1e-3),
        runs_per_round=1,
        remove_count=1,
        stop="patience",
        patience=5,
        seed=master.spawn(1)[0],
    )
    best, _ = detect(g, config)
    rows = [{"mu": mu, "trial": trial, "method": "detect", "nmi": nmi(best, truth)}]
    part, _ = cfg(g)
    rows.append({"mu": mu, "trial": trial, "method": "cfg", "nmi": nmi(part, truth)})
    part, _ = louvain(g, master.spawn(1)[0])
    rows.append({"mu": mu, "trial": trial, "method": "louvain", "nmi": nmi(part, truth)})
    return rows


def fig8_bundle(out_dir, seed, lfr_dir, trials: int | None = None,
                mus: tuple[float, ...] | None = None, jobs: int = 1) -> list[Path]:
    """NMI against planted communities on externally generated LFR files."""
    out_dir = Path(out_dir)
    fixtures = lfr_fixtures(lfr_dir)
    if mus is not None:
        wanted = set(round(mu, 6) for mu in mus)
        fixtures = [f for f in fixtures if round(f[0], 6) in wanted]
    if trials is not None:
        fixtures = [f for f in fixtures if f[1] < trials]
    if not fixtures:
        raise ValueError(f"no LFR fixtures found under {lfr_dir}")
    master = _as_seedseq(seed)
    tasks = [(mu, trial, net, com, master.spawn(1)[0]) for mu, trial, net, com in fixtures]
    _progress(f"fig8: {len(tasks)} LFR networks")
    rows: list[dict] = []
    for i, chunk in enumerate(_run_tasks(_fig8_task, tasks, jobs)):
        rows += chunk
        _progress(f"fig8: network {i + 1}/{len(tasks)} done")
    path = out_dir / "fig8_nmi.csv"
    write_csv(path, rows, kind="nmi_mu")
    return [path]


def load_dataset(data_dir, name: str) -> Dataset:
    path = Path(data_dir) / f"{name}.gml"
    if not path.is_file():
        raise FileNotFoundError(f"dataset file not found: {path}")
    return read_gml_subset(path)


def table1_bundle(out_dir, seed, data_dir, jobs: int = 1) -> list[Path]:
    """Best-Q sweep (removal fractions 1-10%, t_max 30-70, 30 runs/round)
    over whichever classic datasets are present in data_dir."""
    out_dir = Path(out_dir)
    master = _as_seedseq(seed)
    config_rows: list[dict] = []
    best_rows: list[dict] = []
    missing: list[str] = []
    for name in TABLE1_DATASETS:
        try:
            dataset = load_dataset(data_dir, name)
        except FileNotFoundError:
            missing.append(name)
            continue
        g = dataset.graph
        _progress(f"table1: {name} n={g.n} m={g.m}, "
                  f"{len(TABLE1_FRACTIONS) * len(TABLE1_T_GRID)} configs")
        rows = sweep_configs(
            g, dataset.truth,
            fractions=TABLE1_FRACTIONS, t_grid=TABLE1_T_GRID,
            runs=30, alpha=0.1, d=3, stop="exhaust", patience=5,
            seed=master.spawn(1)[0], jobs=jobs, label=name,
        )
        config_rows += rows
        best = max(rows, key=lambda r: r["best_q"])
        best_rows.append({
            "dataset": name, "n": g.n, "m": g.m,
            "best_q": best["best_q"],
            "remove_fraction": best["remove_param"],
            "t_max": best["t_max"],
        })
    if missing:
        _progress(f"table1: skipped missing datasets: {', '.join(missing)}")
    if not best_rows:
        raise FileNotFoundError(
            f"none of {', '.join(TABLE1_DATASETS)} found under {data_dir}"
        )
    summary = out_dir / "table1_summary.csv"
    configs = out_dir / "table1_configs.csv"
    write_csv(summary, best_rows, kind="summary")
    write_csv(configs, config_rows, kind="summary")
    return [summary, configs]
