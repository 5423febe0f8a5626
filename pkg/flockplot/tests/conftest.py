from pathlib import Path

import pytest

from plot_testlib import write_csv, write_lfr_style_fixture


@pytest.fixture()
def trace_csv(tmp_path) -> Path:
    columns = ["round", "edges_removed_total", "n_components", "modularity",
               "cfg_q", "louvain_q"]
    rows = [[r, r, 1 + r // 3, 0.05 * r, 0.31, 0.29] for r in range(1, 9)]
    return write_csv(tmp_path / "trace.csv", "trace", columns, rows)


@pytest.fixture()
def misalign_csv(tmp_path) -> Path:
    columns = ["network", "t", "mean_intra", "mean_inter", "mean_all", "ratio"]
    rows = []
    for net in ("main",):
        for t in range(6):
            intra = 0.5 * 2.0 ** (-t) if t < 5 else 1e-14
            inter = 1.2 * 2.0 ** (-t / 4)
            rows.append([net, t, intra, inter, (intra + inter) / 2, inter / intra])
    return write_csv(tmp_path / "mis.csv", "misalign", columns, rows)


@pytest.fixture()
def boxes_csv(tmp_path) -> Path:
    columns = ["trial", "method", "round", "q", "ari"]
    rows = []
    for trial in range(4):
        for rnd, q in ((1, 0.1), (2, 0.35 + 0.01 * trial), (3, 0.2)):
            rows.append([trial, "remove_1", rnd, q, 0.6 + 0.02 * trial])
        rows.append([trial, "remove_40", 1, 0.25 + 0.01 * trial, 0.5])
        rows.append([trial, "cfg", 1, 0.30, 0.45])
        rows.append([trial, "louvain", 1, 0.28, 0.40])
    return write_csv(tmp_path / "boxes.csv", "boxes", columns, rows)


@pytest.fixture()
def nmi_csv(tmp_path) -> Path:
    columns = ["mu", "trial", "method", "nmi"]
    rows = []
    for mu in (0.1, 0.3, 0.5):
        for trial in range(3):
            rows.append([mu, trial, "detect", 1.0 - mu - 0.02 * trial])
            rows.append([mu, trial, "cfg", 0.8 - mu])
            rows.append([mu, trial, "louvain", 0.7 - mu])
    return write_csv(tmp_path / "nmi.csv", "nmi_mu", columns, rows)


@pytest.fixture(scope="session")
def lfr_fixture_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("lfr")
    write_lfr_style_fixture(root / "mu0.1" / "trial0")
    write_lfr_style_fixture(root / "mu0.3" / "trial0")
    return root
