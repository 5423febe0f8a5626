import subprocess
import sys
from pathlib import Path

import pytest

import flockcut as fc

from testlib import (
    SCRIPTS_DIR,
    TRIANGLE_PAIRS,
    default_data_dir,
    write_lfr_style_fixture,
)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    """Dataset directory; the karate network is generated locally if absent."""
    directory = default_data_dir()
    directory.mkdir(parents=True, exist_ok=True)
    karate = directory / "karate.gml"
    if not karate.is_file():
        pytest.importorskip("networkx")
        subprocess.run(
            [sys.executable, str(SCRIPTS_DIR / "make_karate_gml.py"), str(karate)],
            check=True,
            capture_output=True,
        )
    return directory


@pytest.fixture()
def two_triangles():
    """Six vertices, two triangles joined by a bridge; bridge has edge id 6."""
    return fc.build_graph(6, TRIANGLE_PAIRS)


@pytest.fixture(scope="session")
def tiny_lfr_dir(tmp_path_factory) -> Path:
    """Two small planted networks laid out like external LFR fixtures."""
    root = tmp_path_factory.mktemp("lfr")
    spec = fc.PlantedSpec((20, 20), k_des=8, p_in=0.9)
    for mu, trial_seed in (("0.1", 1), ("0.3", 2)):
        g, truth = fc.planted_partition(spec, seed=trial_seed)
        write_lfr_style_fixture(root / f"mu{mu}" / "trial0", g, truth)
    return root
