#!/usr/bin/env python3
"""Download the classic benchmark datasets used by `flockcut reproduce table1`.

Fetches dolphins, football, and polbooks as GML from their original
archive, and writes karate locally via networkx (no download needed).
Needs network access for the three downloads; if the archive is
unreachable, place the .gml files in the data directory by hand.

Usage: python3 scripts/fetch_datasets.py [DATA_DIR]   (default tests/data)
"""

import io
import sys
import urllib.request
import zipfile
from pathlib import Path

SOURCES = {
    "dolphins": "https://websites.umich.edu/~mejn/netdata/dolphins.zip",
    "football": "https://websites.umich.edu/~mejn/netdata/football.zip",
    "polbooks": "https://websites.umich.edu/~mejn/netdata/polbooks.zip",
}


def fetch(name: str, url: str, data_dir: Path) -> bool:
    target = data_dir / f"{name}.gml"
    if target.is_file():
        print(f"{target} already present")
        return True
    try:
        with urllib.request.urlopen(url, timeout=30) as resp:
            blob = resp.read()
    except Exception as exc:
        print(f"FAILED {name}: {exc} (fetch {url} manually)")
        return False
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        member = next(n for n in zf.namelist() if n.endswith(".gml"))
        target.write_bytes(zf.read(member))
    print(f"wrote {target}")
    return True


def main() -> int:
    data_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data")
    data_dir.mkdir(parents=True, exist_ok=True)

    import subprocess

    subprocess.run(
        [sys.executable, str(Path(__file__).with_name("make_karate_gml.py")),
         str(data_dir / "karate.gml")],
        check=True,
    )
    ok = all(fetch(name, url, data_dir) for name, url in SOURCES.items())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
