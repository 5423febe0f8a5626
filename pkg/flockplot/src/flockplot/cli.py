"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors (bad schema,
unreadable files, nothing to render).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .figures import RENDERERS
from .readers import SchemaError, peek_kind


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _render_one(csv_path: Path, out_path: Path | None) -> Path:
    kind = peek_kind(csv_path)
    renderer = RENDERERS.get(kind)
    if renderer is None:
        raise SchemaError(
            f"{csv_path}: no renderer for kind={kind} "
            f"(known: {', '.join(sorted(RENDERERS))})"
        )
    if out_path is None:
        out_path = csv_path.with_suffix(".svg")
    return renderer(csv_path, out_path)


def _cmd_render(args) -> int:
    out = _render_one(Path(args.csv), Path(args.out) if args.out else None)
    print(out)
    return 0


def _cmd_bundle(args) -> int:
    in_dir = Path(args.directory)
    if not in_dir.is_dir():
        raise OSError(f"not a directory: {in_dir}")
    out_dir = Path(args.out_dir) if args.out_dir else in_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    rendered = 0
    for csv_path in sorted(in_dir.glob("*.csv")):
        kind = peek_kind(csv_path)
        if kind not in RENDERERS:
            print(f"skip {csv_path.name} (kind={kind})", file=sys.stderr)
            continue
        out = _render_one(csv_path, out_dir / (csv_path.stem + ".svg"))
        print(out)
        rendered += 1
    if rendered == 0:
        raise ValueError(f"no renderable CSV files in {in_dir}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="flockplot",
        description="Render benchmark CSV bundles into figure files.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    render = subs.add_parser("render", help="render one CSV (kind auto-detected)")
    render.add_argument("csv", help="schema=1 CSV file")
    render.add_argument("-o", "--out", default=None,
                        help="image path (default: CSV path with .svg)")
    render.set_defaults(func=_cmd_render)

    bundle = subs.add_parser(
        "bundle", help="render every renderable CSV in a directory"
    )
    bundle.add_argument("directory", help="directory containing *.csv")
    bundle.add_argument("--out-dir", default=None,
                        help="where to write images (default: alongside)")
    bundle.set_defaults(func=_cmd_bundle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"flockplot: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
