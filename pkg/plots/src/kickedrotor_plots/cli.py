"""Command line interface: render a spec file or a named figure preset.

Exit codes: 0 success, 2 bad spec or schema-violating input CSV.
"""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .presets import PLOT_PRESETS, render_preset
from .render import load_spec, render

EXIT_OK = 0
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kickedrotor-plots",
        description="Render figures from kickedrotor CSV output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    render_p = sub.add_parser("render", help="render a plot spec or preset")
    source = render_p.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", help="path to a JSON plot spec")
    source.add_argument("--preset", help=f"figure preset ({', '.join(PLOT_PRESETS)})")
    render_p.add_argument("--in", dest="in_dir", default=".",
                          help="directory holding the input CSVs (presets only)")
    render_p.add_argument("--out", dest="out_dir", default=".",
                          help="directory for the image (presets only)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.spec is not None:
            out = render(load_spec(args.spec))
        else:
            out = render_preset(args.preset, args.in_dir, args.out_dir)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_ERROR
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
