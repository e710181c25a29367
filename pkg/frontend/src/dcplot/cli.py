"""Command line wrapper around the renderers.

Exit codes: 0 success, 2 unreadable input or schema mismatch (the
message names the offending columns), 4 unwritable output.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .render import PlotJob, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dcplot", description="Render dclab CSV outputs as images")
    p.add_argument("--input", required=True, help="input CSV path")
    p.add_argument("--output", required=True,
                   help="output image path (.png, .svg, or .pdf)")
    p.add_argument("--kind", choices=["figure1", "convergence"], required=True)
    p.add_argument("--delta", type=float,
                   help="overlay a slope -(1/2+delta) reference "
                        "(convergence plots only)")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(input_csv=args.input, output_image=args.output,
                  kind=args.kind, delta=args.delta)
    try:
        render(job)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {args.output}")
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
