"""Command-line front end.

Results go to stdout and diagnostics to stderr.  Exit codes: 0 success,
2 input error, 3 configuration/feature mismatch, 4 insufficient data,
5 internal numerical failure.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import codec, evaluation
from .distortions import DistortionSpec
from .errors import IGSTQAError
from .image_core import load_image, save_image
from .index import DEFAULT_ALPHA, DEFAULT_LEVELS, Config

log = logging.getLogger("igstqa")


def _config(args):
    return Config(levels=args.levels, alpha=args.alpha, domains=args.domains,
                  boundary=args.boundary)


def cmd_extract(args):
    config = _config(args)
    img = load_image(args.image)
    payload = codec.payload_from_image(img, config)
    size = codec.write_payload(args.output, payload)
    print(f"scalars: {payload.scalar_count()}")
    print(f"bytes: {size}")
    return 0


def cmd_score(args):
    config = _config(args)
    syn = load_image(args.synthesized)
    score = evaluation.score_reference(args.reference, syn, config)
    print(repr(score.value))
    return 0


def cmd_evaluate(args):
    config = _config(args)
    report = evaluation.run_benchmark(args.manifest, config, jobs=args.jobs,
                                      database=args.database)
    report_path = args.report or Path(args.manifest).with_suffix(".report.json")
    evaluation.write_report(report, report_path, figure=not args.no_figure)
    print(evaluation.format_table(report, styled=evaluation.table_styling_enabled(sys.stdout)),
          end="")
    log.info("report written to %s", report_path)
    return 0


def cmd_distort(args):
    spec = DistortionSpec.parse(args.spec)
    img, depth = load_image(args.image, return_depth=True)
    save_image(args.output, spec.apply(img), bit_depth=depth)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--levels", type=int, default=DEFAULT_LEVELS,
                        help="wavelet decomposition levels (default: %(default)s)")
    common.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                        help="sensitivity constant inside the log (default: %(default)s)")
    common.add_argument("--domains", choices=("both", "spatial", "gradient"), default="both",
                        help="feature domains: image, gradient magnitude or both")
    common.add_argument("--boundary", choices=("symmetric", "periodic"), default="symmetric",
                        help="wavelet boundary extension; periodic is meant for tests")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="igstqa", description="Reduced-reference quality index for synthesized textures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common],
                       help="write the reduced-reference payload of a reference image")
    p.add_argument("image")
    p.add_argument("output", help="payload path, conventionally *.igstqa.json")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score", parents=[common],
                       help="score a synthesized texture against a reference")
    p.add_argument("reference", help="reference image or *.igstqa.json payload")
    p.add_argument("synthesized")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", parents=[common],
                       help="correlate scores with DMOS over a pair_id,ref,syn,dmos manifest")
    p.add_argument("manifest")
    p.add_argument("--report", help="report JSON path (default: <manifest>.report.json)")
    p.add_argument("--jobs", type=int, default=1, help="parallel scoring processes")
    p.add_argument("--database", choices=sorted(evaluation.PUBLISHED_RESULTS),
                   help="compare against the published results for this database")
    p.add_argument("--no-figure", action="store_true", help="skip the regression figure")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("distort", help="apply a synthetic degradation kind:magnitude[:seed]")
    p.add_argument("image")
    p.add_argument("spec", help="blur:SIGMA, tile_shuffle:BLOCK[:SEED] or misalign:SHIFT[:SEED]")
    p.add_argument("output")
    p.set_defaults(func=cmd_distort)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except IGSTQAError as exc:
        print(f"igstqa: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"igstqa: numerical failure: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
