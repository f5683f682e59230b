"""Command-line entry point.

Two subcommands: ``bench`` runs a configured clustering benchmark and
writes a report; ``synth-advertisers`` generates a synthetic advertiser
cohort for the KS pipeline.  Exit codes: 0 success, 2 configuration error,
3 data error, 4 numeric error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bench import ConfigError, METHODS, RunConfig, StageError, emit_report, run_benchmark
from .io import DataFormatError
from .synth import generate_synthetic_advertisers

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


def _parse_seeds(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seeds list {text!r}; expected e.g. 0,1,2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcclust",
        description="Robust consensus clustering benchmarks and advertiser segmentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a clustering benchmark and write a report")
    bench.add_argument("--dataset", required=True,
                       help="dataset CSV, advertiser directory (ks-pipeline), or blobs:<spec>")
    bench.add_argument("--method", required=True, choices=METHODS)
    bench.add_argument("--k", required=True, type=int, help="number of clusters")
    bench.add_argument("--runs", type=int, default=40, help="ensemble size (default 40)")
    bench.add_argument("--corrupt", type=float, default=0.0,
                       help="fraction of ensemble views replaced by random labelings")
    bench.add_argument("--alpha", type=float, default=0.05,
                       help="significance level for KS similarity (default 0.05)")
    bench.add_argument("--seeds", type=_parse_seeds, default=(0,),
                       help="comma-separated seed list (default 0)")
    bench.add_argument("--out", required=True, help="output directory for the report")
    bench.add_argument("--trace", action="store_true",
                       help="write per-iteration solver trace CSVs")
    bench.add_argument("--normalize", action="store_true",
                       help="z-score feature columns before clustering")

    synth = sub.add_parser("synth-advertisers", help="generate a synthetic advertiser cohort")
    synth.add_argument("--segments", type=int, default=2)
    synth.add_argument("--entities", type=int, default=30, help="entities per segment")
    synth.add_argument("--samples", type=int, default=300, help="observations per entity")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--textual-noise", type=float, default=1.0,
                       help="spread of the textual-proxy features")
    synth.add_argument("--out", required=True, help="output directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            cfg = RunConfig(
                dataset=args.dataset,
                method=args.method,
                n_clusters=args.k,
                n_runs=args.runs,
                corruption=args.corrupt,
                alpha=args.alpha,
                seeds=args.seeds,
                out=args.out,
                trace=args.trace,
                normalize=args.normalize,
            )
            report = run_benchmark(cfg)
            json_path, txt_path = emit_report(report, args.out)
            with open(txt_path) as fh:
                sys.stdout.write(fh.read())
            print(f"report written to {json_path} and {txt_path}")
        else:
            files = generate_synthetic_advertisers(
                n_segments=args.segments,
                entities_per_segment=args.entities,
                samples_per_entity=args.samples,
                seed=args.seed,
                out_dir=args.out,
                textual_noise=args.textual_noise,
            )
            print(f"wrote {files.win_rate_samples}")
            print(f"wrote {files.ecpm_samples}")
            print(f"wrote {files.textual_features}")
            print(f"wrote {files.forecast_truth}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except StageError as exc:
        cause = exc.__cause__
        if isinstance(cause, (np.linalg.LinAlgError, FloatingPointError)):
            print(f"numeric error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"pipeline error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
