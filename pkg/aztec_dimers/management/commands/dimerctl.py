"""
Oct-2026

Aztec diamond dimers for Django - the dimerctl management command.

usage:
    ./manage.py dimerctl sample --n 8 --a 1 --seed 7 --count 2 --out-dir tilings
    ./manage.py dimerctl render --in tilings/tiling-n8-s7-0000.txt --out tiling.svg --height
    ./manage.py dimerctl exact partition --n 2 --a 1
    ./manage.py dimerctl validate --n 3 --a 1/2 --suite inverse
    ./manage.py dimerctl edge-stats --n 512 --a 1 --k 1 --samples 200
    ./manage.py dimerctl bulk-stats --n 400 --a 1 --xi 0.5,0.5 --samples 1000

exit codes: 0 success, 1 validation failure or computation error, 2 usage error.
"""
# python stuff
import json
import logging
import math
import os
from fractions import Fraction

import numpy as np

# django stuff
from django.core.management.base import BaseCommand, CommandError

# our stuff
from aztec_dimers.constants import (
    KIND_ORDER,
    Boundaries,
    ExactQuantities,
    ExitCodes,
    Regimes,
    ValidationSuites,
)
from aztec_dimers.exactdimer import partition_function
from aztec_dimers.exceptions import AztecDimersError, NotAdjacent
from aztec_dimers.kernelcalc import (
    choose_regime,
    correlation_probability,
    edge_probability_field,
    inverse_matrix,
    south_line_kernel,
)
from aztec_dimers.lattice import AztecDiamond, edge_from_spelling
from aztec_dimers.renderers import write_svg
from aztec_dimers.scalinglimits import (
    airy_kernel_formula,
    bulk_prediction,
    bulk_white_vertex,
    edge_line,
    edge_params,
    poisson_prediction,
    thickened_intensity,
)
from aztec_dimers.serializers import StatsTable, read_tiling_file, write_tiling_file
from aztec_dimers.shuffler import (
    SamplerConfig,
    hole_cluster_sizes,
    line_statistics_from_grid,
    local_kind_frequencies,
    sample_arrays,
    sample_kind_grids,
)
from aztec_dimers.utils import AztecJSONEncoder, format_scalar, parse_number, parse_weight
from aztec_dimers.validation import geometric_goodness_of_fit, run_suites


logger = logging.getLogger(__name__)

DEFAULT_SUITES = [ValidationSuites.INVERSE, ValidationSuites.FIVE_TERM, ValidationSuites.PARTITION]


def _order(text):
    n = int(text)
    if n < 1:
        raise ValueError("order must be at least 1")
    return n


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise ValueError("expected a non-negative integer")
    return value


def _point(text):
    parts = [float(part) for part in text.split(",")]
    if len(parts) != 2:
        raise ValueError("expected xi1,xi2")
    return tuple(parts)


def usage_error(message: str) -> CommandError:
    return CommandError(message, returncode=ExitCodes.USAGE)


class Command(BaseCommand):
    help = "Sample, render, compute and validate weighted domino tilings of the Aztec diamond."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="action", required=True)

        def add(name, help_text):
            return subparsers.add_parser(
                name, help=help_text, called_from_command_line=parser.called_from_command_line
            )

        sample = add("sample", "write sampled tilings as tiling files")
        self._add_sampling(sample, count_flag="--count", default_count=1)
        sample.add_argument("--out-dir", default=".", help="directory for the tiling files")
        sample.add_argument("--prefix", default="tiling", help="file name prefix")

        render = add("render", "render a tiling file as SVG")
        render.add_argument("--in", dest="infile", required=True, help="tiling file")
        render.add_argument("--out", required=True, help="SVG path")
        render.add_argument("--height", action="store_true", help="overlay height-function labels")
        render.add_argument("--scale", type=_order, default=10, help="pixels per unit")

        exact = add("exact", "exact or high-precision kernel quantities as CSV")
        exact.add_argument("quantity", choices=ExactQuantities.all())
        exact.add_argument("--n", type=_order, required=True)
        exact.add_argument("--a", type=parse_weight, default=Fraction(1))
        exact.add_argument("--regime", choices=Regimes.all(), default=Regimes.AUTO)
        exact.add_argument("--edge", action="append", default=[], help="bx,by,K; repeatable")
        exact.add_argument("--joint", action="store_true", help="one row with the joint probability of all --edge")
        exact.add_argument("--line", type=int, help="line index r for line-kernel")
        exact.add_argument("--out", help="CSV path, stdout when omitted")

        validate = add("validate", "run invariant suites; exit 0 iff all pass")
        validate.add_argument("--n", type=_order, required=True)
        validate.add_argument("--a", type=parse_weight, default=Fraction(1))
        validate.add_argument("--suite", action="append", choices=ValidationSuites.all())
        validate.add_argument("--regime", choices=Regimes.all(), default=Regimes.AUTO)
        validate.add_argument("--samples", type=_non_negative, default=100000)
        validate.add_argument("--seed", type=_non_negative, default=0)
        validate.add_argument("--workers", type=_non_negative)

        edge_stats = add("edge-stats", "south-domino positions near a boundary point against the edge limits")
        self._add_sampling(edge_stats, count_flag="--samples", default_count=200)
        edge_stats.add_argument("--k", type=parse_number, required=True, help="slope of the boundary point")
        edge_stats.add_argument("--bin-width", type=float, default=0.25)
        edge_stats.add_argument("--xi-min", type=float, default=-4.0)
        edge_stats.add_argument("--xi-max", type=float, default=4.0)
        edge_stats.add_argument("--holes", action="store_true", help="hole-cluster histogram against geometric(beta)")
        edge_stats.add_argument("--out", help="CSV path, stdout when omitted")

        bulk_stats = add("bulk-stats", "local orientation frequencies against the Gibbs measure")
        self._add_sampling(bulk_stats, count_flag="--samples", default_count=1000)
        bulk_stats.add_argument("--xi", type=_point, required=True, help="xi1,xi2 inside the ellipse")
        bulk_stats.add_argument("--window", type=_non_negative, default=2, help="window radius in white steps")
        bulk_stats.add_argument("--out", help="CSV path, stdout when omitted")

    def _add_sampling(self, parser, count_flag: str, default_count: int):
        parser.add_argument("--n", type=_order, required=True)
        parser.add_argument("--a", type=parse_weight, default=Fraction(1))
        parser.add_argument("--seed", type=_non_negative, default=0)
        parser.add_argument(count_flag, dest="count", type=_non_negative, default=default_count)
        parser.add_argument("--workers", type=_non_negative, help="worker processes, 0 for one per cpu")

    def handle(self, *args, **options):
        action = options["action"]
        handler = getattr(self, "handle_" + action.replace("-", "_"))
        try:
            handler(options)
        except CommandError:
            raise
        except (AztecDimersError, ValueError) as e:
            raise CommandError(str(e), returncode=ExitCodes.FAILURE) from e

    def _emit(self, table: StatsTable, path=None):
        if path:
            table.write(path)
            self.stdout.write(path)
        else:
            self.stdout.write(table.render(), ending="")

    # sample
    # -------------------------------------------------------------------------
    def handle_sample(self, options):
        config = SamplerConfig(n=options["n"], a=options["a"], seed=options["seed"], count=options["count"])
        out_dir = options["out_dir"]
        os.makedirs(out_dir, exist_ok=True)
        for index, arrays in enumerate(sample_arrays(config, options["workers"])):
            path = os.path.join(
                out_dir,
                "{prefix}-n{n}-s{seed}-{index:04d}.txt".format(
                    prefix=options["prefix"], n=config.n, seed=config.seed, index=index
                ),
            )
            write_tiling_file(path, arrays.to_tiling(config.a), seed=config.seed, sample=index)
            self.stdout.write(path)

    # render
    # -------------------------------------------------------------------------
    def handle_render(self, options):
        tiling_file = read_tiling_file(options["infile"])
        write_svg(options["out"], tiling_file.tiling, scale=options["scale"], heights=options["height"])
        self.stdout.write(options["out"])

    # exact
    # -------------------------------------------------------------------------
    def handle_exact(self, options):
        diamond = AztecDiamond(options["n"], options["a"])
        regime = choose_regime(diamond, options["regime"])
        quantity = options["quantity"]
        metadata = {"n": diamond.n, "a": diamond.a, "regime": regime}

        if quantity == ExactQuantities.PARTITION:
            table = StatsTable(["n", "a", "partition_function"], metadata=metadata)
            table.add_row(diamond.n, diamond.a, partition_function(diamond, regime))
        elif quantity == ExactQuantities.INVERSE:
            table = StatsTable(["w1", "w2", "b1", "b2", "value"], metadata=metadata)
            matrix = inverse_matrix(diamond, regime)
            for w in matrix.rows:
                for b in matrix.columns:
                    table.add_row(w[0], w[1], b[0], b[1], matrix[w, b])
        elif quantity == ExactQuantities.EDGE_PROBABILITY:
            table = self._edge_probabilities(diamond, regime, options, metadata)
        else:
            r = options["line"]
            if r is None:
                raise usage_error("line-kernel needs --line")
            table = StatsTable(["x1", "x2", "value"], metadata=dict(metadata, r=r))
            for x1 in range(1, diamond.n + 1):
                for x2 in range(1, diamond.n + 1):
                    table.add_row(x1, x2, south_line_kernel(x1, x2, r, diamond, regime).value)
        self._emit(table, options["out"])

    def _edge_probabilities(self, diamond, regime, options, metadata) -> StatsTable:
        try:
            edges = [edge_from_spelling(spelling) for spelling in options["edge"]]
        except (ValueError, NotAdjacent) as e:
            raise usage_error(str(e)) from e
        if options["joint"]:
            table = StatsTable(["edges", "probability"], metadata=metadata)
            spelled = ";".join("{b1},{b2},{kind}".format(b1=e.b[0], b2=e.b[1], kind=e.kind) for e in edges)
            table.add_row(spelled, correlation_probability(edges, diamond, regime))
            return table
        table = StatsTable(["bx", "by", "kind", "probability"], metadata=metadata)
        if edges:
            for e in edges:
                table.add_row(e.b[0], e.b[1], e.kind, correlation_probability([e], diamond, regime))
        else:
            for e, p in edge_probability_field(diamond, regime).items():
                table.add_row(e.b[0], e.b[1], e.kind, p)
        return table

    # validate
    # -------------------------------------------------------------------------
    def handle_validate(self, options):
        diamond = AztecDiamond(options["n"], options["a"])
        suites = options["suite"] or DEFAULT_SUITES
        reports = run_suites(
            diamond,
            suites,
            regime=options["regime"],
            samples=options["samples"],
            seed=options["seed"],
            workers=options["workers"],
        )
        summary = {
            "n": diamond.n,
            "a": diamond.a,
            "passed": all(report.passed for report in reports),
            "suites": [report.to_dict() for report in reports],
        }
        self.stdout.write(json.dumps(summary, cls=AztecJSONEncoder, indent=2, sort_keys=True))
        failed = [report for report in reports if not report.passed]
        if failed:
            raise CommandError(
                "{suite} failed: {example}".format(suite=failed[0].suite, example=failed[0].counterexample),
                returncode=ExitCodes.FAILURE,
            )

    # edge-stats
    # -------------------------------------------------------------------------
    def handle_edge_stats(self, options):
        config = SamplerConfig(n=options["n"], a=options["a"], seed=options["seed"], count=options["count"])
        params = edge_params(options["k"], config.a)
        n = config.n
        r = edge_line(params, n)
        scale = params.lam * n ** (1.0 / 3.0)
        center = float(params.u) * n
        width = options["bin_width"]
        if width <= 0 or options["xi_max"] <= options["xi_min"]:
            raise usage_error("--bin-width must be positive and --xi-max above --xi-min")
        edges = np.arange(options["xi_min"], options["xi_max"] + width / 2, width)
        counts = np.zeros(len(edges) - 1)
        south = params.boundary == Boundaries.SOUTH
        cluster_sizes = []

        for grid in sample_kind_grids(config, options["workers"]):
            statistics = line_statistics_from_grid(grid, r)
            points = statistics.hole_positions if south else statistics.positions
            xi = (center - np.asarray(points, dtype=float)) / scale
            counts += np.histogram(xi, bins=edges)[0]
            if options["holes"]:
                # clusters whose first hole lies in the xi window
                low, high = center - options["xi_max"] * scale, center - options["xi_min"] * scale
                cluster_sizes.extend(hole_cluster_sizes(statistics, window=(low, high)))

        metadata = {
            "n": n,
            "a": config.a,
            "k": options["k"],
            "samples": config.count,
            "boundary": params.boundary,
            "r": r,
            "alpha": float(params.alpha),
            "beta": float(params.beta),
            "lambda": params.lam,
        }
        if options["holes"]:
            table = self._hole_histogram(cluster_sizes, params, metadata)
        else:
            table = self._intensity_table(edges, counts, config, params, metadata)
        self._emit(table, options["out"])

    def _intensity_table(self, edges, counts, config, params, metadata) -> StatsTable:
        samples = max(config.count, 1)
        width = edges[1] - edges[0]
        south = params.boundary == Boundaries.SOUTH
        if south:
            columns = ["xi", "empirical_intensity", "stderr", "thickened_intensity"]
        else:
            columns = ["xi", "empirical_intensity", "stderr", "thinned_airy_intensity", "poisson_intensity"]
            _, constant = poisson_prediction(params.k, config.a, 0.0)
            metadata["poisson_c"] = constant
        table = StatsTable(columns, metadata=metadata)
        for low, count in zip(edges[:-1], counts):
            xi = low + width / 2
            intensity = count / (samples * width)
            stderr = math.sqrt(count) / (samples * width)
            if south:
                table.add_row(xi, intensity, stderr, thickened_intensity(xi, params.beta))
            else:
                predicted = float(params.alpha) * float(airy_kernel_formula(xi, xi))
                density, _ = poisson_prediction(params.k, config.a, xi)
                table.add_row(xi, intensity, stderr, predicted, density)
        return table

    def _hole_histogram(self, sizes, params, metadata) -> StatsTable:
        observed, expected, p_value = geometric_goodness_of_fit(sizes, params.beta)
        metadata.update({"clusters": len(sizes), "chi_square_p": p_value})
        table = StatsTable(["cluster_size", "observed", "expected"], metadata=metadata)
        for k, (o, e) in enumerate(zip(observed, expected), start=1):
            label = str(k) if k < len(observed) else "{k}+".format(k=k)
            table.add_row(label, o, e)
        return table

    # bulk-stats
    # -------------------------------------------------------------------------
    def handle_bulk_stats(self, options):
        config = SamplerConfig(n=options["n"], a=options["a"], seed=options["seed"], count=options["count"])
        xi1, xi2 = options["xi"]
        if not (0 < xi1 < 1 and 0 < xi2 < 1):
            raise usage_error("--xi must lie in (0, 1) x (0, 1)")
        center = bulk_white_vertex(xi1, xi2, config.n)
        counts = local_kind_frequencies(sample_kind_grids(config, options["workers"]), center, options["window"])
        total = sum(counts.values())
        metadata = {
            "n": config.n,
            "a": config.a,
            "xi": "{x1};{x2}".format(x1=format_scalar(xi1), x2=format_scalar(xi2)),
            "samples": config.count,
            "center": "{c1};{c2}".format(c1=center[0], c2=center[1]),
            "window": options["window"],
        }
        table = StatsTable(["kind", "count", "frequency", "stderr", "gibbs_prediction"], metadata=metadata)
        for kind in KIND_ORDER:
            p = counts[kind] / total if total else 0.0
            stderr = math.sqrt(p * (1 - p) / total) if total else 0.0
            table.add_row(kind, counts[kind], p, stderr, bulk_prediction(kind, xi1, xi2, config.a))
        self._emit(table, options["out"])
