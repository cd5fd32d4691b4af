"""Command-line interface: diversity, select, and mds subcommands.

Exit codes: 0 success, 1 input/validation failure, 2 size limit exceeded,
3 oracle mismatch. All outputs are written atomically (temp then rename)
and are byte-reproducible for a fixed config and seed.
"""

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import asdict, dataclass

import numpy as np

from .diversity import DEFAULT_Q, build_report
from .errors import PhdivError, SizeLimit
from .filtration import build_vr_filtration
from .geometry import EUCLIDEAN, POINT_METRICS, load_distance_csv, load_points_csv, compute_distance_matrix
from .persistence import ZERO_TOL, compute_h0, compute_h1, diagram_to_csv, diagrams_match, oracle_reduce
from .projection import classical_mds, embedding_to_csv, embedding_to_svg, recovered_distance_error
from .selection import SUBSET_KINDS, SubsetSpec, rank_partition, select_subset, subset_to_csv

log = logging.getLogger("phdiv")

DEFAULT_MAX_N = 2000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; 2 is reserved for size
    # limits here, so route usage problems to exit code 1 instead
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    input_path: str
    input_kind: str
    metric: str
    q_list: tuple
    eps_min: float | None
    eps_max: float | None
    zero_tol: float
    seed: int
    per_class: int
    oracle_mode: bool
    max_n: int

    def as_meta(self):
        return asdict(self)


def _build_parser():
    parser = _Parser(prog="phdiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="input CSV path")
        p.add_argument("--kind", choices=("points", "distances"), default="points")
        p.add_argument("--metric", choices=POINT_METRICS, default=EUCLIDEAN)
        p.add_argument("--q", action="append", type=float, default=None,
                       help="entropy order, repeatable (default: 1 and 20)")
        p.add_argument("--eps-min", type=float, default=None)
        p.add_argument("--eps-max", type=float, default=None)
        p.add_argument("--zero-tol", type=float, default=ZERO_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--per-class", type=int, default=1)
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check diagrams against the dense reduction oracle")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                       help="refuse inputs with more points than this (H1 guard)")

    p_div = sub.add_parser("diversity", help="measure one dataset, write report.json")
    common(p_div)
    p_sel = sub.add_parser("select", help="build closest/farthest/random subsets")
    common(p_sel)
    p_sel.add_argument("--measure", action="store_true",
                       help="also run the diversity pipeline on each subset")
    p_mds = sub.add_parser("mds", help="2D multidimensional scaling, CSV + SVG")
    common(p_mds)
    p_mds.add_argument("--subsets", action="append", default=None,
                       help="subset CSV from `select`, repeatable; encodes markers")
    return parser


def _config_from_args(args):
    q_list = tuple(args.q) if args.q else DEFAULT_Q
    if any(q < 0 for q in q_list):
        raise _UsageError("--q values must be >= 0")
    if (args.eps_min is None) != (args.eps_max is None):
        raise _UsageError("--eps-min and --eps-max must be given together")
    return RunConfig(
        input_path=args.input,
        input_kind=args.kind,
        metric=args.metric,
        q_list=q_list,
        eps_min=args.eps_min,
        eps_max=args.eps_max,
        zero_tol=args.zero_tol,
        seed=args.seed,
        per_class=args.per_class,
        oracle_mode=args.oracle,
        max_n=args.max_n,
    )


def _load_input(config):
    """Returns (distance_matrix, cloud_or_None)."""
    if config.input_kind == "distances":
        if config.metric != EUCLIDEAN:
            log.warning("--metric is ignored for --kind distances")
        return load_distance_csv(config.input_path), None
    cloud = load_points_csv(config.input_path)
    return compute_distance_matrix(cloud, config.metric), cloud


def _write_atomic(path, text):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phdiv-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _guard_size(config, n):
    if n > config.max_n:
        raise SizeLimit(
            f"{n} points exceed --max-n {config.max_n}; raise the limit to proceed"
        )


def _measure(config, dm, cloud, out_dir, prefix=""):
    """Shared measurement path; returns (report_dict, exit_code)."""
    window = None
    if config.eps_min is not None:
        window = (config.eps_min, config.eps_max)
    report = build_report(dm, cloud=cloud, q_list=config.q_list,
                          window=window, zero_tol=config.zero_tol)
    diag0 = compute_h0(dm)
    diag1 = compute_h1(build_vr_filtration(dm, None, 2))
    _write_atomic(os.path.join(out_dir, f"diagram_h0{prefix}.csv"), diagram_to_csv(diag0))
    _write_atomic(os.path.join(out_dir, f"diagram_h1{prefix}.csv"), diagram_to_csv(diag1))
    doc = report.to_json_dict()
    doc["config"] = config.as_meta()
    code = 0
    if config.oracle_mode:
        o0, o1 = oracle_reduce(build_vr_filtration(dm, None, 2))
        match = diagrams_match(diag0, o0) and diagrams_match(diag1, o1)
        doc["oracle_match"] = match
        if not match:
            log.error("oracle mismatch: fast-path diagrams differ from the dense reduction")
            code = 3
    _write_atomic(os.path.join(out_dir, f"report{prefix}.json"), _json_text(doc))
    return doc, code


def cmd_diversity(config, out_dir):
    dm, cloud = _load_input(config)
    _guard_size(config, dm.n)
    _, code = _measure(config, dm, cloud, out_dir)
    log.info("report written to %s", os.path.join(out_dir, "report.json"))
    return code


def cmd_select(config, out_dir, measure=False):
    dm, cloud = _load_input(config)
    if cloud is None or cloud.labels is None:
        log.error("labels required: provide a points CSV with a `label` column")
        return 1
    _guard_size(config, dm.n)
    lower, upper = rank_partition(dm)
    meta = {
        "seed": config.seed,
        "per_class": config.per_class,
        "n": dm.n,
        "lower_half_size": int(lower.size),
        "upper_half_size": int(upper.size),
        "ranking": "eccentricity ascending, ties by index; halves split globally",
        "subsets": {},
    }
    code = 0
    for kind in SUBSET_KINDS:
        spec = SubsetSpec(kind=kind, per_class=config.per_class, seed=config.seed)
        result = select_subset(dm, cloud.labels, spec)
        _write_atomic(os.path.join(out_dir, f"subset_{kind}.csv"),
                      subset_to_csv(result, cloud.labels))
        meta["subsets"][kind] = {
            "size": len(result.indices),
            "class_counts": {str(k): v for k, v in sorted(result.class_counts.items())},
        }
        if measure:
            idx = list(result.indices)
            sub_code = _measure(config, dm.submatrix(idx), cloud.subset(idx),
                                out_dir, prefix=f"_{kind}")[1]
            code = max(code, sub_code)
    _write_atomic(os.path.join(out_dir, "selection.json"), _json_text(meta))
    log.info("subsets written to %s", out_dir)
    return code


def cmd_mds(config, out_dir, subset_paths=None):
    dm, cloud = _load_input(config)
    _guard_size(config, dm.n)
    embedding = classical_mds(dm, dim=2)
    if embedding.non_euclidean:
        log.warning("non_euclidean: negative eigenvalues zeroed in the embedding")
    err = recovered_distance_error(embedding, dm)
    log.info("recovered-distance max error: %.3g (stress %.3g)", err, embedding.stress)
    kinds = [""] * dm.n
    for path in subset_paths or []:
        stem = os.path.splitext(os.path.basename(path))[0]
        kind = stem.removeprefix("subset_")
        with open(path) as fh:
            next(fh)  # header
            for line in fh:
                i = int(line.split(",")[0])
                if not kinds[i]:
                    kinds[i] = kind
    labels = cloud.labels if cloud is not None else None
    _write_atomic(os.path.join(out_dir, "mds.csv"),
                  embedding_to_csv(embedding, labels, kinds))
    _write_atomic(os.path.join(out_dir, "mds.svg"),
                  embedding_to_svg(embedding, kinds))
    log.info("projection written to %s", out_dir)
    return 0


def _apply_thread_cap():
    raw = os.environ.get("PHDIV_THREADS", "").strip()
    if not raw:
        return
    try:
        cap = int(raw)
    except ValueError:
        log.warning("ignoring non-integer PHDIV_THREADS=%r", raw)
        return
    if cap > 0:
        import numba

        numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        _apply_thread_cap()
        out_dir = args.out
        os.makedirs(out_dir, exist_ok=True)
        if args.command == "diversity":
            return cmd_diversity(config, out_dir)
        if args.command == "select":
            return cmd_select(config, out_dir, measure=args.measure)
        return cmd_mds(config, out_dir, subset_paths=args.subsets)
    except _UsageError as exc:
        log.error("usage: %s", exc)
        return 1
    except SizeLimit as exc:
        log.error("size limit: %s", exc)
        return 2
    except (PhdivError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
