"""Command-line toolbox.

Subcommands mirror the classic landscape program suite: averaging, plotting,
norms, distance matrices, pairwise permutation tests, nearest-average
classification (single degree and all degrees), random barcode generation,
and truncation of infinite intervals.  A config file (see
:mod:`persland.config`) selects exact or grid mode and the infinity encoding;
both modes accept the same input files.  Data goes to stdout or the named
output file; progress and diagnostics go to stderr.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from . import algebra, stats
from .barcodes import (
    Barcode,
    random_barcode,
    serialize_barcode,
    snap_to_grid,
    truncate_infinite,
)
from .config import ToolboxConfig, load_config
from .grids import GridLandscape, build_grid_landscape, grid_to_landscape, sample_exact_to_grid
from .io import (
    atomic_write_text,
    detect_and_load,
    emit_gnuplot,
    read_file_list,
    write_barcode_file,
    write_landscape_file,
)
from .landscapes import INF, Landscape, build_landscape
from .metrics import lp_norm, sup_norm
from .stats import ClassifierModel

DEFAULT_CONFIG_NAME = "persland.cfg"

USAGE = """\
usage: persland [--config FILE] <command> [arguments]

commands:
  average <filelist> <out>
      Average the landscapes of the listed files, write a landscape file.
  plot <file> <k_from> <k_to> <out>
      Emit gnuplot data (+ <out>.gp script) for layers k_from..k_to-1.
  plot-many <filelist> <k_from> <k_to> <out_prefix>
      As plot, one output per listed file: <out_prefix><i>.dat.
  norms <filelist> <p>
      Print one L^p norm per input (p = -1 for the supremum norm).
  distance-matrix <filelist> <p> <out>
      Pairwise L^p distance matrix, tab separated.
  permutation-test <M> <classlist_1> ... <classlist_M> <trials> <p> [--seed S]
      Matrix of pairwise permutation-test p-values on the M classes.
  classify -construct <N> <classlist_1> ... <classlist_N> [--outdir DIR]
  classify -classify  <N> <querylist> <p> <q> [--modeldir DIR] [--outdir DIR]
  classify -both      <N> <classlist_1> ... <classlist_N> <querylist> <p> <q>
                      [--outdir DIR]
      Nearest-average-landscape classifier; q=0 best label only, q=1 ranked
      distances.  Results go to classification.txt; models to class_<i>.lan.
  classify-all-dims -construct <N> <D> <N*D classlists, class-major> [--outdir DIR]
  classify-all-dims -classify  <N> <D> <D querylists> <p> <q> [--modeldir DIR]
                      [--outdir DIR]
  classify-all-dims -both      <N> <D> <N*D classlists> <D querylists> <p> <q>
                      [--outdir DIR]
      Classifier combining several homological degrees (summed distances).
  generate <n> <count> <seed> <outdir>
      Write <count> random barcodes of n pairs each (uniform on [0,1]).
  truncate <file> <cutoff> [--policy truncate|drop] [--out FILE]
      Resolve infinite intervals in a barcode file.
"""


class CliError(Exception):
    pass


def _parse_p(token: str) -> float:
    p = float(token)
    if p == -1:
        return INF
    if p < 1:
        raise CliError(f"p must be >= 1 or -1 for the supremum norm, got {token}")
    return p


def _take_flag(args: list[str], name: str, default: str | None = None) -> str | None:
    if name in args:
        idx = args.index(name)
        if idx + 1 >= len(args):
            raise CliError(f"{name} needs a value")
        value = args[idx + 1]
        del args[idx : idx + 2]
        return value
    return default


def _load_one(path: Path, cfg: ToolboxConfig) -> Landscape | GridLandscape:
    obj = detect_and_load(path, infinity=cfg.infinity_magic, strict=cfg.strict_parse)
    if cfg.mode == "grid":
        spec = cfg.grid_spec()
        if isinstance(obj, Barcode):
            return build_grid_landscape(snap_to_grid(obj, spec))
        return sample_exact_to_grid(obj, spec)
    if isinstance(obj, Barcode):
        return build_landscape(obj)
    return obj


def _load_list(list_path: str, cfg: ToolboxConfig) -> list:
    return [_load_one(p, cfg) for p in read_file_list(list_path)]


def _as_landscape(obj: Landscape | GridLandscape) -> Landscape:
    return grid_to_landscape(obj) if isinstance(obj, GridLandscape) else obj


def _mean(items, cfg: ToolboxConfig):
    if isinstance(items[0], GridLandscape):
        return algebra.grid_average(items)
    return algebra.average(items, epsilon=cfg.epsilon_merge)


def _cmd_average(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 2:
        raise CliError("average needs <filelist> <out>")
    items = _load_list(args[0], cfg)
    result = _as_landscape(_mean(items, cfg))
    write_landscape_file(result, args[1], infinity=cfg.infinity_magic)
    return 0


def _cmd_plot(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 4:
        raise CliError("plot needs <file> <k_from> <k_to> <out>")
    landscape = _as_landscape(_load_one(Path(args[0]), cfg))
    emit_gnuplot(landscape, int(args[1]), int(args[2]), args[3])
    return 0


def _cmd_plot_many(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 4:
        raise CliError("plot-many needs <filelist> <k_from> <k_to> <out_prefix>")
    paths = read_file_list(args[0])
    for i, path in enumerate(paths):
        landscape = _as_landscape(_load_one(path, cfg))
        emit_gnuplot(landscape, int(args[1]), int(args[2]), f"{args[3]}{i}.dat")
    return 0


def _cmd_norms(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 2:
        raise CliError("norms needs <filelist> <p>")
    p = _parse_p(args[1])
    for item in _load_list(args[0], cfg):
        landscape = _as_landscape(item)
        value = sup_norm(landscape) if p == INF else lp_norm(landscape, p)
        print(format(value, "g"))
    return 0


def _cmd_distance_matrix(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 3:
        raise CliError("distance-matrix needs <filelist> <p> <out>")
    paths = read_file_list(args[0])
    items = [_load_one(p, cfg) for p in paths]
    matrix = stats.distance_matrix(items, _parse_p(args[1]), labels=[str(p) for p in paths])
    atomic_write_text(args[2], matrix.to_text())
    return 0


def _cmd_permutation_test(args: list[str], cfg: ToolboxConfig) -> int:
    seed = int(_take_flag(args, "--seed", "0"))
    if len(args) < 4:
        raise CliError("permutation-test needs <M> <classlist...> <trials> <p>")
    m = int(args[0])
    if len(args) != m + 3:
        raise CliError(f"expected {m} class lists plus <trials> <p>, got {len(args) - 1} arguments")
    classes = [_load_list(arg, cfg) for arg in args[1 : 1 + m]]
    trials = int(args[m + 1])
    p = _parse_p(args[m + 2])

    def progress(i: int, j: int, t: int, n: int) -> None:
        if t == n or t % max(n // 10, 1) == 0:
            print(f"classes ({i}, {j}): trial {t}/{n}", file=sys.stderr)

    pvals = stats.pairwise_permutation_matrix(classes, trials, p, seed, progress=progress)
    print("\n".join("\t".join(format(v, "g") for v in row) for row in pvals))
    return 0


def _model_path(directory: Path, label: int, degree: int | None = None) -> Path:
    if degree is None:
        return directory / f"class_{label}.lan"
    return directory / f"class_{label}_deg_{degree}.lan"


def _write_model(model: ClassifierModel, directory: Path, cfg: ToolboxConfig,
                 degree: int | None = None) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for label, avg in zip(model.class_labels, model.class_averages):
        write_landscape_file(
            _as_landscape(avg), _model_path(directory, label, degree),
            infinity=cfg.infinity_magic,
        )


def _read_model(n: int, directory: Path, p: float, cfg: ToolboxConfig,
                degree: int | None = None) -> ClassifierModel:
    averages = []
    for label in range(1, n + 1):
        path = _model_path(directory, label, degree)
        if not path.exists():
            raise CliError(f"missing model file {path}; run -construct first")
        item = _load_one(path, cfg)
        averages.append(item)
    return ClassifierModel(tuple(range(1, n + 1)), tuple(averages), p)


def _classification_lines(results: list, ranked: bool) -> str:
    lines = []
    for res in results:
        if ranked:
            lines.append(" ".join(f"({label},{format(d, 'g')})" for d, label in res))
        else:
            lines.append(str(res))
    return "\n".join(lines) + "\n"


def _cmd_classify(args: list[str], cfg: ToolboxConfig) -> int:
    if not args:
        raise CliError("classify needs a mode: -construct, -classify or -both")
    mode = args[0].lstrip("-")
    rest = args[1:]
    outdir = Path(_take_flag(rest, "--outdir", "."))
    modeldir = Path(_take_flag(rest, "--modeldir", str(outdir)))
    if mode == "construct":
        if len(rest) < 2:
            raise CliError("classify -construct needs <N> <classlist...>")
        n = int(rest[0])
        if len(rest) != n + 1:
            raise CliError(f"expected {n} class lists, got {len(rest) - 1}")
        training = [_load_list(arg, cfg) for arg in rest[1:]]
        model = stats.classifier_construct(training, p=2.0)
        _write_model(model, outdir, cfg)
        return 0
    if mode == "classify":
        if len(rest) != 4:
            raise CliError("classify -classify needs <N> <querylist> <p> <q>")
        n = int(rest[0])
        p = _parse_p(rest[2])
        ranked = _parse_q(rest[3])
        model = _read_model(n, modeldir, p, cfg)
        queries = _load_list(rest[1], cfg)
    elif mode == "both":
        if len(rest) < 4:
            raise CliError("classify -both needs <N> <classlist...> <querylist> <p> <q>")
        n = int(rest[0])
        if len(rest) != n + 4:
            raise CliError(f"expected {n} class lists plus <querylist> <p> <q>")
        p = _parse_p(rest[n + 2])
        ranked = _parse_q(rest[n + 3])
        training = [_load_list(arg, cfg) for arg in rest[1 : 1 + n]]
        model = stats.classifier_construct(training, p=p)
        _write_model(model, outdir, cfg)
        queries = _load_list(rest[n + 1], cfg)
    else:
        raise CliError(f"unknown classify mode -{mode}")
    results = [
        stats.classifier_classify(model, q, mode="ranked" if ranked else "best")
        for q in queries
    ]
    atomic_write_text(outdir / "classification.txt", _classification_lines(results, ranked))
    return 0


def _parse_q(token: str) -> bool:
    if token not in ("0", "1"):
        raise CliError(f"q must be 0 (best match) or 1 (ranked distances), got {token}")
    return token == "1"


def _cmd_classify_all_dims(args: list[str], cfg: ToolboxConfig) -> int:
    if not args:
        raise CliError("classify-all-dims needs a mode: -construct, -classify or -both")
    mode = args[0].lstrip("-")
    rest = args[1:]
    outdir = Path(_take_flag(rest, "--outdir", "."))
    modeldir = Path(_take_flag(rest, "--modeldir", str(outdir)))
    if len(rest) < 2:
        raise CliError("classify-all-dims needs <N> <D> first")
    n, d = int(rest[0]), int(rest[1])
    body = rest[2:]

    def build_models(lists: list[str], p: float) -> dict[int, ClassifierModel]:
        models = {}
        for deg in range(d):
            training = [_load_list(lists[cls * d + deg], cfg) for cls in range(n)]
            models[deg] = stats.classifier_construct(training, p=p)
        return models

    if mode == "construct":
        if len(body) != n * d:
            raise CliError(f"expected {n * d} class lists (class-major), got {len(body)}")
        for deg, model in build_models(body, 2.0).items():
            _write_model(model, outdir, cfg, degree=deg)
        return 0
    if mode == "classify":
        if len(body) != d + 2:
            raise CliError(f"expected {d} query lists plus <p> <q>, got {len(body)}")
        p = _parse_p(body[d])
        ranked = _parse_q(body[d + 1])
        models = {deg: _read_model(n, modeldir, p, cfg, degree=deg) for deg in range(d)}
        query_lists = body[:d]
    elif mode == "both":
        if len(body) != n * d + d + 2:
            raise CliError(
                f"expected {n * d} class lists, {d} query lists, <p> and <q>; got {len(body)}"
            )
        p = _parse_p(body[n * d + d])
        ranked = _parse_q(body[n * d + d + 1])
        models = build_models(body[: n * d], p)
        for deg, model in models.items():
            _write_model(model, outdir, cfg, degree=deg)
        query_lists = body[n * d : n * d + d]
    else:
        raise CliError(f"unknown classify-all-dims mode -{mode}")
    per_degree = [_load_list(ql, cfg) for ql in query_lists]
    counts = {len(qs) for qs in per_degree}
    if len(counts) != 1:
        raise CliError(f"query lists disagree on the number of queries: {sorted(counts)}")
    results = []
    for i in range(counts.pop()):
        queries = {deg: per_degree[deg][i] for deg in range(d)}
        results.append(
            stats.classifier_all_dims(models, queries, p, mode="ranked" if ranked else "best")
        )
    atomic_write_text(outdir / "classification.txt", _classification_lines(results, ranked))
    return 0


def _cmd_generate(args: list[str], cfg: ToolboxConfig) -> int:
    if len(args) != 4:
        raise CliError("generate needs <n> <count> <seed> <outdir>")
    n, count, seed = int(args[0]), int(args[1]), int(args[2])
    outdir = Path(args[3])
    outdir.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        file_seed = int(np.random.SeedSequence([seed % 2**64, i]).generate_state(1)[0])
        write_barcode_file(random_barcode(n, file_seed), outdir / f"random_{i}.txt")
    return 0


def _cmd_truncate(args: list[str], cfg: ToolboxConfig) -> int:
    out = _take_flag(args, "--out")
    policy = _take_flag(args, "--policy", "truncate")
    if len(args) != 2:
        raise CliError("truncate needs <file> <cutoff>")
    barcode = detect_and_load(args[0], infinity=cfg.infinity_magic, strict=cfg.strict_parse)
    if not isinstance(barcode, Barcode):
        raise CliError(f"{args[0]} is a landscape file; truncate applies to barcodes")
    result = truncate_infinite(barcode, float(args[1]), policy=policy)
    text = serialize_barcode(result, infinity=cfg.infinity_magic)
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)
    return 0


_COMMANDS = {
    "average": _cmd_average,
    "plot": _cmd_plot,
    "plot-many": _cmd_plot_many,
    "norms": _cmd_norms,
    "distance-matrix": _cmd_distance_matrix,
    "permutation-test": _cmd_permutation_test,
    "classify": _cmd_classify,
    "classify-all-dims": _cmd_classify_all_dims,
    "generate": _cmd_generate,
    "truncate": _cmd_truncate,
}


def cli_dispatch(argv: list[str]) -> int:
    """Run one toolbox command; returns the process exit status."""
    args = list(argv)
    config_path = _take_flag(args, "--config")
    try:
        if config_path is not None:
            cfg = load_config(config_path)
        elif Path(DEFAULT_CONFIG_NAME).exists():
            cfg = load_config(DEFAULT_CONFIG_NAME)
        else:
            cfg = ToolboxConfig()
        if not args or args[0] in ("-h", "--help", "help"):
            print(USAGE)
            return 0 if args else 2
        command = args[0]
        handler = _COMMANDS.get(command)
        if handler is None:
            print(f"unknown command: {command}\n\n{USAGE}", file=sys.stderr)
            return 2
        return handler(args[1:], cfg)
    except CliError as exc:
        print(f"error: {exc}\n\n{USAGE}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
