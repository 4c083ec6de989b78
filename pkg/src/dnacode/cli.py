"""Command-line interface.

Subcommands: enumerate, design, eval, compare, oracle. Parameters resolve
with the precedence command line > config file > defaults. Diagnostics go
to stderr; data goes to files or stdout, never both interleaved.

Exit status: 0 success / valid, 1 validation failure, 2 usage or config
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .design import Code, DesignConfig, brute_force_oracle, search
from .evaluate import (
    MfeTable,
    MissingMfeEntriesError,
    compare_models,
    export_mfe_pairs,
    free_energy_gap,
    t_gap,
    validate_code,
    write_mfe_pair_manifest,
)
from .seq import (
    ConstraintSpec,
    SequenceError,
    enumerate_constrained,
    read_sequence_file,
    write_sequence_file,
)
from .similarity import SSParams, SimilarityModel

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3


class ConfigError(ValueError):
    """Bad or inconsistent run configuration."""


_DEFAULTS = {
    "gc_low": 0.4,
    "gc_high": 0.6,
    "run_max": 3,
    "model": "ss",
    "alpha1": 1.0,
    "beta1": 0.0,
    "alpha2": 1.0,
    "beta2": 0.0,
}

_CONFIG_TYPES = {
    "n": int,
    "gc_low": float,
    "gc_high": float,
    "run_max": int,
    "model": str,
    "t_th": float,
    "d_th": int,
    "alpha1": float,
    "beta1": float,
    "alpha2": float,
    "beta2": float,
    "mfe_table": str,
    "out": str,
}

_PARAM_KEYS = (
    "n", "gc_low", "gc_high", "run_max", "model", "t_th", "d_th",
    "alpha1", "beta1", "alpha2", "beta2",
)


def load_config_file(path) -> dict:
    """Parse a key=value config file; '#' starts a comment."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}: line {no}: expected key = value")
            key = key.strip()
            val = val.strip()
            if key not in _CONFIG_TYPES:
                raise ConfigError(f"{path}: line {no}: unknown key {key!r}")
            try:
                values[key] = _CONFIG_TYPES[key](val)
            except ValueError:
                raise ConfigError(
                    f"{path}: line {no}: bad value {val!r} for {key!r}"
                ) from None
    return values


def _resolve(args, config_path=None) -> dict:
    merged = dict(_DEFAULTS)
    path = config_path if config_path is not None else getattr(args, "config", None)
    if path:
        merged.update(load_config_file(path))
    for key in _PARAM_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _build_spec(p: dict) -> ConstraintSpec:
    if p.get("n") is None:
        raise ConfigError("--n is required (flag or config file)")
    try:
        return ConstraintSpec(
            n=p["n"], gc_low=p["gc_low"], gc_high=p["gc_high"], run_max=p["run_max"]
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _build_design_config(p: dict) -> DesignConfig:
    spec = _build_spec(p)
    kind = p["model"]
    try:
        if kind == "ss":
            if p.get("t_th") is None:
                raise ConfigError("the ss model requires --t-th")
            if p.get("d_th") is not None:
                raise ConfigError("--d-th does not apply to the ss model")
            params = SSParams(p["alpha1"], p["beta1"], p["alpha2"], p["beta2"])
            return DesignConfig(spec=spec, model=SimilarityModel("ss", params), t_th=p["t_th"])
        if p.get("d_th") is None:
            raise ConfigError(f"the {kind} model requires --d-th")
        if p.get("t_th") is not None:
            raise ConfigError("--t-th only applies to the ss model")
        return DesignConfig(spec=spec, model=SimilarityModel(kind), d_th=p["d_th"])
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _config_doc(cfg: DesignConfig) -> dict:
    doc = {
        "n": cfg.spec.n,
        "gc_low": cfg.spec.gc_low,
        "gc_high": cfg.spec.gc_high,
        "run_max": cfg.spec.run_max,
        "model": cfg.model.kind,
    }
    if cfg.model.kind == "ss":
        params = cfg.model.params
        doc.update(
            t_th=cfg.t_th,
            alpha1=params.alpha1,
            beta1=params.beta1,
            alpha2=params.alpha2,
            beta2=params.beta2,
        )
    else:
        doc["d_th"] = cfg.d_th
    return doc


def _write_json(doc: dict, out_path) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    spec = _build_spec(_resolve(args))
    seqs = enumerate_constrained(spec)
    if args.out:
        write_sequence_file(args.out, seqs)
    else:
        for s in seqs:
            sys.stdout.write(s + "\n")
    print(f"{len(seqs)} sequences", file=sys.stderr)
    return EXIT_OK


def cmd_design(args) -> int:
    cfg = _build_design_config(_resolve(args))
    code = search(cfg)
    write_sequence_file(args.out, code.words)
    report = validate_code(code, cfg)
    doc = report.to_json_dict(config=_config_doc(cfg), code=code.words)
    report_path = str(args.out) + ".report.json"
    _write_json(doc, report_path)
    print(
        f"designed {len(code.words)} codewords -> {args.out} (report: {report_path})",
        file=sys.stderr,
    )
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_eval(args) -> int:
    words = read_sequence_file(args.code_file)
    lengths = {len(w) for w in words}
    if len(lengths) > 1:
        raise ConfigError(f"code file mixes sequence lengths: {sorted(lengths)}")
    p = _resolve(args)
    if words:
        n = lengths.pop()
        if p.get("n") is None:
            p["n"] = n
        elif p["n"] != n:
            raise ConfigError(f"--n {p['n']} does not match code word length {n}")
    cfg = _build_design_config(p)
    code = Code(words=words, config=cfg)
    report = validate_code(code, cfg)
    doc = report.to_json_dict(config=_config_doc(cfg), code=code.words)
    mfe_path = args.mfe_table or p.get("mfe_table")
    if mfe_path and words:
        pairs = export_mfe_pairs(code)
        table = MfeTable.load(mfe_path, pair_ids={q.pair_id: (q.seq1, q.seq2) for q in pairs})
        doc["delta"] = free_energy_gap(code, table)
    _write_json(doc, args.out)
    n_viol = len(report.violations)
    print(f"{len(words)} codewords, {n_viol} violations", file=sys.stderr)
    return EXIT_OK if report.valid else EXIT_INVALID


def _cell_row(index: int, cell) -> list[str]:
    cfg = cell.cfg
    if cfg.model.kind == "ss":
        measures = [m for m in (cell.report.max_ssss, cell.report.max_srcss) if m is not None]
        measure = f"{max(measures):.6f}" if measures else "-"
    else:
        measures = [m for m in (cell.report.min_ssd, cell.report.min_srcd) if m is not None]
        measure = str(min(measures)) if measures else "-"
    if cell.delta is not None:
        delta = f"{cell.delta:.3f}"
    elif cell.missing_mfe:
        delta = f"NA(missing={cell.missing_mfe})"
    else:
        delta = "-"
    return [
        f"cell{index:02d}",
        cfg.model.kind,
        str(cfg.threshold),
        str(cell.raw_size),
        str(cell.size),
        measure,
        f"{cell.t_gap:.6f}" if cell.t_gap is not None else "-",
        delta,
    ]


def cmd_compare(args) -> int:
    if not args.config:
        raise ConfigError("compare requires at least one --config")
    cfgs = [_build_design_config(_resolve(args, config_path=path)) for path in args.config]
    table = MfeTable.load(args.mfe_table) if args.mfe_table else None
    cells = compare_models(cfgs, match_sizes=args.match_sizes, mfe=table)

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    header = ["cell", "model", "threshold", "raw_size", "size", "measure", "t_gap", "delta"]
    rows = [header] + [_cell_row(i + 1, cell) for i, cell in enumerate(cells)]
    tsv = "\n".join("\t".join(r) for r in rows) + "\n"
    (outdir / "comparison.tsv").write_text(tsv, encoding="utf-8")
    sys.stdout.write(tsv)

    all_valid = True
    for i, cell in enumerate(cells, start=1):
        stem = f"cell{i:02d}"
        write_sequence_file(outdir / f"{stem}.code.txt", cell.code.words)
        doc = cell.report.to_json_dict(config=_config_doc(cell.cfg), code=cell.code.words)
        if cell.delta is not None:
            doc["delta"] = cell.delta
        _write_json(doc, outdir / f"{stem}.report.json")
        with open(outdir / f"{stem}.pairs.tsv", "w", encoding="ascii", newline="\n") as fh:
            write_mfe_pair_manifest(fh, cell.pairs)
        all_valid = all_valid and cell.report.valid
    print(f"{len(cells)} cells -> {outdir}", file=sys.stderr)
    return EXIT_OK if all_valid else EXIT_INVALID


def cmd_oracle(args) -> int:
    cfg = _build_design_config(_resolve(args))
    optimum = brute_force_oracle(cfg)
    found = len(search(cfg).words)
    sys.stdout.write(f"oracle_size\t{optimum}\n")
    sys.stdout.write(f"search_size\t{found}\n")
    ratio = f"{found / optimum:.4f}" if optimum else "-"
    sys.stdout.write(f"ratio\t{ratio}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_spec_flags(p):
    p.add_argument("--n", type=int, help="sequence length")
    p.add_argument("--gc-low", type=float, dest="gc_low", help="minimum GC fraction")
    p.add_argument("--gc-high", type=float, dest="gc_high", help="maximum GC fraction")
    p.add_argument("--run-max", type=int, dest="run_max", help="maximum homopolymer run")


def _add_model_flags(p):
    p.add_argument("--model", choices=("hamming", "edit", "ss"), help="similarity model")
    p.add_argument("--t-th", type=float, dest="t_th", help="maximum similarity (ss model)")
    p.add_argument("--d-th", type=int, dest="d_th", help="minimum distance (hamming/edit)")
    p.add_argument("--alpha1", type=float, help="cross-score consecutive-G/C weight")
    p.add_argument("--beta1", type=float, help="cross-score non-consecutive-G/C weight")
    p.add_argument("--alpha2", type=float, help="self-score consecutive-G/C weight")
    p.add_argument("--beta2", type=float, help="self-score non-consecutive-G/C weight")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnacode",
        description="Design and evaluate DNA codes under combinatorial and similarity constraints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all constrained candidate sequences")
    _add_spec_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("design", help="search for a code and write it with its report")
    _add_spec_flags(p)
    _add_model_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--out", required=True, help="code file; report goes to <out>.report.json")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("eval", help="validate a code file and report its gaps")
    p.add_argument("code_file", help="one sequence per line")
    _add_spec_flags(p)
    _add_model_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--mfe-table", dest="mfe_table", help="free-energy table (tab-separated)")
    p.add_argument("--out", help="report file (default: stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="run the same search under several configurations")
    _add_spec_flags(p)
    _add_model_flags(p)
    p.add_argument(
        "--config", action="append", help="config file per cell (repeatable)", default=None
    )
    p.add_argument("--match-sizes", action="store_true", dest="match_sizes",
                   help="expurgate all codes to the smallest size")
    p.add_argument("--mfe-table", dest="mfe_table", help="shared free-energy table")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="compare the search size against the exact optimum")
    _add_spec_flags(p)
    _add_model_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except MissingMfeEntriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, SequenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
