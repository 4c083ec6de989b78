"""Post-hoc evaluation: independent code validation, similarity-gap and
free-energy-gap computation, hybridization pair manifests, and model
comparison.

Everything here recomputes from scratch through the public similarity
operations; nothing is reused from the search path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .design import Code, DesignConfig, expurgate, search
from .seq import GC_TOL, gc_fraction, max_homopolymer_run, reverse_complement, validate_seq
from .similarity import (
    SS_TOL,
    DEFAULT_SS_PARAMS,
    SSParams,
    edit_distance,
    hamming_distance,
    ss,
)

REPORT_SCHEMA_VERSION = 1

# role tags of the hybridization pair manifest
ROLE_SELF_FOLD = "SELF_FOLD"  # (u, u)
ROLE_SEQ_SEQ = "SEQ_SEQ"      # (u, v)
ROLE_SEQ_RC = "SEQ_RC"        # (u, rc(v))
ROLE_RC_RC = "RC_RC"          # (rc(u), rc(v))
ROLE_PERFECT = "PERFECT"      # (u, rc(u)), the desirable duplex


@dataclass(frozen=True)
class Violation:
    clause: str
    pair: tuple[str, str]
    value: float

    def to_json_dict(self):
        return {"clause": self.clause, "pair": list(self.pair), "value": self.value}


@dataclass(frozen=True)
class PairStat:
    clause: str
    first: int
    second: int
    value: float


@dataclass
class EvaluationReport:
    """Everything validate_code finds out about one code."""

    size: int
    model_kind: str
    threshold: float | int | None
    max_ssss: float | None = None
    max_srcss: float | None = None
    t_gap: float | None = None
    min_ssd: int | None = None
    min_srcd: int | None = None
    pairs: list[PairStat] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    degenerate: bool = False

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json_dict(self, config: dict | None = None, code: list[str] | None = None):
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "config": config or {},
            "code": code if code is not None else [],
            "size": self.size,
            "model": self.model_kind,
            "threshold": self.threshold,
            "max_ssss": self.max_ssss,
            "max_srcss": self.max_srcss,
            "t_gap": self.t_gap,
            "min_ssd": self.min_ssd,
            "min_srcd": self.min_srcd,
            "degenerate": self.degenerate,
            "violations": [v.to_json_dict() for v in self.violations],
        }
        return doc


def validate_code(code: Code, cfg: DesignConfig) -> EvaluationReport:
    """Recompute every design clause of `code` from scratch.

    Checks GC content and homopolymer runs per codeword, then every
    cross-pair clause of the configured model. Violations are reported as
    data; an empty violation list means the code is valid.
    """
    words = code.words
    report = EvaluationReport(
        size=len(words),
        model_kind=cfg.model.kind,
        threshold=cfg.threshold,
        degenerate=len(words) == 1,
    )
    spec = cfg.spec
    for u in words:
        g = gc_fraction(u)
        if g < spec.gc_low - GC_TOL or g > spec.gc_high + GC_TOL:
            report.violations.append(Violation("GC", (u, u), g))
        run = max_homopolymer_run(u)
        if run > spec.run_max:
            report.violations.append(Violation("RUN", (u, u), run))
        if len(u) != spec.n:
            report.violations.append(Violation("LENGTH", (u, u), len(u)))

    if not words:
        return report

    if cfg.model.kind == "ss":
        params = cfg.model.params or DEFAULT_SS_PARAMS
        limit = cfg.t_th + SS_TOL
        max_ssss = None
        max_srcss = None
        for i, u in enumerate(words):
            for j in range(i + 1, len(words)):
                v = words[j]
                tau = ss(u, v, params)
                report.pairs.append(PairStat("SSSS", i, j, tau))
                if max_ssss is None or tau > max_ssss:
                    max_ssss = tau
                if tau > limit:
                    report.violations.append(Violation("SSSS", (u, v), tau))
        for i, u in enumerate(words):
            for j, v in enumerate(words):
                tau = ss(u, reverse_complement(v), params)
                report.pairs.append(PairStat("SRCSS", i, j, tau))
                if max_srcss is None or tau > max_srcss:
                    max_srcss = tau
                if tau > limit:
                    report.violations.append(Violation("SRCSS", (u, v), tau))
        report.max_ssss = max_ssss
        report.max_srcss = max_srcss
        peak = max_srcss if max_ssss is None else max(max_ssss, max_srcss)
        report.t_gap = peak - 1.0
    else:
        dist = hamming_distance if cfg.model.kind == "hamming" else edit_distance
        min_ssd = None
        min_srcd = None
        for i, u in enumerate(words):
            for j in range(i + 1, len(words)):
                v = words[j]
                d = dist(u, v)
                report.pairs.append(PairStat("SSD", i, j, d))
                if min_ssd is None or d < min_ssd:
                    min_ssd = d
                if d < cfg.d_th:
                    report.violations.append(Violation("SSD", (u, v), d))
        for i, u in enumerate(words):
            for j, v in enumerate(words):
                d = dist(u, reverse_complement(v))
                report.pairs.append(PairStat("SRCD", i, j, d))
                if min_srcd is None or d < min_srcd:
                    min_srcd = d
                if d < cfg.d_th:
                    report.violations.append(Violation("SRCD", (u, v), d))
        report.min_ssd = min_ssd
        report.min_srcd = min_srcd
    return report


def t_gap(code: Code, params: SSParams = DEFAULT_SS_PARAMS) -> float:
    """Similarity gap: the worst similarity anywhere in the code, minus 1.

    Spans every self-RC similarity, every cross similarity and every
    cross-RC similarity; for a single-word code only the self-RC term
    exists and the result is degenerate.
    """
    words = code.words
    if not words:
        raise ValueError("t_gap of an empty code is undefined")
    peak = max(ss(u, reverse_complement(u), params) for u in words)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            if i == j:
                continue
            peak = max(peak, ss(u, v, params), ss(u, reverse_complement(v), params))
    return peak - 1.0


# ---------------------------------------------------------------------------
# free-energy tables and the free-energy gap
# ---------------------------------------------------------------------------


class MfeTableError(ValueError):
    """Malformed free-energy table input."""


class MissingMfeEntriesError(KeyError):
    """A required duplex is absent from the free-energy table."""

    def __init__(self, missing: list[tuple[str, str]]):
        self.missing = sorted(set(missing))
        listing = ", ".join(f"({a}, {b})" for a, b in self.missing)
        super().__init__(f"{len(self.missing)} free-energy entries missing: {listing}")


@dataclass
class MfeTable:
    """Externally computed duplex free energies, keyed by ordered pair.

    Values are in kcal/mol; more negative means a more stable duplex.
    Strictly positive values are clamped to 0 on use (no hybridization
    potential).
    """

    entries: dict[tuple[str, str], float]
    temperature_label: str = "37C"

    @classmethod
    def load(cls, path, pair_ids: dict[str, tuple[str, str]] | None = None) -> "MfeTable":
        """Parse a tab-separated table file.

        Each record line is either ``pair-id <TAB> value`` (resolved through
        `pair_ids`) or ``seq1 <TAB> seq2 <TAB> value``. Lines starting with
        ``#`` and blank lines are skipped; anything else unparseable is a
        hard error with its line number.
        """
        entries: dict[tuple[str, str], float] = {}
        with open(path, "r", encoding="ascii") as fh:
            for no, raw in enumerate(fh, start=1):
                line = raw.rstrip("\r\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) == 2:
                    pair_id, value_text = parts
                    if pair_ids is None:
                        raise MfeTableError(
                            f"{path}: line {no}: pair-id {pair_id!r} given but no "
                            "pair manifest is available to resolve it"
                        )
                    if pair_id not in pair_ids:
                        raise MfeTableError(f"{path}: line {no}: unknown pair-id {pair_id!r}")
                    key = pair_ids[pair_id]
                elif len(parts) == 3:
                    s1, s2, value_text = parts
                    try:
                        key = (validate_seq(s1), validate_seq(s2))
                    except ValueError as exc:
                        raise MfeTableError(f"{path}: line {no}: {exc}") from None
                else:
                    raise MfeTableError(
                        f"{path}: line {no}: expected 2 or 3 tab-separated fields, "
                        f"got {len(parts)}"
                    )
                try:
                    value = float(value_text)
                except ValueError:
                    raise MfeTableError(
                        f"{path}: line {no}: bad free-energy value {value_text!r}"
                    ) from None
                if key in entries and entries[key] != value:
                    raise MfeTableError(
                        f"{path}: line {no}: conflicting duplicate entry for {key}"
                    )
                entries[key] = value
        return cls(entries=entries)

    def clamped(self, a: str, b: str) -> float:
        """Entry for (a, b) with strictly positive values clamped to 0."""
        v = self.entries[(a, b)]
        return 0.0 if v > 0.0 else v


@dataclass(frozen=True)
class MfePair:
    pair_id: str
    role: str
    seq1: str
    seq2: str


def export_mfe_pairs(code: Code) -> list[MfePair]:
    """Every duplex needed to evaluate the free-energy gap, exactly once.

    Both orderings of symmetric duplexes are emitted (external tools are
    not guaranteed to be order-independent); pairs identical as strings are
    collapsed, keeping the first role encountered.
    """
    words = code.words
    if not words:
        raise ValueError("cannot export pairs of an empty code")
    rcs = {u: reverse_complement(u) for u in words}
    raw: list[tuple[str, str, str]] = []
    for u in words:
        raw.append((ROLE_SELF_FOLD, u, u))
        raw.append((ROLE_PERFECT, u, rcs[u]))
    for u in words:
        for v in words:
            if u == v:
                continue
            raw.append((ROLE_SEQ_SEQ, u, v))
            raw.append((ROLE_SEQ_RC, u, rcs[v]))
            raw.append((ROLE_RC_RC, rcs[u], rcs[v]))
    out: list[MfePair] = []
    seen: set[tuple[str, str]] = set()
    for role, s1, s2 in raw:
        if (s1, s2) in seen:
            continue
        seen.add((s1, s2))
        out.append(MfePair(f"P{len(out) + 1:04d}", role, s1, s2))
    return out


def write_mfe_pair_manifest(fh, pairs: Iterable[MfePair], temperature_label: str = "37C"):
    fh.write(f"# temperature={temperature_label}\n")
    for p in pairs:
        fh.write(f"{p.pair_id}\t{p.role}\t{p.seq1}\t{p.seq2}\n")


def free_energy_gap(code: Code, mfe: MfeTable) -> float:
    """Worst undesirable-minus-desirable free-energy margin over the code.

    For each codeword the most stable undesirable duplex (self-fold, any
    cross pair, any cross pair against a reverse complement, any RC-RC
    pair) is compared with the desirable duplex of the word and its own
    reverse complement; the smallest margin over all words is returned.
    Larger is better. For a single-word code only the self-fold term
    opposes the desirable duplex.
    """
    words = code.words
    if not words:
        raise ValueError("free_energy_gap of an empty code is undefined")
    required = [(p.seq1, p.seq2) for p in export_mfe_pairs(code)]
    missing = [key for key in required if key not in mfe.entries]
    if missing:
        raise MissingMfeEntriesError(missing)
    rcs = {u: reverse_complement(u) for u in words}
    gap = None
    for u in words:
        worst = mfe.clamped(u, u)
        for v in words:
            if v == u:
                continue
            worst = min(
                worst,
                mfe.clamped(u, v),
                mfe.clamped(u, rcs[v]),
                mfe.clamped(rcs[u], rcs[v]),
            )
        margin = worst - mfe.clamped(u, rcs[u])
        if gap is None or margin < gap:
            gap = margin
    return gap


# ---------------------------------------------------------------------------
# model comparison
# ---------------------------------------------------------------------------


@dataclass
class ComparisonCell:
    """One model's results in a comparison run."""

    cfg: DesignConfig
    code: Code
    raw_size: int
    size: int
    report: EvaluationReport
    t_gap: float | None
    delta: float | None
    missing_mfe: int
    pairs: list[MfePair]


def compare_models(
    cfgs: list[DesignConfig],
    match_sizes: bool = False,
    mfe: MfeTable | None = None,
) -> list[ComparisonCell]:
    """Run the same search under each configuration and tabulate results.

    All configurations must share the sequence length. With `match_sizes`,
    larger codes are expurgated down to the smallest size so the models are
    compared at equal cardinality. With a free-energy table, the gap is
    computed per cell when every required entry is present; otherwise the
    number of missing entries is reported.
    """
    if not cfgs:
        raise ValueError("no configurations to compare")
    lengths = {cfg.spec.n for cfg in cfgs}
    if len(lengths) != 1:
        raise ValueError(f"configurations must share n, got {sorted(lengths)}")
    codes = [search(cfg) for cfg in cfgs]
    raw_sizes = [len(c.words) for c in codes]
    if match_sizes:
        target = min(raw_sizes)
        codes = [expurgate(c, target) for c in codes]
    cells = []
    for cfg, code, raw in zip(cfgs, codes, raw_sizes):
        report = validate_code(code, cfg)
        params = cfg.model.params if cfg.model.kind == "ss" else DEFAULT_SS_PARAMS
        gap = t_gap(code, params) if code.words else None
        delta = None
        missing = 0
        pairs = export_mfe_pairs(code) if code.words else []
        if mfe is not None and code.words:
            try:
                delta = free_energy_gap(code, mfe)
            except MissingMfeEntriesError as exc:
                missing = len(exc.missing)
        cells.append(
            ComparisonCell(
                cfg=cfg,
                code=code,
                raw_size=raw,
                size=len(code.words),
                report=report,
                t_gap=gap,
                delta=delta,
                missing_mfe=missing,
                pairs=pairs,
            )
        )
    return cells
