"""Pairwise similarity and distance models.

Three models are supported:

* ``hamming`` / ``edit`` -- classic unweighted distances, where a *larger*
  distance means a safer pair (minimum-distance semantics);
* ``ss`` -- similarity significance, where the similarity of two sequences
  is the weighted match score of their best ungapped alignment normalised
  by the smaller of the two self scores (maximum-similarity semantics).

The SS score of a pair against a threshold uses ``<=`` with an absolute
tolerance of ``SS_TOL`` so that exact boundary ratios are compliant.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .seq import reverse_complement

SS_TOL = 1e-12

MODEL_KINDS = ("hamming", "edit", "ss")


@dataclass(frozen=True)
class Alignment:
    """An ungapped relative shift of two equal-length sequences.

    `shift` is the offset of the second sequence against the first; the
    overlap excludes `overhang` (= |shift|) positions on each end.
    `run_len` is the longest run of consecutive identical aligned pairs in
    the overlap, `extra_matches` counts the remaining identical pairs, and
    `score = 2 * run_len + extra_matches` is the alignment objective.
    """

    shift: int
    overhang: int
    overlap_len: int
    run_len: int
    extra_matches: int
    score: int


@dataclass(frozen=True)
class SSParams:
    """Weights of the similarity-significance model.

    `alpha1`/`beta1` apply to cross-sequence scores, `alpha2`/`beta2` to
    self scores. alpha rewards an identical G/C pair following an identical
    G/C pair; beta rewards one following an identical A/T pair.
    """

    alpha1: float = 1.0
    beta1: float = 0.0
    alpha2: float = 1.0
    beta2: float = 0.0

    def __post_init__(self):
        for name in ("alpha1", "beta1", "alpha2", "beta2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


DEFAULT_SS_PARAMS = SSParams()


@dataclass(frozen=True)
class SimilarityModel:
    """Model selector: kind plus SS weights when kind == 'ss'."""

    kind: str
    params: SSParams | None = None

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}")
        if self.kind == "ss" and self.params is None:
            object.__setattr__(self, "params", DEFAULT_SS_PARAMS)
        if self.kind != "ss" and self.params is not None:
            raise ValueError(f"params only apply to the ss model, not {self.kind!r}")


def hamming_distance(u: str, v: str) -> int:
    """Number of positions at which equal-length sequences differ."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a != b for a, b in zip(u, v))


def edit_distance(u: str, v: str) -> int:
    """Levenshtein distance with unit insert/delete/substitute costs."""
    if len(u) < len(v):
        u, v = v, u
    prev = list(range(len(v) + 1))
    for i, a in enumerate(u, start=1):
        cur = [i]
        for j, b in enumerate(v, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


def _as_alignment(n: int, shift: int, run_len: int, extra: int, score: int) -> Alignment:
    return Alignment(
        shift=shift,
        overhang=abs(shift),
        overlap_len=n - abs(shift),
        run_len=run_len,
        extra_matches=extra,
        score=score,
    )


def alignment_at(u: str, v: str, shift: int) -> Alignment:
    """Alignment statistics at a pinned shift (no optimisation)."""
    n = len(u)
    if len(v) != n:
        raise ValueError(f"length mismatch: {n} vs {len(v)}")
    if not -(n - 1) <= shift <= n - 1:
        raise ValueError(f"shift {shift} out of range for length {n}")
    run, extra = _stats_at(u.encode(), v.encode(), shift)
    return _as_alignment(n, shift, run, extra, 2 * run + extra)


def _stats_at(bu: bytes, bv: bytes, shift: int) -> tuple[int, int]:
    n = len(bu)
    if shift >= 0:
        a, b = bu[shift:], bv[: n - shift]
    else:
        a, b = bu[: n + shift], bv[-shift:]
    run = best = total = 0
    for x, y in zip(a, b):
        if x == y:
            run += 1
            total += 1
            best = max(best, run)
        else:
            run = 0
    return best, total - best


def best_alignment(u: str, v: str) -> Alignment:
    """The ungapped shift maximising score = 2*run_len + extra_matches.

    Ties prefer a longer run, then a smaller |shift|, then the negative
    shift; with no identical pair anywhere this is shift 0 with zero
    matches.
    """
    n = len(u)
    if len(v) != n:
        raise ValueError(f"length mismatch: {n} vs {len(v)}")
    shift, run, extra, score = kernels.best_alignment_stats(u.encode(), v.encode())
    return _as_alignment(n, shift, run, extra, score)


def similarity_vector(u: str, v: str, a: Alignment, alpha: float, beta: float) -> list[float]:
    """Per-pair weights over the overlap of `a`, left to right.

    Mismatched pairs score 0 and reset the carried state; identical pairs
    score 1, and identical G/C pairs additionally earn alpha after an
    identical G/C pair or beta after an identical A/T pair. The leftmost
    overlap pair carries no state.
    """
    n = len(u)
    if len(v) != n:
        raise ValueError(f"length mismatch: {n} vs {len(v)}")
    shift = a.shift
    if shift >= 0:
        pairs = zip(u[shift:], v[: n - shift])
    else:
        pairs = zip(u[: n + shift], v[-shift:])
    weights: list[float] = []
    state = 0  # 0: none/mismatch, 1: identical G/C, 2: identical A/T
    for x, y in pairs:
        if x == y:
            w = 1.0
            if x in "GC":
                if state == 1:
                    w += alpha
                elif state == 2:
                    w += beta
                state = 1
            else:
                state = 2
            weights.append(w)
        else:
            state = 0
            weights.append(0.0)
    return weights


def self_score(u: str, params: SSParams = DEFAULT_SS_PARAMS) -> float:
    """Weighted self score: every position matches itself at shift 0."""
    return kernels.self_weight_sum(u.encode(), params.alpha2, params.beta2)


def ss(u: str, v: str, params: SSParams = DEFAULT_SS_PARAMS) -> float:
    """Similarity significance of two equal-length sequences, in [0, 1].

    The weighted match score of the best alignment (cross weights) divided
    by the smaller of the two self scores (self weights). Identical inputs
    score exactly 1.

    The score is a function of the unordered pair: it is evaluated with the
    lexicographically smaller sequence first. Without that canonical
    orientation the sign tie-break of `best_alignment` could select
    mirror-image alignments with different weighted scores for (u, v) and
    (v, u), breaking the symmetry the score is defined to have.
    """
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    if u == v:
        return 1.0
    if v < u:
        u, v = v, u
    bu, bv = u.encode(), v.encode()
    num = kernels.best_match_weight_sum(bu, bv, params.alpha1, params.beta1)
    den = min(
        kernels.self_weight_sum(bu, params.alpha2, params.beta2),
        kernels.self_weight_sum(bv, params.alpha2, params.beta2),
    )
    return num / den


def ss_rc(u: str, v: str, params: SSParams = DEFAULT_SS_PARAMS) -> float:
    """SS of `u` against the reverse complement of `v`."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return ss(u, reverse_complement(v), params)


def model_similarity_exceeds(
    model: SimilarityModel, u: str, v: str, rc_side: bool, threshold
) -> bool:
    """True iff the pair violates the model's constraint at `threshold`.

    For the ss model that is similarity strictly above the threshold (plus
    tolerance); for distance models it is distance strictly below the
    minimum-distance threshold.
    """
    w = reverse_complement(v) if rc_side else v
    if model.kind == "ss":
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"ss threshold must lie in [0, 1], got {threshold!r}")
        return ss(u, w, model.params) > threshold + SS_TOL
    if threshold != int(threshold) or threshold < 1:
        raise ValueError(f"distance threshold must be a positive integer, got {threshold!r}")
    if model.kind == "hamming":
        return hamming_distance(u, w) < threshold
    return edit_distance(u, w) < threshold
