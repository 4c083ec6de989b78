"""Code construction: candidate screening, the sorting-based suffix-group
search, a brute-force optimum for small instances, and expurgation.

The search is fully deterministic: candidates are enumerated in canonical
order, groups are sorted by (size, key), members are tried lexicographically
and all tie-breaks are pinned, so a given configuration always produces the
same code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels
from .seq import ConstraintSpec, enumerate_constrained, reverse_complement
from .similarity import (
    SS_TOL,
    DEFAULT_SS_PARAMS,
    SimilarityModel,
    edit_distance,
    hamming_distance,
)


@dataclass(frozen=True)
class DesignConfig:
    """A complete design run: constraints, model, and one threshold.

    `t_th` (maximum similarity, ss model) and `d_th` (minimum distance,
    hamming/edit models) are mutually exclusive and must match the model
    kind.
    """

    spec: ConstraintSpec
    model: SimilarityModel
    t_th: float | None = None
    d_th: int | None = None

    def __post_init__(self):
        if (self.t_th is None) == (self.d_th is None):
            raise ValueError("exactly one of t_th / d_th must be set")
        if self.model.kind == "ss":
            if self.t_th is None:
                raise ValueError("the ss model takes t_th, not d_th")
            if not 0.0 <= self.t_th <= 1.0:
                raise ValueError(f"t_th must lie in [0, 1], got {self.t_th!r}")
        else:
            if self.d_th is None:
                raise ValueError(f"the {self.model.kind} model takes d_th, not t_th")
            if not isinstance(self.d_th, int) or self.d_th < 1:
                raise ValueError(f"d_th must be a positive integer, got {self.d_th!r}")

    @property
    def threshold(self):
        return self.t_th if self.t_th is not None else self.d_th


@dataclass
class Code:
    """An accepted set of codewords, in acceptance order."""

    words: list[str]
    config: DesignConfig


@dataclass
class SuffixGroup:
    key: str
    members: list[str]
    eliminated: bool = False


@dataclass
class GroupIndex:
    """Groups sorted by ascending size and each group's linked neighbour."""

    groups: list[SuffixGroup]
    neighbor: dict[str, str | None] = field(default_factory=dict)


def suffix_length(n: int, t_th: float | None = None, d_th: int | None = None) -> int:
    """Number of trailing symbols shared by the members of one group.

    Two sequences agreeing on this suffix cannot jointly satisfy the
    threshold, which is what justifies taking at most one codeword per
    group: for the ss model the shared suffix alone pushes the similarity
    past t_th, and for distance models the n - d_th + 1 shared symbols
    leave fewer than d_th positions free to differ.
    """
    if (t_th is None) == (d_th is None):
        raise ValueError("exactly one of t_th / d_th must be set")
    if t_th is not None:
        if not 0.0 <= t_th <= 1.0:
            raise ValueError(f"t_th must lie in [0, 1], got {t_th!r}")
        return min(n, math.floor(n * t_th + SS_TOL) + 1)
    return max(1, min(n, n - d_th + 1))


def group_by_suffix(candidates, length: int) -> list[SuffixGroup]:
    """Partition candidates by their trailing `length` symbols.

    Groups are keyed by the suffix and returned in lexicographic key order
    with lexicographically sorted members.
    """
    if length < 1:
        raise ValueError(f"suffix length must be >= 1, got {length}")
    buckets: dict[str, list[str]] = {}
    for s in candidates:
        if len(s) < length:
            raise ValueError(f"candidate {s!r} shorter than suffix length {length}")
        buckets.setdefault(s[len(s) - length:], []).append(s)
    return [SuffixGroup(key, sorted(buckets[key])) for key in sorted(buckets)]


def sort_and_link(groups: list[SuffixGroup]) -> GroupIndex:
    """Sort groups by ascending size (ties: key) and link neighbours.

    Each group is linked to the distinct group whose key is closest in
    Hamming distance (ties: lexicographically smallest key). A single group
    gets no neighbour.
    """
    ordered = sorted(groups, key=lambda g: (len(g.members), g.key))
    keys = [g.key for g in ordered]
    neighbor: dict[str, str | None] = {}
    for key in keys:
        if len(keys) == 1:
            neighbor[key] = None
            continue
        best_key = None
        best_d = None
        for other in keys:
            if other == key:
                continue
            d = sum(a != b for a, b in zip(key, other))
            if best_d is None or d < best_d or (d == best_d and other < best_key):
                best_d, best_key = d, other
        neighbor[key] = best_key
    return GroupIndex(groups=ordered, neighbor=neighbor)


class _SSChecker:
    """Screens candidates under the ss model, caching per-sequence data."""

    def __init__(self, params, t_th):
        self.params = params
        self.limit = t_th + SS_TOL
        self._info: dict[str, tuple[bytes, bytes, float, float]] = {}

    def _entry(self, s: str):
        cached = self._info.get(s)
        if cached is None:
            r = reverse_complement(s)
            bu, br = s.encode(), r.encode()
            a2, b2 = self.params.alpha2, self.params.beta2
            cached = (
                bu,
                br,
                kernels.self_weight_sum(bu, a2, b2),
                kernels.self_weight_sum(br, a2, b2),
            )
            self._info[s] = cached
        return cached

    def _tau(self, bu, bv, self_u, self_v):
        # mirrors similarity.ss, including its canonical pair orientation
        if bu == bv:
            return 1.0
        if bv < bu:
            bu, bv = bv, bu
        num = kernels.best_match_weight_sum(bu, bv, self.params.alpha1, self.params.beta1)
        return num / (self_u if self_u < self_v else self_v)

    def self_ok(self, x: str) -> bool:
        bu, br, su, sr = self._entry(x)
        return self._tau(bu, br, su, sr) <= self.limit

    def pair_ok(self, x: str, c: str) -> bool:
        bx, rx, sx, srx = self._entry(x)
        bc, rc_, sc, src = self._entry(c)
        return (
            self._tau(bx, bc, sx, sc) <= self.limit
            and self._tau(bx, rc_, sx, src) <= self.limit
            and self._tau(bc, rx, sc, srx) <= self.limit
        )


class _DistanceChecker:
    """Screens candidates under a minimum-distance model."""

    def __init__(self, kind, d_th):
        self.dist = hamming_distance if kind == "hamming" else edit_distance
        self.d_th = d_th
        self._rc: dict[str, str] = {}

    def _rc_of(self, s: str) -> str:
        r = self._rc.get(s)
        if r is None:
            r = reverse_complement(s)
            self._rc[s] = r
        return r

    def self_ok(self, x: str) -> bool:
        return self.dist(x, self._rc_of(x)) >= self.d_th

    def pair_ok(self, x: str, c: str) -> bool:
        return (
            self.dist(x, c) >= self.d_th
            and self.dist(x, self._rc_of(c)) >= self.d_th
            and self.dist(c, self._rc_of(x)) >= self.d_th
        )


def _make_checker(cfg: DesignConfig):
    if cfg.model.kind == "ss":
        return _SSChecker(cfg.model.params or DEFAULT_SS_PARAMS, cfg.t_th)
    return _DistanceChecker(cfg.model.kind, cfg.d_th)


def check_candidate(x: str, code: Code, cfg: DesignConfig) -> bool:
    """True iff `x` can join `code` without violating any constraint.

    The self check compares `x` against its own reverse complement; each
    accepted codeword `c` then contributes three cross checks: (x, c),
    (x, rc(c)) and (c, rc(x)). The last two differ under the ss model, so
    both orderings are screened.
    """
    if len(x) != cfg.spec.n:
        raise ValueError(f"candidate length {len(x)} != configured n {cfg.spec.n}")
    checker = _make_checker(cfg)
    return checker.self_ok(x) and all(checker.pair_ok(x, c) for c in code.words)


def search(cfg: DesignConfig) -> Code:
    """Suffix-group search for a code under `cfg`.

    Candidates are grouped by suffix (two sequences sharing it can never
    coexist), groups are visited in ascending size order, and each group
    contributes at most one codeword: members are tried lexicographically
    until one is accepted or the group is exhausted. After an acceptance
    the group is eliminated and its linked neighbour is given one batch of
    attempts the same way, being eliminated too if it yields a codeword.
    """
    candidates = enumerate_constrained(cfg.spec)
    code = Code(words=[], config=cfg)
    if not candidates:
        return code
    length = suffix_length(cfg.spec.n, t_th=cfg.t_th, d_th=cfg.d_th)
    index = sort_and_link(group_by_suffix(candidates, length))
    by_key = {g.key: g for g in index.groups}
    checker = _make_checker(cfg)

    def try_group(group: SuffixGroup) -> str | None:
        for x in group.members:
            if checker.self_ok(x) and all(checker.pair_ok(x, c) for c in code.words):
                return x
        return None

    for group in index.groups:
        if group.eliminated:
            continue
        accepted = try_group(group)
        if accepted is None:
            continue
        code.words.append(accepted)
        group.eliminated = True
        neighbor_key = index.neighbor.get(group.key)
        if neighbor_key is None:
            continue
        neighbor = by_key[neighbor_key]
        if neighbor.eliminated:
            continue
        follow_up = try_group(neighbor)
        if follow_up is not None:
            code.words.append(follow_up)
            neighbor.eliminated = True
    return code


def brute_force_oracle(cfg: DesignConfig, max_vertices: int = 2000) -> int:
    """Exact optimum code size for `cfg` via maximum clique.

    Vertices are the candidates passing the self check; edges join pairs
    passing every cross check. Refuses instances with more than
    `max_vertices` vertices.
    """
    candidates = enumerate_constrained(cfg.spec)
    checker = _make_checker(cfg)
    vertices = [x for x in candidates if checker.self_ok(x)]
    if len(vertices) > max_vertices:
        raise ValueError(
            f"instance too large for the brute-force optimum: "
            f"{len(vertices)} vertices > {max_vertices}"
        )
    masks = [0] * len(vertices)
    for i, u in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if checker.pair_ok(u, vertices[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return kernels.max_clique_size(masks)


def expurgate(code: Code, m: int) -> Code:
    """First `m` codewords in acceptance order, as a new code."""
    if not 0 <= m <= len(code.words):
        raise ValueError(f"cannot expurgate a {len(code.words)}-word code to {m}")
    return Code(words=list(code.words[:m]), config=code.config)
