"""Sequence primitives: alphabet, Watson-Crick operations, composition
checks, and constrained candidate enumeration.

Sequences are plain uppercase ``ACGT`` strings, written 5'->3'. The
canonical ordering everywhere is lexicographic with A < C < G < T.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

BASES = "ACGT"
GC_BASES = frozenset("GC")
COMPLEMENT = {"A": "T", "T": "A", "C": "G", "G": "C"}
_COMPLEMENT_TABLE = str.maketrans("ACGT", "TGCA")

# absolute tolerance for comparing GC fractions against configured bounds
GC_TOL = 1e-12

# 4**n enumeration guard; lengths beyond this are refused
ENUMERATION_CAP = 14


class SequenceError(ValueError):
    """Text that does not parse as an uppercase ACGT sequence."""


def validate_seq(seq: str, *, line: int | None = None) -> str:
    """Return `seq` unchanged if it is a valid sequence, else raise."""
    where = f" (line {line})" if line is not None else ""
    if not isinstance(seq, str) or not seq:
        raise SequenceError(f"empty or non-string sequence{where}")
    for ch in seq:
        if ch not in COMPLEMENT:
            raise SequenceError(
                f"invalid character {ch!r} in sequence {seq!r}{where}; "
                "expected uppercase A/C/G/T"
            )
    return seq


def is_gc(base: str) -> bool:
    return base in GC_BASES


def reverse_complement(u: str) -> str:
    """Reverse complement, 5'->3' (A<->T, C<->G, order reversed)."""
    return u.translate(_COMPLEMENT_TABLE)[::-1]


def gc_fraction(u: str) -> float:
    """Fraction of G/C bases."""
    return (u.count("G") + u.count("C")) / len(u)


def max_homopolymer_run(u: str) -> int:
    """Length of the longest run of identical consecutive bases."""
    best = cur = 1
    for a, b in zip(u, u[1:]):
        cur = cur + 1 if a == b else 1
        if cur > best:
            best = cur
    return best


@dataclass(frozen=True)
class ConstraintSpec:
    """Combinatorial constraints: length, GC-fraction window, homopolymer cap.

    The GC window is closed on both ends; bounds are compared with a small
    absolute tolerance so that exact rational fractions (e.g. 2/5 vs 0.4)
    are never excluded by floating-point rounding.
    """

    n: int
    gc_low: float = 0.4
    gc_high: float = 0.6
    run_max: int = 3

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not 0.0 <= self.gc_low <= self.gc_high <= 1.0:
            raise ValueError(
                f"need 0 <= gc_low <= gc_high <= 1, got [{self.gc_low}, {self.gc_high}]"
            )
        if not isinstance(self.run_max, int) or self.run_max < 1:
            raise ValueError(f"run_max must be a positive integer, got {self.run_max!r}")

    def admits(self, seq: str) -> bool:
        """True iff `seq` satisfies every constraint (length included)."""
        if len(seq) != self.n:
            return False
        g = gc_fraction(seq)
        if g < self.gc_low - GC_TOL or g > self.gc_high + GC_TOL:
            return False
        return max_homopolymer_run(seq) <= self.run_max


def enumerate_constrained(spec: ConstraintSpec, cap: int = ENUMERATION_CAP) -> list[str]:
    """All length-n sequences satisfying `spec`, in lexicographic order.

    Equivalent to filtering the full 4**n space; implemented as a DFS that
    prunes on the running GC count and homopolymer run, which keeps larger
    n affordable. Lengths above `cap` are refused.
    """
    if spec.n > cap:
        raise ValueError(
            f"n={spec.n} exceeds the enumeration cap ({cap}); "
            "the candidate space 4**n is too large"
        )
    n = spec.n
    gc_ok = [
        g
        for g in range(n + 1)
        if spec.gc_low - GC_TOL <= g / n <= spec.gc_high + GC_TOL
    ]
    if not gc_ok:
        return []
    gc_min, gc_max = gc_ok[0], gc_ok[-1]

    out: list[str] = []
    prefix = [""] * n

    def extend(i: int, gc: int, run_base: str, run_len: int):
        if gc > gc_max or gc + (n - i) < gc_min:
            return
        if i == n:
            out.append("".join(prefix))
            return
        for b in BASES:
            nrun = run_len + 1 if b == run_base else 1
            if nrun > spec.run_max:
                continue
            prefix[i] = b
            extend(i + 1, gc + (b in GC_BASES), b, nrun)

    extend(0, 0, "", 0)
    return out


def read_sequences(lines: Iterable[str], *, source: str = "<input>") -> list[str]:
    """Parse one-sequence-per-line text; blank lines are skipped.

    Raises SequenceError with the offending line number on any other
    character.
    """
    out = []
    for no, raw in enumerate(lines, start=1):
        s = raw.rstrip("\r\n")
        if not s:
            continue
        try:
            out.append(validate_seq(s, line=no))
        except SequenceError as exc:
            raise SequenceError(f"{source}: {exc}") from None
    return out


def read_sequence_file(path) -> list[str]:
    with open(path, "r", encoding="ascii") as fh:
        return read_sequences(fh, source=str(path))


def write_sequence_file(path, seqs: Iterable[str]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for s in seqs:
            fh.write(s + "\n")
