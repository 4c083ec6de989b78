"""dnacode: design and evaluate DNA codes under combinatorial constraints.

The toolkit enumerates constrained candidate sequences, screens pairs with
Hamming, edit-distance or similarity-significance models, searches for
codes with a deterministic suffix-group algorithm, and evaluates finished
codes (similarity gaps, free-energy gaps from externally supplied duplex
energies).
"""

from .design import (
    Code,
    DesignConfig,
    GroupIndex,
    SuffixGroup,
    brute_force_oracle,
    check_candidate,
    expurgate,
    group_by_suffix,
    search,
    sort_and_link,
    suffix_length,
)
from .evaluate import (
    ComparisonCell,
    EvaluationReport,
    MfePair,
    MfeTable,
    MfeTableError,
    MissingMfeEntriesError,
    Violation,
    compare_models,
    export_mfe_pairs,
    free_energy_gap,
    t_gap,
    validate_code,
    write_mfe_pair_manifest,
)
from .kernels import BACKEND
from .seq import (
    ConstraintSpec,
    SequenceError,
    enumerate_constrained,
    gc_fraction,
    is_gc,
    max_homopolymer_run,
    read_sequence_file,
    read_sequences,
    reverse_complement,
    validate_seq,
    write_sequence_file,
)
from .similarity import (
    Alignment,
    SSParams,
    SimilarityModel,
    alignment_at,
    best_alignment,
    edit_distance,
    hamming_distance,
    model_similarity_exceeds,
    similarity_vector,
    ss,
    ss_rc,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "BACKEND",
    "Code",
    "ComparisonCell",
    "ConstraintSpec",
    "DesignConfig",
    "EvaluationReport",
    "GroupIndex",
    "MfePair",
    "MfeTable",
    "MfeTableError",
    "MissingMfeEntriesError",
    "SSParams",
    "SequenceError",
    "SimilarityModel",
    "SuffixGroup",
    "Violation",
    "alignment_at",
    "best_alignment",
    "brute_force_oracle",
    "check_candidate",
    "compare_models",
    "edit_distance",
    "enumerate_constrained",
    "expurgate",
    "export_mfe_pairs",
    "free_energy_gap",
    "gc_fraction",
    "group_by_suffix",
    "hamming_distance",
    "is_gc",
    "max_homopolymer_run",
    "model_similarity_exceeds",
    "read_sequence_file",
    "read_sequences",
    "reverse_complement",
    "search",
    "similarity_vector",
    "sort_and_link",
    "ss",
    "ss_rc",
    "suffix_length",
    "t_gap",
    "validate_code",
    "validate_seq",
    "write_mfe_pair_manifest",
    "write_sequence_file",
]
