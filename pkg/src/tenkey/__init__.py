"""Personal multi-tap keypad layouts from a user's own text archive."""

from .corpus import (
    CharsetPolicy,
    EmptyCorpus,
    InsufficientCandidates,
    MultigramCandidate,
    NgramTable,
    NormalizedCorpus,
    ngram_counts,
    normalize,
    top_candidates,
)
from .cost import (
    EmptySegmentation,
    FitnessBreakdown,
    FitnessWeights,
    SegmentationResult,
    TypingCostEngine,
    deprecated_set,
    evaluate,
    f1_strokes,
    f2_same_key,
    f3_same_hand,
    f4_distance,
    segment,
)
from .evolve import (
    GaParams,
    MutationKind,
    TrialReport,
    between,
    between_crossover,
    multi_trial_optimize,
    mutate,
    random_layout,
    steady_state_run,
)
from .keypad import (
    Hand,
    KeySlot,
    Layout,
    LayoutFileError,
    LayoutValidationError,
    Provenance,
    abc_baseline,
    hand_of,
    key_distance,
    load_layout,
    save_layout,
    valid_slots,
    validate,
)
from .multigrams import (
    MultigramSet,
    SelectionParams,
    candidate_mutation,
    eager_crossover,
    eager_init,
    rank_shift_fitness,
    select_multigrams,
)
from .sessions import (
    InvalidRecord,
    SessionRecord,
    SessionScore,
    levenshtein,
    load_session_file,
    save_session_file,
    score_session,
)
from .stats import EmptySample, RankSumResult, summarize, wilcoxon_rank_sum

__version__ = "0.1.0"
