"""Streaming entropy extraction and coherent entanglement concentration.

A three-integer reversible state machine extracts perfectly random bits
from biased i.i.d. streams at the entropy rate, matching the optimal
whole-block extraction at every prefix length.  The same walk, run on the
two-row Young lattice behind a qubit-coupling transform, concentrates
streams of identical partially entangled pairs into perfect EPR pairs
without knowing the input state.  Brute-force oracles, symbolic balance
checks, and a dense state-vector simulator verify every desk-scale claim.
"""

from .binomial import (
    BinLayout,
    BinomialTable,
    TableCapError,
    bin_layout,
    binom,
    binom_bit,
    build_table,
)
from .elias import (
    BlockCodeword,
    SourceModel,
    bin_of_rank,
    block_codeword,
    conditional_bin_entropy,
    expected_yield,
    rank_in_type,
    type_of,
)
from .extractor import (
    ExtractorState,
    PauseResult,
    RunResult,
    StepResult,
    StreamExtractor,
    TapeLedger,
    initial_state,
    pause_mode_run,
    run,
    step,
    von_neumann,
)
from .young import (
    InvalidNodeError,
    QExtractorState,
    YoungNode,
    ballot_paths,
    dim,
    dim_bit,
    hook_dim_oracle,
    path_count,
    q_run,
    qstep,
)

__all__ = [
    "BinLayout",
    "BinomialTable",
    "BlockCodeword",
    "ExtractorState",
    "InvalidNodeError",
    "PauseResult",
    "QExtractorState",
    "RunResult",
    "SourceModel",
    "StepResult",
    "StreamExtractor",
    "TableCapError",
    "TapeLedger",
    "YoungNode",
    "ballot_paths",
    "bin_layout",
    "bin_of_rank",
    "binom",
    "binom_bit",
    "block_codeword",
    "build_table",
    "conditional_bin_entropy",
    "dim",
    "dim_bit",
    "expected_yield",
    "hook_dim_oracle",
    "initial_state",
    "path_count",
    "pause_mode_run",
    "q_run",
    "qstep",
    "rank_in_type",
    "run",
    "step",
    "type_of",
    "von_neumann",
]

__version__ = "0.1.0"
