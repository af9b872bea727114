"""Single- and multi-threshold majority decoding of LDPC codes over GF(q)."""

from .code import (
    CodeParams,
    LdpcCode,
    Syndrome,
    format_code,
    parse_code,
    read_code,
    sample_regular_code,
    syndrome,
    syndrome_bounds,
    syndrome_update,
    write_code,
)
from .decoder import (
    DecodeResult,
    MessageSummary,
    ThresholdSchedule,
    TraceEvent,
    compute_messages,
    decode_multi,
    decode_single,
    replacement_decision,
)
from .galois import GaloisField
from .radius import alpha_multi, alpha_single, radius_table, threshold_bound, w_sequence

__version__ = "0.1.0"
