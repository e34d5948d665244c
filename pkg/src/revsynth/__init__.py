"""Reversible logic synthesis by sorting bit strings with distance-1 swaps."""
from .embedding import (
    EmbeddingError, EmbeddingResult, IrreversibleTable, embed, garbage_bound,
    output_multiplicity,
)
from .gates import (
    Circuit, CircuitError, ToffoliGate, apply_gate, circuit_apply, circuit_to_spec,
    equivalent, gate_moved_points, realizes,
)
from .reduction import apply_templates, reduce, removable_pair, remove_useless_pairs
from .spec import (
    BitPattern, ReversibleSpec, SpecError, complexity, hamming, inverse, is_identity,
)
from .synthesis import (
    SynthesisError, SynthesisOptions, SynthesisReport, neighbor_candidates,
    reduce_controls, swap_gate, synthesize,
)

__version__ = "0.1.0"
