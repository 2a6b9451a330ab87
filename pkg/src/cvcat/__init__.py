"""CV-only circuit encoding with catalyst qubits."""

from .encoder import CostReport, EncodedCircuit, cost_report, encode_circuit, table_one
from .ir import Circuit, Gate, GateKind
from .resprep import ground_state_mode, sample_minus_prep
from .router import LineLayout, route_line
from .textformat import ParseError, parse_circuit, print_circuit
from .tsynth import SynthesisResult, synthesize_t_state
from .verifier import (
    VerificationReport,
    check_catalyst_restored,
    check_catalytic,
    check_equiv_up_to_phase,
)

__version__ = "0.1.0"
