from dataclasses import replace

import numpy as np
import pytest

from _circuits import random_circuit
from cvcat.decomp import lower_fully
from cvcat.encoder import encode_circuit
from cvcat.ir import Circuit, Gate, GateKind as K, named_state
from cvcat.numerics import circuit_unitary, fidelity_up_to_phase
from cvcat.verifier import (
    aux_state,
    approx_t_error_bound,
    check_catalyst_restored,
    check_catalytic,
    check_equiv_up_to_phase,
    data_block_unitary,
)


def _enc(*gates, n=1):
    return encode_circuit(Circuit(n, list(gates)))


class TestCatalytic:
    def test_single_t(self):
        rep = check_catalytic(_enc(Gate(K.T, (0,))), 1e-10, 100, 0)
        assert rep.passed and rep.worst_deviation <= 1e-10 and rep.trials == 100
        assert abs(abs(rep.phase) - 1) < 1e-12

    def test_empty(self):
        rep = check_catalytic(encode_circuit(Circuit(2, [])))
        assert rep.passed and rep.worst_deviation == 0

    def test_wrong_beta_fails(self):
        e = _enc(Gate(K.S, (0,)))
        rep = check_catalytic(e, catalyst_states={"beta": named_state("zero")})
        assert not rep.passed

    def test_recorded_phase(self):
        # the fitted phase is exp(i pi/4 * phase_eighths)
        e = _enc(Gate(K.H, (0,)))
        rep = check_catalytic(e)
        assert rep.phase == pytest.approx(np.exp(1j * np.pi / 4 * e.phase_eighths), abs=1e-12)

    def test_deterministic(self, rng):
        e = encode_circuit(random_circuit(rng, 2, 10))
        assert check_catalytic(e, seed=3) == check_catalytic(e, seed=3)

    def test_tolerance_monotone(self, rng):
        e = encode_circuit(random_circuit(rng, 2, 10))
        dev = check_catalytic(e).worst_deviation
        for tol in (dev, 2 * dev, 1e-3):
            assert check_catalytic(e, tol).passed

    def test_unknown_role(self):
        with pytest.raises(ValueError, match="role"):
            check_catalytic(_enc(Gate(K.S, (0,))), catalyst_states={"delta": [1, 0]})

    def test_trials_validated(self):
        with pytest.raises(ValueError):
            check_catalytic(_enc(Gate(K.S, (0,))), trials=0)

    def test_cap(self):
        e = encode_circuit(Circuit(15, []))
        with pytest.raises(ValueError, match="cap"):
            check_catalytic(e)

    def test_json_keys(self):
        rep = check_catalytic(_enc(Gate(K.V, (0,))))
        assert set(rep.to_json()) == {
            "passed", "worst_deviation", "trials", "phase_re", "phase_im", "notes"
        }


class TestRestored:
    @pytest.mark.parametrize("kind", [K.V, K.S, K.T, K.TDG, K.H])
    def test_correct_encodings(self, kind):
        assert check_catalyst_restored(_enc(Gate(kind, (0,)))).passed

    def test_truncated_t_fails(self):
        e = _enc(Gate(K.T, (0,)))
        cut = replace(e, circuit=e.circuit.with_gates(e.circuit.gates[:-1]))
        assert not check_catalyst_restored(cut).passed

    def test_elided_gamma(self):
        e = _enc(Gate(K.H, (0,)), Gate(K.S, (0,)))
        assert set(e.circuit.catalysts) == {"alpha", "beta"}
        assert check_catalyst_restored(e).passed

    def test_aux_state_defaults_to_zero(self):
        e = encode_circuit(Circuit(1, [Gate(K.V, (0,))]))
        e = replace(e, circuit=Circuit(3, e.circuit.gates, e.circuit.catalysts))
        np.testing.assert_allclose(aux_state(e), [0, 0, 1, 0])


class TestEquivalence:
    def test_h_and_vsv(self):
        gates, _ = lower_fully(Gate(K.H, (0,)))
        rep = check_equiv_up_to_phase(Circuit(1, [Gate(K.H, (0,))]), Circuit(1, gates))
        assert rep.passed
        assert rep.phase == pytest.approx(np.exp(1j * np.pi / 4), abs=1e-12)

    def test_ccx_sleator_weinfurter(self):
        seq = [Gate(K.CV, (1, 2)), Gate(K.CX, (0, 1)), Gate(K.CVDG, (1, 2)),
               Gate(K.CX, (0, 1)), Gate(K.CV, (0, 2))]
        assert check_equiv_up_to_phase(Circuit(3, [Gate(K.CCX, (0, 1, 2))]),
                                       Circuit(3, seq), 1e-12).passed

    def test_cx_is_not_cv(self):
        rep = check_equiv_up_to_phase(Circuit(2, [Gate(K.CX, (0, 1))]),
                                      Circuit(2, [Gate(K.CV, (0, 1))]))
        assert not rep.passed

    def test_width_mismatch(self):
        with pytest.raises(ValueError, match="width"):
            check_equiv_up_to_phase(Circuit(1, []), Circuit(2, []))


def test_catalytic_implies_data_block_equivalence(rng):
    for _ in range(5):
        e = encode_circuit(random_circuit(rng, 2, 12))
        assert check_catalytic(e).passed
        block = data_block_unitary(e)
        assert fidelity_up_to_phase(block, circuit_unitary(e.source)) >= 1 - 1e-12


def test_error_bound_heuristic():
    assert approx_t_error_bound(1.0) == 0
    assert approx_t_error_bound(0.99, 3) == pytest.approx(6 * 0.1)
    with pytest.raises(ValueError):
        approx_t_error_bound(1.5)
