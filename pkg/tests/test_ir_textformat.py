import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _circuits import random_circuit
from cvcat.ir import Circuit, Gate, GateKind as K, gate
from cvcat.textformat import ParseError, parse_circuit, print_circuit, read_circuit, write_circuit


class TestGate:
    def test_str(self):
        assert str(gate("cv", 0, 1)) == "cv 0 1"

    def test_from_name_case_insensitive(self):
        assert K.from_name("CCX") is K.CCX

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown gate"):
            K.from_name("toffoli")

    @pytest.mark.parametrize(
        "kind,qubits,match",
        [(K.CX, (0,), "qubit"), (K.CX, (1, 1), "duplicate"), (K.H, (-1,), "negative")],
    )
    def test_invalid(self, kind, qubits, match):
        with pytest.raises(ValueError, match=match):
            Gate(kind, qubits)

    def test_remap(self):
        assert gate("ccx", 0, 1, 2).remap({0: 5, 1: 4, 2: 3}).qubits == (5, 4, 3)


class TestCircuit:
    def test_out_of_range_gate(self):
        with pytest.raises(ValueError):
            Circuit(2, [gate("cx", 0, 2)])

    def test_catalyst_order_normalized(self):
        c = Circuit(3, [], {"gamma": 0, "alpha": 2})
        assert list(c.catalysts) == ["alpha", "gamma"]

    def test_bad_catalysts(self):
        with pytest.raises(ValueError, match="role"):
            Circuit(2, [], {"delta": 0})
        with pytest.raises(ValueError, match="distinct"):
            Circuit(2, [], {"alpha": 0, "beta": 0})

    def test_concat_and_counts(self):
        a = Circuit(2, [gate("cv", 0, 1)])
        b = Circuit(2, [gate("ncv", 1, 0), gate("h", 0)])
        c = a + b
        assert len(c) == 3 and c.native_count == 2 and c.count(K.H) == 1

    def test_concat_width_mismatch(self):
        with pytest.raises(ValueError):
            Circuit(1, []) + Circuit(2, [])


TEXT = """\
# header comes first
qubits 4
cv 0 1   # trailing comment

catalyst beta 3 minus
catalyst alpha 2 one
CCX 0 1 3
"""


class TestParser:
    def test_parse(self):
        c = parse_circuit(TEXT)
        assert c.n_qubits == 4
        assert c.catalysts == {"alpha": 2, "beta": 3}
        assert [str(g) for g in c.gates] == ["cv 0 1", "ccx 0 1 3"]

    def test_canonical_print(self):
        assert print_circuit(parse_circuit(TEXT)) == (
            "qubits 4\n"
            "catalyst alpha 2 one\n"
            "catalyst beta 3 minus\n"
            "cv 0 1\n"
            "ccx 0 1 3\n"
        )

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(0, 20))
    def test_round_trip(self, seed, n, n_gates):
        rng = np.random.default_rng(seed)
        kinds = tuple(k for k in K if k.is_unitary)
        c = random_circuit(rng, n, n_gates, kinds)
        assert parse_circuit(print_circuit(c)) == c

    @pytest.mark.parametrize(
        "text,lineno,match",
        [
            ("cv 0 1\n", 1, "first statement"),
            ("qubits 2\nqubits 3\n", 2, "duplicate"),
            ("qubits 2\ncv 0 2\n", 2, ">= declared"),
            ("qubits 2\ncv 0\n", 2, "takes 2"),
            ("qubits 2\ncv 1 1\n", 2, "duplicate qubit"),
            ("qubits 2\nfoo 1\n", 2, "unknown gate"),
            ("qubits 2\nh x\n", 2, "integer"),
            ("qubits 2\ncatalyst alpha 1 minus\n", 2, "must be 'one'"),
            ("qubits 2\ncatalyst alpha 1 one\ncatalyst alpha 0 one\n", 3, "duplicate catalyst"),
            ("qubits 2\ncatalyst alpha 1 one\ncatalyst beta 1 minus\n", 3, "already holds"),
            ("qubits 2\ncatalyst omega 1 one\n", 2, "unknown catalyst"),
            ("# nothing\n", 0, "missing"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, lineno, match):
        with pytest.raises(ParseError, match=match) as info:
            parse_circuit(text)
        assert info.value.lineno == lineno

    def test_file_round_trip(self, tmp_path):
        c = parse_circuit(TEXT)
        path = tmp_path / "c.txt"
        write_circuit(c, path)
        assert read_circuit(path) == c
