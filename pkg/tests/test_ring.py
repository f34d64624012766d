import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftbasis import words
from ftbasis.errors import ValidationError
from ftbasis.ring import (
    IMAG,
    ONE,
    SHOR_BASIS,
    SQRT2,
    ZETA8,
    ExactMatrix,
    RingElement,
    exact_controlled,
    exact_gate,
    exact_mul,
    exact_word,
    gaussian_obstruction,
)

coeff = st.integers(min_value=-(10**6), max_value=10**6)
elements = st.builds(RingElement, coeff, coeff, coeff, coeff)


def random_shor_word(rng, length, width=3):
    gates = []
    for _ in range(length):
        name = SHOR_BASIS[rng.integers(0, len(SHOR_BASIS))]
        arity = {"CNOT": 2, "TOFFOLI": 3}.get(name, 1)
        targets = tuple(int(t) for t in rng.permutation(width)[:arity])
        gates.append((name, targets))
    return gates


def word_product(gates, width=3):
    out = ExactMatrix.identity(1 << width)
    for name, targets in gates:
        out = exact_mul(out, exact_gate(name, targets, width))
    return out


class TestRingElement:
    def test_zeta8_fourth_power_is_minus_one(self):
        z4 = ZETA8 * ZETA8 * ZETA8 * ZETA8
        assert z4 == RingElement(-1, 0, 0, 0)

    def test_sqrt2_squares_to_two(self):
        assert SQRT2 * SQRT2 == RingElement(2, 0, 0, 0)

    def test_numeric_embedding(self):
        assert ZETA8.to_complex() == pytest.approx(np.exp(1j * np.pi / 4))
        assert IMAG.to_complex() == pytest.approx(1j)
        assert SQRT2.to_complex() == pytest.approx(np.sqrt(2))

    @given(elements, elements, elements)
    def test_mul_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(elements, elements, elements)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(elements, elements)
    def test_mul_commutative(self, x, y):
        assert x * y == y * x

    @given(elements, elements)
    def test_conjugation_is_ring_homomorphism(self, x, y):
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()

    @given(elements)
    def test_conjugation_involutive(self, x):
        assert x.conj().conj() == x

    @given(elements)
    def test_conjugation_matches_complex_conjugate(self, x):
        assert x.conj().to_complex() == pytest.approx(
            np.conj(x.to_complex()), abs=1e-6, rel=1e-9
        )

    @given(elements)
    def test_mul_matches_complex(self, x):
        got = (x * ZETA8).to_complex()
        assert got == pytest.approx(
            x.to_complex() * np.exp(1j * np.pi / 4), abs=1e-6, rel=1e-9
        )

    @given(elements)
    def test_sqrt2_division_roundtrip(self, x):
        y = x * SQRT2
        assert y.divisible_by_sqrt2()
        assert y.div_sqrt2() == x

    def test_indivisible_element_raises(self):
        with pytest.raises(ValidationError):
            ZETA8.div_sqrt2()


class TestExactGate:
    def test_hadamard_form(self):
        h = exact_gate("H", (0,), 1)
        assert h.denom_exp == 1
        assert h.entry(0, 0) == ONE and h.entry(0, 1) == ONE
        assert h.entry(1, 0) == ONE and h.entry(1, 1) == -ONE

    def test_t_gate_form(self):
        t = exact_gate("T", (0,), 1)
        assert t.denom_exp == 0
        assert t.entry(1, 1) == ZETA8

    def test_cnot_is_permutation(self):
        c = exact_gate("CNOT", (0, 1), 2)
        assert c.denom_exp == 0
        perm = np.array([[c.entry(i, j).a for j in range(4)] for i in range(4)])
        assert (perm.sum(axis=0) == 1).all() and (perm.sum(axis=1) == 1).all()

    def test_numeric_matches_float_gates(self):
        for name in ("H", "S", "T", "X", "Y", "Z"):
            got = exact_gate(name, (0,), 1).to_complex()
            assert np.max(np.abs(got - words.GATE_MATRICES[name])) < 1e-15

    def test_embedding_matches_float_embed(self, rng):
        for name, targets, width in (
            ("H", (1,), 3),
            ("CNOT", (2, 0), 3),
            ("TOFFOLI", (1, 2, 0), 3),
        ):
            got = exact_gate(name, targets, width).to_complex()
            want = words.embed(words.GATE_MATRICES[name], targets, width)
            assert np.max(np.abs(got - want)) < 1e-14

    def test_bad_targets_rejected(self):
        with pytest.raises(ValidationError):
            exact_gate("CNOT", (0, 3), 2)
        with pytest.raises(ValidationError):
            exact_gate("CNOT", (1, 1), 2)
        with pytest.raises(ValidationError):
            exact_gate("Q", (0,), 1)


class TestExactMul:
    def test_h_squared_is_identity(self):
        h = exact_gate("H", (0,), 1)
        assert exact_mul(h, h) == ExactMatrix.identity(2)

    def test_t_squared_is_s(self):
        t = exact_gate("T", (0,), 1)
        assert exact_mul(t, t) == exact_gate("S", (0,), 1)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            exact_mul(exact_gate("H", (0,), 1), exact_gate("CNOT", (0, 1), 2))

    def test_random_word_matches_float_oracle(self, rng):
        for _ in range(5):
            gates = random_shor_word(rng, 30) + [("T", (int(rng.integers(0, 3)),))]
            exact = word_product(gates)
            numeric = np.eye(8, dtype=complex)
            for name, targets in gates:
                numeric = numeric @ words.embed(
                    words.GATE_MATRICES[name], targets, 3
                )
            assert np.max(np.abs(exact.to_complex() - numeric)) < 1e-10

    def test_long_word_numeric_consistency(self, rng):
        gates = random_shor_word(rng, 100)
        exact = word_product(gates)
        numeric = np.eye(8, dtype=complex)
        for name, targets in gates:
            numeric = numeric @ words.embed(words.GATE_MATRICES[name], targets, 3)
        assert np.max(np.abs(exact.to_complex() - numeric)) < 1e-10

    def test_object_and_int64_paths_agree(self, rng):
        # Same product computed in vectorized storage and with big-int headroom.
        a_small = word_product(random_shor_word(rng, 12))
        b_small = word_product(random_shor_word(rng, 12))
        small = exact_mul(a_small, b_small)
        a_big = ExactMatrix(
            np.asarray(a_small.coeffs.tolist(), dtype=object), a_small.denom_exp
        )
        scale = 2**70
        a_scaled = ExactMatrix(
            np.asarray(
                [[[int(x) * scale for x in a_big.coeffs[i, j]] for j in range(8)]
                 for i in range(8)],
                dtype=object,
            ),
            a_small.denom_exp,
        )
        assert a_scaled.coeffs.dtype == object
        big = exact_mul(a_scaled, b_small)
        # 2^70 is sqrt(2)-divisible, so both sides canonicalize identically.
        expected = ExactMatrix(
            np.asarray(
                [[[int(x) * scale for x in small.coeffs[i, j]] for j in range(8)]
                 for i in range(8)],
                dtype=object,
            ),
            small.denom_exp,
        )
        assert big == expected


class TestCanonicalForm:
    def test_reduction_idempotent(self, rng):
        m = word_product(random_shor_word(rng, 40))
        again = ExactMatrix(m.coeffs, m.denom_exp)
        assert again == m

    def test_scaled_representation_reduces(self):
        # sqrt(2)^2 * I over denominator sqrt(2)^2 collapses to I.
        arr = np.zeros((2, 2, 4), dtype=np.int64)
        arr[0, 0, 0] = arr[1, 1, 0] = 2
        assert ExactMatrix(arr, 2) == ExactMatrix.identity(2)

    def test_equality_requires_canonical_match(self):
        t = exact_gate("T", (0,), 1)
        s = exact_gate("S", (0,), 1)
        assert t != s

    def test_serialization_roundtrip(self, rng):
        m = word_product(random_shor_word(rng, 25))
        data = m.to_json_dict()
        assert set(data) == {"dim", "denomExp", "entries"}
        assert all(isinstance(x, str) for quad in data["entries"] for x in quad)
        assert ExactMatrix.from_json_dict(data) == m


class TestGaussianObstruction:
    def test_shor_generators_pass(self):
        for name in ("H", "S", "X", "Y", "Z"):
            assert gaussian_obstruction(exact_gate(name, (0,), 1))
        assert gaussian_obstruction(exact_gate("CNOT", (0, 1), 2))
        assert gaussian_obstruction(exact_gate("TOFFOLI", (0, 1, 2), 3))

    def test_t_gate_fails(self):
        assert not gaussian_obstruction(exact_gate("T", (0,), 1))

    def test_closure_on_random_words(self, rng):
        for _ in range(300):
            length = int(rng.integers(1, 51))
            assert gaussian_obstruction(word_product(random_shor_word(rng, length)))

    def test_t_word_still_obstructed(self, rng):
        # One T inside a Shor word keeps the obstruction (odd zeta component).
        gates = random_shor_word(rng, 10) + [("T", (0,))] + random_shor_word(rng, 10)
        assert not gaussian_obstruction(word_product(gates))


class TestExactHelpers:
    def test_exact_word_handles_inverse_tags(self):
        sdag = exact_word([("Sdag", (0,))], 1)
        assert exact_mul(sdag, exact_gate("S", (0,), 1)) == ExactMatrix.identity(2)
        tdag = exact_word([("Tdag", (0,))], 1)
        assert exact_mul(tdag, exact_gate("T", (0,), 1)) == ExactMatrix.identity(2)

    def test_exact_controlled_matches_numeric(self):
        cs = exact_controlled(exact_gate("S", (0,), 1))
        want = np.diag([1, 1, 1, 1j])
        assert np.max(np.abs(cs.to_complex() - want)) < 1e-15
        sqrt_x = exact_word([("H", (0,)), ("S", (0,)), ("H", (0,))], 1)
        csx = exact_controlled(sqrt_x)
        want = np.eye(4, dtype=complex)
        want[2:, 2:] = sqrt_x.to_complex()
        assert np.max(np.abs(csx.to_complex() - want)) < 1e-15
