"""Gate words over the fault-tolerant generator alphabet.

A word stores its gates in operator order: ``gates[0]`` is the leftmost
matrix factor of the product, i.e. the gate applied *last* in circuit
time.  ``unitary`` multiplies the factors in list order, so a simulator
must apply a word from the end of the list backwards.

Qubit 0 is the most significant bit of the basis index everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

_Z8 = np.exp(1j * np.pi / 4)

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.diag([1, -1]).astype(complex)
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_TOFFOLI = np.eye(8, dtype=complex)
_TOFFOLI[[6, 7], :] = _TOFFOLI[[7, 6], :]

#: Numeric matrices of the named generators.
GATE_MATRICES: dict[str, np.ndarray] = {
    "H": _H,
    "T": np.diag([1, _Z8]),
    "Tdag": np.diag([1, _Z8.conjugate()]),
    "S": np.diag([1, 1j]).astype(complex),
    "Sdag": np.diag([1, -1j]).astype(complex),
    "X": _X,
    "Y": _Y,
    "Z": _Z,
    "CNOT": _CNOT,
    "TOFFOLI": _TOFFOLI,
}

GATE_ARITY = {name: int(np.log2(m.shape[0])) for name, m in GATE_MATRICES.items()}

_INVERSE_NAME = {
    "H": "H",
    "T": "Tdag",
    "Tdag": "T",
    "S": "Sdag",
    "Sdag": "S",
    "X": "X",
    "Y": "Y",
    "Z": "Z",
    "CNOT": "CNOT",
    "TOFFOLI": "TOFFOLI",
}

# 1-qubit rewrites onto {H, T, Tdag}.  Exact except Y, which drops the
# global phase i (Y = i X Z).
_HT_EXPANSION = {
    "H": ("H",),
    "T": ("T",),
    "Tdag": ("Tdag",),
    "S": ("T", "T"),
    "Sdag": ("Tdag", "Tdag"),
    "Z": ("T", "T", "T", "T"),
    "X": ("H", "T", "T", "T", "T", "H"),
    "Y": ("H", "T", "T", "T", "T", "H", "T", "T", "T", "T"),
}


@dataclass(frozen=True)
class Gate:
    """One named generator applied to specific qubit indices."""

    name: str
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.name not in GATE_MATRICES:
            raise ValidationError(f"unknown gate name {self.name!r}")
        if len(self.targets) != GATE_ARITY[self.name]:
            raise ValidationError(
                f"{self.name} takes {GATE_ARITY[self.name]} targets, "
                f"got {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValidationError(f"duplicate targets in {self}")

    def matrix(self) -> np.ndarray:
        return GATE_MATRICES[self.name]


def g(name: str, *targets: int) -> Gate:
    """Shorthand constructor: ``g("CNOT", 0, 1)``."""
    return Gate(name, tuple(targets))


@dataclass(frozen=True)
class GateWord:
    """Ordered product of generators on ``width`` qubits (operator order)."""

    gates: tuple[Gate, ...]
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValidationError("width must be positive")
        for gate in self.gates:
            if any(t < 0 or t >= self.width for t in gate.targets):
                raise ValidationError(
                    f"gate {gate} out of range for width {self.width}"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def names(self) -> list[str]:
        return [gate.name for gate in self.gates]


def word(names: list[str] | tuple[str, ...], width: int = 1) -> GateWord:
    """Build a single-qubit word (all targets 0) from gate names."""
    return GateWord(tuple(Gate(n, (0,)) for n in names), width)


def embed(matrix: np.ndarray, targets: tuple[int, ...], width: int) -> np.ndarray:
    """Tensor-embed a k-qubit gate onto the given qubits of a width-n register."""
    k = len(targets)
    dim = 1 << width
    if matrix.shape != (1 << k, 1 << k):
        raise ValidationError("gate dimension does not match target count")
    full = np.zeros((dim, dim), dtype=complex)
    shifts = [width - 1 - t for t in targets]
    rest = [q for q in range(width) if q not in targets]
    rest_shifts = [width - 1 - q for q in rest]
    for sub in range(1 << len(rest)):
        base = 0
        for j, sh in enumerate(rest_shifts):
            base |= ((sub >> (len(rest) - 1 - j)) & 1) << sh
        for gr in range(1 << k):
            row = base
            for j, sh in enumerate(shifts):
                row |= ((gr >> (k - 1 - j)) & 1) << sh
            for gc in range(1 << k):
                col = base
                for j, sh in enumerate(shifts):
                    col |= ((gc >> (k - 1 - j)) & 1) << sh
                full[row, col] = matrix[gr, gc]
    return full


def unitary(w: GateWord) -> np.ndarray:
    """Numeric realization: the matrix product of the word's factors in list order."""
    dim = 1 << w.width
    out = np.eye(dim, dtype=complex)
    for gate in w.gates:
        if w.width == GATE_ARITY[gate.name] and gate.targets == tuple(
            range(w.width)
        ):
            out = out @ gate.matrix()
        else:
            out = out @ embed(gate.matrix(), gate.targets, w.width)
    return out


def inverse(w: GateWord) -> GateWord:
    """The word realizing the inverse operator."""
    inv = tuple(
        Gate(_INVERSE_NAME[gate.name], gate.targets) for gate in reversed(w.gates)
    )
    return GateWord(inv, w.width)


def expand_to_ht(w: GateWord) -> GateWord:
    """Rewrite a single-qubit word onto the emitted alphabet {H, T, Tdag}.

    Exact as an operator except for Y, which is rewritten to X·Z and so
    picks up a global phase (harmless under the projective metric).
    """
    if w.width != 1:
        raise ValidationError("only single-qubit words can be expanded")
    out: list[Gate] = []
    for gate in w.gates:
        try:
            names = _HT_EXPANSION[gate.name]
        except KeyError:
            raise ValidationError(f"{gate.name} has no {{H,T}} expansion") from None
        out.extend(Gate(n, (0,)) for n in names)
    return GateWord(tuple(out), 1)
