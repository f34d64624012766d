"""Exact arithmetic for gate matrices over Z[zeta_8].

Elements are written a + b z + c z^2 + d z^3 in the power basis of
z = e^{i pi/4}, with z^4 = -1.  Inside this ring sqrt(2) = z - z^3, so
divisibility by sqrt(2) is an exact parity condition on coefficients:
e is divisible iff a = c (mod 2) and b = d (mod 2), with quotient
((b-d)/2, (a+c)/2, (b+d)/2, (c-a)/2).

A matrix is stored as integer numerators over a global denominator
sqrt(2)^ell.  The canonical form has ell = 0 or at least one numerator
not divisible by sqrt(2).  Gaussian integers are the elements with
b = d = 0; the reachability obstruction for words over Shor's basis
{H, S, X, Y, Z, CNOT, TOFFOLI} asks whether some sqrt(2)-multiple of a
matrix is entirely Gaussian.  The test is one-directional: words over
Shor's basis always satisfy it, but satisfying it does not certify
membership.

Coefficients are arbitrary-precision integers.  Matrices whose
coefficients fit comfortably in int64 are held in vectorized numpy
storage; anything larger falls back to Python-int object arrays, so
results are exact at every size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ValidationError

# Stored int64 coefficients stay below this; products then bound-check
# against it so no intermediate can reach 2^63.
_INT64_SAFE = 1 << 61


@dataclass(frozen=True)
class RingElement:
    """a + b z + c z^2 + d z^3 with z = e^{i pi/4}."""

    a: int
    b: int
    c: int
    d: int

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __sub__(self, other: "RingElement") -> "RingElement":
        return RingElement(
            self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d
        )

    def __neg__(self) -> "RingElement":
        return RingElement(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "RingElement") -> "RingElement":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return RingElement(
            a1 * a2 - b1 * d2 - c1 * c2 - d1 * b2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + b1 * b2 + c1 * a2 - d1 * d2,
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
        )

    def conj(self) -> "RingElement":
        """Complex conjugation: z -> z^{-1} = -z^3."""
        return RingElement(self.a, -self.d, -self.c, -self.b)

    def is_gaussian(self) -> bool:
        return self.b == 0 and self.d == 0

    def divisible_by_sqrt2(self) -> bool:
        return (self.a + self.c) % 2 == 0 and (self.b + self.d) % 2 == 0

    def div_sqrt2(self) -> "RingElement":
        if not self.divisible_by_sqrt2():
            raise ValidationError(f"{self} is not divisible by sqrt(2)")
        return RingElement(
            (self.b - self.d) // 2,
            (self.a + self.c) // 2,
            (self.b + self.d) // 2,
            (self.c - self.a) // 2,
        )

    def to_complex(self) -> complex:
        z = np.exp(1j * np.pi / 4)
        return complex(self.a + self.b * z + self.c * z**2 + self.d * z**3)


ZERO = RingElement(0, 0, 0, 0)
ONE = RingElement(1, 0, 0, 0)
ZETA8 = RingElement(0, 1, 0, 0)
IMAG = RingElement(0, 0, 1, 0)
SQRT2 = RingElement(0, 1, 0, -1)

SHOR_BASIS = ("H", "S", "X", "Y", "Z", "CNOT", "TOFFOLI")
EXACT_GATE_NAMES = ("H", "S", "T", "X", "Y", "Z", "CNOT", "TOFFOLI")

# Base gates as (denominator exponent, coefficient tensor entries).
_GATE_TABLE: dict[str, tuple[int, list[list[RingElement]]]] = {
    "H": (1, [[ONE, ONE], [ONE, -ONE]]),
    "S": (0, [[ONE, ZERO], [ZERO, IMAG]]),
    "T": (0, [[ONE, ZERO], [ZERO, ZETA8]]),
    "X": (0, [[ZERO, ONE], [ONE, ZERO]]),
    "Y": (0, [[ZERO, -IMAG], [IMAG, ZERO]]),
    "Z": (0, [[ONE, ZERO], [ZERO, -ONE]]),
}


def _coeff_storage(data) -> np.ndarray:
    """int64 array when coefficients fit; else an object array of Python ints."""
    if isinstance(data, np.ndarray) and data.dtype == np.int64:
        if data.size == 0 or int(np.abs(data).max()) < _INT64_SAFE:
            return data if not data.flags.writeable else data.copy()
        data = data.tolist()
    elif isinstance(data, np.ndarray):
        data = data.tolist()
    try:
        arr = np.asarray(data, dtype=np.int64)
        if arr.size == 0 or int(np.abs(arr).max()) < _INT64_SAFE:
            return arr
    except (OverflowError, TypeError, ValueError):
        pass
    obj = np.empty(np.shape(data), dtype=object)
    obj[...] = data
    return obj


class ExactMatrix:
    """Matrix with Z[zeta_8] numerators over a global sqrt(2)^ell denominator."""

    __slots__ = ("dim", "denom_exp", "coeffs")

    def __init__(self, coeffs, denom_exp: int = 0, reduce: bool = True):
        arr = _coeff_storage(coeffs)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise ValidationError("coefficients must have shape (dim, dim, 4)")
        if denom_exp < 0:
            raise ValidationError("denominator exponent must be nonnegative")
        self.dim = int(arr.shape[0])
        self.coeffs = arr
        self.denom_exp = int(denom_exp)
        if reduce:
            self._reduce()
        self.coeffs.flags.writeable = False

    def _reduce(self) -> None:
        a, b, c, d = (self.coeffs[:, :, k] for k in range(4))
        changed = False
        while self.denom_exp > 0:
            if not (((a + c) & 1 == 0).all() and ((b + d) & 1 == 0).all()):
                break
            a, b, c, d = (b - d) >> 1, (a + c) >> 1, (b + d) >> 1, (c - a) >> 1
            self.denom_exp -= 1
            changed = True
        if changed:
            out = np.empty((self.dim, self.dim, 4), dtype=self.coeffs.dtype)
            out[:, :, 0], out[:, :, 1], out[:, :, 2], out[:, :, 3] = a, b, c, d
            self.coeffs = out

    def entry(self, i: int, j: int) -> RingElement:
        return RingElement(*(int(x) for x in self.coeffs[i, j]))

    def max_abs_coeff(self) -> int:
        if self.coeffs.dtype == np.int64:
            return int(np.abs(self.coeffs).max())
        return max(abs(int(x)) for x in self.coeffs.reshape(-1))

    def to_complex(self) -> np.ndarray:
        z = np.exp(1j * np.pi * np.arange(4) / 4)
        num = self.coeffs.astype(complex) @ z
        return np.asarray(num) / np.sqrt(2.0) ** self.denom_exp

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.denom_exp == other.denom_exp
            and bool(np.equal(self.coeffs, other.coeffs).all())
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return exact_mul(self, other)

    def __repr__(self) -> str:
        return f"ExactMatrix(dim={self.dim}, denom_exp={self.denom_exp})"

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "denomExp": self.denom_exp,
            "entries": [
                [str(int(x)) for x in self.coeffs[i, j]]
                for i in range(self.dim)
                for j in range(self.dim)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExactMatrix":
        dim = int(data["dim"])
        entries = data["entries"]
        if len(entries) != dim * dim:
            raise ValidationError("entry count does not match dim")
        rows = []
        for quad in entries:
            if len(quad) != 4:
                raise ValidationError("each entry needs 4 coefficients")
            rows.append([int(s) for s in quad])
        arr = np.empty((dim, dim, 4), dtype=object)
        arr[...] = np.asarray(rows, dtype=object).reshape(dim, dim, 4)
        return cls(arr, int(data["denomExp"]))

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        arr = np.zeros((dim, dim, 4), dtype=np.int64)
        for i in range(dim):
            arr[i, i, 0] = 1
        return cls(arr, 0, reduce=False)


@lru_cache(maxsize=None)
def _cached_gate(name: str, targets: tuple[int, ...], width: int) -> ExactMatrix:
    if name == "CNOT":
        base = np.zeros((4, 4, 4), dtype=np.int64)
        for i, j in ((0, 0), (1, 1), (2, 3), (3, 2)):
            base[i, j, 0] = 1
        ell = 0
    elif name == "TOFFOLI":
        base = np.zeros((8, 8, 4), dtype=np.int64)
        for i in range(8):
            base[i, i ^ 1 if i >= 6 else i, 0] = 1
        ell = 0
    else:
        ell, rows = _GATE_TABLE[name]
        base = np.array(
            [[[e.a, e.b, e.c, e.d] for e in row] for row in rows], dtype=np.int64
        )

    k = len(targets)
    dim = 1 << width
    full = np.zeros((dim, dim, 4), dtype=np.int64)
    shifts = [width - 1 - t for t in targets]
    rest_shifts = [width - 1 - q for q in range(width) if q not in targets]

    def compose(bits_gate: int, bits_rest: int) -> int:
        idx = 0
        for pos, sh in enumerate(shifts):
            idx |= ((bits_gate >> (k - 1 - pos)) & 1) << sh
        for pos, sh in enumerate(rest_shifts):
            idx |= ((bits_rest >> (len(rest_shifts) - 1 - pos)) & 1) << sh
        return idx

    for sub in range(1 << len(rest_shifts)):
        for gr in range(1 << k):
            row = compose(gr, sub)
            for gc in range(1 << k):
                full[row, compose(gc, sub)] = base[gr, gc]
    return ExactMatrix(full, ell, reduce=False)


def exact_gate(name: str, targets: tuple[int, ...] | list[int], width: int) -> ExactMatrix:
    """Canonical exact embedding of a named generator (identity elsewhere)."""
    if name not in EXACT_GATE_NAMES:
        raise ValidationError(f"unknown exact gate {name!r}")
    if not 1 <= width <= 3:
        raise ValidationError("width must be between 1 and 3")
    targets = tuple(int(t) for t in targets)
    arity = {"CNOT": 2, "TOFFOLI": 3}.get(name, 1)
    if len(targets) != arity:
        raise ValidationError(f"{name} takes {arity} targets")
    if len(set(targets)) != len(targets) or any(
        t < 0 or t >= width for t in targets
    ):
        raise ValidationError(f"bad targets {targets} for width {width}")
    return _cached_gate(name, targets, width)


def _mix_components(P: np.ndarray) -> np.ndarray:
    """Combine pairwise component products via zeta^p zeta^q = +-zeta^{(p+q) mod 4}."""
    c0 = P[0, 0] - P[1, 3] - P[2, 2] - P[3, 1]
    c1 = P[0, 1] + P[1, 0] - P[2, 3] - P[3, 2]
    c2 = P[0, 2] + P[1, 1] + P[2, 0] - P[3, 3]
    c3 = P[0, 3] + P[1, 2] + P[2, 1] + P[3, 0]
    return np.stack((c0, c1, c2, c3), axis=-1)


def exact_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Exact product, canonically reduced."""
    if A.dim != B.dim:
        raise ValidationError("dimension mismatch")
    if A.coeffs.dtype == np.int64 and B.coeffs.dtype == np.int64:
        bound = A.max_abs_coeff() * B.max_abs_coeff() * A.dim * 4
        if bound < _INT64_SAFE:
            a4 = np.ascontiguousarray(A.coeffs.transpose(2, 0, 1))
            b4 = np.ascontiguousarray(B.coeffs.transpose(2, 0, 1))
            prod = _mix_components(a4[:, None] @ b4[None, :])
            return ExactMatrix(prod, A.denom_exp + B.denom_exp)
    return ExactMatrix(_mul_object(A, B), A.denom_exp + B.denom_exp)


def _mul_object(A: ExactMatrix, B: ExactMatrix) -> list:
    n = A.dim
    rows_a = [[A.entry(i, k) for k in range(n)] for i in range(n)]
    cols_b = [[B.entry(k, j) for k in range(n)] for j in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ZERO
            for aik, bkj in zip(rows_a[i], cols_b[j]):
                acc = acc + aik * bkj
            row.append([acc.a, acc.b, acc.c, acc.d])
        out.append(row)
    return out


def exact_word(gates: list[tuple[str, tuple[int, ...]]], width: int) -> ExactMatrix:
    """Exact product of named gates given in operator order.

    Accepts the inverse tags Sdag and Tdag, rewriting them as S^3 and T^7.
    """
    out = ExactMatrix.identity(1 << width)
    rewrites = {"Sdag": [("S", 3)], "Tdag": [("T", 7)]}
    for name, targets in gates:
        for base, count in rewrites.get(name, [(name, 1)]):
            gm = exact_gate(base, targets, width)
            for _ in range(count):
                out = exact_mul(out, gm)
    return out


def exact_controlled(U: ExactMatrix) -> ExactMatrix:
    """Controlled-U on two qubits (control = qubit 0) for a 2x2 exact U."""
    if U.dim != 2:
        raise ValidationError("controlled embedding expects a 2x2 matrix")
    full = np.empty((4, 4, 4), dtype=object)
    full[...] = 0
    scale = ONE
    for _ in range(U.denom_exp):
        scale = scale * SQRT2
    for i in range(2):
        full[i, i] = [scale.a, scale.b, scale.c, scale.d]
    for i in range(2):
        for j in range(2):
            full[2 + i, 2 + j] = [int(x) for x in U.coeffs[i, j]]
    return ExactMatrix(full, U.denom_exp)


def gaussian_obstruction(A: ExactMatrix) -> bool:
    """Whether sqrt(2)^k A has all-Gaussian entries for some k >= 0.

    Necessary condition for reachability over Shor's basis: every word
    over {H, S, X, Y, Z, CNOT, TOFFOLI} passes, while e.g. the T gate
    fails.  Passing does not certify reachability (one-directional).
    """
    b = A.coeffs[:, :, 1]
    d = A.coeffs[:, :, 3]
    if bool(np.equal(b, 0).all()) and bool(np.equal(d, 0).all()):
        return True
    a = A.coeffs[:, :, 0]
    c = A.coeffs[:, :, 2]
    return bool(np.equal(a, 0).all()) and bool(np.equal(c, 0).all())
