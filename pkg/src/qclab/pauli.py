"""Pauli strings, Pauli sums and fast decomposition of dense Hermitian matrices.

Label orientation: the leftmost character of a label acts on the highest
qubit index.  ``"IZ"`` is Z on qubit 0.  This is the only place that owns
the mapping; see :func:`label_qubit_ops`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import as_matrix, is_hermitian, kron_all
from .errors import BadFormat, BadLabel, DimensionMismatch, NotHermitian, NotPowerOfTwo

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

PRUNE_TOL = 1e-12


def _check_label(label: str) -> str:
    if not isinstance(label, str) or not label or any(c not in PAULI for c in label):
        raise BadLabel(f"invalid Pauli label {label!r}")
    return label


def label_qubit_ops(label: str) -> list[tuple[int, str]]:
    """Map a printed label to ``[(qubit, op), ...]`` for its non-identity sites."""
    _check_label(label)
    n = len(label)
    return [(n - 1 - i, c) for i, c in enumerate(label) if c != "I"]


@dataclass(frozen=True)
class PauliTerm:
    coeff: complex
    label: str

    def __post_init__(self):
        _check_label(self.label)

    @property
    def n_qubits(self) -> int:
        return len(self.label)

    def matrix(self) -> np.ndarray:
        return pauli_matrix(self)

    def is_identity(self) -> bool:
        return set(self.label) == {"I"}


@dataclass(frozen=True)
class PauliSum:
    n_qubits: int
    terms: tuple[PauliTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if len(t.label) != self.n_qubits:
                raise BadLabel(f"label {t.label!r} does not have {self.n_qubits} sites")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[complex, str]]) -> "PauliSum":
        terms = [PauliTerm(c, l) for c, l in pairs]
        if not terms:
            raise BadFormat("a Pauli sum needs at least one term")
        return cls(len(terms[0].label), tuple(terms))

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def matrix(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            out += pauli_matrix(t)
        return out

    def alpha(self) -> float:
        """ℓ1 norm of the coefficients."""
        return float(sum(abs(t.coeff) for t in self.terms))

    def as_dict(self) -> dict[str, complex]:
        return {t.label: t.coeff for t in self.terms}

    def to_json_obj(self) -> dict:
        terms = []
        for t in self.terms:
            c = complex(t.coeff)
            if abs(c.imag) > PRUNE_TOL:
                raise BadFormat("complex coefficients cannot be written to a Hamiltonian file")
            terms.append({"coeff": c.real, "label": t.label})
        return {"qubits": self.n_qubits, "terms": terms}


def pauli_matrix(term: PauliTerm | str, coeff: complex | None = None) -> np.ndarray:
    """Dense matrix ``coeff * P`` as a Kronecker chain in printed order."""
    if isinstance(term, str):
        term = PauliTerm(1.0 if coeff is None else coeff, term)
    return term.coeff * kron_all(PAULI[c] for c in term.label)


def _walsh_hadamard(v: np.ndarray, n: int) -> np.ndarray:
    """Unnormalized WHT along the last axis (length 2^n), vectorized over rows."""
    rows = v.shape[0]
    w = v.reshape([rows] + [2] * n).copy()
    for axis in range(1, n + 1):
        a = np.take(w, 0, axis=axis)
        b = np.take(w, 1, axis=axis)
        w = np.stack([a + b, a - b], axis=axis)
    return w.reshape(rows, 2**n)


def pauli_decompose(h, tol: float = PRUNE_TOL, check_hermitian: bool = True) -> PauliSum:
    """Expand a ``2^n × 2^n`` matrix as ``Σ c_P P`` with ``c_P = Tr(P h)/2^n``.

    Uses the identity ``Tr(X^x Z^z h) = Σ_c (-1)^{z·c} h[c, c⊕x]`` so all
    ``4^n`` coefficients cost ``O(n 4^n)`` instead of one trace per string.
    Terms with ``|c| < tol`` are dropped.  Output order is lexicographic in
    the label with ``I < X < Y < Z``.
    """
    h = as_matrix(h)
    dim = h.shape[0]
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {h.shape}")
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise NotPowerOfTwo(f"dimension {dim} is not a power of two >= 2")
    if check_hermitian and not is_hermitian(h):
        raise NotHermitian("pauli_decompose expects a Hermitian matrix")

    idx = np.arange(dim)
    xs = np.arange(dim)
    # v[x, c] = h[c, c xor x]
    v = h[idx[None, :], idx[None, :] ^ xs[:, None]]
    traces = _walsh_hadamard(v, n)  # traces[x, z] = Σ_c (-1)^{z·c} h[c, c⊕x]
    both = xs[:, None] & idx[None, :]
    ycount = sum((both >> q) & 1 for q in range(n))
    coeffs = (1j**ycount) * traces / dim

    letters = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
    found = []
    for x, z in zip(*np.nonzero(np.abs(coeffs) >= tol)):
        c = coeffs[x, z]
        label = "".join(letters[((x >> q) & 1, (z >> q) & 1)] for q in range(n - 1, -1, -1))
        found.append(PauliTerm(float(c.real) if check_hermitian else complex(c), label))
    order = {"I": 0, "X": 1, "Y": 2, "Z": 3}
    found.sort(key=lambda t: [order[ch] for ch in t.label])
    if not found:
        found = [PauliTerm(0.0, "I" * n)]
    return PauliSum(n, tuple(found))


def pauli_decompose_reference(h) -> dict[str, complex]:
    """Slow oracle: one explicit trace per Pauli string (n ≤ 4)."""
    from itertools import product

    h = as_matrix(h)
    n = h.shape[0].bit_length() - 1
    out = {}
    for letters in product("IXYZ", repeat=n):
        label = "".join(letters)
        out[label] = complex(np.trace(pauli_matrix(label) @ h) / 2**n)
    return out


def hamiltonian_from_json_obj(obj: dict) -> PauliSum:
    """Parse either the term form or the dense form of a Hamiltonian file."""
    if not isinstance(obj, dict):
        raise BadFormat("Hamiltonian file must hold a JSON object")
    keys = set(obj)
    if keys == {"qubits", "terms"}:
        n = obj["qubits"]
        if not isinstance(n, int) or n < 1:
            raise BadFormat("'qubits' must be a positive integer")
        pairs = []
        for t in obj["terms"]:
            if not isinstance(t, dict) or set(t) != {"coeff", "label"}:
                raise BadFormat(f"bad term entry {t!r}")
            pairs.append((float(t["coeff"]), str(t["label"])))
        ps = PauliSum(n, tuple(PauliTerm(c, l) for c, l in pairs))
        return ps
    if keys == {"dim", "re", "im"}:
        d = obj["dim"]
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
        if re.size != d * d or im.size != d * d:
            raise BadFormat("dense Hamiltonian needs dim*dim real and imaginary parts")
        return pauli_decompose(re.reshape(d, d) + 1j * im.reshape(d, d))
    raise BadFormat(f"unrecognized Hamiltonian keys {sorted(keys)}")


def load_hamiltonian(path: str | Path) -> PauliSum:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadFormat(f"invalid JSON: {exc}") from exc
    return hamiltonian_from_json_obj(obj)


def sum_from_labels(coeffs: Sequence[float], labels: Sequence[str]) -> PauliSum:
    return PauliSum.from_pairs(zip(coeffs, labels))
