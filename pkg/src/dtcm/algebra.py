"""Dense helpers for few-qubit density matrices.

Tensor products, qubit relabeling, partial traces and validity checks.  All
operations are pure functions; matrices are treated as immutable values and
stored read-only.  Backed by numpy throughout.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

CANONICAL_LABELS = ("A", "B", "C", "D")


def _label_key(label: str) -> int:
    return CANONICAL_LABELS.index(label)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix together with the labels of its qubit tensor factors.

    ``labels`` names the qubits in tensor order; the first label is the most
    significant bit of the basis index, so for labels ``(A, B)`` the basis is
    ordered ``|00>, |01>, |10>, |11>`` with A the left slot.
    """

    matrix: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=complex)
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        unknown = [lab for lab in labels if lab not in CANONICAL_LABELS]
        if unknown:
            raise ValueError(f"unknown qubit labels: {unknown}")
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not fit {len(labels)} qubits")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class QubitPermutation:
    """A relabeling of tensor slots: ``source`` order rearranged into ``target``."""

    source: tuple[str, ...]
    target: tuple[str, ...]

    def __post_init__(self) -> None:
        src, tgt = tuple(self.source), tuple(self.target)
        if len(set(src)) != len(src) or sorted(src) != sorted(tgt):
            raise ValueError(f"{src} -> {tgt} is not a permutation")
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", tgt)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product of two matrices."""
    return np.kron(a, b)


def permute_qubits(rho: DensityMatrix, perm: Union[QubitPermutation, Sequence[str]]) -> DensityMatrix:
    """Reorder the tensor factors of ``rho`` into the permutation's target order.

    ``perm`` may be a :class:`QubitPermutation` whose source matches
    ``rho.labels``, or simply the desired label order.
    """
    if not isinstance(perm, QubitPermutation):
        perm = QubitPermutation(rho.labels, tuple(perm))
    if perm.source != rho.labels:
        raise ValueError(f"permutation source {perm.source} does not match state labels {rho.labels}")
    n = rho.n_qubits
    axes = [rho.labels.index(lab) for lab in perm.target]
    tensor = rho.matrix.reshape((2,) * (2 * n))
    tensor = tensor.transpose(axes + [a + n for a in axes])
    return DensityMatrix(tensor.reshape(rho.dim, rho.dim), perm.target)


def _ptrace_subscripts(n_qubits: int, keep_positions: Sequence[int]) -> str:
    """einsum subscripts tracing out all slots not listed in ``keep_positions``.

    Traced slots reuse the same index letter on ket and bra side; kept slots
    get fresh bra letters and survive into the output.  A leading ellipsis
    carries an optional batch dimension.
    """
    letters = string.ascii_lowercase
    ket = list(letters[:n_qubits])
    bra = list(ket)
    nxt = n_qubits
    for pos in keep_positions:
        bra[pos] = letters[nxt]
        nxt += 1
    out = "".join(ket[p] for p in keep_positions) + "".join(bra[p] for p in keep_positions)
    return f"...{''.join(ket)}{''.join(bra)}->...{out}"


def _partial_trace_array(mats: np.ndarray, n_qubits: int, keep_positions: Sequence[int]) -> np.ndarray:
    """Partial trace on a (batch of) 2^n x 2^n matrices, kept slots in given order."""
    batch = mats.shape[:-2]
    tensor = mats.reshape(batch + (2,) * (2 * n_qubits))
    reduced = np.einsum(_ptrace_subscripts(n_qubits, keep_positions), tensor)
    d = 2 ** len(keep_positions)
    return reduced.reshape(batch + (d, d))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Trace out every qubit not in ``keep``; result labels follow A<B<C<D order."""
    kept = tuple(sorted(set(keep), key=_label_key))
    if not kept:
        raise ValueError("keep must name at least one qubit")
    missing = [lab for lab in kept if lab not in rho.labels]
    if missing:
        raise ValueError(f"labels {missing} not present in state {rho.labels}")
    positions = [rho.labels.index(lab) for lab in kept]
    reduced = _partial_trace_array(rho.matrix, rho.n_qubits, positions)
    return DensityMatrix(reduced, kept)


@dataclass(frozen=True)
class ValidationReport:
    """Deviations of a candidate density matrix from Hermiticity, unit trace and positivity."""

    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tol_herm: float
    tol_trace: float
    psd_slack: float

    @property
    def hermitian_ok(self) -> bool:
        return self.hermiticity_deviation <= self.tol_herm

    @property
    def trace_ok(self) -> bool:
        return self.trace_deviation <= self.tol_trace

    @property
    def psd_ok(self) -> bool:
        return self.min_eigenvalue >= -self.psd_slack

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.trace_ok and self.psd_ok


def validate_density(
    rho: Union[DensityMatrix, np.ndarray],
    tol_herm: float = 1e-12,
    tol_trace: float = 1e-12,
    psd_slack: float = 1e-9,
) -> ValidationReport:
    """Check Hermiticity, unit trace and positive semidefiniteness.

    Reports deviations rather than raising; callers decide what is fatal.
    The spectrum is taken of the Hermitian part so a tiny non-Hermitian
    residue cannot produce complex eigenvalues.
    """
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return _validate_batch(mat[None], tol_herm, tol_trace, psd_slack)


def _validate_batch(
    mats: np.ndarray,
    tol_herm: float = 1e-12,
    tol_trace: float = 1e-12,
    psd_slack: float = 1e-9,
) -> ValidationReport:
    """Worst-case validation over a batch of matrices stacked on leading axes."""
    adj = mats.conj().swapaxes(-1, -2)
    herm_dev = float(np.abs(mats - adj).max())
    traces = np.einsum("...ii->...", mats)
    trace_dev = float(np.abs(traces - 1.0).max())
    eigs = np.linalg.eigvalsh((mats + adj) / 2.0)
    min_eig = float(eigs.min().real)
    return ValidationReport(herm_dev, trace_dev, min_eig, tol_herm, tol_trace, psd_slack)
