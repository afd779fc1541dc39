"""Exact resonant dynamics of Bell-paired atoms distributed over two cavities.

Two atom pairs (A,B) and (C,D) are prepared in identical Bell-like
superpositions; atoms A,C couple to cavity a and atoms B,D to cavity b.  On
resonance the interaction-picture evolution depends only on the scaled time
``tau = g t``.  Everything here works at the level of the atomic reduced
state: per-cavity evolution maps are built from closed-form transition
amplitudes, summed over the cavity photon statistics, then combined into the
joint atomic density matrix.

The single-cavity variant (one atom per cavity, the double Jaynes-Cummings
configuration) is included for comparison; it uses the plain one-atom ladder
amplitudes instead.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import product
from typing import Union

import numpy as np

from .algebra import DensityMatrix, validate_density
from .errors import NumericalError

_TauLike = Union[float, np.ndarray]


class BellType(enum.Enum):
    """Which Bell-like superposition each pair starts in."""

    PSI = "psi"  # cos(a)|10> + sin(a)|01>, one shared excitation
    PHI = "phi"  # cos(a)|11> + sin(a)|00>, double excitation vs none


class Model(enum.Enum):
    """Atom-cavity layout: two atoms per cavity, or one atom per cavity."""

    DTCM = "DTCM"
    DJCM = "DJCM"


@dataclass(frozen=True)
class BellPairSpec:
    """One two-atom pair prepared with mixing angle ``alpha``.

    The physically distinct range is alpha in [0, pi/2]; values up to pi are
    accepted so relabeling identities (which shift alpha by pi/2) can be
    exercised directly.
    """

    bell_type: BellType
    alpha: float

    def __post_init__(self) -> None:
        if not isinstance(self.bell_type, BellType):
            raise ValueError("bell_type must be a BellType")
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or not 0.0 <= alpha <= math.pi:
            raise ValueError(f"alpha must lie in [0, pi], got {self.alpha}")
        object.__setattr__(self, "alpha", alpha)

    def amplitudes(self) -> tuple[float, float]:
        """Branch amplitudes (a0, a1) for the first atom's bit being 0 or 1."""
        return (math.sin(self.alpha), math.cos(self.alpha))


@dataclass(frozen=True)
class FieldSpec:
    """Initial cavity field: vacuum, a Fock number state, or a thermal mixture.

    A thermal field with mean photon number ``nbar`` is truncated at the
    smallest level N whose geometric tail mass (nbar/(1+nbar))^(N+1) drops to
    ``tail_mass_epsilon``.  The retained weights are kept as-is, not
    renormalized (renormalizing would bias every retained component), so any
    state built on a truncated thermal field under-traces by at most the tail
    mass.
    """

    kind: str
    n: int = 0
    nbar: float = 0.0
    tail_mass_epsilon: float = 1e-10

    def __post_init__(self) -> None:
        if self.kind not in ("vacuum", "fock", "thermal"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "fock":
            if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 0:
                raise ValueError("Fock photon number must be a nonnegative integer")
        if self.kind == "thermal":
            if not (math.isfinite(self.nbar) and self.nbar > 0.0):
                raise ValueError("thermal nbar must be positive")
            if not 0.0 < self.tail_mass_epsilon < 1.0:
                raise ValueError("tail_mass_epsilon must lie in (0, 1)")

    @classmethod
    def vacuum(cls) -> "FieldSpec":
        return cls("vacuum")

    @classmethod
    def fock(cls, n: int) -> "FieldSpec":
        return cls("fock", n=n)

    @classmethod
    def thermal(cls, nbar: float, tail_mass_epsilon: float = 1e-10) -> "FieldSpec":
        return cls("thermal", nbar=float(nbar), tail_mass_epsilon=float(tail_mass_epsilon))

    def is_vacuum(self) -> bool:
        """Vacuum and Fock(0) are the same preparation."""
        return self.kind == "vacuum" or (self.kind == "fock" and self.n == 0)

    def truncation_level(self) -> int:
        """Smallest N with (nbar/(1+nbar))^(N+1) <= tail_mass_epsilon."""
        if self.kind != "thermal":
            return self.n if self.kind == "fock" else 0
        q = self.nbar / (1.0 + self.nbar)
        n = max(0, math.ceil(math.log(self.tail_mass_epsilon) / math.log(q) - 1.0))
        while q ** (n + 1) > self.tail_mass_epsilon:
            n += 1
        while n > 0 and q ** n <= self.tail_mass_epsilon:
            n -= 1
        return n

    def weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Photon numbers and probabilities of the (finitely resolved) field."""
        if self.kind == "vacuum":
            return np.array([0]), np.array([1.0])
        if self.kind == "fock":
            return np.array([self.n]), np.array([1.0])
        top = self.truncation_level()
        ms = np.arange(top + 1)
        ps = self.nbar ** ms / (1.0 + self.nbar) ** (ms + 1.0)
        return ms, ps

    def weight_deficit(self) -> float:
        """Probability mass dropped by truncation (zero for vacuum and Fock)."""
        if self.kind != "thermal":
            return 0.0
        q = self.nbar / (1.0 + self.nbar)
        return q ** (self.truncation_level() + 1)

    def max_photon(self) -> int:
        """Highest photon number carrying weight."""
        return self.truncation_level() if self.kind == "thermal" else (self.n if self.kind == "fock" else 0)


# ---------------------------------------------------------------------------
# Two-atom transition amplitudes for a shared resonant cavity mode.
#
# For an initial product |ik, m> (pair bits i,k; photon number m) the evolved
# state is a superposition over bit flips (p,q) with photon numbers fixed by
# excitation conservation: flipping an excited atom deposits a photon,
# flipping a ground atom absorbs one.  The amplitudes close over three ladder
# families selected by the initial excitation content of the pair.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XCoefficientKey:
    """Index of one transition amplitude.

    ``(i, k)`` are the initial pair bits, ``(p, q)`` the applied bit flips,
    ``m`` the initial photon number and ``tau`` the scaled time.
    """

    i: int
    k: int
    p: int
    q: int
    m: int
    tau: float

    def __post_init__(self) -> None:
        for name in ("i", "k", "p", "q"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if not isinstance(self.m, (int, np.integer)) or isinstance(self.m, bool) or self.m < 0:
            raise ValueError("m must be a nonnegative integer")
        tau = float(self.tau)
        if not math.isfinite(tau) or tau < 0.0:
            raise ValueError("tau must be finite and nonnegative")
        object.__setattr__(self, "tau", tau)


def _x_block_table(m: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """All two-atom transition amplitudes on a (photon, time) grid.

    Returns a complex array indexed ``[pair_in, flips, photon, time]`` where
    ``pair_in = 2i + k`` and ``flips = 2p + q``.
    """
    m = np.asarray(m, dtype=float)[:, None]
    tau = np.asarray(tau, dtype=float)[None, :]
    n_m, n_t = m.shape[0], tau.shape[1]
    X = np.zeros((4, 4, n_m, n_t), dtype=complex)

    # both atoms excited: chain |11,m> <-> one flip, m+1 <-> |00,m+2>
    om = np.sqrt(2.0 * (2.0 * m + 3.0))
    c, s = np.cos(om * tau), np.sin(om * tau)
    X[3, 0] = (m + 1.0) / (2.0 * m + 3.0) * (c - 1.0) + 1.0
    X[3, 1] = X[3, 2] = -1j * np.sqrt((m + 1.0) / (2.0 * (2.0 * m + 3.0))) * s
    X[3, 3] = np.sqrt((m + 1.0) * (m + 2.0)) / (2.0 * m + 3.0) * (c - 1.0)

    # one excitation in the pair
    om = np.sqrt(2.0 * (2.0 * m + 1.0))
    c, s = np.cos(om * tau), np.sin(om * tau)
    emit = -1j * np.sqrt((m + 1.0) / (2.0 * (2.0 * m + 1.0))) * s
    absorb = -1j * np.sqrt(m / (2.0 * (2.0 * m + 1.0))) * s
    X[1, 0] = X[2, 0] = (c + 1.0) / 2.0
    X[1, 3] = X[2, 3] = (c - 1.0) / 2.0
    X[1, 1] = X[2, 2] = emit  # the excited atom gives up its photon
    X[1, 2] = X[2, 1] = absorb  # the ground atom takes one from the field

    # both atoms in the ground state; an empty cavity leaves them stationary
    live = m >= 1.0
    m_safe = np.where(live, m, 1.0)
    om = np.sqrt(2.0 * (2.0 * m_safe - 1.0))
    c, s = np.cos(om * tau), np.sin(om * tau)
    X[0, 0] = np.where(live, m_safe / (2.0 * m_safe - 1.0) * (c - 1.0) + 1.0, 1.0)
    X[0, 1] = X[0, 2] = np.where(live, -1j * np.sqrt(m_safe / (2.0 * (2.0 * m_safe - 1.0))) * s, 0.0)
    # sqrt(m(m-1)) kills the double-absorption branch below m = 2
    X[0, 3] = np.where(live, np.sqrt(m_safe * (m_safe - 1.0)) / (2.0 * m_safe - 1.0) * (c - 1.0), 0.0)
    return X


def x_coeff(key: XCoefficientKey) -> complex:
    """Closed-form transition amplitude for one (pair, flips, photon, time) index."""
    X = _x_block_table(np.array([key.m]), np.array([key.tau]))
    return complex(X[2 * key.i + key.k, 2 * key.p + key.q, 0, 0])


def _check_bits(**bits: int) -> None:
    for name, b in bits.items():
        if b not in (0, 1):
            raise ValueError(f"{name} must be 0 or 1, got {b!r}")


def _as_tau_grid(tau: _TauLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(tau, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if arr.ndim != 1:
        raise ValueError("tau must be a scalar or a 1-d grid")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise ValueError("tau values must be finite and nonnegative")
    return arr, scalar


def _build_delta_terms() -> dict[tuple[int, int, int, int], tuple[tuple[int, int, int, int], ...]]:
    """Flip combinations allowed for each evolved pair operator |ik><jl|.

    A flip pair (r,s) on the ket changes the cavity photon number by
    (-1)^i r + (-1)^k s; the bra flips (u,v) must change it by the same
    amount, otherwise the field trace kills the term.  Entries are
    (ket_flips, bra_flips, row, col) with rows/cols in the 2-bit pair basis.
    """
    table = {}
    for i, k, j, l in product((0, 1), repeat=4):
        terms = []
        for r, s, u, v in product((0, 1), repeat=4):
            if (1 - 2 * i) * r + (1 - 2 * k) * s == (1 - 2 * j) * u + (1 - 2 * l) * v:
                terms.append((2 * r + s, 2 * u + v, 2 * (i ^ r) + (k ^ s), 2 * (j ^ u) + (l ^ v)))
        table[(i, k, j, l)] = tuple(terms)
    return table


_DELTA_TERMS = _build_delta_terms()

# The ten transcribed closed forms for the evolved pair operators; the other
# six index combinations follow by conjugate transposition.  Each entry is
# (ket_flips, bra_flips, row, col) exactly as the closed forms spell the
# terms out, including the repeated shared coefficients.
_EXPLICIT_FORMS: dict[tuple[int, int, int, int], tuple[tuple[int, int, int, int], ...]] = {
    (0, 0, 0, 0): ((3, 3, 3, 3), (2, 2, 2, 2), (2, 1, 2, 1), (1, 2, 1, 2), (1, 1, 1, 1), (0, 0, 0, 0)),
    (0, 1, 0, 0): ((2, 1, 3, 1), (2, 1, 3, 2), (3, 0, 2, 0), (0, 0, 1, 0)),
    (1, 0, 0, 0): ((1, 2, 3, 2), (1, 1, 3, 1), (0, 0, 2, 0), (3, 0, 1, 0)),
    (1, 1, 0, 0): ((0, 0, 3, 0),),
    (0, 1, 0, 1): ((2, 2, 3, 3), (3, 0, 2, 1), (3, 3, 2, 2), (0, 3, 1, 2), (0, 0, 1, 1), (1, 1, 0, 0)),
    (1, 0, 0, 1): ((1, 2, 3, 3), (0, 3, 2, 2), (0, 0, 2, 1), (3, 3, 1, 2), (3, 0, 1, 1), (2, 1, 0, 0)),
    (1, 1, 0, 1): ((0, 3, 3, 2), (0, 0, 3, 1), (1, 1, 2, 0), (2, 1, 1, 0)),
    (1, 0, 1, 0): ((1, 1, 3, 3), (0, 0, 2, 2), (0, 3, 2, 1), (3, 0, 1, 2), (3, 3, 1, 1), (2, 2, 0, 0)),
    (1, 1, 1, 0): ((0, 0, 3, 2), (0, 3, 3, 1), (1, 2, 2, 0), (2, 2, 1, 0)),
    (1, 1, 1, 1): ((0, 0, 3, 3), (1, 1, 2, 2), (1, 1, 2, 1), (1, 1, 1, 2), (1, 1, 1, 1), (3, 3, 0, 0)),
}


def _accumulate_terms(
    terms: tuple[tuple[int, int, int, int], ...],
    ket_family: int,
    bra_family: int,
    field: FieldSpec,
    taus: np.ndarray,
) -> np.ndarray:
    ms, ps = field.weights()
    X = _x_block_table(ms, taus)
    out = np.zeros((taus.size, 4, 4), dtype=complex)
    for ket_flips, bra_flips, row, col in terms:
        weighted = np.einsum("m,mt->t", ps, X[ket_family, ket_flips] * np.conj(X[bra_family, bra_flips]))
        out[:, row, col] += weighted
    return out


def pair_map(i: int, k: int, j: int, l: int, field: FieldSpec, tau: _TauLike) -> np.ndarray:
    """Evolved pair operator: |ik><jl| after interacting with one cavity field.

    Sums transition amplitudes over the field's photon distribution, keeping
    only ket/bra flip combinations that change the photon number equally (the
    field trace removes everything else).  Scalar ``tau`` gives a (4, 4)
    matrix, a grid gives (T, 4, 4).
    """
    _check_bits(i=i, k=k, j=j, l=l)
    taus, scalar = _as_tau_grid(tau)
    out = _accumulate_terms(_DELTA_TERMS[(i, k, j, l)], 2 * i + k, 2 * j + l, field, taus)
    return out[0] if scalar else out


def pair_map_explicit(i: int, k: int, j: int, l: int, field: FieldSpec, tau: _TauLike) -> np.ndarray:
    """Same operator as :func:`pair_map`, from the transcribed closed forms.

    Kept as an independent implementation route so the generic construction
    can be cross-checked term by term.
    """
    _check_bits(i=i, k=k, j=j, l=l)
    taus, scalar = _as_tau_grid(tau)
    key = (i, k, j, l)
    if key in _EXPLICIT_FORMS:
        out = _accumulate_terms(_EXPLICIT_FORMS[key], 2 * i + k, 2 * j + l, field, taus)
    else:
        swapped = _accumulate_terms(_EXPLICIT_FORMS[(j, l, i, k)], 2 * j + l, 2 * i + k, field, taus)
        out = np.conj(swapped).swapaxes(-1, -2)
    return out[0] if scalar else out


def _channel_tensor(field: FieldSpec, taus: np.ndarray) -> np.ndarray:
    """All sixteen evolved pair operators stacked as E[t, row, col, ket_in, bra_in]."""
    ms, ps = field.weights()
    X = _x_block_table(ms, taus)
    E = np.zeros((taus.size, 4, 4, 4, 4), dtype=complex)
    for (i, k, j, l), terms in _DELTA_TERMS.items():
        ket_family, bra_family = 2 * i + k, 2 * j + l
        for ket_flips, bra_flips, row, col in terms:
            E[:, row, col, ket_family, bra_family] += np.einsum(
                "m,mt->t", ps, X[ket_family, ket_flips] * np.conj(X[bra_family, bra_flips])
            )
    return E


# ---------------------------------------------------------------------------
# Single-atom ladder (one atom per cavity).
# ---------------------------------------------------------------------------


def _jc_branches(i: int, n: int, taus: np.ndarray) -> list[tuple[int, int, np.ndarray]]:
    """Evolution branches of |i, n> as (atom bit, photon number, amplitude grid)."""
    if i == 1:
        root = math.sqrt(n + 1.0)
        return [(1, n, np.cos(root * taus) + 0j), (0, n + 1, -1j * np.sin(root * taus))]
    if n == 0:
        # the ground atom in an empty cavity is stationary
        return [(0, 0, np.ones_like(taus, dtype=complex))]
    root = math.sqrt(float(n))
    return [(0, n, np.cos(root * taus) + 0j), (1, n - 1, -1j * np.sin(root * taus))]


def jc_amplitudes(i: int, n: int, tau: float) -> list[tuple[int, int, complex]]:
    """Single-atom transition amplitudes: |i, n> maps onto the returned branches.

    Each branch is (atom bit, photon number, amplitude).
    """
    _check_bits(i=i)
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    taus, _ = _as_tau_grid(float(tau))
    return [(bit, photon, complex(amp[0])) for bit, photon, amp in _jc_branches(i, n, taus)]


def _jc_channel_tensor(field: FieldSpec, taus: np.ndarray) -> np.ndarray:
    """Evolved single-atom operators stacked as E[t, row, col, ket_in, bra_in]."""
    ms, ps = field.weights()
    E = np.zeros((taus.size, 2, 2, 2, 2), dtype=complex)
    for weight, n in zip(ps, ms):
        branches = {i: _jc_branches(i, int(n), taus) for i in (0, 1)}
        for i in (0, 1):
            for j in (0, 1):
                for bit_k, photon_k, amp_k in branches[i]:
                    for bit_b, photon_b, amp_b in branches[j]:
                        if photon_k == photon_b:
                            E[:, bit_k, bit_b, i, j] += weight * amp_k * np.conj(amp_b)
    return E


# ---------------------------------------------------------------------------
# Assembly of the joint atomic state.
# ---------------------------------------------------------------------------

_PRIME_PSI = np.array([3, 2, 1, 0])  # partner pair holds the flipped bits
_PRIME_PHI = np.arange(4)  # partner pair repeats the bits


def _pair_weights(pair_ab: BellPairSpec, pair_cd: BellPairSpec) -> np.ndarray:
    a_ab = pair_ab.amplitudes()
    a_cd = pair_cd.amplitudes()
    return np.array([a_ab[i] * a_cd[k] for i in (0, 1) for k in (0, 1)])


def _assemble_dtcm_grid(
    pair_ab: BellPairSpec,
    pair_cd: BellPairSpec,
    field_a: FieldSpec,
    field_b: FieldSpec,
    taus: np.ndarray,
) -> np.ndarray:
    """Joint four-atom state on a time grid, basis ordered A,B,C,D.

    Cavity a evolves the (A,C) pair and cavity b the (B,D) pair; the initial
    superposition weights couple the two channels through the shared pair
    amplitudes.
    """
    if pair_ab.bell_type is not pair_cd.bell_type:
        raise ValueError("both pairs must share the same Bell type")
    amp4 = _pair_weights(pair_ab, pair_cd)  # index 2i + k over (A, C) bits
    W = np.outer(amp4, amp4)
    prime = _PRIME_PSI if pair_ab.bell_type is BellType.PSI else _PRIME_PHI
    Ea = _channel_tensor(field_a, taus)
    Eb = _channel_tensor(field_b, taus)
    Ebp = Eb[:, :, :, prime][:, :, :, :, prime]
    rho = np.einsum("sz,trcsz,tuwsz->trucw", W, Ea, Ebp)
    # rows are (A,C) x (B,D); interleave into A,B,C,D order
    n_t = taus.size
    rho = rho.reshape(n_t, 2, 2, 2, 2, 2, 2, 2, 2)
    rho = rho.transpose(0, 1, 3, 2, 4, 5, 7, 6, 8)
    return rho.reshape(n_t, 16, 16)


def _assemble_djcm_grid(
    pair_ab: BellPairSpec,
    field_a: FieldSpec,
    field_b: FieldSpec,
    taus: np.ndarray,
) -> np.ndarray:
    """Two-atom state on a time grid for the one-atom-per-cavity layout."""
    a0, a1 = pair_ab.amplitudes()
    amp = np.array([a0, a1])
    W = np.outer(amp, amp)
    prime = np.array([1, 0]) if pair_ab.bell_type is BellType.PSI else np.array([0, 1])
    Ea = _jc_channel_tensor(field_a, taus)
    Eb = _jc_channel_tensor(field_b, taus)
    Ebp = Eb[:, :, :, prime][:, :, :, :, prime]
    rho = np.einsum("sz,trcsz,tuwsz->trucw", W, Ea, Ebp)
    return rho.reshape(taus.size, 4, 4)


def assemble_atomic_state(
    pair_ab: BellPairSpec,
    pair_cd: BellPairSpec,
    field_a: FieldSpec,
    field_b: FieldSpec,
    tau: float,
    model: Model = Model.DTCM,
) -> DensityMatrix:
    """Reduced atomic density matrix at one time, cavity fields traced out.

    For ``Model.DTCM`` the result is 16x16 with labels (A,B,C,D); for
    ``Model.DJCM`` only the (A,B) pair exists and ``pair_cd`` must equal
    ``pair_ab``.  The output is validated (Hermiticity, trace, positivity);
    the trace tolerance allows for the mass dropped by thermal truncation.
    """
    taus, _ = _as_tau_grid(float(tau))
    if model is Model.DTCM:
        grid = _assemble_dtcm_grid(pair_ab, pair_cd, field_a, field_b, taus)
        labels = ("A", "B", "C", "D")
    elif model is Model.DJCM:
        if pair_cd != pair_ab:
            raise ValueError("the single-pair layout has no (C,D) pair; pass pair_cd equal to pair_ab")
        grid = _assemble_djcm_grid(pair_ab, field_a, field_b, taus)
        labels = ("A", "B")
    else:
        raise ValueError(f"unknown model {model!r}")
    mat = grid[0]
    tol_trace = 1e-12 + field_a.weight_deficit() + field_b.weight_deficit()
    report = validate_density(mat, tol_herm=1e-12, tol_trace=tol_trace, psd_slack=1e-9)
    if not report.ok:
        raise NumericalError(
            "assembled state failed validation: "
            f"hermiticity {report.hermiticity_deviation:.3e}, trace {report.trace_deviation:.3e}, "
            f"min eigenvalue {report.min_eigenvalue:.3e}"
        )
    return DensityMatrix(mat, labels)
