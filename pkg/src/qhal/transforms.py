"""Transforms between operators, phase-space grids and lattice sequences.

Normalizations are chosen once and used everywhere:

* ``symplectic_dft`` carries 1/L and is exactly involutive;
* ``fourier_wigner`` carries no prefactor and sends the identity operator
  to L * delta_0; its inverse carries 1/L;
* ``symplectic_fourier_series`` is a plain character sum over the lattice,
  its inverse divides by the number of cosets;
* ``periodize`` multiplies by kappa = N_lattice / L, which makes the
  finite Poisson summation formula hold with constant exactly 1.

The Fourier-Wigner transform uses the phase convention

    FW(S)(m, n) = exp(2 pi i * h * m * n / L) * trace(pi(m, n)* S),

where h = (L + 1) / 2 inverts 2 mod L.  This needs L odd; even L raises
EvenDimensionError rather than silently picking a square root of a
character.
"""

from __future__ import annotations

import numpy as np

from .errors import EvenDimensionError, LatticeMismatchError
from .operators import as_operator, as_signal
from .phase_space import (
    Lattice,
    LatticeSequence,
    QuotientFunction,
    adjoint_lattice,
    check_dimension,
    quotient_reps,
)

__all__ = [
    "half_mod",
    "stft",
    "spectrogram_samples",
    "symplectic_dft",
    "fourier_wigner",
    "inverse_fourier_wigner",
    "weyl_symbol",
    "symplectic_fourier_series",
    "inverse_symplectic_fourier_series",
    "periodize",
    "lift_quotient_function",
    "as_phase_function",
]


def half_mod(L: int) -> int:
    """The inverse of 2 mod L, i.e. (L + 1) / 2 for odd L."""
    L = check_dimension(L)
    if L % 2 == 0:
        raise EvenDimensionError(f"2 is not invertible mod L={L}")
    return (L + 1) // 2


def as_phase_function(f, L: int | None = None) -> np.ndarray:
    """Coerce to a complex (L, L) grid indexed [time, frequency]."""
    grid = np.asarray(f, dtype=np.complex128)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise LatticeMismatchError(f"phase function must be square, got {grid.shape}")
    if L is not None and grid.shape[0] != L:
        raise LatticeMismatchError(f"phase function is {grid.shape}, expected L={L}")
    return grid


def _character_matrix(L: int) -> np.ndarray:
    """C[a, b] = exp(2 pi i a b / L)."""
    grid = np.outer(np.arange(L), np.arange(L))
    return np.exp(2j * np.pi * grid / L)


def stft(psi, phi) -> np.ndarray:
    """Short-time Fourier transform V_phi(psi)(m, n) = <psi, pi(m, n) phi>.

    Computed densely; entry (m, n) is
    sum_t psi(t) conj(phi(t - m)) exp(-2 pi i n t / L).
    """
    psi = as_signal(psi)
    phi = as_signal(phi, L=psi.shape[0])
    L = psi.shape[0]
    t = np.arange(L)
    windows = phi[(t[None, :] - t[:, None]) % L]  # row m holds phi(. - m)
    weighted = psi[None, :] * windows.conj()
    return weighted @ _character_matrix(L).conj()


def spectrogram_samples(xi, phi, lattice: Lattice) -> LatticeSequence:
    """|V_phi(xi)|^2 sampled on the lattice; values are real nonnegative."""
    xi = as_signal(xi, L=lattice.L)
    full = np.abs(stft(xi, phi)) ** 2
    vals = np.array([full[m, n] for m, n in lattice.points], dtype=np.complex128)
    return LatticeSequence(lattice, vals)


def symplectic_dft(f) -> np.ndarray:
    """F(z) = (1/L) sum_w f(w) exp(-2 pi i sigma(z, w) / L); involutive."""
    f = as_phase_function(f)
    L = f.shape[0]
    C = _character_matrix(L)
    return (C.conj() @ f @ C.T).T / L


def fourier_wigner(S) -> np.ndarray:
    """Windowed trace transform of an operator on the full phase grid.

    Entry (m, n) is exp(2 pi i h m n / L) sum_a exp(-2 pi i n a / L)
    S[a, a - m]; the diagonals of S are gathered in O(L^2) and the
    character sums done as one matrix product.
    """
    S = as_operator(S)
    L = S.shape[0]
    h = half_mod(L)
    a = np.arange(L)
    diags = S[a[None, :], (a[None, :] - a[:, None]) % L]  # row m: a -> S[a, a-m]
    sums = diags @ _character_matrix(L).conj()
    phase = np.exp(2j * np.pi * h * np.outer(a, a) / L)
    return phase * sums


def inverse_fourier_wigner(F) -> np.ndarray:
    """Reassemble an operator: S = (1/L) sum_z conj-phase F(z) pi(z)."""
    F = as_phase_function(F)
    L = F.shape[0]
    h = half_mod(L)
    G = F @ _character_matrix(L)  # G[m, tau] = sum_n F[m, n] e^{2 pi i n tau / L}
    t = np.arange(L)
    M = (t[:, None] - t[None, :]) % L
    TAU = (t[:, None] - h * M) % L
    return G[M, TAU] / L


def weyl_symbol(S) -> np.ndarray:
    """Symplectic DFT of the Fourier-Wigner transform."""
    return symplectic_dft(fourier_wigner(S))


def _series_kernel(lattice: Lattice, quotient) -> np.ndarray:
    """K[r, i] = exp(2 pi i sigma(lambda_i, z_r) / L)."""
    lam = np.asarray(lattice.points, dtype=np.int64)
    reps = np.asarray(quotient.reps, dtype=np.int64)
    expo = np.outer(reps[:, 0], lam[:, 1]) - np.outer(reps[:, 1], lam[:, 0])
    return np.exp(2j * np.pi * expo / lattice.L)


def symplectic_fourier_series(c: LatticeSequence) -> QuotientFunction:
    """Character sum over the lattice, defined on cosets of the adjoint."""
    quotient = quotient_reps(adjoint_lattice(c.lattice))
    K = _series_kernel(c.lattice, quotient)
    return QuotientFunction(quotient, K @ c.values)


def inverse_symplectic_fourier_series(
    F: QuotientFunction, lattice: Lattice
) -> LatticeSequence:
    """Recover lattice coefficients; divides by the number of cosets."""
    adj = adjoint_lattice(lattice)
    if F.quotient.lattice != adj:
        raise LatticeMismatchError(
            "quotient function lives on "
            f"{F.quotient.lattice!r}, expected the adjoint {adj!r}"
        )
    K = _series_kernel(lattice, F.quotient)
    return LatticeSequence(lattice, K.conj().T @ F.values / F.quotient.size)


def periodize(f, subgroup: Lattice) -> QuotientFunction:
    """Sum a grid over subgroup translates, scaled by kappa = L / |subgroup|."""
    f = as_phase_function(f, L=subgroup.L)
    L = subgroup.L
    quotient = quotient_reps(subgroup)
    reps = np.asarray(quotient.reps, dtype=np.int64)
    acc = np.zeros(quotient.size, dtype=np.complex128)
    for hm, hn in subgroup.points:
        acc += f[(reps[:, 0] + hm) % L, (reps[:, 1] + hn) % L]
    return QuotientFunction(quotient, acc * (L / subgroup.size))


def lift_quotient_function(F: QuotientFunction) -> np.ndarray:
    """Unfold coset values to the full (L, L) grid."""
    return F.values[F.quotient.coset_of]
