"""Lattice convolutions mixing sequences and operators.

For a lattice Lambda in Z_L x Z_L with translation alpha_lambda(S) =
pi(lambda) S pi(lambda)*:

* sequence * operator:  c conv S = sum_lambda c(lambda) alpha_lambda(S),
  an operator;
* operator * operator:  (S conv T)(lambda) = trace(S alpha_lambda(T')),
  a sequence, where T' is the parity conjugate of T;
* sequence * sequence:  ordinary group convolution on Lambda.

The mixed operations form a module structure: c conv (S conv T) equals
(c conv S) conv T, and (c conv d) conv T equals c conv (d conv T).  A
bracketing with two operators on the outside fails in general; see
``qhal.analysis.nonassociativity_witness``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, LatticeMismatchError
from .operators import as_operator, as_signal, parity_conjugate, rank_one, translate
from .phase_space import Lattice, LatticeSequence
from .transforms import (
    adjoint_lattice,
    fourier_wigner,
    lift_quotient_function,
    periodize,
    symplectic_fourier_series,
)

__all__ = [
    "seq_op_conv",
    "op_op_conv",
    "seq_seq_conv",
    "gabor_multiplier",
    "SynthesisMap",
    "synthesis_map",
    "fw_of_seq_op_conv",
    "fs_of_op_op_conv",
    "mixed_associativity_defect",
    "module_associativity_defect",
]


def seq_op_conv(c: LatticeSequence, S) -> np.ndarray:
    """sum_lambda c(lambda) alpha_lambda(S)."""
    S = as_operator(S, L=c.lattice.L)
    out = np.zeros_like(S)
    for coeff, point in zip(c.values, c.lattice.points):
        out += coeff * translate(S, point)
    return out


def op_op_conv(S, T, lattice: Lattice) -> LatticeSequence:
    """(S conv T)(lambda) = trace(S alpha_lambda(parity_conjugate(T))).

    Commutative in (S, T); restricting a larger lattice gives the same
    values at shared points.
    """
    S = as_operator(S, L=lattice.L)
    T = as_operator(T, L=lattice.L)
    checked = parity_conjugate(T)
    vals = np.empty(lattice.size, dtype=np.complex128)
    for i, point in enumerate(lattice.points):
        # trace(S A) = sum(S * A.T)
        vals[i] = np.sum(S * translate(checked, point).T)
    return LatticeSequence(lattice, vals)


def seq_seq_conv(c: LatticeSequence, d: LatticeSequence) -> LatticeSequence:
    """Group convolution on the lattice: (c conv d)(mu) = sum c(nu) d(mu - nu)."""
    lat = c.lattice
    if d.lattice != lat:
        raise LatticeMismatchError("sequences live on different lattices")
    L = lat.L
    vals = np.zeros(lat.size, dtype=np.complex128)
    for i, (am, an) in enumerate(lat.points):
        for j, (bm, bn) in enumerate(lat.points):
            k = lat.index[((am + bm) % L, (an + bn) % L)]
            vals[k] += c.values[i] * d.values[j]
    return LatticeSequence(lat, vals)


def gabor_multiplier(mask: LatticeSequence, phi, xi=None) -> np.ndarray:
    """Mask times translated rank-one atoms: mask conv (xi tensor phi).

    phi is the analysis window, xi the synthesis window (defaults to phi).
    The result acts by psi -> sum mask(lam) <psi, pi(lam) phi> pi(lam) xi.
    """
    phi = as_signal(phi, L=mask.lattice.L)
    xi = phi if xi is None else as_signal(xi, L=mask.lattice.L)
    return seq_op_conv(mask, rank_one(xi, phi))


@dataclass(eq=False)
class SynthesisMap:
    """Dense matrix of the map c -> c conv S, columns vec(alpha_lambda(S))."""

    lattice: Lattice
    generator: np.ndarray
    matrix: np.ndarray

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        L = self.lattice.L
        return (self.matrix @ np.asarray(coeffs, dtype=np.complex128)).reshape(L, L)


def synthesis_map(S, lattice: Lattice) -> SynthesisMap:
    S = as_operator(S, L=lattice.L)
    cols = [translate(S, point).reshape(-1) for point in lattice.points]
    return SynthesisMap(lattice, S, np.column_stack(cols))


def fw_of_seq_op_conv(c: LatticeSequence, S) -> np.ndarray:
    """Fourier-Wigner of c conv S via the modulation law.

    Equals the lifted symplectic Fourier series of c times the
    Fourier-Wigner transform of S, with no extra constant.
    """
    S = as_operator(S, L=c.lattice.L)
    lifted = lift_quotient_function(symplectic_fourier_series(c))
    return lifted * fourier_wigner(S)


def fs_of_op_op_conv(S, T, lattice: Lattice):
    """Symplectic Fourier series of S conv T via periodization.

    Equals the product of the two Fourier-Wigner transforms periodized
    over the adjoint lattice.
    """
    S = as_operator(S, L=lattice.L)
    T = as_operator(T, L=lattice.L)
    product = fourier_wigner(S) * fourier_wigner(T)
    return periodize(product, adjoint_lattice(lattice))


def mixed_associativity_defect(c: LatticeSequence, S, T) -> float:
    """max |c conv (S conv T) - (c conv S) conv T| over the lattice."""
    lat = c.lattice
    left = seq_seq_conv(c, op_op_conv(S, T, lat))
    right = op_op_conv(seq_op_conv(c, S), T, lat)
    return float(np.max(np.abs(left.values - right.values)))


def module_associativity_defect(c: LatticeSequence, d: LatticeSequence, T) -> float:
    """max entry of |(c conv d) conv T - c conv (d conv T)|."""
    left = seq_op_conv(seq_seq_conv(c, d), T)
    right = seq_op_conv(c, seq_op_conv(d, T))
    return float(np.max(np.abs(left - right)))
