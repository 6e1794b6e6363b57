"""Diagnostics and inversion built on the lattice convolutions.

Central object: for a generator S and lattice Lambda, the symbol

    F(coset) = periodize(|FW(S)|^2, adjoint)

is real and nonnegative, and its values over the cosets of the adjoint
lattice are exactly the eigenvalues of the Gram matrix of the translates
alpha_lambda(S).  The translates form a Riesz sequence precisely when the
symbol has no zeros, in which case dividing by it yields a biorthogonal
generator, best approximations in the span, and exact mask recovery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolutions import (
    fs_of_op_op_conv,
    op_op_conv,
    seq_op_conv,
    synthesis_map,
)
from .errors import (
    DivisionByZeroError,
    FullLatticeError,
    NotRieszError,
    SupportViolationError,
)
from .operators import (
    RANK_RTOL,
    as_operator,
    hs_norm,
    parity_conjugate,
    random_operator,
)
from .phase_space import (
    Lattice,
    LatticeSequence,
    PhasePoint,
    QuotientFunction,
    adjoint_lattice,
    quotient_reps,
    reduce_point,
)
from .transforms import (
    fourier_wigner,
    inverse_fourier_wigner,
    inverse_symplectic_fourier_series,
    periodize,
)

__all__ = [
    "ZERO_TOL",
    "RieszReport",
    "ApproxReport",
    "MaskRecovery",
    "TauberianReport",
    "gram_matrix",
    "riesz_report",
    "biorthogonal_generator",
    "best_approximation",
    "recover_mask",
    "tauberian_diagnostics",
    "nonassociativity_witness",
    "underspread_divide",
]

# a symbol value counts as zero below this multiple of the symbol maximum
ZERO_TOL = 1e-10

SUPPORT_RTOL = 1e-12


def _checked_star(S: np.ndarray) -> np.ndarray:
    """Parity conjugate of the adjoint; the two conjugations commute."""
    return parity_conjugate(np.conj(S.T))


def gram_matrix(S, lattice: Lattice) -> np.ndarray:
    """Gram matrix of the lattice translates of S in HS inner product.

    Entry (i, j) is <alpha_j S, alpha_i S> = (S conv checked(S*))(p_i - p_j),
    so the matrix is constant along lattice differences.
    """
    S = as_operator(S, L=lattice.L)
    h = op_op_conv(S, _checked_star(S), lattice)
    L = lattice.L
    n = lattice.size
    G = np.empty((n, n), dtype=np.complex128)
    for i, (am, an) in enumerate(lattice.points):
        for j, (bm, bn) in enumerate(lattice.points):
            G[i, j] = h.values[lattice.index[((am - bm) % L, (an - bn) % L)]]
    return G


@dataclass(eq=False)
class RieszReport:
    lattice: Lattice
    symbol: QuotientFunction
    lower: float
    upper: float
    zero_cosets: tuple[PhasePoint, ...]
    gram_eigenvalues: np.ndarray

    @property
    def is_riesz(self) -> bool:
        return len(self.zero_cosets) == 0

    def to_jsonable(self) -> dict:
        return {
            "lattice": _lattice_jsonable(self.lattice),
            "adjoint": _lattice_jsonable(adjoint_lattice(self.lattice)),
            "A": self.lower,
            "B": self.upper,
            "zero_cosets": [list(z) for z in self.zero_cosets],
            "gram_eigenvalues": [float(v) for v in self.gram_eigenvalues],
        }


def _lattice_jsonable(lattice: Lattice) -> dict:
    return {
        "L": lattice.L,
        "gens": [list(g) for g in lattice.generators],
        "size": lattice.size,
    }


def riesz_report(S, lattice: Lattice, zero_tol: float = ZERO_TOL) -> RieszReport:
    """Frame-theoretic health check of the lattice translates of S.

    The symbol is computed on the Fourier side; its imaginary part is
    rounding noise and is dropped for the bounds.  Eigenvalues come from
    an independent dense eigendecomposition of the Gram matrix.
    """
    S = as_operator(S, L=lattice.L)
    symbol = fs_of_op_op_conv(S, _checked_star(S), lattice)
    vals = symbol.values.real
    top = float(vals.max(initial=0.0))
    if top <= 0.0:
        zero = tuple(symbol.quotient.reps)
    else:
        zero = tuple(
            rep
            for rep, v in zip(symbol.quotient.reps, vals)
            if v < zero_tol * top
        )
    eigs = np.linalg.eigvalsh(gram_matrix(S, lattice))
    return RieszReport(
        lattice=lattice,
        symbol=symbol,
        lower=float(vals.min()),
        upper=top,
        zero_cosets=zero,
        gram_eigenvalues=eigs,
    )


def biorthogonal_generator(
    S, lattice: Lattice, zero_tol: float = ZERO_TOL
) -> np.ndarray:
    """The operator R with (S conv R)(lambda) = delta_0(lambda).

    R is built as b conv checked(S*) where the series coefficients b
    invert the symbol; requires the translates of S to be Riesz.
    """
    S = as_operator(S, L=lattice.L)
    report = riesz_report(S, lattice, zero_tol=zero_tol)
    if not report.is_riesz:
        raise NotRieszError(
            f"symbol vanishes on {len(report.zero_cosets)} cosets; "
            "no biorthogonal generator exists"
        )
    inverse_symbol = QuotientFunction(
        report.symbol.quotient, 1.0 / report.symbol.values
    )
    b = inverse_symplectic_fourier_series(inverse_symbol, lattice)
    return seq_op_conv(b, _checked_star(S))


@dataclass(eq=False)
class ApproxReport:
    mask: LatticeSequence
    fourier_mask: LatticeSequence
    approximant: np.ndarray
    residual_hs: float
    orthogonality_defect: float

    @property
    def mask_agreement(self) -> float:
        return float(np.max(np.abs(self.mask.values - self.fourier_mask.values)))


def best_approximation(
    T, S, lattice: Lattice, zero_tol: float = ZERO_TOL
) -> ApproxReport:
    """Best HS approximation of T from the span of the translates of S.

    The mask is computed two ways that must agree: time side as
    T conv R with R the biorthogonal generator, and Fourier side as the
    inverse series of periodize(FW(T) conj(FW(S))) / symbol.
    """
    T = as_operator(T, L=lattice.L)
    S = as_operator(S, L=lattice.L)
    R = biorthogonal_generator(S, lattice, zero_tol=zero_tol)
    mask = op_op_conv(T, R, lattice)

    symbol = fs_of_op_op_conv(S, _checked_star(S), lattice)
    cross = periodize(
        fourier_wigner(T) * np.conj(fourier_wigner(S)),
        adjoint_lattice(lattice),
    )
    quotient = QuotientFunction(cross.quotient, cross.values / symbol.values)
    fourier_mask = inverse_symplectic_fourier_series(quotient, lattice)

    approximant = seq_op_conv(mask, S)
    residual = T - approximant
    defect = float(
        np.max(np.abs(op_op_conv(residual, _checked_star(S), lattice).values))
    )
    return ApproxReport(
        mask=mask,
        fourier_mask=fourier_mask,
        approximant=approximant,
        residual_hs=hs_norm(residual),
        orthogonality_defect=defect,
    )


@dataclass(eq=False)
class MaskRecovery:
    mask: LatticeSequence
    residual_hs: float


def recover_mask(
    G, S, lattice: Lattice, zero_tol: float = ZERO_TOL
) -> MaskRecovery:
    """Invert c -> c conv S on its range; the residual flags outside input.

    For G = c conv S the recovered mask equals c exactly; for general G
    the result is the mask of the best approximant and residual_hs
    measures the distance of G to the module span.
    """
    G = as_operator(G, L=lattice.L)
    R = biorthogonal_generator(S, lattice, zero_tol=zero_tol)
    mask = op_op_conv(G, R, lattice)
    residual = hs_norm(G - seq_op_conv(mask, S))
    return MaskRecovery(mask=mask, residual_hs=residual)


@dataclass(eq=False)
class TauberianReport:
    lattice: Lattice
    lower: float
    upper: float
    zero_cosets: tuple[PhasePoint, ...]
    synthesis_rank: int
    kernel_dim: int

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0

    @property
    def consistent(self) -> bool:
        return (
            self.kernel_dim == len(self.zero_cosets)
            and self.injective == (len(self.zero_cosets) == 0)
        )

    def to_jsonable(self) -> dict:
        return {
            "lattice": _lattice_jsonable(self.lattice),
            "A": self.lower,
            "B": self.upper,
            "zero_cosets": [list(z) for z in self.zero_cosets],
            "synthesis_rank": self.synthesis_rank,
            "kernel_dim": self.kernel_dim,
            "injective": self.injective,
            "consistent": self.consistent,
        }


def tauberian_diagnostics(
    S, lattice: Lattice, zero_tol: float = ZERO_TOL
) -> TauberianReport:
    """Cross-check the equivalent degeneracy certificates.

    Zero set of the symbol, kernel of the dense synthesis map and the
    Riesz lower bound must tell one consistent story; kernel_dim always
    equals the number of zero cosets.
    """
    S = as_operator(S, L=lattice.L)
    report = riesz_report(S, lattice, zero_tol=zero_tol)
    sing = np.linalg.svd(synthesis_map(S, lattice).matrix, compute_uv=False)
    if sing.size == 0 or sing[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(sing > RANK_RTOL * sing[0]))
    return TauberianReport(
        lattice=lattice,
        lower=report.lower,
        upper=report.upper,
        zero_cosets=report.zero_cosets,
        synthesis_rank=rank,
        kernel_dim=lattice.size - rank,
    )


def nonassociativity_witness(
    S, lattice: Lattice, seed: int = 0, zero_tol: float = ZERO_TOL
):
    """An operator T outside the module span, certifying non-associativity.

    With R biorthogonal to S one has S conv R = delta and hence
    T conv (R conv S) = T, while (T conv R) conv S projects T onto the
    span.  Returns (T, deviation) with deviation = ||(T conv R) conv S - T||,
    which equals ||T|| by construction.
    """
    S = as_operator(S, L=lattice.L)
    if lattice.is_full:
        raise FullLatticeError(
            "translates of a Riesz generator over the full group span "
            "everything; no witness exists"
        )
    R = biorthogonal_generator(S, lattice, zero_tol=zero_tol)
    rng = np.random.default_rng(seed)
    for _ in range(16):
        T0 = random_operator(lattice.L, rng)
        projected = seq_op_conv(op_op_conv(T0, R, lattice), S)
        T = T0 - projected
        if hs_norm(T) > 1e-8 * hs_norm(T0):
            break
    else:  # pragma: no cover - the span is a proper subspace
        raise NotRieszError("failed to find a vector outside the module span")
    deviation = hs_norm(seq_op_conv(op_op_conv(T, R, lattice), S) - T)
    return T, deviation


def underspread_divide(
    S, T, lattice: Lattice, domain, zero_tol: float = ZERO_TOL
) -> np.ndarray:
    """Solve S = (S conv T) conv A for A when S is underspread.

    domain must hit each adjoint coset at most once (true for any subset
    of a fundamental domain), FW(S) must be supported inside it and FW(T)
    must not vanish on it.  The divider has Fourier-Wigner transform
    (1/kappa) / FW(T) on the domain and zero outside, kappa = N / L.
    """
    S = as_operator(S, L=lattice.L)
    T = as_operator(T, L=lattice.L)
    L = lattice.L
    quotient = quotient_reps(adjoint_lattice(lattice))
    points = [reduce_point(z, L) for z in domain]
    cosets = [quotient.coset_index(z) for z in points]
    if len(set(cosets)) != len(cosets):
        raise ValueError(
            "domain meets some adjoint coset twice; not part of a fundamental domain"
        )

    FS = fourier_wigner(S)
    FT = fourier_wigner(T)
    inside = np.zeros((L, L), dtype=bool)
    for m, n in points:
        inside[m, n] = True
    spill = np.abs(FS)[~inside]
    if spill.size and spill.max() > SUPPORT_RTOL * max(np.abs(FS).max(), 1e-300):
        raise SupportViolationError(
            "spreading support of S exceeds the declared domain"
        )
    ft_scale = float(np.abs(FT).max())
    kappa = lattice.size / L
    FA = np.zeros((L, L), dtype=np.complex128)
    for m, n in points:
        if abs(FT[m, n]) <= zero_tol * ft_scale:
            raise DivisionByZeroError(
                f"spreading function of divisor vanishes at {(m, n)}"
            )
        FA[m, n] = 1.0 / (kappa * FT[m, n])
    return inverse_fourier_wigner(FA)
