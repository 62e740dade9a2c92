"""Bipartite entanglement measures for small multi-qubit states.

Implemented quantities:

* concurrence, pure states:   C = sqrt(2 (1 - Tr rho_A^2))
* concurrence, 2-qubit mixed: C = max(mu1 - mu2 - mu3 - mu4, 0)  (Wootters)
* concurrence of assistance:  C_a = mu1 + mu2 + mu3 + mu4
* negativity:                 N = ||rho^{T_A}|| - 1   (un-halved convention)
* negativity, pure states:    N = (Tr sqrt(rho_A))^2 - 1
* CREN / CRENoA:              equal to C / C_a on two-qubit states and to the
                              pure-state negativity on pure global splits

The Wootters spectrum mu_i is obtained from the Hermitian PSD matrix
sqrt(rho) rho~ sqrt(rho), where rho~ is the spin-flipped complex conjugate;
numerically the mu_i are computed as the singular values of the factor
M = conj(sqrt(rho)) (sy x sy) sqrt(rho), which satisfies M^dag M =
sqrt(rho) rho~ sqrt(rho) exactly and keeps structural zeros exact.

Any measure value in [-1e-10, 0) is reported as 0.  Convex-roof optimization
for arbitrary mixed states on more than two qubits is out of scope and is
refused with UnsupportedError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import numkit
from .errors import BadSplitError, UnsupportedError, WrongDimensionError
from .qstate import (
    DensityMatrix,
    GenSchmidtParams,
    PureState,
    density_from_pure,
    partial_trace,
    transpose_subsystem,
)

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SPIN_FLIP = numkit.kron(SIGMA_Y, SIGMA_Y)

# eigenvalues of a density matrix below this are treated as exact zeros when
# taking square roots, keeping rank-deficient marginals numerically clean
_RHO_EIG_FLOOR = 1e-12

CLAMP_TOL = 1e-10


def _clamp(x: float) -> float:
    return 0.0 if -CLAMP_TOL <= x < 0.0 else x


def _validated_split(state: PureState, part: Iterable[int]) -> tuple[int, ...]:
    ks = tuple(sorted(set(int(i) for i in part)))
    n = state.n_subsystems
    if not ks or ks[0] < 0 or ks[-1] >= n or len(ks) == n:
        raise BadSplitError(f"split {ks} is not a proper bipartition of {n} subsystems")
    return ks


def _reduced(state: PureState, part) -> DensityMatrix:
    ks = _validated_split(state, part)
    return partial_trace(density_from_pure(state), ks)


# 2*(1 - purity) below this is product-state rounding noise; taking the
# square root would amplify it to ~1e-8, so it is reported as exactly zero
_PURITY_FLOOR = 1e-14


def concurrence_pure(state: PureState, part: Iterable[int]) -> float:
    """Concurrence of a pure state across the bipartition part | rest."""
    rho_a = _reduced(state, part)
    val = 2.0 * (1.0 - rho_a.purity())
    if val < _PURITY_FLOOR:
        return 0.0
    return math.sqrt(val)


def _require_two_qubit(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise WrongDimensionError(f"expected a two-qubit state, got dims {rho.dims}")


def wootters_spectrum(rho: DensityMatrix) -> np.ndarray:
    """Descending Wootters spectrum (mu1 >= mu2 >= mu3 >= mu4) of a 2-qubit state."""
    _require_two_qubit(rho)
    root = numkit.psd_sqrt(rho.mat, zero_floor=_RHO_EIG_FLOOR)
    factor = root.conj() @ SPIN_FLIP @ root
    mu = numkit.singular_values(factor)
    return np.clip(mu, 0.0, None)


def concurrence_mixed_2q(rho: DensityMatrix) -> float:
    """Wootters concurrence max(mu1 - mu2 - mu3 - mu4, 0) of a 2-qubit state."""
    mu = wootters_spectrum(rho)
    return max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3]))


def concurrence_assist_2q(rho: DensityMatrix) -> float:
    """Concurrence of assistance sum(mu_i) of a two-qubit state."""
    mu = wootters_spectrum(rho)
    return float(np.sum(mu))


def negativity(rho: DensityMatrix, part: Iterable[int]) -> float:
    """Negativity ||rho^{T_A}|| - 1 with A the given subsystem set."""
    ks = tuple(sorted(set(int(i) for i in part)))
    n = rho.n_subsystems
    if not ks or ks[0] < 0 or ks[-1] >= n or len(ks) == n:
        raise BadSplitError(f"split {ks} is not a proper bipartition of {n} subsystems")
    mat = rho.mat
    for s in ks:
        mat = transpose_subsystem(mat, rho.dims, s)
    return _clamp(numkit.trace_norm(mat) - 1.0)


def negativity_pure(state: PureState, part: Iterable[int]) -> float:
    """Pure-state negativity (Tr sqrt(rho_A))^2 - 1 across the bipartition."""
    rho_a = _reduced(state, part)
    vals = numkit.herm_eigvals(rho_a.mat, psd=True)
    vals = np.where(vals < _RHO_EIG_FLOOR, 0.0, vals)
    return _clamp(float(np.sum(np.sqrt(vals)) ** 2 - 1.0))


def cren_2q(rho: DensityMatrix) -> float:
    """Convex-roof extended negativity of a two-qubit state (equals C)."""
    return concurrence_mixed_2q(rho)


def crenoa_2q(rho: DensityMatrix) -> float:
    """Convex-roof extended negativity of assistance of a two-qubit state (equals C_a)."""
    return concurrence_assist_2q(rho)


def cren(state, part: Iterable[int] | None = None) -> float:
    """CREN for the supported cases: pure states (any split) or two-qubit mixed.

    Arbitrary mixed states on more than two qubits would need a convex-roof
    optimization and are refused with UnsupportedError.
    """
    if isinstance(state, PureState):
        if part is None:
            raise BadSplitError("a bipartition is required for pure states")
        return negativity_pure(state, part)
    if isinstance(state, DensityMatrix):
        if state.dims == (2, 2):
            return cren_2q(state)
        raise UnsupportedError(
            "CREN of a mixed state is only computed for two-qubit states"
        )
    raise UnsupportedError(f"unsupported input type {type(state).__name__}")


def crenoa(state, part: Iterable[int] | None = None) -> float:
    """CRENoA for the supported cases; mirrors ``cren``."""
    if isinstance(state, PureState):
        if part is None:
            raise BadSplitError("a bipartition is required for pure states")
        return negativity_pure(state, part)
    if isinstance(state, DensityMatrix):
        if state.dims == (2, 2):
            return crenoa_2q(state)
        raise UnsupportedError(
            "CRENoA of a mixed state is only computed for two-qubit states"
        )
    raise UnsupportedError(f"unsupported input type {type(state).__name__}")


@dataclass(frozen=True)
class GenSchmidtMeasures:
    """Closed-form measure values of the canonical three-qubit state."""

    c_a_bc: float
    c_ab: float
    c_ac: float
    na_a_bc: float
    na_ab: float
    na_ac: float


def gs_closed_forms(params: GenSchmidtParams) -> GenSchmidtMeasures:
    """Closed forms: C_{A|BC} = 2 l0 sqrt(l2^2+l3^2+l4^2), C_AB = 2 l0 l2,
    C_AC = 2 l0 l3, and the assisted values 2 l0 sqrt(l2^2+l4^2) /
    2 l0 sqrt(l3^2+l4^2) with the same global value."""
    l0, _, l2, l3, l4 = params.lam
    tail = math.sqrt(l2 * l2 + l3 * l3 + l4 * l4)
    return GenSchmidtMeasures(
        c_a_bc=2.0 * l0 * tail,
        c_ab=2.0 * l0 * l2,
        c_ac=2.0 * l0 * l3,
        na_a_bc=2.0 * l0 * tail,
        na_ab=2.0 * l0 * math.sqrt(l2 * l2 + l4 * l4),
        na_ac=2.0 * l0 * math.sqrt(l3 * l3 + l4 * l4),
    )


@dataclass(frozen=True)
class MeasureProfile:
    """A measure name plus the admissible base-exponent range of its bound.

    Monogamy measures list the smallest base exponent for which the sharing
    inequality holds (open above); polygamy measures list the closed interval.
    """

    name: str
    mode: str                      # "monogamy" | "polygamy"
    base_min: float
    base_max: float | None         # None = unbounded above

    def admits_base(self, base: float) -> bool:
        if base <= 0.0:
            return False
        if base < self.base_min:
            return False
        return self.base_max is None or base <= self.base_max


MEASURE_PROFILES = {
    "concurrence": MeasureProfile("concurrence", "monogamy", 2.0, None),
    "cren": MeasureProfile("cren", "monogamy", 2.0, None),
    "negativity": MeasureProfile("negativity", "monogamy", 2.0, None),
    "crenoa": MeasureProfile("crenoa", "polygamy", 0.0, 2.0),
    "concurrence_assist": MeasureProfile("concurrence_assist", "polygamy", 0.0, 2.0),
}


def tripartite_triple(state: PureState, measure: str) -> tuple[float, float, float]:
    """(global, pair 0-1, pair 0-2) values of a measure on a three-subsystem pure state.

    The global value uses the pure-state formula for the measure; pair values
    use the two-qubit marginals.  For CREN/CRENoA and the assisted concurrence
    the two-qubit equalities with C and C_a supply the marginal values.
    """
    if state.n_subsystems != 3:
        raise BadSplitError(f"expected three subsystems, got {state.n_subsystems}")
    rho = density_from_pure(state)
    r01 = partial_trace(rho, (0, 1))
    r02 = partial_trace(rho, (0, 2))
    if measure in ("concurrence", "cren"):
        return (concurrence_pure(state, (0,)),
                concurrence_mixed_2q(r01),
                concurrence_mixed_2q(r02))
    if measure == "negativity":
        return (negativity_pure(state, (0,)),
                negativity(r01, (0,)),
                negativity(r02, (0,)))
    if measure in ("crenoa", "concurrence_assist"):
        # pure global state: assisted value = plain value (single decomposition)
        if measure == "crenoa":
            top = negativity_pure(state, (0,))
        else:
            top = concurrence_pure(state, (0,))
        return (top,
                concurrence_assist_2q(r01),
                concurrence_assist_2q(r02))
    raise UnsupportedError(f"unknown measure {measure!r}")
