"""Multi-qubit pure states and density matrices with subsystem bookkeeping.

Subsystem 0 is the leftmost tensor factor; basis index i spells the subsystem
values big-endian, so for three qubits index 6 is |110>.  Values are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubsystemIndexError,
    DimensionTooLargeError,
    NotNormalizedError,
)
from . import numkit

NORM_TOL = 1e-10
MAX_DIM = 32


def _as_dims(dims: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 2 for d in out):
        raise BadSubsystemIndexError(f"subsystem dimensions must each be >= 2, got {out}")
    return out


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over subsystems of given dimensions."""

    amps: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        dims = _as_dims(self.dims)
        if math.prod(dims) != amps.size:
            raise BadSubsystemIndexError(
                f"product of dims {dims} does not match amplitude count {amps.size}"
            )
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"|amps|^2 = {norm2!r} is not 1 within {NORM_TOL:.1e}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "dims", dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "re": self.amps.real.tolist(),
            "im": self.amps.imag.tolist(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PureState":
        amps = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(amps, tuple(d["dims"]))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian unit-trace matrix over subsystems of given dimensions.

    Construction checks shape, trace and hermiticity; positivity is a
    contract of the producing operations and is asserted by the test suite
    rather than rechecked on every instance.
    """

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = numkit.as_complex_matrix(self.mat)
        dims = _as_dims(self.dims)
        if math.prod(dims) != mat.shape[0]:
            raise BadSubsystemIndexError(
                f"product of dims {dims} does not match matrix size {mat.shape[0]}"
            )
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"trace {tr!r} is not 1 within {NORM_TOL:.1e}")
        if not numkit.is_hermitian(mat):
            raise NotNormalizedError("matrix is not Hermitian within tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.mat) ** 2))

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "re": self.mat.real.tolist(),
            "im": self.mat.imag.tolist(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DensityMatrix":
        mat = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(mat, tuple(d["dims"]))


@dataclass(frozen=True)
class GenSchmidtParams:
    """Parameters (lambda_0..lambda_4, phi) of the canonical three-qubit state."""

    lam: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5:
            raise NotNormalizedError(f"expected five lambda values, got {len(lam)}")
        if any(x < 0.0 for x in lam):
            raise NotNormalizedError(f"lambda values must be nonnegative, got {lam}")
        total = sum(x * x for x in lam)
        if abs(total - 1.0) > NORM_TOL:
            raise NotNormalizedError(
                f"sum of squared lambdas is {total!r}, not 1 within {NORM_TOL:.1e}"
            )
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "phi", float(self.phi))


# Built-in demonstration parameter sets for the canonical three-qubit state.
EXAMPLE_PARAMS = {
    "ex1": GenSchmidtParams(
        (1.0 / math.sqrt(6.0), 1.0 / math.sqrt(6.0), 1.0 / math.sqrt(6.0),
         math.sqrt(3.0) / 3.0, 1.0 / math.sqrt(6.0))
    ),
    "ex2": GenSchmidtParams(
        (math.sqrt(2.0 / 9.0), 1.0 / 3.0, 1.0 / 3.0,
         math.sqrt(1.0 / 3.0), math.sqrt(2.0 / 9.0))
    ),
}


def state_from_json_dict(d: dict):
    """Dispatch a JSON state dict to PureState (flat re) or DensityMatrix (nested re)."""
    re = d.get("re")
    if re and isinstance(re[0], (list, tuple)):
        return DensityMatrix.from_json_dict(d)
    return PureState.from_json_dict(d)


def density_from_pure(state: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi| with the subsystem dims carried over."""
    mat = np.outer(state.amps, state.amps.conj())
    return DensityMatrix(mat, state.dims)


def _check_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    ks = tuple(sorted(set(int(k) for k in keep)))
    if not ks:
        raise BadSubsystemIndexError("keep set must be nonempty")
    if ks[0] < 0 or ks[-1] >= n:
        raise BadSubsystemIndexError(f"keep indices {ks} out of range for {n} subsystems")
    return ks


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out all subsystems not in ``keep``."""
    n = rho.n_subsystems
    ks = _check_keep(keep, n)
    dims = rho.dims
    t = rho.mat.reshape(dims + dims)
    labels = list(range(n))
    for sub in reversed([i for i in range(n) if i not in ks]):
        pos = labels.index(sub)
        t = np.trace(t, axis1=pos, axis2=pos + len(labels))
        labels.pop(pos)
    new_dims = tuple(dims[i] for i in ks)
    d = math.prod(new_dims)
    mat = np.ascontiguousarray(t.reshape(d, d))
    # round away the accumulated hermiticity noise from the axis shuffles
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat, new_dims)


def transpose_subsystem(mat: np.ndarray, dims: Sequence[int], subsystem: int) -> np.ndarray:
    """Partial transpose of a raw matrix over one subsystem index."""
    dims = tuple(dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise BadSubsystemIndexError(f"subsystem {subsystem} out of range for {n} subsystems")
    d = math.prod(dims)
    t = mat.reshape(dims + dims)
    perm = list(range(2 * n))
    perm[subsystem], perm[subsystem + n] = perm[subsystem + n], perm[subsystem]
    return np.ascontiguousarray(t.transpose(perm).reshape(d, d))


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Partial transpose over one subsystem; an involution that preserves trace.

    Returns a plain matrix since the result is generally not positive.
    """
    return transpose_subsystem(rho.mat, rho.dims, subsystem)


def gen_schmidt_state(params: GenSchmidtParams) -> PureState:
    """Canonical five-parameter three-qubit pure state.

    Amplitudes: l0 |000> + l1 e^{i phi} |100> + l3 |101> + l2 |110> + l4 |111>.
    The l2 weight sits on the branch where the second qubit is excited and l3
    on the third-qubit branch, so the pair concurrences come out as 2*l0*l2
    for subsystems (0,1) and 2*l0*l3 for (0,2).
    """
    l0, l1, l2, l3, l4 = params.lam
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = l0
    amps[4] = l1 * complex(math.cos(params.phi), math.sin(params.phi))
    amps[5] = l3
    amps[6] = l2
    amps[7] = l4
    return PureState(amps, (2, 2, 2))


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    # Philox: counter-based, documented, reproducible across platforms
    return np.random.Generator(np.random.Philox(int(seed)))


def haar_random_pure(dims: Sequence[int], seed) -> PureState:
    """Haar-random pure state: normalized complex Gaussian amplitudes.

    ``seed`` is an integer or a numpy Generator passed through explicitly;
    identical seeds give identical amplitudes.
    """
    dims = _as_dims(dims)
    d = math.prod(dims)
    if d > MAX_DIM:
        raise DimensionTooLargeError(f"total dimension {d} exceeds {MAX_DIM}")
    rng = _as_generator(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    z /= np.linalg.norm(z)
    return PureState(z, dims)


def haar_random_mixed(dims: Sequence[int], rank: int, seed) -> DensityMatrix:
    """Random mixed state of the given rank via partial trace of a purification."""
    dims = _as_dims(dims)
    rank = int(rank)
    if rank < 1:
        raise BadSubsystemIndexError(f"rank must be >= 1, got {rank}")
    d = math.prod(dims)
    if d * rank > MAX_DIM:
        raise DimensionTooLargeError(f"purification dimension {d * rank} exceeds {MAX_DIM}")
    if rank == 1:
        return density_from_pure(haar_random_pure(dims, seed))
    pure = haar_random_pure(tuple(dims) + (rank,), seed)
    rho = partial_trace(density_from_pure(pure), range(len(dims)))
    return rho


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits, 2 <= n <= 5."""
    if not 2 <= n <= 5:
        raise DimensionTooLargeError(f"ghz supports 2..5 qubits, got {n}")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return PureState(amps, (2,) * n)


def w_state(n: int) -> PureState:
    """Equal superposition of single-excitation basis states on n qubits."""
    if not 2 <= n <= 5:
        raise DimensionTooLargeError(f"w_state supports 2..5 qubits, got {n}")
    amps = np.zeros(2 ** n, dtype=np.complex128)
    for k in range(n):
        amps[1 << k] = 1.0 / math.sqrt(n)
    return PureState(amps, (2,) * n)
