"""Dense complex amplitude tensors and the contractions built on them.

A pure state of ``m`` parties with local dimensions ``n_1..n_m`` is stored as
an ``m``-way complex array in row-major order, so the flat index of
``(i_1, ..., i_m)`` is the usual mixed-radix number with ``i_1`` most
significant. Contractions use the bra convention: the supplied vectors are
conjugated, which makes a full contraction equal to ``<phi|psi>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, ZeroTensor
from .partition import Partition


@dataclass(frozen=True, eq=False)
class ComplexTensor:
    """Immutable dense complex tensor of shape ``dims``."""

    array: np.ndarray

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.complex128, copy=True)
        if arr.ndim < 1:
            raise DimensionMismatch("a state needs at least one party")
        if any(d < 1 for d in arr.shape):
            raise DimensionMismatch(f"all dims must be >= 1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("amplitudes must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_flat(cls, dims: Sequence[int], data) -> "ComplexTensor":
        data = np.asarray(data, dtype=np.complex128).ravel()
        dims = tuple(int(d) for d in dims)
        if data.size != int(np.prod(dims)):
            raise DimensionMismatch(
                f"{data.size} amplitudes cannot fill a tensor of dims {dims}")
        return cls(data.reshape(dims))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.array.shape

    @property
    def order(self) -> int:
        return self.array.ndim

    @property
    def data(self) -> np.ndarray:
        return self.array.reshape(-1)

    def is_real(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.array.imag) <= atol))

    def __repr__(self) -> str:
        return f"ComplexTensor(dims={self.dims}, norm={frobenius_norm(self):.6g})"


@dataclass(frozen=True, eq=False)
class RankOneState:
    """A product state ``a^1 (x) ... (x) a^m`` with its overlap ``lambda``."""

    factors: tuple[np.ndarray, ...]
    overlap: complex = 0.0
    dims: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        fs = tuple(np.array(f, dtype=np.complex128).ravel() for f in self.factors)
        for f in fs:
            f.flags.writeable = False
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "dims", tuple(f.size for f in fs))

    def to_tensor(self) -> ComplexTensor:
        out = self.factors[0]
        for f in self.factors[1:]:
            out = np.multiply.outer(out, f)
        return ComplexTensor(np.reshape(out, self.dims))

    def gauge_fixed(self) -> "RankOneState":
        """Rotate the first factor's phase so the overlap is real and >= 0."""
        lam = complex(self.overlap)
        if lam == 0:
            return self
        phase = lam / abs(lam)
        # lambda = sum conj(a) T, so a -> a*phase takes lambda -> lambda*conj(phase)
        fs = (self.factors[0] * phase,) + self.factors[1:]
        return RankOneState(fs, abs(lam))


def frobenius_norm(T: ComplexTensor) -> float:
    return float(np.linalg.norm(T.data))


def normalize(T: ComplexTensor) -> ComplexTensor:
    nrm = frobenius_norm(T)
    if nrm == 0:
        raise ZeroTensor("cannot normalize an all-zero tensor")
    return ComplexTensor(T.array / nrm)


def mode_contract(T: ComplexTensor, mode: int, v) -> ComplexTensor | complex:
    """Contract party ``mode`` of ``T`` against ``conj(v)``.

    Returns a tensor with one fewer party, or a complex scalar when ``T`` has
    a single party.
    """
    v = np.asarray(v, dtype=np.complex128).ravel()
    if not 0 <= mode < T.order:
        raise DimensionMismatch(f"mode {mode} out of range for order {T.order}")
    if v.size != T.dims[mode]:
        raise DimensionMismatch(
            f"vector of length {v.size} against party of dim {T.dims[mode]}")
    out = np.tensordot(T.array, v.conj(), axes=([mode], [0]))
    if T.order == 1:
        return complex(out)
    return ComplexTensor(out)


def _check_factor_dims(dims, factors):
    if tuple(f.size for f in factors) != tuple(dims):
        raise DimensionMismatch(
            f"factor dims {[f.size for f in factors]} do not match tensor dims {list(dims)}")


def full_overlap(T: ComplexTensor, P: RankOneState) -> complex:
    """``<phi|psi>`` for the product state ``P`` and the state ``T``."""
    _check_factor_dims(T.dims, P.factors)
    out = T.array
    for f in reversed(P.factors):
        out = out @ f.conj()
    return complex(out)


def merge_indices(T: ComplexTensor, P: Partition) -> ComplexTensor:
    """Group parties into the blocks of ``P``; one composite index per block.

    Members of a block are combined in ascending party order with the lowest
    party most significant. Entries are only relocated, never recombined.
    """
    new_dims = P.merged_dims(T.dims)
    perm = [i for b in P.blocks for i in b]
    return ComplexTensor(np.transpose(T.array, perm).reshape(new_dims))
