"""Constructors for the named states and parametric families.

Kets are written most-significant party first, so ``"0011"`` puts parties 0
and 1 in |0> and parties 2 and 3 in |1>.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import CapacityExceeded, InvalidParams, UnknownCatalogIndex
from .tensor import ComplexTensor, normalize

DEFAULT_AMPLITUDE_CAP = 1 << 28


def from_kets(n: int, terms: Sequence[tuple[str, complex]], prefactor: float = 1.0) -> ComplexTensor:
    """Qubit tensor from ``(ket, coefficient)`` pairs, then normalized.

    Kets shorter than ``n`` are left-padded with zeros.
    """
    a = np.zeros((2,) * n, dtype=np.complex128)
    for ket, c in terms:
        if len(ket) > n or set(ket) - {"0", "1"}:
            raise InvalidParams(f"bad ket {ket!r} for {n} qubits")
        idx = tuple(int(b) for b in ket.zfill(n))
        a[idx] += prefactor * c
    return normalize(ComplexTensor(a))


def dicke_state(n: int, k: int) -> ComplexTensor:
    """S(n, k): equal superposition of all n-qubit kets with exactly k zeros."""
    if n < 1 or not 0 <= k <= n:
        raise InvalidParams(f"need 0 <= k <= n and n >= 1, got n={n}, k={k}")
    a = np.zeros((2,) * n, dtype=np.complex128)
    amp = math.sqrt(math.factorial(k) * math.factorial(n - k) / math.factorial(n))
    for zeros in itertools.combinations(range(n), k):
        idx = [1] * n
        for z in zeros:
            idx[z] = 0
        a[tuple(idx)] = amp
    return ComplexTensor(a)


def ghz_state(n: int) -> ComplexTensor:
    if n < 1:
        raise InvalidParams("need n >= 1")
    return from_kets(n, [("0" * n, 1), ("1" * n, 1)])


def w_superposition_state(s: float, phi: float = 0.0) -> ComplexTensor:
    """sqrt(s)|W> + sqrt(1-s) e^{i phi} |W~> on three qubits."""
    if not 0 <= s <= 1:
        raise InvalidParams(f"s must lie in [0, 1], got {s}")
    a = (math.sqrt(s) * dicke_state(3, 2).array
         + math.sqrt(1 - s) * cmath.exp(1j * phi) * dicke_state(3, 1).array)
    return normalize(ComplexTensor(a))


def qudit_symmetric_state(n: int, d: int, cap: int = DEFAULT_AMPLITUDE_CAP) -> ComplexTensor:
    """Symmetric n-qudit state with one party at level d-1 and the rest at 0."""
    if n < 2 or d < 2:
        raise InvalidParams(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    if d ** n > cap:
        raise CapacityExceeded(f"{d}^{n} amplitudes exceed the cap of {cap}")
    a = np.zeros((d,) * n, dtype=np.complex128)
    amp = math.sqrt(math.factorial(n - 1) / math.factorial(n))
    for k in range(n):
        idx = [0] * n
        idx[k] = d - 1
        a[tuple(idx)] = amp
    return ComplexTensor(a)


def weighted_w_state(gammas: Sequence[float]) -> ComplexTensor:
    """N (gamma_1 |0..01> + gamma_2 |0..10> + ...).

    ``gammas[g]`` multiplies the ket whose g-th qubit from the right is
    excited, i.e. tensor axis ``m - 1 - g``.
    """
    m = len(gammas)
    if m < 2 or any(not g > 0 for g in gammas):
        raise InvalidParams("need at least two positive weights")
    terms = [("0" * (m - 1 - g) + "1" + "0" * g, float(gammas[g])) for g in range(m)]
    return from_kets(m, terms)


def _w(t: float) -> complex:
    return cmath.exp(1j * t)


def hs_state(t: float = 2 * math.pi / 3) -> ComplexTensor:
    w = _w(t)
    return from_kets(4, [
        ("0011", 1), ("1100", 1),
        ("1010", w), ("0101", w),
        ("1001", w * w), ("0110", w * w),
    ], math.sqrt(1 / 6))


def l_state(t: float = 2 * math.pi / 3) -> ComplexTensor:
    w = _w(t)
    return from_kets(4, [
        ("0000", 1 + w), ("1111", 1 + w),
        ("0011", 1 - w), ("1100", 1 - w),
        ("0101", w * w), ("0110", w * w), ("1001", w * w), ("1010", w * w),
    ], math.sqrt(1 / 12))


def bssb4_family_state(t: float = math.pi / 2) -> ComplexTensor:
    w = _w(t)
    return from_kets(4, [
        ("0110", 1), ("1011", 1),
        ("0010", w), ("1111", w),
        ("0101", 1 + w), ("1000", 1 + w),
    ], math.sqrt(1 / 8))


def bssb4_state() -> ComplexTensor:
    return from_kets(4, [
        ("0110", 1), ("1011", 1),
        ("0010", 1j), ("1111", 1j),
        ("0101", 1 + 1j), ("1000", 1 + 1j),
    ], math.sqrt(1 / 8))


def bssb5_state() -> ComplexTensor:
    return from_kets(5, [
        ("00001", 1), ("00010", -1), ("01000", 1), ("01011", -1),
        ("10001", 1), ("10010", 1), ("11100", 1), ("11111", 1),
    ], math.sqrt(1 / 8))


# Equal-weight states found by support search. The first (6, 2) ket is
# printed with five digits ("11000"); it is read as "110000", the only
# completion that gives the reference overlap 0.3954 (left-padding to
# "011000" gives 0.4168).
PHI_CATALOG: dict[tuple[int, int], tuple[str, ...]] = {
    (4, 1): ("0000", "1110", "0101", "1011"),
    (4, 2): ("1100", "0010", "0101", "1011"),
    (4, 3): ("1000", "0110", "0001", "1111"),
    (4, 4): ("0100", "0010", "1001", "1111"),
    (4, 5): ("0110", "1010", "0001", "1101"),
    (4, 6): ("0010", "1110", "0101", "1001"),
    (4, 7): ("0000", "1100", "0011", "1111"),
    (5, 1): ("00000", "01100", "10010", "11001", "00111", "11111"),
    (5, 2): ("11000", "01100", "10010", "10110", "00001", "01001", "00111", "11111"),
    (6, 1): ("100000", "011000", "011110", "101110", "101001", "110101", "000011"),
    (6, 2): ("110000", "001100", "010110", "100110", "001001", "100101", "111101", "101011"),
    (7, 1): ("0110000", "0011000", "1100100", "0001100", "1110010",
             "1001010", "1101001", "1010101", "0000011", "1111111"),
    (7, 2): ("0110000", "0000100", "1100100", "1011100", "1001010", "0011110",
             "0101101", "1110011", "0000011", "0011011", "1010111"),
}


def phi_state(n: int, index: int) -> ComplexTensor:
    try:
        kets = PHI_CATALOG[(n, index)]
    except KeyError:
        raise UnknownCatalogIndex(f"no catalog state phi_{{{n},{index}}}") from None
    return from_kets(n, [(k, 1) for k in kets], 1 / math.sqrt(len(kets)))


def support_state(n: int, support: Sequence[int]) -> ComplexTensor:
    """Equal-amplitude qubit state on the given flat basis indices."""
    a = np.zeros(2 ** n, dtype=np.complex128)
    a[list(support)] = 1
    return normalize(ComplexTensor.from_flat((2,) * n, a))


class Family(str, Enum):
    DICKE = "dicke"
    W_SUPERPOSITION = "wsup"
    QUDIT_SYMMETRIC = "qudit"
    WEIGHTED_W3 = "weighted-w3"
    WEIGHTED_W4 = "weighted-w4"
    W5 = "w5"
    HS = "hs"
    L = "l"
    BSSB4_FAMILY = "bssb4-family"
    BSSB4 = "bssb4"
    BSSB5 = "bssb5"
    PHI = "phi"
    GHZ = "ghz"


def _floats(v) -> list[float]:
    if isinstance(v, str):
        return [float(x) for x in v.split(",")]
    return [float(x) for x in v]


def _index(v) -> tuple[int, int]:
    if isinstance(v, str):
        a, b = v.replace(".", ",").split(",")
        return int(a), int(b)
    a, b = v
    return int(a), int(b)


def _weighted(arity: int):
    def build(gammas):
        g = _floats(gammas)
        if len(g) != arity:
            raise InvalidParams(f"expected {arity} weights, got {len(g)}")
        return weighted_w_state(g)
    return build


# name -> (builder, {param: converter}, defaults)
_REGISTRY: dict[Family, tuple[Callable[..., ComplexTensor], dict[str, Callable], dict]] = {
    Family.DICKE: (dicke_state, {"n": int, "k": int}, {}),
    Family.W_SUPERPOSITION: (w_superposition_state, {"s": float, "phi": float}, {"phi": 0.0}),
    Family.QUDIT_SYMMETRIC: (qudit_symmetric_state, {"n": int, "d": int, "cap": int}, {}),
    Family.WEIGHTED_W3: (_weighted(3), {"gammas": lambda v: v}, {"gammas": (1.0, 2.0, 3.0)}),
    Family.WEIGHTED_W4: (_weighted(4), {"gammas": lambda v: v}, {"gammas": (1.0, 2.0, 3.0, 4.0)}),
    Family.W5: (lambda: dicke_state(5, 4), {}, {}),
    Family.HS: (hs_state, {"t": float}, {}),
    Family.L: (l_state, {"t": float}, {}),
    Family.BSSB4_FAMILY: (bssb4_family_state, {"t": float}, {}),
    Family.BSSB4: (bssb4_state, {}, {}),
    Family.BSSB5: (bssb5_state, {}, {}),
    Family.PHI: (lambda index: phi_state(*_index(index)), {"index": lambda v: v}, {}),
    Family.GHZ: (ghz_state, {"n": int}, {}),
}


@dataclass(frozen=True)
class StateFamily:
    """A named family plus parameter values, e.g. ``StateFamily("hs", {"t": 2.09})``."""

    name: Family
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "name", Family(self.name))
        except ValueError:
            raise InvalidParams(f"unknown family {self.name!r}") from None
        object.__setattr__(self, "params", dict(self.params))

    def with_params(self, **params) -> "StateFamily":
        return StateFamily(self.name, {**self.params, **params})

    def build(self) -> ComplexTensor:
        return family_state(self)


def family_state(f: StateFamily) -> ComplexTensor:
    builder, spec, defaults = _REGISTRY[f.name]
    unknown = set(f.params) - set(spec)
    if unknown:
        raise InvalidParams(f"{f.name.value} does not take {sorted(unknown)}")
    kwargs = dict(defaults)
    try:
        kwargs.update({k: spec[k](v) for k, v in f.params.items()})
        return builder(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidParams):
            raise
        raise InvalidParams(f"bad parameters for {f.name.value}: {exc}") from exc


def weighted_w_axes(blocks, m: int) -> list[list[int]]:
    """Map blocks of weight labels (``gammas[g]``) to tensor axes of ``weighted_w_state``."""
    return [[m - 1 - g for g in blk] for blk in blocks]
