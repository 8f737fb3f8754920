"""Set partitions of the parties of a multipartite state."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidPartition, TooManyParties

MAX_PARTIES = 12


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of 0-based party indices covering ``range(n_parties)``.

    Blocks are stored in canonical form: members ascending inside each block,
    blocks ordered by their smallest member.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        canon = []
        for b in blocks:
            members = tuple(sorted(int(i) for i in b))
            if not members:
                raise InvalidPartition("empty block")
            canon.append(members)
        canon.sort(key=lambda b: b[0])
        flat = [i for b in canon for i in b]
        if sorted(flat) != list(range(len(flat))):
            raise InvalidPartition(
                f"blocks {canon} do not cover 0..{len(flat) - 1} exactly once")
        object.__setattr__(self, "blocks", tuple(canon))

    @classmethod
    def singletons(cls, n_parties: int) -> "Partition":
        return cls([i] for i in range(n_parties))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"0,1|2"``-style text (0-based indices, ``|`` between blocks)."""
        try:
            return cls([int(x) for x in blk.strip("{} ").split(",")]
                       for blk in text.split("|"))
        except ValueError as exc:
            raise InvalidPartition(f"cannot parse partition {text!r}") from exc

    @property
    def n_parties(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def signature(self) -> tuple[int, ...]:
        """Block sizes in ascending order, e.g. ``(1, 2, 2)``."""
        return tuple(sorted(len(b) for b in self.blocks))

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside some block of ``other``."""
        if self.n_parties != other.n_parties:
            return False
        owner = {i: k for k, b in enumerate(other.blocks) for i in b}
        return all(len({owner[i] for i in b}) == 1 for b in self.blocks)

    def merged_dims(self, dims: Sequence[int]) -> tuple[int, ...]:
        if self.n_parties != len(dims):
            raise InvalidPartition(
                f"partition over {self.n_parties} parties applied to {len(dims)}-party tensor")
        out = []
        for b in self.blocks:
            size = 1
            for i in b:
                size *= dims[i]
            out.append(size)
        return tuple(out)

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)


def signature_key(sig: tuple[int, ...]) -> tuple:
    # fewer blocks first, then lexicographic: (1,4) < (2,3) < (1,1,3) < ...
    return (len(sig), sig)


def enumerate_partitions(m: int, max_blocks: int | None = None,
                         n_blocks: int | None = None) -> list[Partition]:
    """All set partitions of ``m`` parties in canonical order.

    ``max_blocks`` keeps partitions with at most that many blocks and
    ``n_blocks`` keeps those with exactly that many.
    """
    if m < 1:
        raise InvalidPartition("need at least one party")
    if m > MAX_PARTIES:
        raise TooManyParties(f"{m} parties; enumeration is capped at {MAX_PARTIES}")
    from sympy.utilities.iterables import multiset_partitions

    parts = [Partition(p) for p in multiset_partitions(list(range(m)))]
    if max_blocks is not None:
        parts = [p for p in parts if len(p.blocks) <= max_blocks]
    if n_blocks is not None:
        parts = [p for p in parts if len(p.blocks) == n_blocks]
    parts.sort(key=lambda p: (len(p.blocks), p.blocks))
    return parts
