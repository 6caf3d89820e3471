"""Integer partitions and their prefix sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

__all__ = ["Partition", "iter_partitions", "part_at", "partitions_of", "prefix_at"]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts.

    ``prefix[i]`` is the sum of the first ``i`` parts, starting from
    ``prefix[0] == 0``.
    """

    parts: tuple
    prefix: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        for x, y in zip(parts, parts[1:]):
            if x < y:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        acc = [0]
        for p in parts:
            acc.append(acc[-1] + p)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "prefix", tuple(acc))

    @property
    def weight(self) -> int:
        return self.prefix[-1]

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, j: int) -> int:
        """``j``-th part (1-based), zero past the end."""
        if j < 1:
            raise ValueError("parts are indexed from 1")
        return self.parts[j - 1] if j <= len(self.parts) else 0

    def y(self, i: int) -> int:
        """Sum of the first ``i`` parts; saturates at the weight."""
        if i < 0:
            raise ValueError("prefix index must be nonnegative")
        return self.prefix[min(i, len(self.parts))]

    def to_json(self) -> dict:
        return {"parts": list(self.parts)}

    @classmethod
    def from_json(cls, obj: dict) -> Partition:
        return cls(tuple(obj["parts"]))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def part_at(lam: Partition, j: int) -> int:
    return lam.part(j)


def prefix_at(lam: Partition, i: int) -> int:
    return lam.y(i)


def iter_partitions(b: int) -> Iterator[Partition]:
    """Partitions of ``b`` in reverse-lexicographic order, ``(b)`` first.

    Successor rule: find the rightmost part larger than 1, decrease it by
    one and refill the tail greedily with copies of the new value.
    """
    if b < 0:
        raise ValueError("b must be nonnegative")
    if b == 0:
        yield Partition(())
        return
    parts = [b]
    while True:
        yield Partition(tuple(parts))
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts.pop() - 1
        parts.append(k)
        rest = ones + 1
        while rest > 0:
            x = min(k, rest)
            parts.append(x)
            rest -= x


def partitions_of(b: int) -> list:
    """All partitions of ``b``; ``b == 0`` gives the single empty partition.

    >>> [str(p) for p in partitions_of(4)]
    ['(4)', '(3,1)', '(2,2)', '(2,1,1)', '(1,1,1,1)']
    """
    return list(iter_partitions(b))
