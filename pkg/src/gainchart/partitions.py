"""Integer partitions: conjugation, union, sum, majorization.

Parts are stored nonincreasing with trailing zeros stripped, so two paddings
of the same partition compare equal. All operations pad with zeros on demand.
"""

from __future__ import annotations


class Partition:
    __slots__ = ("parts",)

    def __init__(self, parts=()):
        p = [int(x) for x in parts]
        if any(x < 0 for x in p):
            raise ValueError("partition parts must be nonnegative")
        while p and p[-1] == 0:
            p.pop()
        if any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"parts must be nonincreasing: {parts}")
        self.parts = tuple(p)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    def part(self, i: int) -> int:
        """1-based part access; zero beyond the stored length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def total(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)
        )

    def union(self, other: "Partition") -> "Partition":
        return Partition(sorted(self.parts + other.parts, reverse=True))

    def __add__(self, other: "Partition") -> "Partition":
        n = max(len(self.parts), len(other.parts))
        return Partition(self.part(i) + other.part(i) for i in range(1, n + 1))

    def majorized_by(self, other: "Partition") -> bool:
        """True when every prefix sum of self is <= other's and totals agree."""
        if self.total() != other.total():
            return False
        run_a = run_b = 0
        for i in range(1, max(len(self), len(other)) + 1):
            run_a += self.part(i)
            run_b += other.part(i)
            if run_a > run_b:
                return False
        return True


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of n, largest part first, in lexicographic descent."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)
