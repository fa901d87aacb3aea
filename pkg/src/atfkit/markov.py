"""Markov triples: mutation, Vieta descent and bounded enumeration.

A Markov triple is a positive integer solution of a^2 + b^2 + c^2 = 3abc.
Replacing one entry x by 3yz - x (y, z the other two entries) gives another
solution; every solution is connected to (1, 1, 1) by such mutations.
Entries grow doubly exponentially along mutation branches, so everything
here runs on Python's arbitrary-precision integers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .errors import NotMarkov

__all__ = [
    "MarkovTriple",
    "MutationPath",
    "is_markov",
    "mutate",
    "reduce_to_root",
    "enumerate_triples",
    "markov_partner_identity",
]


def is_markov(a: int, b: int, c: int) -> bool:
    """True iff (a, b, c) is a positive solution of the Markov equation."""
    if a <= 0 or b <= 0 or c <= 0:
        return False
    return a * a + b * b + c * c == 3 * a * b * c


@dataclass(frozen=True, order=True)
class MarkovTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not is_markov(self.a, self.b, self.c):
            raise NotMarkov(f"({self.a}, {self.b}, {self.c}) does not solve the Markov equation")

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "MarkovTriple":
        return cls(a, b, c)

    def entries(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def entry(self, slot: int) -> int:
        return self.entries()[slot]

    def sorted(self) -> "MarkovTriple":
        a, b, c = sorted(self.entries())
        return MarkovTriple(a, b, c)

    def is_sorted(self) -> bool:
        return self.a <= self.b <= self.c

    def is_root(self) -> bool:
        return self.entries() == (1, 1, 1)

    def coprime(self) -> bool:
        a, b, c = self.entries()
        return math.gcd(a, b) == math.gcd(b, c) == math.gcd(a, c) == 1

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def mutate(t: MarkovTriple, slot: int) -> MarkovTriple:
    """Replace the slot entry x by 3yz - x."""
    if slot not in (0, 1, 2):
        raise IndexError(f"slot must be 0, 1 or 2, got {slot}")
    e = list(t.entries())
    others = [e[i] for i in range(3) if i != slot]
    e[slot] = 3 * others[0] * others[1] - e[slot]
    return MarkovTriple(*e)


def markov_partner_identity(t: MarkovTriple, slot: int) -> bool:
    """Check x * (3yz - x) == y^2 + z^2 for the given slot."""
    if slot not in (0, 1, 2):
        raise IndexError(f"slot must be 0, 1 or 2, got {slot}")
    e = t.entries()
    x = e[slot]
    y, z = (e[i] for i in range(3) if i != slot)
    return x * (3 * y * z - x) == y * y + z * z


@dataclass(frozen=True)
class MutationPath:
    """A start triple plus the ordered slots mutated at each step."""

    start: MarkovTriple
    steps: tuple[int, ...] = field(default_factory=tuple)

    def replay(self) -> list[MarkovTriple]:
        """All triples visited, starting with `start`."""
        chain = [self.start]
        for slot in self.steps:
            chain.append(mutate(chain[-1], slot))
        return chain

    def end(self) -> MarkovTriple:
        return self.replay()[-1]

    def __len__(self):
        return len(self.steps)


def _largest_slot(t: MarkovTriple) -> int:
    # ties broken toward the highest slot index
    e = t.entries()
    m = max(e)
    return max(i for i in range(3) if e[i] == m)


def reduce_to_root(t: MarkovTriple) -> MutationPath:
    """Vieta descent: repeatedly mutate the largest entry until (1, 1, 1).

    Mutating the largest entry of a triple other than the root strictly
    decreases it, so this terminates.
    """
    steps = []
    cur = t
    while not cur.is_root():
        slot = _largest_slot(cur)
        nxt = mutate(cur, slot)
        if nxt.entry(slot) >= cur.entry(slot):
            raise AssertionError(f"descent failed to decrease at {cur}")
        steps.append(slot)
        cur = nxt
    return MutationPath(start=t, steps=tuple(steps))


def enumerate_triples(max_entry: int) -> list[MarkovTriple]:
    """All canonical (sorted) Markov triples with largest entry <= max_entry.

    Breadth-first walk of the mutation tree from (1, 1, 1); result is
    deduplicated and sorted lexicographically.
    """
    if max_entry < 1:
        raise ValueError("max_entry must be >= 1")
    root = MarkovTriple(1, 1, 1)
    seen = {root}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for slot in range(3):
            child = mutate(t, slot).sorted()
            if child.c <= max_entry and child not in seen:
                seen.add(child)
                queue.append(child)
    return sorted(seen)
