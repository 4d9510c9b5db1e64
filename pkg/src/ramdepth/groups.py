"""Finite groups given by a multiplication table."""

from __future__ import annotations

from typing import FrozenSet, Iterable, List, Sequence

from .errors import DomainError


class FiniteGroup:
    """Group on ``range(n)`` with ``mul[a][b] = a*b``."""

    def __init__(self, mul: Sequence[Sequence[int]], labels: Sequence[str] | None = None, check: bool = True):
        self.mul = tuple(tuple(int(v) for v in row) for row in mul)
        n = len(self.mul)
        self.order = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise DomainError("label count does not match the table")
        if any(len(row) != n for row in self.mul):
            raise DomainError("multiplication table is not square")
        ids = [a for a in range(n) if all(self.mul[a][b] == b for b in range(n))]
        if not ids:
            raise DomainError("table has no identity")
        self.identity = ids[0]
        self._inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == self.identity:
                    self._inv[a] = b
                    break
            if self._inv[a] is None:
                raise DomainError(f"element {a} has no inverse")
        if check:
            for row in self.mul:
                if sorted(row) != list(range(n)):
                    raise DomainError("table rows are not permutations")
            m = self.mul
            for a in range(n):
                for b in range(n):
                    ab = m[a][b]
                    for c in range(n):
                        if m[ab][c] != m[a][m[b][c]]:
                            raise DomainError("table is not associative")

    def inv(self, a: int) -> int:
        return self._inv[a]

    def elements(self) -> range:
        return range(self.order)

    def generated(self, gens: Iterable[int]) -> FrozenSet[int]:
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    b = self.mul[a][g]
                    if b not in out:
                        out.add(b)
                        new.append(b)
            frontier = new
        return frozenset(out)

    def is_subgroup(self, s: Iterable[int]) -> bool:
        s = set(s)
        if self.identity not in s:
            return False
        return all(self.mul[a][self.inv(b)] in s for a in s for b in s)

    def is_normal(self, s: Iterable[int]) -> bool:
        s = set(s)
        if not self.is_subgroup(s):
            return False
        return all(self.mul[self.mul[g][h]][self.inv(g)] in s for g in range(self.order) for h in s)

    def element_order(self, a: int) -> int:
        k, b = 1, a
        while b != self.identity:
            b = self.mul[b][a]
            k += 1
        return k

    def is_cyclic_subset(self, s: Iterable[int]) -> bool:
        s = set(s)
        return any(self.element_order(a) == len(s) for a in s)

    def cosets(self, normal: Iterable[int]) -> List[FrozenSet[int]]:
        normal = frozenset(normal)
        seen, out = set(), []
        for g in range(self.order):
            if g in seen:
                continue
            c = frozenset(self.mul[g][h] for h in normal)
            seen |= c
            out.append(c)
        out.sort(key=min)
        return out

    def quotient(self, normal: Iterable[int]):
        """Return ``(quotient group, projection list)``."""
        normal = frozenset(normal)
        if not self.is_normal(normal):
            raise DomainError("subgroup is not normal")
        cos = self.cosets(normal)
        proj = [0] * self.order
        for i, c in enumerate(cos):
            for g in c:
                proj[g] = i
        reps = [min(c) for c in cos]
        table = [[proj[self.mul[a][b]] for b in reps] for a in reps]
        labels = ["{" + ",".join(self.labels[g] for g in sorted(c)) + "}" for c in cos]
        return FiniteGroup(table, labels, check=False), proj

    def subgroup_table(self, sub: Iterable[int]):
        """Restrict to a subgroup; returns ``(group, list of original ids)``."""
        ids = sorted(set(sub))
        if not self.is_subgroup(ids):
            raise DomainError("not a subgroup")
        pos = {g: i for i, g in enumerate(ids)}
        table = [[pos[self.mul[a][b]] for b in ids] for a in ids]
        return FiniteGroup(table, [self.labels[g] for g in ids], check=False), ids
