"""
Finite constant groups and their function Hopf algebras.

Elements are indices into a Cayley table. The Hopf algebra of C0-valued
functions on the group has the indicator functions as basis; its
comultiplication, counit and antipode are determined by the table.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, List, Sequence, Tuple

from sympy.combinatorics import PermutationGroup

from pvkit.exceptions import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinGroupHopf:
    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.labels)
        if k == 0:
            raise InputError("a group needs at least one element")
        if len(self.table) != k or any(len(row) != k for row in self.table):
            raise InputError(f"multiplication table must be {k} x {k}")
        if any(not 0 <= v < k for row in self.table for v in row):
            raise InputError("multiplication table refers to unknown elements")
        if self._find_identity() is None:
            raise InputError("multiplication table has no identity")
        e = self._find_identity()
        for g in range(k):
            if e not in self.table[g]:
                raise InputError(f"element {self.labels[g]} has no inverse")
        for a, b, c in product(range(k), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InputError("multiplication table is not associative")

    def _find_identity(self):
        k = len(self.labels)
        for e in range(k):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(k)):
                return e
        return None

    # constructors

    @classmethod
    def trivial(cls) -> "FinGroupHopf":
        return cls(("e",), ((0,),))

    @classmethod
    def cyclic(cls, k: int) -> "FinGroupHopf":
        """mu_k, element s standing for zeta_k^s."""
        if k < 1:
            raise InputError(f"cyclic group order must be positive, got {k}")
        labels = tuple(str(s) for s in range(k))
        table = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
        return cls(labels, table)

    @classmethod
    def direct_product(cls, left: "FinGroupHopf", right: "FinGroupHopf") -> "FinGroupHopf":
        m = right.order
        labels = tuple(f"({a},{b})" for a in left.labels for b in right.labels)
        table = tuple(
            tuple(left.table[a1][a2] * m + right.table[b1][b2] for a2 in range(left.order) for b2 in range(m))
            for a1 in range(left.order)
            for b1 in range(m)
        )
        return cls(labels, table)

    @classmethod
    def from_permutation_group(cls, group: PermutationGroup) -> "FinGroupHopf":
        elements = sorted(group.generate(), key=lambda p: p.array_form)
        index = {tuple(p.array_form): i for i, p in enumerate(elements)}
        labels = tuple("".join(str(v) for v in p.array_form) for p in elements)
        table = tuple(tuple(index[tuple((p * q).array_form)] for q in elements) for p in elements)
        return cls(labels, table)

    # group structure

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def identity(self) -> int:
        return self._find_identity()

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown group element {label!r}")

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def power(self, a: int, n: int) -> int:
        result = self.identity
        base = a if n >= 0 else self.inverse(a)
        for _ in range(abs(n)):
            result = self.multiply(result, base)
        return result

    def element_order(self, a: int) -> int:
        n, g = 1, a
        while g != self.identity:
            g = self.multiply(g, a)
            n += 1
        return n

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(g) for g in range(self.order)))

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(self.order))

    def closure(self, generators: Sequence[int]) -> List[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            g = frontier.pop()
            for s in generators:
                h = self.multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return sorted(seen)

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """A generating set chosen greedily in index order."""
        gens: List[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = set(self.closure(gens))
        return tuple(gens)

    # Hopf algebra of functions

    def comultiplication(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Delta(delta_g) = sum over a*b = g of delta_a (x) delta_b."""
        pairs: Dict[int, List[Tuple[int, int]]] = {g: [] for g in range(self.order)}
        for a in range(self.order):
            for b in range(self.order):
                pairs[self.multiply(a, b)].append((a, b))
        return tuple(tuple(pairs[g]) for g in range(self.order))

    def counit(self) -> Tuple[int, ...]:
        return tuple(1 if g == self.identity else 0 for g in range(self.order))

    def antipode(self) -> Tuple[int, ...]:
        """S(delta_g) = delta_(g^-1)."""
        return tuple(self.inverse(g) for g in range(self.order))

    def hopf_axioms_hold(self) -> bool:
        """Coassociativity, counit and antipode laws of the function Hopf algebra."""
        delta = self.comultiplication()
        eps = self.counit()
        anti = self.antipode()
        for g in range(self.order):
            left = sorted((a, b, c) for ab, c in delta[g] for a, b in delta[ab])
            right = sorted((a, b, c) for a, bc in delta[g] for b, c in delta[bc])
            if left != right:
                return False
            if sorted(b for a, b in delta[g] if eps[a]) != [g]:
                return False
            if sorted(a for a, b in delta[g] if eps[b]) != [g]:
                return False
            # m(S (x) id)Delta(delta_g) = eps(delta_g) * 1
            support = sorted(b for a, b in delta[g] if anti[a] == b)
            expected = list(range(self.order)) if eps[g] else []
            if support != expected:
                return False
        return True

    def describe(self) -> str:
        return f"group of order {self.order}"
