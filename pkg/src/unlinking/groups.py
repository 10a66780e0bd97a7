"""Finite abelian groups given by invariant factors."""

from functools import reduce
from itertools import product
from math import gcd


class CapacityError(RuntimeError):
    """A search would exceed the documented size limits."""


MAX_SUBGROUP_SEARCH = 65536


class FiniteAbelianGroup:
    """Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, all d_i > 1.

    Elements are tuples of residues.
    """

    def __init__(self, invariant_factors=()):
        factors = tuple(int(d) for d in invariant_factors if d != 1)
        for d in factors:
            if d <= 1:
                raise ValueError("invariant factors must be > 1, got %r" % (factors,))
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must divide each other: %r"
                                 % (factors,))
        self.invariant_factors = factors

    def __repr__(self):
        return "FiniteAbelianGroup(%r)" % (self.invariant_factors,)

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and \
            self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    @property
    def order(self):
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def is_cyclic(self):
        return self.rank <= 1

    @property
    def zero(self):
        return (0,) * self.rank

    def elements(self):
        return list(product(*(range(d) for d in self.invariant_factors)))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.invariant_factors))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, k, x):
        return tuple(k * a % d for a, d in zip(x, self.invariant_factors))

    def reduce(self, x):
        return tuple(a % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        o = 1
        for a, d in zip(x, self.invariant_factors):
            e = d // gcd(a, d)
            o = o * e // gcd(o, e)
        return o

    def two_torsion(self):
        return [x for x in self.elements() if self.mul(2, x) == self.zero]

    def span(self, gens):
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def subgroups_of_order(self, t):
        """All subgroups of order t, each as a frozenset of elements."""
        n = self.order
        if t < 1 or n % t:
            return []
        if self.is_cyclic:
            if not self.rank:
                return [frozenset([self.zero])]
            step = n // t
            return [frozenset((k * step,) for k in range(t))]
        if n > MAX_SUBGROUP_SEARCH:
            raise CapacityError("subgroup enumeration limited to groups of order <= %d"
                                % MAX_SUBGROUP_SEARCH)
        # every subgroup of order t is generated by at most rank elements of
        # order dividing t; grow from single generators
        cands = [x for x in self.elements() if t % self.element_order(x) == 0]
        found = set()
        layer = {self.span([x]) for x in cands}
        while layer:
            found.update(s for s in layer if len(s) == t)
            nxt = set()
            for s in layer:
                if len(s) >= t:
                    continue
                for x in cands:
                    if x not in s:
                        s2 = frozenset(self.add(a, b) for a in s
                                       for b in self.span([x]))
                        if len(s2) <= t:
                            nxt.add(s2)
            layer = nxt
        return sorted(found, key=sorted)
