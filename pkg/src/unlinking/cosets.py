"""Characteristic covectors modulo 2QZ^r and the quadratic data they carry.

For a nonsingular symmetric Q the set Char(Q)/2QZ^r is a torsor over the
group Z^r/QZ^r, with [xi] + x = [xi + 2x].  Labels are group elements
measured from a basepoint coset fixed by xi -> -xi, so the involution acts on
labels as negation.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .groups import CapacityError, FiniteAbelianGroup
from .linalg import (IntMatrix, as_matrix, definiteness, determinant, dot,
                     mod2_reduce, rational_inverse, signature,
                     smith_normal_form)


# characteristic vectors enumerated by coset_system
MAX_BOX = 4_000_000


class NotDefiniteError(ValueError):
    pass


def _solve_mod2(Q, b):
    """Some x in {0,1}^n with Q x = b over F_2 (None if unsolvable)."""
    n = Q.nrows
    rows = [[Q[i, j] % 2 for j in range(n)] + [b[i] % 2] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


@dataclass
class CharCosetSystem:
    Q: IntMatrix
    group: FiniteAbelianGroup
    base: tuple                # basepoint representative (a fixed coset)
    representatives: dict      # label -> list of representative vectors
    Qinv: tuple

    # group structure ----------------------------------------------------
    @property
    def rank(self):
        return self.Q.nrows

    @property
    def labels(self):
        return sorted(self.representatives)

    def involution(self, label):
        return self.group.neg(label)

    @property
    def fixed_labels(self):
        return [g for g in self.labels if self.group.mul(2, g) == self.group.zero]

    def label_of(self, xi):
        return _label(self._snf, self.group, self._nontrivial, self.base, xi)

    def square(self, xi):
        """xi^T Q^{-1} xi."""
        return sum(Fraction(xi[i]) * sum(self.Qinv[i][j] * xi[j]
                                         for j in range(len(xi)))
                   for i in range(len(xi)))

    def representative(self, label):
        return self.representatives[label][0]

    def is_fixed_vector(self, xi):
        """True iff xi = Qx for an integer vector x."""
        return self.group.reduce(_reduce(self._snf, self._nontrivial, xi)) == self.group.zero

    # filled by constructors
    _snf: object = None
    _nontrivial: tuple = ()


def _reduce(snf, nontrivial, x):
    y = snf.U @ tuple(x)
    return tuple(y[i] for i in nontrivial)


def _label(snf, group, nontrivial, base, xi):
    diff = [a - b for a, b in zip(xi, base)]
    if any(d % 2 for d in diff):
        raise ValueError("%r is not characteristic" % (xi,))
    return group.reduce(_reduce(snf, nontrivial, [d // 2 for d in diff]))


def _group_data(Q):
    snf = smith_normal_form(Q)
    if 0 in snf.invariant_factors:
        raise ValueError("form is singular")
    nontrivial = tuple(i for i, d in enumerate(snf.invariant_factors) if d > 1)
    group = FiniteAbelianGroup([snf.invariant_factors[i] for i in nontrivial])
    return snf, nontrivial, group


def box_vectors(Q):
    """Characteristic vectors with Q_ii <= xi_i < -Q_ii."""
    ranges = [range(Q[i, i], -Q[i, i], 2) for i in range(Q.nrows)]
    return [tuple(v) for v in product(*ranges)]


def coset_system(Q):
    """Partition the box of characteristic vectors of a negative-definite Q."""
    Q = as_matrix(Q)
    if not Q.is_symmetric() or definiteness(Q) != "negative":
        raise NotDefiniteError("coset_system requires a symmetric negative-definite form")
    size = 1
    for i in range(Q.nrows):
        size *= -Q[i, i]
    if size > MAX_BOX:
        raise CapacityError("box of %d characteristic vectors exceeds %d" % (size, MAX_BOX))
    snf, nontrivial, group = _group_data(Q)
    box = box_vectors(Q)
    fixed = [xi for xi in box
             if group.reduce(_reduce(snf, nontrivial, xi)) == group.zero]
    if not fixed:
        raise RuntimeError("no fixed coset found in the box")
    base = min(fixed)
    reps = {}
    for xi in box:
        reps.setdefault(_label(snf, group, nontrivial, base, xi), []).append(xi)
    if len(reps) != abs(determinant(Q)):
        raise RuntimeError("box misses cosets: %d of %d" % (len(reps), abs(determinant(Q))))
    return CharCosetSystem(Q, group, base, reps, rational_inverse(Q),
                           _snf=snf, _nontrivial=nontrivial)


def general_coset_system(Q):
    """One representative per coset for any nonsingular symmetric Q."""
    Q = as_matrix(Q)
    if not Q.is_symmetric():
        raise ValueError("form must be symmetric")
    snf, nontrivial, group = _group_data(Q)
    x0 = _solve_mod2(Q, [Q[i, i] for i in range(Q.nrows)])
    base = Q @ tuple(x0)
    Uinv = rational_inverse(snf.U)
    Uinv = IntMatrix([[int(x) for x in row] for row in Uinv])
    reps = {}
    for g in group.elements():
        y = [0] * Q.nrows
        for k, i in enumerate(nontrivial):
            y[i] = g[k]
        x = Uinv @ tuple(y)
        reps[g] = [tuple(b + 2 * a for a, b in zip(x, base))]
    return CharCosetSystem(Q, group, tuple(base), reps, rational_inverse(Q),
                           _snf=snf, _nontrivial=nontrivial)


@dataclass(frozen=True)
class MFunction:
    values: dict          # label -> Fraction


def m_function(system):
    """Maximum of (xi^T Q^{-1} xi + r)/4 over box representatives, per coset."""
    r = system.rank
    return MFunction({g: max((system.square(xi) + r) / 4 for xi in reps)
                      for g, reps in system.representatives.items()})


def rho_invariants(system, sigma=None):
    """(xi^T Q^{-1} xi - sigma(Q))/4 reduced mod 2 into (-1, 1], per coset."""
    if sigma is None:
        sigma = signature(system.Q)
    return {g: mod2_reduce((system.square(reps[0]) - sigma) / 4)
            for g, reps in system.representatives.items()}


@dataclass(frozen=True)
class DInvariantTable:
    group: FiniteAbelianGroup
    values: dict
    spin_elements: frozenset

    def is_conjugation_symmetric(self):
        return all(self.values[self.group.neg(g)] == v for g, v in self.values.items())

    def minimum(self):
        return min(self.values.values())


def d_invariants_alternating(G):
    """Correction terms of the double branched cover from a negative-definite
    Goeritz matrix, assuming the diagram is nonsplit and alternating."""
    system = coset_system(G)
    m = m_function(system)
    table = DInvariantTable(system.group, dict(m.values), frozenset(system.fixed_labels))
    if not table.is_conjugation_symmetric():
        raise AssertionError("correction terms fail conjugation symmetry")
    return table


def cyclic_listing(values, group, start, generator):
    """values[start + i*generator] for i = 0 .. |group|-1."""
    out = []
    x = start
    for _ in range(group.order):
        out.append(values[x])
        x = group.add(x, generator)
    return out


def cyclic_listing_matches(values, group, expected, starts):
    """Generators g and starting points s in ``starts`` whose cyclic listing
    equals ``expected``.  Only meaningful for cyclic groups."""
    hits = []
    for g in group.elements():
        if group.element_order(g) != group.order:
            continue
        for s in starts:
            if cyclic_listing(values, group, s, g) == list(expected):
                hits.append((s, g))
    return hits
