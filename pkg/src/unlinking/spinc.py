"""Spin^c torsors of rational homology spheres and the matching tests.

Spin^c(Y) is identified with H = H^2(Y) by choosing a spin structure as the
origin, so conjugation becomes h -> -h and the spin structures are the
elements of order dividing two.  A filling with form Q induces an affine map
from Char(Q)/2QZ^n into Spin^c(Y)/T; this module searches for such maps and
reports the ones compatible with the known invariants of Y.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import isqrt

from .cosets import coset_system, general_coset_system, m_function
from .groups import CapacityError, FiniteAbelianGroup  # noqa: F401
from .linalg import as_matrix, definiteness, mod2_reduce, signature


MAX_AUT_SEARCH = 4096


class OrderMismatch(ValueError):
    """|H| is not |det Q| times a square."""


@dataclass(frozen=True)
class SpincTorsor:
    group: FiniteAbelianGroup
    values: dict                 # element -> Fraction, possibly partial
    spin_elements: frozenset
    value_kind: str = "d"        # "d" or "rho"

    def __post_init__(self):
        if self.value_kind not in ("d", "rho"):
            raise ValueError("value_kind must be 'd' or 'rho'")
        G = self.group
        for s in self.spin_elements:
            if G.mul(2, s) != G.zero:
                raise ValueError("spin element %r is not fixed by conjugation" % (s,))
        if self.value_kind == "d":
            for h, v in self.values.items():
                c = G.neg(h)
                if c in self.values and self.values[c] != v:
                    raise ValueError("d-values are not conjugation symmetric at %r" % (h,))

    @classmethod
    def from_table(cls, table):
        """Torsor carrying the correction terms of a DInvariantTable."""
        return cls(table.group, dict(table.values), frozenset(table.spin_elements), "d")

    @classmethod
    def from_values(cls, invariant_factors, values, kind="d"):
        G = FiniteAbelianGroup(invariant_factors)
        vals = {G.reduce(_as_elem(k)): Fraction(v) for k, v in dict(values).items()}
        return cls(G, vals, frozenset(G.two_torsion()), kind)

    @classmethod
    def from_signatures(cls, invariant_factors, signatures):
        """Spin-only torsors from link signatures, via rho = -sigma/4 mod 2.

        The bijection between quasi-orientations and spin structures is not
        determined by the signatures alone, so every assignment is returned.
        """
        G = FiniteAbelianGroup(invariant_factors)
        spins = G.two_torsion()
        sigmas = list(signatures)
        if len(sigmas) != len(spins):
            raise ValueError("%d signatures for %d spin structures" % (len(sigmas), len(spins)))
        seen = set()
        out = []
        for perm in permutations(sigmas):
            vals = {s: mod2_reduce(Fraction(-sig, 4)) for s, sig in zip(spins, perm)}
            key = tuple(sorted(vals.items()))
            if key not in seen:
                seen.add(key)
                out.append(cls(G, vals, frozenset(spins), "rho"))
        return out

    def mirror(self):
        """The torsor of -Y: all values negated."""
        if self.value_kind == "d":
            vals = {h: -v for h, v in self.values.items()}
        else:
            vals = {h: mod2_reduce(-v) for h, v in self.values.items()}
        return SpincTorsor(self.group, vals, self.spin_elements, self.value_kind)

    def rho_values(self):
        return {h: mod2_reduce(v) for h, v in self.values.items()}

    def rho_spectrum(self):
        return frozenset(self.rho_values().values())


def _as_elem(k):
    return tuple(k) if isinstance(k, (tuple, list)) else (int(k),)


@dataclass(frozen=True)
class AffineMono:
    """x -> basepoint_image + sum x_i * generator_images[i] (mod T), on the
    source labels of a coset system."""

    subgroup_T: frozenset
    generator_images: tuple
    basepoint_image: tuple
    source: FiniteAbelianGroup = field(compare=False)
    target: FiniteAbelianGroup = field(compare=False)

    def image(self, x):
        """The coset of Spin^c(Y) assigned to source label x, as a sorted tuple."""
        H = self.target
        h = self.basepoint_image
        for a, g in zip(x, self.generator_images):
            h = H.add(h, H.mul(a, g))
        return tuple(sorted(H.add(h, s) for s in self.subgroup_T))

    def conjugate(self):
        H = self.target
        return AffineMono(self.subgroup_T, tuple(H.neg(g) for g in self.generator_images),
                          self.basepoint_image, self.source, self.target)

    def key(self):
        return (_coset_key(self.target, self.basepoint_image, self.subgroup_T),
                tuple(_coset_key(self.target, g, self.subgroup_T)
                      for g in self.generator_images),
                tuple(sorted(self.subgroup_T)))

    def is_injective(self):
        return len({self.image(x) for x in self.source.elements()}) == self.source.order

    def is_equivariant(self):
        H = self.target
        return all(self.image(self.source.neg(x)) ==
                   tuple(sorted(H.neg(h) for h in self.image(x)))
                   for x in self.source.elements())


def _coset_key(H, h, T):
    return min(H.add(h, s) for s in T)


def subgroup_order(delta, order):
    """t with order == delta * t^2, else OrderMismatch."""
    if delta <= 0 or order % delta:
        raise OrderMismatch("|H| = %d is not a multiple of |det Q| = %d" % (order, delta))
    q = order // delta
    t = isqrt(q)
    if t * t != q:
        raise OrderMismatch("|H|/|det Q| = %d is not a square" % q)
    return t


def _source_values(system, kind):
    if kind == "d":
        return dict(m_function(system).values)
    sigma = signature(system.Q)
    return {g: (system.square(reps[0]) - sigma) / 4
            for g, reps in system.representatives.items()}


def _compatible(src, known, kind, inequality):
    for v in known:
        if (src - v) % 2:
            return False
        if inequality and src > v:
            return False
    return True


def affine_monomorphisms(system, Y, t=None, level="rho", up_to="symmetry"):
    """All equivariant affine monomorphisms compatible with Y's known values.

    ``level`` is "rho" (mod-2 congruence of rho-values), "congruence" (mod-2
    congruence of m against d) or "d" (congruence plus the inequality).
    ``up_to`` selects the reported classes: None gives every map,
    "conjugation" identifies phi with conj o phi, and "symmetry" also
    identifies phi with phi o alpha for value-preserving affine
    automorphisms alpha of the source.
    """
    S = system.group
    H = Y.group
    delta = S.order
    if t is None:
        t = subgroup_order(delta, H.order)
    elif H.order != delta * t * t:
        raise OrderMismatch("|H| = %d but |det Q| t^2 = %d" % (H.order, delta * t * t))
    kind = "rho" if level == "rho" else "d"
    if kind == "d" and Y.value_kind != "d":
        raise ValueError("d-level matching needs d-values on Y")
    src = _source_values(system, kind)
    tgt = Y.rho_values() if kind == "rho" else dict(Y.values)
    inequality = level == "d"
    gens = S.generators()
    orders = S.invariant_factors

    found = {}
    for T in H.subgroups_of_order(t):
        cosets = {}
        for h in H.elements():
            cosets.setdefault(_coset_key(H, h, T), []).append(h)
        known = {c: [tgt[h] for h in hs if h in tgt] for c, hs in cosets.items()}

        def ok(h, x):
            return _compatible(src[x], known[_coset_key(H, h, T)], kind, inequality)

        bases = [c for c in cosets if _coset_key(H, H.mul(2, c), T) == _coset_key(H, H.zero, T)]
        for b in bases:
            if t % 2 and not any(H.mul(2, h) == H.zero for h in cosets[b]):
                raise AssertionError("fixed class without a spin structure for odd t")
            if not ok(b, S.zero):
                continue
            # span[x] = image of source element x, grown one generator at a time
            _extend(H, T, cosets, gens, orders, 0, {S.zero: b}, [], b, ok, S, found)
    monos = [AffineMono(T, tuple(g), b, S, H) for (T, g, b) in found.values()]
    for m in monos:
        if not m.is_injective() or not m.is_equivariant():
            raise AssertionError("search produced an invalid map")
    if up_to == "conjugation":
        monos = _orbit_representatives(monos, [])
    elif up_to == "symmetry":
        monos = _orbit_representatives(monos, source_symmetries(system, src))
    elif up_to is not None:
        raise ValueError("up_to must be None, 'conjugation' or 'symmetry'")
    return sorted(monos, key=lambda m: m.key())


def _group_automorphisms(S):
    """Images of the standard generators under each automorphism of S."""
    if S.order > MAX_AUT_SEARCH:
        raise CapacityError("automorphism search limited to groups of order <= %d"
                            % MAX_AUT_SEARCH)
    elems = S.elements()
    gens = S.generators()
    out = []

    def rec(i, imgs):
        if i == len(gens):
            span = S.span(imgs)
            if len(span) == S.order:
                out.append(tuple(imgs))
            return
        d = S.invariant_factors[i]
        for x in elems:
            if S.mul(d, x) == S.zero:
                rec(i + 1, imgs + [x])

    rec(0, [])
    return out


def source_symmetries(system, values):
    """Affine automorphisms x -> f + A x of the source labels (f fixed, A a
    group automorphism) that preserve ``values``."""
    S = system.group
    out = []
    for imgs in _group_automorphisms(S):
        def lin(x):
            y = S.zero
            for a, g in zip(x, imgs):
                y = S.add(y, S.mul(a, g))
            return y
        for f in system.fixed_labels:
            if all(values[S.add(f, lin(x))] == values[x] for x in S.elements()):
                out.append((f, imgs))
    return out


def _compose(phi, sym):
    # phi o (x -> f + A x)
    f, imgs = sym
    H = phi.target
    def lin(x):
        h = H.zero
        for a, g in zip(x, phi.generator_images):
            h = H.add(h, H.mul(a, g))
        return h
    return AffineMono(phi.subgroup_T, tuple(lin(g) for g in imgs),
                      H.add(phi.basepoint_image, lin(f)), phi.source, phi.target)


def _orbit_representatives(monos, syms):
    kept = {}
    for m in monos:
        orbit = [m, m.conjugate()]
        orbit += [_compose(x, s) for x in orbit[:2] for s in syms]
        k = min(x.key() for x in orbit)
        kept.setdefault(k, m)
    return list(kept.values())


def _extend(H, T, cosets, gens, orders, i, images, chosen, b, ok, S, found):
    if i == len(gens):
        if len({_coset_key(H, h, T) for h in images.values()}) == S.order:
            key = (tuple(sorted(T)), tuple(_coset_key(H, g, T) for g in chosen),
                   _coset_key(H, b, T))
            found[key] = (T, tuple(chosen), b)
        return
    d = orders[i]
    tkey = _coset_key(H, H.zero, T)
    for c in cosets:
        # generator image must have order dividing d modulo T
        if _coset_key(H, H.mul(d, c), T) != tkey:
            continue
        new = dict(images)
        good = True
        for x, hx in images.items():
            for a in range(1, d):
                y = S.add(x, S.mul(a, gens[i]))
                hy = H.add(hx, H.mul(a, c))
                if not ok(hy, y):
                    good = False
                    break
                new[y] = hy
            if not good:
                break
        if not good:
            continue
        if len({_coset_key(H, h, T) for h in new.values()}) != len(new):
            continue
        _extend(H, T, cosets, gens, orders, i + 1, new, chosen + [c], b, ok, S, found)


@dataclass
class ObstructionResult:
    obstructed: bool
    level: str
    witness: object = None
    maps: list = field(default_factory=list)

    def __bool__(self):
        return self.obstructed


@dataclass(frozen=True)
class RhoWitness:
    coset: tuple
    value: Fraction
    absent: tuple        # all source labels whose value misses Y's spectrum


@dataclass(frozen=True)
class DWitness:
    phi: AffineMono
    coset: tuple
    m_value: Fraction
    d_value: Fraction


def _system_for(Q):
    Q = as_matrix(Q)
    if definiteness(Q) == "negative":
        return coset_system(Q)
    return general_coset_system(Q)


def rho_obstruction(Q, Y, t=None, prefer=None):
    """Obstruct Y from bounding a manifold with intersection form Q using
    rho-invariants (linking form) alone.

    ``prefer`` is an optional characteristic vector; if its coset has a
    value outside Y's spectrum it becomes the reported witness.
    """
    system = _system_for(Q)
    try:
        maps = affine_monomorphisms(system, Y, t, level="rho")
    except OrderMismatch as e:
        return ObstructionResult(True, "order", str(e))
    if maps:
        return ObstructionResult(False, "rho", None, maps)
    spectrum = Y.rho_spectrum()
    src = _source_values(system, "rho")
    absent = tuple(g for g in system.labels
                   if not any((src[g] - v) % 2 == 0 for v in spectrum))
    if absent:
        w = absent[0]
        if prefer is not None and system.label_of(prefer) in absent:
            w = system.label_of(prefer)
        return ObstructionResult(True, "rho", RhoWitness(w, mod2_reduce(src[w]), absent))
    return ObstructionResult(True, "rho", "no equivariant affine monomorphism matches")


def d_obstruction(Q, Y, t=None):
    """Obstruct Y from bounding negative-definite Q using correction terms.

    If Y only carries rho-values the inequality cannot be tested and the
    result falls back to the rho-level test.
    """
    Q = as_matrix(Q)
    if definiteness(Q) != "negative":
        raise ValueError("d_obstruction needs a negative-definite form")
    if Y.value_kind != "d":
        res = rho_obstruction(Q, Y, t)
        res.level = "rho-fallback"
        return res
    system = coset_system(Q)
    try:
        cong = affine_monomorphisms(system, Y, t, level="congruence")
    except OrderMismatch as e:
        return ObstructionResult(True, "order", str(e))
    good = affine_monomorphisms(system, Y, t, level="d")
    if good:
        return ObstructionResult(False, "d", None, good)
    if not cong:
        return ObstructionResult(True, "congruence", "no congruence-compatible map", [])
    m = m_function(system).values
    phi = cong[0]
    for x in system.labels:
        for h in phi.image(x):
            if h in Y.values and m[x] > Y.values[h]:
                return ObstructionResult(True, "d", DWitness(phi, x, m[x], Y.values[h]), cong)
    raise AssertionError("congruent map rejected without a violated inequality")


def spin_rho_check(Q, Y):
    """Quick test on fixed cosets only.

    When t is odd every fixed class of Spin^c(Y)/T contains a spin structure,
    so each fixed coset of Q must share its rho-value with some spin element.
    For even t nothing is concluded here.
    """
    system = _system_for(Q)
    try:
        t = subgroup_order(system.group.order, Y.group.order)
    except OrderMismatch as e:
        return ObstructionResult(True, "order", str(e))
    if t % 2 == 0:
        return ObstructionResult(False, "spin")
    src = _source_values(system, "rho")
    spins = {mod2_reduce(Y.values[s]) for s in Y.spin_elements if s in Y.values}
    if not spins:
        return ObstructionResult(False, "spin")
    for f in system.fixed_labels:
        if not any((src[f] - v) % 2 == 0 for v in spins):
            return ObstructionResult(True, "spin", RhoWitness(f, mod2_reduce(src[f]), (f,)))
    return ObstructionResult(False, "spin")
