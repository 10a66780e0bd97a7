"""Lower bounds for the unlinking number u and the 4-ball crossing number c*.

Elementary bounds come from signatures, the determinant and sublinks.  The
finer test takes a double-point budget (p, n), and in the equality case asks
whether the double branched cover can bound the negative-definite manifold
that such disks would produce.  It checks lattice embeddings of the Goeritz
form and rank-3 forms matched against the linking form or correction terms.
"""

from dataclasses import dataclass, field, replace
from itertools import combinations, product
from math import isqrt

from .cosets import d_invariants_alternating
from .groups import CapacityError, FiniteAbelianGroup
from .lattice import (Lattice, is_primitive_sublattice, norm_two_orthogonal_sets,
                      orthogonal_complement, orthogonal_embeddings)
from .linalg import IntMatrix, as_matrix, definiteness
from .spinc import SpincTorsor, d_obstruction, rho_obstruction

# embedding searches beyond this ambient rank are refused
MAX_EMBED_AMBIENT = 14


class InapplicableError(ValueError):
    """A record lacks the data a rule needs."""


# --- records ---------------------------------------------------------------

@dataclass(frozen=True)
class ComponentData:
    knot: str
    u: int
    cstar: int


@dataclass(frozen=True)
class Goeritz:
    white_gram: IntMatrix
    black_gram: IntMatrix
    gl_correction: int = 0

    def mirror(self):
        neg = lambda g: IntMatrix([[-x for x in r] for r in g.rows], g.ncols)
        return Goeritz(neg(self.black_gram), neg(self.white_gram), -self.gl_correction)

    def definite(self, kind):
        for g in (self.white_gram, self.black_gram):
            if g.nrows and definiteness(g) == kind:
                return g
        return None


@dataclass(frozen=True)
class LinkRecord:
    name: str
    k: int
    signatures: tuple
    nullity: int
    determinant: int
    homology: FiniteAbelianGroup
    goeritz: Goeritz = None
    pd: object = None
    alternating: bool = False
    linking_matrix: tuple = None
    components: tuple = ()
    sublinks: tuple = ()          # ({"components": [i, j], "name": ...}, ...)
    known_upper_bound: int = None
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.signatures) != 2 ** (self.k - 1):
            raise ValueError("%s: expected %d signatures, got %d"
                             % (self.name, 2 ** (self.k - 1), len(self.signatures)))
        if self.determinant and self.homology.order != self.determinant:
            raise ValueError("%s: |H| = %d but det = %d"
                             % (self.name, self.homology.order, self.determinant))
        if (self.nullity > 0) != (self.determinant == 0):
            raise ValueError("%s: nullity %d inconsistent with det %d"
                             % (self.name, self.nullity, self.determinant))

    def mirror(self):
        lk = None if self.linking_matrix is None else \
            tuple(tuple(-x for x in r) for r in self.linking_matrix)
        return replace(self, name=_mirror_name(self.name),
                       signatures=tuple(-s for s in self.signatures),
                       goeritz=self.goeritz.mirror() if self.goeritz else None,
                       pd=None, linking_matrix=lk)


def _mirror_name(name):
    return name[1:] if name.startswith("-") else "-" + name


@dataclass(frozen=True)
class CrossingBudget:
    p: int
    n: int

    def __post_init__(self):
        if self.p < 0 or self.n < 0:
            raise ValueError("double point counts must be nonnegative")

    @property
    def total(self):
        return self.p + self.n


@dataclass(frozen=True)
class Provenance:
    rule: str
    inputs: dict
    witness: object = None


@dataclass
class Verdict:
    lower_bound_cstar: int
    lower_bound_u: int
    matched_upper: int = None
    provenance: list = field(default_factory=list)

    def rules(self):
        return [p.rule for p in self.provenance]


@dataclass
class BudgetVerdict:
    """Outcome of testing one double-point budget."""
    status: str                    # "obstructed", "not obstructed", "inconclusive"
    budget: CrossingBudget
    provenance: list = field(default_factory=list)

    @property
    def obstructed(self):
        return self.status == "obstructed"


# --- elementary bounds -----------------------------------------------------

def _ceil_half(x):
    return -((-x) // 2)


def bound_from_signature(sigma, eta, k):
    """(p_min, n_min) for immersed disks bounded by an oriented link."""
    p_min = max(0, _ceil_half(-sigma - eta + k - 1))
    n_min = max(0, _ceil_half(sigma - eta + k - 1))
    return p_min, n_min


def _is_square(x):
    return x >= 0 and isqrt(x) ** 2 == x


def lemma_det_bound(k, eta, det):
    """c* >= k-1-eta, and c* >= k unless det = 2^(k-1) c^2."""
    b = max(0, k - 1 - eta)
    scale = 2 ** (k - 1)
    if det % scale == 0 and _is_square(det // scale):
        return b, "det = 2^%d * %d^2" % (k - 1, isqrt(det // scale))
    return max(b, k), "det %d is not 2^%d times a square" % (det, k - 1)


@dataclass(frozen=True)
class SublinkLeaf:
    label: str
    u: int
    cstar: int = None


@dataclass(frozen=True)
class SublinkSplit:
    left: object
    right: object
    lk: int


def lemma_sublinks_bound(tree):
    """Evaluate u >= u(A) + u(B) + |lk(A, B)| recursively; returns (u, c*).

    The c* entry is None when some leaf lacks a c* value.
    """
    if isinstance(tree, SublinkLeaf):
        if tree.u is None:
            raise InapplicableError("leaf %s has no known bound" % tree.label)
        return tree.u, tree.cstar
    if not isinstance(tree, SublinkSplit):
        raise TypeError("not a sublink tree: %r" % (tree,))
    ua, ca = lemma_sublinks_bound(tree.left)
    ub, cb = lemma_sublinks_bound(tree.right)
    c = None if ca is None or cb is None else ca + cb + abs(tree.lk)
    return ua + ub + abs(tree.lk), c


def _tree_str(tree):
    if isinstance(tree, SublinkLeaf):
        return tree.label
    return "(%s|%s:%d)" % (_tree_str(tree.left), _tree_str(tree.right), tree.lk)


def best_sublink_tree(record, known=None, key="u"):
    """The sublink decomposition maximizing the bound.

    Components are leaves with their knot values.  A 2-component sublink
    named in ``record.sublinks`` may also be a leaf, using ``known[name]``
    (a (u, c*) pair).  Linking numbers are maximized over orientations.
    """
    if record.linking_matrix is None or len(record.components) != record.k:
        raise InapplicableError("%s: no linking matrix or component data" % record.name)
    known = known or {}
    lk = record.linking_matrix
    named = {}
    for s in record.sublinks:
        nm = s.get("name")
        if nm in known and known[nm] is not None:
            named[frozenset(s["components"])] = (nm, known[nm])
    idx = 0 if key == "u" else 1
    memo = {}

    def value(t):
        v = lemma_sublinks_bound(t)
        return v[idx] if v[idx] is not None else -1

    def best(S):
        if S in memo:
            return memo[S]
        items = sorted(S)
        if len(items) == 1:
            c = record.components[items[0]]
            t = SublinkLeaf("%s[%d]" % (c.knot, items[0]), c.u, c.cstar)
            memo[S] = t
            return t
        cands = []
        if S in named:
            nm, (u, c) = named[S]
            cands.append(SublinkLeaf(nm, u, c))
        first = items[0]
        rest = items[1:]
        for r in range(0, len(rest)):
            for extra in combinations(rest, r):
                A = frozenset((first,) + extra)
                B = S - A
                cands.append(SublinkSplit(best(A), best(B), _max_abs_lk(lk, A, B)))
        t = max(cands, key=value)
        memo[S] = t
        return t

    return best(frozenset(range(record.k)))


def _max_abs_lk(lk, A, B):
    A, B = sorted(A), sorted(B)
    nodes = A + B
    out = 0
    # reversing every component of A (or of B) negates lk, so fix one sign
    for signs in product((1, -1), repeat=len(nodes) - 1):
        eps = dict(zip(nodes, (1,) + signs))
        out = max(out, abs(sum(eps[i] * eps[j] * lk[i][j] for i in A for j in B)))
    return out


@dataclass(frozen=True)
class KohnVerdict:
    status: str        # "cstar_ge_3", "not_obstructed", "inapplicable"
    cases: tuple       # the cases (i)-(iii) that hold
    reason: str = ""

    @property
    def cstar_ge_3(self):
        return self.status == "cstar_ge_3"


def lemma_kohn_check(record):
    """Three arithmetic conditions, one of which holds when c* < 3 for a
    2-component link with finite cyclic H."""
    if record.k != 2:
        return KohnVerdict("inapplicable", (), "needs 2 components")
    if record.determinant == 0 or not record.homology.is_cyclic:
        return KohnVerdict("inapplicable", (), "needs finite cyclic H")
    det = record.determinant
    cases = []
    if det % 2 == 0 and _is_square(det // 2):
        cases.append("i")
    if det % 4 == 0 and any(abs(s) == 1 for s in record.signatures):
        cases.append("ii")
    if det % 16 == 0:
        cases.append("iii")
    if cases:
        return KohnVerdict("not_obstructed", tuple(cases))
    return KohnVerdict("cstar_ge_3", (), "none of the three cases holds for det %d" % det)


# --- rank-3 candidate forms --------------------------------------------------

def q_a(a):
    return IntMatrix([[-a, 1, 1], [1, -2, 0], [1, 0, -2]])


def r_a(a):
    return IntMatrix([[-a, 1, 0], [1, -2, 0], [0, 0, -2]])


def d_a(a):
    return IntMatrix([[-a, 0, 0], [0, -2, 0], [0, 0, -2]])


Q_DET_TWO = r_a(1)


def qa_candidates(det):
    """Values a > 1 with (4a-4) | det and det/(4a-4) a square."""
    out = []
    for a in range(2, det // 4 + 2):
        q = 4 * a - 4
        if det % q == 0 and _is_square(det // q):
            out.append(a)
    return out


def _family(det, order):
    return [a for a in range(1, det + 1)
            if order(a) <= det and det % order(a) == 0 and _is_square(det // order(a))]


def rank_three_candidates(det):
    """(label, form) for every rank-3 negative-definite form with two
    orthogonal -2 basis vectors whose determinant times a square is det.

    Reducing the off-diagonal entries mod 2 leaves Q_a (entries 1, 1),
    R_a (entries 1, 0) and D_a (entries 0, 0).  R_1 is the determinant -2
    form; D_a never embeds in a cyclic group but is kept for completeness.
    """
    out = [("Q_%d" % a, q_a(a)) for a in qa_candidates(det)]
    out += [("R_%d" % a, r_a(a)) for a in _family(det, lambda a: 2 * (2 * a - 1))]
    out += [("D_%d" % a, d_a(a)) for a in _family(det, lambda a: 4 * a)]
    return out


# --- budget tests ------------------------------------------------------------

def _equality(sigma, eta, k, p):
    num = -sigma - eta + k - 1
    return num % 2 == 0 and p == num // 2


def embedding_test(lam, budget, k):
    """Embed the positive-definite Goeritz lattice into Z^(m+2(p+n)-k+1)
    and look for p+n orthogonal norm-2 complement vectors spanning a
    primitive sublattice.  Returns (obstructed, witness)."""
    lam = as_matrix(lam)
    N = lam.nrows + 2 * budget.total - k + 1
    if N > MAX_EMBED_AMBIENT:
        raise CapacityError("ambient rank %d exceeds %d" % (N, MAX_EMBED_AMBIENT))
    if N < lam.nrows:
        return True, {"ambient": N, "embeddings": 0}
    classes = orthogonal_embeddings(Lattice.from_gram(lam), N)
    rows = []
    for e in classes:
        comp = orthogonal_complement(e)
        if budget.total == 0:
            return False, {"ambient": N, "embeddings": len(classes), "survivor": str(e)}
        sets = norm_two_orthogonal_sets(comp, budget.total)
        prim = [s for s in sets if is_primitive_sublattice(s, comp)]
        rows.append((str(e), len(sets), len(prim)))
        if prim:
            return False, {"ambient": N, "embeddings": len(classes), "survivor": str(e),
                           "vectors": prim[0]}
    return True, {"ambient": N, "embeddings": len(classes), "classes": rows}


def linking_form_test(record, sigma):
    """Rank-3 forms against the cover of ``record``'s chirality.

    Alternating records use correction terms from the negative-definite
    Goeritz matrix; otherwise only the spin rho-values from signatures.
    Returns (obstructed, witness).
    """
    det = record.determinant
    cands = rank_three_candidates(det)
    if not cands:
        return True, {"candidates": []}
    factors = [d for d in record.homology.invariant_factors]
    ys = []
    neg = record.goeritz.definite("negative") if record.goeritz and record.alternating else None
    if neg is not None:
        ys.append(SpincTorsor.from_table(d_invariants_alternating(neg)))
    else:
        ys.extend(SpincTorsor.from_signatures(factors, record.signatures))
    report = []
    for label, Q in cands:
        for Y in ys:
            res = d_obstruction(Q, Y) if Y.value_kind == "d" else rho_obstruction(Q, Y)
            report.append((label, res.level, res.obstructed, _short(res.witness)))
            if not res.obstructed:
                return False, {"candidates": [c for c, _ in cands], "survivor": label}
    return True, {"candidates": [c for c, _ in cands], "results": report}


def _short(w):
    if w is None:
        return None
    if hasattr(w, "m_value"):
        return {"coset": w.coset, "m": str(w.m_value), "d": str(w.d_value)}
    if hasattr(w, "absent"):
        return {"coset": w.coset, "value": str(w.value)}
    return str(w)


BRANCHES = ("embedding", "linking-form")


def _test_chirality(record, o, budget, branches=BRANCHES):
    """Equality-case tests for ``record`` oriented by quasi-orientation ``o`` in
    the equality case.  Returns a list of provenance entries for branches
    that obstruct, and whether any branch ran."""
    sigma = record.signatures[o]
    hits, ran = [], False
    lam = record.goeritz.definite("positive") if record.goeritz and record.alternating else None
    inputs = {"link": record.name, "orientation": o, "sigma": sigma,
              "p": budget.p, "n": budget.n}
    if lam is not None and "embedding" in branches:
        ran = True
        obstructed, w = embedding_test(lam, budget, record.k)
        if obstructed:
            hits.append(Provenance("embedding", inputs, w))
    b2 = 2 * budget.n - sigma
    if (record.k == 2 and record.determinant and record.homology.is_cyclic
            and b2 == 3 and not hits and "linking-form" in branches):
        ran = True
        obstructed, w = linking_form_test(record, sigma)
        if obstructed:
            hits.append(Provenance("linking-form", inputs, w))
    return hits, ran


def run_obstruction(record, budget, orientation=None, branches=BRANCHES):
    """Can ``record`` bound immersed disks with ``budget`` double points?

    The budget is read with respect to quasi-orientation ``orientation``
    (an index into ``record.signatures``); if it is None the result is
    "obstructed" only when every quasi-orientation is obstructed.  Both the
    link and its mirror (which swaps p and n) are tried in the equality
    case.
    """
    if not isinstance(budget, CrossingBudget):
        budget = CrossingBudget(*budget)
    orients = range(len(record.signatures)) if orientation is None else [orientation]
    prov, statuses = [], []
    for o in orients:
        sigma = record.signatures[o]
        p_min, n_min = bound_from_signature(sigma, record.nullity, record.k)
        inputs = {"link": record.name, "orientation": o, "sigma": sigma,
                  "eta": record.nullity, "k": record.k, "p": budget.p, "n": budget.n}
        if budget.p < p_min or budget.n < n_min:
            prov.append(Provenance("signature", inputs, {"p_min": p_min, "n_min": n_min}))
            statuses.append("obstructed")
            continue
        status = "inconclusive"
        ran_any = False
        for rec, bud in ((record, budget), (record.mirror(), CrossingBudget(budget.n, budget.p))):
            if not _equality(rec.signatures[o], rec.nullity, rec.k, bud.p):
                continue
            try:
                hits, ran = _test_chirality(rec, o, bud, branches)
            except CapacityError as e:
                prov.append(Provenance("capacity", inputs, str(e)))
                continue
            ran_any = ran_any or ran
            if hits:
                prov.extend(hits)
                status = "obstructed"
                break
        if status != "obstructed" and ran_any:
            status = "not obstructed"
        if status == "inconclusive" and not ran_any:
            prov.append(Provenance("equality-gate", inputs, "equality case not met"))
        statuses.append(status)
    if all(s == "obstructed" for s in statuses):
        final = "obstructed"
    elif "not obstructed" in statuses:
        final = "not obstructed"
    else:
        final = "inconclusive"
    return BudgetVerdict(final, budget, prov)


def cstar_exceeds(record, b, branches=BRANCHES):
    """Try to show c* > b: for some quasi-orientation every split p+n = b
    is obstructed.  Returns (True, provenance) or (False, reasons)."""
    reasons = []
    for o in range(len(record.signatures)):
        prov = []
        ok = True
        for p in range(b + 1):
            v = run_obstruction(record, CrossingBudget(p, b - p), orientation=o,
                                branches=branches)
            prov.extend(v.provenance)
            if not v.obstructed:
                ok = False
                reasons.append((o, p, b - p, v.status))
                break
        if ok:
            return True, prov
    return False, reasons


# --- whole-record analysis ---------------------------------------------------

def signature_bound(record):
    best, arg = 0, None
    for o, s in enumerate(record.signatures):
        p, n = bound_from_signature(s, record.nullity, record.k)
        if p + n > best:
            best, arg = p + n, (o, s, p, n)
    return best, arg


def analyse_record(record, known=None, search=True):
    """Best lower bounds for c* and u with the rules that produced them.

    ``known`` maps sublink names to (u, c*) lower bounds already found.
    """
    cs, us = [], []

    b, arg = signature_bound(record)
    if arg is not None:
        cs.append((b, Provenance("signature", {"orientation": arg[0], "sigma": arg[1],
                                               "eta": record.nullity, "k": record.k},
                                 {"p_min": arg[2], "n_min": arg[3]})))
    b, note = lemma_det_bound(record.k, record.nullity, record.determinant)
    if b:
        cs.append((b, Provenance("determinant", {"k": record.k, "eta": record.nullity,
                                                 "det": record.determinant}, note)))
    try:
        tu = best_sublink_tree(record, known, "u")
        tc = best_sublink_tree(record, known, "cstar")
    except InapplicableError:
        tu = tc = None
    if tu is not None:
        u_val, _ = lemma_sublinks_bound(tu)
        _, c_val = lemma_sublinks_bound(tc)
        if u_val:
            us.append((u_val, Provenance("sublinks", {"tree": _tree_str(tu)}, None)))
        if c_val:
            cs.append((c_val, Provenance("sublinks", {"tree": _tree_str(tc)}, None)))

    cstar = max([0] + [v for v, _ in cs])
    upper = record.known_upper_bound
    if search and upper is not None:
        while cstar < upper:
            ok, prov = cstar_exceeds(record, cstar)
            if not ok:
                break
            cstar += 1
            cs.append((cstar, Provenance("budget-search", {"exceeds": cstar - 1},
                                         [(p.rule, p.inputs) for p in prov])))
    u = max([cstar] + [v for v, _ in us])
    prov = [p for v, p in cs if v == cstar]
    prov += [p for v, p in us if v == u and u > cstar]
    if not prov:
        prov = [Provenance("trivial", {}, "no rule gives a positive bound")]
    matched = upper if upper is not None and u == upper else None
    return Verdict(cstar, u, matched, prov)


def analyse_table(records, processes=None):
    """Analyse a list of records, feeding sublink results forward.

    Records are processed in waves by component count so that named
    2-component sublinks are settled first; each wave runs in parallel.
    Returns {name: Verdict}.
    """
    from concurrent.futures import ProcessPoolExecutor

    out = {}
    known = {}
    for k in sorted({r.k for r in records}):
        wave = sorted((r for r in records if r.k == k), key=lambda r: r.name)
        if processes == 1 or len(wave) < 2:
            results = [analyse_record(r, dict(known)) for r in wave]
        else:
            with ProcessPoolExecutor(max_workers=processes) as ex:
                results = list(ex.map(analyse_record, wave, [dict(known)] * len(wave)))
        for r, v in zip(wave, results):
            out[r.name] = v
            known[r.name] = (v.lower_bound_u, v.lower_bound_cstar)
    return out
