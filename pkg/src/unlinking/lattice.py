"""Integral lattices and their embeddings into standard lattices Z^N.

The embedding search is a breadth-first orderly generation: basis images are
placed one at a time and each partial embedding is reduced to a canonical
form under signed permutations of the ambient coordinates, so equivalent
partial assignments are explored once.  Full embeddings are finally
identified up to automorphisms of the source lattice as well.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .linalg import (IntMatrix, as_matrix, definiteness, determinant, dot,
                     integer_kernel, rank, smith_normal_form, solve_integer)


class DefinitenessError(ValueError):
    """The lattice does not have the definiteness an operation requires."""


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    definiteness: str

    @classmethod
    def from_gram(cls, gram):
        gram = as_matrix(gram)
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        return cls(gram, definiteness(gram))

    @property
    def rank(self):
        return self.gram.nrows

    @property
    def determinant(self):
        return determinant(self.gram)


@dataclass(frozen=True)
class Embedding:
    """Rows of ``images`` are the images of the lattice basis in Z^N."""

    images: IntMatrix
    ambient_rank: int

    def gram(self):
        return self.images @ self.images.T

    def support(self):
        """Number of ambient coordinates actually used."""
        return sum(1 for j in range(self.ambient_rank) if any(self.images.col(j)))

    def __str__(self):
        return "{" + ", ".join(format_vector(r) for r in self.images.rows) + "}"


@dataclass(frozen=True)
class ComplementData:
    basis: IntMatrix
    gram: IntMatrix

    @classmethod
    def standard(cls, n):
        ident = IntMatrix.identity(n)
        return cls(ident, ident)

    @property
    def rank(self):
        return self.basis.nrows


def format_vector(v):
    terms = []
    for i, x in enumerate(v, 1):
        if not x:
            continue
        coef = {1: "", -1: "-"}.get(x, str(x))
        sign = "" if not terms and x > 0 else ("+" if x > 0 else "")
        terms.append("%s%se%d" % (sign, coef, i))
    return "".join(terms) or "0"


# --- short vectors -------------------------------------------------------

def _ldl(gram):
    """LDL^T of a positive-definite Gram matrix over the rationals."""
    n = gram.nrows
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = Fraction(gram[j, j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            raise DefinitenessError("Gram matrix is not positive-definite")
        for i in range(j + 1, n):
            L[i][j] = (Fraction(gram[i, j]) - sum(L[i][k] * L[j][k] * D[k]
                                        for k in range(j))) / D[j]
    return L, D


def _integers_near(c, t):
    """All integers x with (x + c)^2 <= t, for rational c and t >= 0."""
    s = isqrt(int(t)) + 1
    lo = int((-c - s) // 1)
    hi = int((-c + s) // 1) + 1
    return [x for x in range(lo, hi + 1) if (x + c) ** 2 <= t]


def short_vectors(gram, max_norm, min_norm=1):
    """Coordinate vectors x with min_norm <= x^T gram x <= max_norm.

    Exact Fincke-Pohst enumeration; both x and -x are returned.
    """
    gram = as_matrix(gram)
    n = gram.nrows
    if n == 0:
        return [()] if min_norm <= 0 <= max_norm else []
    L, D = _ldl(gram)
    out = []
    x = [0] * n
    bound = Fraction(max_norm)

    def rec(i, remaining):
        c = sum(L[j][i] * x[j] for j in range(i + 1, n))
        for xi in _integers_near(c, remaining / D[i]):
            x[i] = xi
            used = D[i] * (xi + c) ** 2
            if i == 0:
                norm = bound - remaining + used
                if norm >= min_norm:
                    out.append(tuple(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound)
    return out


def _nondegenerate_part(gram):
    """Unimodular V and k with ``V^T gram V = diag(G', 0)``, G' of size k."""
    snf = smith_normal_form(gram)
    V = snf.V
    k = snf.rank
    Vk = IntMatrix([V.col(j) for j in range(k)], gram.nrows)
    return Vk, Vk @ gram @ Vk.T


# --- isometries ----------------------------------------------------------

def isometries(source, target, limit=None):
    """Integer matrices A with ``A @ target @ A.T == source`` and |det| match.

    Rows of A are coordinate vectors in the target lattice.  Both Gram
    matrices must be positive-definite of equal rank.
    """
    source, target = as_matrix(source), as_matrix(target)
    n = source.nrows
    if target.nrows != n or abs(determinant(source)) != abs(determinant(target)):
        return []
    if n == 0:
        return [IntMatrix([], 0)]
    norms = sorted({source[i, i] for i in range(n)})
    vecs = short_vectors(target, max(norms), min(norms))
    by_norm = {}
    tv = {}
    for v in vecs:
        tv[v] = target @ v
        by_norm.setdefault(dot(v, tv[v]), []).append(v)
    found = []
    chosen = []

    def rec(i):
        if limit is not None and len(found) >= limit:
            return
        if i == n:
            found.append(IntMatrix(chosen, n))
            return
        for v in by_norm.get(source[i, i], ()):
            w = tv[v]
            if all(dot(chosen[j], w) == source[i, j] for j in range(i)):
                chosen.append(v)
                rec(i + 1)
                chosen.pop()

    rec(0)
    # equal |det| and an isometric embedding forces index 1
    return found


def automorphisms(gram):
    return isometries(gram, gram)


def are_isometric(g1, g2):
    g1, g2 = as_matrix(g1), as_matrix(g2)
    if g1.nrows != g2.nrows:
        return False
    if smith_normal_form(g1).invariant_factors != smith_normal_form(g2).invariant_factors:
        return False
    return bool(isometries(g1, g2, limit=1))


# --- embeddings ----------------------------------------------------------

@lru_cache(maxsize=None)
def vectors_of_norm(n, norm):
    """All vectors of Z^n with squared length ``norm``."""
    if n == 0:
        return ((),) if norm == 0 else ()
    out = []
    r = isqrt(norm)
    for x in range(-r, r + 1):
        for tail in vectors_of_norm(n - 1, norm - x * x):
            out.append((x,) + tail)
    return tuple(out)


def _normalize_col(c):
    for x in c:
        if x:
            return c if x > 0 else tuple(-y for y in c)
    return c


def canonical_form(rows):
    """Canonical representative of a row matrix under signed column permutations."""
    cols = sorted((_normalize_col(c) for c in zip(*rows)), reverse=True)
    return tuple(zip(*cols))


def _check_embeddable(lattice, ambient_rank):
    if lattice.definiteness != "positive":
        raise DefinitenessError("orthogonal embeddings need a positive-definite lattice")
    if lattice.rank > ambient_rank:
        raise ValueError("lattice rank exceeds ambient rank")


def _embeddings_up_to_signed_permutations(gram, N):
    m = gram.nrows
    states = {(): None}
    for i in range(m):
        cands = vectors_of_norm(N, gram[i, i])
        nxt = {}
        for rows in states:
            # canonical partial forms put zero columns last; those columns
            # are interchangeable, so only nonincreasing nonnegative tails
            # need to be tried on them
            used = N
            if rows:
                while used > 0 and not any(r[used - 1] for r in rows):
                    used -= 1
            else:
                used = 0
            for v in cands:
                tail = v[used:]
                if any(tail[k] < tail[k + 1] for k in range(len(tail) - 1)) or \
                        (tail and tail[-1] < 0):
                    continue
                if all(dot(v, rows[j]) == gram[i, j] for j in range(i)):
                    nxt[canonical_form(rows + (v,))] = None
        states = nxt
    return list(states)


def embedding_class_key(rows, auts):
    return min(canonical_form(_apply(A, rows)) for A in auts)


def _apply(A, rows):
    # new basis vector i is sum_j A[i][j] * old image j
    return tuple(tuple(sum(a * r[k] for a, r in zip(arow, rows))
                       for k in range(len(rows[0]))) for arow in A.rows)


def _signed_permutation(A):
    return all(sum(1 for x in row if x) == 1 for row in A.rows)


def orthogonal_embeddings(lattice, N, source_symmetry="full"):
    """Embeddings of ``lattice`` into Z^N up to Aut(Z^N) and symmetries of
    the source.

    ``source_symmetry`` is "full" (all of Aut(lattice)), "signed-basis"
    (automorphisms permuting the basis up to sign) or "none".  Returns one
    canonical representative per class, sorted.
    """
    if not isinstance(lattice, Lattice):
        lattice = Lattice.from_gram(lattice)
    _check_embeddable(lattice, N)
    gram = lattice.gram
    if gram.nrows == 0:
        return [Embedding(IntMatrix([], N), N)]
    forms = _embeddings_up_to_signed_permutations(gram, N)
    auts = _source_auts(gram, source_symmetry)
    keys = {embedding_class_key(f, auts) for f in forms}
    return [Embedding(IntMatrix(k, N), N) for k in sorted(keys)]


def _source_auts(gram, source_symmetry):
    if source_symmetry == "none":
        return [IntMatrix.identity(gram.nrows)]
    auts = automorphisms(gram)
    if source_symmetry == "signed-basis":
        return [A for A in auts if _signed_permutation(A)]
    if source_symmetry != "full":
        raise ValueError("unknown source_symmetry %r" % (source_symmetry,))
    return auts


def embedding_class(embedding, lattice_gram=None, source_symmetry="full"):
    """Class key of an arbitrary embedding, comparable with returned classes."""
    rows = embedding.images.rows if isinstance(embedding, Embedding) else \
        tuple(tuple(r) for r in embedding)
    if lattice_gram is None:
        lattice_gram = IntMatrix(rows) @ IntMatrix(rows).T
    return embedding_class_key(rows, _source_auts(as_matrix(lattice_gram), source_symmetry))


# --- complements and square-two vectors ----------------------------------

def orthogonal_complement(embedding):
    basis = integer_kernel(embedding.images)
    return ComplementData(basis, basis @ basis.T)


def lattice_vectors_of_norm(complement, norm):
    """Vectors of a (possibly degenerate) lattice with the given norm, in
    ambient coordinates, with null directions quotiented out."""
    gram = complement.gram
    if gram.nrows == 0:
        return []
    Vk, g = _nondegenerate_part(gram)
    out = []
    for x in short_vectors(g, norm, norm):
        coeffs = tuple(sum(x[i] * Vk[i, j] for i in range(len(x)))
                       for j in range(gram.nrows))
        out.append(tuple(dot(coeffs, complement.basis.col(k))
                         for k in range(complement.basis.ncols)))
    return out


def norm_two_orthogonal_sets(complement, count):
    """All sets (up to sign and order) of ``count`` pairwise-orthogonal
    norm-2 vectors of the complement lattice, as ambient vectors."""
    if count < 1:
        raise ValueError("count must be positive")
    vecs = sorted({_normalize_col(v) for v in lattice_vectors_of_norm(complement, 2)},
                  reverse=True)
    out = []
    chosen = []

    def rec(start):
        if len(chosen) == count:
            out.append(tuple(chosen))
            return
        for i in range(start, len(vecs)):
            v = vecs[i]
            if all(dot(v, w) == 0 for w in chosen):
                chosen.append(v)
                rec(i + 1)
                chosen.pop()

    rec(0)
    return out


def is_primitive_sublattice(vectors, ambient):
    """True iff the span of ``vectors`` is saturated in the ambient lattice.

    ``ambient`` is a ComplementData or an integer N meaning standard Z^N.
    """
    vectors = [tuple(v) for v in vectors]
    if isinstance(ambient, int):
        ambient = ComplementData.standard(ambient)
    coords = []
    for v in vectors:
        c = solve_integer(ambient.basis, v)
        if c is None:
            raise ValueError("vector %r does not lie in the ambient lattice" % (v,))
        coords.append(c)
    M = IntMatrix(coords, ambient.rank)
    if rank(M) < len(vectors):
        raise ValueError("vectors are linearly dependent")
    return all(d == 1 for d in smith_normal_form(M).invariant_factors)
