"""Planar diagram codes, chessboard colorings and Goeritz forms.

Conventions
-----------
A crossing X[a,b,c,d] lists its four edge labels counterclockwise, starting
from the incoming under-strand, so the under-strand runs a -> c.  The slots
0..3 of a crossing are the positions of a, b, c, d.  Corner i of a crossing
is the region lying between slots i and i+1.

Goeritz form.  Fix a coloring and call one color "black" (the spanning
surface) and the other "white".  Each crossing has black corners {0,2} or
{1,3}; we set eta(c) = -1 in the first case and +1 in the second.  For
white regions R_i != R_j,

    G_ij = -sum of eta(c) over crossings touching both R_i and R_j,

with diagonal entries chosen so rows sum to zero; deleting one white region
leaves the Goeritz matrix.

Signature correction.  The oriented smoothing of a positive crossing joins
corners 1 and 3, that of a negative crossing joins 0 and 2.  A crossing is of
type II when the oriented smoothing joins its black corners; mu is the sum
of eta over type-II crossings and sigma(L) = sig(G) - mu.  With these signs
the positive Hopf link has sigma = -1 and the right-handed trefoil -2.
"""

import json
import re
from dataclasses import dataclass, field

from .linalg import IntMatrix, determinant, inertia


class PDError(ValueError):
    """Malformed, inconsistent, non-planar or split planar diagram code."""


@dataclass(frozen=True)
class PDCode:
    crossings: tuple
    orientation: tuple = ()       # per-component reversal flags

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(x) for x in c)
                                                    for c in self.crossings))
        _validate(self.crossings)
        k = len(_components(self.crossings))
        flags = tuple(bool(f) for f in self.orientation) or (False,) * k
        if len(flags) != k:
            raise PDError("%d orientation flags for %d components" % (len(flags), k))
        object.__setattr__(self, "orientation", flags)

    @property
    def components(self):
        return len(self.orientation)

    def with_orientation(self, flags):
        return PDCode(self.crossings, tuple(flags))

    def quasi_orientations(self):
        """The 2^(k-1) orientations with the first component unreversed."""
        k = self.components
        out = []
        for bits in range(2 ** (k - 1)):
            out.append((False,) + tuple(bool(bits >> i & 1) for i in range(k - 1)))
        return out

    def to_json(self):
        return [list(c) for c in self.crossings]

    def __str__(self):
        return "PD[" + ", ".join("X[%s]" % ",".join(map(str, c)) for c in self.crossings) + "]"


_X = re.compile(r"X\[\s*([^\]]*)\]")


def parse_pd(text, orientation=()):
    """Read ``PD[X[1,4,2,5], ...]`` text, a JSON list of 4-tuples, or a list."""
    if isinstance(text, PDCode):
        return text
    if isinstance(text, (list, tuple)):
        rows = text
    else:
        s = text.strip()
        if not s:
            raise PDError("empty PD code")
        if s.startswith("["):
            try:
                rows = json.loads(s)
            except json.JSONDecodeError as e:
                raise PDError("bad JSON PD code: %s" % e) from None
        elif s.startswith("PD["):
            body = s[3:s.rindex("]")] if s.endswith("]") else None
            if body is None:
                raise PDError("unterminated PD[...] code")
            rows = []
            for m in _X.finditer(body):
                try:
                    rows.append([int(x) for x in m.group(1).split(",")])
                except ValueError:
                    raise PDError("non-integer label in X[%s]" % m.group(1)) from None
            rest = _X.sub("", body).replace(",", "").strip()
            if rest:
                raise PDError("unexpected text in PD code: %r" % rest)
        else:
            raise PDError("unrecognised PD code format")
    try:
        crossings = [tuple(int(x) for x in c) for c in rows]
    except (TypeError, ValueError):
        raise PDError("crossings must be sequences of integers") from None
    return PDCode(tuple(crossings), tuple(orientation))


# --- combinatorics --------------------------------------------------------

def _validate(crossings):
    if not crossings:
        raise PDError("diagram has no crossings")
    count = {}
    for c in crossings:
        if len(c) != 4:
            raise PDError("crossing %r does not have four labels" % (c,))
        for x in c:
            count[x] = count.get(x, 0) + 1
    bad = sorted(x for x, n in count.items() if n != 2)
    if bad:
        raise PDError("labels must occur exactly twice: %r" % bad[:5])
    F = len(_faces(crossings))
    V = len(crossings)
    if V - 2 * V + F != 2:
        raise PDError("Euler check failed (V=%d, E=%d, F=%d): split or non-planar"
                      % (V, 2 * V, F))


def _positions(crossings):
    pos = {}
    for ci, c in enumerate(crossings):
        for s, x in enumerate(c):
            pos.setdefault(x, []).append((ci, s))
    return pos


def _partner_map(crossings):
    pos = _positions(crossings)
    partner = {}
    for a, b in pos.values():
        partner[a] = b
        partner[b] = a
    return partner


def _faces(crossings):
    """Faces as lists of corners (crossing, i)."""
    partner = _partner_map(crossings)
    seen = set()
    faces = []
    for ci in range(len(crossings)):
        for i in range(4):
            if (ci, i) in seen:
                continue
            face = []
            cur = (ci, i)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                c, j = cur
                cur = partner[(c, (j + 1) % 4)]
            faces.append(face)
    return faces


def _components(crossings):
    """Each component as a list of (crossing, entry slot) in travel order."""
    partner = _partner_map(crossings)
    used = set()
    comps = []
    # start on an under-strand whenever possible, its direction is known
    starts = [(ci, 0) for ci in range(len(crossings))] + \
        [(ci, s) for ci in range(len(crossings)) for s in (1, 3)]
    for start in starts:
        if start in used or (start[0], (start[1] + 2) % 4) in used:
            continue
        comp = []
        cur = start
        while cur not in used:
            c, s = cur
            if (c, (s + 2) % 4) in used:
                raise PDError("inconsistent orientation at crossing %d" % c)
            if s == 2:
                raise PDError("under-strand of crossing %d traversed backwards" % c)
            used.add(cur)
            comp.append(cur)
            cur = partner[(c, (s + 2) % 4)]
        if cur != start:
            raise PDError("component does not close up")
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class _Crossing:
    under: int          # component index
    over: int
    over_entry: int     # 1 or 3 for the unreversed over strand


def _crossing_data(code):
    comps = _components(code.crossings)
    info = {}
    for k, comp in enumerate(comps):
        for c, s in comp:
            d = info.setdefault(c, {})
            if s in (0, 2):
                d["under"] = k
            else:
                d["over"] = k
                d["over_entry"] = s
    return [_Crossing(info[c]["under"], info[c]["over"], info[c]["over_entry"])
            for c in range(len(code.crossings))]


def crossing_signs(code):
    flags = code.orientation
    out = []
    for x in _crossing_data(code):
        s = 1 if x.over_entry == 3 else -1
        if flags[x.under] != flags[x.over]:
            s = -s
        out.append(s)
    return out


def component_of_crossings(code):
    return [(x.under, x.over) for x in _crossing_data(code)]


def linking_matrix(code):
    k = code.components
    twice = [[0] * k for _ in range(k)]
    for (u, o), s in zip(component_of_crossings(code), crossing_signs(code)):
        if u != o:
            twice[u][o] += s
            twice[o][u] += s
    return [[x // 2 for x in row] for row in twice]


def writhe(code):
    return sum(crossing_signs(code))


def mirror(code):
    """Switch every crossing; the new under-strand is the old over-strand."""
    rot = []
    for c, x in zip(code.crossings, _crossing_data(code)):
        a, b, cc, d = c
        rot.append((d, a, b, cc) if x.over_entry == 3 else (b, cc, d, a))
    # components may be discovered in another order; carry flags by edge set
    old = _component_edges(code.crossings)
    new = _component_edges(rot)
    flags = tuple(code.orientation[old.index(e)] for e in new)
    return PDCode(tuple(rot), flags)


def _component_edges(crossings):
    return [frozenset(crossings[c][s] for c, s in comp) for comp in _components(crossings)]


def is_alternating(code):
    """Over and under alternate along every component."""
    for comp in _components(code.crossings):
        kinds = [s % 2 for _, s in comp]
        if any(kinds[i] == kinds[i - 1] for i in range(len(kinds))):
            return False
    return True


# --- coloring and Goeritz -------------------------------------------------

def checkerboard(code):
    """(faces, color) with color[f] in {0, 1}; face 0's corner (0,0) is color 0."""
    faces = _faces(code.crossings)
    where = {corner: f for f, face in enumerate(faces) for corner in face}
    adj = {f: set() for f in range(len(faces))}
    for c in range(len(code.crossings)):
        for i in range(4):
            f, g = where[(c, i)], where[(c, (i + 1) % 4)]
            adj[f].add(g)
            adj[g].add(f)
    color = {where[(0, 0)]: 0}
    stack = [where[(0, 0)]]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise PDError("diagram is not checkerboard colorable")
    return faces, [color[f] for f in range(len(faces))], where


def _goeritz(code, white):
    """Goeritz matrix on regions of color ``white`` and the correction mu."""
    faces, color, where = checkerboard(code)
    n = len(code.crossings)
    whites = [f for f in range(len(faces)) if color[f] == white]
    index = {f: i for i, f in enumerate(whites)}
    full = [[0] * len(whites) for _ in whites]
    signs = crossing_signs(code)
    mu = 0
    for c in range(n):
        black_even = color[where[(c, 0)]] != white
        eta = -1 if black_even else 1
        w1, w2 = ((where[(c, 1)], where[(c, 3)]) if black_even
                  else (where[(c, 0)], where[(c, 2)]))
        if w1 != w2:
            i, j = index[w1], index[w2]
            full[i][j] -= eta
            full[j][i] -= eta
        joined_odd = signs[c] > 0
        # type II: oriented smoothing joins the black corners
        if joined_odd != black_even:
            mu += eta
    for i in range(len(whites)):
        full[i][i] = -sum(full[i][j] for j in range(len(whites)) if j != i)
    drop = index[_deleted_region(code, where, color, white)]
    keep = [i for i in range(len(whites)) if i != drop]
    G = IntMatrix([[full[i][j] for j in keep] for i in keep], len(keep))
    return G, mu


def _deleted_region(code, where, color, white):
    """Region of the given color next to the smallest edge label."""
    pos = _positions(code.crossings)
    c, s = pos[min(pos)][0]
    for corner in ((c, (s - 1) % 4), (c, s)):
        if color[where[corner]] == white:
            return where[corner]
    raise PDError("no region of color %d beside edge %d" % (white, min(pos)))


@dataclass(frozen=True)
class GoeritzData:
    white_gram: IntMatrix
    black_gram: IntMatrix
    gl_correction: int
    signature: int = None
    determinant: int = None
    nullity_zero: bool = None
    black_correction: int = field(default=None, compare=False)


def goeritz_from_pd(code):
    """Both Goeritz matrices; white_gram is indexed by color-0 regions."""
    code = parse_pd(code)
    G0, mu0 = _goeritz(code, 0)
    G1, mu1 = _goeritz(code, 1)
    return GoeritzData(G0, G1, mu0, black_correction=mu1)


def signature_gl(code, orientation=None):
    code = parse_pd(code)
    if orientation is not None:
        code = code.with_orientation(orientation)
    G, mu = _goeritz(code, 0)
    return _sig(G) - mu


def signature_gl_both(code, orientation=None):
    """Signature from each coloring; the two must agree."""
    code = parse_pd(code)
    if orientation is not None:
        code = code.with_orientation(orientation)
    return tuple(_sig(G) - mu for G, mu in (_goeritz(code, 0), _goeritz(code, 1)))


def _sig(G):
    p, m, _ = inertia(G)
    return p - m


def nullity(code):
    G, _ = _goeritz(parse_pd(code), 0)
    return inertia(G)[2]


def determinant_and_nullity(data):
    """(|det G|, det != 0) from GoeritzData."""
    d = abs(determinant(data.white_gram))
    return d, d != 0


def analyse(code, orientation=None):
    """GoeritzData with signature, determinant and nullity flag filled in."""
    code = parse_pd(code)
    if orientation is not None:
        code = code.with_orientation(orientation)
    g = goeritz_from_pd(code)
    d, nz = determinant_and_nullity(g)
    return GoeritzData(g.white_gram, g.black_gram, g.gl_correction,
                       _sig(g.white_gram) - g.gl_correction, d, nz,
                       black_correction=g.black_correction)


def signatures(code):
    """Signature for each quasi-orientation."""
    code = parse_pd(code)
    return [signature_gl(code, o) for o in code.quasi_orientations()]
