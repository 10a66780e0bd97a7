"""Regenerate src/unlinking/data/links.json.

Development-only: needs spherogram/snappy (for the Thistlethwaite PD codes
and for identifying component knots and 2-component sublinks).  Everything
else is computed by the package itself.  Run with an interpreter that has
snappy installed, e.g.

    /tmp/probe/bin/python scripts/build_dataset.py
"""

import json
import os
import re
import sys
from itertools import combinations

import snappy  # noqa: F401  (enables Link.exterior)
import spherogram

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

from unlinking import diagram  # noqa: E402
from unlinking.linalg import signature as exact_signature  # noqa: E402
from unlinking.linalg import smith_normal_form  # noqa: E402

# unlinking numbers listed in the published table, keyed by Thistlethwaite name
TABLE_U = """
L2a1 1 L4a1 2 L5a1 1 L6a1 2 L6a2 3 L6a3 3 L6a4 2 L6a5 3 L6n1 3 L7a1 2 L7a2 3
L7a3 2 L7a4 2 L7a5 1 L7a6 2 L7a7 3 L7n1 3 L7n2 1 L8a1 2 L8a2 1 L8a3 3 L8a4 1
L8a5 3 L8a6 2 L8a7 3 L8a8 2 L8a9 2 L8a10 3 L8a11 3 L8a12 4 L8a13 4 L8a14 4
L8a15 3 L8a16 3 L8a17 4 L8a18 4 L8a19 2 L8a20 4 L8a21 4 L8n1 3 L8n2 1 L8n3 4
L8n4 4 L8n5 2 L8n6 4 L8n7 4 L8n8 4 L9a1 2 L9a2 3 L9a3 2 L9a4 2 L9a5 3 L9a6 4
L9a7 3 L9a8 2 L9a9 2 L9a10 3 L9a11 3 L9a12 4 L9a13 3 L9a14 3 L9a15 3 L9a16 3
L9a17 3 L9a18 2 L9a19 2 L9a20 2 L9a21 1 L9a22 2 L9a23 4 L9a24 2 L9a25 2
L9a26 2 L9a27 1 L9a28 4 L9a29 3 L9a30 3 L9a31 2 L9a32 4 L9a33 3 L9a34 2
L9a35 2 L9a36 3 L9a37 2 L9a38 1 L9a39 2 L9a40 2 L9a41 2 L9a42 2 L9a43 4
L9a44 4 L9a45 3 L9a46 2 L9a47 3 L9a48 4 L9a49 4 L9a50 3 L9a51 4 L9a52 3
L9a53 2 L9a54 3 L9a55 4 L9n1 3 L9n2 2 L9n3 1 L9n4 4 L9n5 2 L9n6 2 L9n7 3
L9n8 2 L9n9 3 L9n10 2 L9n11 2 L9n12 4 L9n13 1 L9n14 2 L9n15 4 L9n16 4
L9n17 2 L9n18 4 L9n19 4 L9n20 4 L9n21 4 L9n22 4 L9n23 3 L9n24 3 L9n25 2
L9n26 3 L9n27 1 L9n28 3
"""

# unknotting number and 4-ball crossing number of small prime knots (KnotInfo)
KNOTS = {
    "0_1": (0, 0), "3_1": (1, 1), "4_1": (1, 1), "5_1": (2, 2), "5_2": (1, 1),
    "6_1": (1, 0), "6_2": (1, 1), "6_3": (1, 1), "7_1": (3, 3), "7_2": (1, 1),
    "7_3": (2, 2), "7_4": (2, 2), "7_5": (2, 2), "7_6": (1, 1), "7_7": (1, 1),
}

ROLFSEN = re.compile(r"^(\d+_\d+)\(")
ROLFSEN_LINK = re.compile(r"^(\d+\^\d+_\d+)\(")
THISTLE_LINK = re.compile(r"^(L\d+[an]\d+)\(")


def table_u():
    toks = TABLE_U.split()
    return {toks[i]: int(toks[i + 1]) for i in range(0, len(toks), 2)}


def is_unknot(K):
    if len(K.crossings) == 0:
        return True
    G = K.exterior().fundamental_group()
    return G.num_generators() == 1 and G.num_relators() == 0


# (determinant, |signature|, crossing number) of small prime knots
KNOT_INVARIANTS = {
    (3, 2, 3): "3_1", (5, 0, 4): "4_1", (5, 4, 5): "5_1", (7, 2, 5): "5_2",
    (9, 0, 6): "6_1", (11, 2, 6): "6_2", (13, 0, 6): "6_3", (7, 6, 7): "7_1",
    (11, 2, 7): "7_2", (13, 4, 7): "7_3", (15, 2, 7): "7_4", (17, 4, 7): "7_5",
    (19, 2, 7): "7_6", (21, 0, 7): "7_7",
}


def identify_knot(K):
    if is_unknot(K):
        return "0_1"
    for M in K.exterior().identify():
        m = ROLFSEN.match(str(M))
        if m:
            return m.group(1)
    # non-hyperbolic (torus) knots: classify by exact invariants
    code = diagram.parse_pd([tuple(c) for c in K.PD_code()])
    data = diagram.analyse(code)
    J = K.copy()
    J.simplify("global")
    key = (data.determinant, abs(data.signature), len(J.crossings))
    if key not in KNOT_INVARIANTS:
        raise RuntimeError("could not identify component knot %r" % (key,))
    return KNOT_INVARIANTS[key]


# 2-component torus links T(2, 2m) by |lk| = m
TORUS_LINKS = {1: ("L2a1", "2^2_1"), 2: ("L4a1", "4^2_1"), 3: ("L6a3", "6^2_1"),
               4: ("L8a14", "8^2_1")}


def identify_link(S):
    names = [str(M) for M in S.exterior().identify()]
    if not names:
        # non-hyperbolic: recognise T(2, 2m) from a reduced diagram
        J = S.copy()
        J.simplify("global")
        lk = abs(J.linking_matrix()[0][1]) if len(J.link_components) == 2 else 0
        if lk in TORUS_LINKS and len(J.crossings) == 2 * lk and \
                all(is_unknot(J.sublink([i])) for i in range(2)):
            name, rolfsen = TORUS_LINKS[lk]
            return {"name": name, "rolfsen": rolfsen}
        return {}
    out = {}
    for n in names:
        m = THISTLE_LINK.match(n)
        if m:
            out["name"] = m.group(1)
        m = ROLFSEN_LINK.match(n)
        if m:
            out["rolfsen"] = m.group(1)
    return out


CHECKS = {"seifert": 0, "seifert-skipped": 0, "traczyk": 0}


def _circles(pd, pairings):
    """Circles of a smoothing joining slots (p0,p1) and (p2,p3) at each crossing."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for c, (i, j, k, l) in zip(pd, pairings):
        parent[find(c[i])] = find(c[j])
        parent[find(c[k])] = find(c[l])
    return len({find(x) for c in pd for x in c})


def seifert_signature(V):
    V = [[int(x) for x in row] for row in V]
    if not V:
        return 0
    n = len(V)
    return exact_signature([[V[i][j] + V[j][i] for j in range(n)] for i in range(n)])


def build_record(name, u):
    L = spherogram.Link(name)
    pd = [tuple(c) for c in L.PD_code()]
    code = diagram.parse_pd(pd)
    k = code.components
    if k != len(L.link_components):
        raise RuntimeError("%s: component count mismatch" % name)
    data = diagram.analyse(code)
    sigs = diagram.signatures(code)
    snf = smith_normal_form(data.white_gram)
    homology = [d for d in snf.invariant_factors if d != 1]
    comp_of = diagram.component_of_crossings(code)

    # cross-check: the default orientation against the Seifert form of the
    # same diagram (spherogram uses the opposite sign convention), the others
    # against reversing one component at a time,
    # sigma(L with K reversed) = sigma(L) + 2 lk(K, L - K)
    signs = diagram.crossing_signs(code)
    seifert_circles = _circles(pd, [(0, 1, 2, 3) if s > 0 else (0, 3, 1, 2) for s in signs])
    V = L.seifert_matrix()
    theirs_signs = [c.sign for c in L.crossings]
    match = [s for o, s in zip(code.quasi_orientations(), sigs)
             if diagram.crossing_signs(code.with_orientation(o)) == theirs_signs]
    if len(V) == len(pd) - seifert_circles + 1 and match:
        CHECKS["seifert"] += 1
        if -seifert_signature(V) != match[0]:
            raise RuntimeError("%s: signature disagrees with Seifert form" % name)
    else:
        CHECKS["seifert-skipped"] += 1
    if diagram.is_alternating(code):
        # Traczyk: sigma = s_A - n_+ - 1 for reduced alternating diagrams
        s_a = _circles(pd, [(0, 1, 2, 3)] * len(pd))
        CHECKS["traczyk"] += 1
        if s_a - signs.count(1) - 1 != sigs[0]:
            raise RuntimeError("%s: signature disagrees with Traczyk's formula" % name)
    for o, s in zip(code.quasi_orientations(), sigs):
        cur = [False] * k
        sig = sigs[0]
        for i in range(k):
            if o[i]:
                lk = diagram.linking_matrix(code.with_orientation(cur))
                sig += 2 * sum(lk[i][j] for j in range(k) if j != i)
                cur[i] = True
        if sig != s:
            raise RuntimeError("%s: reversal formula fails for %r" % (name, o))

    # match spherogram's component order to ours via crossing membership
    ours = [set() for _ in range(k)]
    for ci, (a, b) in enumerate(comp_of):
        ours[a].add(ci)
        ours[b].add(ci)
    comps = []
    for i in range(k):
        K = L.sublink([i])
        comps.append(identify_knot(K))
    theirs = []
    for comp in L.link_components:
        theirs.append({L.crossings.index(ce.crossing) for ce in comp})
    perm = []
    for s in ours:
        perm.append(next(j for j, t in enumerate(theirs) if t == s and j not in perm))
    comps = [comps[j] for j in perm]

    sub = []
    if k >= 3:
        for pair in combinations(range(k), 2):
            S = L.sublink([perm[i] for i in pair])
            if len(S.link_components) < 2:
                continue
            ident = identify_link(S) if S.crossings else {}
            if ident.get("name"):
                sub.append({"components": list(pair), **ident})

    pos = data.white_gram if exact_signature(data.white_gram) == data.white_gram.nrows \
        else data.black_gram
    rec = {
        "name": name,
        "k": k,
        "pd": [list(c) for c in pd],
        "alternating": diagram.is_alternating(code),
        "signatures": sigs,
        "nullity": diagram.nullity(code),
        "determinant": data.determinant,
        "homology": homology,
        "goeritz": {"white_gram": data.white_gram.tolist(),
                    "black_gram": data.black_gram.tolist(),
                    "gl_correction": data.gl_correction},
        "linking_matrix": diagram.linking_matrix(code),
        "components": [{"knot": c, "u": KNOTS[c][0], "cstar": KNOTS[c][1]}
                       for c in comps],
        "sublinks": sub,
        "known_upper_bound": u,
        "provenance": {
            "pd": "external:spherogram-thistlethwaite-table",
            "components": "external:snappy-identify+knotinfo",
            "sublinks": "external:snappy-identify",
            "known_upper_bound": "published-table",
            "signatures": "derived", "nullity": "derived", "determinant": "derived",
            "homology": "derived", "goeritz": "derived", "linking_matrix": "derived",
            "alternating": "derived",
        },
    }
    if diagram.is_alternating(code):
        rec["positive_goeritz_rank"] = pos.nrows
    return rec


def main():
    out = []
    for name, u in sorted(table_u().items(), key=lambda kv: kv[0]):
        rec = build_record(name, u)
        out.append(rec)
        print(name, rec["k"], rec["signatures"], rec["determinant"],
              [c["knot"] for c in rec["components"]], rec["sublinks"], file=sys.stderr)
    path = os.path.join(HERE, "..", "src", "unlinking", "data", "links.json")
    with open(path, "w") as f:
        json.dump({"version": 1, "links": out}, f, indent=1)
        f.write("\n")
    print("cross-checks:", CHECKS, file=sys.stderr)
    print("wrote %d records to %s" % (len(out), path), file=sys.stderr)


if __name__ == "__main__":
    main()
