"""Frozen values for the 9-crossing link L9a10 and the Q_a forms."""

import re
from fractions import Fraction as F

# positive-definite Goeritz matrices of -L (signature -1) and L (signature 1)
G3 = [[5, -1, -1], [-1, 4, -2], [-1, -2, 4]]
G6 = [[2, -1, 0, 0, -1, 0], [-1, 2, -1, 0, 0, 0], [0, -1, 3, -1, 0, 0],
      [0, 0, -1, 3, -1, -1], [-1, 0, 0, -1, 3, 0], [0, 0, 0, -1, 0, 2]]


def negate(M):
    return [[-x for x in r] for r in M]


EMBEDDINGS_G3_Z6 = [
    "2e1+e2,-e2+e3+e4+e5,-e2-e3-e4-e5",
    "2e1+e2,-e1+e2+e3+e4,-e2-e3+e5+e6",
    "e1+e2+e3+e4+e5,e1-e2-e3+e6,-e1+e2-e3-e6",
    "e1+e2+e3+e4+e5,e1-e2-e3+e6,-e1+e4-e5-e6",
]

EMBEDDINGS_G6_Z9 = [
    "e1+e2,-e2+e3,-e3+e4+e5,-e5+e6+e7,-e1-e4+e5,-e7+e8",
    "e1+e2,-e2+e3,-e3+e4+e5,-e5+e6+e7,-e1-e7+e8,-e4+e5",
    "e1+e2,-e2+e3,-e3+e4+e5,-e5+e6+e7,-e1-e7+e8,-e6+e9",
    "e1+e2,-e2+e3,-e3+e4+e5,-e5+e6+e7,-e1-e7+e8,-e7-e8",
    "e1+e2,-e2+e3,-e1+e2+e4,-e4+e5+e6,-e2-e3+e4,-e5+e7",
]


def parse_vectors(text, N):
    """'2e1+e2,-e3' -> [(2,1,0,..), (0,0,-1,..)]."""
    out = []
    for term in text.split(","):
        v = [0] * N
        for sign, coef, idx in re.findall(r"([+-]?)(\d*)e(\d+)", term):
            v[int(idx) - 1] += (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
        out.append(tuple(v))
    return out


# correction terms of the double branched cover Y of L, cyclic order, from a spin structure
D_INVARIANTS_Y = [F(x) for x in (
    "-1/4 17/48 1/6 -13/16 -7/12 -55/48 -1/2 -31/48 5/12 11/16 1/6 -55/48 "
    "-5/4 -7/48 1/6 -5/16 5/12 17/48 -1/2 -7/48 -7/12 3/16 1/6 -31/48 "
    "-1/4 -31/48 1/6 3/16 -7/12 -7/48 -1/2 17/48 5/12 -5/16 1/6 -7/48 "
    "-5/4 -55/48 1/6 11/16 5/12 -31/48 -1/2 -55/48 -7/12 -13/16 1/6 17/48").split()]

# m_{Q_4} in cyclic order from a fixed coset
M_Q4 = [F(x) for x in "-1/4 1/6 -7/12 -1/2 5/12 1/6 3/4 1/6 5/12 -1/2 -7/12 1/6".split()]

Q13_XI = (3, 2, 0)
M_Q13_AT_XI = F(-1, 12)


def Q(a):
    return [[-a, 1, 1], [1, -2, 0], [1, 0, -2]]


# links whose bound comes from the determinant, signature and Kohn-type lemmas
DET_LINKS = ["L5a1", "L6a4", "L7a1", "L7a3", "L7a4", "L7a6", "L8a1", "L8a8", "L8a9",
             "L8a16"] + ["L9a%d" % N for N in (1, 3, 4, 8, 9, 18, 20, 21, 22, 25, 26,
                                                27, 35, 38, 40, 42)]
SIGNATURE_LINKS = ["L9a14", "L9a29", "L9a36"]
KOHN_LINKS = ["L9a2", "L9a15", "L9a17", "L9a30"]
FEATURED = KOHN_LINKS + ["L9a10"]
