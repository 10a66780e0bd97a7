"""JSON (de)serialization of link records and the shipped link table."""

import json
from importlib import resources

from .diagram import parse_pd
from .groups import FiniteAbelianGroup
from .linalg import IntMatrix
from .pipeline import ComponentData, Goeritz, LinkRecord

DATASET_VERSION = 1


class DatasetError(ValueError):
    pass


def _matrix(rows):
    rows = [list(map(int, r)) for r in rows]
    return IntMatrix(rows, len(rows))


def record_from_dict(d):
    try:
        g = d.get("goeritz")
        goeritz = None
        if g:
            goeritz = Goeritz(_matrix(g["white_gram"]), _matrix(g["black_gram"]),
                              int(g.get("gl_correction", 0)))
        pd = parse_pd(d["pd"]) if d.get("pd") else None
        lk = d.get("linking_matrix")
        return LinkRecord(
            name=d["name"],
            k=int(d["k"]),
            signatures=tuple(int(s) for s in d["signatures"]),
            nullity=int(d.get("nullity", 0)),
            determinant=int(d["determinant"]),
            # zero factors are the free part, already counted by the nullity
            homology=FiniteAbelianGroup([int(x) for x in d.get("homology", []) if int(x) != 0]),
            goeritz=goeritz,
            pd=pd,
            alternating=bool(d.get("alternating", False)),
            linking_matrix=tuple(tuple(int(x) for x in r) for r in lk) if lk else None,
            components=tuple(ComponentData(c["knot"], int(c["u"]), int(c["cstar"]))
                             for c in d.get("components", [])),
            sublinks=tuple(d.get("sublinks", [])),
            known_upper_bound=d.get("known_upper_bound"),
            provenance=dict(d.get("provenance", {})),
        )
    except (KeyError, TypeError) as e:
        raise DatasetError("malformed record %r: %s" % (d.get("name", "?"), e)) from e


def record_to_dict(r):
    d = {"name": r.name, "k": r.k, "signatures": list(r.signatures),
         "nullity": r.nullity, "determinant": r.determinant,
         "homology": list(r.homology.invariant_factors) + [0] * r.nullity,
         "alternating": r.alternating}
    if r.goeritz is not None:
        d["goeritz"] = {"white_gram": r.goeritz.white_gram.tolist(),
                        "black_gram": r.goeritz.black_gram.tolist(),
                        "gl_correction": r.goeritz.gl_correction}
    if r.pd is not None:
        d["pd"] = r.pd.to_json()
    if r.linking_matrix is not None:
        d["linking_matrix"] = [list(x) for x in r.linking_matrix]
    d["components"] = [{"knot": c.knot, "u": c.u, "cstar": c.cstar} for c in r.components]
    d["sublinks"] = list(r.sublinks)
    if r.known_upper_bound is not None:
        d["known_upper_bound"] = r.known_upper_bound
    d["provenance"] = dict(r.provenance)
    return d


def load_records(source=None):
    """Records from a dataset file, a single-record file, or the shipped table."""
    if source is None:
        text = resources.files("unlinking").joinpath("data/links.json").read_text()
    else:
        with open(source) as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatasetError("not valid JSON: %s" % e) from e
    if isinstance(data, dict) and "links" in data:
        if data.get("version", DATASET_VERSION) != DATASET_VERSION:
            raise DatasetError("unsupported dataset version %r" % data.get("version"))
        items = data["links"]
    elif isinstance(data, dict):
        items = [data]
    elif isinstance(data, list):
        items = data
    else:
        raise DatasetError("expected a record, a list of records or a dataset")
    return [record_from_dict(d) for d in items]


def load_table():
    return {r.name: r for r in load_records()}


def save_records(records, path):
    with open(path, "w") as f:
        json.dump({"version": DATASET_VERSION,
                   "links": [record_to_dict(r) for r in records]}, f, indent=1)
        f.write("\n")
