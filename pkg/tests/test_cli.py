import io
import json

import pytest

from reference_values import G3, negate
from unlinking.cli import main
from unlinking.dataset import load_table, record_to_dict


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def gram(tmp_path):
    def write(M, fmt="json"):
        p = tmp_path / ("g.%s" % fmt)
        if fmt == "json":
            p.write_text(json.dumps(M))
        else:
            p.write_text("\n".join(" ".join(map(str, r)) for r in M))
        return str(p)
    return write


def test_goeritz(tmp_path):
    p = tmp_path / "trefoil.pd"
    p.write_text("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]")
    code, out = run("goeritz", str(p))
    assert code == 0
    assert "determinant\t3" in out and "signature[0]\t-2" in out


def test_embed(gram):
    code, out = run("embed", "--gram", gram(G3), "--ambient", "6")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 3
    code, out = run("embed", "--gram", gram(G3, "txt"), "--ambient", "6",
                    "--source-symmetry", "signed-basis", "--pairs", "1")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 4


def test_dinv(gram):
    code, out = run("dinv", "--gram", gram(negate(G3)))
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 49
    spins = [l.split("\t")[1] for l in lines[1:] if l.endswith("yes")]
    assert spins == ["-1/4", "-1/4"]


def test_obstruct(tmp_path):
    p = tmp_path / "L9a10.json"
    p.write_text(json.dumps(record_to_dict(load_table()["L9a10"])))
    code, out = run("obstruct", str(p), "--p", "0", "--n", "2", "--orientation", "0")
    assert code == 0 and out.startswith("status\tobstructed")
    code, out = run("obstruct", str(p), "--p", "3", "--n", "3")
    assert code == 0 and out.startswith("status\tinconclusive")


def test_table_subset(tmp_path):
    t = load_table()
    p = tmp_path / "sub.json"
    p.write_text(json.dumps({"version": 1, "links": [record_to_dict(t[n])
                                                     for n in ("L2a1", "L4a1", "L9a30")]}))
    code, out = run("table", str(p), "--jobs", "1")
    rows = [l.split("\t") for l in out.strip().splitlines()]
    assert code == 0 and rows[0][:5] == ["name", "k", "cstar_lower", "u_lower", "u_dataset"]
    assert {r[0]: r[3] for r in rows[1:]} == {"L2a1": "1", "L4a1": "2", "L9a30": "3"}


def test_malformed_input_exit_code(tmp_path, gram):
    assert run("goeritz", str(tmp_path / "missing.pd"))[0] == 2
    bad = tmp_path / "bad.pd"
    bad.write_text("PD[X[1,2,3]]")
    assert run("goeritz", str(bad))[0] == 2
    assert run("embed", "--gram", gram([[1, 2], [3, 4]]), "--ambient", "3")[0] == 2
    assert run("dinv", "--gram", gram(G3))[0] == 2
    with pytest.raises(SystemExit) as e:
        run("embed", "--gram")
    assert e.value.code == 2


def test_capacity_exit_code(gram):
    assert run("embed", "--gram", gram(G3), "--ambient", "40")[0] == 3
    assert run("dinv", "--gram", gram([[-200, 0, 0, 0], [0, -200, 0, 0],
                                       [0, 0, -200, 0], [0, 0, 0, -200]]))[0] == 3
