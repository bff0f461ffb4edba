import io
import json
import subprocess
import sys

import pytest

from toric_kring import corpus
from toric_kring.cli import JobSpec, main, run
from toric_kring.schema import SchemaError, loads


def call(command, path, fmt="text", kind=None, radius=3):
    out, err = io.StringIO(), io.StringIO()
    code = run(JobSpec(str(path), kind, command, radius, fmt), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def exported(tmp_path):
    assert main(["export-examples", str(tmp_path)]) == 0
    return tmp_path


def test_verify_p2(exported):
    code, out, _ = call("verify", exported / "p2.fan.json")
    assert code == 0
    assert "rank 3 = chi 3" in out
    assert "factors [1, 1, 1]" in out
    assert "gr (1,1,1) = H* (1,1,1)" in out


def test_validate_halfplane(exported):
    code, out, _ = call("validate", exported / "halfplane.fan.json")
    assert code == 1
    assert "wall {0} lies in 1 maximal cone" in out


def test_kring_square(exported):
    code, out, _ = call("kring", exported / "square-quasitoric.cp.json", fmt="json")
    assert code == 0
    data = json.loads(out)
    assert data["kring"]["quotient"] == {"free_rank": 4, "torsion": []}
    assert data["kring"]["relation_matrix"]["cols"] == len(data["kring"]["basis_monomials"])


def test_bundled_name_lookup():
    code, out, _ = call("verify", "examples/p2.fan.json")
    assert code == 0 and out.rstrip().endswith("PASS")


@pytest.mark.parametrize("command", ["validate", "relations", "kring", "cohomology", "gr-compare", "basis", "verify"])
def test_all_commands_on_p2(command):
    code, out, _ = call(command, "p2", fmt="json", radius=1)
    assert code == 0
    json.loads(out)


def test_json_is_deterministic():
    a = call("verify", "bl2p2", fmt="json")[1]
    b = call("verify", "bl2p2", fmt="json")[1]
    assert a == b
    assert a == json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n"


def test_fan_and_translation_agree(tmp_path):
    fan = corpus.get("hirzebruch3").build()
    cp_path = tmp_path / "h3.cp.json"
    from toric_kring.fan import to_char_pair
    cp_path.write_text(json.dumps(to_char_pair(fan).to_json()))
    a = json.loads(call("verify", "hirzebruch3", fmt="json")[1])["verification"]
    b = json.loads(call("verify", cp_path, fmt="json")[1])["verification"]
    assert a == b


@pytest.mark.parametrize("entry", [e for e in corpus.MANIFEST if not e.positive], ids=lambda e: e.name)
def test_negatives_fail_at_validation(entry):
    code, out, _ = call("validate", entry.name, fmt="json")
    assert code == 1
    data = json.loads(out)
    section = data["fan"] if entry.kind == "fan" else data["charpair"]
    assert entry.witness_kind in {w["kind"] for w in section["witnesses"]}
    # verify stops at the same gate
    assert call("verify", entry.name)[0] == 1


@pytest.mark.parametrize("text, needle", [
    ("{not json", "malformed JSON"),
    ('{"dim": 2, "rays": [[1,0],[0,1]], "max_cones": [[0,1]], "colour": 1}', "'colour'"),
    ('{"dim": 2, "rays": [[1,0],[0,1]], "max_cones": [[0,7]]}', "max_cones[0]"),
    ('{"dim": 2, "rays": [[1,0],[0,1,1]], "max_cones": [[0,1]]}', "rays[1]"),
    ('{"dim": 2, "facets": 2, "maximal_faces": [[0,1]], "lambda": [[1,0]]}', "lambda"),
    ('{"dim": "2", "rays": [[1,0]], "max_cones": [[0]]}', "dim"),
    ('{"dim": 2, "rays": [[1,0],[0,1]]}', "'max_cones'"),
    ('[1, 2]', "top level"),
])
def test_schema_errors(tmp_path, text, needle):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, out, err = call("validate", f)
    assert code == 2
    assert needle in err


def test_missing_file():
    code, _, err = call("verify", "/nonexistent/thing.json")
    assert code == 2 and "not found" in err


def test_usage_errors():
    assert main(["verify"]) == 2
    assert main(["frobnicate", "p2"]) == 2
    assert call("verify", "p2", radius=0)[0] == 2


def test_list_examples(capsys):
    assert main(["list-examples", "--format", "json"]) == 0
    entries = json.loads(capsys.readouterr().out)
    assert len(entries) >= 14
    names = {e["name"] for e in entries}
    assert {"p1", "p2", "p3", "p4", "p1xp1", "p1xp1xp1", "bl3p2", "square-quasitoric"} <= names


def test_bundled_files_match_builders():
    for e in corpus.MANIFEST:
        parsed = loads(corpus.bundled_path(e).read_text())
        assert parsed.to_json() == e.build().to_json()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toric_kring.cli", "verify", "p1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_loads_kind_override():
    with pytest.raises(SchemaError):
        loads('{"dim": 1, "rays": [[1],[-1]], "max_cones": [[0],[1]]}', kind="charpair")
