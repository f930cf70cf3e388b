"""Command-line interface: exit codes, determinism, report contents."""

import json

import pytest

from symvert import catalog, cli, rep
from symvert.field import make_field
from symvert.group import group_to_dict


@pytest.fixture(scope="module")
def s3_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    S3 = catalog.suite_group("S3")
    gpath = d / "s3.json"
    gpath.write_text(json.dumps(group_to_dict(S3)))
    M = [m for m in rep.irreducible_modules(S3, make_field(1)) if m.dim == 2][0]
    mpath = d / "m2.json"
    mpath.write_text(json.dumps(rep.module_to_dict(M)))
    return str(gpath), str(mpath)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_vertices_command(s3_files, capsys):
    g, m = s3_files
    code, out = run(["--json", "vertices", g, m], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["case"] == "II"
    assert data["green_vertex"]["order"] == 1
    assert data["meta"]["field_degree"] == 1
    assert data["meta"]["seed"] == cli.DEFAULT_SEED


def test_vertices_deterministic(s3_files, capsys):
    g, m = s3_files
    _, out1 = run(["--json", "vertices", g, m], capsys)
    _, out2 = run(["--json", "vertices", g, m], capsys)
    assert out1 == out2


def test_blocks_command(s3_files, capsys):
    g, _ = s3_files
    code, out = run(["--json", "blocks", g], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["blocks"]) == 2
    principal = [b for b in data["blocks"] if b["principal"]]
    assert len(principal) == 1
    assert principal[0]["defect_group"]["order"] == 2
    assert data["meta"]["modulus"] == 3  # x + 1 as a bit-polynomial


def test_blocks_field_degree_flag(s3_files, capsys):
    g, _ = s3_files
    code, out = run(["--json", "--field-degree", "2", "blocks", g], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["meta"]["field_degree"] == 2
    assert data["meta"]["modulus"] == 7  # x^2 + x + 1


def test_parse_error_exit_code(s3_files, capsys):
    _, m = s3_files
    code = cli.main(["vertices", "/does/not/exist.json", m])
    assert code == 2


def test_malformed_json_exit_code(tmp_path, s3_files, capsys):
    _, m = s3_files
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["vertices", str(bad), m]) == 2
    assert cli.main(["blocks", str(bad)]) == 2


def test_unknown_suite_exit_code(capsys):
    assert cli.main(["verify", "nope"]) == 2


def test_infeasible_exit_code(s3_files, capsys):
    g, m = s3_files
    assert cli.main(["--bound-group-order", "2", "blocks", g]) == 3
    assert cli.main(["--bound-dim", "1", "vertices", g, m]) == 3


def test_oracle_small_suite(capsys):
    code, out = run(["--json", "verify", "oracle-small"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["suite"] == "oracle-small"
    assert all(r["pass"] for r in data["results"])
