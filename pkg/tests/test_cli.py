import json
import subprocess
import sys

import pytest

from vnh.cli import main
from vnh.io import element_from_json
from vnh.elements import equal_elements, identity_element, reduce_element
from vnh.perms import Subgroup

IDENT = '{"n": 2, "H": [], "domain": "*", "range": "*", "tau": [1], "labels": [[1, 2]]}'
SWAP = '{"n": 2, "H": [], "domain": "(* *)", "range": "(* *)", "tau": [2, 1], "labels": [[1, 2], [1, 2]]}'
GLOBAL_SWAP = '{"n": 2, "H": [[2, 1]], "domain": "*", "range": "*", "tau": [1], "labels": [[2, 1]]}'
CARET_SWAP_Z2 = '{"n": 2, "H": [[2, 1]], "domain": "(* *)", "range": "(* *)", "tau": [2, 1], "labels": [[1, 2], [1, 2]]}'


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("id", IDENT),
        ("swap", SWAP),
        ("glob", GLOBAL_SWAP),
        ("caret_z2", CARET_SWAP_Z2),
    ]:
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run_cli(args, stdin=None, capsys=None):
    return main(args)


def test_parse_round_trip(files, capsys):
    assert main(["parse", files["id"]]) == 0
    out = capsys.readouterr().out
    assert element_from_json(out).key() == element_from_json(IDENT).key()


def test_parse_error_names_field(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "H": []}')
    assert main(["parse", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "domain" in err


def test_conjugate_id_id(files, capsys):
    assert main(["conjugate", files["id"], files["id"]]) == 0
    assert capsys.readouterr().out.strip() == "conjugate: true"


def test_conjugate_id_swap(files, capsys):
    assert main(["conjugate", files["id"], files["swap"]]) == 0
    assert capsys.readouterr().out.strip() == "conjugate: false"


def test_conjugate_global_vs_caret_z2(files, capsys):
    assert main(["conjugate", files["glob"], files["caret_z2"]]) == 0
    assert capsys.readouterr().out.strip() == "conjugate: true"


def test_conjugate_mismatch_exit2(files, capsys):
    assert main(["conjugate", files["id"], files["glob"]]) == 2


def test_compose_reduce_pipeline(files, capsys, monkeypatch, tmp_path):
    assert main(["compose", files["swap"], files["swap"]]) == 0
    composed = capsys.readouterr().out
    p = tmp_path / "composed.json"
    p.write_text(composed)
    assert main(["reduce", str(p)]) == 0
    reduced = capsys.readouterr().out
    want = reduce_element(element_from_json(composed))
    assert element_from_json(reduced).key() == want.key()
    assert want.key() == identity_element(2, Subgroup.trivial(2)).key()
    # Byte-stable canonical output: reduce of reduce prints identically.
    p2 = tmp_path / "reduced.json"
    p2.write_text(reduced)
    assert main(["reduce", str(p2)]) == 0
    assert capsys.readouterr().out == reduced


def test_invert_cli(files, capsys):
    assert main(["invert", files["swap"]]) == 0
    out = capsys.readouterr().out
    g = element_from_json(out)
    assert equal_elements(g, element_from_json(SWAP))  # an involution


def test_diagram_dot(files, capsys):
    assert main(["diagram", "--dot", files["swap"]]) == 0
    dot1 = capsys.readouterr().out
    assert dot1.startswith("digraph strand {")
    assert main(["diagram", "--dot", files["swap"]]) == 0
    assert capsys.readouterr().out == dot1


def test_close_dot_and_trace(files, capsys):
    assert main(["close", "--dot", "--trace", files["swap"]]) == 0
    out = capsys.readouterr().out
    assert "digraph strand" in out
    assert "winding=2" in out


def test_order_and_torsion(files, capsys):
    assert main(["order", files["swap"]]) == 0
    assert capsys.readouterr().out.strip() == "order: 2"
    assert main(["torsion", files["swap"]]) == 0
    assert capsys.readouterr().out.strip() == "torsion: true"


def test_order_cap(files, capsys):
    nontorsion = json.dumps(
        {
            "n": 2,
            "H": [],
            "domain": "((* *) *)",
            "range": "(* (* *))",
            "tau": [1, 2, 3],
            "labels": [[1, 2], [1, 2], [1, 2]],
        }
    )
    import tempfile, os

    fd, path = tempfile.mkstemp(suffix=".json")
    os.write(fd, nontorsion.encode())
    os.close(fd)
    try:
        assert main(["order", "--cap", "20", path]) == 0
        assert capsys.readouterr().out.strip() == "order: exceeds cap"
        assert main(["torsion", path]) == 0
        assert capsys.readouterr().out.strip() == "torsion: false"
    finally:
        os.unlink(path)


def test_census_congruence_mode(capsys):
    assert main(["census", "--n", "2", "--H", "id", "--p", "3"]) == 0
    assert capsys.readouterr().out.strip() == "classes=2 expected=2"


def test_census_enumeration_mode(capsys):
    assert main(["census", "--n", "2", "--H", "id", "--p", "3", "--max-leaves", "4"]) == 0
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "classes=2 expected=2"
    assert out.startswith("class 1: representative = ")


def test_oracle_exit_codes(files, capsys):
    assert main(["oracle", files["id"], files["id"], "--oracle-bound", "1"]) == 0
    assert capsys.readouterr().out.startswith("oracle: yes")
    assert main(["oracle", files["id"], files["swap"], "--oracle-bound", "2"]) == 3
    assert capsys.readouterr().out.strip() == "oracle: inconclusive"
    assert main(["conjugate", "--oracle-bound", "2", files["id"], files["swap"]]) == 3


def test_cli_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "vnh.cli", "census", "--n", "3", "--H", "id", "--p", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "classes=3 expected=3"


def test_stdin_input(files, capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(IDENT))
    assert main(["reduce", "-"]) == 0
    out = capsys.readouterr().out
    assert element_from_json(out).key() == element_from_json(IDENT).key()
