import json

import pytest

from chevalley.cli import main, parse_element, parse_group, run_suite
from chevalley.rings import GF


def test_parse_group():
    assert parse_group("SL3").sys.type_label == "A"
    assert parse_group("Sp4").sys.type_label == "C"
    assert parse_group("SO7").sys.type_label == "B"
    assert parse_group("O8").sys.type_label == "D"
    assert parse_group("G2adj").form == "adjoint"
    for bad in ("SL2", "Sp3", "SO8", "O7", "XYZ"):
        with pytest.raises(ValueError):
            parse_group(bad)


def test_parse_element():
    rep = parse_group("SL3")
    ring = GF(5)
    assert (parse_element(rep, ring, "x(0,3)") == rep.x(ring, 0, ring.dtype(3))).all()
    assert (parse_element(rep, ring, "h(1,2)") == rep.h(ring, 1, ring.dtype(2))).all()
    with pytest.raises(ValueError):
        parse_element(rep, ring, "y(0,1)")


def test_roots_command(capsys):
    assert main(["roots", "--type", "A", "--rank", "2"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 6


def test_enumerate_command(capsys):
    assert main(["enumerate", "--group", "SL3", "--field", "2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["order"] == 168


def test_check_commutators_command(capsys):
    assert main(["--format", "json", "check-commutators",
                 "--type", "A", "--rank", "2", "--field", "3"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["failures"] == 0


def test_check_dc_command(capsys):
    assert main(["--format", "json", "check-dc",
                 "--group", "SL3", "--field", "2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["verdict"] and body["order"] == 168


def test_check_witness_command(capsys):
    assert main(["check-witness", "--type", "C", "--rank", "2",
                 "--field", "3", "--set", "X1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_eval_formula_sentence(capsys):
    assert main(["eval-formula", "--group", "SL3", "--field", "2",
                 "--formula", "A g. g*g^-1=1"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] is True


def test_eval_formula_with_free_variable_and_params(capsys):
    assert main(["eval-formula", "--group", "SL3", "--field", "2",
                 "--formula", "E h. (x=h*@1*h^-1 & !x=1)", "--params", "x(0,1)"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["free"] == ["x"] and body["extension_size"] > 0


def test_check_adelic_single_prime(capsys):
    assert main(["--format", "json", "check-adelic",
                 "--primes", "7", "--mode", "SL2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["failures"] == 0


def test_run_suite_roots_json_is_deterministic():
    a = run_suite("roots", {}, 0)
    b = run_suite("roots", {}, 0)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["failures"] == 0


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_false_sentence_reports_false(capsys):
    assert main(["eval-formula", "--group", "SL3", "--field", "2",
                 "--formula", "A g. A h. g*h=h*g"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] is False
