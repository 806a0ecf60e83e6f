import json
import random
from fractions import Fraction

import pytest

from numpoly import LaurentPoly, parse_expression, poly_from_json
from numpoly.cli import main


@pytest.fixture()
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out

    return invoke


def test_member_stable_local(run):
    code, out = run("member", "--ring", "Ast", "--prime", "3", "(w^2-1)/3")
    assert code == 0
    assert out == '{"member":true}\n'


def test_member_numerical_witness_bytes(run):
    code, out = run("member", "--ring", "A", "(w^2-1)/3")
    assert code == 1
    assert out == '{"member":false,"witness":{"p":3,"a":1,"u":0}}\n'


def test_convert_to_binomial_bytes(run):
    code, out = run("convert", "--to", "binomial", "w^2")
    assert code == 0
    assert (
        out
        == '{"basis":"binomial","terms":[{"k":1,"coeff":"1/1"},{"k":2,"coeff":"2/1"}]}\n'
    )


def test_member_ko(run):
    code, out = run("member", "--ring", "KO", "(w^2-1)/8")
    assert code == 0 and json.loads(out)["member"] is True
    code, out = run("member", "--ring", "KO", "(w^2-1)/16")
    assert code == 1
    assert json.loads(out)["witness"]["u"] == 3


def test_member_requires_prime_for_local_rings(run):
    code, _ = run("member", "--ring", "Ap", "w^2")
    assert code == 2


def test_parse_error_exits_2(run):
    code, _ = run("convert", "--to", "binomial", "w^^2")
    assert code == 2
    code, _ = run("convert", "--to", "binomial", "w^-1")
    assert code == 2  # negative exponents have no binomial expansion


def test_convert_roundtrip_via_json(run):
    rng = random.Random(41)
    for _ in range(40):
        f = LaurentPoly(
            {
                rng.randint(0, 7): Fraction(rng.randint(-30, 30), rng.randint(1, 12))
                for _ in range(rng.randint(0, 5))
            }
        )
        text = f.format()
        code, out = run("convert", "--to", "binomial", text)
        assert code == 0
        code, out = run("convert", "--to", "monomial", out.strip())
        assert code == 0
        back = poly_from_json(json.loads(out))
        assert back == parse_expression(text)
        assert back.format() == f.format()


def test_gens_d(run):
    code, out = run("gens", "--family", "d", "--prime", "3", "--max", "2")
    assert code == 0
    table = json.loads(out)
    assert [g["degree"] for g in table["generators"]] == [3, 9]
    assert all(g["p_local_member"] for g in table["generators"])


def test_gens_e_includes_invariant_certificates(run):
    code, out = run("gens", "--family", "e", "--prime", "5", "--max", "2")
    assert code == 0
    table = json.loads(out)
    entries = [g for g in table["generators"] if g["name"].startswith("e_")]
    assert [g["degree"] for g in entries] == [4, 20]
    assert all(g["invariant"] for g in entries)


def test_basis_cap(run, monkeypatch):
    code, out = run("basis", "--prime", "2", "--deg", "4")
    assert code == 0 and json.loads(out)["unimodular"] is True
    monkeypatch.setenv("NUMPOLY_MAX_DEG", "3")
    code, _ = run("basis", "--prime", "2", "--deg", "4")
    assert code == 2


def test_hensel_cli(run):
    code, out = run("hensel", "--prime", "2", "--target", "3", "w")
    assert code == 0
    payload = json.loads(out)
    assert payload["steps"][0]["gap_valuation"] >= 1
    assert payload["steps"][-1]["gap_valuation"] >= 3


def test_etale_presets(run):
    code, out = run("etale", "--preset", "trunc", "--prime", "2", "--k", "2", "--l", "1")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out = run("etale", "--preset", "zeta", "--prime", "3", "--k", "2")
    assert code == 0 and json.loads(out)["etale"] is True
    code, out = run("etale", "--preset", "en", "--prime", "3", "--k", "2", "--j", "1")
    assert code == 0 and json.loads(out)["omega1_zero"] is True
    code, out = run("etale", "--preset", "negcontrol", "--prime", "3", "--k", "2")
    assert code == 1 and json.loads(out)["omega1_zero"] is False


def test_xi(run):
    code, out = run("xi", "--d", "2", "--k", "3")
    assert code == 0 and json.loads(out)["invertible"] is True


def test_unknown_flag_exits_2(run):
    code, _ = run("member", "--ring", "A", "--frobnicate", "w")
    assert code == 2


def test_report_deterministic(run, tmp_path):
    out_file = tmp_path / "report.json"
    code, first = run("report", "--all", "--primes", "2,3", "--out", str(out_file))
    assert code == 0
    code, second = run("report", "--all", "--primes", "2,3")
    assert code == 0
    assert first == second
    assert out_file.read_text() == first
    payload = json.loads(first)
    assert payload["pass"] is True
    assert all(c["pass"] for c in payload["checks"])
