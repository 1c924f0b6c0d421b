import copy
import json

import pytest

from narayana_repdigits import cli
from narayana_repdigits.numeric import PrecisionBudget
from narayana_repdigits.pipeline import (
    ProofConfig,
    check_certificate,
    low_range_search,
    oracle_cross_check,
    prove,
    verify_certificate,
    write_certificate,
)

SOLUTIONS = {13, 19, 28, 41, 60, 88, 277}


def _values(cert):
    return {int(s["value"]) for s in cert["low_range"]["solutions"]}


@pytest.fixture(scope="module")
def cert():
    return prove(ProofConfig())


def test_low_range_indices():
    found = low_range_search(250)
    assert [(n, N) for n, N, _ in found] == [(9, 13), (10, 19), (11, 28), (12, 41), (13, 60), (14, 88), (17, 277)]


def test_oracle_agrees():
    assert oracle_cross_check(10)


def test_default_proof_closes(cert):
    assert cert["verdict"]["closed"]
    assert _values(cert) == SOLUTIONS
    assert cert["reduction"]["stage1"]["m1_bound"] <= 40
    assert cert["reduction"]["stage2"]["n_bound"] <= 250
    assert check_certificate(cert) == []


def test_certificate_round_trip(cert, tmp_path):
    path = tmp_path / "cert.json"
    write_certificate(cert, path)
    assert verify_certificate(path)


def _tamper_solution(doc):
    doc["low_range"]["solutions"].pop()


def _tamper_eps(doc):
    row = doc["reduction"]["stage1"]["eps_table"][0]
    row["eps"] = "-" + row["eps"]


def _tamper_verdict(doc):
    doc["verdict"]["closed"] = not doc["verdict"]["closed"]


def _tamper_bound(doc):
    doc["reduction"]["stage2"]["n_bound"] = 150


def _tamper_family(doc):
    doc["reduction"]["stage2"]["families"].pop(5)
    doc["reduction"]["stage2"]["family_count"] -= 1


def _tamper_report(doc):
    row = doc["initial_bounds"]["discrepancies"][0]
    row["reproduced"] = True


@pytest.mark.parametrize(
    "tamper", [_tamper_solution, _tamper_eps, _tamper_verdict, _tamper_bound, _tamper_family, _tamper_report]
)
def test_tampered_certificate_rejected(cert, tamper, tmp_path):
    doc = json.loads(json.dumps(cert))
    tamper(doc)
    assert check_certificate(doc)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert not verify_certificate(path)


def test_deterministic_apart_from_timestamp(cert):
    again = prove(ProofConfig())
    a, b = copy.deepcopy(cert), again
    a["meta"].pop("timestamp")
    b["meta"].pop("timestamp")
    assert a == b


@pytest.mark.parametrize("cutoff", [300, 400])
def test_larger_cutoff_same_result(cutoff):
    c = prove(ProofConfig(low_range_cutoff=cutoff))
    assert c["verdict"]["closed"] and _values(c) == SOLUTIONS


def test_low_precision_is_inconclusive():
    c = prove(ProofConfig(precision=PrecisionBudget(64, 64)))
    assert not c["verdict"]["closed"]
    assert c["verdict"]["failed_stage"] == "reduction: continued fraction"
    assert check_certificate(c) == []


def test_config_validation():
    with pytest.raises(ValueError):
        ProofConfig(low_range_cutoff=10)
    with pytest.raises(ValueError):
        ProofConfig(parallelism=0)


def test_cli_exit_codes(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert cli.main(["search", "--max-n", "250"]) == 0
    assert "N=277" in capsys.readouterr().out
    assert cli.main(["prove", "--emit", str(path)]) == 0
    assert cli.main(["verify", str(path)]) == 0
    doc = json.loads(path.read_text())
    _tamper_verdict(doc)
    path.write_text(json.dumps(doc))
    assert cli.main(["verify", str(path)]) == 3
    assert cli.main(["verify", str(tmp_path / "missing.json")]) == 3
    assert cli.main(["prove", "--precision-bits", "64", "--max-bits", "64"]) == 4
    assert cli.main(["prove", "--cutoff", "20"]) == 2
    assert cli.main(["oracle", "--max-digits", "6"]) == 0
    with pytest.raises(SystemExit) as info:
        cli.main(["search"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["reduce", "--stage", "3"])
    assert info.value.code == 1
