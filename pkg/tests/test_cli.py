import json
import logging
import pytest

from fqsym_scf.cli import run
from util import compare_lines


def run_json(capsys, argv):
    code = run(argv)
    assert code == 0
    return json.loads(capsys.readouterr().out)


def terms(data, key="perm"):
    return [(t[key], t["num"], t["den"]) for t in data["terms"]]


def test_product(capsys):
    data = run_json(capsys, ["product", "--basis", "sch", "1,2", "1"])
    assert data["basis"] == "sch"
    assert terms(data) == [([1, 2, 3], 1, 1), ([1, 3, 2], 1, 1), ([3, 1, 2], 1, 1)]


def test_product_pch(capsys):
    data = run_json(capsys, ["product", "-b", "pch", "1", "2,1"])
    assert terms(data) == [([1, 3, 2], 1, 1)]


def test_coproduct(capsys):
    data = run_json(capsys, ["coproduct", "--basis", "pch", "2,1"])
    pairs = [(t["left"], t["right"], t["num"]) for t in data["terms"]]
    assert pairs == [([], [2, 1], 1), ([1], [1], 1), ([2, 1], [], 1)]


def test_convert(capsys):
    data = run_json(capsys, ["convert", "1,2"])
    assert data["basis"] == "pch"
    assert terms(data) == [([1, 2], 1, 1), ([2, 1], -1, 1)]
    data = run_json(capsys, ["convert", "--basis", "pch", "1,2"])
    assert data["basis"] == "sch"
    assert terms(data) == [([1, 2], 1, 1), ([2, 1], 1, 1)]


def test_star(capsys):
    data = run_json(capsys, ["star", "--basis", "pch", "2,3,1"])
    assert terms(data) == [([3, 1, 2], 1, 1)]


def test_antipode(capsys):
    data = run_json(capsys, ["antipode", "1,2"])
    assert terms(data) == [([2, 1], 1, 1)]
    data = run_json(capsys, ["antipode", "--basis", "pch", "1"])
    assert data["basis"] == "pch"
    assert terms(data) == [([1], -1, 1)]


def test_plain(capsys):
    assert run(["product", "--plain", "1", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["perm", "coefficient"]
    assert [line.split() for line in lines[2:]] == [["1,2", "1"], ["2,1", "1"]]


def test_perms_file(capsys, tmp_path):
    path = tmp_path / "perms.txt"
    path.write_text("# factors\n1,2 # first\n\n1\n")
    data = run_json(capsys, ["product", "-P", str(path)])
    assert len(data["terms"]) == 3


def test_table(capsys):
    assert run(["table", "--n", "2", "--q", "2"]) == 0
    expected = ['w,"1,2","2,1"', '"1,2",1,-1', '"2,1",1,1']
    compare_lines(capsys.readouterr().out.splitlines(), expected)


def test_oracle(capsys):
    assert run(["oracle", "--kind", "chi", "--q", "2", "1,2"]) == 0
    compare_lines(capsys.readouterr().out.splitlines(), ["x12,value", "0,1", "1,-1"])


def test_verify(capsys):
    assert run(["verify", "--suite", "lattice", "--max-degree", "3"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [r["case"] for r in records] == [f"mobius n={n}" for n in range(4)]
    assert all(r["status"] == "pass" for r in records)


def test_verify_oracle(capsys):
    assert run(["verify", "--suite", "oracle", "--n", "2", "--q", "2", "--jobs", "2"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert {r["status"] for r in records} == {"pass", "flagged"}


def test_verify_plain(capsys):
    assert run(["verify", "-s", "perm", "-m", "2", "--plain"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["suite", "case", "status", "detail"]
    assert len(lines) == 2 + 3


@pytest.mark.parametrize(
    "argv",
    [
        ["product", "1,1"],
        ["coproduct", "1,2", "2,1"],
        ["verify", "--max-degree", "99"],
        ["verify", "--q", "4"],
        ["verify", "--jobs", "0"],
        ["verify", "--sample", "-1"],
        ["table", "--n", "6"],
        ["oracle", "--q", "5", "1,2,3,4,5"],
    ],
)
def test_invalid_input(argv, caplog):
    with caplog.at_level(logging.CRITICAL):
        assert run(argv) == 2
    assert any(r.levelno == logging.CRITICAL for r in caplog.records)


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        run(["nonsense"])
    assert e.value.code == 2


def test_missing_perms_file(tmp_path, caplog):
    missing = str(tmp_path / "missing.txt")
    with caplog.at_level(logging.CRITICAL):
        assert run(["product", "-P", missing]) == 2
        assert run(["oracle", "-P", missing]) == 2
    assert any(missing in r.getMessage() for r in caplog.records)


def test_verify_pch_sample(capsys):
    assert run(["verify", "-s", "pch", "-m", "3", "--sample", "40"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    sample = [r for r in records if r["case"].startswith("product sample")]
    assert [(r["case"], r["status"], r["detail"]) for r in sample] == [
        ("product sample 4 seed=0", "pass", "40 checked")
    ]
    assert "coproduct n=4" in [r["case"] for r in records]


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["hopf", "pch"])
def test_verify_full_degree(suite, capsys):
    assert run(["verify", "-s", suite, "-m", "5", "-j", "4"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert all(r["status"] == "pass" for r in records)


@pytest.mark.slow
def test_verify_oracle_full_size(capsys):
    assert run(["verify", "-s", "oracle", "-n", "4", "-q", "3", "-j", "4"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert {r["status"] for r in records} <= {"pass", "flagged"}
