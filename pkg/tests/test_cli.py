"""Tests for the command-line interface."""

import json

from mcgorbits.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_even_case(capsys):
    code, out, _ = run(capsys, "classify", "--g", "2", "--n", "2",
                       "--element", "0,0,0,1")
    assert code == 0
    assert "parity class         1" in out
    assert "vanishing number     1" in out


def test_classify_odd_case_json(capsys):
    code, out, _ = run(capsys, "classify", "--g", "4", "--n", "3",
                       "--element", "1,2,0,1,2,2,0,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["parity_class"] == 0
    assert data["canonical_representative"] == [0] * 8
    assert data["vanishing_number"] is None


def test_classify_refuses_bad_euler(capsys):
    code, _, err = run(capsys, "classify", "--g", "2", "--n", "3",
                       "--element", "0,0,0,0")
    assert code == 2
    assert "--allow-invalid-euler" in err


def test_classify_allows_override(capsys):
    code, out, _ = run(capsys, "classify", "--g", "2", "--n", "3",
                       "--element", "0,0,0,0", "--allow-invalid-euler",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["regime"] == "outside n | 2g-2 regime"


def test_classify_bad_element(capsys):
    code, _, err = run(capsys, "classify", "--g", "2", "--n", "2",
                       "--element", "0,0,0")
    assert code == 2
    assert "coordinates" in err or "expected" in err


def test_orbits_json_schema(capsys):
    code, out, _ = run(capsys, "orbits", "--g", "2", "--n", "2",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"g", "n", "generators", "orbit_count", "orbits",
                         "elapsed_ms", "threads"}
    assert data["orbit_count"] == 2
    assert sorted(o["size"] for o in data["orbits"]) == [6, 10]


def test_orbits_csv(capsys):
    code, out, _ = run(capsys, "orbits", "--g", "2", "--n", "2",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "representative,size,vanishing_number"
    assert len(lines) == 3


def test_orbits_budget_refusal(capsys, monkeypatch):
    monkeypatch.setenv("MCGORBITS_BITMAP_BUDGET", "1")
    code, _, err = run(capsys, "orbits", "--g", "2", "--n", "2")
    assert code == 2
    assert "bytes" in err


def test_apply_word(capsys):
    code, out, _ = run(capsys, "apply", "--g", "2", "--n", "2",
                       "--element", "0,0,0,0", "--word", "C1")
    assert code == 0
    assert out.strip() == "0,1,0,1"


def test_apply_bad_word(capsys):
    code, _, err = run(capsys, "apply", "--g", "2", "--n", "2",
                       "--element", "0,0,0,0", "--word", "C0")
    assert code == 2
    assert "C0" in err


def test_normalize_certificate(capsys):
    code, out, _ = run(capsys, "normalize", "--g", "2", "--n", "2",
                       "--element", "1,1,1,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["canonical_representative"] == [0, 0, 0, 0]
    # the certificate replays
    from mcgorbits.action import apply_word, parse_word
    from mcgorbits.space import SpaceParams, make_element
    p = SpaceParams(2, 2)
    x = make_element(p, [1, 1, 1, 1])
    assert apply_word(parse_word(data["certificate"]), x).coords == (0, 0, 0, 0)


def test_verify_sl2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sl2", "--n", "6")
    assert code == 0
    assert "ok   sl2 n=6 closure size: 144" in out


def test_verify_theorem_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorem",
                       "--max-states", "5000")
    assert code == 0
    assert "theorem g=2 n=2 orbit_count: 2" in out
    assert "checks passed" in out


def test_verify_cocycle(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cocycle",
                       "--samples", "40")
    assert code == 0
    assert "cocycle c(a1, (a'2)^-1): 1" in out


def test_cocycle_sampling_deterministic(capsys):
    code1, out1, _ = run(capsys, "cocycle", "--genus", "2", "--pairs", "10",
                         "--seed", "7")
    code2, out2, _ = run(capsys, "cocycle", "--genus", "2", "--pairs", "10",
                         "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["seed"] == 7
    assert len(data["samples"]) == 10
    for sample in data["samples"]:
        assert sample["c"] in (-1, 0, 1)
        assert sample["residual"] < 1e-6
