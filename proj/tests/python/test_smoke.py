import json
import os
import subprocess
from fractions import Fraction

import pytest

import viscoid

BURGERS = "(Ev | nv) & Em & nm"
GKV = "E0 & (E1|n1) & (E2|n2) & (E3|n3)"
ROSCOE = "((((E1&n1)|(E2&n2))&E3&n3)|(E4&n4))&E5&n5"


def test_analyze_verdicts():
    cases = {
        "E1 & n1": ("D", "Global"),
        "E1 | n1": ("C", "Global"),
        BURGERS: ("D", "Global"),
        ROSCOE: ("u", "Unidentifiable"),
        GKV: ("A", "LocalOnly"),
    }
    for expr, (net_type, verdict) in cases.items():
        report = viscoid.analyze(expr)
        assert report["net_type"] == net_type, expr
        assert report["global"] == verdict, expr
        assert viscoid.type_of(expr) == net_type


def test_analyze_with_oracle():
    report = viscoid.analyze(BURGERS, verify=True, trials=2, seed=4)
    assert report["oracle"]["agrees"]
    assert report["oracle"]["ranks"] == [4, 4]
    assert report["param_count"] == report["nonmonic_count"] == 4


def test_report_roundtrip():
    for expr in ("E", BURGERS, ROSCOE):
        text = json.dumps(viscoid.analyze(expr, verify=True, trials=1))
        assert json.loads(viscoid._core.report_roundtrip(text)) == json.loads(text)


def test_derive_voigt():
    d = viscoid.derive("E | n")
    assert d["text"] == "E·ε + n·ε̇ = σ"
    assert d["params"] == ["E", "n"]
    assert [(c["side"], c["order"], c["value"]) for c in d["coefficients"]] == [
        ("eps", 1, "n"),
        ("eps", 0, "E"),
    ]


def test_burgers_parameter_order():
    assert viscoid.param_names(BURGERS) == ["Ev", "nv", "Em", "nm"]
    assert viscoid.jacobian_rank(BURGERS, [3, 7, 2, 5]) == 4
    assert viscoid.jacobian_rank("(E1 & n1) & (E2 & n2)", [2, 3, 5, 7]) <= 2


def test_fiber_counts():
    gkv = viscoid.fiber(GKV, seed=2)
    assert len(gkv["solutions"]) >= 6
    assert all(s["residual"] <= 1e-8 for s in gkv["solutions"])
    assert "base" in gkv["solutions"][0]["methods"]
    assert len(viscoid.fiber(BURGERS, seed=2)["solutions"]) == 1
    fixed = viscoid.fiber("E1 & n1", base=[Fraction(3, 2), 4])
    assert fixed["base"] == ["3/2", "4"]


def _root_product(lead_p, roots_p, q):
    value = Fraction(lead_p) ** (len(q) - 1)
    for r in roots_p:
        acc = Fraction(0)
        for c in reversed(q):
            acc = acc * r + c
        value *= acc
    return value


def test_resultant():
    # p = 2 (x - 1)(x + 3), coefficients ascending.
    p = [-6, 4, 2]
    q = [1, 0, 1]
    assert viscoid.resultant(p, q) == _root_product(2, [1, -3], q)
    assert viscoid.resultant(p, [-1, 1]) == 0
    assert viscoid.resultant([Fraction(1, 2), 1], [Fraction(1, 3), 1]) != 0


def test_tables():
    text = viscoid.tables()
    assert "A | u D A u u" in text
    assert viscoid.table_combine("series", "A", "B") == "D"
    assert viscoid.table_combine("parallel", "C", "C") == "u"
    with pytest.raises(ValueError):
        viscoid.table_combine("sideways", "A", "B")


def test_parse_error():
    with pytest.raises(viscoid.ParseError):
        viscoid.analyze("E1 &")
    assert issubclass(viscoid.ParseError, ValueError)


def test_random_network_is_deterministic():
    assert viscoid.random_network(5, 6) == viscoid.random_network(5, 6)
    assert len(viscoid.param_names(viscoid.random_network(5, 6))) == 6


CLI = os.environ.get("VISCOID_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="VISCOID_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, encoding="utf-8")


@needs_cli
def test_cli_analyze_json():
    out = run("analyze", BURGERS, "--json", "--verify", "--trials", "2")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["global"] == "Global"
    assert report["oracle"]["agrees"]


@needs_cli
def test_cli_derive_text():
    out = run("derive", "E | n")
    assert out.returncode == 0
    assert out.stdout.splitlines()[0] == "E·ε + n·ε̇ = σ"


@needs_cli
def test_cli_exit_codes():
    assert run("analyze", "E1 &").returncode == 2
    assert run("analyze", "E", "--trials", "0").returncode == 2
    assert run("verify", "--count", "20", "--elements", "5").returncode == 0
    assert run("tables").returncode == 0


@needs_cli
def test_cli_gen():
    first = run("gen", "--count", "5", "--elements", "4", "--seed", "9")
    again = run("gen", "--count", "5", "--elements", "4", "--seed", "9")
    assert first.returncode == 0
    assert first.stdout == again.stdout
    rows = [line.split("\t") for line in first.stdout.splitlines()]
    assert len(rows) == 5
    assert all(len(viscoid.param_names(r[0])) == 4 for r in rows)
    single = run("gen", "--count", "3", "--elements", "1")
    assert all(line.split("\t")[0] in {"E1", "n1"} for line in single.stdout.splitlines())
