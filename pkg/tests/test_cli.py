import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from klr.cli import SCHEMAS, parse_partition, parse_root, run
from klr.roots import lex_order, type_a

INVOCATIONS = {
    "roots": ["roots", "--type", "A2"],
    "order": ["order", "--type", "A3"],
    "partitions": ["partitions", "--alpha", "1,1,1"],
    "shuffle": ["shuffle", "--u", "1,2", "--v", "2"],
    "char": ["char", "--shape", "1,2|3"],
    "irreducible": ["irreducible", "--partition", "a2,a1", "--type", "A2", "--module"],
    "standard": ["standard", "--partition", "1:2", "--type", "A2", "-D", "6"],
    "decompose": ["decompose", "--proper-standard", "a2,a1", "--type", "A2"],
    "ext": ["ext", "--sigma", "pm", "--tau", "mm"],
    "resolution": ["resolution", "--shape", "1|2", "--type", "A2"],
    "dimension": ["dimension", "--alpha", "1,1", "--type", "A2", "-D", "6"],
    "crystal": ["crystal", "--partition", "a2,a1", "--op", "f", "--i", "1", "--type", "A2"],
    "reduce-mod-p": ["reduce-mod-p", "--partition", "2:3,a1", "--p", "2"],
    "verify": ["verify", "--shape", "1,2|3"],
}


def invoke(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


def payload(argv):
    code, text = invoke(argv)
    assert code == 0
    return json.loads(text)


@pytest.mark.parametrize("command", sorted(INVOCATIONS))
def test_every_subcommand_emits_valid_json(command):
    body = payload(INVOCATIONS[command])
    assert body["command"] == command
    jsonschema.validate(body, SCHEMAS[command])


def test_every_subcommand_is_exercised():
    assert set(INVOCATIONS) == set(SCHEMAS)


@pytest.mark.parametrize("command", sorted(INVOCATIONS))
def test_output_is_deterministic(command):
    assert invoke(INVOCATIONS[command]) == invoke(INVOCATIONS[command])


def test_output_is_stable_across_hash_seeds():
    argv = ["klr", *INVOCATIONS["decompose"]]
    outs = set()
    for seed in ("0", "1", "12345"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        res = subprocess.run([sys.executable, "-m", "klr.cli", *argv[1:]], capture_output=True, text=True, env=env, check=True)
        outs.add(res.stdout)
    assert len(outs) == 1


def test_text_format():
    code, text = invoke(["order", "--type", "A2", "--format", "text"])
    assert code == 0
    assert text.startswith("command: \"order\"")


class TestValues:
    def test_ext_matches_closed_form(self):
        body = payload(["ext", "--sigma", "+-+", "--tau", "p-m"])
        assert body["ext"] == {"1": {"-1": 1}} == body["closed_form"]

    def test_sign_letters_are_interchangeable(self):
        assert invoke(["ext", "--sigma", "pmm", "--tau", "mpm"]) == invoke(["ext", "--sigma=+--", "--tau=-+-"])

    def test_shuffle(self):
        body = payload(["shuffle", "--u", "1", "--v", "2", "--type", "A2"])
        assert body["character"] == [{"word": [1, 2], "coeff": {"0": 1}}, {"word": [2, 1], "coeff": {"1": 1}}]

    def test_partitions_count(self):
        assert payload(["partitions", "--alpha", "1,1,1"])["count"] == 4

    def test_dimension_sides_agree(self):
        assert payload(["dimension", "--alpha", "1,1,1", "-D", "6"])["equal"] is True

    def test_crystal_with_no_result(self):
        body = payload(["crystal", "--partition", "a2,a1", "--op", "e", "--i", "2", "--type", "A2"])
        assert body["result"] is None and body["eps"] == 0

    def test_reduction_row_is_unitriangular(self):
        assert payload(INVOCATIONS["reduce-mod-p"])["unitriangular"] is True

    def test_verify_reports(self):
        assert payload(["verify", "--iota", "1:3"])["report"]["ok"] is True
        assert payload(["verify", "--shape", "1|2,3", "--complex"])["report"]["ok"] is True

    def test_non_lex_order(self):
        body = payload(["order", "--type", "A2", "--order", "2,1,2"])
        assert body["decreasing"] == ["a1", "1:2", "a2"]


class TestTruncation:
    def test_flag(self):
        assert payload(["standard", "--partition", "1:2", "--type", "A2", "-D", "3"])["config"]["truncation"] == 3

    def test_environment_default(self, monkeypatch):
        monkeypatch.setenv("KLR_TRUNCATION", "5")
        assert payload(["standard", "--partition", "1:2", "--type", "A2"])["config"]["truncation"] == 5

    def test_bad_environment_value_falls_back(self, monkeypatch, capsys):
        monkeypatch.setenv("KLR_TRUNCATION", "many")
        assert payload(["roots", "--type", "A1"])["config"]["truncation"] == 20
        assert "KLR_TRUNCATION" in capsys.readouterr().err

    def test_flag_beats_environment(self, monkeypatch):
        monkeypatch.setenv("KLR_TRUNCATION", "5")
        assert payload(["roots", "--type", "A1", "-D", "7"])["config"]["truncation"] == 7


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["nonsense"],
            ["partitions"],
            ["roots", "--type", "Z9"],
            ["shuffle", "--u", "x", "--v", "1"],
            ["irreducible", "--partition", "a1,a2", "--type", "A2"],
            ["irreducible", "--partition", "a2,a1", "--field", "4", "--type", "A2"],
            ["ext", "--sigma", "pp", "--tau", "p"],
            ["ext", "--sigma", "px", "--tau", "pp"],
            ["crystal", "--partition", "a2,a1", "--op", "e", "--i", "7", "--type", "A2"],
            ["standard", "--partition", "1:2", "-D", "-1"],
            ["irreducible", "--partition", "a1", "--type", "B2"],
            ["order", "--type", "A2", "--order", "1,1,2"],
        ],
        ids=lambda a: " ".join(a) or "empty",
    )
    def test_usage_errors_exit_2(self, argv, capsys):
        code, out = invoke(argv)
        assert code == 2
        assert out == ""
        assert capsys.readouterr().err

    def test_domain_error_exits_1(self, capsys):
        code, out = invoke(["reduce-mod-p", "--partition", "a1", "--p", "4"])
        assert code == 1 and out == ""
        assert capsys.readouterr().err.startswith("error:")

    def test_help_exits_0(self, capsys):
        assert invoke(["--help"])[0] == 0

    def test_console_script(self):
        res = subprocess.run(["klr", "roots", "--type", "A1"], capture_output=True, text=True)
        assert res.returncode == 0
        assert json.loads(res.stdout)["roots"][0]["label"] == "a1"


class TestLiterals:
    def test_roots(self):
        c = type_a(3)
        assert parse_root("a2", c) == (0, 1, 0)
        assert parse_root("1:3", c) == (1, 1, 1)
        assert parse_root("(0,1,1)", c) == (0, 1, 1)

    def test_partitions(self):
        o = lex_order(type_a(3))
        assert parse_partition("2:3,a1", o).roots == ((0, 1, 1), (1, 0, 0))
        assert parse_partition("a1^2", o).roots == ((1, 0, 0), (1, 0, 0))
