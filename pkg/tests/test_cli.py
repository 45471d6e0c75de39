"""Command line interface: subcommands, exit codes, output stability."""

import io
import json

from bicirc.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from bicirc.graphs import graph6_decode
from bicirc.families import build_spec


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestGenerate:
    def test_petersen(self):
        code, text = run("generate", "GP(5,2)")
        assert code == EXIT_OK
        g = graph6_decode(text.strip())
        assert g.n == 10 and g.edge_count() == 15

    def test_g2p(self):
        code, text = run("generate", "G2p(11,5)")
        assert code == EXIT_OK
        assert graph6_decode(text.strip()).n == 22

    def test_bad_parameters_exit_usage(self):
        code, _ = run("generate", "GP(5,5)")
        assert code == EXIT_USAGE

    def test_unknown_family_exit_usage(self):
        code, _ = run("generate", "Nope(3)")
        assert code == EXIT_USAGE

    def test_deterministic(self):
        first = run("generate", "BC(12;;0,1,2,4,9;)")
        second = run("generate", "BC(12;;0,1,2,4,9;)")
        assert first == second

    def test_g6_passthrough(self):
        code, text = run("generate", "g6:Bw")
        assert code == EXIT_OK and text.strip() == "Bw"


class TestCheck:
    def test_circulant_false_exit_code(self):
        code, text = run("check", "G2p(13,3)", "circulant")
        assert code == EXIT_FAIL
        assert "circulant: False" in text

    def test_circulant_true(self):
        code, text = run("check", "G2p(13,4)", "circulant")
        assert code == EXIT_OK

    def test_aut_order(self):
        code, text = run("check", "BC(12;;0,1,2,4,9;)", "aut-order")
        assert code == EXIT_OK
        assert "aut-order: 480" in text

    def test_arc_transitive_knn_minus(self):
        code, text = run("check", "KnnMinus(6)", "arc-transitive")
        assert code == EXIT_OK
        assert "arc-transitive: True" in text

    def test_props_default(self):
        code, text = run("check", "Petersen")
        assert code == EXIT_OK
        assert "girth" in text

    def test_json_format(self):
        code, text = run("--format", "json", "check", "GP(5,2)", "aut-order", "rank")
        assert code == EXIT_OK
        payload = json.loads(text)
        assert payload["results"]["aut-order"] == 120
        assert payload["results"]["rank"] == 3

    def test_unknown_predicate(self):
        code, _ = run("check", "Petersen", "frobnicate")
        assert code == EXIT_USAGE


class TestReduce:
    def test_gp_24_5(self):
        code, text = run("reduce", "GP(24,5)")
        assert code == EXIT_OK
        payload = json.loads(text)
        assert payload["aut_order"] == 288 and payload["verdict"] == "pass"
        six = [c for c in payload["candidates"] if c["N_order"] == 6]
        assert six and six[0]["identified"] == "KnnMinus(4)"

    def test_bc24(self):
        code, text = run("reduce", "BC(24;;0,1,3,11,20;)")
        assert code == EXIT_OK
        payload = json.loads(text)
        assert payload["aut_order"] == 960
        four = [c for c in payload["candidates"] if c["N_order"] == 4]
        assert four and four[0]["identified"] == "KnnMinus(6)"

    def test_gp_10_3(self):
        code, text = run("reduce", "GP(10,3)")
        payload = json.loads(text)
        assert payload["aut_order"] == 240
        two = [c for c in payload["candidates"] if c["N_order"] == 2]
        assert two and two[0]["identified"] == "Petersen"

    def test_json_stable(self):
        assert run("reduce", "GP(8,3)") == run("reduce", "GP(8,3)")


class TestVerifyTables:
    def test_table_one(self):
        code, text = run("verify-tables", "1")
        assert code == EXIT_OK
        lines = [l for l in text.splitlines() if l.startswith("[")]
        assert len(lines) == 12
        assert all(l.startswith("[pass]") for l in lines)

    def test_lemmas(self):
        code, text = run("verify-tables", "lemmas")
        assert code == EXIT_OK
        assert all(l.startswith("[pass]") for l in text.splitlines() if l.startswith("["))


class TestCensusCommand:
    def test_small_census(self):
        code, text = run("--format", "json", "census", "4", "3")
        assert code == EXIT_OK
        payload = json.loads(text)
        assert any(entry["vertices"] == 4 and entry["valency"] == 3 for entry in payload)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("BICIRC_FORMAT", "json")
        code, text = run("check", "Petersen", "aut-order")
        assert code == EXIT_OK
        assert json.loads(text)["results"]["aut-order"] == 120


class TestUsage:
    def test_no_command(self):
        code, _ = run()
        assert code == EXIT_USAGE

    def test_bad_flag_value(self):
        code, _ = run("--cap", "-5", "check", "Petersen")
        assert code == EXIT_USAGE
