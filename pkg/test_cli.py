import unittest
import sys
import os
import io
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, dispatch, parse_weights, UsageError
from weights import Weight


def run(*argv: str):
    """Exit code and stdout of one CLI call"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = dispatch(list(argv))
    return code, out.getvalue()


class TestCommands(unittest.TestCase):
    """One JSON document per command on stdout"""

    def test_jantzen(self):
        code, out = run("jantzen", "--p", "3", "--", "3", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), '{"irreducible":false,"failing_pairs":[[1,2]]}')

    def test_reflect(self):
        code, out = run("reflect", "--p", "5", "--i", "1", "--j", "4", "--k", "1", "--", "2", "0", "0", "-1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "[1,0,0,0]")

    def test_reduce(self):
        code, out = run("reduce", "--p", "3", "--parity", "0", "--", "1", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["end"], {"weight": [0, 0], "parity": 1})

    def test_defect_and_f0(self):
        self.assertEqual(json.loads(run("defect", "--p", "3", "--", "2", "0")[1]), {"defect": 1})
        document = json.loads(run("f0", "--p", "3", "--", "2", "0")[1])
        self.assertTrue(document["f0"])
        self.assertEqual(document["mode"], "nonstrict")
        strict = json.loads(run("f0", "--p", "3", "--strict-eligibility", "--", "2", "0")[1])
        self.assertFalse(strict["f0"])
        self.assertEqual(strict["mode"], "strict")

    def test_even_linked(self):
        code, out = run("even-linked", "--p", "3", "--", "3", "0", "/", "2", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"even_linked": True})

    def test_good_filtration(self):
        code, out = run("good-filtration", "--", "1", "0", "0")
        self.assertEqual(json.loads(out), [[1, 1, 1], [2, 1, 0]])

    def test_neighbors(self):
        code, out = run("neighbors", "--p", "3", "--cap", "2", "--", "0", "0")
        targets = [row["target"] for row in json.loads(out)]
        self.assertIn({"weight": [1, 1], "parity": 1}, targets)
        self.assertIn({"weight": [2, -2], "parity": 0}, targets)

    def test_replay(self):
        code, out = run("replay", "--recipe", "lem7_2_n_even", "--a", "0", "--i", "1", "--n", "4", "--p", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["certificate"]["end"]["weight"], [1, 1, 1, 0])

    def test_replay_grid(self):
        code, out = run("replay", "--grid", "--recipe", "lem7_2_n_even", "--a-range", "0:0",
                        "--n-range", "4:4", "--primes", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["counts"]["lem7_2_n_even"]["succeeded"], 2)

    def test_block_census(self):
        with tempfile.TemporaryDirectory() as tmp:
            table = os.path.join(tmp, "census.csv")
            dot = os.path.join(tmp, "census.dot")
            code, out = run("block-census", "--p", "3", "--n", "2", "--export", table, "--dot", dot)
            self.assertEqual(code, EXIT_OK)
            self.assertTrue(json.loads(out)["assertions_hold"])
            self.assertTrue(os.path.exists(table))
            with open(dot, 'r', encoding='utf-8') as f:
                self.assertTrue(f.read().startswith('graph "p3_n2" {'))

    def test_graph(self):
        code, out = run("graph", "--p", "3", "--n", "2", "--lo", "-1", "--hi", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn('"(0,0)|0"', out)


class TestVerifyChain(unittest.TestCase):
    """Certificates written by `reduce` replay through `verify-chain`"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, document) -> str:
        path = os.path.join(self.tmp.name, "chain.json")
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(document, f)
        return path

    def test_round_trip(self):
        _, out = run("reduce", "--p", "3", "--", "2", "0")
        code, verdict = run("verify-chain", "--file", self._write(json.loads(out)))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(verdict), {"ok": True})

    def test_tampered(self):
        _, out = run("reduce", "--p", "3", "--", "2", "0")
        document = json.loads(out)
        document["end"]["parity"] = 1 - document["end"]["parity"]
        code, verdict = run("verify-chain", "--file", self._write(document))
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(verdict)["ok"])

    def test_unreadable_file(self):
        code, _ = run("verify-chain", "--file", os.path.join(self.tmp.name, "missing.json"))
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_prime(self):
        document = {"p": 0, "start": {"weight": [1, 1], "parity": 0},
                    "steps": [{"kind": "odd_down_pair", "i": 1}],
                    "end": {"weight": [0, 0], "parity": 1}}
        for p in (0, 1, 9):
            document["p"] = p
            code, verdict = run("verify-chain", "--file", self._write(document))
            self.assertEqual(code, EXIT_FAILED)
            self.assertEqual(json.loads(verdict)["failing_step"], 0)

    def test_malformed_fields(self):
        base = {"p": 3, "start": {"weight": [1, 1], "parity": 0},
                "steps": [{"kind": "odd_down_pair", "i": 1}],
                "end": {"weight": [0, 0], "parity": 1}}
        for field_name, value in (("start", {"weight": [1, 1], "parity": "x"}),
                                  ("steps", [{"kind": "odd_down_pair", "i": "one"}]),
                                  ("p", "three")):
            code, out = run("verify-chain", "--file", self._write({**base, field_name: value}))
            self.assertEqual(code, EXIT_USAGE, field_name)
            self.assertEqual(json.loads(out)["error"], "WeightError")


class TestUsage(unittest.TestCase):
    """Exit code 2 on bad input, 0 on --help"""

    def test_usage_errors(self):
        cases = [
            (),
            ("jantzen", "--p", "3", "--", "3", "x"),
            ("jantzen", "--p", "4", "--", "3", "0"),
            ("jantzen", "--p", "9", "--", "3", "0"),
            ("jantzen", "--p", "3", "--", "0", "1"),
            ("jantzen", "--p", "3", "--", "5"),
            ("even-linked", "--p", "3", "--", "1", "0"),
            ("replay", "--recipe", "lem5_3", "--i", "2", "--n", "4", "--p", "5"),
            ("replay", "--recipe", "lem5_3"),
            ("block-census", "--p", "3", "--n", "2", "--lo", "1"),
            ("reduce", "--p", "3", "--budget", "0", "--", "1", "1"),
        ]
        for argv in cases:
            code, _ = run(*argv)
            self.assertEqual(code, EXIT_USAGE, argv)

    def test_budget_exhaustion_is_a_failure(self):
        code, out = run("reduce", "--p", "3", "--budget", "1", "--", "4", "0")
        self.assertIn(code, (EXIT_OK, EXIT_FAILED))
        if code == EXIT_FAILED:
            self.assertEqual(json.loads(out)["error"], "BudgetExhausted")

    def test_help(self):
        code, _ = run("--help")
        self.assertEqual(code, EXIT_OK)

    def test_parse_weights(self):
        self.assertEqual(parse_weights(["1", "0", "/", "2", "-1"]), [Weight.of(1, 0), Weight.of(2, -1)])
        with self.assertRaises(UsageError):
            parse_weights(["1"])


if __name__ == "__main__":
    unittest.main()
