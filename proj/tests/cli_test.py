#!/usr/bin/env python3
"""End-to-end checks of the gaugequad command line: exit codes, JSON schemas, determinism."""

import json
import math
import os
import pathlib
import subprocess
import sys
import unittest

import jsonschema
from referencing import Registry, Resource

BINARY = None
SCHEMAS = None


def run(*args, env=None):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=300, env=env)


def load_registry(folder):
    resources = []
    schemas = {}
    for path in sorted(pathlib.Path(folder).glob("*.schema.json")):
        doc = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        resources.append((doc["$id"], Resource.from_contents(doc)))
        schemas[path.name.removesuffix(".schema.json")] = doc
    return Registry().with_resources(resources), schemas


class Cli(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.registry, cls.schemas = load_registry(SCHEMAS)

    def validate(self, schema, text):
        doc = json.loads(text)
        jsonschema.Draft202012Validator(self.schemas[schema], registry=self.registry).validate(doc)
        return doc

    def json_run(self, schema, *args, code=0):
        p = run(*args, "--json")
        self.assertEqual(p.returncode, code, p.stderr)
        return self.validate(schema, p.stdout)

    def test_integrate(self):
        doc = self.json_run("integrate", "integrate", "x^2", "x", "0", "1")
        self.assertEqual(doc["result"]["status"], "CONVERGED")
        self.assertAlmostEqual(doc["result"]["value"], 1 / 3, delta=1e-7)
        self.assertEqual(doc["engine"], "gauge")

    def test_integrate_trace(self):
        doc = self.json_run("integrate", "integrate", "exp(-x)", "x", "0", "1", "--trace")
        self.assertTrue(doc["result"]["trace"])

    def test_sinc(self):
        doc = self.json_run("integrate", "integrate", "sin(x)/x", "x", "0", "inf")
        self.assertEqual(doc["engine"], "exhaustion")
        self.assertEqual(doc["interval"], [0.0, "+inf"])
        self.assertAlmostEqual(doc["result"]["value"], math.pi / 2, delta=1e-7)

    def test_divergent(self):
        doc = self.json_run("integrate", "integrate", "x*cos(x^2)*sin(x)", "x", "0", "inf", code=2)
        self.assertEqual(doc["result"]["status"], "DIVERGED")

    def test_improper(self):
        doc = self.json_run("integrate", "improper", "exp(-x)", "x", "0", "inf")
        self.assertEqual(doc["command"], "improper")
        self.assertAlmostEqual(doc["result"]["value"], 1.0, delta=1e-7)

    def test_usage_errors(self):
        for args in (["integrate", "2**x", "x", "0", "1"],
                     ["integrate", "x+", "x", "0", "1"],
                     ["integrate", "x", "x", "1", "0"],
                     ["integrate", "x"],
                     ["corpus", "run", "no-such-case"],
                     ["partition", "--gauge", "bogus:1", "0", "1"],
                     ["dui", "x*y", "x", "x", "0", "1", "0", "1"]):
            with self.subTest(args=args):
                p = run(*args)
                self.assertEqual(p.returncode, 1, p.stdout + p.stderr)
                self.assertTrue(p.stderr)

    def test_ftc(self):
        doc = self.json_run("ftc", "ftc", "x^2", "x", "0", "1")
        self.assertEqual(doc["report"]["outcome"], "PASS")
        doc = self.json_run("ftc", "ftc", "x^2", "x", "0", "1", "--fprime", "3*x", code=2)
        self.assertEqual(doc["report"]["outcome"], "FAIL")

    def test_dui(self):
        doc = self.json_run("dui", "dui", "x^2*y", "x", "y", "0", "1", "0", "1")
        self.assertEqual(doc["report"]["overall"], "HOLDS_ON_SAMPLES")
        doc = self.json_run("dui", "dui", "3", "x", "y", "0", "1", "0", "1")
        self.assertEqual(doc["f1"], "0")
        for w in doc["report"]["windows"]:
            self.assertEqual(w["lhs"]["value"], 0.0)
            self.assertEqual(w["rhs"]["value"], 0.0)

    def test_dui_cauchy(self):
        p = run("dui", "cos(y^2)*cos(x*y)", "x", "y", "0", "2", "0", "inf", "--json")
        self.assertNotEqual(p.returncode, 0)
        doc = self.validate("dui", p.stdout)
        self.assertNotEqual(doc["report"]["overall"], "HOLDS_ON_SAMPLES")

    def test_interchange(self):
        doc = self.json_run("interchange", "interchange", "x+y", "x", "y", "0", "1", "0", "1",
                            "--window", "0,1")
        self.assertEqual(doc["report"]["overall"], "HOLDS_ON_SAMPLES")
        self.assertAlmostEqual(doc["report"]["windows"][0]["lhs"]["value"], 1.0, delta=1e-6)

    def test_series(self):
        doc = self.json_run("series", "series", "x^(n-1)", "n", "x", "0", "0.5",
                            "--window", "0,0.5")
        self.assertEqual(doc["report"]["overall"], "HOLDS_ON_SAMPLES")
        self.assertAlmostEqual(doc["report"]["windows"][0]["lhs"]["value"], math.log(2), delta=1e-6)

    def test_partition(self):
        doc = self.json_run("partition", "partition", "--gauge", "uniform:0.25", "0", "1")
        self.assertEqual(doc["violations"], [])
        self.assertTrue(doc["fine"])
        cells = doc["cells"]
        self.assertEqual(cells[0]["lo"], 0.0)
        self.assertEqual(cells[-1]["hi"], 1.0)
        for a, b in zip(cells, cells[1:]):
            self.assertEqual(a["hi"], b["lo"])
        for c in cells:
            self.assertLessEqual(c["lo"], c["tag"])
            self.assertLessEqual(c["tag"], c["hi"])
        doc = self.json_run("partition", "partition", "--gauge", "uniform:0.5,4", "-inf", "inf")
        self.assertEqual(doc["cells"][0]["tag"], "-inf")
        self.assertEqual(doc["cells"][-1]["tag"], "+inf")

    def test_corpus(self):
        doc = self.json_run("corpus_list", "corpus", "list")
        names = [c["name"] for c in doc["cases"]]
        self.assertIn("fubini-counterexample", names)
        self.assertEqual(len(names), len(set(names)))
        doc = self.json_run("corpus_run", "corpus", "run", "fubini-counterexample")
        self.assertEqual(doc["reports"][0]["actual"], "FAILS")
        self.assertEqual(doc["reports"][0]["report"]["overall"], "FAILS")
        self.assertTrue(doc["reports"][0]["pass"])
        doc = self.json_run("corpus_run", "corpus", "run", "poly-x", "ftc-square", "--timing")
        self.assertIn("runtime_seconds", doc["reports"][0])

    def test_determinism(self):
        for args in (["integrate", "cos(10*x)*exp(-x)", "x", "0", "3", "--seed", "9"],
                     ["partition", "--gauge", "singular:0.1,0.01", "--singular", "0.3", "0", "1",
                      "--seed", "5"],
                     ["dui", "sin(x*y)", "x", "y", "0", "1", "0", "1", "--tol", "1e-5",
                      "--seed", "3"],
                     ["corpus", "run", "series-exponential", "fubini-counterexample"]):
            with self.subTest(args=args):
                first = run(*args, "--json")
                second = run(*args, "--json")
                self.assertEqual(first.returncode, second.returncode)
                self.assertEqual(first.stdout, second.stdout)

    def test_seed_from_environment(self):
        args = ["partition", "--gauge", "uniform:0.1", "0", "1", "--json"]
        env = dict(os.environ, GAUGEQUAD_SEED="17")
        by_env = run(*args, env=env)
        by_flag = run(*args, "--seed", "17")
        self.assertEqual(by_env.stdout, by_flag.stdout)
        self.assertNotEqual(by_env.stdout, run(*args, "--seed", "18").stdout)

    def test_text_output(self):
        p = run("integrate", "x", "x", "0", "1")
        self.assertEqual(p.returncode, 0)
        self.assertIn("CONVERGED", p.stdout)
        p = run("corpus", "list")
        self.assertIn("fubini-counterexample", p.stdout)


if __name__ == "__main__":
    if len(sys.argv) < 3:
        sys.exit("usage: cli_test.py BINARY SCHEMA_DIR")
    BINARY, SCHEMAS = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1] + sys.argv[3:], verbosity=2)
