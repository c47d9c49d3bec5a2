#!/usr/bin/env python3
"""Black-box tests of the command-line tool: exit codes, output formats, report schema."""
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BIN, FIXTURES, SCHEMA = sys.argv[1:4]


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env, timeout=120)


def fixture(name):
    return os.path.join(FIXTURES, name)


class Analyze(unittest.TestCase):
    def test_fig1_finite(self):
        r = run("analyze", fixture("fig1.koat"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("RB(t0) = 1", r.stdout)
        self.assertIn("RB(t1) = x4", r.stdout)
        self.assertIn("class: O(n^", r.stdout)

    def test_fig1_without_twn_is_omega(self):
        r = run("analyze", fixture("fig1.koat"), "--no-twn")
        self.assertEqual(r.returncode, 2)
        self.assertIn("RB(t3) = ω", r.stdout)

    def test_twn_only_on_linear_loop(self):
        r = run("analyze", fixture("countdown.koat"), "--no-ranking", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        rep = json.loads(r.stdout)
        self.assertTrue(rep["finite"])
        self.assertEqual(rep["transitions"][1]["provenance"]["kind"], "twn")

    def test_nonterminating(self):
        r = run("analyze", fixture("nonterm.koat"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("nonterminating from", r.stdout)

    def test_mprf_depth_note(self):
        r = run("analyze", fixture("countdown.koat"), "--mprf-depth", "3")
        self.assertEqual(r.returncode, 0)
        self.assertIn("NotImplemented", r.stderr)

    def test_input_errors(self):
        self.assertEqual(run("analyze", fixture("missing.koat")).returncode, 3)
        with tempfile.NamedTemporaryFile("w", suffix=".koat", delete=False) as f:
            f.write("(GOAL COMPLEXITY)\n(STARTTERM (FUNCTIONSYMBOLS l0))\n(VAR x)\n(RULES\n l0(x) -> l1(x/2)\n)\n")
        try:
            r = run("analyze", f.name)
            self.assertEqual(r.returncode, 3)
            self.assertIn("5:", r.stderr)
        finally:
            os.unlink(f.name)
        self.assertEqual(run("analyze").returncode, 3)
        self.assertEqual(run("frobnicate").returncode, 3)

    def test_solver_environment_error(self):
        r = run("analyze", fixture("fig1.koat"), "--smt-solver", "/nonexistent/z3")
        self.assertEqual(r.returncode, 4)
        env = dict(os.environ, POLYBOUND_SMT="/nonexistent/z3")
        self.assertEqual(run("analyze", fixture("fig1.koat"), env=env).returncode, 4)

    def test_timeout_degrades_to_omega(self):
        r = run("analyze", fixture("fig1.koat"), "--smt-timeout", "0")
        self.assertEqual(r.returncode, 2)


class Simulate(unittest.TestCase):
    def test_fig1_trace(self):
        r = run("simulate", fixture("fig1.koat"), "--state", "x1=7,x2=5,x3=1,x4=1,x5=3")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "(l0,(7,5,1,1,3))")
        self.assertEqual(lines[2], "  -> t1 (l2,(1,3,1,1,3))")
        self.assertEqual(lines[4], "  -> t3 (l2,(16,163,1,1,3))")
        self.assertIn("rc = 5", lines)

    def test_divergence(self):
        r = run("simulate", fixture("nonterm.koat"), "--state", "x=1", "--max-steps", "50")
        self.assertEqual(r.returncode, 2)
        self.assertIn("exceeded", r.stdout)

    def test_bad_state(self):
        self.assertEqual(run("simulate", fixture("nonterm.koat"), "--state", "y=1").returncode, 3)
        self.assertEqual(run("simulate", fixture("nonterm.koat"), "--state", "x=abc").returncode, 3)


class ClosedForm(unittest.TestCase):
    def test_loop1(self):
        r = run("closed-form", fixture("loop1.koat"), "--transition", "t1")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout.splitlines(),
                         ["n0 = 0", "x1: x1 * 4^n", "x2: (x2 - x3^3) * 9^n + x3^3", "x3: x3"])

    def test_not_twn(self):
        self.assertEqual(run("closed-form", fixture("fig1.koat"), "--transition", "t2").returncode, 3)
        self.assertEqual(run("closed-form", fixture("fig1.koat"), "--transition", "t9").returncode, 3)


class Schema(unittest.TestCase):
    def test_reports_validate(self):
        with open(SCHEMA) as f:
            schema = json.load(f)
        jsonschema.Draft202012Validator.check_schema(schema)
        names = sorted(n for n in os.listdir(FIXTURES) if n.endswith(".koat"))
        self.assertGreaterEqual(len(names), 8)
        for name in names:
            r = run("analyze", fixture(name), "--format", "json")
            self.assertIn(r.returncode, (0, 2), name + r.stderr)
            jsonschema.validate(json.loads(r.stdout), schema)

    def test_deterministic(self):
        a = run("analyze", fixture("fig1.koat"), "--format", "json", "--no-timings").stdout
        b = run("analyze", fixture("fig1.koat"), "--format", "json", "--no-timings").stdout
        self.assertEqual(a, b)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], *sys.argv[4:]], verbosity=2)
