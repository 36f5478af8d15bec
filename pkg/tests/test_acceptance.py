"""Acceptance criteria 1-9, each under its time limit, one printed line per criterion."""

import json
import time

import pytest

from electrical_lie import cli
from electrical_lie.suites import SuiteConfig, run_suite


def _run(names):
    reports = []
    for name in names:
        reports += run_suite(name, SuiteConfig(seed=0))
    return reports


def _report(capsys, number, title, ok, elapsed, limit, extra=""):
    status = "PASS" if ok and elapsed <= limit else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number} [{title}]: {status} ({elapsed:.1f}s, limit {limit}s){extra}")
    return status == "PASS"


def _suite_criterion(capsys, number, title, names, limit, extra_check=None):
    start = time.perf_counter()
    reports = _run(names)
    elapsed = time.perf_counter() - start
    bad = [r.summary_line() for r in reports if not r.ok or not r.checks]
    ok = not bad and (extra_check is None or extra_check(reports))
    n = sum(len(r.checks) for r in reports)
    assert _report(capsys, number, title, ok, elapsed, limit, f", {n} checks"), bad


def _titles(reports):
    return [r.title for r in reports]


def test_criterion_1_deformed_serre(capsys):
    def covers(reports):
        t = " ".join(_titles(reports))
        return all(x in t for x in ("A1", "A4", "B3", "C3", "D4", "G2", "RANK2(1,2)", "RANK2(1,3)", "RANK2(2,2)"))

    _suite_criterion(capsys, 1, "deformed Serre relations", ["thm1_2"], 120, covers)


def test_criterion_2_flatness(capsys):
    _suite_criterion(capsys, 2, "flatness", ["thm1_3"], 300)


def test_criterion_3_conjugation(capsys):
    def dprime_values(reports):
        r = next(r for r in reports if r.title.startswith("g'' conjugation"))
        return r.budgets["b"] == "-a1*a2*a3" and any("b_1=-a_1a_2" in c.ref for c in r.checks)

    _suite_criterion(capsys, 3, "conjugation", ["thm1_4", "ex1_10"], 60, dprime_values)


def test_criterion_4_forms(capsys):
    def contents(reports):
        t = _titles(reports)
        return "displayed Gram matrix for n=6" in t and all(f"sp identification for n={n}" in t for n in (4, 6))

    _suite_criterion(capsys, 4, "invariant form", ["thm1_6"], 120, contents)


def test_criterion_5_edge_models(capsys):
    def degenerate(reports):
        return any("(b1,0,b3)" in t for t in _titles(reports))

    _suite_criterion(capsys, 5, "edge models", ["thm1_5", "thm1_7a", "thm1_7b", "thm1_8a", "thm1_8b", "thm1_8c"], 180, degenerate)


def test_criterion_6_decomposition(capsys):
    def example(reports):
        ex = next(r for r in reports if r.title == "sp_6 worked example")
        sp6 = next(r for r in reports if r.title == "sp_6 splitting")
        dim_j = next(c for c in sp6.checks if c.name == "dim J")
        return len([c for c in ex.checks if c.name.startswith("[v_")]) == 6 and dim_j.detail["got"] == 6

    _suite_criterion(capsys, 6, "decomposition", ["thm1_9"], 120, example)


def test_criterion_7_recursion_and_local(capsys):
    _suite_criterion(capsys, 7, "recursion and local relations", ["prop3_1", "prop3_6"], 60)


def test_criterion_8_cross_oracle(capsys):
    _suite_criterion(capsys, 8, "KM vs matrix", ["cross_oracle"], 120)


def test_criterion_9_determinism(capsys, tmp_path):
    start = time.perf_counter()
    bodies = []
    for k in range(2):
        out = tmp_path / f"run{k}.json"
        with capsys.disabled():
            pass
        code = cli.main(["run-all", "--quiet", "--seed", "7", "--out", str(out)])
        capsys.readouterr()
        bodies.append(cli.document_body(json.loads(out.read_text())))
    elapsed = time.perf_counter() - start
    ok = code == 0 and bodies[0] == bodies[1]
    assert _report(capsys, 9, "determinism", ok, elapsed, 600, f", body {len(bodies[0])} bytes")
