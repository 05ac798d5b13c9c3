"""Acceptance criteria, one test per criterion.

A pass/fail line per criterion is printed in the terminal summary.  Run with
``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import json
import random
import time

import pytest

from essdim.bounds import SL, best_bounds, sandwich, summarize
from essdim.cli import main
from essdim.constructions import build, lemma32i, section5, verify_usss
from essdim.equivariant import WellDefinednessError
from essdim.linalg import IntMatrix, hnf, snf
from essdim.perm import Permutation

criterion = pytest.mark.criterion


def _moved_vector_witnesses(verdict):
    return [w for w in verdict.witnesses if "moved" in w]


@criterion("1", "pair/singleton construction under S_n, n = 3..10")
def test_criterion_1_lemma32i():
    t0 = time.perf_counter()
    for n in range(3, 11):
        c = build("lemma32i", n)
        strategy = "exhaustive" if n <= 8 else "witness"
        v = c.verify(strategy)
        assert v.passed and c.passed(v), (n, v.failure_witnesses)
        assert v.strategy == strategy
        assert v.bound == (n * n - n) // 2
        moved = _moved_vector_witnesses(v)
        assert moved and all(w["moved"] for w in moved)
        if n >= 9:
            # 2f{a,b} + ga + gb, moved by the 3-cycle
            assert moved[0]["element"] == "(1 2 3)"
            assert moved[0]["moves"].startswith("2f{") and moved[0]["moves"].count(" + g") == 2
    assert build("lemma32i", 8).verify("witness").bound == 28
    assert time.perf_counter() - t0 < 30


@criterion("2", "pairs modulo the all-ones vector, n = 6, 8")
def test_criterion_2_lemma32ii():
    t0 = time.perf_counter()
    bounds = {}
    for n in (6, 8):
        c = build("lemma32ii", n)
        v = c.verify()
        assert c.passed(v), v.failure_witnesses
        assert v.bound == (n * n - 3 * n + 2) // 2
        bounds[n] = v.bound
    assert bounds == {6: 10, 8: 21}
    assert bounds[8] == (8 - 1) * (8 - 2) // 2
    assert time.perf_counter() - t0 < 10


@criterion("3", "cross pairs under the Sylow 2-subgroup, r = 2, 3, 4")
def test_criterion_3_lemma33():
    t0 = time.perf_counter()
    for r in (2, 3, 4):
        c = build("lemma33", r)
        ex = c.verify("exhaustive")
        wi = c.verify("witness")
        assert c.passed(ex) and c.passed(wi)
        assert ex.bound == 2 ** (2 * r - 2)
        assert ex.fields() == wi.fields()
        half = 2 ** (r - 1)
        sigma = Permutation.from_cycles(2 ** r, [(2 * t, 2 * t + 1) for t in range(half)])
        moved = _moved_vector_witnesses(wi)
        assert moved == [{"element": sigma.cycle_str(), "moves": f"2f{{1,{half + 1}}} + g1 + g{half + 1}", "moved": True}]
    assert time.perf_counter() - t0 < 60


@criterion("4", "coset-module construction onto J_r, r = 3, 4, 5")
def test_criterion_4_section5():
    t0 = time.perf_counter()
    for r in (3, 4, 5):
        c = build("section5", r)
        v = c.verify()
        assert v.strategy == "exhaustive"
        assert v.well_defined and v.surjective and v.faithful_on_kernel
        assert c.component_ranks == (2 ** (r - 1),) * 3 + (2 ** (2 * r - 4),)
        assert v.bound == 2 ** (r - 1) + 2 ** (2 * r - 4)
        assert c.checks["2x = (t1t2 x + x) - t1(t2 x + x) + (t1 x + x)"]
        if r == 3:
            assert v.fields() == build("example-r3", 3).verify().fields()
    assert time.perf_counter() - t0 < 120


@criterion("5", "structural claims about H_r, r = 3, 4, 5")
def test_criterion_5_usss():
    t0 = time.perf_counter()
    for r in (3, 4, 5):
        rep = verify_usss(r)
        assert set(rep.claims) == {"i", "ii", "iii", "iv"}
        assert rep.passed
        assert rep.claims["iii"].details["hnf_equal"]
    assert time.perf_counter() - t0 < 60


@criterion("6", "best bounds for degree 16 are (24, 24)")
def test_criterion_6_degree16():
    t = best_bounds(16, "not2", 2)
    assert t.best == (24, 24)
    assert t.upper.provenance == "construction-verified"
    assert t.upper.chain[-1].startswith("section5(4) verdict")
    assert t.lower.provenance == "literature"
    assert t.lower.source == "general lower bound (log2(n)-1)n/2"


@criterion("7", "SL_n/mu_2 transfer and characteristic-2 degree 8")
def test_criterion_7_ledger():
    assert summarize(sandwich(8, 2), "ed", SL(8, 2), "not2") == (9, 9)
    assert summarize(sandwich(16, 2), "ed_p", SL(16, 2), "not2", 2) == (25, 25)
    assert best_bounds(8, "equals2", 2).best == (3, 10)


@criterion("8", "witness and exhaustive faithfulness agree")
def test_criterion_8_strategy_agreement():
    cases = [("lemma32i", n) for n in range(3, 9)] + [
        ("lemma32ii", 6), ("lemma32ii", 8),
        ("lemma33", 2), ("lemma33", 3), ("lemma33", 4),
        ("section5", 3), ("section5", 4), ("section5", 5),
        ("example-r3", 3),
    ]
    discrepancies = []
    checked = 0
    for name, p in cases:
        c = build(name, p)
        ex = c.verify("exhaustive")
        if ex.faithfulness.checked + 1 > 10 ** 5:
            continue
        checked += 1
        wi = c.verify("witness")
        if ex.faithful_on_kernel != wi.faithful_on_kernel:
            discrepancies.append((name, p))
    assert checked == len(cases)
    assert discrepancies == []


def _random_unimodular(n, rng):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            for row in U:
                row[i] = -row[i]
        else:
            q = rng.randint(-2, 2)
            for row in U:
                row[i] += q * row[j]
    return IntMatrix(U)


@criterion("9", "normal forms on 500 random matrices")
def test_criterion_9_normal_forms():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(500):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        M = IntMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        s = snf(M)
        ok = s.U.is_unimodular() and s.V.is_unimodular() and s.U @ M @ s.V == s.S
        ok = ok and all(b % a == 0 for a, b in zip(s.factors, s.factors[1:]))
        h = hnf(M)
        ok = ok and M @ h.U == h.H and h.U.is_unimodular()
        ok = ok and hnf(M @ _random_unimodular(c, rng)).H == h.H
        failures += not ok
    assert failures == 0
    assert time.perf_counter() - t0 < 30


@criterion("10a", "negative control: corrupted image is ill-defined, exit 1")
def test_criterion_10a_corrupted_image(capsys):
    with pytest.raises(WellDefinednessError):
        section5(3, corrupt_first_image=True)
    code = main(["verify", "control-corrupt", "--format", "json"])
    v = json.loads(capsys.readouterr().out)["verdicts"][0]
    assert code == 1 and v["well_defined"] is False


@criterion("10b", "negative control: dropping singletons at n = 4 fails surjectivity, factor 2, exit 1")
def test_criterion_10b_drop_singletons(capsys):
    code = main(["verify", "control-drop-g", "--n", "4", "--format", "json"])
    capsys.readouterr()
    assert code == 1
    v = lemma32i(4, include_singletons=False).verify()
    assert v.surjective is False, f"cokernel factors {v.cokernel_factors}; failures {v.failure_witnesses}"
    assert 2 in v.cokernel_factors


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
