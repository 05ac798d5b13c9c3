import re

import pytest
from hypothesis import given, strategies as st

from essdim.bounds import (
    Alg,
    SL,
    BoundConflictError,
    BoundRecord,
    best_bounds,
    closed_forms,
    literature_constants,
    primary_decomposition,
    sandwich,
    select_best,
    summarize,
)
from essdim.constructions import build


def pick(records, quantity, kind, char):
    return [r.value for r in records if r.quantity == quantity and r.kind == kind and r.char == char]


# -- closed forms ---------------------------------------------------------------

def test_closed_forms_n16():
    recs = closed_forms(16)
    assert 16 * 16 // 16 + 8 == 24 in pick(recs, "ed_p", "upper", "not2")
    assert 3 * 8 == 24 in pick(recs, "ed_p", "lower", "not2")


def test_closed_forms_n8():
    recs = closed_forms(8)
    assert 7 * 6 // 2 == 21 in pick(recs, "ed", "upper", "not2")
    assert 64 // 4 == 16 in pick(recs, "ed_p", "upper", "equals2")


@pytest.mark.parametrize("n", [6, 2, 1, 12])
def test_closed_forms_out_of_range(n):
    with pytest.raises(ValueError):
        closed_forms(n)


# -- reduction --------------------------------------------------------------------

@pytest.mark.parametrize("n, q", [(24, 8), (16, 16), (2, 2), (7, 1)])
def test_primary_decomposition_examples(n, q):
    assert primary_decomposition(n) == q


def test_primary_decomposition_all_small():
    for n in range(1, 10_001):
        q = primary_decomposition(n)
        assert q & (q - 1) == 0 and n % q == 0 and (n // q) % 2 == 1


# -- literature -------------------------------------------------------------------

def test_literature_degree4():
    assert summarize(literature_constants(), "ed_p", Alg(4), "not2", 2) == (4, 4)


def test_literature_degree8_char2():
    recs = literature_constants()
    assert summarize(recs, "ed_p", Alg(8), "equals2", 2) == (3, None)
    assert summarize(recs, "ed", Alg(8), "equals2") == (None, 10)


def test_literature_sl4_mu2():
    assert summarize(literature_constants(), "ed", SL(4, 2), "not2") == (5, 5)


# -- sandwich --------------------------------------------------------------------

def test_sandwich_sl8_mu2():
    recs = sandwich(8, 2)
    assert summarize(recs, "ed", SL(8, 2), "not2") == (9, 9)
    assert summarize(recs, "ed_p", SL(8, 2), "not2", 2) == (9, 9)


def test_sandwich_sl16_mu2():
    assert summarize(sandwich(16, 2), "ed_p", SL(16, 2), "not2", 2) == (25, 25)


def test_sandwich_upper_only_shape():
    rec = BoundRecord("ed", Alg(12, 3), "upper", 40, "ledger-rule", "test")
    out = sandwich(12, 3, [rec])
    assert summarize(out, "ed", SL(12, 3), "not2") == (None, 41)


def test_sandwich_needs_divisibility():
    with pytest.raises(ValueError):
        sandwich(8, 3, [])


# -- best bounds ------------------------------------------------------------------

@pytest.mark.parametrize(
    "n, char, best",
    [
        (16, "not2", (24, 24)),
        (8, "not2", (8, 8)),
        (4, "not2", (4, 4)),
        (32, "not2", (64, 80)),
        (64, "not2", (160, 288)),
        (8, "equals2", (3, 10)),
        (24, "not2", (8, 8)),
        (3, "not2", (0, 0)),
    ],
)
def test_best_bounds(n, char, best):
    assert best_bounds(n, char).best == best


def test_n16_provenance():
    t = best_bounds(16, "not2")
    assert t.upper.provenance == "construction-verified"
    assert t.upper.chain[-1].startswith("section5(4) verdict")
    assert t.lower.provenance == "literature" and "general lower bound" in t.lower.source


def test_n8_uses_literature_exact():
    t = best_bounds(8, "not2")
    assert t.upper.provenance == t.lower.provenance == "literature"


def test_n24_reduction_note():
    t = best_bounds(24, "not2")
    assert t.reduced_n == 8 and any("-> Alg(8,2)" in note for note in t.notes)


def test_unsupported_prime():
    with pytest.raises(ValueError):
        best_bounds(16, "not2", p=3)


def test_conflict_is_reported():
    bogus = BoundRecord("ed_p", Alg(16), "lower", 99, "ledger-rule", "bogus", p=2, char="not2")
    with pytest.raises(BoundConflictError, match="bogus"):
        best_bounds(16, "not2", extra_records=[bogus])


@pytest.mark.parametrize("n", [8, 16, 32, 64])
@pytest.mark.parametrize("char", ["not2", "equals2"])
def test_lower_never_exceeds_upper(n, char):
    lo, up = best_bounds(n, char).best
    assert lo is None or up is None or lo <= up


@pytest.mark.parametrize("n", [8, 16, 32])
def test_construction_records_are_reproducible(n):
    t = best_bounds(n, "not2")
    verified = [r for r in t.records if r.provenance == "construction-verified"]
    assert verified
    for rec in verified:
        name, param = re.fullmatch(r"([\w-]+)\((\d+)\)", rec.source).groups()
        c = build(name, int(param))
        v = c.verify()
        assert c.passed(v) and v.bound == rec.value


@given(
    st.sampled_from([8, 16, 32]),
    st.sampled_from(["not2", "equals2"]),
    st.integers(0, 1000),
    st.lists(st.tuples(st.sampled_from(["lower", "upper"]), st.integers(0, 400)), max_size=5),
)
def test_adding_records_is_monotone(n, char, split_seed, extra):
    base = best_bounds(n, char)
    lo, up = base.best
    # a split point inside the current interval keeps every added record consistent
    floor = lo if lo is not None else 0
    ceil = up if up is not None else floor + 400
    split = floor + split_seed % (ceil - floor + 1)
    recs = [
        BoundRecord("ed_p", Alg(n), kind, min(v, split) if kind == "lower" else max(v, split),
                    "ledger-rule", "extra", p=2, char=char)
        for kind, v in extra
    ]
    lo2, up2 = best_bounds(n, char, extra_records=recs).best
    if lo is not None:
        assert lo2 >= lo
    if up is not None:
        assert up2 <= up


def test_select_best_ignores_other_characteristics():
    recs = [
        BoundRecord("ed", Alg(8), "upper", 1, "ledger-rule", "x", char="equals2"),
        BoundRecord("ed", Alg(8), "upper", 5, "ledger-rule", "y", char="not2"),
    ]
    lo, up = select_best(recs, "ed", Alg(8), "not2")
    assert lo is None and up.value == 5
