import random

import pytest
from hypothesis import given, strategies as st

from ordsemi.engine import canonical_cuts, eval_regrouped, evaluate
from ordsemi.errors import Regenerate
from ordsemi.lawcheck import (
    CASES,
    CHECKS,
    GenConfig,
    case_shape,
    fuzz,
    gen_alt_cuts,
    gen_regrouping,
    gen_tree,
    reassociate,
    run_checks,
)
from ordsemi.ordinal import ONE, ZERO, nat, parse
from ordsemi.semigroup import LeftProjection, get_builtin, right_projection_table, sat_counter_table
from ordsemi.seq import (
    Concat,
    OmegaRepeat,
    Single,
    flatten,
    omega_repeat,
    parse_regrouping,
    parse_tree,
    pointwise_equal,
    single,
    size,
)

from conftest import trees


def test_genconfig_validation():
    with pytest.raises(ValueError):
        GenConfig(max_depth=0)
    with pytest.raises(ValueError):
        GenConfig(alphabet=())
    with pytest.raises(ValueError):
        GenConfig(case_bias="sideways")
    assert GenConfig().with_alphabet(["x"]).alphabet == ("x",)


def test_smallest_tree():
    assert gen_tree(GenConfig(seed=1, max_depth=1)) == single("a")


def test_gen_tree_deterministic_and_bounded():
    cfg = GenConfig(seed=42)
    assert [gen_tree(cfg, random.Random(5)) for _ in range(3)] == [gen_tree(cfg, random.Random(5)) for _ in range(3)]
    rng = random.Random(0)
    for _ in range(200):
        t = gen_tree(cfg, rng)
        # depth 4 keeps lengths below w^4
        assert parse("w^4") > t.length


def test_alt_cuts_affine_rule():
    t = omega_repeat(single(ONE))
    spec = gen_alt_cuts(GenConfig(), t, stride_mult=3, shift=0)
    assert spec.entries(3) == [ZERO, nat(3), nat(6)]


@given(trees(), st.integers(0, 2**32))
def test_alt_cuts_are_valid_and_not_canonical(t, seed):
    if not t.length.is_limit():
        return
    spec = gen_alt_cuts(GenConfig(), t, random.Random(seed))
    spec.validate(t.length)
    assert spec != canonical_cuts(t)


def test_alt_cuts_need_limit():
    with pytest.raises(ValueError):
        gen_alt_cuts(GenConfig(), parse_tree("a^w b"))


@given(trees(), st.integers(0, 2**32), st.sampled_from(("uniform",) + CASES))
def test_regroupings_flatten_to_the_tree(t, seed, bias):
    rng = random.Random(seed)
    try:
        g = gen_regrouping(GenConfig(), t, rng, bias)
    except Regenerate:
        return
    assert pointwise_equal(flatten(g), t)
    if bias != "uniform":
        assert case_shape(g) == bias


def test_succ_a_isolates_the_last_letter():
    t = parse_tree("a^w b")
    g = gen_regrouping(GenConfig(case_bias="succ_a"), t, random.Random(0))
    assert case_shape(g) == "succ_a"
    assert g.children[-1] == Single(single("b"))


def test_bias_mismatch_regenerates():
    with pytest.raises(Regenerate):
        gen_regrouping(GenConfig(case_bias="limit_a"), parse_tree("a b"), random.Random(0))
    with pytest.raises(Regenerate):
        gen_regrouping(GenConfig(case_bias="succ_b"), parse_tree("a"), random.Random(0))


def test_case_shape():
    a = single("a")
    assert case_shape(Single(parse_tree("a b"))) == "succ_b"
    assert case_shape(Concat((Single(a), Single(a)))) == "succ_a"
    assert case_shape(OmegaRepeat(Single(a))) == "limit_b"
    assert case_shape(Single(omega_repeat(a))) == "limit_a"


@given(trees(), st.integers(0, 2**32))
def test_reassociate_preserves_sequence(t, seed):
    u = reassociate(t, random.Random(seed))
    assert pointwise_equal(u, t)


# -- fuzz driver ----------------------------------------------------------------


@pytest.mark.parametrize("name", ["left-projection", "ordinal-sum"])
def test_fuzz_lawful_seed_7(name):
    report = fuzz(get_builtin(name), GenConfig(seed=7), 1000)
    assert report.n_pass == 1000, report.render()


def test_fuzz_right_projection_finds_ord_counterexample():
    report = fuzz(right_projection_table(), GenConfig(seed=7), 1000, checks=("ord",))
    assert not report.passed
    cx = report.counterexample
    assert cx.failure.check == "ord"
    text = report.render()
    assert "first counterexample" in text and "tree:" in text and "regrouping:" in text
    # the shrunk pair reads back and is still a genuine violation
    S = right_projection_table()
    t, g = parse_tree(cx.shrunk_tree), parse_regrouping(cx.shrunk_regrouping)
    assert size(t) <= size(parse_tree(cx.tree))
    assert pointwise_equal(flatten(g), t)
    vg = eval_regrouped(g, S)
    assert evaluate(t, S) != vg or evaluate(flatten(g), S) != vg


def test_fuzz_report_is_deterministic():
    S = sat_counter_table()
    r1 = fuzz(S, GenConfig(seed=11), 150)
    r2 = fuzz(S, GenConfig(seed=11), 150)
    assert r1.render() == r2.render()
    assert r1.render_lines() == r2.render_lines()


def test_render_lines_format():
    report = fuzz(LeftProjection(), GenConfig(seed=2), 5)
    lines = report.render_lines().splitlines()
    assert len(lines) == 5
    for i, line in enumerate(lines):
        idx, shape, verdict = line.split()[1:]
        assert line.startswith("case ") and int(idx) == i
        assert shape in CASES and verdict == "pass"


def test_fuzz_biased_coverage():
    for bias in CASES:
        report = fuzz(LeftProjection(), GenConfig(seed=3, case_bias=bias), 40)
        assert report.coverage_counts()[bias] == 40


def test_fuzz_argument_errors():
    with pytest.raises(ValueError):
        fuzz(LeftProjection(), GenConfig(), 0)
    with pytest.raises(ValueError):
        fuzz(LeftProjection(), GenConfig(), 1, checks=("nonsense",))


def test_run_checks_flags_right_projection():
    S = right_projection_table()
    cfg = GenConfig(alphabet=("a", "b"))
    t = parse_tree("(a^w b)^w")
    g = Single(t)
    f = run_checks(S, cfg, t, g, seed=0, checks=CHECKS)
    assert f is not None


def test_strings_fuzz_notes_demo_grade():
    report = fuzz(get_builtin("strings:ab"), GenConfig(seed=1, max_depth=3), 30)
    assert report.passed
    assert "demo-grade equality" in report.render()
