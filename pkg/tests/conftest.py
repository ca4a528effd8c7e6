import hypothesis.strategies as st
from hypothesis import settings

from ordsemi.ordinal import Ordinal, nat
from ordsemi.seq import Concat, OmegaRepeat, Single

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def _ordinal_from_spec(spec):
    # spec: list of (exponent_spec, coefficient); sorted and merged into CNF
    terms = {}
    for exp_spec, coef in spec:
        e = _ordinal_from_spec(exp_spec) if isinstance(exp_spec, list) else nat(exp_spec)
        terms[e] = terms.get(e, 0) + coef
    from functools import cmp_to_key
    from ordsemi.ordinal import compare

    keys = sorted(terms, key=cmp_to_key(compare), reverse=True)
    return Ordinal((k, terms[k]) for k in keys)


_exp_specs = st.recursive(
    st.integers(0, 4),
    lambda inner: st.lists(st.tuples(inner, st.integers(1, 3)), min_size=1, max_size=2),
    max_leaves=3,
)

#: ordinals below epsilon-zero with small nested exponents
ordinals = st.lists(st.tuples(_exp_specs, st.integers(1, 4)), max_size=4).map(_ordinal_from_spec)

#: ordinals below w^w (the range of sequence lengths)
small_ordinals = st.lists(st.tuples(st.integers(0, 3), st.integers(1, 4)), max_size=4).map(
    _ordinal_from_spec
)

letters = st.sampled_from(["a", "b", "c"])


def trees(letter=letters, max_leaves=8):
    return st.recursive(
        letter.map(Single),
        lambda inner: st.one_of(
            st.lists(inner, min_size=2, max_size=3).map(lambda cs: Concat(tuple(cs))),
            inner.map(OmegaRepeat),
        ),
        max_leaves=max_leaves,
    )


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {line}")
