"""Limit products do not depend on where the cuts go.

A limit-length sequence can be chopped at any increasing sequence of
positions that climbs to its end.  With an eventually periodic chopping
the product is prefix * omega_power(period), whichever chopping is used.
The last part adds an absorbing element to a table and re-checks the laws.

Run with ``python3 demos/03_cuts_and_completion.py``.
"""

from ordsemi import (
    CutSpec,
    OrdinalSum,
    canonical_cuts,
    check_laws,
    cut_chunks,
    eval_with_cuts,
    evaluate,
    format_ordinal,
    format_tree,
    map_letters,
    omega_completion,
    parse,
    parse_tree,
    sat_counter_table,
)

S = OrdinalSum()
t = map_letters(parse_tree("one ([w] (one)^w one)^w"), S.element)
print(f"sequence {format_tree(t, S.letter_text)} of length {format_ordinal(t.length)}")
print(f"product along the evaluator's own cuts: {format_ordinal(evaluate(t, S))}")

for spec in [canonical_cuts(t), CutSpec((0, 2), 3, parse("w*2")), CutSpec((0,), parse("w + 1"), parse("w*3 + 2"))]:
    spec.validate(t.length)
    prefix, period = cut_chunks(t, spec)
    print(f"  cuts {spec}")
    print(f"    {len(prefix)} prefix blocks, period of {len(period)} blocks -> "
          f"{format_ordinal(eval_with_cuts(t, spec, S))}")
print()

base = sat_counter_table()
C = omega_completion(base)
print(f"{base.name} with an absorbing element added: elements {[C.render(x) for x in C.elements]}")
print(check_laws(C).render())
v = evaluate(map_letters(parse_tree("1 (0 Omega)^w"), C.element), C)
print(f"1 (0 Omega)^w -> {C.render(v)}")
