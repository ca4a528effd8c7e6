"""Transfinite sums of ordinals, evaluated step by step.

Run with ``python3 demos/01_ordinal_sums.py``.
"""

from ordsemi import OrdinalSum, evaluate, format_ordinal, map_letters, parse_tree

S = OrdinalSum()


def show(expr):
    t = map_letters(parse_tree(expr), S.element)
    value, trace = evaluate(t, S, trace=True)
    print(f"{expr}")
    print(f"  length {format_ordinal(t.length)}, sum {format_ordinal(value)}")
    for line in trace.render(S).splitlines():
        print(f"    {line}")
    print()


# Adding one in front of omega ones is absorbed; adding it after is not.
show("one (one)^w")
show("(one)^w one")

# A sum of omega copies of omega is omega squared.
show("((one)^w)^w")

# Letters may be any ordinal literal in brackets.
show("[w^2] (one)^w one^3")

# The limit step only looks at the rightmost spine: the prefix and the period.
show("(one)^w ([w] one)^w")
