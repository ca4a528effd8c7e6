"""The same sequence, bracketed many ways, has one product.

A regrouping cuts a sequence into consecutive blocks.  Multiplying out each
block first and then multiplying the block values must give the product of
the whole sequence.  Here we watch that happen on a few generated cases and
then watch it fail for a table that does not satisfy the laws.

Run with ``python3 demos/02_regroupings.py``.
"""

import random

from ordsemi import (
    GenConfig,
    eval_regrouped,
    evaluate,
    format_regrouping,
    format_tree,
    fuzz,
    gen_regrouping,
    gen_tree,
    get_builtin,
    right_projection_table,
)
from ordsemi.lawcheck import case_shape

S = get_builtin("sat-counter")
cfg = GenConfig(seed=5, max_depth=3, alphabet=("0", "1", "2"))
rng = random.Random(5)

print("sat-counter: saturating addition on {0, 1, 2}")
for _ in range(4):
    t = gen_tree(cfg, rng)
    g = gen_regrouping(cfg, t, rng)
    print(f"  tree       {format_tree(t)}")
    print(f"  regrouping {format_regrouping(g)}  [{case_shape(g)}]")
    print(f"  product {evaluate(t, S)} = regrouped {eval_regrouped(g, S)}")
    print()

# Right projection keeps the last factor.  For omega-indexed products there is
# no last factor, so the omega-power table cannot be made consistent, and
# bracketing differently gives different answers.
print("right projection, regroupings checked without the law checker:")
report = fuzz(right_projection_table(), GenConfig(seed=7), 200, checks=("ord",))
print(report.render())
