"""Seeded generators and a fuzz driver for the product laws.

Every generator takes an explicit :class:`random.Random`, so a seed and a
:class:`GenConfig` fix the whole run.  Regroupings are generated to hit
the four proof-case shapes:

``succ_a``   successor length, last block is the single last letter
``succ_b``   successor length, last block is longer
``limit_a``  limit length, the blocks are indexed by a successor ordinal
``limit_b``  limit length, the blocks are indexed by a limit ordinal
"""

from __future__ import annotations

import random
from functools import cmp_to_key
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .engine import (
    CutSpec,
    canonical_cuts,
    cut_chunks,
    eval_regrouped,
    eval_with_cuts,
    evaluate,
)
from .errors import OrdsemiError, Regenerate
from .ordinal import ONE, ZERO, Kind, add, classify, compare, mul_nat, omega_power_of
from .semigroup import Semigroup
from .seq import (
    Concat,
    OmegaRepeat,
    SeqTree,
    Single,
    flatten,
    format_regrouping,
    format_tree,
    letters,
    limit_decompose,
    probe_indices,
    random_below,
    repeat,
    split,
)

CASES = ("succ_a", "succ_b", "limit_a", "limit_b")
BIASES = ("uniform",) + CASES
CHECKS = ("unit", "ord", "coherence", "split", "cuts", "rotation", "trace")


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_depth: int = 4
    max_concat_arity: int = 3
    alphabet: Optional[Tuple[Any, ...]] = None
    case_bias: str = "uniform"

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.max_concat_arity < 2:
            raise ValueError("max_concat_arity must be at least 2")
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", tuple(self.alphabet))
            if not self.alphabet:
                raise ValueError("alphabet must be nonempty")
        if self.case_bias not in BIASES:
            raise ValueError(f"case_bias must be one of {BIASES}")

    def with_alphabet(self, alphabet) -> "GenConfig":
        return GenConfig(self.seed, self.max_depth, self.max_concat_arity, tuple(alphabet), self.case_bias)


def _rng(cfg, rng):
    return rng if rng is not None else random.Random(cfg.seed)


def _group(parts):
    return parts[0] if len(parts) == 1 else Concat(tuple(parts))


# -- trees --------------------------------------------------------------------


def gen_tree(cfg: GenConfig, rng: Optional[random.Random] = None) -> SeqTree:
    rng = _rng(cfg, rng)
    alphabet = cfg.alphabet or ("a", "b", "c")

    def build(depth):
        if depth <= 1 or rng.random() < 0.2:
            return Single(rng.choice(alphabet))
        if rng.random() < 0.55:
            n = rng.randint(2, cfg.max_concat_arity)
            return Concat(tuple(build(depth - 1) for _ in range(n)))
        return OmegaRepeat(build(depth - 1))

    return build(cfg.max_depth)


def _inner_points(rng, t, hi=None, n_random=4):
    # candidate positions 0 < beta < hi, structural ones first
    hi = hi if hi is not None else t.length
    return [p for p in probe_indices(t, n_random, seed=rng.getrandbits(32), unroll=2)
            if p.terms and compare(p, hi) < 0]


def reassociate(t: SeqTree, rng: random.Random) -> SeqTree:
    """Rewrite one random node in a way that keeps the sequence pointwise the same.

    Rewrites: group a run of concat children, splice a nested concat, unroll
    ``c^w`` to ``c c^w``, or merge it to ``(c c)^w``.
    """
    nodes = []

    def walk(u, path):
        nodes.append(path)
        if isinstance(u, Concat):
            for i, c in enumerate(u.children):
                walk(c, path + (i,))
        elif isinstance(u, OmegaRepeat):
            walk(u.child, path + (0,))

    walk(t, ())
    rng.shuffle(nodes)
    for path in nodes:
        u = _get(t, path)
        options = []
        if isinstance(u, Concat):
            if len(u.children) >= 3:
                options.append("group")
            if any(isinstance(c, Concat) for c in u.children):
                options.append("splice")
        elif isinstance(u, OmegaRepeat):
            options += ["unroll", "merge"]
        if not options:
            continue
        op = rng.choice(options)
        if op == "group":
            n = len(u.children)
            i = rng.randrange(n - 1)
            j = rng.randint(i + 2, n if i else n - 1)
            kids = u.children
            new = Concat(kids[:i] + (Concat(kids[i:j]),) + kids[j:])
        elif op == "splice":
            idx = [i for i, c in enumerate(u.children) if isinstance(c, Concat)]
            i = rng.choice(idx)
            kids = u.children
            new = Concat(kids[:i] + kids[i].children + kids[i + 1 :])
        elif op == "unroll":
            new = Concat((u.child, u))
        else:
            new = OmegaRepeat(repeat(u.child, 2))
        return _replace(t, path, new)
    return t


def _get(t, path):
    for i in path:
        t = t.children[i] if isinstance(t, Concat) else t.child
    return t


def _replace(t, path, new):
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Concat):
        kids = list(t.children)
        kids[i] = _replace(kids[i], rest, new)
        return Concat(tuple(kids))
    return OmegaRepeat(_replace(t.child, rest, new))


# -- cut sequences ------------------------------------------------------------


def gen_alt_cuts(cfg: GenConfig, t: SeqTree, rng: Optional[random.Random] = None,
                 stride_mult: Optional[int] = None, shift: Optional[int] = None) -> CutSpec:
    """A valid cut sequence for the limit-length ``t`` other than the canonical one.

    The tail starts ``shift`` periods (plus a random offset) after the
    canonical prefix and advances by ``stride_mult`` periods, optionally plus
    lower-order slack.  Passing both ``stride_mult`` and ``shift`` makes the
    result deterministic.
    """
    rng = _rng(cfg, rng)
    if not t.length.is_limit():
        raise ValueError("gen_alt_cuts needs a limit-length tree")
    canon = canonical_cuts(t)
    prefix, period = limit_decompose(t)
    plen = prefix.length if prefix is not None else ZERO
    lam = period.length
    free = stride_mult is None and shift is None
    m = stride_mult if stride_mult is not None else rng.randint(1, 3)
    s = shift if shift is not None else rng.randint(0, 2)
    for _ in range(2):
        start = add(plen, mul_nat(lam, s)) if s else plen
        if free and rng.random() < 0.5:
            start = add(start, random_below(rng, lam))
        stride = mul_nat(lam, m)
        if free and rng.random() < 0.3 and lam.leading_exponent.terms:
            stride = add(stride, random_below(rng, omega_power_of(lam.leading_exponent)))
        if start.terms:
            extra = {random_below(rng, start) for _ in range(rng.randint(0, 2))} if free else set()
            initial = (ZERO,) + tuple(sorted((x for x in extra if x.terms), key=cmp_to_key(compare)))
        else:
            initial = ()
        spec = CutSpec(initial, start, stride)
        if spec != canon or not free:
            break
        s += 1
    spec.validate(t.length)
    return spec


# -- regroupings --------------------------------------------------------------


def case_shape(g: SeqTree) -> str:
    """Which of the four proof cases the regrouping ``g`` exercises."""
    delta = flatten(g).length
    eta = g.length
    if delta.is_successor():
        last = _last_block(g)
        return "succ_a" if last.length == ONE else "succ_b"
    return "limit_a" if eta.is_successor() else "limit_b"


def _last_block(g):
    while isinstance(g, Concat):
        g = g.children[-1]
    if not isinstance(g, Single):
        raise ValueError("regrouping of limit shape has no last block")
    return g.letter


def _regroup(rng, cfg, t, budget):
    if budget <= 0 or rng.random() < 0.25:
        return Single(t)
    options = []
    if t.length != ONE:
        options.append("split")
    if isinstance(t, Concat):
        options.append("children")
    if isinstance(t, OmegaRepeat):
        options += ["omega", "unroll"]
    if t.length.is_limit():
        options.append("cuts")
    if not options:
        return Single(t)
    op = rng.choice(options)
    sub = budget - 1
    if op == "children":
        kids = t.children
        n = len(kids)
        cut_points = sorted(rng.sample(range(1, n), rng.randint(1, n - 1)))
        bounds = [0] + cut_points + [n]
        groups = [_group(list(kids[a:b])) for a, b in zip(bounds, bounds[1:])]
        return _group([_regroup(rng, cfg, g, sub) for g in groups])
    if op == "omega":
        return OmegaRepeat(_regroup(rng, cfg, t.child, sub))
    if op == "unroll":
        c = t.child
        head = repeat(c, rng.randint(1, 2))
        body = repeat(c, rng.randint(1, 3))
        return Concat((_regroup(rng, cfg, head, sub), OmegaRepeat(_regroup(rng, cfg, body, sub))))
    if op == "split":
        beta = rng.choice(_inner_points(rng, t))
        left, right = split(t, beta)
        return Concat((_regroup(rng, cfg, left, sub), _regroup(rng, cfg, right, sub)))
    return _regroup_along_cuts(rng, cfg, t, sub)


def _regroup_along_cuts(rng, cfg, t, budget):
    cuts = gen_alt_cuts(cfg, t, rng) if rng.random() < 0.7 else canonical_cuts(t)
    prefix, period = cut_chunks(t, cuts)
    body = OmegaRepeat(_group([_regroup(rng, cfg, c, budget) for c in period]))
    return _group([_regroup(rng, cfg, c, budget) for c in prefix] + [body])


def gen_regrouping(cfg: GenConfig, t: SeqTree, rng: Optional[random.Random] = None,
                   bias: Optional[str] = None) -> SeqTree:
    """A regrouping whose flattening is pointwise equal to ``t``.

    Raises :class:`Regenerate` when ``bias`` cannot be met for this tree.
    """
    rng = _rng(cfg, rng)
    bias = bias or cfg.case_bias
    budget = cfg.max_depth
    if bias == "uniform":
        return _regroup(rng, cfg, t, budget)
    kind, pred = classify(t.length)
    if bias.startswith("succ") and kind is not Kind.SUCCESSOR:
        raise Regenerate(f"{bias} needs a successor length, got {t.length}")
    if bias.startswith("limit") and kind is not Kind.LIMIT:
        raise Regenerate(f"{bias} needs a limit length, got {t.length}")
    if bias == "succ_a":
        if not pred.terms:
            return Single(t)
        left, last = split(t, pred)
        return Concat((_regroup(rng, cfg, left, budget), Single(last)))
    if bias == "succ_b":
        if not pred.terms:
            raise Regenerate("succ_b needs length at least 2")
        points = [ZERO] + _inner_points(rng, t, pred)
        beta = rng.choice(points)
    elif bias == "limit_a":
        beta = rng.choice([ZERO] + _inner_points(rng, t))
    else:
        return _regroup_along_cuts(rng, cfg, t, budget)
    if not beta.terms:
        return Single(t)
    left, right = split(t, beta)
    return Concat((_regroup(rng, cfg, left, budget), Single(right)))


# -- fuzzing ------------------------------------------------------------------


@dataclass
class Failure:
    check: str
    lhs: Any
    rhs: Any
    detail: str = ""


@dataclass
class CaseResult:
    index: int
    shape: str
    passed: bool


@dataclass
class Counterexample:
    index: int
    failure: Failure
    tree: str
    regrouping: str
    shrunk_tree: str
    shrunk_regrouping: str


@dataclass
class FuzzReport:
    semigroup: str
    seed: int
    n_cases: int
    checks: Tuple[str, ...]
    results: List[CaseResult] = field(default_factory=list)
    counterexample: Optional[Counterexample] = None
    notes: List[str] = field(default_factory=list)
    _render_value: Optional[Callable[[Any], str]] = None

    @property
    def n_pass(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def n_fail(self) -> int:
        return len(self.results) - self.n_pass

    @property
    def passed(self) -> bool:
        return self.n_fail == 0

    def coverage_counts(self):
        counts = {c: 0 for c in CASES}
        for r in self.results:
            counts[r.shape] += 1
        return counts

    def render(self) -> str:
        lines = [
            f"fuzz {self.semigroup} seed={self.seed} cases={self.n_cases} "
            f"checks={','.join(self.checks)}: {self.n_pass} pass, {self.n_fail} fail",
            "coverage: " + " ".join(f"{k}={v}" for k, v in self.coverage_counts().items()),
        ]
        cx = self.counterexample
        if cx is not None:
            r = self._render_value or str
            f = cx.failure
            lines += [
                f"first counterexample: case {cx.index}, check {f.check}" + (f" ({f.detail})" if f.detail else ""),
                f"  tree:       {cx.tree}",
                f"  regrouping: {cx.regrouping}",
                f"  values:     {r(f.lhs)} != {r(f.rhs)}",
                f"  shrunk:     {cx.shrunk_tree}",
                f"  shrunk regrouping: {cx.shrunk_regrouping}",
            ]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def render_lines(self) -> str:
        return "\n".join(
            f"case {r.index} {r.shape} {'pass' if r.passed else 'fail'}" for r in self.results
        )


def _case_seed(seed, index):
    return (seed * 0x9E3779B97F4A7C15 + index) & ((1 << 64) - 1)


def _draw_case(S, cfg, index):
    rng = random.Random(_case_seed(cfg.seed, index))
    target = rng.choice(CASES) if cfg.case_bias == "uniform" else cfg.case_bias
    for _ in range(200):
        t = gen_tree(cfg, rng)
        try:
            g = gen_regrouping(cfg, t, rng, target)
        except Regenerate:
            continue
        return t, g, target, rng.getrandbits(64)
    raise RuntimeError(f"could not generate a tree for bias {target}")


def run_checks(S: Semigroup, cfg: GenConfig, t: SeqTree, g: SeqTree, seed: int,
               checks: Sequence[str] = CHECKS) -> Optional[Failure]:
    """Run the selected engine properties on one (tree, regrouping) pair."""
    rng = random.Random(seed)
    eq = S.eq
    try:
        vt = evaluate(t, S)
        if "unit" in checks:
            for x in letters(t):
                v = evaluate(Single(x), S)
                if not eq(v, x):
                    return Failure("unit", v, x)
        if "ord" in checks:
            vg = eval_regrouped(g, S)
            if not eq(vt, vg):
                return Failure("ord", vt, vg, "eval(tree) vs eval_regrouped")
            vf = evaluate(flatten(g), S)
            if not eq(vf, vg):
                return Failure("ord", vf, vg, "eval(flatten) vs eval_regrouped")
        if "coherence" in checks:
            u = gen_tree(cfg, rng)
            lhs, rhs = evaluate(Concat((t, u)), S), S.mul(vt, evaluate(u, S))
            if not eq(lhs, rhs):
                return Failure("coherence", lhs, rhs, "binary")
            lhs, rhs = evaluate(OmegaRepeat(t), S), S.omega_power(vt)
            if not eq(lhs, rhs):
                return Failure("coherence", lhs, rhs, "omega")
        if "split" in checks and t.length != ONE:
            points = _inner_points(rng, t)
            for beta in rng.sample(points, min(3, len(points))):
                left, right = split(t, beta)
                rhs = S.mul(evaluate(left, S), evaluate(right, S))
                if not eq(vt, rhs):
                    return Failure("split", vt, rhs, f"beta={beta}")
        if "cuts" in checks and t.length.is_limit():
            spec = gen_alt_cuts(cfg, t, rng)
            v = eval_with_cuts(t, spec, S)
            if not eq(v, vt):
                return Failure("cuts", v, vt, f"cuts {spec}")
        if "rotation" in checks:
            v = gen_tree(cfg, rng)
            lhs = evaluate(OmegaRepeat(Concat((t, v))), S)
            rhs = evaluate(Concat((t, OmegaRepeat(Concat((v, t))))), S)
            if not eq(lhs, rhs):
                return Failure("rotation", lhs, rhs, "(uv)^w vs u(vu)^w")
            w_om = evaluate(OmegaRepeat(t), S)
            lhs = evaluate(Concat((t, OmegaRepeat(t))), S)
            if not eq(lhs, w_om):
                return Failure("rotation", lhs, w_om, "w w^w vs w^w")
            for k in range(2, 5):
                lhs = evaluate(OmegaRepeat(repeat(t, k)), S)
                if not eq(lhs, w_om):
                    return Failure("rotation", lhs, w_om, f"(w^{k})^w vs w^w")
        if "trace" in checks:
            v, tr = evaluate(t, S, trace=True)
            problems = tr.audit()
            if problems or not eq(v, vt):
                return Failure("trace", v, vt, "; ".join(problems))
    except OrdsemiError as exc:
        return Failure("error", type(exc).__name__, str(exc), str(exc))
    return None


def _shrink_candidates(t):
    if isinstance(t, Concat):
        yield from t.children
        for i, c in enumerate(t.children):
            for c2 in _shrink_candidates(c):
                kids = list(t.children)
                kids[i] = c2
                yield Concat(tuple(kids))
    elif isinstance(t, OmegaRepeat):
        yield t.child
        for c2 in _shrink_candidates(t.child):
            yield OmegaRepeat(c2)


def shrink(S, cfg, t, target, seed, check, checks, max_steps=200):
    """Greedy shrink: replace a node by one of its children while the same check keeps failing."""
    def fails(u):
        try:
            g = gen_regrouping(cfg, u, random.Random(seed), target)
        except Regenerate:
            return None
        f = run_checks(S, cfg, u, g, seed, checks)
        return g if f is not None and f.check == check else None

    g = fails(t)
    for _ in range(max_steps):
        for cand in _shrink_candidates(t):
            g2 = fails(cand)
            if g2 is not None:
                t, g = cand, g2
                break
        else:
            break
    return t, g


def fuzz(S: Semigroup, cfg: GenConfig, n_cases: int, checks: Sequence[str] = CHECKS,
         shrink_failures: bool = True) -> FuzzReport:
    """Generate ``n_cases`` (tree, regrouping) pairs and run the engine properties on each."""
    if n_cases < 1:
        raise ValueError("n_cases must be at least 1")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if cfg.alphabet is None:
        cfg = cfg.with_alphabet(S.sample())
    report = FuzzReport(S.name, cfg.seed, n_cases, tuple(checks), _render_value=S.render)
    if not S.exact_equality:
        report.notes.append("demo-grade equality (probe-sampled)")
    fmt = S.letter_text
    for i in range(n_cases):
        t, g, target, seed = _draw_case(S, cfg, i)
        failure = run_checks(S, cfg, t, g, seed, checks)
        report.results.append(CaseResult(i, case_shape(g), failure is None))
        if failure is not None and report.counterexample is None:
            st, sg = t, g
            if shrink_failures:
                st, sg2 = shrink(S, cfg, t, target, seed, failure.check, checks)
                sg = sg2 if sg2 is not None else g
            report.counterexample = Counterexample(
                i, failure,
                format_tree(t, fmt), format_regrouping(g, fmt),
                format_tree(st, fmt), format_regrouping(sg, fmt),
            )
    return report
