"""Evaluation of transfinite products over a base semigroup.

The product of a sequence of length ``d`` is computed by recursion on ``d``:

* length 1: the letter itself (rule ``U``);
* successor ``d = e + 1``: product of the first ``e`` letters times the last
  letter (rule ``E``);
* limit ``d``: along the cut sequence ``0, |p|, |p|+|w|, |p|+|w|*2, ...`` of the
  decomposition ``t = p . w^w`` the blocks are ``p, w, w, ...``, so the
  product is ``prod(p) * omega_power(prod(w))`` (rule ``F``).

That the limit rule does not depend on the chosen cut sequence is checked,
not assumed: :func:`eval_with_cuts` evaluates along any valid cut sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

from .errors import CutSpecError, UndetectedPeriodicityError
from .ordinal import (
    ZERO,
    Kind,
    Ordinal,
    add,
    classify,
    compare,
    divmod_finite,
    format_ordinal,
    left_subtract,
    mul_nat,
    mul_omega,
)
from .semigroup import Semigroup, ep_omega_product
from .seq import SeqTree, Single, limit_decompose, map_letters, slice_tree, split

__all__ = [
    "TraceStep",
    "EvalTrace",
    "CutSpec",
    "evaluate",
    "eval_regrouped",
    "eval_with_cuts",
    "cut_chunks",
    "canonical_cuts",
    "omega_completion",
    "OmegaCompletion",
    "ABSORBING",
]


@dataclass
class TraceStep:
    """One rule application; ``children`` index earlier steps in the trace."""

    rule: str
    length: Ordinal
    value: Any
    children: Tuple[int, ...] = ()
    split_at: Optional[Ordinal] = None
    prefix_len: Optional[Ordinal] = None
    period_len: Optional[Ordinal] = None

    def cuts(self) -> "CutSpec":
        """The cut sequence a limit step evaluated along."""
        if self.rule != "F":
            raise ValueError("only limit steps carry a cut sequence")
        if self.prefix_len is None:
            return CutSpec((), ZERO, self.period_len)
        return CutSpec((ZERO,), self.prefix_len, self.period_len)


@dataclass
class EvalTrace:
    steps: List[TraceStep] = field(default_factory=list)

    @property
    def root(self) -> TraceStep:
        return self.steps[-1]

    def render(self, S: Semigroup) -> str:
        return "\n".join(
            f"{s.rule}({format_ordinal(s.length)}) -> {S.render(s.value)}" for s in self.steps
        )

    def audit(self) -> List[str]:
        """Return the invariant violations found (empty when the trace is sound)."""
        problems = []
        for idx, s in enumerate(self.steps):
            if any(c >= idx for c in s.children):
                problems.append(f"step {idx}: refers forward")
            if s.rule == "U":
                if s.length != 1:
                    problems.append(f"step {idx}: unit step of length {s.length}")
            elif s.rule == "E":
                if s.split_at is None or add(s.split_at, Ordinal.of(1)) != s.length:
                    problems.append(f"step {idx}: successor step {s.length} != {s.split_at} + 1")
            elif s.rule == "F":
                try:
                    s.cuts().validate(s.length)
                except CutSpecError as exc:
                    problems.append(f"step {idx}: {exc}")
            else:
                problems.append(f"step {idx}: unknown rule {s.rule!r}")
        return problems


def evaluate(t: SeqTree, S: Semigroup, trace: bool = False):
    """Product of the sequence ``t`` in ``S``; with ``trace=True`` also the :class:`EvalTrace`."""
    steps = [] if trace else None
    value = _eval(t, S, steps)
    if trace:
        return value, EvalTrace(steps)
    return value


def _record(steps, step):
    steps.append(step)
    return len(steps) - 1


def _eval(t, S, steps):
    # successor steps are peeled iteratively so long finite tails do not recurse
    peeled = []
    while True:
        if isinstance(t, Single):
            value = t.letter
            idx = _record(steps, TraceStep("U", t.length, value)) if steps is not None else None
            break
        kind, pred = classify(t.length)
        if kind is Kind.SUCCESSOR:
            left, last = split(t, pred)
            peeled.append((t.length, pred, last.letter))
            t = left
            continue
        prefix, period = limit_decompose(t)
        pv = _eval(prefix, S, steps) if prefix is not None else None
        pidx = len(steps) - 1 if steps is not None and prefix is not None else None
        wv = _eval(period, S, steps)
        widx = len(steps) - 1 if steps is not None else None
        value = ep_omega_product(S, [] if prefix is None else [pv], [wv])
        if steps is not None:
            children = (widx,) if pidx is None else (pidx, widx)
            idx = _record(steps, TraceStep(
                "F", t.length, value, children,
                prefix_len=None if prefix is None else prefix.length,
                period_len=period.length,
            ))
        break
    for delta, eps, letter in reversed(peeled):
        value = S.mul(value, letter)
        if steps is not None:
            idx = _record(steps, TraceStep("E", delta, value, (idx,), split_at=eps))
    return value


def eval_regrouped(g: SeqTree, S: Semigroup):
    """Evaluate each block of the regrouping, then the product of the block values."""
    return evaluate(map_letters(g, lambda leaf: evaluate(leaf, S)), S)


# -- cut sequences ------------------------------------------------------------


@dataclass(frozen=True)
class CutSpec:
    """Cuts ``initial_cuts``, then ``tail_start + stride*j`` for ``j = 0, 1, 2, ...``."""

    initial_cuts: Tuple[Ordinal, ...]
    tail_start: Ordinal
    stride: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "initial_cuts", tuple(Ordinal.of(c) for c in self.initial_cuts))
        object.__setattr__(self, "tail_start", Ordinal.of(self.tail_start))
        object.__setattr__(self, "stride", Ordinal.of(self.stride))

    def entry(self, j: int) -> Ordinal:
        n = len(self.initial_cuts)
        if j < n:
            return self.initial_cuts[j]
        k = j - n
        return add(self.tail_start, mul_nat(self.stride, k)) if k else self.tail_start

    def entries(self, n: int) -> List[Ordinal]:
        return [self.entry(j) for j in range(n)]

    def supremum(self) -> Ordinal:
        return add(self.tail_start, mul_omega(self.stride))

    def validate(self, delta: Ordinal) -> None:
        """Raise :class:`CutSpecError` unless this is a valid cut sequence for ``delta``."""
        if not self.stride.terms:
            raise CutSpecError("stride must be nonzero")
        cuts = self.initial_cuts
        if cuts:
            if cuts[0].terms:
                raise CutSpecError(f"first cut must be 0, got {cuts[0]}")
            for a, b in zip(cuts, cuts[1:] + (self.tail_start,)):
                if compare(a, b) >= 0:
                    raise CutSpecError(f"cuts not strictly increasing at {a}, {b}")
        elif self.tail_start.terms:
            raise CutSpecError(f"first cut must be 0, got {self.tail_start}")
        sup = self.supremum()
        if sup != delta:
            raise CutSpecError(f"cuts are cofinal in {sup}, not in {delta}")

    def __str__(self):
        shown = ", ".join(format_ordinal(x) for x in self.entries(len(self.initial_cuts) + 3))
        stride = format_ordinal(self.stride)
        if len(self.stride.terms) > 1:
            stride = f"({stride})"
        return f"{shown}, ... (tail {format_ordinal(self.tail_start)} + {stride}*j)"


def canonical_cuts(t: SeqTree) -> CutSpec:
    """The cut sequence the evaluator itself uses for a limit-length ``t``."""
    prefix, period = limit_decompose(t)
    if prefix is None:
        return CutSpec((), ZERO, period.length)
    return CutSpec((ZERO,), prefix.length, period.length)


def _tail_period(tail: SeqTree, stride: Ordinal, max_chunks: int) -> Tuple[int, int]:
    # Chunk j of the tail starts at stride*j.  Past the prefix of tail = p.w^w
    # a chunk is determined by its offset inside a copy of w, and the offset of
    # chunk j+1 is a function of that of chunk j, so a repeated offset closes
    # an exact period.
    prefix, period = limit_decompose(tail)
    plen = prefix.length if prefix is not None else ZERO
    wlen = period.length
    seen = {}
    pos = ZERO
    for j in range(max_chunks):
        if compare(pos, plen) >= 0:
            _, r = divmod_finite(left_subtract(plen, pos), wlen)
            if r in seen:
                return seen[r], j - seen[r]
            seen[r] = j
        pos = add(pos, stride)
    raise UndetectedPeriodicityError(
        f"no period among the first {max_chunks} chunks of stride {stride}"
    )


def cut_chunks(t: SeqTree, cuts: CutSpec, max_chunks: int = 10_000) -> Tuple[List[SeqTree], List[SeqTree]]:
    """Blocks of ``t`` between consecutive cuts, as (prefix blocks, one period of blocks).

    ``t`` is pointwise the prefix blocks followed by the period blocks repeated omega times.
    """
    cuts.validate(t.length)
    bounds = list(cuts.initial_cuts) + [cuts.tail_start]
    prefix = [slice_tree(t, a, b) for a, b in zip(bounds, bounds[1:])]
    tail = slice_tree(t, cuts.tail_start) if cuts.tail_start.terms else t
    j0, p = _tail_period(tail, cuts.stride, max_chunks)
    chunks = []
    for j in range(j0 + p):
        start = mul_nat(cuts.stride, j) if j else ZERO
        chunks.append(slice_tree(tail, start, add(start, cuts.stride)))
    return prefix + chunks[:j0], chunks[j0:]


def eval_with_cuts(t: SeqTree, cuts: CutSpec, S: Semigroup, max_chunks: int = 10_000):
    """Evaluate a limit-length ``t`` along an arbitrary valid cut sequence."""
    if not t.length.is_limit():
        raise ValueError(f"eval_with_cuts needs a limit length, got {t.length}")
    prefix, period = cut_chunks(t, cuts, max_chunks)
    return ep_omega_product(
        S, [evaluate(c, S) for c in prefix], [evaluate(c, S) for c in period]
    )


# -- absorbing completion -----------------------------------------------------


class _Absorbing:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Ω"

    def __reduce__(self):
        return (_Absorbing, ())


ABSORBING = _Absorbing()


class OmegaCompletion(Semigroup):
    """``base`` plus a fresh element that absorbs every product it takes part in."""

    def __init__(self, base: Semigroup):
        self.base = base
        self.name = f"omega:{base.name}"
        self.exact_equality = base.exact_equality
        if base.elements is not None:
            self.elements = tuple(base.elements) + (ABSORBING,)

    def mul(self, a, b):
        if a is ABSORBING or b is ABSORBING:
            return ABSORBING
        return self.base.mul(a, b)

    def omega_power(self, a):
        if a is ABSORBING:
            return ABSORBING
        return self.base.omega_power(a)

    def eq(self, a, b):
        if a is ABSORBING or b is ABSORBING:
            return a is b
        return self.base.eq(a, b)

    def element(self, name):
        if name in ("Omega", "Ω"):
            return ABSORBING
        return self.base.element(name)

    def render(self, a):
        return "Ω" if a is ABSORBING else self.base.render(a)

    def letter_text(self, a):
        return "Omega" if a is ABSORBING else self.base.letter_text(a)

    def sample(self):
        return list(self.base.sample()) + [ABSORBING]


def omega_completion(S: Semigroup) -> OmegaCompletion:
    return OmegaCompletion(S)
