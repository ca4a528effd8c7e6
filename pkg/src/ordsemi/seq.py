"""Symbolic transfinite sequences.

A sequence is a finite term built from three constructors:

* ``Single(x)`` is the one-letter sequence ``x``;
* ``Concat((t1, ..., tn))`` for ``n >= 2`` is the concatenation in order;
* ``OmegaRepeat(t)`` is ``t t t ...`` repeated omega times.

Every term denotes a nonempty sequence of length below ``w^w``.  A
*regrouping* is a term whose letters are themselves terms; each letter is a
block (fibre) of consecutive positions of the flattened sequence.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple

from .errors import ParseError
from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    add,
    compare,
    divmod_finite,
    left_subtract,
    mul_nat,
    mul_omega,
    nat,
)

__all__ = [
    "SeqTree",
    "Single",
    "Concat",
    "OmegaRepeat",
    "single",
    "concat",
    "omega_repeat",
    "repeat",
    "length",
    "at",
    "split",
    "slice_tree",
    "limit_decompose",
    "flatten",
    "map_letters",
    "letters",
    "normalize_concat",
    "probe_indices",
    "pointwise_equal",
    "random_below",
    "parse_tree",
    "format_tree",
    "parse_regrouping",
    "format_regrouping",
    "size",
]


class SeqTree:
    """Base class of the three sequence constructors."""

    __slots__ = ()
    length: Ordinal


@dataclass(frozen=True)
class Single(SeqTree):
    letter: Any
    length: Ordinal = field(default=ONE, init=False, repr=False, compare=False)


@dataclass(frozen=True)
class Concat(SeqTree):
    children: Tuple[SeqTree, ...]
    length: Ordinal = field(default=ZERO, init=False, repr=False, compare=False)

    def __post_init__(self):
        children = tuple(self.children)
        if len(children) < 2:
            raise ValueError("Concat needs at least two children")
        total = ZERO
        for c in children:
            if not isinstance(c, SeqTree):
                raise TypeError(f"Concat child is not a SeqTree: {c!r}")
            total = add(total, c.length)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "length", total)


@dataclass(frozen=True)
class OmegaRepeat(SeqTree):
    child: SeqTree
    length: Ordinal = field(default=ZERO, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.child, SeqTree):
            raise TypeError(f"OmegaRepeat child is not a SeqTree: {self.child!r}")
        object.__setattr__(self, "length", mul_omega(self.child.length))


def single(x) -> Single:
    return Single(x)


def concat(children: Sequence[SeqTree]) -> Concat:
    return Concat(tuple(children))


def omega_repeat(child: SeqTree) -> OmegaRepeat:
    return OmegaRepeat(child)


def _cat(parts: List[SeqTree]) -> SeqTree:
    # like concat, but a single part stands for itself
    if len(parts) == 1:
        return parts[0]
    return Concat(tuple(parts))


def repeat(t: SeqTree, k: int) -> SeqTree:
    """``t`` concatenated ``k`` times (``k >= 1``)."""
    if k < 1:
        raise ValueError("repeat count must be positive")
    return _cat([t] * k)


def length(t: SeqTree) -> Ordinal:
    return t.length


def size(t: SeqTree) -> int:
    """Number of nodes in the term (letters count as one)."""
    if isinstance(t, Single):
        return 1
    if isinstance(t, Concat):
        return 1 + sum(size(c) for c in t.children)
    return 1 + size(t.child)


def at(t: SeqTree, i: Ordinal):
    """The letter at position ``i``."""
    if isinstance(i, int):
        i = nat(i)
    if compare(i, t.length) >= 0:
        raise IndexError(f"position {i} out of range for length {t.length}")
    while True:
        if isinstance(t, Single):
            return t.letter
        if isinstance(t, Concat):
            for c in t.children:
                if compare(i, c.length) < 0:
                    t = c
                    break
                i = left_subtract(c.length, i)
        else:
            _, i = divmod_finite(i, t.child.length)
            t = t.child


def split(t: SeqTree, beta: Ordinal) -> Tuple[SeqTree, SeqTree]:
    """Cut ``t`` into the prefix of length ``beta`` and the remaining tail."""
    if isinstance(beta, int):
        beta = nat(beta)
    if not beta.terms or compare(beta, t.length) >= 0:
        raise IndexError(f"split point {beta} must satisfy 0 < beta < {t.length}")
    return _split(t, beta)


def _split(t, beta):
    if isinstance(t, Concat):
        cum = ZERO
        children = t.children
        for j, c in enumerate(children):
            end = add(cum, c.length)
            if compare(beta, end) < 0:
                if beta == cum:
                    return _cat(list(children[:j])), _cat(list(children[j:]))
                left, right = _split(c, left_subtract(cum, beta))
                return (
                    _cat(list(children[:j]) + [left]),
                    _cat([right] + list(children[j + 1 :])),
                )
            cum = end
        raise AssertionError("split point past the end")
    # OmegaRepeat; a Single never reaches here since 0 < beta < 1 is empty
    c = t.child
    k, r = divmod_finite(beta, c.length)
    if not r.terms:
        return repeat(c, k), t
    left, right = _split(c, r)
    head = [c] * k + [left]
    return _cat(head), Concat((right, t))


def slice_tree(t: SeqTree, start: Ordinal, stop: Optional[Ordinal] = None) -> SeqTree:
    """The block ``t[start, stop)``; ``stop`` defaults to the end."""
    if stop is None:
        stop = t.length
    if compare(start, stop) >= 0:
        raise IndexError(f"empty slice [{start}, {stop})")
    if compare(stop, t.length) > 0:
        raise IndexError(f"slice end {stop} past length {t.length}")
    if stop != t.length:
        t = split(t, stop)[0]
    if start.terms:
        t = split(t, start)[1]
    return t


def limit_decompose(t: SeqTree) -> Tuple[Optional[SeqTree], SeqTree]:
    """Write a limit-length ``t`` as ``prefix . period^w`` along its rightmost spine.

    Returns ``(prefix, period)``; ``prefix`` is ``None`` when absent.
    """
    if not t.length.is_limit():
        raise ValueError(f"limit_decompose needs a limit length, got {t.length}")
    heads: List[SeqTree] = []
    while isinstance(t, Concat):
        heads.extend(t.children[:-1])
        t = t.children[-1]
    # the last child of a limit concat has limit length, so t is an OmegaRepeat
    assert isinstance(t, OmegaRepeat)
    return (_cat(heads) if heads else None), t.child


def map_letters(t: SeqTree, f: Callable[[Any], Any]) -> SeqTree:
    if isinstance(t, Single):
        return Single(f(t.letter))
    if isinstance(t, Concat):
        return Concat(tuple(map_letters(c, f) for c in t.children))
    return OmegaRepeat(map_letters(t.child, f))


def letters(t: SeqTree) -> Iterator[Any]:
    """Distinct letters in left-to-right order of first occurrence in the term."""
    seen = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Single):
            if u.letter not in seen:
                seen.append(u.letter)
        elif isinstance(u, Concat):
            stack.extend(reversed(u.children))
        else:
            stack.append(u.child)
    return iter(seen)


def flatten(g: SeqTree) -> SeqTree:
    """Replace every letter of a regrouping (itself a tree) by its sequence."""
    if isinstance(g, Single):
        if not isinstance(g.letter, SeqTree):
            raise TypeError("regrouping letters must be SeqTree values")
        return g.letter
    if isinstance(g, Concat):
        return Concat(tuple(flatten(c) for c in g.children))
    return OmegaRepeat(flatten(g.child))


def normalize_concat(t: SeqTree) -> SeqTree:
    """Splice nested concatenations into their parent."""
    if isinstance(t, Single):
        return t
    if isinstance(t, OmegaRepeat):
        return OmegaRepeat(normalize_concat(t.child))
    parts: List[SeqTree] = []
    for c in t.children:
        c = normalize_concat(c)
        if isinstance(c, Concat):
            parts.extend(c.children)
        else:
            parts.append(c)
    return Concat(tuple(parts))


# -- sampling ----------------------------------------------------------------


def _random_below_power(rng: random.Random, e: Ordinal, budget: int) -> Ordinal:
    # random ordinal < w^e
    if not e.terms:
        return ZERO
    if e == ONE or budget <= 0:
        return nat(rng.randint(0, 6))
    e2 = random_below(rng, e, budget - 1)
    head = Ordinal._raw(((e2, rng.randint(1, 3)),)) if e2.terms else nat(rng.randint(0, 6))
    if not e2.terms:
        return head
    return add(head, _random_below_power(rng, e2, budget - 1))


def random_below(rng: random.Random, x: Ordinal, budget: int = 3) -> Ordinal:
    """A pseudo-random ordinal strictly below ``x`` (which must be nonzero)."""
    if not x.terms:
        raise ValueError("no ordinal lies below 0")
    i = rng.randrange(len(x.terms))
    e, c = x.terms[i]
    head = Ordinal._raw(x.terms[:i])
    d = rng.randrange(c)
    if d:
        head = add(head, Ordinal._raw(((e, d),)))
    return add(head, _random_below_power(rng, e, budget))


def _boundaries(t: SeqTree, unroll: int) -> set:
    if isinstance(t, Single):
        return {ZERO}
    out = set()
    if isinstance(t, Concat):
        off = ZERO
        for c in t.children:
            out.update(add(off, b) for b in _boundaries(c, unroll))
            off = add(off, c.length)
        return out
    inner = _boundaries(t.child, unroll)
    out.update(inner)
    for k in range(1, unroll):
        off = mul_nat(t.child.length, k)
        out.update(add(off, b) for b in inner)
    return out


def probe_indices(t: SeqTree, n_random: int = 8, seed: int = 0, unroll: int = 3) -> List[Ordinal]:
    """Deterministic sample positions: structural boundaries, small offsets, random picks."""
    n = t.length
    found = set()
    for b in _boundaries(t, unroll):
        for off in (0, 1, 2):
            p = add(b, nat(off)) if off else b
            if compare(p, n) < 0:
                found.add(p)
        if b.is_successor():
            found.add(_pred(b))
    if n.is_successor():
        found.add(_pred(n))
    rng = random.Random(seed)
    for _ in range(n_random):
        found.add(random_below(rng, n))
    return sorted(found)


def _pred(n):
    e, c = n.terms[-1]
    head = n.terms[:-1]
    return Ordinal._raw(head + ((e, c - 1),) if c > 1 else head)


def pointwise_equal(t: SeqTree, u: SeqTree, eq: Callable[[Any, Any], bool] = None, n_random: int = 8) -> bool:
    """Probe-sampled equality of two sequences; a ``False`` answer is conclusive."""
    if t.length != u.length:
        return False
    eq = eq or (lambda a, b: a == b)
    probes = set(probe_indices(t, n_random)) | set(probe_indices(u, n_random, seed=1))
    return all(eq(at(t, i), at(u, i)) for i in sorted(probes))


# -- text form ---------------------------------------------------------------

class _TreeParser:
    def __init__(self, text, braces=False):
        self.text = text
        self.pos = 0
        self.braces = braces

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self, closing=""):
        items = []
        while True:
            ch = self.peek()
            if ch == "" or ch in closing:
                break
            items.append(self.item())
        if not items:
            self.error("empty sequence")
        return _cat(items)

    def item(self):
        t = self.atom()
        while self.peek() == "^":
            start = self.pos
            self.pos += 1
            self.skip()
            m = re.compile(r"[wω](?![A-Za-z0-9_])|\d+").match(self.text, self.pos)
            if not m:
                self.error("expected 'w' or a repeat count after '^'", start)
            self.pos = m.end()
            tok = m.group()
            if tok in ("w", "ω"):
                t = OmegaRepeat(t)
            else:
                k = int(tok)
                if k < 2:
                    self.error("repeat count must be at least 2", start)
                t = repeat(t, k)
        return t

    def atom(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            t = self.expr(")")
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return t
        if self.braces:
            if ch != "{":
                self.error("expected '{' opening a block")
            self.pos += 1
            inner = _TreeParser(self.text)
            inner.pos = self.pos
            t = inner.expr("}")
            self.pos = inner.pos
            if self.peek() != "}":
                self.error("expected '}'")
            self.pos += 1
            return Single(t)
        if ch == "[":
            end = self.text.find("]", self.pos)
            if end < 0:
                self.error("unterminated '['")
            self.pos = end + 1
            return Single(self.text[start:end + 1])
        m = re.compile(r"[A-Za-z_ω][A-Za-z0-9_]*|\d+").match(self.text, self.pos)
        if not m:
            self.error(f"unexpected character {ch!r}")
        self.pos = m.end()
        return Single(m.group())


def parse_tree(text: str) -> SeqTree:
    """Parse expressions like ``(a b)^w c``; letters come back as their names.

    Juxtaposition concatenates, ``^w`` repeats omega times, ``^K`` repeats
    ``K >= 2`` times.  A letter is an identifier, a natural number, or a
    bracketed literal such as ``[w^2 + 1]``.
    """
    p = _TreeParser(text)
    t = p.expr()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected input")
    return t


def parse_regrouping(text: str) -> SeqTree:
    """Parse a regrouping: a tree expression whose letters are ``{tree}`` blocks."""
    p = _TreeParser(text, braces=True)
    t = p.expr()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected input")
    return t


def format_tree(t: SeqTree, fmt: Callable[[Any], str] = str) -> str:
    if isinstance(t, Single):
        return fmt(t.letter)
    if isinstance(t, Concat):
        return " ".join(
            f"({format_tree(c, fmt)})" if isinstance(c, Concat) else format_tree(c, fmt)
            for c in t.children
        )
    inner = format_tree(t.child, fmt)
    if isinstance(t.child, Concat):
        inner = f"({inner})"
    return f"{inner}^w"


def format_regrouping(g: SeqTree, fmt: Callable[[Any], str] = str) -> str:
    return format_tree(g, lambda leaf: "{" + format_tree(leaf, fmt) + "}")
