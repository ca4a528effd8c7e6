"""Base semigroups: a binary product together with an omega-power.

Everything the evaluator needs from a carrier is ``mul``, ``omega_power``
and an equality test.  Built-in instances cover ordinal addition,
transfinite strings, left projection, finite chains under ``min`` and a
saturating counter; arbitrary finite tables load from a small text format.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ParseError, TableError, UnknownElementError
from .ordinal import OMEGA, ONE, ZERO, add, mul_omega, nat, parse as parse_ordinal
from .seq import Concat, OmegaRepeat, Single, format_tree, pointwise_equal

__all__ = [
    "Semigroup",
    "OrdinalSum",
    "TransfiniteStrings",
    "LeftProjection",
    "FiniteTable",
    "binary",
    "omega_power",
    "fold",
    "ep_omega_product",
    "load_table",
    "load_table_file",
    "dump_table",
    "left_projection_table",
    "right_projection_table",
    "min_chain_table",
    "sat_counter_table",
    "get_builtin",
    "LawReport",
    "Witness",
    "check_laws",
]


class Semigroup:
    """A computable semigroup with an omega-power.

    Subclasses implement :meth:`mul` and :meth:`omega_power`.  ``elements``
    is the finite carrier when there is one, else ``None``.
    """

    name = "semigroup"
    elements: Optional[Tuple[Any, ...]] = None
    #: False when :meth:`eq` only samples (transfinite strings)
    exact_equality = True

    def mul(self, a, b):
        raise NotImplementedError

    def omega_power(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def element(self, name: str):
        """Resolve a letter name from an expression into a carrier element."""
        if self.elements is not None:
            for x in self.elements:
                if self.render(x) == name:
                    return x
        raise UnknownElementError(f"unknown element {name!r} for {self.name}")

    def render(self, a) -> str:
        return str(a)

    def letter_text(self, a) -> str:
        """Render ``a`` as a token the expression parser reads back."""
        s = self.render(a)
        return s if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*|\d+", s) else f"[{s}]"

    def sample(self) -> List[Any]:
        """A small default alphabet for generators."""
        if self.elements is None:
            raise NotImplementedError(f"{self.name} has no default alphabet")
        return list(self.elements)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def binary(S: Semigroup, a, b):
    return S.mul(a, b)


def omega_power(S: Semigroup, a):
    return S.omega_power(a)


def fold(S: Semigroup, xs: Sequence[Any]):
    """Left-to-right product of a nonempty list."""
    it = iter(xs)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("fold of an empty list") from None
    for x in it:
        acc = S.mul(acc, x)
    return acc


def ep_omega_product(S: Semigroup, prefix: Sequence[Any], period: Sequence[Any]):
    """Product of ``prefix`` followed by ``period`` repeated omega times."""
    if not period:
        raise ValueError("ep_omega_product needs a nonempty period")
    tail = S.omega_power(fold(S, period))
    if not prefix:
        return tail
    return S.mul(fold(S, prefix), tail)


# -- built-in instances -------------------------------------------------------


class OrdinalSum(Semigroup):
    """Ordinals under addition; the omega-power of ``a`` is ``a * w``."""

    name = "ordinal-sum"

    def mul(self, a, b):
        return add(a, b)

    def omega_power(self, a):
        return mul_omega(a) if a.terms else ZERO

    def element(self, name):
        if name == "one":
            return ONE
        text = name[1:-1] if name.startswith("[") and name.endswith("]") else name
        try:
            return parse_ordinal(text)
        except ParseError as exc:
            raise UnknownElementError(f"not an ordinal literal: {name!r} ({exc.message})") from None

    def letter_text(self, a):
        if a == ONE:
            return "one"
        return super().letter_text(a)

    def sample(self):
        return [ONE, nat(2), OMEGA, add(OMEGA, ONE), parse_ordinal("w^2")]


class TransfiniteStrings(Semigroup):
    """Words of ordinal length over an alphabet, under concatenation.

    Elements are :class:`SeqTree` values; equality is probe-sampled, so a
    ``True`` answer is evidence rather than proof.
    """

    exact_equality = False

    def __init__(self, alphabet: Iterable[str]):
        self.alphabet = tuple(alphabet)
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        self.name = "strings:" + ",".join(self.alphabet)

    def mul(self, a, b):
        return Concat((a, b))

    def omega_power(self, a):
        return OmegaRepeat(a)

    def eq(self, a, b):
        return pointwise_equal(a, b)

    def element(self, name):
        if name not in self.alphabet:
            raise UnknownElementError(f"letter {name!r} not in alphabet {self.alphabet}")
        return Single(name)

    def render(self, a):
        return format_tree(a)

    def letter_text(self, a):
        return f"({format_tree(a)})" if not isinstance(a, Single) else a.letter

    def sample(self):
        return [Single(x) for x in self.alphabet]


class LeftProjection(Semigroup):
    """``a * b = a``; every product is its first letter."""

    name = "left-projection"

    def mul(self, a, b):
        return a

    def omega_power(self, a):
        return a

    def element(self, name):
        return name

    def sample(self):
        return ["a", "b", "c"]


class FiniteTable(Semigroup):
    """A finite carrier given by total ``mul`` and ``omegapow`` tables."""

    def __init__(self, elements: Sequence[str], mul: Dict[Tuple[str, str], str],
                 omegapow: Dict[str, str], name: str = "table"):
        self.elements = tuple(elements)
        self.name = name
        if not self.elements:
            raise TableError("a table needs at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise TableError("duplicate element names")
        known = set(self.elements)
        for (a, b), c in mul.items():
            for x in (a, b, c):
                if x not in known:
                    raise TableError(f"unknown element {x!r} in mul: {a} {b} = {c}")
        for a, b in omegapow.items():
            for x in (a, b):
                if x not in known:
                    raise TableError(f"unknown element {x!r} in omegapow: {a} = {b}")
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in mul:
                    raise TableError(f"mul incomplete for {a} {b}")
        for a in self.elements:
            if a not in omegapow:
                raise TableError(f"omegapow incomplete for {a}")
        self.table = dict(mul)
        self.omegapow = dict(omegapow)

    def mul(self, a, b):
        try:
            return self.table[a, b]
        except KeyError:
            bad = a if a not in self.omegapow else b
            raise UnknownElementError(f"unknown element {bad!r} for {self.name}") from None

    def omega_power(self, a):
        try:
            return self.omegapow[a]
        except KeyError:
            raise UnknownElementError(f"unknown element {a!r} for {self.name}") from None

    def element(self, name):
        if name in self.omegapow:
            return name
        raise UnknownElementError(f"unknown element {name!r} for {self.name}")


def _comment_free(line):
    return line.split("#", 1)[0].strip()


def load_table(text: str, name: str = "table") -> FiniteTable:
    """Parse the line-based table format::

        elements: a b
        mul: a b = a
        omegapow: a = a
    """
    elements = None
    mul = {}
    omegapow = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _comment_free(raw)
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise TableError(f"line {lineno}: expected 'key: value'")
        if key == "elements":
            if elements is not None:
                raise TableError(f"line {lineno}: duplicate elements line")
            elements = rest.split()
        elif key == "mul":
            m = re.fullmatch(r"\s*(\S+)\s+(\S+)\s*=\s*(\S+)\s*", rest)
            if not m:
                raise TableError(f"line {lineno}: expected 'mul: a b = c'")
            a, b, c = m.groups()
            if (a, b) in mul:
                raise TableError(f"line {lineno}: duplicate mul entry for {a} {b}")
            mul[a, b] = c
        elif key == "omegapow":
            m = re.fullmatch(r"\s*(\S+)\s*=\s*(\S+)\s*", rest)
            if not m:
                raise TableError(f"line {lineno}: expected 'omegapow: a = b'")
            a, b = m.groups()
            if a in omegapow:
                raise TableError(f"line {lineno}: duplicate omegapow entry for {a}")
            omegapow[a] = b
        else:
            raise TableError(f"line {lineno}: unknown key {key!r}")
    if elements is None:
        raise TableError("missing 'elements:' line")
    return FiniteTable(elements, mul, omegapow, name=name)


def load_table_file(path) -> FiniteTable:
    path = Path(path)
    return load_table(path.read_text(), name=f"table:{path}")


def dump_table(t: FiniteTable) -> str:
    lines = ["elements: " + " ".join(t.elements)]
    for a in t.elements:
        for b in t.elements:
            lines.append(f"mul: {a} {b} = {t.table[a, b]}")
    for a in t.elements:
        lines.append(f"omegapow: {a} = {t.omegapow[a]}")
    return "\n".join(lines) + "\n"


def left_projection_table(names: Sequence[str] = ("a", "b")) -> FiniteTable:
    return FiniteTable(names, {(a, b): a for a in names for b in names},
                       {a: a for a in names}, name="left-projection")


def right_projection_table(names: Sequence[str] = ("a", "b")) -> FiniteTable:
    return FiniteTable(names, {(a, b): b for a in names for b in names},
                       {a: a for a in names}, name="right-projection")


def min_chain_table(n: int) -> FiniteTable:
    """The chain ``0 < 1 < ... < n-1`` under ``min``, every element idempotent."""
    if n < 1:
        raise ValueError("min-chain needs n >= 1")
    names = [str(i) for i in range(n)]
    mul = {(a, b): str(min(int(a), int(b))) for a in names for b in names}
    return FiniteTable(names, mul, {a: a for a in names}, name=f"min-chain:{n}")


def sat_counter_table(cap: int = 2) -> FiniteTable:
    """Addition on ``{0, ..., cap}`` saturating at ``cap``; nonzero omega-powers hit the cap."""
    names = [str(i) for i in range(cap + 1)]
    mul = {(a, b): str(min(int(a) + int(b), cap)) for a in names for b in names}
    omegapow = {a: ("0" if a == "0" else str(cap)) for a in names}
    return FiniteTable(names, mul, omegapow, name="sat-counter")


def get_builtin(name: str) -> Semigroup:
    """Look up a semigroup by selector.

    Selectors: ``ordinal-sum``, ``strings:<alphabet>``, ``left-projection``,
    ``min-chain:<n>``, ``sat-counter``, ``table:<path>``, and
    ``omega:<selector>`` for the absorbing-element completion of another one.
    """
    if name == "ordinal-sum":
        return OrdinalSum()
    if name == "left-projection":
        return LeftProjection()
    if name == "sat-counter":
        return sat_counter_table()
    head, sep, arg = name.partition(":")
    if sep:
        if head == "strings":
            alphabet = arg.split(",") if "," in arg else list(arg)
            return TransfiniteStrings(a for a in alphabet if a)
        if head == "min-chain":
            if not arg.isdigit() or int(arg) < 1:
                raise ValueError(f"min-chain needs a positive size, got {arg!r}")
            return min_chain_table(int(arg))
        if head == "table":
            return load_table_file(arg)
        if head == "omega":
            from .engine import omega_completion

            return omega_completion(get_builtin(arg))
    raise ValueError(f"unknown semigroup {name!r}")


# -- law checking -------------------------------------------------------------

LAW_NAMES = {
    "L1": "associativity",
    "L2": "absorption",
    "L3": "rotation",
    "L4": "period merge",
}


@dataclass
class Witness:
    law: str
    args: Tuple[Any, ...]
    lhs: Any
    rhs: Any
    k: Optional[int] = None

    def describe(self, S: Semigroup) -> str:
        r = S.render
        names = ", ".join(f"{v}={r(x)}" for v, x in zip("stu", self.args))
        if self.law == "L1":
            s, t, u = (r(x) for x in self.args)
            eqn = f"({s}*{t})*{u} = {r(self.lhs)} but {s}*({t}*{u}) = {r(self.rhs)}"
        elif self.law == "L2":
            s = r(self.args[0])
            eqn = f"{s}*omega_power({s}) = {r(self.lhs)} but omega_power({s}) = {r(self.rhs)}"
        elif self.law == "L3":
            s, t = (r(x) for x in self.args)
            eqn = (f"omega_power({s}*{t}) = {r(self.lhs)} but "
                   f"{s}*omega_power({t}*{s}) = {r(self.rhs)}")
        else:
            s = r(self.args[0])
            eqn = (f"omega_power({s}) = {r(self.lhs)} but "
                   f"omega_power({s}^{self.k}) = {r(self.rhs)}")
        return f"{self.law} {LAW_NAMES[self.law]} at ({names}): {eqn}"


@dataclass
class LawReport:
    semigroup: str
    k_max: int
    checked: int
    witness: Optional[Witness] = None
    notes: List[str] = field(default_factory=list)
    _describe: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def render(self) -> str:
        if self.passed:
            head = (f"pass: {self.semigroup} is consistent with all checked (Ord) instances "
                    f"(L1-L4, k_max={self.k_max}, {self.checked} instances)")
        else:
            head = f"fail: {self.semigroup}: {self._describe}"
        return "\n".join([head] + [f"note: {n}" for n in self.notes])


def check_laws(S: Semigroup, k_max: int = 4, elements: Optional[Sequence[Any]] = None) -> LawReport:
    """Exhaustively check L1-L4 over a finite carrier; stop at the first violation."""
    elems = list(elements if elements is not None else (S.elements or ()))
    if not elems:
        raise ValueError(f"{S.name} has no finite carrier to enumerate")
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    report = LawReport(S.name, k_max, 0)
    if not S.exact_equality:
        report.notes.append("demo-grade equality (probe-sampled)")

    def fail(w):
        report.witness = w
        report._describe = w.describe(S)
        return report

    eq, mul, om = S.eq, S.mul, S.omega_power
    for s, t, u in itertools.product(elems, repeat=3):
        report.checked += 1
        lhs, rhs = mul(mul(s, t), u), mul(s, mul(t, u))
        if not eq(lhs, rhs):
            return fail(Witness("L1", (s, t, u), lhs, rhs))
    for s in elems:
        report.checked += 1
        lhs, rhs = mul(s, om(s)), om(s)
        if not eq(lhs, rhs):
            return fail(Witness("L2", (s,), lhs, rhs))
    for s, t in itertools.product(elems, repeat=2):
        report.checked += 1
        lhs, rhs = om(mul(s, t)), mul(s, om(mul(t, s)))
        if not eq(lhs, rhs):
            return fail(Witness("L3", (s, t), lhs, rhs))
    for s in elems:
        for k in range(2, k_max + 1):
            report.checked += 1
            lhs, rhs = om(s), om(fold(S, [s] * k))
            if not eq(lhs, rhs):
                return fail(Witness("L4", (s,), lhs, rhs, k=k))
    return report
