"""Ordinals below epsilon-zero in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents; the exponents are themselves
ordinals.  Only the arithmetic that transfinite products need is provided:
addition, left subtraction, multiplication by a natural number or by omega,
and the canonical fundamental sequence of a limit.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, NamedTuple, Optional, Tuple, Union

from .errors import ParseError

__all__ = [
    "Ordinal",
    "Kind",
    "Classification",
    "ZERO",
    "ONE",
    "OMEGA",
    "parse",
    "format_ordinal",
    "compare",
    "add",
    "left_subtract",
    "mul_nat",
    "mul_omega",
    "divmod_finite",
    "classify",
    "fundamental_sequence",
    "omega_power_of",
]

Term = Tuple["Ordinal", int]


class Ordinal:
    """An ordinal ``w^e1*c1 + ... + w^ek*ck`` with ``e1 > ... > ek``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coef in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinal instances")
            if not isinstance(coef, int) or coef < 1:
                raise ValueError(f"coefficient must be a positive integer, got {coef!r}")
            if prev is not None and compare(exp, prev) >= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already canonical
        o = cls.__new__(cls)
        o.terms = terms
        o._hash = None
        return o

    @classmethod
    def of(cls, value: Union[int, str, "Ordinal"]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, str):
            return parse(value)
        return nat(value)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("zero has no leading exponent")
        return self.terms[0][0]

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = nat(other) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self is other or self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def _cmp_other(self, other):
        if isinstance(other, int):
            if other < 0:
                return None
            return nat(other)
        if isinstance(other, Ordinal):
            return other
        return None

    def __lt__(self, other):
        o = self._cmp_other(other)
        return NotImplemented if o is None else compare(self, o) < 0

    def __le__(self, other):
        o = self._cmp_other(other)
        return NotImplemented if o is None else compare(self, o) <= 0

    def __gt__(self, other):
        o = self._cmp_other(other)
        return NotImplemented if o is None else compare(self, o) > 0

    def __ge__(self, other):
        o = self._cmp_other(other)
        return NotImplemented if o is None else compare(self, o) >= 0

    def __add__(self, other):
        if isinstance(other, int):
            other = nat(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return add(nat(other), self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return mul_nat(self, other) if other else ZERO
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"


_NATS = {}


def nat(n: int) -> Ordinal:
    """The finite ordinal ``n``."""
    if n < 0:
        raise ValueError("ordinals are non-negative")
    o = _NATS.get(n)
    if o is None:
        o = Ordinal._raw(((ZERO, n),)) if n else ZERO
        if n < 1024:
            _NATS[n] = o
    return o


ZERO = Ordinal._raw(())
_NATS[0] = ZERO
ONE = nat(1)
OMEGA = Ordinal._raw(((ONE, 1),))


def omega_power_of(e: Ordinal, coef: int = 1) -> Ordinal:
    """``w^e * coef``."""
    return Ordinal._raw(((e, coef),))


# -- comparison and arithmetic ---------------------------------------------


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea is not eb:
            c = compare(ea, eb)
            if c:
                return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    bt = b.terms
    if not bt:
        return a
    at = a.terms
    if not at:
        return b
    e, c = bt[0]
    for i, (ea, ca) in enumerate(at):
        ce = 0 if ea is e else compare(ea, e)
        if ce > 0:
            continue
        if ce == 0:
            return Ordinal._raw(at[:i] + ((e, ca + c),) + bt[1:])
        return Ordinal._raw(at[:i] + bt) if i else b
    return Ordinal._raw(at + bt)


def left_subtract(base: Ordinal, total: Ordinal) -> Ordinal:
    """The unique ``r`` with ``base + r == total``; requires ``base <= total``."""
    bt, tt = base.terms, total.terms
    for i, (bterm, tterm) in enumerate(zip(bt, tt)):
        if bterm == tterm:
            continue
        ce = compare(bterm[0], tterm[0])
        if ce > 0 or (ce == 0 and bterm[1] > tterm[1]):
            break
        if ce == 0:
            return Ordinal._raw(((tterm[0], tterm[1] - bterm[1]),) + tt[i + 1 :])
        return Ordinal._raw(tt[i:])
    else:
        if len(bt) <= len(tt):
            return Ordinal._raw(tt[len(bt) :])
    raise ValueError(f"left_subtract: {base} > {total}")


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    """``a * n`` for a positive integer ``n``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"mul_nat needs a positive integer, got {n!r}")
    if n == 1 or not a.terms:
        return a
    (e, c), rest = a.terms[0], a.terms[1:]
    return Ordinal._raw(((e, c * n),) + rest)


def mul_omega(a: Ordinal) -> Ordinal:
    """``a * w``, which is ``w^(e+1)`` for ``e`` the leading exponent of ``a``."""
    if not a.terms:
        raise ValueError("mul_omega(0): empty sequences are not allowed")
    return omega_power_of(add(a.terms[0][0], ONE))


def divmod_finite(i: Ordinal, c: Ordinal) -> Tuple[int, Ordinal]:
    """Write ``i = c*k + r`` with ``k`` natural and ``r < c``.

    Requires ``c > 0`` and ``i < c*w``.
    """
    if not c.terms:
        raise ValueError("division by zero ordinal")
    if not i.terms:
        return 0, ZERO
    e, a = c.terms[0]
    ce = compare(i.terms[0][0], e)
    if ce > 0:
        raise ValueError(f"{i} is not below {c}*w")
    if ce < 0:
        return 0, i
    k = i.terms[0][1] // a
    if k and compare(mul_nat(c, k), i) > 0:
        k -= 1
    if not k:
        return 0, i
    return k, left_subtract(mul_nat(c, k), i)


class Kind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class Classification(NamedTuple):
    kind: Kind
    pred: Optional[Ordinal] = None


def classify(a: Ordinal) -> Classification:
    if not a.terms:
        return Classification(Kind.ZERO)
    e, c = a.terms[-1]
    if e.terms:
        return Classification(Kind.LIMIT)
    head = a.terms[:-1]
    pred = Ordinal._raw(head + ((e, c - 1),) if c > 1 else head)
    return Classification(Kind.SUCCESSOR, pred)


def fundamental_sequence(a: Ordinal, j: int) -> Ordinal:
    """Entry ``j`` of the canonical cofinal omega-sequence of the limit ``a``.

    Entry 0 is 0.  Writing ``a = rho + w^n``, entry ``j >= 1`` is
    ``rho + w^(n-1)*j`` (or ``rho + w^(n[j])`` when ``n`` is itself a limit).
    """
    if not a.is_limit():
        raise ValueError(f"fundamental_sequence needs a limit ordinal, got {a}")
    if j < 0:
        raise ValueError("index must be a natural number")
    if j == 0:
        return ZERO
    n, c = a.terms[-1]
    head = a.terms[:-1]
    rho = Ordinal._raw(head + ((n, c - 1),) if c > 1 else head)
    kind, pred = classify(n)
    if kind is Kind.SUCCESSOR:
        step = omega_power_of(pred, j)
    else:
        step = omega_power_of(fundamental_sequence(n, j))
    return add(rho, step)


# -- text form ---------------------------------------------------------------


def format_ordinal(o: Ordinal) -> str:
    if not o.terms:
        return "0"
    parts = []
    for e, c in o.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{int(e)}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts)


_NUM = re.compile(r"\d+")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def number(self):
        self.skip()
        m = _NUM.match(self.text, self.pos)
        if not m:
            self.error("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def ordinal(self):
        if self.peek() == "0":
            start = self.pos
            if self.number() != 0:
                self.error("leading zeros are not allowed", start)
            return ZERO
        terms = []
        while True:
            self.skip()
            start = self.pos
            e, c = self.term()
            if terms and compare(e, terms[-1][0]) >= 0:
                self.error("exponents must strictly decrease (not in Cantor normal form)", start)
            terms.append((e, c))
            if self.peek() != "+":
                break
            self.pos += 1
        return Ordinal._raw(tuple(terms))

    def term(self):
        ch = self.peek()
        if ch.isdigit():
            start = self.pos
            n = self.number()
            if n == 0:
                self.error("zero term inside a sum", start)
            return ZERO, n
        if ch not in ("w", "ω"):
            self.error("expected 'w' or a natural number")
        self.pos += 1
        e = ONE
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                e = self.ordinal()
                if self.peek() != ")":
                    self.error("expected ')'")
                self.pos += 1
            else:
                e = nat(self.number())
            if not e.terms:
                self.error("exponent 0: write the bare coefficient instead")
        c = 1
        if self.peek() == "*":
            self.pos += 1
            start = self.pos
            c = self.number()
            if c < 1:
                self.error("coefficient must be positive", start)
        return e, c


def parse(text: str) -> Ordinal:
    """Parse Cantor-normal-form text such as ``"w^2*3 + w + 5"``."""
    p = _Parser(text)
    o = p.ordinal()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return o
