"""Exact scalars, PBW monomials and sparse Fock states.

A Fock state is a finite linear combination of PBW monomials
alpha(-n_1)...alpha(-n_k) u applied to the cyclic vector ``u`` of a Heisenberg
module M(1, zeta), optionally tensored with a lattice factor e^{k alpha/p}
(the *charge* ``k``).  Coefficients are :class:`fractions.Fraction` and zero
coefficients are never stored, so equality of states is structural.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # weakly decreasing tuple of positive ints

FORMAT_HEADER = "vsing-state v1"


class StateError(ValueError):
    """Raised when states with different charge or module are combined."""


class ParseError(ValueError):
    """Malformed serialized state; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Always ``num/den`` so that integers stay visibly exact (``"1/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def canonical(depths: Iterable[int]) -> Monomial:
    """Sort depths weakly decreasing; negative Heisenberg modes commute."""
    t = tuple(sorted((int(d) for d in depths), reverse=True))
    if t and t[-1] < 1:
        raise ValueError(f"depths must be positive: {t}")
    return t


def weight(mono: Monomial) -> int:
    return sum(mono)


def insert_depth(mono: Monomial, n: int) -> Monomial:
    # mono is decreasing; bisect works on the negated sequence
    neg = [-d for d in mono]
    i = bisect.bisect_right(neg, -n)
    return mono[:i] + (n,) + mono[i:]


def remove_depth(mono: Monomial, n: int) -> Monomial:
    i = mono.index(n)
    return mono[:i] + mono[i + 1:]


def partitions(n: int, max_part: int | None = None, min_part: int = 1):
    """Partitions of ``n`` as weakly decreasing tuples, in lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min_part, min(n, max_part) + 1):
        for rest in partitions(n - first, first, min_part):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class WhittakerParams:
    """Data (p, r, zeta) of the Heisenberg module M(1, zeta), <alpha, alpha> = 2p."""

    p: int
    r: int
    zeta: tuple

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be >= 2")
        if self.r < 0:
            raise ValueError("r must be >= 0")
        z = tuple(to_rational(x) for x in self.zeta)
        if len(z) != self.r + 1:
            raise ValueError(f"zeta must have r+1 = {self.r + 1} entries, got {len(z)}")
        object.__setattr__(self, "zeta", z)

    @classmethod
    def vacuum(cls, p: int) -> "WhittakerParams":
        """Parameters of M(1) itself (r = 0, zeta = (0))."""
        return cls(p, 0, (Fraction(0),))

    @classmethod
    def from_zeta(cls, p: int, zeta) -> "WhittakerParams":
        zeta = tuple(zeta)
        return cls(p, len(zeta) - 1, zeta)

    @property
    def is_vacuum(self) -> bool:
        return self.r == 0 and self.zeta[0] == 0

    def require_whittaker(self):
        if self.r < 1 or self.zeta[self.r] == 0:
            raise ValueError("no Whittaker vector with s >= 2: need r >= 1 and zeta_r != 0")


class FockState:
    """Immutable sparse vector ``{monomial: coefficient}`` in one charge sector."""

    __slots__ = ("params", "charge", "_terms", "_hash")

    def __init__(self, params: WhittakerParams, terms: Mapping | None = None, charge: int = 0):
        self.params = params
        self.charge = int(charge)
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = to_rational(c)
                if c:
                    mono = canonical(mono)
                    c = clean.get(mono, 0) + c
                    if c:
                        clean[mono] = c
                    else:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, params, terms, charge=0):
        # trusted constructor: canonical monomials, nonzero Fractions
        obj = cls.__new__(cls)
        obj.params = params
        obj.charge = charge
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, params, charge=0):
        return cls._raw(params, {}, charge)

    @classmethod
    def cyclic(cls, params, charge=0):
        """The cyclic vector u_zeta (the vacuum when params is M(1))."""
        return cls._raw(params, {(): Fraction(1)}, charge)

    @classmethod
    def monomial(cls, params, depths, coeff=1, charge=0):
        return cls(params, {canonical(depths): coeff}, charge)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono) -> Fraction:
        return self._terms.get(canonical(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def sorted_items(self):
        return sorted(self._terms.items())

    def max_weight(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def weights(self) -> set:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def _check_compatible(self, other):
        if not isinstance(other, FockState):
            raise TypeError(f"expected FockState, got {type(other).__name__}")
        if self.charge != other.charge:
            raise StateError(f"charge mismatch: {self.charge} != {other.charge}")
        if self.params != other.params:
            raise StateError("states live in different modules")

    def __add__(self, other):
        return state_add(self, other)

    def __sub__(self, other):
        return state_add(self, state_scale(-1, other))

    def __neg__(self):
        return state_scale(-1, self)

    def __mul__(self, c):
        return state_scale(c, self)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        return (self.charge == other.charge and self.params == other.params
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, self.charge, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "FockState(0)"
        parts = []
        for mono, c in self.sorted_items():
            ops = "".join(f"a({-d})" for d in mono)
            parts.append(f"({c}){ops}u")
        return "FockState(" + " + ".join(parts) + ")"


def state_add(a: FockState, b: FockState) -> FockState:
    a._check_compatible(b)
    out = dict(a._terms)
    for mono, c in b._terms.items():
        v = out.get(mono, 0) + c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return FockState._raw(a.params, out, a.charge)


def state_scale(c, a: FockState) -> FockState:
    c = to_rational(c)
    if not c:
        return FockState.zero(a.params, a.charge)
    return FockState._raw(a.params, {m: c * v for m, v in a._terms.items()}, a.charge)


def linear_combination(pairs, params, charge=0) -> FockState:
    """Sum of ``c * state`` over ``pairs``; empty sum is the zero state."""
    out = {}
    for c, s in pairs:
        c = to_rational(c)
        if not c:
            continue
        if s.params != params or s.charge != charge:
            raise StateError("linear_combination: incompatible state")
        for mono, v in s._terms.items():
            w = out.get(mono, 0) + c * v
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
    return FockState._raw(params, out, charge)


# --- serialization -----------------------------------------------------------

def serialize(a: FockState) -> str:
    """Render ``a`` in the line-oriented ``vsing-state v1`` format.

    Example::

        vsing-state v1
        p 2
        r 1
        zeta 0/1,2/1
        charge 0
        terms {
        [2,1] 3/2
        }

    The zero state has the single line ``terms {}``.  Terms are sorted
    lexicographically by depth sequence, so output is reproducible.
    """
    pr = a.params
    lines = [
        FORMAT_HEADER,
        f"p {pr.p}",
        f"r {pr.r}",
        "zeta " + ",".join(format_rational(z) for z in pr.zeta),
        f"charge {a.charge}",
    ]
    if not a._terms:
        lines.append("terms {}")
    else:
        lines.append("terms {")
        for mono, c in a.sorted_items():
            lines.append("[" + ",".join(str(d) for d in mono) + "] " + format_rational(c))
        lines.append("}")
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(r"^\[([0-9,\s]*)\]\s+(\S+)\s*$")


def deserialize(text: str) -> FockState:
    lines = text.splitlines()
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise ParseError("unexpected end of input", pos + 1)
        pos += 1
        return pos, lines[pos - 1].strip()

    lineno, line = next_line()
    if line != FORMAT_HEADER:
        raise ParseError(f"expected header {FORMAT_HEADER!r}", lineno)

    def int_field(text):
        return int(text)

    def zeta_field(text):
        return tuple(parse_rational(z) for z in text.split(","))

    fields = {}
    for key, conv in (("p", int_field), ("r", int_field), ("zeta", zeta_field),
                      ("charge", int_field)):
        lineno, line = next_line()
        name, _, value = line.partition(" ")
        if name != key or not value.strip():
            raise ParseError(f"expected field {key!r}", lineno)
        try:
            fields[key] = conv(value.strip())
        except ValueError as e:
            raise ParseError(f"bad {key}: {e}", lineno, len(key) + 2) from None
    try:
        params = WhittakerParams(fields["p"], fields["r"], fields["zeta"])
    except ValueError as e:
        raise ParseError(str(e), 2) from None
    charge = fields["charge"]

    lineno, line = next_line()
    if line == "terms {}":
        terms = {}
    elif line == "terms {":
        terms = {}
        while True:
            lineno, line = next_line()
            if line == "}":
                break
            m = _TERM_RE.match(line)
            if not m:
                raise ParseError("malformed term record", lineno)
            body = m.group(1).strip()
            try:
                depths = tuple(int(d) for d in body.split(",")) if body else ()
                mono = canonical(depths)
            except ValueError:
                raise ParseError("bad depth list", lineno, 2) from None
            if mono != depths:
                raise ParseError("depths must be weakly decreasing", lineno, 2)
            if mono in terms:
                raise ParseError("duplicate monomial", lineno, 2)
            try:
                c = parse_rational(m.group(2))
            except ValueError as e:
                raise ParseError(str(e), lineno, line.index("]") + 2) from None
            if c == 0:
                raise ParseError("zero coefficient stored", lineno, line.index("]") + 2)
            terms[mono] = c
    else:
        raise ParseError("expected 'terms {' or 'terms {}'", lineno)
    while pos < len(lines):
        if lines[pos].strip():
            raise ParseError("trailing content", pos + 1)
        pos += 1
    return FockState(params, terms, charge)
