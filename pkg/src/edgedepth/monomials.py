"""Exponent-vector monomials.

A monomial in K[x_1..x_n] is a fixed-length tuple of nonnegative exponents.
Values are immutable and hashable; every operation validates that both
operands live in the same ambient ring (equal length).  Exponents are kept
inside the unsigned 32-bit range; arithmetic that would leave it raises
instead of wrapping, since a silent wrap would corrupt ideal equality.
"""

from __future__ import annotations

import re

from .errors import AmbientMismatchError, ExponentOverflowError, MonomialParseError

MAX_EXPONENT = 2**32 - 1

_TERM_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


class Monomial:
    """A monomial x_1^{e_1} ... x_n^{e_n}, stored as its exponent tuple."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        exps = tuple(exps)
        for e in exps:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {e!r}")
            if e > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {e} exceeds 32-bit range")
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @property
    def ambient(self) -> int:
        return len(self.exps)

    @classmethod
    def unit(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, i: int, n: int, power: int = 1) -> "Monomial":
        """x_i^power in K[x_1..x_n]; i is 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        exps = [0] * n
        exps[i - 1] = power
        return cls(exps)

    def _check(self, other: "Monomial") -> None:
        if len(self.exps) != len(other.exps):
            raise AmbientMismatchError(
                f"ambient mismatch: {len(self.exps)} vs {len(other.exps)} variables"
            )

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def colon(self, other: "Monomial") -> "Monomial":
        """self : other, i.e. self / gcd(self, other)."""
        self._check(other)
        return Monomial(tuple(max(a - b, 0) for a, b in zip(self.exps, other.exps)))

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        out = tuple(a + b for a, b in zip(self.exps, other.exps))
        if any(e > MAX_EXPONENT for e in out):
            raise ExponentOverflowError("product exponent exceeds 32-bit range")
        return Monomial(out)

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("negative power of a monomial")
        out = tuple(e * k for e in self.exps)
        if any(e > MAX_EXPONENT for e in out):
            raise ExponentOverflowError("power exponent exceeds 32-bit range")
        return Monomial(out)

    def is_unit(self) -> bool:
        return not any(self.exps)

    def degree(self) -> int:
        return sum(self.exps)

    def support(self) -> tuple[int, ...]:
        """1-based indices of variables with positive exponent."""
        return tuple(i + 1 for i, e in enumerate(self.exps) if e)

    def last(self) -> int:
        """Largest 1-based index in the support; 0 for the unit."""
        for i in range(len(self.exps) - 1, -1, -1):
            if self.exps[i]:
                return i + 1
        return 0

    def exponent(self, i: int) -> int:
        """Exponent of x_i (1-based)."""
        return self.exps[i - 1]

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __lt__(self, other: "Monomial") -> bool:
        self._check(other)
        return self.exps < other.exps

    def __le__(self, other: "Monomial") -> bool:
        self._check(other)
        return self.exps <= other.exps

    def __repr__(self):
        return f"Monomial({self.exps!r})"

    def __str__(self):
        return format_monomial(self)


def format_monomial(m: Monomial) -> str:
    """Canonical text form: `x1^2*x3`, `^1` omitted, unit printed as `1`."""
    parts = []
    for i, e in enumerate(m.exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    """Inverse of format_monomial in K[x_1..x_n]; round-trip is bit-exact."""
    text = text.strip()
    if text == "1":
        return Monomial.unit(n)
    exps = [0] * n
    for term in text.split("*"):
        match = _TERM_RE.match(term.strip())
        if not match:
            raise MonomialParseError(f"bad monomial term {term!r}")
        i = int(match.group(1))
        e = int(match.group(2)) if match.group(2) else 1
        if not 1 <= i <= n:
            raise MonomialParseError(f"variable x{i} outside ambient x1..x{n}")
        exps[i - 1] += e
    return Monomial(exps)
