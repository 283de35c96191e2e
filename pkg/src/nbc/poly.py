"""Monomials and sparse polynomials over prime fields GF(p)."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def parse_field(text: str | int) -> int:
    """'gf2' / 'gf3' / 'GF(5)' / 7 -> the prime modulus."""
    if isinstance(text, int):
        modulus = text
    else:
        s = text.strip().lower().replace("(", "").replace(")", "")
        if s.startswith("gf"):
            s = s[2:]
        try:
            modulus = int(s)
        except ValueError:
            raise FieldError(f"unrecognised field {text!r}; use gf2 or gf<p>") from None
    if not is_prime(modulus):
        raise FieldError(f"{modulus} is not prime")
    return modulus


def field_name(modulus: int) -> str:
    return f"gf{modulus}"


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def unit(k: int, i: int, power: int = 1) -> Monomial:
    """x_i^power in k variables (i is 1-based)."""
    return tuple(power if j == i - 1 else 0 for j in range(k))


@lru_cache(maxsize=None)
def monomials_of_degree(k: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in k variables, graded-lex (x_1^d first)."""
    if d < 0:
        return ()
    if k == 0:
        return ((),) if d == 0 else ()
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(k - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


class FieldPolynomial:
    """Sparse polynomial in ``nvars`` variables over GF(modulus).

    Terms map exponent tuples to nonzero residues in 1..modulus-1.
    """

    __slots__ = ("modulus", "nvars", "terms")

    def __init__(self, modulus: int, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.modulus = modulus
        self.nvars = nvars
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} variables")
            c %= modulus
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, modulus: int, m: Monomial, coeff: int = 1) -> "FieldPolynomial":
        return cls(modulus, len(m), {m: coeff})

    @classmethod
    def variable(cls, modulus: int, nvars: int, i: int) -> "FieldPolynomial":
        return cls(modulus, nvars, {unit(nvars, i): 1})

    @classmethod
    def linear(cls, modulus: int, nvars: int, coeffs: Mapping[int, int]) -> "FieldPolynomial":
        """sum c_i x_i for 1-based variable indices i."""
        terms: dict[Monomial, int] = {}
        for i, c in coeffs.items():
            m = unit(nvars, i)
            terms[m] = terms.get(m, 0) + c
        return cls(modulus, nvars, terms)

    def _check(self, other: "FieldPolynomial") -> None:
        if other.modulus != self.modulus or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return FieldPolynomial(self.modulus, self.nvars, terms)

    def __neg__(self) -> "FieldPolynomial":
        return FieldPolynomial(self.modulus, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "FieldPolynomial":
        if isinstance(other, int):
            return FieldPolynomial(self.modulus, self.nvars, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = (terms.get(m, 0) + c1 * c2) % self.modulus
        return FieldPolynomial(self.modulus, self.nvars, terms)

    __rmul__ = __mul__

    def shift(self, m: Monomial) -> "FieldPolynomial":
        """Multiply by a monomial."""
        return FieldPolynomial(self.modulus, self.nvars, {mono_mul(m, t): c for t, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldPolynomial):
            return NotImplemented
        return (self.modulus, self.nvars, self.terms) == (other.modulus, other.nvars, other.terms)

    def __hash__(self) -> int:
        return hash((self.modulus, self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms.items())

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(self.terms)

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def signed_coefficient(self, m: Monomial) -> int:
        """Coefficient as an integer in (-modulus/2, modulus/2]."""
        c = self.coefficient(m)
        return c - self.modulus if c > self.modulus // 2 else c

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def substitute(self, i: int, value: "FieldPolynomial") -> "FieldPolynomial":
        """Replace x_i (1-based) by ``value`` everywhere."""
        out = FieldPolynomial(self.modulus, self.nvars)
        for m, c in self.terms.items():
            e = m[i - 1]
            rest = FieldPolynomial.monomial(self.modulus, m[: i - 1] + (0,) + m[i:], c)
            for _ in range(e):
                rest = rest * value
            out = out + rest
        return out

    def project(self, keep: int) -> "FieldPolynomial":
        """Restrict to the first ``keep`` variables (they must be the only ones used)."""
        terms = {}
        for m, c in self.terms.items():
            if any(m[keep:]):
                raise ValueError(f"polynomial uses variables beyond x_{keep}")
            terms[m[:keep]] = c
        return FieldPolynomial(self.modulus, keep, terms)

    def set_zero(self, i: int) -> "FieldPolynomial":
        """Set x_i = 0."""
        return FieldPolynomial(self.modulus, self.nvars, {m: c for m, c in self.terms.items() if m[i - 1] == 0})

    def __repr__(self) -> str:
        return f"FieldPolynomial(gf{self.modulus}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, reverse=True):
            c = self.signed_coefficient(m)
            body = format_monomial(m)
            if c == 1:
                out.append(f"+ {body}")
            elif c == -1:
                out.append(f"- {body}")
            else:
                sign = "-" if c < 0 else "+"
                out.append(f"{sign} {abs(c)}*{body}" if body != "1" else f"{sign} {abs(c)}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def product(polys: Iterable[FieldPolynomial], modulus: int, nvars: int) -> FieldPolynomial:
    out = FieldPolynomial.monomial(modulus, (0,) * nvars)
    for f in polys:
        out = out * f
    return out
