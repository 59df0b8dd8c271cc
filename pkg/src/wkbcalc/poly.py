"""Sparse multivariate polynomials over the rationals in the cotangent
coordinates ``(x1..xn; u1..un)``.

A monomial is a tuple of ``2n`` non-negative exponents, x-exponents first.
Coefficients are :class:`fractions.Fraction`; zero coefficients are never
stored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Monomial = Tuple[int, ...]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def grlex_key(mono: Monomial):
    """Sort key for graded lexicographic order (x1 > x2 > ... > u1 > ...)."""
    return (sum(mono), mono)


class Poly:
    """Immutable polynomial in ``2n`` variables with exact rational coefficients.

    Parameters
    ----------
    n : int
        Ambient dimension; monomials have length ``2n``.
    terms : mapping
        Monomial tuple -> coefficient. Zero coefficients are dropped.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if n < 0:
            raise ValueError("dimension must be non-negative")
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != 2 * n:
                    raise ValueError(f"monomial {mono} has length {len(mono)}, expected {2 * n}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = as_rational(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
                    if not clean[mono]:
                        del clean[mono]
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[Monomial, Fraction]) -> "Poly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "Poly":
        c = as_rational(c)
        return cls._raw(n, {(0,) * (2 * n): c} if c else {})

    @classmethod
    def monomial(cls, n: int, mono: Monomial, c=1) -> "Poly":
        return cls(n, {tuple(mono): c})

    @classmethod
    def x(cls, n: int, i: int) -> "Poly":
        """The coordinate ``x_i`` (1-based)."""
        return cls.monomial(n, _unit(n, i - 1))

    @classmethod
    def u(cls, n: int, i: int) -> "Poly":
        """The fibre coordinate ``u_i`` (1-based)."""
        return cls.monomial(n, _unit(n, n + i - 1))

    # access
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        for mono in sorted(self._terms, key=grlex_key, reverse=True):
            yield mono, self._terms[mono]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def u_degree_min(self, indices: Iterable[int]) -> int:
        """Smallest total degree in the given u-variables (1-based) over all terms."""
        idx = [self.n + i - 1 for i in indices]
        return min((sum(m[k] for k in idx) for m in self._terms), default=-1)

    def variables(self) -> set:
        """Positions (0-based, length-2n convention) occurring with positive exponent."""
        used = set()
        for m in self._terms:
            used.update(k for k, e in enumerate(m) if e)
        return used

    # arithmetic
    def _check(self, other: "Poly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(self.n, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, pos: int, times: int = 1) -> "Poly":
        """Derivative in the variable at 0-based position ``pos`` of the monomial."""
        out = {}
        for m, c in self._terms.items():
            e = m[pos]
            if e < times:
                continue
            w = 1
            for t in range(times):
                w *= e - t
            mm = list(m)
            mm[pos] = e - times
            out[tuple(mm)] = c * w
        return Poly._raw(self.n, out)

    def dx(self, i: int, times: int = 1) -> "Poly":
        return self.diff(i - 1, times)

    def du(self, i: int, times: int = 1) -> "Poly":
        return self.diff(self.n + i - 1, times)

    def substitute_zero(self, positions: Iterable[int]) -> "Poly":
        """Set the variables at the given 0-based positions to zero."""
        pos = tuple(positions)
        return Poly._raw(self.n, {m: c for m, c in self._terms.items() if not any(m[p] for p in pos)})

    def negate_u(self) -> "Poly":
        """The polynomial ``f(x; -u)``."""
        n = self.n
        out = {}
        for m, c in self._terms.items():
            out[m] = -c if sum(m[n:]) % 2 else c
        return Poly._raw(n, out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for e, z in zip(m, point):
                if e:
                    v *= Fraction(z) ** e
            total += v
        return total

    # comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(self.n, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .parse import format_poly

        return f"Poly({self.n}, {format_poly(self)!r})"


def _unit(n: int, pos: int) -> Monomial:
    if not 0 <= pos < 2 * n:
        raise ValueError(f"variable index out of range for dimension {n}")
    m = [0] * (2 * n)
    m[pos] = 1
    return tuple(m)


def poisson_bracket(f: Poly, g: Poly) -> Poly:
    """``{f, g} = sum_i (df/du_i dg/dx_i - df/dx_i dg/du_i)``."""
    f._check(g)
    out = Poly.zero(f.n)
    for i in range(1, f.n + 1):
        out = out + f.du(i) * g.dx(i) - f.dx(i) * g.du(i)
    return out


def monomials_up_to(nvars: int, max_deg: int) -> list:
    """All exponent tuples of length ``nvars`` with total degree <= max_deg, grlex ascending."""
    out = []

    def rec(prefix, left, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            prefix.append(e)
            rec(prefix, left - e, remaining - 1)
            prefix.pop()

    rec([], max_deg, nvars)
    out.sort(key=grlex_key)
    return out
