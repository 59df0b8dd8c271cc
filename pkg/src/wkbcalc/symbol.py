"""Total symbols of WKB operators and their exact calculus.

A symbol is a Laurent polynomial in ``tau`` whose coefficients are
:class:`~wkbcalc.poly.Poly` in ``(x; u)``. Only a window of ``tau``-orders
is known exactly; every operation computes the window on which its result
is guaranteed and never stores anything outside it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Mapping, Union

from . import kernels
from .poly import Monomial, Poly, as_rational

EXACT = -math.inf
"""Floor value of a symbol with no unknown tail (a finite, exact sum)."""

Floor = Union[int, float]


class Marker(enum.Enum):
    BELOW_WINDOW = "below-window"
    NO_NEGATIVE_ORDERS = "no-negative-orders"

    def __str__(self):
        return self.value


BELOW_WINDOW = Marker.BELOW_WINDOW
NO_NEGATIVE_ORDERS = Marker.NO_NEGATIVE_ORDERS


@dataclass(frozen=True)
class TruncationWindow:
    """Orders ``floor <= j <= ceiling`` are exact; above ``ceiling`` the
    coefficients vanish; below ``floor`` they are unknown.

    ``floor`` is an int, or :data:`EXACT` when nothing is unknown.
    """

    floor: Floor
    ceiling: int

    def __post_init__(self):
        if self.floor != EXACT and not isinstance(self.floor, int):
            raise TypeError("window floor must be an int or EXACT")
        if self.floor > self.ceiling:
            raise ValueError(f"window floor {self.floor} exceeds ceiling {self.ceiling}")

    @property
    def is_exact(self) -> bool:
        return self.floor == EXACT

    def __contains__(self, j: int) -> bool:
        return self.floor <= j <= self.ceiling

    def as_list(self):
        return ["-inf" if self.is_exact else self.floor, self.ceiling]


def _floor_arg(floor: Floor):
    # kernel convention: None means no floor
    return None if floor == EXACT else int(floor)


class WkbSymbol:
    """Total symbol ``sum_j p_j(x; u) tau^j`` on a truncation window.

    Parameters
    ----------
    n : int
        Ambient dimension (``2n`` coordinates).
    coeffs : mapping
        ``tau``-order -> :class:`Poly`. Zero polynomials are dropped; every
        order must lie in the window.
    window : TruncationWindow, optional
        Defaults to an exact symbol whose ceiling is the top stored order.
    """

    __slots__ = ("n", "window", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Poly] | None = None, window: TruncationWindow | None = None):
        clean: Dict[int, Poly] = {}
        for j, p in (coeffs or {}).items():
            if not isinstance(p, Poly):
                p = Poly.constant(n, p)
            if p.n != n:
                raise ValueError(f"coefficient of tau^{j} has dimension {p.n}, expected {n}")
            if p:
                clean[int(j)] = p
        if window is None:
            window = TruncationWindow(EXACT, max(clean, default=0))
        for j in clean:
            if j not in window:
                raise ValueError(f"order {j} outside window {window.as_list()}")
        self.n = n
        self.window = window
        self._coeffs = clean

    @classmethod
    def _from_terms(cls, n, terms, window):
        """Build from ``{(order, monomial): Fraction}``, dropping orders below the floor."""
        by_order: Dict[int, Dict[Monomial, Fraction]] = {}
        for (j, mono), c in terms.items():
            if c and j >= window.floor:
                by_order.setdefault(j, {})[mono] = c
        return cls(n, {j: Poly._raw(n, t) for j, t in by_order.items()}, window)

    @property
    def coeffs(self) -> Mapping[int, Poly]:
        return MappingProxyType(self._coeffs)

    def coeff(self, j: int) -> Poly:
        """Coefficient of ``tau^j``; raises if that order is not guaranteed."""
        if j < self.window.floor:
            raise ValueError(f"order {j} is below the window floor {self.window.floor}")
        return self._coeffs.get(j, Poly.zero(self.n))

    @property
    def floor(self) -> Floor:
        return self.window.floor

    @property
    def ceiling(self) -> int:
        return self.window.ceiling

    def is_zero(self) -> bool:
        return not self._coeffs

    def with_window(self, window: TruncationWindow) -> "WkbSymbol":
        """Re-window: orders below the new floor are forgotten.

        The new ceiling must still bound every stored order.
        """
        kept = {j: p for j, p in self._coeffs.items() if j >= window.floor}
        return WkbSymbol(self.n, kept, window)

    def truncate(self, floor: Floor) -> "WkbSymbol":
        """Forget orders below ``floor``; a ceiling under the floor is lifted to it."""
        floor = max(floor, self.floor)
        return self.with_window(TruncationWindow(floor, max(floor, self.ceiling)))

    def terms(self):
        """``[(order, monomial, coefficient)]`` with orders ascending."""
        return [(j, m, c) for j in sorted(self._coeffs) for m, c in self._coeffs[j]._terms.items()]

    def agrees_with(self, other: "WkbSymbol") -> bool:
        """Equality on the intersection of the two guaranteed windows."""
        _same_dim(self, other)
        fl = max(self.floor, other.floor)
        orders = {j for j in self._coeffs if j >= fl} | {j for j in other._coeffs if j >= fl}
        return all(self._coeffs.get(j) == other._coeffs.get(j) for j in orders)

    def __eq__(self, other):
        if not isinstance(other, WkbSymbol):
            return NotImplemented
        return self.n == other.n and self.window == other.window and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, self.window, frozenset(self._coeffs.items())))

    def __add__(self, other):
        return add(self, _coerce(self, other))

    def __radd__(self, other):
        return add(_coerce(self, other), self)

    def __neg__(self):
        return WkbSymbol(self.n, {j: -p for j, p in self._coeffs.items()}, self.window)

    def __sub__(self, other):
        return add(self, -_coerce(self, other))

    def __rsub__(self, other):
        return add(_coerce(self, other), -self)

    def __matmul__(self, other):
        return star_compose(self, _coerce(self, other))

    def scale(self, c) -> "WkbSymbol":
        c = as_rational(c)
        return WkbSymbol(self.n, {j: p.scale(c) for j, p in self._coeffs.items()}, self.window)

    def __repr__(self):
        from .parse import format_symbol

        return f"WkbSymbol({format_symbol(self, window=True)!r})"


class CentralSeries(WkbSymbol):
    """A symbol depending on ``tau`` alone: an element of the center."""

    __slots__ = ()

    def __init__(self, n: int, coeffs: Mapping[int, object] | None = None, window: TruncationWindow | None = None):
        polys = {j: c if isinstance(c, Poly) else Poly.constant(n, c) for j, c in (coeffs or {}).items()}
        for j, p in polys.items():
            if not p.is_constant():
                raise ValueError(f"coefficient of tau^{j} is not constant")
        super().__init__(n, polys, window)


def _coerce(ref: WkbSymbol, other) -> WkbSymbol:
    if isinstance(other, WkbSymbol):
        return other
    if isinstance(other, Poly):
        return WkbSymbol(ref.n, {0: other})
    return WkbSymbol(ref.n, {0: Poly.constant(ref.n, other)})


def _same_dim(p: WkbSymbol, q: WkbSymbol):
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")


# constructors


def symbol(n: int, coeffs=None, floor: Floor = EXACT, ceiling: int | None = None) -> WkbSymbol:
    """Convenience constructor; ``coeffs`` maps order -> Poly or constant."""
    coeffs = {j: c if isinstance(c, Poly) else Poly.constant(n, c) for j, c in (coeffs or {}).items()}
    present = [j for j, p in coeffs.items() if p]
    if ceiling is None:
        ceiling = max(present, default=0)
    return WkbSymbol(n, coeffs, TruncationWindow(floor, ceiling))


def one(n: int) -> WkbSymbol:
    return WkbSymbol(n, {0: Poly.constant(n, 1)})


def x(n: int, i: int) -> WkbSymbol:
    return WkbSymbol(n, {0: Poly.x(n, i)})


def d(n: int, i: int) -> WkbSymbol:
    """Symbol ``u_i tau`` of the derivation in ``x_i``."""
    return WkbSymbol(n, {1: Poly.u(n, i)})


def tau_power(n: int, k: int) -> WkbSymbol:
    return WkbSymbol(n, {k: Poly.constant(n, 1)}, TruncationWindow(EXACT, k))


# ring operations


def add(P: WkbSymbol, Q: WkbSymbol) -> WkbSymbol:
    """Coefficientwise sum on ``[max floor, max ceiling]``."""
    _same_dim(P, Q)
    window = TruncationWindow(max(P.floor, Q.floor), max(P.ceiling, Q.ceiling))
    out: Dict[int, Poly] = {}
    for src in (P._coeffs, Q._coeffs):
        for j, p in src.items():
            if j >= window.floor:
                out[j] = out[j] + p if j in out else p
    return WkbSymbol(P.n, out, window)


def _common_denominator(S: WkbSymbol):
    den = 1
    for _, _, c in S.terms():
        den = den * c.denominator // math.gcd(den, c.denominator)
    terms = [(j, m, c.numerator * (den // c.denominator)) for j, m, c in S.terms()]
    return terms, den


def compose_window(P: WkbSymbol, Q: WkbSymbol) -> TruncationWindow:
    return TruncationWindow(max(P.floor + Q.ceiling, Q.floor + P.ceiling), P.ceiling + Q.ceiling)


def star_compose(P: WkbSymbol, Q: WkbSymbol) -> WkbSymbol:
    """Total symbol of the composite ``P o Q``.

    ``sigma(P o Q) = sum_alpha tau^-|alpha| / alpha! * d_u^alpha sigma(P) * d_x^alpha sigma(Q)``
    """
    _same_dim(P, Q)
    window = compose_window(P, Q)
    pt, pden = _common_denominator(P)
    qt, qden = _common_denominator(Q)
    raw = kernels.star_terms(pt, qt, P.n, _floor_arg(window.floor))
    den = pden * qden
    return WkbSymbol._from_terms(P.n, {k: Fraction(v, den) for k, v in raw.items()}, window)


def commutator(P: WkbSymbol, Q: WkbSymbol) -> WkbSymbol:
    return add(star_compose(P, Q), -star_compose(Q, P))


def order_of(P: WkbSymbol):
    """Largest order with a nonzero coefficient, or :data:`BELOW_WINDOW`."""
    if not P._coeffs:
        return BELOW_WINDOW
    return max(P._coeffs)


def principal_symbol(P: WkbSymbol, m: int) -> Poly:
    """The coefficient ``p_m``, i.e. the class of ``P`` modulo order ``m - 1``.

    Raises ``ValueError`` when ``P`` has order above ``m`` or when order ``m``
    is below the guaranteed window.
    """
    order = order_of(P)
    if order is not BELOW_WINDOW and order > m:
        raise ValueError(f"symbol has order {order} > {m}")
    if m < P.floor:
        raise ValueError(f"order {m} is below the window floor {P.floor}")
    return P._coeffs.get(m, Poly.zero(P.n))


def adjoint_star(P: WkbSymbol) -> WkbSymbol:
    """Formal adjoint (anti-involution) with ``u -> -u`` and ``tau`` fixed.

    ``sigma(P*) = sum_alpha tau^-|alpha| / alpha! * d_u^alpha d_x^alpha [sigma(P)(x; -u)]``
    """
    pt, den = _common_denominator(P)
    raw = kernels.adjoint_terms(pt, P.n, _floor_arg(P.floor))
    return WkbSymbol._from_terms(P.n, {k: Fraction(v, den) for k, v in raw.items()}, P.window)


def is_central_form(P: WkbSymbol) -> bool:
    return all(p.is_constant() for p in P._coeffs.values())


# growth estimate


def _iroot_floor(a: int, k: int) -> int:
    import gmpy2

    return int(gmpy2.iroot(a, k)[0])


def _exact_root(r: Fraction, k: int):
    import gmpy2

    num, ok1 = gmpy2.iroot(r.numerator, k)
    den, ok2 = gmpy2.iroot(r.denominator, k)
    if ok1 and ok2:
        return Fraction(int(num), int(den))
    return None


def estimate_fit(P: WkbSymbol, radius, precision=Fraction(1, 10**12)):
    """Smallest ``C`` with ``sup_K |p_j| <= C^-j (-j)!`` for every stored ``j < 0``.

    ``K`` is the closed polydisc of the given radius at the origin and
    ``sup_K |p_j|`` is replaced by the majorant ``sum |c| radius^deg``.
    The constant is ``max_j (M_j / (-j)!)^(1/-j)``; when that root is
    irrational the result is rounded up to a multiple of ``precision``.
    Returns :data:`NO_NEGATIVE_ORDERS` when no negative order is stored.
    """
    radius = as_rational(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    candidates = []
    for j, p in P._coeffs.items():
        if j >= 0:
            continue
        k = -j
        majorant = sum((abs(c) * radius ** sum(m) for m, c in p._terms.items()), Fraction(0))
        candidates.append((majorant / math.factorial(k), k))
    if not candidates:
        return NO_NEGATIVE_ORDERS
    # compare r1^(1/k1) with r2^(1/k2) exactly via r1^k2 vs r2^k1
    best_r, best_k = candidates[0]
    for r, k in candidates[1:]:
        if r**best_k > best_r**k:
            best_r, best_k = r, k
    exact = _exact_root(best_r, best_k)
    if exact is not None:
        return exact
    q = as_rational(precision)
    # smallest multiple t*q with (t*q)^k >= r
    scaled = best_r / q**best_k
    t = _iroot_floor(scaled.numerator // scaled.denominator, best_k)
    while Fraction(t) ** best_k < scaled:
        t += 1
    return t * q
