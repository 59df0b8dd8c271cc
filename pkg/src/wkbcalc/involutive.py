"""Involutive submanifolds in the standard linear model and the simple
module supported on them.

The model is ``V = {u1 = ... = ud = 0}`` in ``T*C^n``. The simple module
is ``W / W.(d_1, ..., d_d)`` where ``d_i`` has symbol ``u_i tau``. Since
``sigma(Q o d_i) = sigma(Q) u_i tau`` exactly, the left ideal consists of
the symbols all of whose monomials contain some ``u_i`` with ``i <= d``,
and the class of ``P`` is obtained by setting those variables to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, List, Sequence

from .linalg import RowSpace, rank
from .poly import Poly, monomials_up_to, poisson_bracket
from .symbol import (
    EXACT,
    TruncationWindow,
    WkbSymbol,
    order_of,
    principal_symbol,
    star_compose,
)


@dataclass(frozen=True)
class LinearVariety:
    """Zero set of independent affine-linear forms in ``(x; u)``."""

    n: int
    forms: tuple

    def __post_init__(self):
        forms = tuple(self.forms)
        object.__setattr__(self, "forms", forms)
        for f in forms:
            if f.n != self.n:
                raise ValueError("form dimension mismatch")
            if f.degree() > 1:
                raise ValueError("defining forms must be affine-linear")
        linear = [{m: c for m, c in f.terms.items() if any(m)} for f in forms]
        if rank(linear) != len(forms):
            raise ValueError("defining forms are not linearly independent")


def is_involutive(V: LinearVariety) -> bool:
    """True iff every pairwise Poisson bracket of the forms vanishes on ``V``.

    For affine-linear forms the bracket is a constant, and it vanishes on
    ``V`` exactly when it lies in the span of the forms.
    """
    vecs = [f.terms for f in V.forms]
    base = rank(vecs)
    for a in range(len(V.forms)):
        for b in range(a + 1, len(V.forms)):
            br = poisson_bracket(V.forms[a], V.forms[b])
            if rank(vecs + [br.terms]) != base:
                return False
    return True


@dataclass(frozen=True)
class InvolutiveModel:
    """``V = {u1 = ... = ud = 0}`` of codimension ``d`` in ``T*C^n``."""

    n: int
    d: int

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise ValueError(f"codimension must satisfy 1 <= d <= n, got d={self.d}, n={self.n}")

    @property
    def u_positions(self):
        return tuple(range(self.n, self.n + self.d))

    @property
    def leaf_positions(self):
        """Positions of ``x1..xd`` and ``u1..ud``: a transverse symbol avoids them."""
        return tuple(range(self.d)) + self.u_positions

    def variety(self) -> LinearVariety:
        return LinearVariety(self.n, tuple(Poly.u(self.n, i) for i in range(1, self.d + 1)))


# membership in W_V


def wv_member_fast(P: WkbSymbol, model: InvolutiveModel) -> bool:
    """Degree test: each ``p_j`` with ``j > 0`` lies in ``I_V^j``."""
    if P.floor > 1:
        raise ValueError("window does not cover the positive orders")
    idx = range(1, model.d + 1)
    return all(p.u_degree_min(idx) >= j for j, p in P.coeffs.items() if j > 0)


class WvSpan:
    """Span of bounded products of W_V generators, as a row-reduced basis."""

    def __init__(self, model, max_order, max_deg, window, space, generators):
        self.model = model
        self.max_order = max_order
        self.max_deg = max_deg
        self.window = window
        self.generators = generators
        self._space = space

    @property
    def dim(self) -> int:
        return self._space.dim

    @property
    def basis(self) -> List[WkbSymbol]:
        return [_from_vector(self.model.n, v, self.window) for v in self._space.basis()]

    def contains(self, P: WkbSymbol) -> bool:
        for j, p in P.coeffs.items():
            if j > self.window.ceiling or p.degree() > self.max_deg:
                raise ValueError("symbol lies outside the oracle bounds")
        if P.floor > self.window.floor:
            raise ValueError("symbol window does not cover the oracle window")
        return self._space.contains(_to_vector(P.truncate(self.window.floor)))


def _to_vector(P: WkbSymbol) -> dict:
    return {(j, m): c for j, m, c in P.terms()}


def _from_vector(n, vec, window) -> WkbSymbol:
    return WkbSymbol._from_terms(n, vec, window)


def wv_generators(model: InvolutiveModel, max_deg: int, floor: int) -> List[WkbSymbol]:
    """Order-0 monomial symbols and order-1 symbols ``u_i * m * tau`` (``i <= d``)."""
    n = model.n
    monos = monomials_up_to(2 * n, max_deg)
    gens = []
    for j in range(floor, 1):
        gens.extend(WkbSymbol(n, {j: Poly.monomial(n, m)}) for m in monos)
    seen = set()
    for m in monos:
        for pos in model.u_positions:
            if m[pos] and m not in seen:
                seen.add(m)
                gens.append(WkbSymbol(n, {1: Poly.monomial(n, m)}))
    return gens


def wv_generate_oracle(model: InvolutiveModel, max_order: int, max_deg: int, window: TruncationWindow) -> WvSpan:
    """Brute-force span of all products of at most ``max_order`` generators.

    Products are truncated below the window floor; a product with a term of
    degree above ``max_deg`` or order above the ceiling is discarded whole.
    """
    if max_order > 2 or model.n > 2 or max_deg > 3 or max_order < 1:
        raise ValueError("oracle bounds exceeded (max_order <= 2, n <= 2, max_deg <= 3)")
    if window.is_exact or window.floor > 0:
        raise ValueError("oracle window needs a finite floor <= 0")
    gens = wv_generators(model, max_deg, window.floor)
    space = RowSpace()
    frontier = list(gens)
    for length in range(1, max_order + 1):
        if length > 1:
            frontier = [star_compose(w, g).truncate(window.floor) for w in frontier for g in gens]
        for w in frontier:
            if _within(w, max_deg, window):
                space.add(_to_vector(w.truncate(window.floor)))
    return WvSpan(model, max_order, max_deg, window, space, gens)


def _within(P: WkbSymbol, max_deg: int, window: TruncationWindow) -> bool:
    return all(j <= window.ceiling and p.degree() <= max_deg for j, p in P.coeffs.items())


# the simple module


@dataclass(frozen=True)
class ModuleElement:
    """Class in ``W / W.(d_1..d_d)`` stored by its ``u1..ud``-free representative."""

    model: InvolutiveModel
    rep: WkbSymbol

    def __post_init__(self):
        if self.rep.n != self.model.n:
            raise ValueError("dimension mismatch")
        for p in self.rep.coeffs.values():
            if p.variables() & set(self.model.u_positions):
                raise ValueError("representative is not in normal form")

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def order(self):
        return order_of(self.rep)


def normal_form(P: WkbSymbol, model: InvolutiveModel) -> ModuleElement:
    if P.n != model.n:
        raise ValueError("dimension mismatch")
    pos = model.u_positions
    rep = WkbSymbol(P.n, {j: p.substitute_zero(pos) for j, p in P.coeffs.items()}, P.window)
    return ModuleElement(model, rep)


def module_unit(model: InvolutiveModel, window: TruncationWindow | None = None) -> ModuleElement:
    """The generator ``[1]``."""
    window = window or TruncationWindow(EXACT, 0)
    return ModuleElement(model, WkbSymbol(model.n, {0: Poly.constant(model.n, 1)}, window))


def left_action(P: WkbSymbol, m: ModuleElement) -> ModuleElement:
    return normal_form(star_compose(P, m.rep), m.model)


def is_transverse(Q: WkbSymbol, model: InvolutiveModel) -> bool:
    banned = set(model.leaf_positions)
    return not any(p.variables() & banned for p in Q.coeffs.values())


def right_action_transverse(Q: WkbSymbol, m: ModuleElement) -> ModuleElement:
    """Right multiplication by an operator free of ``x1..xd, u1..ud``.

    Such ``Q`` commutes with every ``d_i`` (``i <= d``), so right
    multiplication preserves the ideal and is an endomorphism.
    """
    if not is_transverse(Q, m.model):
        raise ValueError("right action needs a symbol free of x1..xd and u1..ud")
    return normal_form(star_compose(m.rep, Q), m.model)


def simplicity_failures(model: InvolutiveModel, samples: Iterable[WkbSymbol], window: TruncationWindow | None = None):
    """Samples on which ``W(0)`` does not act on ``[1]`` through ``sigma_0|_V``."""
    unit = module_unit(model, window)
    bad = []
    for P in samples:
        order = order_of(P)
        if isinstance(order, int) and order > 0:
            raise ValueError("simplicity samples must have order <= 0")
        acted = left_action(P, unit).rep
        got = acted.coeff(0)
        want = principal_symbol(P, 0).substitute_zero(model.u_positions)
        if got != want:
            bad.append(P)
    return bad


def simplicity_check(model: InvolutiveModel, samples: Iterable[WkbSymbol], window: TruncationWindow | None = None) -> bool:
    return not simplicity_failures(model, samples, window)


def monomial_samples(model: InvolutiveModel, max_deg: int, orders: Sequence[int] = (-1, 0)) -> List[WkbSymbol]:
    """Every monomial symbol of degree <= max_deg at the given orders."""
    n = model.n
    return [WkbSymbol(n, {j: Poly.monomial(n, m)}) for j, m in product(orders, monomials_up_to(2 * n, max_deg))]
