"""Random generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from wkbcalc.poly import Poly
from wkbcalc.symbol import EXACT, TruncationWindow, WkbSymbol


def random_rational(rng: random.Random, size: int = 5) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-size, size)
    return Fraction(num, rng.randint(1, 3))


def random_mono(rng, n, max_deg=2, positions=None):
    positions = list(range(2 * n)) if positions is None else list(positions)
    mono = [0] * (2 * n)
    for _ in range(rng.randint(0, max_deg)):
        if positions:
            mono[rng.choice(positions)] += 1
    return tuple(mono)


def random_poly(rng, n, max_terms=5, max_deg=2, positions=None) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_mono(rng, n, max_deg, positions)] = random_rational(rng)
    return Poly(n, terms)


def random_symbol(rng, n=None, orders=(-3, 3), max_terms=5, max_deg=2, exact=None, positions=None, max_orders=3) -> WkbSymbol:
    """Sparse random symbol; the window floor is finite unless ``exact``."""
    n = n or rng.randint(1, 3)
    lo, hi = orders
    picked = rng.sample(range(lo, hi + 1), rng.randint(1, min(max_orders, hi - lo + 1)))
    coeffs = {j: random_poly(rng, n, max_terms, max_deg, positions) for j in picked}
    if exact is None:
        exact = rng.random() < 0.5
    top = max(picked)
    floor = EXACT if exact else rng.randint(lo, min(picked))
    return WkbSymbol(n, coeffs, TruncationWindow(floor, top))


@st.composite
def symbols(draw, n=None, orders=(-3, 3), exact=None, max_deg=2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_symbol(random.Random(seed), n=n, orders=orders, exact=exact, max_deg=max_deg)


@st.composite
def symbol_tuples(draw, k, orders=(-3, 3), exact=None, max_deg=2):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    return tuple(random_symbol(rng, n=n, orders=orders, exact=exact, max_deg=max_deg) for _ in range(k))


def sym(text, n=None):
    """Exact symbol from the text grammar."""
    from wkbcalc.parse import parse_symbol

    return parse_symbol(text, n, EXACT)


def center_kernel_dim(n: int, max_deg: int, orders=(-3, 3)):
    """Dimension of the space of exact symbols (bounded monomial basis)
    commuting with every ``x_i`` and ``d_i``, and the number of basis
    elements that are pure ``tau`` powers."""
    from wkbcalc.linalg import rank
    from wkbcalc.poly import monomials_up_to
    from wkbcalc.symbol import commutator, d, x

    gens = [x(n, i) for i in range(1, n + 1)] + [d(n, i) for i in range(1, n + 1)]
    basis = [(j, m) for j in range(orders[0], orders[1] + 1) for m in monomials_up_to(2 * n, max_deg)]
    images = []
    for j, m in basis:
        P = WkbSymbol(n, {j: Poly.monomial(n, m)}, TruncationWindow(EXACT, orders[1]))
        vec = {}
        for g_idx, g in enumerate(gens):
            for jj, mono, c in commutator(P, g).terms():
                vec[(g_idx, jj, mono)] = c
        images.append(vec)
    # kernel dimension of the linear map basis -> images
    # rank of the map equals the rank of the image vectors
    kernel = len(basis) - rank(images)
    constants = sum(1 for _, m in basis if not any(m))
    return kernel, constants


RP2_TRIANGLES = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def tetrahedron_nerve():
    from wkbcalc.descent import Nerve

    return Nerve.from_top(4, [(0, 1, 2, 3)])


def sphere_nerve():
    """Boundary of the tetrahedron."""
    from itertools import combinations

    from wkbcalc.descent import Nerve

    return Nerve.from_top(4, list(combinations(range(4), 3)))


def rp2_nerve():
    """Six-vertex triangulation of the real projective plane."""
    from wkbcalc.descent import Nerve

    return Nerve.from_top(6, RP2_TRIANGLES)


def random_invertible(rng, k=2, size=3):
    from wkbcalc.linalg import det

    while True:
        m = [[Fraction(rng.randint(-size, size)) for _ in range(k)] for _ in range(k)]
        if det(m) != 0:
            return m


def z2_cohomology_order(nerve, degree):
    """|H^degree(nerve; Z/2)| by enumerating every cochain as a bitmask."""
    from wkbcalc.descent import coboundary_matrix

    def masks(k):
        # coboundary image of each basis cochain, as a bitmask over (k+1)-simplices
        mat = coboundary_matrix(nerve, k)
        cols = len(nerve.simplices(k))
        return [sum(1 << r for r, row in enumerate(mat) if row[c] % 2) for c in range(cols)]

    def span(gens):
        # Gray-code walk over all subsets of the generators
        seen = {0}
        cur = 0
        for i in range(1, 1 << len(gens)):
            bit = (i & -i).bit_length() - 1
            cur ^= gens[bit]
            seen.add(cur)
        return seen

    n = len(nerve.simplices(degree))
    if degree < 3 and nerve.simplices(degree + 1):
        outgoing = masks(degree)
        cocycles = [v for v in range(1 << n) if not _apply(outgoing, v)]
    else:
        cocycles = range(1 << n)
    image = span(masks(degree - 1)) if degree > 0 else {0}
    assert len(cocycles) % len(image) == 0
    return len(cocycles) // len(image)


def _apply(gen_masks, v):
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= gen_masks[i]
        v >>= 1
        i += 1
    return out
