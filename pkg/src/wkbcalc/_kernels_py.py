"""Pure-Python star-product kernels.

Both kernels work on integer numerators; callers put the coefficients of
each operand over a common denominator first, so no Fraction arithmetic
happens in the inner loop. A term is ``(order, monomial, numerator)``.
The result maps ``(order, monomial)`` to an integer numerator.
"""
from itertools import product
from math import comb, perm


def _alphas(bounds, budget):
    ranges = [range(b + 1) for b in bounds]
    for alpha in product(*ranges):
        if sum(alpha) <= budget:
            yield alpha


def star_terms(pterms, qterms, n, floor):
    """Normal-ordered composition sum over all multi-indices alpha.

    Contributions landing below ``floor`` (None = no floor) are skipped.
    """
    out = {}
    for j, pm, pc in pterms:
        pu = pm[n:]
        px = pm[:n]
        for k, qm, qc in qterms:
            qx = qm[:n]
            qu = qm[n:]
            top = j + k
            budget = top - floor if floor is not None else sum(pu)
            if budget < 0:
                continue
            bounds = [min(a, b) for a, b in zip(pu, qx)]
            base = pc * qc
            for alpha in _alphas(bounds, budget):
                w = base
                for a, eu, ex in zip(alpha, pu, qx):
                    if a:
                        w *= comb(eu, a) * perm(ex, a)
                mono = tuple(a + b - c for a, b, c in zip(px, qx, alpha)) + tuple(
                    a - c + b for a, b, c in zip(pu, qu, alpha)
                )
                key = (top - sum(alpha), mono)
                out[key] = out.get(key, 0) + w
    return {key: v for key, v in out.items() if v}


def adjoint_terms(pterms, n, floor):
    """``sum_alpha (1/alpha!) d_u^alpha d_x^alpha`` applied to ``p(x; -u)``."""
    out = {}
    for j, pm, pc in pterms:
        px = pm[:n]
        pu = pm[n:]
        if sum(pu) % 2:
            pc = -pc
        budget = j - floor if floor is not None else sum(pu)
        if budget < 0:
            continue
        bounds = [min(a, b) for a, b in zip(px, pu)]
        for alpha in _alphas(bounds, budget):
            w = pc
            for a, ex, eu in zip(alpha, px, pu):
                if a:
                    w *= comb(eu, a) * perm(ex, a)
            mono = tuple(a - c for a, c in zip(px, alpha)) + tuple(b - c for b, c in zip(pu, alpha))
            key = (j - sum(alpha), mono)
            out[key] = out.get(key, 0) + w
    return {key: v for key, v in out.items() if v}
