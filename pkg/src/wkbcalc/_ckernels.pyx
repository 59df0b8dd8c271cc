# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled star-product kernels; same contract as ``_kernels_py``."""

cdef enum:
    MAXN = 32


cdef inline object _weight(int eu, int ex, int a):
    # binom(eu, a) * ex! / (ex - a)!, exact
    cdef object w = 1
    cdef int t
    for t in range(a):
        w = w * (eu - t) * (ex - t)
    for t in range(2, a + 1):
        w = w // t
    return w


def star_terms(list pterms, list qterms, int n, floor):
    if n > MAXN:
        raise ValueError("dimension too large for compiled kernel")
    cdef dict out = {}
    cdef int px[MAXN]
    cdef int pu[MAXN]
    cdef int qx[MAXN]
    cdef int qu[MAXN]
    cdef int bound[MAXN]
    cdef int alpha[MAXN]
    cdef int i, j, k, top, budget, s, pos
    cdef bint has_floor = floor is not None
    cdef long long fl = floor if has_floor else 0
    cdef object pc, qc, base, w, key, mono
    cdef tuple pm, qm
    cdef list buf = [0] * (2 * n)

    for pt in pterms:
        j = pt[0]
        pm = pt[1]
        pc = pt[2]
        for i in range(n):
            px[i] = pm[i]
            pu[i] = pm[n + i]
        for qt in qterms:
            k = qt[0]
            qm = qt[1]
            qc = qt[2]
            top = j + k
            if has_floor:
                if top - fl < 0:
                    continue
                budget = <int>(top - fl)
            else:
                budget = 1 << 30
            for i in range(n):
                qx[i] = qm[i]
                qu[i] = qm[n + i]
                bound[i] = pu[i] if pu[i] < qx[i] else qx[i]
                alpha[i] = 0
            base = pc * qc
            # odometer over alpha <= bound with |alpha| <= budget
            s = 0
            while True:
                if s <= budget:
                    w = base
                    for i in range(n):
                        if alpha[i]:
                            w = w * _weight(pu[i], qx[i], alpha[i])
                    for i in range(n):
                        buf[i] = px[i] + qx[i] - alpha[i]
                        buf[n + i] = pu[i] - alpha[i] + qu[i]
                    key = (top - s, tuple(buf))
                    out[key] = out.get(key, 0) + w
                pos = 0
                while pos < n:
                    if alpha[pos] < bound[pos] and s < budget:
                        alpha[pos] += 1
                        s += 1
                        break
                    s -= alpha[pos]
                    alpha[pos] = 0
                    pos += 1
                if pos == n:
                    break
    return {key: v for key, v in out.items() if v}


def adjoint_terms(list pterms, int n, floor):
    if n > MAXN:
        raise ValueError("dimension too large for compiled kernel")
    cdef dict out = {}
    cdef int px[MAXN]
    cdef int pu[MAXN]
    cdef int bound[MAXN]
    cdef int alpha[MAXN]
    cdef int i, j, budget, s, pos, udeg
    cdef bint has_floor = floor is not None
    cdef long long fl = floor if has_floor else 0
    cdef object pc, w, key
    cdef tuple pm
    cdef list buf = [0] * (2 * n)

    for pt in pterms:
        j = pt[0]
        pm = pt[1]
        pc = pt[2]
        udeg = 0
        for i in range(n):
            px[i] = pm[i]
            pu[i] = pm[n + i]
            udeg += pu[i]
            bound[i] = px[i] if px[i] < pu[i] else pu[i]
            alpha[i] = 0
        if udeg % 2:
            pc = -pc
        if has_floor:
            if j - fl < 0:
                continue
            budget = <int>(j - fl)
        else:
            budget = 1 << 30
        s = 0
        while True:
            if s <= budget:
                w = pc
                for i in range(n):
                    if alpha[i]:
                        w = w * _weight(pu[i], px[i], alpha[i])
                for i in range(n):
                    buf[i] = px[i] - alpha[i]
                    buf[n + i] = pu[i] - alpha[i]
                key = (j - s, tuple(buf))
                out[key] = out.get(key, 0) + w
            pos = 0
            while pos < n:
                if alpha[pos] < bound[pos] and s < budget:
                    alpha[pos] += 1
                    s += 1
                    break
                s -= alpha[pos]
                alpha[pos] = 0
                pos += 1
            if pos == n:
                break
    return {key: v for key, v in out.items() if v}
