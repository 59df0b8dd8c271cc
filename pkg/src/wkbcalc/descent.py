"""Descent data for algebroid stacks over a finite nerve.

Gluing data here are constant matrix algebras: ``g[i, j]`` is an invertible
matrix standing for the algebra isomorphism ``ad(g[i, j])`` and ``a[i, j, k]``
are invertible matrices. Cohomology of the nerve is computed with
coefficients in Z (modulus 0) or Z/N, exactly, through Smith normal form.

Orientation conventions: data are stored on strictly increasing tuples.
Reversed edges use ``g[j, i] = g[i, j]^-1``; permuted triangles use
``a[x, z, y] = a[x, y, z]^-1`` and ``a[y, x, z] = g[x, y]^-1 a[x, y, z]^-1 g[x, y]``
(see :meth:`MatrixGluingData.oriented_a`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .snf import SnfResult, smith_normal_form

Simplex = Tuple[int, ...]


class DescentError(ValueError):
    """Malformed descent input: missing data, singular matrix, bad nerve."""


class NotACocycle(ValueError):
    pass


# nerves


@dataclass(frozen=True)
class Nerve:
    """Finite nerve of a covering, up to tetrahedra.

    Simplices are strictly increasing vertex tuples; every face of a stored
    simplex must be stored.
    """

    vertex_count: int
    edges: Tuple[Simplex, ...] = ()
    triangles: Tuple[Simplex, ...] = ()
    tetrahedra: Tuple[Simplex, ...] = ()

    def __post_init__(self):
        for name, size in (("edges", 2), ("triangles", 3), ("tetrahedra", 4)):
            items = tuple(sorted({tuple(s) for s in getattr(self, name)}))
            for s in items:
                if len(s) != size:
                    raise DescentError(f"{name} entry {s} has {len(s)} vertices")
                if any(b <= a for a, b in zip(s, s[1:])):
                    raise DescentError(f"simplex {s} is not strictly increasing")
                if s[0] < 0 or s[-1] >= self.vertex_count:
                    raise DescentError(f"simplex {s} uses a vertex outside 0..{self.vertex_count - 1}")
            object.__setattr__(self, name, items)
        for k in (2, 3):
            have = set(self.simplices(k - 1))
            for s in self.simplices(k):
                for face in faces(s):
                    if face not in have:
                        raise DescentError(f"nerve is not face-closed: {face} missing below {s}")

    @classmethod
    def from_top(cls, vertex_count: int, simplices: Sequence[Sequence[int]]) -> "Nerve":
        """Face-closure of the given simplices."""
        parts = {2: set(), 3: set(), 4: set()}
        for s in simplices:
            s = tuple(sorted(s))
            for size in range(2, len(s) + 1):
                parts[size].update(combinations(s, size))
        return cls(vertex_count, tuple(parts[2]), tuple(parts[3]), tuple(parts[4]))

    def simplices(self, k: int) -> Tuple[Simplex, ...]:
        if k == 0:
            return tuple((i,) for i in range(self.vertex_count))
        if k == 1:
            return self.edges
        if k == 2:
            return self.triangles
        if k == 3:
            return self.tetrahedra
        return ()

    def index(self, k: int) -> Dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices(k))}


def faces(s: Simplex) -> List[Simplex]:
    """Faces with the i-th vertex dropped, i = 0, 1, ..."""
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def coboundary_matrix(nerve: Nerve, k: int) -> List[List[int]]:
    """Integer matrix of the coboundary from degree k to k + 1 (rows: (k+1)-simplices)."""
    cols = nerve.index(k)
    out = []
    for s in nerve.simplices(k + 1):
        row = [0] * len(cols)
        for i, face in enumerate(faces(s)):
            row[cols[face]] += -1 if i % 2 else 1
        out.append(row)
    return out


# cochains


@dataclass(frozen=True)
class Cochain:
    """Cochain of the given degree with coefficients in Z (modulus 0) or Z/N."""

    degree: int
    modulus: int
    values: Dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise DescentError("cochain degree must be 0..3")
        if self.modulus < 0 or self.modulus == 1:
            raise DescentError("modulus must be 0 (integers) or at least 2")
        vals = {}
        for s, v in self.values.items():
            s = tuple(s)
            if len(s) != self.degree + 1:
                raise DescentError(f"simplex {s} does not have degree {self.degree}")
            v = int(v)
            if self.modulus:
                v %= self.modulus
            if v:
                vals[s] = v
        object.__setattr__(self, "values", dict(sorted(vals.items())))

    def __getitem__(self, s) -> int:
        return self.values.get(tuple(s), 0)

    def vector(self, nerve: Nerve) -> List[int]:
        idx = nerve.index(self.degree)
        for s in self.values:
            if s not in idx:
                raise DescentError(f"cochain value on {s}, which is not a simplex of the nerve")
        return [self.values.get(s, 0) for s in nerve.simplices(self.degree)]

    @classmethod
    def from_vector(cls, nerve: Nerve, degree: int, vec: Sequence[int], modulus: int = 0) -> "Cochain":
        return cls(degree, modulus, dict(zip(nerve.simplices(degree), vec)))

    def reduce(self, modulus: int) -> "Cochain":
        if self.modulus and self.modulus % modulus:
            raise DescentError("can only reduce to a divisor of the current modulus")
        return Cochain(self.degree, modulus, self.values)

    def is_zero(self) -> bool:
        return not self.values


def coboundary(c: Cochain, nerve: Nerve) -> Cochain:
    """``(dc)(s) = sum_i (-1)^i c(s with vertex i dropped)``."""
    if c.degree >= 3:
        raise DescentError("coboundary is defined up to degree 2")
    vec = c.vector(nerve)
    mat = coboundary_matrix(nerve, c.degree)
    out = [sum(a * b for a, b in zip(row, vec)) for row in mat]
    return Cochain.from_vector(nerve, c.degree + 1, out, c.modulus)


def is_cocycle(c: Cochain, nerve: Nerve) -> bool:
    if c.degree == 3:
        c.vector(nerve)
        return True
    return coboundary(c, nerve).is_zero()


# cohomology


@dataclass
class Cohomology:
    """``H^k`` of a nerve with Z or Z/N coefficients.

    The group is ``Z/t1 + ... + Z/tr + Z^free`` with ``torsion = [t1..tr]``.
    :meth:`classify` returns the coordinates of a cocycle's class in that
    decomposition (torsion coordinates reduced mod ``ti``, then the free
    ones); :meth:`witness` returns ``b`` with ``db = z`` for a class-zero
    cocycle ``z``.
    """

    nerve: Nerve
    degree: int
    modulus: int
    torsion: List[int]
    free_rank: int
    _snf_b: SnfResult = field(repr=False)
    _scales: List[int] = field(repr=False)
    _kept: List[int] = field(repr=False)
    _snf_rel: SnfResult = field(repr=False)
    _n_prev: int = field(repr=False)

    @property
    def invariant_factors(self) -> List[int]:
        """Orders of the cyclic summands; 0 stands for a copy of Z."""
        return list(self.torsion) + [0] * self.free_rank

    def is_trivial_group(self) -> bool:
        return not self.torsion and not self.free_rank

    def describe(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def _coords(self, z: Cochain) -> List[int]:
        if z.degree != self.degree:
            raise DescentError(f"expected a degree-{self.degree} cochain")
        if z.modulus and not self.modulus:
            raise DescentError("cannot classify a Z/N cochain in integral cohomology")
        vec = z.reduce(self.modulus).vector(self.nerve) if self.modulus else z.vector(self.nerve)
        if self.degree < 3 and not is_cocycle(Cochain.from_vector(self.nerve, self.degree, vec, self.modulus), self.nerve):
            raise NotACocycle("cochain is not a cocycle")
        y = [sum(a * b for a, b in zip(row, vec)) for row in self._snf_b.V_inv]
        return [y[i] // self._scales[i] for i in self._kept]

    def classify(self, z: Cochain) -> Tuple[int, ...]:
        c = self._coords(z)
        w = [sum(a * b for a, b in zip(row, c)) for row in self._snf_rel.U]
        diag = self._snf_rel.diagonal
        r = self._snf_rel.rank
        out = [w[i] % diag[i] for i in range(r) if diag[i] > 1]
        out += w[r:]
        return tuple(out)

    def is_trivial(self, z: Cochain) -> bool:
        return not any(self.classify(z))

    def witness(self, z: Cochain) -> Optional[Cochain]:
        """A cochain ``b`` with ``db == z``, or None when the class is nonzero."""
        if self.degree == 0:
            raise DescentError("degree-0 cohomology has no coboundaries to witness")
        c = self._coords(z)
        snf = self._snf_rel
        w = [sum(a * b for a, b in zip(row, c)) for row in snf.U]
        diag = snf.diagonal
        r = snf.rank
        s = [0] * snf.cols
        for i in range(len(w)):
            if i < r:
                if w[i] % diag[i]:
                    return None
                s[i] = w[i] // diag[i]
            elif w[i]:
                return None
        t = [sum(a * b for a, b in zip(row, s)) for row in snf.V]
        return Cochain.from_vector(self.nerve, self.degree - 1, t[: self._n_prev], self.modulus)


def cohomology(nerve: Nerve, degree: int, modulus: int = 0) -> Cohomology:
    """``H^degree(nerve; Z)`` for modulus 0, ``H^degree(nerve; Z/N)`` otherwise.

    With ``B`` the outgoing and ``A`` the incoming coboundary, the cocycles
    form the lattice ``K = {x : Bx = 0 mod N}`` (``N = 0``: kernel of ``B``),
    read off the Smith form of ``B``; the group is ``K`` modulo the image of
    ``A`` plus ``N Z^n``, presented in ``K``-coordinates and diagonalised by
    a second Smith form.
    """
    if degree not in (0, 1, 2, 3):
        raise DescentError("degree must be 0..3")
    if modulus < 0 or modulus == 1:
        raise DescentError("modulus must be 0 or at least 2")
    n = len(nerve.simplices(degree))
    B = coboundary_matrix(nerve, degree) if degree < 3 else []
    snf_b = smith_normal_form(B, cols=n)
    diag = snf_b.diagonal
    r = snf_b.rank
    scales = [1] * n
    if modulus:
        kept = list(range(n))
        for i in range(r):
            scales[i] = modulus // gcd(diag[i], modulus)
    else:
        kept = list(range(r, n))
    # generators of the relations: columns of A, then N * e_i
    n_prev = len(nerve.simplices(degree - 1)) if degree > 0 else 0
    gens = []
    if degree > 0:
        A = coboundary_matrix(nerve, degree - 1)
        gens.extend([A[row][col] for row in range(n)] for col in range(n_prev))
    if modulus:
        gens.extend([modulus * int(i == j) for i in range(n)] for j in range(n))
    rel_cols = []
    for g in gens:
        y = [sum(a * b for a, b in zip(row, g)) for row in snf_b.V_inv]
        rel_cols.append([y[i] // scales[i] for i in kept])
    q = len(kept)
    rel = [[col[i] for col in rel_cols] for i in range(q)]
    snf_rel = smith_normal_form(rel, cols=len(rel_cols))
    rd = snf_rel.diagonal
    torsion = [d for d in rd if d > 1]
    free = q - snf_rel.rank
    return Cohomology(nerve, degree, modulus, torsion, free, snf_b, scales, kept, snf_rel, n_prev)


def fractional_power_class(nerve: Nerve, branch: Cochain, lam) -> Tuple[Cohomology | None, Tuple[int, ...]]:
    """Class of the gerbe of determinations of ``f^lam`` for ``lam = p/N``.

    ``branch`` is the integer 2-cocycle ``n_ijk`` of branch mismatches; the
    multiplicative cocycle ``exp(2 pi i lam n_ijk)`` is the element
    ``p * n_ijk`` of ``Z/N``. Returns the group ``H^2(nerve; Z/N)`` (None
    when ``lam`` is an integer) and the class coordinates.
    """
    lam = Fraction(lam)
    if branch.degree != 2 or branch.modulus != 0:
        raise DescentError("branch mismatch data must be an integral 2-cochain")
    if not is_cocycle(branch, nerve):
        raise NotACocycle("branch mismatch data is not a cocycle")
    p, N = lam.numerator, lam.denominator
    if N == 1:
        return None, ()
    H = cohomology(nerve, 2, N)
    twisted = Cochain(2, N, {s: p * v for s, v in branch.values.items()})
    return H, H.classify(twisted)


# gluing data


@dataclass(frozen=True)
class GluingFailure:
    condition: int
    simplex: Simplex
    lhs: tuple
    rhs: tuple


@dataclass
class GluingReport:
    failures: List[GluingFailure]
    triangles_checked: int
    tetrahedra_checked: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def failing(self, condition: int | None = None) -> List[Simplex]:
        return [f.simplex for f in self.failures if condition is None or f.condition == condition]


def _freeze(m) -> tuple:
    return tuple(tuple(row) for row in m)


class MatrixGluingData:
    """Edge matrices ``g`` and triangle matrices ``a`` on a nerve, all ``k x k``."""

    def __init__(self, nerve: Nerve, k: int, f: Dict[Simplex, Sequence[Sequence]], a: Dict[Simplex, Sequence[Sequence]]):
        self.nerve = nerve
        self.k = k
        self.f = {tuple(s): self._matrix(m, s) for s, m in f.items()}
        self.a = {tuple(s): self._matrix(m, s) for s, m in a.items()}
        for s in nerve.edges:
            if s not in self.f:
                raise DescentError(f"missing f data on edge {s}")
        for s in nerve.triangles:
            if s not in self.a:
                raise DescentError(f"missing a data on triangle {s}")
        extra = (set(self.f) - set(nerve.edges)) | (set(self.a) - set(nerve.triangles))
        if extra:
            raise DescentError(f"data on simplices outside the nerve: {sorted(extra)}")
        self._inv = {}

    def _matrix(self, m, where):
        rows = [[Fraction(x) for x in row] for row in m]
        if len(rows) != self.k or any(len(r) != self.k for r in rows):
            raise DescentError(f"matrix on {where} is not {self.k}x{self.k}")
        if linalg.det(rows) == 0:
            raise DescentError(f"matrix on {where} is not invertible")
        return rows

    def inv(self, m):
        key = _freeze(m)
        if key not in self._inv:
            self._inv[key] = linalg.inverse(m)
        return self._inv[key]

    def edge(self, i: int, j: int):
        if i < j:
            return self.f[(i, j)]
        return self.inv(self.f[(j, i)])

    def oriented_a(self, tri: Sequence[int]):
        """``a`` on an arbitrary ordering of a stored triangle."""
        target = tuple(tri)
        start = tuple(sorted(target))
        known = {start: self.a[start]}
        todo = [start]
        while target not in known:
            nxt = []
            for t in todo:
                x, y, z = t
                m = known[t]
                for u, val in (
                    ((x, z, y), self.inv(m)),
                    ((y, x, z), linalg.matmul(linalg.matmul(self.inv(self.edge(x, y)), self.inv(m)), self.edge(x, y))),
                ):
                    if u not in known:
                        known[u] = val
                        nxt.append(u)
            todo = nxt
        return known[target]

    def condition_one(self, i, j, k):
        """``(g_ij g_jk, a_ijk g_ik, lambda)``; ``lambda`` is None when not proportional."""
        lhs = linalg.matmul(self.edge(i, j), self.edge(j, k))
        rhs = linalg.matmul(self.oriented_a((i, j, k)), self.edge(i, k))
        return lhs, rhs, linalg.proportionality(lhs, rhs)

    def condition_two(self, i, j, k, l):
        g = self.edge(i, j)
        lhs = linalg.matmul(self.a[(i, j, k)], self.a[(i, k, l)])
        conj = linalg.matmul(linalg.matmul(g, self.a[(j, k, l)]), self.inv(g))
        rhs = linalg.matmul(conj, self.a[(i, j, l)])
        return lhs, rhs


def verify_gluing(data: MatrixGluingData) -> GluingReport:
    """Check both cocycle conditions; failures are sorted by (condition, simplex).

    Condition 1 compares automorphisms, so ``g_ij g_jk`` and ``a_ijk g_ik``
    need only agree up to a nonzero scalar. Condition 2 is matrix equality
    ``a_ijk a_ikl = (g_ij a_jkl g_ij^-1) a_ijl``.
    """
    fails = []
    for s in data.nerve.triangles:
        lhs, rhs, lam = data.condition_one(*s)
        if lam is None:
            fails.append(GluingFailure(1, s, _freeze(lhs), _freeze(rhs)))
    for s in data.nerve.tetrahedra:
        lhs, rhs = data.condition_two(*s)
        if lhs != rhs:
            fails.append(GluingFailure(2, s, _freeze(lhs), _freeze(rhs)))
    fails.sort(key=lambda f: (f.condition, f.simplex))
    return GluingReport(fails, len(data.nerve.triangles), len(data.nerve.tetrahedra))


def coboundary_gluing(nerve: Nerve, g: Dict[Simplex, Sequence[Sequence]]) -> MatrixGluingData:
    """Gluing data with ``a_ijk = g_ij g_jk g_ik^-1``; always satisfies both conditions."""
    k = len(next(iter(g.values())))
    tmp = {tuple(s): [[Fraction(x) for x in r] for r in m] for s, m in g.items()}
    a = {}
    for i, j, l in nerve.triangles:
        a[(i, j, l)] = linalg.matmul(linalg.matmul(tmp[(i, j)], tmp[(j, l)]), linalg.inverse(tmp[(i, l)]))
    return MatrixGluingData(nerve, k, tmp, a)
