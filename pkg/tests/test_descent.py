import random
from fractions import Fraction
from itertools import permutations

import pytest

from helpers import random_invertible, rp2_nerve, sphere_nerve, tetrahedron_nerve, z2_cohomology_order
from wkbcalc import linalg
from wkbcalc.descent import (
    Cochain,
    DescentError,
    MatrixGluingData,
    Nerve,
    NotACocycle,
    coboundary,
    coboundary_gluing,
    cohomology,
    fractional_power_class,
    is_cocycle,
    verify_gluing,
)


def five_vertex_nerve():
    # cone over the tetrahedron boundary plus the tetrahedron: all 4-subsets of 5 vertices
    from itertools import combinations

    return Nerve.from_top(5, list(combinations(range(5), 4)))


def random_edge_data(rng, nerve, k=2):
    return {e: random_invertible(rng, k) for e in nerve.edges}


class TestNerve:
    def test_face_closure_required(self):
        with pytest.raises(DescentError):
            Nerve(3, ((0, 1),), ((0, 1, 2),))

    def test_bad_simplices(self):
        with pytest.raises(DescentError):
            Nerve(2, ((1, 0),))
        with pytest.raises(DescentError):
            Nerve(2, ((0, 2),))

    def test_from_top(self):
        n = tetrahedron_nerve()
        assert (len(n.edges), len(n.triangles), len(n.tetrahedra)) == (6, 4, 1)
        r = rp2_nerve()
        assert (len(r.edges), len(r.triangles)) == (15, 10)

    def test_dd_zero(self):
        n = five_vertex_nerve()
        rng = random.Random(0)
        for k in (0, 1):
            c = Cochain(k, 0, {s: rng.randint(-3, 3) for s in n.simplices(k)})
            assert coboundary(coboundary(c, n), n).is_zero()


class TestCochain:
    def test_reduction(self):
        c = Cochain(1, 3, {(0, 1): 5, (0, 2): 3})
        assert c.values == {(0, 1): 2}

    def test_validation(self):
        with pytest.raises(DescentError):
            Cochain(1, 0, {(0, 1, 2): 1})
        with pytest.raises(DescentError):
            Cochain(1, 1, {})
        with pytest.raises(DescentError):
            Cochain(2, 0, {(0, 1, 5): 1}).vector(sphere_nerve())


class TestCohomology:
    def test_sphere(self):
        n = sphere_nerve()
        assert [cohomology(n, k).describe() for k in (0, 1, 2)] == ["Z", "0", "Z"]

    def test_rp2(self):
        n = rp2_nerve()
        assert [cohomology(n, k).describe() for k in (0, 1, 2)] == ["Z", "0", "Z/2"]
        assert [cohomology(n, k, 2).describe() for k in (0, 1, 2)] == ["Z/2"] * 3
        assert [cohomology(n, k, 3).describe() for k in (0, 1, 2)] == ["Z/3", "0", "0"]

    def test_tetrahedron(self):
        n = tetrahedron_nerve()
        assert [cohomology(n, k).describe() for k in (0, 1, 2, 3)] == ["Z", "0", "0", "0"]

    def test_disconnected(self):
        n = Nerve(3, ((0, 1),))
        assert cohomology(n, 0).invariant_factors == [0, 0]

    def test_circle(self):
        n = Nerve(3, ((0, 1), (0, 2), (1, 2)))
        assert cohomology(n, 1).describe() == "Z"
        assert cohomology(n, 1, 4).describe() == "Z/4"

    @pytest.mark.parametrize("build", [sphere_nerve, rp2_nerve, tetrahedron_nerve, five_vertex_nerve])
    @pytest.mark.parametrize("degree", [0, 1, 2])
    def test_z2_matches_exhaustive_search(self, build, degree):
        n = build()
        H = cohomology(n, degree, 2)
        order = 1
        for t in H.invariant_factors:
            order *= t
        assert order == z2_cohomology_order(n, degree)

    def test_classify_and_witness(self):
        n = rp2_nerve()
        H = cohomology(n, 2, 2)
        gen = Cochain(2, 2, {(0, 1, 2): 1})
        assert H.classify(gen) == (1,)
        assert H.witness(gen) is None
        rng = random.Random(1)
        for _ in range(20):
            b = Cochain(1, 2, {e: rng.randint(0, 1) for e in n.edges})
            z = coboundary(b, n)
            assert H.is_trivial(z)
            w = H.witness(z)
            assert coboundary(w, n) == z
            # adding the coboundary does not change the class
            total = Cochain(2, 2, {s: gen[s] + z[s] for s in n.triangles})
            assert H.classify(total) == (1,)

    def test_integral_witness(self):
        n = sphere_nerve()
        H = cohomology(n, 2)
        rng = random.Random(2)
        for _ in range(20):
            b = Cochain(1, 0, {e: rng.randint(-4, 4) for e in n.edges})
            z = coboundary(b, n)
            assert H.classify(z) == (0,)
            assert coboundary(H.witness(z), n) == z
        gen = Cochain(2, 0, {(0, 1, 2): 1})
        assert abs(H.classify(gen)[0]) == 1
        assert H.witness(gen) is None

    def test_non_cocycle(self):
        n = tetrahedron_nerve()
        H = cohomology(n, 2)
        z = Cochain(2, 0, {(0, 1, 2): 1})
        assert not is_cocycle(z, n)
        with pytest.raises(NotACocycle):
            H.classify(z)

    def test_bad_modulus(self):
        with pytest.raises(DescentError):
            cohomology(sphere_nerve(), 2, 1)


class TestFractionalPower:
    branch = Cochain(2, 0, {(0, 1, 2): 1})

    @pytest.mark.parametrize("lam", ["1/2", "1/3", "2/3", "5/4", "-1/2", "7/6"])
    def test_nontrivial(self, lam):
        H, cls = fractional_power_class(sphere_nerve(), self.branch, Fraction(lam))
        assert H.describe() == f"Z/{Fraction(lam).denominator}"
        assert any(cls)

    @pytest.mark.parametrize("lam", [0, 1, -2, Fraction(4, 2)])
    def test_integer_is_trivial(self, lam):
        H, cls = fractional_power_class(sphere_nerve(), self.branch, lam)
        assert H is None and not any(cls)

    def test_trivial_branch_data(self):
        n = sphere_nerve()
        b = coboundary(Cochain(1, 0, {(0, 1): 1, (1, 3): 2}), n)
        H, cls = fractional_power_class(n, b, Fraction(1, 2))
        assert not any(cls)


class TestGluing:
    def test_coboundary_data_passes(self):
        rng = random.Random(3)
        for build in (tetrahedron_nerve, five_vertex_nerve):
            n = build()
            rep = verify_gluing(coboundary_gluing(n, random_edge_data(rng, n)))
            assert rep.ok
            assert rep.triangles_checked == len(n.triangles)
            assert rep.tetrahedra_checked == len(n.tetrahedra)

    def test_scalar_twist_keeps_condition_one(self):
        # scaling a_ijk by a scalar keeps condition 1 (projective) but breaks condition 2
        rng = random.Random(4)
        n = tetrahedron_nerve()
        data = coboundary_gluing(n, random_edge_data(rng, n))
        a = dict(data.a)
        a[(0, 1, 3)] = [[2 * x for x in row] for row in a[(0, 1, 3)]]
        rep = verify_gluing(MatrixGluingData(n, 2, data.f, a))
        assert rep.failing(1) == []
        assert rep.failing(2) == [(0, 1, 2, 3)]

    def test_localization_on_larger_nerve(self):
        rng = random.Random(5)
        n = five_vertex_nerve()
        data = coboundary_gluing(n, random_edge_data(rng, n))
        a = dict(data.a)
        a[(1, 2, 3)] = [[3 * x for x in row] for row in a[(1, 2, 3)]]
        rep = verify_gluing(MatrixGluingData(n, 2, data.f, a))
        assert rep.failing(2) == [(0, 1, 2, 3), (1, 2, 3, 4)]

    def test_orientation_rules(self):
        # on coboundary data every ordering of a triangle sees g_xy g_yz g_xz^-1
        rng = random.Random(6)
        n = tetrahedron_nerve()
        data = coboundary_gluing(n, random_edge_data(rng, n))
        for tri in n.triangles:
            for x, y, z in permutations(tri):
                want = linalg.matmul(linalg.matmul(data.edge(x, y), data.edge(y, z)), linalg.inverse(data.edge(x, z)))
                assert data.oriented_a((x, y, z)) == want

    def test_validation(self):
        n = tetrahedron_nerve()
        rng = random.Random(7)
        data = coboundary_gluing(n, random_edge_data(rng, n))
        f = dict(data.f)
        del f[(0, 1)]
        with pytest.raises(DescentError):
            MatrixGluingData(n, 2, f, data.a)
        f = dict(data.f)
        f[(0, 1)] = [[1, 2], [2, 4]]
        with pytest.raises(DescentError):
            MatrixGluingData(n, 2, f, data.a)
        with pytest.raises(DescentError):
            MatrixGluingData(n, 2, data.f, {**data.a, (0, 1, 4): [[1, 0], [0, 1]]})


def predicted_failures(nerve, kind, simplex):
    """Checks whose formula reads the mutated datum."""
    if kind == "a":
        return {(1, simplex)} | {(2, T) for T in nerve.tetrahedra if set(simplex) <= set(T)}
    return {(1, t) for t in nerve.triangles if set(simplex) <= set(t)} | {
        (2, T) for T in nerve.tetrahedra if T[:2] == simplex
    }


def mutate(rng, data):
    """Change one entry of one matrix, keeping it invertible."""
    kind = rng.choice(["f", "a"])
    table = dict(data.f if kind == "f" else data.a)
    simplex = rng.choice(sorted(table))
    while True:
        m = [list(row) for row in table[simplex]]
        i, j = rng.randrange(2), rng.randrange(2)
        m[i][j] += rng.choice([-3, -2, -1, 1, 2, 3])
        if linalg.det(m) != 0:
            break
    table[simplex] = m
    f, a = (table, data.a) if kind == "f" else (data.f, table)
    return kind, simplex, MatrixGluingData(data.nerve, data.k, f, a)


def test_random_mutations_localized():
    rng = random.Random(2024)
    n = tetrahedron_nerve()
    data = coboundary_gluing(n, random_edge_data(rng, n))
    assert verify_gluing(data).ok
    for _ in range(50):
        kind, simplex, bad = mutate(rng, data)
        rep = verify_gluing(bad)
        got = {(f.condition, f.simplex) for f in rep.failures}
        assert got == predicted_failures(n, kind, simplex), (kind, simplex)
