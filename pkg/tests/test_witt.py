"""Witt vectors: ghost components, universal families, the transfer-norm
recursion, restriction, and ideal witnesses."""

import random

import pytest

from gwitt import (DivisibilityError, IdealWitness, MultiPoly, ObjectMismatchError,
                   WittVector, WitnessError, classical_witt_polys, ghost,
                   ghost_invert, ideal_generator, m_polys_via_orbits,
                   make_group, p_polys_via_orbits, restr_surjection,
                   s_polys_via_orbits, subgroup_table, universal_polys,
                   witt_add, witt_mul, witt_neg, witt_one, witt_sub,
                   witt_zero, xi_polys)
from gwitt.rings import IntModRing, PolyRing, QQ, ZZ
from gwitt.suites import random_witt
from gwitt.witt import WittPolySet


def av(i):
    return MultiPoly.variable(("a", i))


def bv(i):
    return MultiPoly.variable(("b", i))


def xv(i):
    return MultiPoly.variable(("x", i))


def test_ghost_zero_and_c2():
    t = subgroup_table(make_group("C2"))
    assert ghost(witt_zero(t)) == (0, 0)
    a = WittVector(t, ZZ, [2, 7])
    assert ghost(a) == (2, 2 ** 2 + 2 * 7)


def test_ghost_s3_diagonal():
    t = subgroup_table(make_group("S3"))
    # diagonal coefficients are the normalizer indices
    for i in range(t.num_classes):
        coords = [0] * t.num_classes
        coords[i] = 1
        g = ghost(WittVector(t, ZZ, coords))
        assert g[i] == t.normalizer_index[i]


def test_ghost_invert_examples():
    t = subgroup_table(make_group("C2"))
    assert ghost_invert(t, [1, 1]).coords == (1, 0)
    with pytest.raises(DivisibilityError):
        ghost_invert(t, [0, 1])
    from fractions import Fraction
    q = ghost_invert(t, [0, 1], QQ)
    assert q.coords == (Fraction(0), Fraction(1, 2))


@pytest.mark.parametrize("spec", ["C2", "S3"])
def test_ghost_invert_roundtrip(spec):
    t = subgroup_table(make_group(spec))
    rng = random.Random(2)
    for _ in range(25):
        a = random_witt(rng, t)
        assert ghost_invert(t, ghost(a)) == a


def test_universal_polys_c2_frozen():
    t = subgroup_table(make_group("C2"))
    ps = universal_polys(t)
    assert ps.s[0] == av(0) + bv(0)
    assert ps.s[1] == av(1) + bv(1) - av(0) * bv(0)
    assert ps.p[0] == av(0) * bv(0)
    assert ps.p[1] == av(0) ** 2 * bv(1) + bv(0) ** 2 * av(1) + 2 * av(1) * bv(1)
    assert ps.m[0] == -av(0)
    assert ps.m[1] == -av(1) - av(0) ** 2


def test_universal_polys_c3_frozen():
    # derived by hand from the ghost: s_e = a_e + b_e - a_G^2 b_G - a_G b_G^2
    t = subgroup_table(make_group("C3"))
    ps = universal_polys(t)
    assert ps.s[0] == av(0) + bv(0)
    assert ps.s[1] == av(1) + bv(1) - av(0) ** 2 * bv(0) - av(0) * bv(0) ** 2


def test_universal_polys_triangular_variables():
    for spec in ["C4", "S3", "C2 x C2"]:
        t = subgroup_table(make_group(spec))
        ps = universal_polys(t)
        for u in range(t.num_classes):
            allowed = {("a", v) for v in range(t.num_classes) if t.subconj[u][v]}
            allowed |= {("b", v) for v in range(t.num_classes) if t.subconj[u][v]}
            assert ps.s[u].variables() <= allowed
            assert ps.p[u].variables() <= allowed
            assert ps.m[u].variables() <= {v for v in allowed if v[0] == "a"}


def test_witt_unit_and_mod4():
    t = subgroup_table(make_group("C2"))
    one = witt_one(t)
    assert one == ghost_invert(t, [1] * t.num_classes)
    r4 = IntModRing(4)
    a = WittVector(t, r4, [1, 1])
    assert witt_add(a, a).coords == (2, 1)


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "C2 x C2", "S3"])
@pytest.mark.parametrize("ring", [ZZ, IntModRing(6), PolyRing()])
def test_witt_ring_axioms(spec, ring):
    t = subgroup_table(make_group(spec))
    rng = random.Random(11)

    def rand():
        if isinstance(ring, PolyRing):
            return WittVector(t, ring, [
                MultiPoly.const(rng.randint(-2, 2))
                + MultiPoly.variable(0) * rng.randint(-1, 1)
                for _ in range(t.num_classes)])
        return random_witt(rng, t, ring, -4, 4)

    for _ in range(8):
        a, b, c = rand(), rand(), rand()
        assert witt_add(a, b) == witt_add(b, a)
        assert witt_mul(a, b) == witt_mul(b, a)
        assert witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c))
        assert witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c))
        assert witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b),
                                                       witt_mul(a, c))
        assert witt_add(a, witt_neg(a)) == witt_zero(t, ring)
        assert witt_mul(a, witt_one(t, ring)) == a
        assert witt_sub(a, a) == witt_zero(t, ring)


def test_ghost_natural_in_ring_maps():
    t = subgroup_table(make_group("S3"))
    rng = random.Random(19)
    r6 = IntModRing(6)
    for _ in range(20):
        a = random_witt(rng, t)
        b = random_witt(rng, t)
        # coordinatewise reduction commutes with the operations
        am = WittVector(t, r6, a.coords)
        bm = WittVector(t, r6, b.coords)
        assert WittVector(t, r6, witt_add(a, b).coords) == witt_add(am, bm)
        assert WittVector(t, r6, witt_mul(a, b).coords) == witt_mul(am, bm)
        assert tuple(x % 6 for x in ghost(a)) == ghost(am)


def test_xi_examples_c2():
    t = subgroup_table(make_group("C2"))
    xi = xi_polys(t, [0], [-1])
    assert xi[0] == -xv(0)
    assert xi[1] == -xv(0) ** 2
    xi = xi_polys(t, [0, 0], [1, 1])
    assert xi[0] == xv(0) + xv(1)
    assert xi[1] == -xv(0) * xv(1)
    xi = xi_polys(t, [0, 1], [1, 1])
    assert xi[0] == xv(0)
    assert xi[1] == xv(1)


def test_xi_numeric_identity():
    # mark-weighted power sums transform exactly under the recursion
    rng = random.Random(3)
    for spec in ["C2", "S3"]:
        G = make_group(spec)
        t = subgroup_table(G)
        for _ in range(15):
            k = rng.randint(1, 3)
            classes = [rng.randrange(t.num_classes) for _ in range(k)]
            signs = [rng.choice([1, -1]) for _ in range(k)]
            xi = xi_polys(t, classes, signs)
            subs = [rng.randint(-4, 4) for _ in range(k)]
            values = {("x", i): subs[i] for i in range(k)}
            for h, H in enumerate(t.class_reps):
                lhs = 0
                for i, (c, e) in enumerate(zip(classes, signs)):
                    cnt = t.marks[c][h]
                    if cnt:
                        lhs += e * cnt * subs[i] ** t.rel_index[c][h]
                rhs = 0
                for u in range(t.num_classes):
                    cnt = t.marks[u][h]
                    if cnt:
                        rhs += cnt * xi[u].evaluate(ZZ, values) \
                            ** t.rel_index[u][h]
                assert lhs == rhs


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "S3"])
def test_cross_route_families(spec):
    t = subgroup_table(make_group(spec))
    ps = universal_polys(t)
    assert m_polys_via_orbits(t) == list(ps.m)
    assert p_polys_via_orbits(t) == list(ps.p)
    assert s_polys_via_orbits(t) == list(ps.s)


def test_p_polys_trivial_group():
    t = subgroup_table(make_group("C1"))
    assert p_polys_via_orbits(t) == [av(0) * bv(0)]


@pytest.mark.parametrize("spec,p,n", [("C2", 2, 1), ("C4", 2, 2),
                                      ("C3", 3, 1), ("C9", 3, 2)])
def test_classical_compatibility(spec, p, n):
    t = subgroup_table(make_group(spec))
    ps = universal_polys(t)
    cs, cp, cm = classical_witt_polys(p, n)
    assert list(ps.s) == cs
    assert list(ps.p) == cp
    assert list(ps.m) == cm


def test_restr_examples():
    C4 = make_group("C4")
    C2 = make_group("C2")
    t4 = subgroup_table(C4)
    gamma = [x % 2 for x in range(4)]
    a = WittVector(t4, ZZ, [5, 7, 9])
    r = restr_surjection(a, gamma, C2)
    assert r.coords == (5, 7)
    ident = restr_surjection(a, list(range(4)), C4)
    assert ident == a


def test_restr_is_ring_hom():
    C4 = make_group("C4")
    C2 = make_group("C2")
    t4 = subgroup_table(C4)
    gamma = [x % 2 for x in range(4)]
    rng = random.Random(8)
    for _ in range(30):
        a = random_witt(rng, t4)
        b = random_witt(rng, t4)
        assert restr_surjection(witt_add(a, b), gamma, C2) == \
            witt_add(restr_surjection(a, gamma, C2),
                     restr_surjection(b, gamma, C2))
        assert restr_surjection(witt_mul(a, b), gamma, C2) == \
            witt_mul(restr_surjection(a, gamma, C2),
                     restr_surjection(b, gamma, C2))


def test_restr_rejects_bad_maps():
    C4 = make_group("C4")
    C2 = make_group("C2")
    t4 = subgroup_table(C4)
    a = random_witt(random.Random(0), t4)
    with pytest.raises(ObjectMismatchError):
        restr_surjection(a, [0, 0, 0, 0], C2)       # not surjective
    with pytest.raises(ObjectMismatchError):
        restr_surjection(a, [0, 1, 1, 0], C2)       # not a homomorphism


def test_ideal_witness_validation():
    G = make_group("S3")
    t = subgroup_table(G)
    C3 = t.class_reps[1]
    # element outside the normalizer of... C3 is normal, everything allowed;
    # use C2 whose normalizer is itself
    bad_g = next(g for g in G.elements()
                 if g not in t.class_reps[2] and G.element_order(g) == 2)
    with pytest.raises(WitnessError):
        IdealWitness(t, {2: ((bad_g,), (1,))})
    with pytest.raises(WitnessError):
        IdealWitness(t, {1: ((), ())})
    # different cosets within the normalizer: identity vs a transposition
    transposition = next(g for g in G.elements()
                         if g not in C3 and G.element_order(g) == 2)
    with pytest.raises(WitnessError):
        IdealWitness(t, {1: ((G.identity, transposition), (1, 1))})
    # same-coset pairs are fine even when the elements differ
    some_c3 = next(iter(set(C3.elements) - {G.identity}))
    IdealWitness(t, {1: ((G.identity, some_c3), (1, 1))})


def test_ideal_generator_examples():
    G = make_group("C2")
    t = subgroup_table(G)
    from gwitt.gsets import coset_space
    from gwitt.groups import trivial_subgroup
    X = coset_space(G, trivial_subgroup(G))
    ring = PolyRing(gset=X)
    u, v = MultiPoly.variable(0), MultiPoly.variable(1)
    sigma = next(g for g in G.elements() if g != G.identity)
    w = IdealWitness(t, {
        0: ((G.identity,), (MultiPoly.zero(),)),
        1: ((sigma,), (u,)),
    })
    a, b = ideal_generator(w, ring)
    assert a.coords[1] == u and b.coords[1] == v
    # all identity elements: a == b
    w2 = IdealWitness(t, {1: ((G.identity,), (u,))})
    a2, b2 = ideal_generator(w2, ring)
    assert a2 == b2
    # repeated element: products of translates
    w3 = IdealWitness(t, {1: ((sigma, sigma), (u, v))})
    a3, b3 = ideal_generator(w3, ring)
    assert a3.coords[1] == u * v
    assert b3.coords[1] == ring.act(sigma, u) * ring.act(sigma, v)
    assert b3.coords[1] == v * u


def test_polyset_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WITT_CACHE_DIR", str(tmp_path))
    G = make_group("perm:(0 1 2 3)")  # C4 under a distinct spec: fresh cache slot
    t = subgroup_table(G)
    ps = universal_polys(t)
    files = list(tmp_path.iterdir())
    assert files
    # wipe the in-memory cache and reload from disk
    G._poly_cache.clear()
    ps2 = universal_polys(t)
    assert list(ps2.s) == list(ps.s)
    assert list(ps2.p) == list(ps.p)
    assert list(ps2.m) == list(ps.m)


def test_witt_vector_json():
    t = subgroup_table(make_group("C2"))
    a = WittVector(t, ZZ, [3, -1])
    assert a.to_json() == {"group_spec": "C2", "coords": [3, -1]}
