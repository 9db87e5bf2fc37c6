"""G-sets and equivariant maps: limits, dependent products, isomorphism."""

import random

import pytest

from gwitt import (EquivarianceError, GMap, GSet, ObjectMismatchError,
                   coset_space, dependent_product, disjoint_union, empty_gset,
                   gset_from_orbits, gset_iso, make_group, mark,
                   orbit_decomposition, projection_map, pullback,
                   subgroup_table, trivial_gset)
from gwitt.groups import full_subgroup, trivial_subgroup
from gwitt.gsets import (canonical_form, gset_from_json, gset_to_json,
                         identity_map)
from gwitt.suites import random_gset


def test_gset_validation():
    G = make_group("C2")
    with pytest.raises(EquivarianceError):
        GSet(G, [[1, 0], [0, 1]])  # identity row is not the identity
    X = GSet(G, [[0, 1], [1, 0]])
    assert X.size == 2
    assert X.stabilizer_mask(0) == 1 << G.identity


def test_gmap_equivariance_checked():
    G = make_group("C2")
    X = GSet(G, [[0, 1], [1, 0]])
    Y = trivial_gset(G, 2)
    with pytest.raises(EquivarianceError):
        GMap(X, Y, [0, 1])
    GMap(X, Y, [0, 0])


def test_gset_from_orbits_sizes():
    G = make_group("S3")
    t = subgroup_table(G)
    assert gset_from_orbits(G, [full_subgroup(G)]).size == 1
    assert gset_from_orbits(make_group("C2"),
                            [trivial_subgroup(make_group("C2"))]).size == 2
    C2, C3 = t.class_reps[2], t.class_reps[1]
    assert gset_from_orbits(G, [C2, C3]).size == 5


def test_orbit_decomposition_examples():
    G = make_group("S3")
    t = subgroup_table(G)
    X = trivial_gset(G, 3)
    dec = orbit_decomposition(X)
    assert dec.num_orbits == 3
    assert all(s.order == 6 for s in dec.stabilizers)
    free = coset_space(G, trivial_subgroup(G))
    dec = orbit_decomposition(free)
    assert dec.num_orbits == 1 and dec.stabilizers[0].order == 1
    C2 = t.class_reps[2]
    two = gset_from_orbits(G, [C2, C2])
    dec = orbit_decomposition(two)
    assert dec.num_orbits == 2
    assert all(t.class_of_mask[s.mask] == 2 for s in dec.stabilizers)


def test_fixed_points_match_marks():
    for spec in ["C4", "S3", "C2 x C2"]:
        G = make_group(spec)
        t = subgroup_table(G)
        for V in t.class_reps:
            X = gset_from_orbits(G, [V])
            for H in t.class_reps:
                assert len(X.fixed_points(H.mask)) == mark(G, V, H)


def test_pullback_identity_and_empty():
    G = make_group("C2")
    X = coset_space(G, trivial_subgroup(G))
    idm = identity_map(X)
    P, p1, p2 = pullback(idm, idm)
    assert P.size == X.size
    E = empty_gset(G)
    pt = coset_space(G, full_subgroup(G))
    P2, _, _ = pullback(GMap(E, pt, []), GMap(X, pt, [0, 0]))
    assert P2.size == 0


def test_pullback_free_square():
    G = make_group("C2")
    X = coset_space(G, trivial_subgroup(G))
    pt = coset_space(G, full_subgroup(G))
    f = GMap(X, pt, [0, 0])
    P, p1, p2 = pullback(f, f)
    assert P.size == 4
    P.revalidate()
    p1.revalidate()
    dec = orbit_decomposition(P)
    assert dec.num_orbits == 2
    assert all(s.order == 1 for s in dec.stabilizers)


def test_pullback_universal_property():
    # every pair of maps commuting over the base factors uniquely
    G = make_group("C2")
    X = coset_space(G, trivial_subgroup(G))
    pt = coset_space(G, full_subgroup(G))
    f = GMap(X, pt, [0, 0])
    P, p1, p2 = pullback(f, f)
    T = X
    q1, q2 = identity_map(X), GMap(X, X, [1, 0])
    assert f.compose(q1).mapping == f.compose(q2).mapping
    mediating = [None] * T.size
    for i in range(T.size):
        matches = [j for j in range(P.size)
                   if p1.mapping[j] == q1.mapping[i]
                   and p2.mapping[j] == q2.mapping[i]]
        assert len(matches) == 1
        mediating[i] = matches[0]
    GMap(T, P, mediating)


def test_dependent_product_identity():
    G = make_group("S3")
    A = random_gset(random.Random(2), G)
    idx = identity_map(A)
    exp = dependent_product(idx, idx)
    assert exp.pi_set.size == A.size


def test_dependent_product_fiber_counts():
    # trivial group: fiber sizes multiply
    G = make_group("C1")
    assert G.order == 1
    A = trivial_gset(G, 5)
    X = trivial_gset(G, 2)
    Y = trivial_gset(G, 1)
    p = GMap(A, X, [0, 0, 1, 1, 1])
    f = GMap(X, Y, [0, 0])
    exp = dependent_product(p, f)
    assert exp.pi_set.size == 2 * 3


def test_dependent_product_subsets_shape():
    # sections of the fold over the free orbit = subsets of the group
    G = make_group("C2")
    Ge = coset_space(G, trivial_subgroup(G))
    A, _ = disjoint_union([Ge, Ge])
    fold = GMap(A, Ge, [0, 1, 0, 1])
    f = projection_map(G, trivial_subgroup(G), full_subgroup(G))
    exp = dependent_product(fold, f)
    assert exp.pi_set.size == 4
    dec = orbit_decomposition(exp.pi_set)
    assert sorted(s.order for s in dec.stabilizers) == [1, 2, 2]
    exp.pi_set.revalidate()
    exp.ev.revalidate()
    exp.pi_map.revalidate()


def test_dependent_product_equivariant_outputs():
    G = make_group("S3")
    rng = random.Random(9)
    from gwitt.suites import random_bispan
    X = random_gset(rng, G)
    Y = random_gset(rng, G)
    s = random_bispan(rng, X, Y)
    exp = dependent_product(s.b, s.c)
    exp.pi_set.revalidate()
    exp.pi_map.revalidate()
    exp.ev.revalidate()
    exp.proj.revalidate()


def test_gset_iso():
    G = make_group("S3")
    t = subgroup_table(G)
    C2, C3 = t.class_reps[2], t.class_reps[1]
    X = gset_from_orbits(G, [C2])
    Y = gset_from_orbits(G, [C3])
    assert gset_iso(X, X) is not None
    assert gset_iso(X, Y) is None
    # same orbit types, scrambled order
    A = gset_from_orbits(G, [C2, C3])
    B = gset_from_orbits(G, [C3, C2])
    w = gset_iso(A, B)
    assert w is not None
    w.revalidate()
    assert sorted(w.mapping) == list(range(B.size))


def test_gset_iso_equivalence_relation():
    G = make_group("C2 x C2")
    rng = random.Random(4)
    sets = [random_gset(rng, G) for _ in range(6)]
    for X in sets:
        assert gset_iso(X, X) is not None
        for Y in sets:
            fwd = gset_iso(X, Y)
            bwd = gset_iso(Y, X)
            assert (fwd is None) == (bwd is None)


def test_canonical_form_layout():
    G = make_group("S3")
    rng = random.Random(13)
    X = random_gset(rng, G)
    canon, pmap = canonical_form(X)
    assert sorted(pmap) == list(range(X.size))
    for g in G.elements():
        for x in range(X.size):
            assert pmap[X.act[g][x]] == canon.act[g][pmap[x]]


def test_gset_json_roundtrip():
    G = make_group("S3")
    t = subgroup_table(G)
    X = gset_from_orbits(G, [t.class_reps[2], t.class_reps[1]])
    data = gset_to_json(X)
    assert data["group_spec"] == "S3"
    Y = gset_from_json(G, data)
    assert gset_iso(X, Y) is not None


def test_projection_requires_containment():
    G = make_group("S3")
    t = subgroup_table(G)
    with pytest.raises(ObjectMismatchError):
        projection_map(G, t.class_reps[1], t.class_reps[2])
