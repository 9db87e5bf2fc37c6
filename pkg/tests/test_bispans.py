"""Bispan calculus: canonicalization, hom-ring structure, composition,
generators and evaluation.  The certificate is validated against an
independent backtracking search for equivariant diagram isomorphisms."""

import itertools
import random

import pytest

from gwitt import (Bispan, GMap, ObjectMismatchError, VirtualBispan, add,
                   canonicalize, compose, coset_space, empty_gset, evaluate,
                   gen_N, gen_R, gen_T, identity_virtual, make_group, mul,
                   neg, sub, subgroup_table, trivial_gset, unit_virtual,
                   zero_virtual)
from gwitt.bispans import (amalgamate, bispan_from_json, bispan_to_json,
                           compose_representatives, virtual_from_json,
                           virtual_to_json)
from gwitt.groups import full_subgroup, trivial_subgroup
from gwitt.gsets import disjoint_union, identity_map, projection_map
from gwitt.rings import IntModRing, PolyRing, ZZ
from gwitt.suites import random_bispan, random_gset, random_virtual
from gwitt.polys import MultiPoly


def equivariant_bijections(X, Y):
    """All equivariant bijections X -> Y (oracle; exponential search)."""
    if X.size != Y.size:
        return
    G = X.group
    from gwitt.gsets import orbit_decomposition
    dec = orbit_decomposition(X)
    per_orbit = []
    for base in dec.base_points:
        stab = X.stabilizer_mask(base)
        opts = [t for t in range(Y.size) if Y.stabilizer_mask(t) == stab]
        per_orbit.append((base, opts))
    for combo in itertools.product(*(o for _, o in per_orbit)):
        mapping = [None] * X.size
        ok = True
        for (base, _), tgt in zip(per_orbit, combo):
            for g in G.elements():
                pos = X.act[g][base]
                val = Y.act[g][tgt]
                if mapping[pos] is None:
                    mapping[pos] = val
                elif mapping[pos] != val:
                    ok = False
                    break
            if not ok:
                break
        if ok and None not in mapping and len(set(mapping)) == X.size:
            yield mapping


def bispans_equivalent_bruteforce(s1: Bispan, s2: Bispan) -> bool:
    """Search for G-bijections A1->A2, B1->B2 commuting with all legs."""
    if (s1.X != s2.X or s1.Y != s2.Y or s1.A.size != s2.A.size
            or s1.B.size != s2.B.size):
        return False
    for beta in equivariant_bijections(s1.B, s2.B):
        if any(s2.c.mapping[beta[b]] != s1.c.mapping[b]
               for b in range(s1.B.size)):
            continue
        for alpha in equivariant_bijections(s1.A, s2.A):
            if any(s2.d.mapping[alpha[a]] != s1.d.mapping[a]
                   for a in range(s1.A.size)):
                continue
            if all(s2.b.mapping[alpha[a]] == beta[s1.b.mapping[a]]
                   for a in range(s1.A.size)):
                return True
    return False


def relabel_bispan(rng, s: Bispan) -> Bispan:
    """Transport the middle objects along random point permutations."""
    from gwitt.gsets import GSet
    G = s.group

    def relabel(obj):
        perm = list(range(obj.size))
        rng.shuffle(perm)
        act = [[None] * obj.size for _ in G.elements()]
        for g in G.elements():
            for x in range(obj.size):
                act[g][perm[x]] = perm[obj.act[g][x]]
        return GSet(G, act, check=False), perm

    A2, pa = relabel(s.A)
    B2, pb = relabel(s.B)
    inv_a = [None] * s.A.size
    for old, new in enumerate(pa):
        inv_a[new] = old
    inv_b = [None] * s.B.size
    for old, new in enumerate(pb):
        inv_b[new] = old
    d2 = GMap(A2, s.X, [s.d.mapping[inv_a[i]] for i in range(s.A.size)])
    b2 = GMap(A2, B2, [pb[s.b.mapping[inv_a[i]]] for i in range(s.A.size)])
    c2 = GMap(B2, s.Y, [s.c.mapping[inv_b[i]] for i in range(s.B.size)])
    return Bispan(d2, b2, c2)


@pytest.mark.parametrize("spec", ["C2", "S3"])
def test_canonicalize_relabeling_invariance(spec):
    G = make_group(spec)
    rng = random.Random(17)
    for _ in range(30):
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        s = random_bispan(rng, X, Y)
        assert canonicalize(relabel_bispan(rng, s)) == canonicalize(s)


@pytest.mark.parametrize("spec", ["C2", "S3"])
def test_certificate_matches_bruteforce_search(spec):
    G = make_group(spec)
    rng = random.Random(23)
    singles = []
    for _ in range(24):
        X = random_gset(rng, G, max_size=3)
        Y = random_gset(rng, G, max_size=3)
        s = random_bispan(rng, X, Y, max_mid=3)
        u = canonicalize(s)
        if len(u.terms) == 1 and list(u.terms.values()) == [1]:
            singles.append((X, Y, s, next(iter(u.terms))))
    assert len(singles) >= 4
    for (X1, Y1, s1, c1) in singles:
        for (X2, Y2, s2, c2) in singles:
            if X1 != X2 or Y1 != Y2:
                continue
            assert (c1 == c2) == bispans_equivalent_bruteforce(s1, s2)


def test_canonicalize_zero_and_unit():
    G = make_group("S3")
    X = trivial_gset(G, 1)
    Y = coset_space(G, full_subgroup(G))
    E = empty_gset(G)
    z = canonicalize(Bispan(GMap(E, X, []), GMap(E, E, []), GMap(E, Y, [])))
    assert z == zero_virtual(X, Y)
    assert unit_virtual(X, Y).terms and len(unit_virtual(X, Y).terms) == 1


def test_doubled_orbit_coefficient():
    # B with two isomorphic orbits and matching fibers gives coefficient 2
    G = make_group("S3")
    t = subgroup_table(G)
    C2 = t.class_reps[2]
    X = trivial_gset(G, 1)
    pt = coset_space(G, full_subgroup(G))
    B1 = coset_space(G, C2)
    B, _ = disjoint_union([B1, B1])
    E = empty_gset(G)
    s = Bispan(GMap(E, X, []), GMap(E, B, []), GMap(B, pt, [0] * B.size))
    u = canonicalize(s)
    assert list(u.terms.values()) == [2]


def test_additive_monoid_freeness():
    # different splittings of an amalgamated diagram agree coefficientwise
    G = make_group("S3")
    rng = random.Random(31)
    for _ in range(15):
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        u = random_virtual(rng, X, Y, max_terms=3)
        if not u.is_effective():
            continue
        assert canonicalize(amalgamate(u)) == u


def test_add_neg_axioms():
    G = make_group("C2")
    rng = random.Random(3)
    X = random_gset(rng, G)
    Y = random_gset(rng, G)
    u = random_virtual(rng, X, Y)
    assert add(u, zero_virtual(X, Y)) == u
    assert add(u, neg(u)) == zero_virtual(X, Y)
    assert sub(u, u) == zero_virtual(X, Y)


def test_mul_unit_zero_burnside():
    G = make_group("S3")
    t = subgroup_table(G)
    X = empty_gset(G)
    pt = coset_space(G, full_subgroup(G))

    def orbit_class(H):
        B = coset_space(G, H)
        E = empty_gset(G)
        return canonicalize(Bispan(GMap(E, X, []), GMap(E, B, []),
                                   GMap(B, pt, [0] * B.size)))

    one = unit_virtual(X, pt)
    zero = zero_virtual(X, pt)
    C2 = orbit_class(t.class_reps[2])
    assert mul(C2, one) == C2
    assert mul(C2, zero) == zero
    # [S3/C2]^2 = [S3/C2] + [S3/e]
    free = orbit_class(trivial_subgroup(G))
    assert mul(C2, C2) == add(C2, free)


def test_generators_of_identity():
    G = make_group("S3")
    X = coset_space(G, trivial_subgroup(G))
    i = identity_map(X)
    assert gen_R(i) == gen_T(i) == gen_N(i) == identity_virtual(X)


def test_compose_transfer_functoriality():
    # T_g o T_f = T_(g o f)
    G = make_group("S3")
    t = subgroup_table(G)
    triv = trivial_subgroup(G)
    C2 = t.class_reps[2]
    f = projection_map(G, triv, C2)
    g = projection_map(G, C2, full_subgroup(G))
    assert compose(gen_T(g), gen_T(f)) == gen_T(g.compose(f))
    assert compose(gen_N(g), gen_N(f)) == gen_N(g.compose(f))
    assert compose(gen_R(f), gen_R(g)) == gen_R(g.compose(f))


def test_reconstruction_from_generators():
    G = make_group("C2 x C2")
    rng = random.Random(41)
    for _ in range(20):
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        s = random_bispan(rng, X, Y)
        rebuilt = compose(gen_T(s.c), compose(gen_N(s.b), gen_R(s.d)))
        assert rebuilt == canonicalize(s)


def test_compose_object_mismatch():
    G = make_group("C2")
    X = trivial_gset(G, 1)
    Y = trivial_gset(G, 2)
    with pytest.raises(ObjectMismatchError):
        compose(unit_virtual(X, Y), unit_virtual(X, Y))


def test_evaluate_examples():
    G = make_group("C2")
    X = trivial_gset(G, 1)
    XX, _ = disjoint_union([X, X])
    fold = GMap(XX, X, [0, 0])
    assert evaluate(gen_T(fold), ZZ, [3, 4]) == (7,)
    assert evaluate(gen_N(fold), ZZ, [3, 4]) == (12,)
    u = identity_virtual(XX)
    assert evaluate(u, ZZ, [5, -2]) == (5, -2)
    assert evaluate(gen_T(fold), IntModRing(5), [3, 4]) == (2,)


def test_evaluate_requires_equivariance():
    from gwitt.errors import EquivarianceError
    G = make_group("C2")
    X = coset_space(G, trivial_subgroup(G))
    ring = PolyRing(gset=X)
    with pytest.raises(EquivarianceError):
        evaluate(identity_virtual(X), ring,
                 [MultiPoly.variable(0), MultiPoly.variable(0)])


def test_evaluate_functoriality():
    # evaluation of a composite equals composed evaluations
    G = make_group("C2")
    rng = random.Random(29)
    done = 0
    while done < 12:
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        Z = random_gset(rng, G)
        s = canonicalize(random_bispan(rng, X, Y))
        t = canonicalize(random_bispan(rng, Y, Z))
        phi = [rng.randint(-3, 3) for _ in range(X.size)]
        # integers with trivial action are equivariant only on fixed points;
        # enforce constancy on orbits
        for orb in X.orbits():
            for x in orb:
                phi[x] = phi[orb[0]]
        mid = evaluate(s, ZZ, phi)
        lhs = evaluate(t, ZZ, mid)
        rhs = evaluate(compose(t, s), ZZ, phi)
        assert lhs == rhs
        done += 1


def test_evaluate_mackey_c2():
    # trivial-intersection case of the Mackey expansion, hand-expanded:
    # (s + gs)(t + gt) = Tr(s t) + Tr(s gt) with Tr(p) = p + gp
    G = make_group("C2")
    triv = trivial_subgroup(G)
    X0 = coset_space(G, triv)
    ring = PolyRing(gset=X0)
    s = MultiPoly.variable(0)
    gs = MultiPoly.variable(1)
    pi = projection_map(G, triv, full_subgroup(G))
    vals = evaluate(gen_N(pi), ring, [s, gs])
    assert vals[0] == s * gs  # norm along the free orbit multiplies translates
    sigma = next(g for g in G.elements() if g != G.identity)

    def g_act(p):
        return p.apply_variable_map(lambda v: X0.act[sigma][v])

    def tr(p):
        return p + g_act(p)

    t_ = MultiPoly.variable(0) + 1  # any two ring elements
    u_ = MultiPoly.variable(1) - 2
    lhs = tr(t_) * tr(u_)
    rhs = tr(t_ * u_) + tr(t_ * g_act(u_))
    assert lhs == rhs


def test_json_roundtrip():
    G = make_group("S3")
    rng = random.Random(57)
    for _ in range(8):
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        s = random_bispan(rng, X, Y)
        data = bispan_to_json(s)
        s2 = bispan_from_json(G, data)
        assert canonicalize(s2).describe() == canonicalize(s).describe()
        u = canonicalize(s)
        u2 = virtual_from_json(G, virtual_to_json(u))
        assert u2.describe() == u.describe()


def test_compose_associativity_with_negative_factor():
    # the polynomial extension composes associatively through norm stages
    from gwitt import poly_to_bispan
    from gwitt.polys import MultiPoly
    G = make_group("C4")
    t = subgroup_table(G)
    triv = trivial_subgroup(G)
    X = trivial_gset(G, 1)
    u = poly_to_bispan(X, MultiPoly.variable(0) - 1)
    C2 = t.class_reps[1]
    n1 = gen_N(projection_map(G, triv, C2))
    n2 = gen_N(projection_map(G, C2, full_subgroup(G)))
    assert compose(n2, compose(n1, u)) == compose(compose(n2, n1), u)


def test_representative_roundtrip():
    G = make_group("S3")
    rng = random.Random(61)
    for _ in range(20):
        X = random_gset(rng, G)
        Y = random_gset(rng, G)
        u = canonicalize(random_bispan(rng, X, Y))
        for cb in u.terms:
            assert canonicalize(cb.representative()).terms == {cb: 1}
