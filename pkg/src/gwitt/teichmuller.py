"""The polynomial-ring identification, the Teichmuller map and its inverse.

Bispans out of X with a free middle-left object and target the free orbit
form the polynomial ring Z[X]; the Teichmuller map sends a Witt vector with
polynomial coordinates to the sum over subgroup classes of the transferred
norm of its coordinates.

Norms of arbitrary (possibly negative) polynomials are computed by the
subset-orbit expansion of a norm of a sum: splitting off one scaled monomial
rewrites the norm as norms of the parts plus transferred norms at strictly
smaller subgroups, and a scaled monomial is halved the same way until the
coefficient is +-1.  Only coefficient-one monomials ever reach the honest
composition pipeline, so every step stays small.  The inverse map reads the
coordinate polynomial straight off the canonical certificates: each free
summand over the class of H contributes the product of its orbit labels.
"""

from __future__ import annotations

from .bispans import (Bispan, VirtualBispan, add, canonicalize,
                      compose_representatives, mul, neg, post_compose_target,
                      scale, zero_virtual)
from .errors import NonFreeError, ObjectMismatchError
from .groups import Subgroup, full_subgroup, left_subset_orbit_data, \
    subgroup_table, trivial_subgroup
from .gsets import GMap, GSet, coset_space, disjoint_union, empty_gset, \
    identity_map, projection_map
from .polys import MultiPoly, mono_mul, mono_pow
from .rings import PolyRing
from .witt import WittVector, witt_add, witt_mul, witt_neg, ideal_generator


def _free_orbit(G) -> GSet:
    return coset_space(G, trivial_subgroup(G))


def _monomial_bispan(X: GSet, mono) -> Bispan:
    """[X <- (deg many copies of the free orbit) -> G/e -> G/e] with the
    left leg hitting each variable with its exponent's multiplicity."""
    G = X.group
    Ge = _free_orbit(G)
    copies = []
    d_vals = []
    for v, e in mono:
        for _ in range(e):
            copies.append(Ge)
            d_vals.extend(X.act[r][v] for r in Ge.coset_reps)
    if copies:
        A, offsets = disjoint_union(copies)
        b_vals = []
        for _ in copies:
            b_vals.extend(range(Ge.size))
        b = GMap(A, Ge, b_vals, check=False)
    else:
        A = empty_gset(G)
        b = GMap(A, Ge, (), check=False)
    d = GMap(A, X, d_vals, check=False)
    return Bispan(d, b, identity_map(Ge))


def poly_to_bispan(X: GSet, p) -> VirtualBispan:
    """Ring identification Z[X] -> hom(X, G/e), monomial by monomial."""
    if not isinstance(p, MultiPoly):
        p = MultiPoly.const(p)
    G = X.group
    out = zero_virtual(X, _free_orbit(G))
    for mono, coeff in p.items():
        out = add(out, scale(canonicalize(_monomial_bispan(X, mono)), coeff))
    return out


def assert_free(u: VirtualBispan):
    if not u.is_free():
        raise NonFreeError("summand with a non-free middle-left object")


def bispan_to_poly(u: VirtualBispan) -> MultiPoly:
    """Inverse identification on free bispans with target the free orbit.

    The section over the identity coset is canonical: the monomial is the
    product of the left-leg labels over the fiber there."""
    G = u.source.group
    Ge = _free_orbit(G)
    if u.target != Ge:
        raise ObjectMismatchError("target must be the free orbit")
    assert_free(u)
    e_point = Ge.elem_to_point[G.identity]
    out = MultiPoly.zero()
    for cb, coeff in u.items():
        rep = cb.representative()
        if cb.b_stab_mask != (1 << G.identity):
            raise NonFreeError("middle-right object is not free")
        q = rep.c.mapping.index(e_point)
        expo = {}
        for a in rep.b.fibers()[q]:
            v = rep.d.mapping[a]
            expo[v] = expo.get(v, 0) + 1
        out = out + MultiPoly.monomial(expo.items(), coeff)
    return out


# -- norms --------------------------------------------------------------------


def _transfer(u: VirtualBispan, K: Subgroup, W: Subgroup) -> VirtualBispan:
    return post_compose_target(u, projection_map(K.group, K, W))


def _norm_gen_rep(G, W: Subgroup) -> Bispan:
    Ge = _free_orbit(G)
    pi = projection_map(G, trivial_subgroup(G), W)
    return Bispan(identity_map(Ge), pi, identity_map(pi.target))


def norm_monomial(X: GSet, W: Subgroup, mono) -> VirtualBispan:
    """Honest norm of a single coefficient-one monomial via the pipeline."""
    G = X.group
    cache = G._poly_cache.setdefault("norm_mono", {})
    key = (X.skey(), W.mask, mono)
    if key not in cache:
        comp = compose_representatives(_norm_gen_rep(G, W),
                                       _monomial_bispan(X, mono))
        cache[key] = canonicalize(comp)
    return cache[key]


def _act_poly(X: GSet, g: int, p: MultiPoly) -> MultiPoly:
    row = X.act[g]
    return p.apply_variable_map(lambda v: row[v])


def _act_mono(X: GSet, g: int, mono):
    row = X.act[g]
    return tuple(sorted((row[v], e) for v, e in mono))


def _twisted_mono(X: GSet, reps, mono):
    out = ()
    for g in reps:
        out = mono_mul(out, _act_mono(X, g, mono))
    return out


def norm_scaled_monomial(X: GSet, W: Subgroup, gamma: int, mono) -> VirtualBispan:
    """Norm of gamma * monomial, by halving the coefficient through the
    subset-orbit expansion until it reaches +-1.

    Each orbit term carries the product of the coset-representative
    translates of the monomial; for a trivially-acted source these collapse
    to plain powers."""
    G = X.group
    target = coset_space(G, W)
    if gamma == 0:
        return zero_virtual(X, target)
    cache = G._poly_cache.setdefault("norm_scaled", {})
    key = (X.skey(), W.mask, gamma, mono)
    if key in cache:
        return cache[key]
    if W.order == 1:
        out = poly_to_bispan(X, MultiPoly({mono: gamma}))
    elif gamma == 1:
        out = norm_monomial(X, W, mono)
    elif gamma == -1:
        # 0 = norm((-mono) + mono), solved for the negated-argument norm
        out = neg(norm_monomial(X, W, mono))
        for datum in left_subset_orbit_data(G, W):
            if datum.is_empty or datum.is_full:
                continue
            UA = datum.stabilizer
            twisted = _twisted_mono(X, datum.reps_in + datum.reps_out, mono)
            part = norm_scaled_monomial(X, UA, (-1) ** len(datum.reps_in),
                                        twisted)
            out = add(out, neg(_transfer(part, UA, W)))
    else:
        h = gamma // 2
        rest = gamma - h
        out = add(norm_scaled_monomial(X, W, h, mono),
                  norm_scaled_monomial(X, W, rest, mono))
        for datum in left_subset_orbit_data(G, W):
            if datum.is_empty or datum.is_full:
                continue
            UA = datum.stabilizer
            coeff = h ** len(datum.reps_in) * rest ** len(datum.reps_out)
            twisted = _twisted_mono(X, datum.reps_in + datum.reps_out, mono)
            part = norm_scaled_monomial(X, UA, coeff, twisted)
            out = add(out, _transfer(part, UA, W))
    cache[key] = out
    return out


def norm_poly(X: GSet, W: Subgroup, p) -> VirtualBispan:
    """Norm of an arbitrary polynomial along the projection from the free
    orbit to G/W, as an element of hom(X, G/W).

    Splits off one scaled monomial at a time; the subset-orbit expansion of
    the resulting binary sum produces norms at strictly smaller subgroups
    whose arguments are products of translates of the two parts."""
    G = X.group
    if not isinstance(p, MultiPoly):
        p = MultiPoly.const(p)
    target = coset_space(G, W)
    if p.is_zero():
        return zero_virtual(X, target)
    if W.order == 1:
        return poly_to_bispan(X, p)
    items = p.items()
    if len(items) == 1:
        mono, coeff = items[0]
        return norm_scaled_monomial(X, W, coeff, mono)
    cache = G._poly_cache.setdefault("norm_poly", {})
    key = (X.skey(), W.mask, p.key())
    if key in cache:
        return cache[key]
    mono, coeff = items[0]
    head = MultiPoly({mono: coeff})
    rest = p - head
    out = add(norm_poly(X, W, head), norm_poly(X, W, rest))
    for datum in left_subset_orbit_data(G, W):
        if datum.is_empty or datum.is_full:
            continue
        UA = datum.stabilizer
        arg = MultiPoly.const(1)
        for g in datum.reps_in:
            arg = arg * _act_poly(X, g, head)
        for g in datum.reps_out:
            arg = arg * _act_poly(X, g, rest)
        out = add(out, _transfer(norm_poly(X, UA, arg), UA, W))
    cache[key] = out
    return out


# -- the Teichmuller map and its inverse ----------------------------------------


def _poly_gset(x: WittVector) -> GSet:
    ring = x.ring
    if not isinstance(ring, PolyRing) or ring.gset is None:
        raise ObjectMismatchError(
            "coordinates must live in a polynomial ring over a G-set")
    if ring.gset.group is not x.table.group:
        raise ObjectMismatchError("coordinate ring over the wrong group")
    return ring.gset


def teichmuller_t(x: WittVector) -> VirtualBispan:
    """Sum over subgroup classes of the transferred norm of the coordinate."""
    table = x.table
    G = table.group
    X = _poly_gset(x)
    full = full_subgroup(G)
    out = zero_virtual(X, coset_space(G, full))
    for i, U in enumerate(table.class_reps):
        coord = x.coords[i]
        if isinstance(coord, MultiPoly) and coord.is_zero():
            continue
        out = add(out, _transfer(norm_poly(X, U, coord), U, full))
    return out


def rho(u: VirtualBispan, table=None) -> WittVector:
    """Coordinate extraction by peeling subgroup classes in decreasing order.

    At each class the free summands over that class read off as a sum of
    products of their orbit labels; subtracting the transferred norm of the
    coordinate just read removes the debris its expansion left at strictly
    smaller subgroups before the next level is read.  Exact inverse of the
    Teichmuller map when the source has trivial action; in general well
    defined modulo the twisted-product ideal."""
    X = u.source
    G = X.group
    if table is None:
        table = subgroup_table(G)
    full = full_subgroup(G)
    if u.target != coset_space(G, full):
        raise ObjectMismatchError("target must be the one-point orbit")
    assert_free(u)
    ident = 1 << G.identity
    remainder = u
    coords = []
    for cls in range(table.num_classes):
        poly = MultiPoly.zero()
        for cb, coeff in remainder.items():
            h_mask, _, pairs = cb.cert
            if table.class_of_mask[h_mask] != cls:
                continue
            expo = {}
            for k_mask, label in pairs:
                if k_mask != ident:
                    raise NonFreeError(
                        "summand with a non-free middle-left object")
                expo[label] = expo.get(label, 0) + 1
            poly = poly + MultiPoly.monomial(expo.items(), coeff)
        coords.append(poly)
        if not poly.is_zero():
            U = table.class_reps[cls]
            peel = _transfer(norm_poly(X, U, poly), U, full)
            remainder = add(remainder, neg(peel))
    return WittVector(table, PolyRing(gset=X), coords)


def witt_law_check(x: WittVector, y: WittVector, witness=None) -> list:
    """Compare both routes for each ring law: the bispan-side operation on
    Teichmuller images against the image of the Witt-polynomial operation.
    Returns one report per law."""
    tx = teichmuller_t(x)
    ty = teichmuller_t(y)
    reports = []

    def report(law, lhs, rhs, inputs):
        reports.append({
            "law": law,
            "inputs": inputs,
            "verdict": "pass" if lhs == rhs else "fail",
            "canonical_forms": {"bispan_route": _render(lhs),
                                "witt_route": _render(rhs)},
        })

    coords_in = {"x": [str(c) for c in x.coords],
                 "y": [str(c) for c in y.coords]}
    report("add", add(tx, ty), teichmuller_t(witt_add(x, y)), coords_in)
    report("mul", mul(tx, ty), teichmuller_t(witt_mul(x, y)), coords_in)
    report("neg", neg(tx), teichmuller_t(witt_neg(x)),
           {"x": coords_in["x"]})
    if witness is not None:
        a, b = ideal_generator(witness, x.ring)
        report("ideal", teichmuller_t(a), teichmuller_t(b),
               {"a": [str(c) for c in a.coords],
                "b": [str(c) for c in b.coords]})
    return reports


def _render(u: VirtualBispan):
    return [{"cert": list(map(str, cb.cert)), "coeff": c} for cb, c in u.items()]
