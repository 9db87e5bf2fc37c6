"""Witt vectors over a finite group.

A Witt vector holds one coefficient-ring element per conjugacy class of
subgroups, in the table's deterministic class order (the whole group first).
Ghost components are mark-weighted power sums; the universal sum / product /
negation polynomial families are obtained by inverting the ghost map over a
generic polynomial ring, and independently by the transfer-norm recursion
on subset orbits (xi_polys), which also yields a second construction of the
product family from double cosets.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

from .errors import ObjectMismatchError, WitnessError
from .groups import (FiniteGroup, SubgroupTable, double_cosets, normalizer,
                     subgroup_table, subset_orbit_data)
from .polys import MultiPoly
from .rings import PolyRing, Ring, ZZ


class WittVector:
    """Tuple of coefficient-ring elements indexed by subgroup classes."""

    __slots__ = ("table", "ring", "coords")

    def __init__(self, table: SubgroupTable, ring: Ring, coords):
        coords = tuple(ring.coerce(c) for c in coords)
        if len(coords) != table.num_classes:
            raise ObjectMismatchError(
                f"need {table.num_classes} coordinates, got {len(coords)}")
        self.table = table
        self.ring = ring
        self.coords = coords

    def __eq__(self, other):
        return (isinstance(other, WittVector) and self.table is other.table
                and all(self.ring.eq(a, b)
                        for a, b in zip(self.coords, other.coords)))

    def __hash__(self):
        return hash((id(self.table), self.coords))

    def to_json(self) -> dict:
        return {"group_spec": self.table.group.name,
                "coords": [c if isinstance(c, int) else str(c)
                           for c in self.coords]}

    def __repr__(self):
        return f"WittVector({list(self.coords)})"


def witt_zero(table: SubgroupTable, ring: Ring = ZZ) -> WittVector:
    return WittVector(table, ring, [ring.zero()] * table.num_classes)


def witt_one(table: SubgroupTable, ring: Ring = ZZ) -> WittVector:
    coords = [ring.zero()] * table.num_classes
    coords[0] = ring.one()
    return WittVector(table, ring, coords)


def _ghost_components(table: SubgroupTable, ring: Ring, coords):
    out = []
    for u in range(table.num_classes):
        acc = ring.zero()
        for v in range(table.num_classes):
            if table.subconj[u][v]:
                term = ring.mul(ring.coerce_int(table.marks[v][u]),
                                ring.pow(coords[v], table.rel_index[v][u]))
                acc = ring.add(acc, term)
        out.append(acc)
    return tuple(out)


def ghost(a: WittVector):
    """Ghost components: phi_U(a) = sum over classes V above U of
    |(G/V)^U| * a_V^(V:U)."""
    return _ghost_components(a.table, a.ring, a.coords)


def ghost_invert(table: SubgroupTable, targets, ring: Ring = ZZ) -> WittVector:
    """Triangular inverse of the ghost map over a torsion-free ring.

    Solves in class order (largest subgroups first); the diagonal divisor is
    marks[U][U] = |N(U):U| and exact divisibility is asserted at each step.
    """
    k = table.num_classes
    targets = [ring.coerce(t) for t in targets]
    coords = [None] * k
    for u in range(k):
        residual = targets[u]
        for v in range(k):
            if v != u and table.subconj[u][v]:
                term = ring.mul(ring.coerce_int(table.marks[v][u]),
                                ring.pow(coords[v], table.rel_index[v][u]))
                residual = ring.sub(residual, term)
        coords[u] = ring.divexact_int(residual, table.marks[u][u])
    return WittVector(table, ring, coords)


# -- universal polynomial families -------------------------------------------


@dataclass
class WittPolySet:
    """Per class U: sum s_U and product p_U in Z[a_V, b_V], negation m_U in Z[a_V]."""

    table: SubgroupTable
    s: list
    p: list
    m: list


def _generic_ghosts(table: SubgroupTable, letter: str):
    ring = PolyRing()
    coords = [MultiPoly.variable((letter, i)) for i in range(table.num_classes)]
    return _ghost_components(table, ring, coords)


def universal_polys(table: SubgroupTable) -> WittPolySet:
    """Sum/product/negation families by ghost inversion over Z[a_V, b_V].

    Integrality of the triangular solve is the computational content of the
    existence theorem; a DivisibilityError here means an internal error.
    Cached per group, and mirrored to WITT_CACHE_DIR when set.
    """
    G = table.group
    cached = G._poly_cache.get("universal")
    if cached is not None:
        return cached
    disk = _load_disk_cache(G)
    if disk is not None:
        G._poly_cache["universal"] = disk
        return disk
    ring = PolyRing()
    ga = _generic_ghosts(table, "a")
    gb = _generic_ghosts(table, "b")
    s = ghost_invert(table, [x + y for x, y in zip(ga, gb)], ring).coords
    p = ghost_invert(table, [x * y for x, y in zip(ga, gb)], ring).coords
    m = ghost_invert(table, [-x for x in ga], ring).coords
    ps = WittPolySet(table, list(s), list(p), list(m))
    G._poly_cache["universal"] = ps
    _save_disk_cache(G, ps)
    return ps


def _witt_assignment(a: WittVector, b: WittVector | None):
    values = {("a", i): c for i, c in enumerate(a.coords)}
    if b is not None:
        values.update({("b", i): c for i, c in enumerate(b.coords)})
    return values


def _check_compatible(a: WittVector, b: WittVector):
    if a.table is not b.table or a.ring is not b.ring:
        raise ObjectMismatchError("Witt vectors over different groups or rings")


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    ps = universal_polys(a.table)
    values = _witt_assignment(a, b)
    return WittVector(a.table, a.ring,
                      [poly.evaluate(a.ring, values) for poly in ps.s])


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    ps = universal_polys(a.table)
    values = _witt_assignment(a, b)
    return WittVector(a.table, a.ring,
                      [poly.evaluate(a.ring, values) for poly in ps.p])


def witt_neg(a: WittVector) -> WittVector:
    ps = universal_polys(a.table)
    values = _witt_assignment(a, None)
    return WittVector(a.table, a.ring,
                      [poly.evaluate(a.ring, values) for poly in ps.m])


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


# -- the transfer-norm recursion ----------------------------------------------


def xi_polys(table: SubgroupTable, class_list, signs):
    """Recombination polynomials xi_U in Z[x_0..x_{k-1}].

    Rewrites the signed sum of transferred norms at the listed classes into a
    single sum with one nonnegative term per class, by a triple induction:
    a negative sign at a maximal-order class is flipped through the subset
    orbits of that subgroup (the two trivial subsets solve for the negated
    norm), and a repeated class is merged through the same orbit sum.  Both
    rewrites only introduce strictly smaller subgroups.
    """
    if len(class_list) != len(signs):
        raise ValueError("class list and sign list differ in length")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    G = table.group
    entries = [(c, s, MultiPoly.variable(("x", i)))
               for i, (c, s) in enumerate(zip(class_list, signs))]
    entries = [e for e in entries if not e[2].is_zero()]

    def order_of(c):
        return table.class_reps[c].order

    while True:
        counts = {}
        for c, _, _ in entries:
            counts[c] = counts.get(c, 0) + 1
        bad_orders = [order_of(c) for c, s, _ in entries
                      if s == -1 or counts[c] > 1]
        if not bad_orders:
            break
        m1 = max(bad_orders)
        neg_idx = next((i for i, (c, s, _) in enumerate(entries)
                        if s == -1 and order_of(c) == m1), None)
        if neg_idx is not None:
            c, _, poly = entries[neg_idx]
            V = table.class_reps[c]
            new_entries = list(entries)
            new_entries[neg_idx] = (c, 1, -poly)
            for datum in subset_orbit_data(G, V):
                if datum.is_empty or datum.is_full:
                    continue
                ua_cls = table.class_of_mask[datum.stabilizer.mask]
                expo = V.order // datum.stabilizer.order
                arg = poly ** expo * ((-1) ** datum.orbit_count)
                if not arg.is_zero():
                    new_entries.append((ua_cls, 1, arg))
            entries = new_entries
            continue
        # merge two entries at a duplicated maximal class
        dup_cls = next(c for c, s, _ in entries
                       if counts[c] > 1 and order_of(c) == m1)
        i1 = next(i for i, e in enumerate(entries) if e[0] == dup_cls)
        i2 = next(i for i, e in enumerate(entries)
                  if e[0] == dup_cls and i > i1)
        c, _, p1 = entries[i1]
        p2 = entries[i2][2]
        V = table.class_reps[c]
        new_entries = []
        for i, e in enumerate(entries):
            if i == i1:
                merged = p1 + p2
                if not merged.is_zero():
                    new_entries.append((c, 1, merged))
            elif i != i2:
                new_entries.append(e)
        for datum in subset_orbit_data(G, V):
            if datum.is_empty or datum.is_full:
                continue
            ua_cls = table.class_of_mask[datum.stabilizer.mask]
            arg = p1 ** datum.orbit_count * p2 ** datum.complement_count
            if not arg.is_zero():
                new_entries.append((ua_cls, -1, arg))
        entries = new_entries

    out = [MultiPoly.zero()] * table.num_classes
    for c, _, poly in entries:
        out[c] = out[c] + poly
    return out


def p_polys_via_orbits(table: SubgroupTable):
    """Second construction of the product family from orbit stabilizers of
    products of coset spaces (one stabilizer per double coset)."""
    G = table.group
    w_classes = []
    substitutions = {}
    r = 0
    for i, Vi in enumerate(table.class_reps):
        for j, Vj in enumerate(table.class_reps):
            for _, inter in double_cosets(G, Vi, Vj):
                w_classes.append(table.class_of_mask[inter.mask])
                substitutions[("x", r)] = MultiPoly.monomial(
                    [(("a", i), Vi.order // inter.order),
                     (("b", j), Vj.order // inter.order)])
                r += 1
    xi = xi_polys(table, w_classes, [1] * len(w_classes))
    return [poly.substitute(substitutions) for poly in xi]


def m_polys_via_orbits(table: SubgroupTable):
    """Negation family from the recursion with all signs -1."""
    k = table.num_classes
    xi = xi_polys(table, list(range(k)), [-1] * k)
    subs = {("x", i): MultiPoly.variable(("a", i)) for i in range(k)}
    return [poly.substitute(subs) for poly in xi]


def s_polys_via_orbits(table: SubgroupTable):
    """Sum family from the recursion on the doubled class list."""
    k = table.num_classes
    classes = [i // 2 for i in range(2 * k)]
    xi = xi_polys(table, classes, [1] * (2 * k))
    subs = {}
    for i in range(k):
        subs[("x", 2 * i)] = MultiPoly.variable(("a", i))
        subs[("x", 2 * i + 1)] = MultiPoly.variable(("b", i))
    return [poly.substitute(subs) for poly in xi]


# -- restriction along surjections --------------------------------------------


def restr_surjection(a: WittVector, gamma, target: FiniteGroup) -> WittVector:
    """Restrict along a surjective homomorphism given as an element map:
    the coordinate at a class of the quotient is the coordinate at its
    preimage class."""
    G = a.table.group
    gamma = tuple(gamma)
    if len(gamma) != G.order:
        raise ObjectMismatchError("element map must cover the source group")
    if set(gamma) != set(range(target.order)):
        raise ObjectMismatchError("element map is not surjective")
    for x in G.elements():
        for y in G.elements():
            if gamma[G.mul(x, y)] != target.mul(gamma[x], gamma[y]):
                raise ObjectMismatchError("element map is not a homomorphism")
    t2 = subgroup_table(target)
    coords = []
    for Vp in t2.class_reps:
        pre = 0
        for g in G.elements():
            if gamma[g] in Vp:
                pre |= 1 << g
        coords.append(a.coords[a.table.class_of_mask[pre]])
    return WittVector(t2, a.ring, coords)


# -- the twisted-product ideal -------------------------------------------------


@dataclass
class IdealWitness:
    """Per class K: elements g_1..g_n of N_G(K) in one coset of K, and ring
    factors a_1..a_n.  Reconstructs an ideal generator pair via
    a_K = prod a_i and b_K = prod (g_i . a_i)."""

    table: SubgroupTable
    entries: dict

    def __post_init__(self):
        G = self.table.group
        for cls, (gs, factors) in self.entries.items():
            if not (0 <= cls < self.table.num_classes):
                raise WitnessError(f"no subgroup class {cls}")
            if len(gs) != len(factors) or not gs:
                raise WitnessError("need n >= 1 elements with matching factors")
            K = self.table.class_reps[cls]
            norm = normalizer(G, K)
            g1 = gs[0]
            for g in gs:
                if g not in norm:
                    raise WitnessError("witness element outside the normalizer")
                if G.mul(G.inv(g1), g) not in K:
                    raise WitnessError("witness elements lie in different cosets")


def ideal_generator(w: IdealWitness, ring: Ring):
    """The pair (a, b) of Witt vectors whose difference generates the ideal."""
    table = w.table
    coords_a, coords_b = [], []
    for cls in range(table.num_classes):
        entry = w.entries.get(cls)
        if entry is None:
            coords_a.append(ring.zero())
            coords_b.append(ring.zero())
            continue
        gs, factors = entry
        pa = ring.one()
        pb = ring.one()
        for g, f in zip(gs, factors):
            f = ring.coerce(f)
            pa = ring.mul(pa, f)
            pb = ring.mul(pb, ring.act(g, f))
        coords_a.append(pa)
        coords_b.append(pb)
    return (WittVector(table, ring, coords_a),
            WittVector(table, ring, coords_b))


# -- classical single-prime oracle ---------------------------------------------


def classical_witt_polys(p: int, n: int):
    """Classical length-(n+1) Witt polynomial families for the prime p,
    derived from the textbook ghost w_i = sum p^j x_j^(p^(i-j)) with no
    group theory involved.  Variables follow the (letter, level) convention
    so the output is directly comparable with universal_polys for a cyclic
    p-group (level i corresponds to the index-p^i subgroup class)."""
    def classical_ghost(letter):
        out = []
        for i in range(n + 1):
            acc = MultiPoly.zero()
            for j in range(i + 1):
                acc = acc + MultiPoly.monomial([((letter, j), p ** (i - j))],
                                               p ** j)
            out.append(acc)
        return out

    def invert(targets):
        coords = []
        for i in range(n + 1):
            residual = targets[i]
            for j in range(i):
                residual = residual - coords[j] ** (p ** (i - j)) * (p ** j)
            coords.append(residual.divexact(p ** i))
        return coords

    ga = classical_ghost("a")
    gb = classical_ghost("b")
    s = invert([x + y for x, y in zip(ga, gb)])
    prod = invert([x * y for x, y in zip(ga, gb)])
    m = invert([-x for x in ga])
    return s, prod, m


# -- disk cache ----------------------------------------------------------------


def _cache_path(G: FiniteGroup):
    root = os.environ.get("WITT_CACHE_DIR")
    if not root:
        return None
    safe = re.sub(r"[^A-Za-z0-9]+", "_", G.name)
    return os.path.join(root, f"wittpolys_{safe}_{G.order}.json")


def _poly_to_cache(poly: MultiPoly):
    return [[[list(v) for v, _ in mono], [e for _, e in mono], coeff]
            for mono, coeff in poly.items()]


def _poly_from_cache(data) -> MultiPoly:
    terms = {}
    for vars_, exps, coeff in data:
        mono = tuple(sorted(((v[0], v[1]), e) for v, e in zip(vars_, exps)))
        terms[mono] = coeff
    return MultiPoly(terms)


def _save_disk_cache(G: FiniteGroup, ps: WittPolySet):
    path = _cache_path(G)
    if path is None:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        payload = {key: [_poly_to_cache(poly) for poly in getattr(ps, key)]
                   for key in ("s", "p", "m")}
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
    except OSError:
        pass


def _load_disk_cache(G: FiniteGroup):
    path = _cache_path(G)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            payload = json.load(fh)
        table = subgroup_table(G)
        return WittPolySet(table,
                           [_poly_from_cache(d) for d in payload["s"]],
                           [_poly_from_cache(d) for d in payload["p"]],
                           [_poly_from_cache(d) for d in payload["m"]])
    except (OSError, KeyError, ValueError):
        return None
