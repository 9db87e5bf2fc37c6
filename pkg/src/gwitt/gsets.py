"""Finite G-sets, equivariant maps, pullbacks and dependent products.

Points are integers 0..size-1 and the action is a full (element, point)
table.  Construction validates the action axioms; large internal objects
produced by the limit constructions pass check=False and are revalidated
in tests instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EquivarianceError, ObjectMismatchError, SizeCapError
from .groups import FiniteGroup, Subgroup, mask_elements, subgroup_table

SECTION_CAP = 1_000_000


class GSet:
    """Finite left G-set given by an action table act[g][x]."""

    __slots__ = ("group", "size", "act", "_skey", "_hash", "_orbit_cache",
                 "elem_to_point", "coset_reps")

    def __init__(self, group: FiniteGroup, act, check: bool = True):
        self.group = group
        self.act = tuple(tuple(row) for row in act)
        if len(self.act) != group.order:
            raise EquivarianceError("action table must have one row per group element")
        self.size = len(self.act[0]) if self.act else 0
        if any(len(row) != self.size for row in self.act):
            raise EquivarianceError("ragged action table")
        self._skey = None
        self._hash = None
        self._orbit_cache = None
        if check:
            self.revalidate()

    def revalidate(self):
        G = self.group
        e = G.identity
        for x in range(self.size):
            if self.act[e][x] != x:
                raise EquivarianceError("identity does not act trivially")
        for g in G.elements():
            row_g = self.act[g]
            for h in G.elements():
                row_gh = self.act[G.mul(g, h)]
                row_h = self.act[h]
                for x in range(self.size):
                    if row_g[row_h[x]] != row_gh[x]:
                        raise EquivarianceError("action is not compatible with multiplication")

    def apply(self, g: int, x: int) -> int:
        return self.act[g][x]

    def skey(self):
        if self._skey is None:
            self._skey = (id(self.group), self.act)
        return self._skey

    def __eq__(self, other):
        return (isinstance(other, GSet) and other.group is self.group
                and other.act == self.act)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.skey())
        return self._hash

    def stabilizer_mask(self, x: int) -> int:
        mask = 0
        for g in self.group.elements():
            if self.act[g][x] == x:
                mask |= 1 << g
        return mask

    def fixed_points(self, sub_mask: int):
        return [x for x in range(self.size)
                if all(self.act[g][x] == x for g in mask_elements(sub_mask))]

    def orbits(self):
        """Orbits as sorted point lists, ordered by minimal point."""
        if self._orbit_cache is None:
            seen = [False] * self.size
            orbs = []
            for x in range(self.size):
                if seen[x]:
                    continue
                orb = sorted({self.act[g][x] for g in self.group.elements()})
                for y in orb:
                    seen[y] = True
                orbs.append(orb)
            self._orbit_cache = orbs
        return self._orbit_cache

    def __repr__(self):
        return f"GSet({self.group.name}, size={self.size})"


class GMap:
    """Equivariant map between G-sets, stored pointwise."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: GSet, target: GSet, mapping, check: bool = True):
        if source.group is not target.group:
            raise ObjectMismatchError("source and target live over different groups")
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        if len(self.mapping) != source.size:
            raise EquivarianceError("map must be defined on every point")
        if any(not (0 <= y < target.size) for y in self.mapping):
            raise EquivarianceError("map value out of range")
        if check:
            self.revalidate()

    def revalidate(self):
        for g in self.source.group.elements():
            src_row = self.source.act[g]
            tgt_row = self.target.act[g]
            for x in range(self.source.size):
                if self.mapping[src_row[x]] != tgt_row[self.mapping[x]]:
                    raise EquivarianceError("map is not equivariant")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "GMap") -> "GMap":
        """self after other."""
        if other.target != self.source:
            raise ObjectMismatchError("maps are not composable")
        return GMap(other.source, self.target,
                    tuple(self.mapping[x] for x in other.mapping), check=False)

    def fibers(self):
        out = [[] for _ in range(self.target.size)]
        for x, y in enumerate(self.mapping):
            out[y].append(x)
        return out

    def __eq__(self, other):
        return (isinstance(other, GMap) and self.source == other.source
                and self.target == other.target and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.source.skey(), self.target.skey(), self.mapping))

    def __repr__(self):
        return f"GMap({self.mapping})"


def identity_map(X: GSet) -> GMap:
    return GMap(X, X, range(X.size), check=False)


def empty_gset(G: FiniteGroup) -> GSet:
    return GSet(G, [[] for _ in G.elements()], check=False)


def trivial_gset(G: FiniteGroup, n: int) -> GSet:
    return GSet(G, [list(range(n)) for _ in G.elements()], check=False)


def coset_space(G: FiniteGroup, H: Subgroup) -> GSet:
    """Left coset space G/H with cosets numbered by minimal element.

    Cached per group and subgroup mask; the cached object also carries
    elem_to_point (element -> index of its coset).
    """
    cached = G._coset_spaces.get(H.mask)
    if cached is not None:
        return cached
    coset_of = [None] * G.order
    cosets = []
    for g in G.elements():
        if coset_of[g] is not None:
            continue
        idx = len(cosets)
        members = sorted(G.mul(g, h) for h in mask_elements(H.mask))
        for m in members:
            coset_of[m] = idx
        cosets.append(members)
    act = [[coset_of[G.mul(g, c[0])] for c in cosets] for g in G.elements()]
    X = GSet(G, act, check=False)
    X.elem_to_point = tuple(coset_of)  # type: ignore[attr-defined]
    X.coset_reps = tuple(c[0] for c in cosets)  # type: ignore[attr-defined]
    G._coset_spaces[H.mask] = X
    return X


def projection_map(G: FiniteGroup, K: Subgroup, H: Subgroup) -> GMap:
    """Natural projection G/K -> G/H for K <= H."""
    if K.mask & ~H.mask:
        raise ObjectMismatchError("projection needs K <= H")
    src = coset_space(G, K)
    tgt = coset_space(G, H)
    return GMap(src, tgt, tuple(tgt.elem_to_point[r] for r in src.coset_reps),
                check=False)


def conjugation_map(G: FiniteGroup, H: Subgroup, g: int) -> GMap:
    """c_g : G/H -> G/(gHg^-1), sigma H -> sigma g^-1 (gHg^-1)."""
    Hc = Subgroup(G, G.conj_mask(g, H.mask))
    src = coset_space(G, H)
    tgt = coset_space(G, Hc)
    ginv = G.inv(g)
    return GMap(src, tgt,
                tuple(tgt.elem_to_point[G.mul(r, ginv)] for r in src.coset_reps),
                check=False)


def right_translation_map(G: FiniteGroup, g: int) -> GMap:
    """Right multiplication by g on G/e (a G-map for the left action)."""
    from .groups import trivial_subgroup
    X = coset_space(G, trivial_subgroup(G))
    return GMap(X, X, tuple(X.elem_to_point[G.mul(r, g)] for r in X.coset_reps),
                check=False)


def disjoint_union(parts):
    """Disjoint union of G-sets; returns (union, offsets)."""
    if not parts:
        raise ValueError("need at least one part to infer the group")
    G = parts[0].group
    offsets = []
    total = 0
    for p in parts:
        if p.group is not G:
            raise ObjectMismatchError("parts live over different groups")
        offsets.append(total)
        total += p.size
    act = []
    for g in G.elements():
        row = []
        for p, off in zip(parts, offsets):
            row.extend(off + y for y in p.act[g])
        act.append(row)
    return GSet(G, act, check=False), offsets


def gset_from_orbits(G: FiniteGroup, stabilizers) -> GSet:
    """Disjoint union of coset spaces G/H_i with deterministic numbering."""
    parts = [coset_space(G, H) for H in stabilizers]
    if not parts:
        return empty_gset(G)
    union, _ = disjoint_union(parts)
    return union


@dataclass
class OrbitDecomposition:
    """Orbits of a G-set with chosen base points and their stabilizers."""

    gset: GSet
    base_points: list
    stabilizers: list
    class_indices: list

    @property
    def num_orbits(self) -> int:
        return len(self.base_points)


def orbit_decomposition(X: GSet) -> OrbitDecomposition:
    table = subgroup_table(X.group)
    bases, stabs, classes = [], [], []
    for orb in X.orbits():
        base = orb[0]
        stab = Subgroup(X.group, X.stabilizer_mask(base))
        bases.append(base)
        stabs.append(stab)
        classes.append(table.class_of_mask[stab.mask])
    return OrbitDecomposition(X, bases, stabs, classes)


def pullback(f: GMap, g: GMap):
    """X x_Z Y along f: X->Z, g: Y->Z with the diagonal action.

    Returns (P, p1, p2); points are pairs (x, y) with f(x) = g(y) in
    lexicographic order.
    """
    if f.target != g.target:
        raise ObjectMismatchError("pullback needs a shared target")
    X, Y = f.source, g.source
    points = [(x, y) for x in range(X.size) for y in range(Y.size)
              if f.mapping[x] == g.mapping[y]]
    index = {pt: i for i, pt in enumerate(points)}
    G = X.group
    act = [[index[(X.act[gg][x], Y.act[gg][y])] for (x, y) in points]
           for gg in G.elements()]
    P = GSet(G, act, check=False)
    p1 = GMap(P, X, tuple(x for x, _ in points), check=False)
    p2 = GMap(P, Y, tuple(y for _, y in points), check=False)
    return P, p1, p2


@dataclass
class ExponentialDiagram:
    """The data of the canonical exponential diagram over f: X -> Y.

    pi_set = dependent product of p: A -> X along f, pi_map its structure
    map to Y, ev_source = X x_Y pi_set with its two legs ev (evaluation
    into A) and proj (projection to pi_set).
    """

    pi_set: GSet
    pi_map: GMap
    ev_source: GSet
    ev: GMap
    proj: GMap
    ev_to_x: GMap


def dependent_product(p: GMap, f: GMap, section_cap: int = SECTION_CAP) -> ExponentialDiagram:
    """Right adjoint to pullback along f, computed by explicit sections.

    A point of the dependent product over y is a tuple of A-points, one per
    point of f^-1(y) in increasing order, lying in the correct fibers of p.
    """
    if p.target != f.source:
        raise ObjectMismatchError("dependent product needs target(p) == source(f)")
    A, X, Y = p.source, f.source, f.target
    G = X.group
    fibers_f = f.fibers()       # per y: sorted list of x
    fibers_p = p.fibers()       # per x: sorted list of a
    points = []                 # (y, section tuple)
    for y in range(Y.size):
        xs = fibers_f[y]
        count = 1
        for x in xs:
            count *= len(fibers_p[x])
            if count > section_cap:
                raise SizeCapError("dependent product exceeds section cap")
        for sec in itertools.product(*(fibers_p[x] for x in xs)):
            points.append((y, sec))
    index = {pt: i for i, pt in enumerate(points)}
    act = []
    for g in G.elements():
        rowA, rowY = A.act[g], Y.act[g]
        ginv_rowX = X.act[G.inv(g)]
        row = []
        for y, sec in points:
            gy = rowY[y]
            xs_y = fibers_f[y]
            pos = {x: i for i, x in enumerate(xs_y)}
            new_sec = tuple(rowA[sec[pos[ginv_rowX[xp]]]] for xp in fibers_f[gy])
            row.append(index[(gy, new_sec)])
        act.append(row)
    Pi = GSet(G, act, check=False)
    pi_map = GMap(Pi, Y, tuple(y for y, _ in points), check=False)
    # pullback X x_Y Pi with evaluation (x, (y, sec)) -> sec[position of x]
    ev_source, to_x, to_pi = pullback(f, pi_map)
    ev_vals = []
    for i in range(ev_source.size):
        x = to_x.mapping[i]
        y, sec = points[to_pi.mapping[i]]
        ev_vals.append(sec[fibers_f[y].index(x)])
    ev = GMap(ev_source, A, tuple(ev_vals), check=False)
    return ExponentialDiagram(pi_set=Pi, pi_map=pi_map, ev_source=ev_source,
                              ev=ev, proj=to_pi, ev_to_x=to_x)


def gset_iso(X: GSet, Y: GSet):
    """Equivariant bijection X -> Y as a GMap, or None.

    Isomorphism is decided by the multiset of orbit stabilizer classes; a
    witness is assembled orbit by orbit through a conjugating element.
    """
    if X.group is not Y.group or X.size != Y.size:
        return None
    G = X.group
    dx, dy = orbit_decomposition(X), orbit_decomposition(Y)
    by_class = {}
    for i, ci in enumerate(dy.class_indices):
        by_class.setdefault(ci, []).append(i)
    mapping = [None] * X.size
    used = set()
    for i, ci in enumerate(dx.class_indices):
        candidates = [j for j in by_class.get(ci, []) if j not in used]
        if not candidates:
            return None
        j = candidates[0]
        used.add(j)
        p, q = dx.base_points[i], dy.base_points[j]
        hp = X.stabilizer_mask(p)
        z = None
        for c in G.elements():
            if G.conj_mask(c, Y.stabilizer_mask(q)) == hp:
                z = Y.act[c][q]
                break
        if z is None:
            return None
        for g in G.elements():
            mapping[X.act[g][p]] = Y.act[g][z]
    if None in mapping or len(set(mapping)) != Y.size:
        return None
    return GMap(X, Y, mapping, check=False)


def canonical_form(X: GSet):
    """Renumber to the layout of gset_from_orbits over class representatives
    (orbit class order, then coset order per orbit); returns (canonical GSet,
    old->new point map)."""
    G = X.group
    table = subgroup_table(G)
    dec = orbit_decomposition(X)
    order = sorted(range(dec.num_orbits),
                   key=lambda i: (dec.class_indices[i], dec.base_points[i]))
    reps = [table.class_reps[dec.class_indices[i]] for i in order]
    target = gset_from_orbits(G, reps)
    point_map = [None] * X.size
    offset = 0
    for i, rep in zip(order, reps):
        # re-base the orbit at a point whose stabilizer is the class rep
        base = min(x for g in G.elements()
                   for x in [X.act[g][dec.base_points[i]]]
                   if X.stabilizer_mask(x) == rep.mask)
        std = coset_space(G, rep)
        for g in G.elements():
            point_map[X.act[g][base]] = offset + std.elem_to_point[g]
        offset += std.size
    return target, point_map


def gset_to_json(X: GSet) -> dict:
    dec = orbit_decomposition(X)
    return {
        "group_spec": X.group.name,
        "orbit_stabilizer_classes": sorted(dec.class_indices),
    }


def gset_from_json(G: FiniteGroup, data: dict) -> GSet:
    table = subgroup_table(G)
    stabs = [table.class_reps[i] for i in data["orbit_stabilizer_classes"]]
    return gset_from_orbits(G, stabs)
