"""The category of bispans of finite G-sets and its hom-rings.

A bispan X <- A -> B -> Y is held by its three equivariant legs.  Hom-sets
are represented as integer combinations of canonical classes with transitive
middle-right object B; unique orbit decomposition of B makes the effective
classes a free commutative monoid on those generators, so formal integer
combinations realize the group completion with decidable equality.

Equivalence of summands is decided by a complete certificate: writing the
middle-right orbit as G/H at a base point p, the A-part with its left-leg
labels is an H-set over X, classified by the multiset of (point stabilizer,
label) orbit invariants.  Minimizing over the base point makes the
certificate independent of all numbering choices.

Composition follows the pullback / dependent-product pipeline on honest
representatives.  Composing onto a formal difference uses the unique
polynomial extension to the group completion, computed by finite-difference
(Newton) extrapolation of the honest values; left factors whose norm leg is
bijective act linearly and skip the extrapolation.
"""

from __future__ import annotations

from .errors import EquivarianceError, ObjectMismatchError
from .groups import Subgroup, mask_elements
from .gsets import (GMap, GSet, coset_space, disjoint_union, empty_gset,
                    dependent_product, identity_map, pullback)


class Bispan:
    """Diagram X <- A -> B -> Y of G-maps (a morphism representative)."""

    __slots__ = ("d", "b", "c")

    def __init__(self, d: GMap, b: GMap, c: GMap):
        if d.source != b.source or b.target != c.source:
            raise ObjectMismatchError("bispan legs do not share objects")
        self.d = d
        self.b = b
        self.c = c

    @property
    def X(self) -> GSet:
        return self.d.target

    @property
    def A(self) -> GSet:
        return self.d.source

    @property
    def B(self) -> GSet:
        return self.b.target

    @property
    def Y(self) -> GSet:
        return self.c.target

    @property
    def group(self):
        return self.d.source.group

    def __repr__(self):
        return (f"Bispan(|X|={self.X.size}, |A|={self.A.size}, "
                f"|B|={self.B.size}, |Y|={self.Y.size})")


def _summand_certificate(bi: Bispan, orbit) -> tuple:
    """Complete invariant of [X <- A -> orbit -> Y] under equivalence."""
    A, B = bi.A, bi.B
    fibers = bi.b.fibers()
    best = None
    for p in orbit:
        h_mask = B.stabilizer_mask(p)
        h_elems = tuple(mask_elements(h_mask))
        remaining = set(fibers[p])
        pairs = []
        while remaining:
            a0 = min(remaining)
            orb = {A.act[h][a0] for h in h_elems}
            remaining -= orb
            pairs.append(min((A.stabilizer_mask(a), bi.d.mapping[a]) for a in orb))
        key = (h_mask, bi.c.mapping[p], tuple(sorted(pairs)))
        if best is None or key < best:
            best = key
    return best


class CanonicalBispan:
    """Equivalence class of bispans with transitive B, held by certificate."""

    __slots__ = ("source", "target", "cert", "_rep", "_hash")

    def __init__(self, source: GSet, target: GSet, cert: tuple):
        self.source = source
        self.target = target
        self.cert = cert
        self._rep = None
        self._hash = None

    def __eq__(self, other):
        return (isinstance(other, CanonicalBispan) and self.cert == other.cert
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source.skey(), self.target.skey(), self.cert))
        return self._hash

    @property
    def b_stab_mask(self) -> int:
        return self.cert[0]

    def is_free(self) -> bool:
        ident = 1 << self.source.group.identity
        return all(k == ident for k, _ in self.cert[2])

    def representative(self) -> Bispan:
        """Deterministic representative rebuilt from the certificate."""
        if self._rep is not None:
            return self._rep
        G = self.source.group
        h_mask, y0, pairs = self.cert
        H = Subgroup(G, h_mask)
        B = coset_space(G, H)
        c = GMap(B, self.target,
                 tuple(self.target.act[r][y0] for r in B.coset_reps), check=False)
        parts, d_vals, b_vals = [], [], []
        for k_mask, x0 in pairs:
            K = Subgroup(G, k_mask)
            AK = coset_space(G, K)
            parts.append(AK)
            d_vals.extend(self.source.act[r][x0] for r in AK.coset_reps)
            b_vals.extend(B.elem_to_point[r] for r in AK.coset_reps)
        if parts:
            A, _ = disjoint_union(parts)
        else:
            A = empty_gset(G)
        d = GMap(A, self.source, d_vals, check=False)
        b = GMap(A, B, b_vals, check=False)
        self._rep = Bispan(d, b, c)
        return self._rep

    def __repr__(self):
        return f"CanonicalBispan(cert={self.cert})"


class VirtualBispan:
    """Element of the completed hom-group: canonical classes with Z coefficients."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: GSet, target: GSet, terms=None):
        if source.group is not target.group:
            raise ObjectMismatchError("source and target over different groups")
        self.source = source
        self.target = target
        self.terms = {}
        if terms:
            for cb, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if coeff:
                    self.terms[cb] = self.terms.get(cb, 0) + coeff
                    if not self.terms[cb]:
                        del self.terms[cb]

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0].cert)

    def is_zero(self) -> bool:
        return not self.terms

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def is_free(self) -> bool:
        return all(cb.is_free() for cb in self.terms)

    def __eq__(self, other):
        return (isinstance(other, VirtualBispan) and self.source == other.source
                and self.target == other.target and self.terms == other.terms)

    def __hash__(self):
        return hash((self.source.skey(), self.target.skey(),
                     tuple((cb.cert, c) for cb, c in self.items())))

    def describe(self):
        return [(cb.cert, c) for cb, c in self.items()]

    def __repr__(self):
        return f"VirtualBispan({len(self.terms)} classes)"


def zero_virtual(X: GSet, Y: GSet) -> VirtualBispan:
    return VirtualBispan(X, Y)


def unit_virtual(X: GSet, Y: GSet) -> VirtualBispan:
    G = X.group
    E = empty_gset(G)
    return canonicalize(Bispan(GMap(E, X, (), check=False),
                               GMap(E, Y, (), check=False), identity_map(Y)))


def canonicalize(s: Bispan) -> VirtualBispan:
    """Split B into orbits and certify each summand."""
    terms = {}
    for orbit in s.B.orbits():
        cb = CanonicalBispan(s.X, s.Y, _summand_certificate(s, orbit))
        terms[cb] = terms.get(cb, 0) + 1
    return VirtualBispan(s.X, s.Y, terms)


def add(u: VirtualBispan, v: VirtualBispan) -> VirtualBispan:
    _check_parallel(u, v)
    terms = dict(u.terms)
    for cb, coeff in v.terms.items():
        new = terms.get(cb, 0) + coeff
        if new:
            terms[cb] = new
        else:
            del terms[cb]
    return VirtualBispan(u.source, u.target, terms)


def neg(u: VirtualBispan) -> VirtualBispan:
    return VirtualBispan(u.source, u.target,
                         {cb: -c for cb, c in u.terms.items()})


def sub(u: VirtualBispan, v: VirtualBispan) -> VirtualBispan:
    return add(u, neg(v))


def scale(u: VirtualBispan, n: int) -> VirtualBispan:
    if n == 0:
        return zero_virtual(u.source, u.target)
    return VirtualBispan(u.source, u.target,
                         {cb: n * c for cb, c in u.terms.items()})


def _check_parallel(u, v):
    if u.source != v.source or u.target != v.target:
        raise ObjectMismatchError("bispans are not parallel")


def _mul_reps(s: Bispan, t: Bispan) -> Bispan:
    """Representative product: [X <- BxA' + AxB' -> BxB' -> Y] over Y."""
    cb2 = t.c.compose(t.b)   # A' -> Y
    cb1 = s.c.compose(s.b)   # A  -> Y
    P1, p1B, p1A2 = pullback(s.c, cb2)    # B x_Y A'
    P2, p2A, p2B2 = pullback(cb1, t.c)    # A x_Y B'
    PB, prB, prB2 = pullback(s.c, t.c)    # B x_Y B'
    pb_index = {}
    for i in range(PB.size):
        pb_index[(prB.mapping[i], prB2.mapping[i])] = i
    A_total, offsets = disjoint_union([P1, P2])
    d_vals, b_vals = [], []
    for i in range(P1.size):
        d_vals.append(t.d.mapping[p1A2.mapping[i]])
        b_vals.append(pb_index[(p1B.mapping[i], t.b.mapping[p1A2.mapping[i]])])
    for i in range(P2.size):
        d_vals.append(s.d.mapping[p2A.mapping[i]])
        b_vals.append(pb_index[(s.b.mapping[p2A.mapping[i]], p2B2.mapping[i])])
    d = GMap(A_total, s.X, d_vals, check=False)
    b = GMap(A_total, PB, b_vals, check=False)
    c = GMap(PB, s.Y, tuple(s.c.mapping[prB.mapping[i]] for i in range(PB.size)),
             check=False)
    return Bispan(d, b, c)


def mul(u: VirtualBispan, v: VirtualBispan) -> VirtualBispan:
    """Hom-ring product, extended bilinearly over canonical classes."""
    _check_parallel(u, v)
    out = zero_virtual(u.source, u.target)
    for cu, a in u.items():
        for cv, b in v.items():
            prod = canonicalize(_mul_reps(cu.representative(), cv.representative()))
            out = add(out, scale(prod, a * b))
    return out


# -- generators --------------------------------------------------------------


def gen_R(f: GMap) -> VirtualBispan:
    """Restriction class [Y <-f X = X = X] in hom(Y, X)."""
    i = identity_map(f.source)
    return canonicalize(Bispan(f, i, i))


def gen_T(f: GMap) -> VirtualBispan:
    """Additive transfer class [X = X = X -f> Y] in hom(X, Y)."""
    i = identity_map(f.source)
    return canonicalize(Bispan(i, i, f))


def gen_N(f: GMap) -> VirtualBispan:
    """Multiplicative (norm) class [X = X -f> Y = Y] in hom(X, Y)."""
    return canonicalize(Bispan(identity_map(f.source), f,
                               identity_map(f.target)))


def identity_virtual(X: GSet) -> VirtualBispan:
    return gen_T(identity_map(X))


# -- composition -------------------------------------------------------------


def compose_representatives(t: Bispan, s: Bispan) -> Bispan:
    """Tambara's composite of honest diagrams via the exponential diagram."""
    if t.X != s.Y:
        raise ObjectMismatchError("representatives are not composable")
    Bp, projB, projC = pullback(s.c, t.d)        # B' = B x_Y C
    Ap, projA, projBp = pullback(s.b, projB)     # A' = A x_B B'
    exp = dependent_product(projC, t.b)          # along b': C -> D
    App, projAp, projCt = pullback(projBp, exp.ev)
    d2 = s.d.compose(projA).compose(projAp)
    b2 = exp.proj.compose(projCt)
    c2 = t.c.compose(exp.pi_map)
    return Bispan(d2, b2, c2)


def amalgamate(u: VirtualBispan) -> Bispan:
    """One honest diagram representing an effective virtual bispan."""
    if not u.is_effective():
        raise ValueError("amalgamation needs nonnegative coefficients")
    G = u.source.group
    partsA, partsB = [], []
    d_vals, c_parts = [], []
    reps = []
    for cb, coeff in u.items():
        rep = cb.representative()
        for _ in range(coeff):
            reps.append(rep)
            partsA.append(rep.A)
            partsB.append(rep.B)
    if not partsB:
        E = empty_gset(G)
        return Bispan(GMap(E, u.source, (), check=False),
                      GMap(E, E, (), check=False),
                      GMap(E, u.target, (), check=False))
    A, offA = disjoint_union(partsA)
    B, offB = disjoint_union(partsB)
    b_vals = []
    c_vals = []
    for rep, oa, ob in zip(reps, offA, offB):
        d_vals.extend(rep.d.mapping)
        b_vals.extend(ob + y for y in rep.b.mapping)
        c_vals.extend(rep.c.mapping)
    return Bispan(GMap(A, u.source, d_vals, check=False),
                  GMap(A, B, b_vals, check=False),
                  GMap(B, u.target, c_vals, check=False))


def _binom_int(c: int, k: int) -> int:
    """Binomial coefficient as an integer-valued polynomial in c (c may be negative)."""
    r = 1
    for j in range(k):
        r = r * (c - j) // (j + 1)
    return r


def _simplex(k: int, deg: int):
    """All exponent vectors in N^k with coordinate sum <= deg."""
    if k == 0:
        yield ()
        return
    for head in range(deg + 1):
        for tail in _simplex(k - 1, deg - head):
            yield (head,) + tail


def _compose_class(ct: CanonicalBispan, s: VirtualBispan) -> VirtualBispan:
    rep_t = ct.representative()
    X, Z = s.source, ct.target
    classes = [cb for cb, _ in s.items()]
    coeffs = [s.terms[cb] for cb in classes]
    fibers = rep_t.b.fibers()
    # norm leg bijective: the composite is additive in s
    if all(len(f) == 1 for f in fibers):
        out = zero_virtual(X, Z)
        for cb, coeff in s.items():
            comp = canonicalize(compose_representatives(rep_t, cb.representative()))
            out = add(out, scale(comp, coeff))
        return out
    if s.is_effective():
        return canonicalize(compose_representatives(rep_t, amalgamate(s)))
    # polynomial extension by Newton extrapolation over the class multiplicities
    deg = max((len(f) for f in fibers), default=0)
    k = len(classes)
    cache = {}

    def honest(beta):
        if beta not in cache:
            pieces = VirtualBispan(X, rep_t.X,
                                   {cb: n for cb, n in zip(classes, beta) if n})
            cache[beta] = canonicalize(
                compose_representatives(rep_t, amalgamate(pieces)))
        return cache[beta]

    out = zero_virtual(X, Z)
    for alpha in _simplex(k, deg):
        diff = zero_virtual(X, Z)
        for beta in _betas_below(alpha):
            sign = (-1) ** (sum(alpha) - sum(beta))
            w = sign
            for ai, bi in zip(alpha, beta):
                w *= _binom_int(ai, bi)
            diff = add(diff, scale(honest(beta), w))
        weight = 1
        for ci, ai in zip(coeffs, alpha):
            weight *= _binom_int(ci, ai)
        out = add(out, scale(diff, weight))
    return out


def _betas_below(alpha):
    if not alpha:
        yield ()
        return
    for head in range(alpha[0] + 1):
        for tail in _betas_below(alpha[1:]):
            yield (head,) + tail


def compose(t: VirtualBispan, s: VirtualBispan) -> VirtualBispan:
    """Categorical composition; additive in t, polynomial in s."""
    if t.source != s.target:
        raise ObjectMismatchError("middle objects do not agree")
    out = zero_virtual(s.source, t.target)
    for ct, coeff in t.items():
        out = add(out, scale(_compose_class(ct, s), coeff))
    return out


def post_compose_target(u: VirtualBispan, pi: GMap) -> VirtualBispan:
    """Transfer along pi: relabel the rightmost leg (equals gen_T(pi) o u)."""
    if pi.source != u.target:
        raise ObjectMismatchError("transfer map does not match target")
    out = zero_virtual(u.source, pi.target)
    for cb, coeff in u.items():
        rep = cb.representative()
        moved = Bispan(rep.d, rep.b, pi.compose(rep.c))
        out = add(out, scale(canonicalize(moved), coeff))
    return out


# -- evaluation into G-rings -------------------------------------------------


def evaluate(u: VirtualBispan, ring, phi):
    """Evaluate in a G-ring: sum over the right fiber of products over the
    norm fiber of the labels, extended linearly over coefficients.

    phi is a sequence indexed by the source points; it must be equivariant
    for the ring's action.  Returns a tuple indexed by target points.
    """
    X, Y = u.source, u.target
    phi = [ring.coerce(x) for x in phi]
    if len(phi) != X.size:
        raise EquivarianceError("assignment must cover every source point")
    G = X.group
    for g in G.elements():
        for x in range(X.size):
            if not ring.eq(phi[X.act[g][x]], ring.act(g, phi[x])):
                raise EquivarianceError("assignment is not equivariant")
    vals = [ring.zero() for _ in range(Y.size)]
    for cb, coeff in u.items():
        rep = cb.representative()
        fib_b = rep.b.fibers()
        fib_c = rep.c.fibers()
        cf = ring.coerce_int(coeff)
        for y in range(Y.size):
            acc = ring.zero()
            for bpt in fib_c[y]:
                prod = ring.one()
                for a in fib_b[bpt]:
                    prod = ring.mul(prod, phi[rep.d.mapping[a]])
                acc = ring.add(acc, prod)
            vals[y] = ring.add(vals[y], ring.mul(cf, acc))
    return tuple(vals)


# -- JSON --------------------------------------------------------------------


def bispan_to_json(bi: Bispan) -> dict:
    from .gsets import canonical_form, gset_to_json
    objs = {}
    maps = {}
    renum = {}
    for name, obj in (("X", bi.X), ("A", bi.A), ("B", bi.B), ("Y", bi.Y)):
        canon, pmap = canonical_form(obj)
        objs[name] = gset_to_json(canon)
        renum[name] = pmap
    for name, leg, src, tgt in (("d", bi.d, "A", "X"), ("b", bi.b, "A", "B"),
                                ("c", bi.c, "B", "Y")):
        inv_src = [None] * len(renum[src])
        for old, new in enumerate(renum[src]):
            inv_src[new] = old
        maps[name] = [renum[tgt][leg.mapping[inv_src[i]]]
                      for i in range(len(inv_src))]
    return {"X": objs["X"], "A": objs["A"], "B": objs["B"], "Y": objs["Y"],
            "d": maps["d"], "b": maps["b"], "c": maps["c"]}


def bispan_from_json(G, data: dict) -> Bispan:
    from .gsets import gset_from_json
    X = gset_from_json(G, data["X"])
    A = gset_from_json(G, data["A"])
    B = gset_from_json(G, data["B"])
    Y = gset_from_json(G, data["Y"])
    return Bispan(GMap(A, X, data["d"]), GMap(A, B, data["b"]),
                  GMap(B, Y, data["c"]))


def virtual_to_json(u: VirtualBispan) -> dict:
    from .gsets import canonical_form, gset_to_json
    src_c, _ = canonical_form(u.source)
    tgt_c, _ = canonical_form(u.target)
    return {
        "source": gset_to_json(src_c),
        "target": gset_to_json(tgt_c),
        "terms": [{"bispan": bispan_to_json(cb.representative()), "coeff": coeff}
                  for cb, coeff in u.items()],
    }


def virtual_from_json(G, data: dict) -> VirtualBispan:
    from .gsets import gset_from_json
    X = gset_from_json(G, data["source"])
    Y = gset_from_json(G, data["target"])
    out = zero_virtual(X, Y)
    for term in data["terms"]:
        bi = bispan_from_json(G, term["bispan"])
        if bi.X != X or bi.Y != Y:
            raise ObjectMismatchError("term does not match the declared objects")
        out = add(out, scale(canonicalize(bi), term["coeff"]))
    return out
