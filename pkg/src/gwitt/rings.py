"""Coefficient rings and G-rings for Witt coordinates and bispan evaluation.

A ring object supplies the operations; elements are plain values (ints,
Fractions, MultiPoly).  The G-action defaults to trivial and is only
nontrivial for polynomial rings whose variables are indexed by a G-set.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisibilityError
from .polys import MultiPoly


class Ring:
    name = "ring"
    torsion_free = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.coerce_int(1)

    def coerce_int(self, n: int):
        raise NotImplementedError

    def coerce(self, x):
        return self.coerce_int(x) if isinstance(x, int) else x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, k: int):
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def act(self, g: int, a):
        return a

    def divexact_int(self, a, n: int):
        raise DivisibilityError(f"{self.name} has no exact division test")

    def __repr__(self):
        return self.name


class IntRing(Ring):
    name = "Z"
    torsion_free = True

    def zero(self):
        return 0

    def coerce_int(self, n: int):
        return int(n)

    def divexact_int(self, a, n: int):
        q, r = divmod(a, n)
        if r:
            raise DivisibilityError(f"{a} not divisible by {n}")
        return q


class RationalRing(Ring):
    name = "Q"
    torsion_free = True

    def zero(self):
        return Fraction(0)

    def coerce_int(self, n: int):
        return Fraction(n)

    def coerce(self, x):
        return Fraction(x)

    def divexact_int(self, a, n: int):
        return Fraction(a) / n


class IntModRing(Ring):
    """Z/n with elements normalized to 0..n-1."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.name = f"Z/{n}"

    def zero(self):
        return 0

    def coerce_int(self, k: int):
        return k % self.n

    def coerce(self, x):
        return int(x) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n


class PolyRing(Ring):
    """Polynomial ring over Z or Q; variables may be indexed by a G-set.

    When a G-set is attached, the group acts by permuting the point-indexed
    variables, which makes this a G-ring.
    """

    torsion_free = True

    def __init__(self, gset=None, variables=None, rational: bool = False):
        self.gset = gset
        self.rational = rational
        if gset is not None:
            self.variables = tuple(range(gset.size))
            self.name = f"Z[{gset.group.name}-set:{gset.size}]"
        else:
            self.variables = tuple(variables) if variables is not None else None
            self.name = "Q[...]" if rational else "Z[...]"

    def zero(self):
        return MultiPoly.zero()

    def coerce_int(self, n: int):
        return MultiPoly.const(Fraction(n) if self.rational else n)

    def coerce(self, x):
        if isinstance(x, MultiPoly):
            return x
        return MultiPoly.const(Fraction(x) if self.rational else x)

    def variable(self, v):
        return MultiPoly.variable(v)

    def act(self, g: int, a: MultiPoly) -> MultiPoly:
        if self.gset is None:
            return a
        row = self.gset.act[g]
        return a.apply_variable_map(lambda v: row[v])

    def divexact_int(self, a: MultiPoly, n: int) -> MultiPoly:
        return a.divexact(n)


ZZ = IntRing()
QQ = RationalRing()


def ring_from_spec(spec: str) -> Ring:
    """Parse "Z", "Q" or "Zmod:<n>" (used by the CLI)."""
    if spec == "Z":
        return ZZ
    if spec == "Q":
        return QQ
    if spec.startswith("Zmod:"):
        return IntModRing(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown ring spec {spec!r}")
