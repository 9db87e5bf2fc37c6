"""Sparse multivariate polynomials with exact integer or rational coefficients.

A monomial is a sorted tuple of (variable, exponent) pairs with positive
exponents.  Variable keys may be any hashable, mutually comparable values;
this package uses plain ints for variables indexed by G-set points and
("a", i) / ("b", i) pairs for the universal Witt polynomial variables.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisibilityError

Monomial = tuple  # tuple[(var, exp), ...], sorted by var, exps > 0

ONE_MONO: Monomial = ()


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_pow(m: Monomial, k: int) -> Monomial:
    if k == 0 or not m:
        return ()
    return tuple((v, e * k) for v, e in m)


class MultiPoly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_key", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if coeff:
                    clean[mono] = clean.get(mono, 0) + coeff
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._key = tuple(sorted(clean.items()))
        self._hash = hash(self._key)

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({ONE_MONO: c} if c else None)

    @classmethod
    def variable(cls, v) -> "MultiPoly":
        return cls({((v, 1),): 1})

    @classmethod
    def monomial(cls, pairs, coeff=1) -> "MultiPoly":
        mono = tuple(sorted((v, e) for v, e in pairs if e))
        return cls({mono: coeff})

    @property
    def terms(self):
        return self._terms

    def key(self):
        """Canonical hashable form (sorted term tuple)."""
        return self._key

    def items(self):
        return self._key

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self):
        if not self._terms:
            return 0
        if self.is_constant():
            return self._terms[ONE_MONO]
        raise ValueError("polynomial is not constant")

    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self._terms)

    def variables(self):
        vs = set()
        for mono in self._terms:
            for v, _ in mono:
                vs.add(v)
        return vs

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._key == other._key
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = terms.get(mono, 0) + coeff
            if new:
                terms[mono] = new
            else:
                del terms[mono]
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly({m: c * other for m, c in self._terms.items()})
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = mono_mul(m1, m2)
                new = out.get(mono, 0) + c1 * c2
                if new:
                    out[mono] = new
                elif mono in out:
                    del out[mono]
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        if len(self._terms) == 1:
            (mono, coeff), = self._terms.items()
            return MultiPoly({mono_pow(mono, k): coeff ** k})
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def divexact(self, n: int) -> "MultiPoly":
        """Divide every coefficient by n, requiring exactness over the integers."""
        if n == 0:
            raise ZeroDivisionError
        out = {}
        for mono, coeff in self._terms.items():
            if isinstance(coeff, Fraction):
                out[mono] = coeff / n
            else:
                q, r = divmod(coeff, n)
                if r:
                    raise DivisibilityError(f"coefficient {coeff} not divisible by {n}")
                out[mono] = q
        return MultiPoly(out)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly({m: fn(c) for m, c in self._terms.items()})

    def apply_variable_map(self, fn) -> "MultiPoly":
        """Relabel variables through fn; fn must be injective on the support."""
        out = {}
        for mono, coeff in self._terms.items():
            new = tuple(sorted((fn(v), e) for v, e in mono))
            if new in out:
                raise ValueError("variable map is not injective on this polynomial")
            out[new] = coeff
        return MultiPoly(out)

    def substitute(self, mapping) -> "MultiPoly":
        """Substitute polynomials for variables; unmapped variables stay put."""
        result = MultiPoly()
        for mono, coeff in self._key:
            term = MultiPoly.const(coeff)
            for v, e in mono:
                repl = mapping.get(v)
                if repl is None:
                    repl = MultiPoly.variable(v)
                term = term * repl ** e
            result = result + term
        return result

    def evaluate(self, ring, values) -> object:
        """Evaluate in a coefficient ring; values maps each variable to an element."""
        total = ring.zero()
        for mono, coeff in self._key:
            term = ring.coerce_int(coeff) if not isinstance(coeff, Fraction) else ring.coerce(coeff)
            for v, e in mono:
                term = ring.mul(term, ring.pow(values[v], e))
            total = ring.add(total, term)
        return total

    def format(self, var_fmt=None) -> str:
        if not self._terms:
            return "0"
        var_fmt = var_fmt or (lambda v: f"x{v}" if isinstance(v, int) else str(v))
        parts = []
        for mono, coeff in self._key:
            factors = [f"{var_fmt(v)}^{e}" if e > 1 else var_fmt(v) for v, e in mono]
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def poly_to_json(p: MultiPoly, var_fmt=None) -> dict:
    """Sparse JSON form: monomial string -> coefficient string."""
    var_fmt = var_fmt or (lambda v: f"x{v}" if isinstance(v, int) else "".join(map(str, v)))
    out = {}
    for mono, coeff in p.items():
        key = "*".join(f"{var_fmt(v)}^{e}" if e > 1 else var_fmt(v) for v, e in mono) or "1"
        out[key] = str(coeff)
    return out
