"""Exact scalar domains: the rationals and prime fields.

Every computation in this package is exact.  Rational scalars are gmpy2
``mpq`` values (kept in lowest terms with positive denominator by gmpy2
itself); prime-field scalars are instances of a per-prime residue class
type so they can flow through generic linear algebra via the ordinary
arithmetic operators.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def _residue_class(p: int):
    """Build the residue type Z/pZ with operator arithmetic."""

    class ModP:
        __slots__ = ("v",)
        modulus = p

        def __init__(self, v):
            self.v = v % p

        def __add__(self, other):
            return ModP(self.v + other.v)

        def __sub__(self, other):
            return ModP(self.v - other.v)

        def __mul__(self, other):
            return ModP(self.v * other.v)

        def __truediv__(self, other):
            if other.v == 0:
                raise ZeroDivisionError("division by zero in F_%d" % p)
            return ModP(self.v * pow(other.v, p - 2, p))

        def __neg__(self):
            return ModP(-self.v)

        def __eq__(self, other):
            return isinstance(other, ModP) and self.v == other.v

        def __hash__(self):
            return hash((p, self.v))

        def __bool__(self):
            return self.v != 0

        def __repr__(self):
            return "%d (mod %d)" % (self.v, p)

    ModP.__name__ = "Mod%d" % p
    return ModP


class ScalarField:
    """A field of exact scalars: Q, or F_p for a prime p."""

    def __init__(self, kind: str, p: int | None = None):
        if kind == "Q":
            self.kind = "Q"
            self.p = None
            self.char = 0
            self.zero = mpq(0)
            self.one = mpq(1)
        elif kind == "Fp":
            if p is None or not _is_prime(p):
                raise FieldError("modulus must be prime, got %r" % (p,))
            self.kind = "Fp"
            self.p = p
            self.char = p
            self._cls = _residue_class(p)
            self.zero = self._cls(0)
            self.one = self._cls(1)
        else:
            raise FieldError("unknown field kind %r" % (kind,))

    def from_int(self, n: int):
        if self.kind == "Q":
            return mpq(n)
        return self._cls(n)

    def from_fraction(self, num: int, den: int):
        if self.kind == "Q":
            return mpq(num, den)
        return self._cls(num) / self._cls(den)

    def parse(self, s: str):
        """Parse the serialized form: "p/q" over Q, a residue over F_p."""
        s = s.strip()
        if self.kind == "Q":
            if "/" in s:
                num, den = s.split("/")
                return mpq(int(num), int(den))
            return mpq(int(s))
        return self._cls(int(s))

    def format(self, x) -> str:
        if self.kind == "Q":
            if x.denominator == 1:
                return str(x.numerator)
            return "%s/%s" % (x.numerator, x.denominator)
        return str(x.v)

    def sample(self, rng, span: int = 3):
        """Deterministic small scalar for randomized tests."""
        if self.kind == "Q":
            return mpq(rng.randrange(-span, span + 1))
        return self._cls(rng.randrange(self.p))

    def __eq__(self, other):
        return (
            isinstance(other, ScalarField)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == "Q" else "F_%d" % self.p

    def to_json(self):
        if self.kind == "Q":
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.p}

    @staticmethod
    def from_json(obj) -> "ScalarField":
        if obj.get("kind") == "Q":
            return QQ
        if obj.get("kind") == "Fp":
            return GF(obj["p"])
        raise FieldError("bad field descriptor %r" % (obj,))


QQ = ScalarField("Q")


@lru_cache(maxsize=None)
def GF(p: int) -> ScalarField:
    return ScalarField("Fp", p)
