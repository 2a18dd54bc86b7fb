"""Coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python objects (``int`` residues for F_p,
``fractions.Fraction`` for Q) so that polynomial code can work on them with
ordinary arithmetic; the field object only supplies normalization and
inversion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Either Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p < 0:
            raise FieldError("characteristic must be 0 or a prime")
        self.p = p

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x):
        """Coerce an int, Fraction or residue into the field."""
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has no image in GF({self.p})")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in field")
        if self.p:
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self, a):
        """Integer for F_p, ``[num, den]`` for Q."""
        if self.p:
            return int(a)
        return [a.numerator, a.denominator]

    def from_json(self, v):
        if isinstance(v, (list, tuple)):
            return self(Fraction(int(v[0]), int(v[1])))
        if isinstance(v, str):
            return self(Fraction(v))
        return self(v)

    def elements(self):
        if not self.p:
            raise FieldError("Q is infinite")
        return range(self.p)

    def multiplicative_order(self, a) -> int:
        if not self.p:
            raise FieldError("orders only defined over finite fields")
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        k, x = 1, a
        while x != 1:
            x = x * a % self.p
            k += 1
        return k

    def primitive_root(self) -> int:
        return _primitive_root(self.p)


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    n = p - 1
    factors = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    raise FieldError(f"no primitive root mod {p}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
