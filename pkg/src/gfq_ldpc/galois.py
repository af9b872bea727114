"""Arithmetic in GF(q) for prime q and q = 2**m.

Field elements are plain ``int`` values in ``[0, q)``. Binary extension
fields use the polynomial basis over GF(2): bit ``k`` of an element is the
coefficient of ``x**k``.
"""

from __future__ import annotations

MAX_ORDER = 1 << 16

# Primitive polynomials, one per degree; bit k is the coefficient of x**k.
DEFAULT_MODULI = {
    2: 0x7,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x89,  # x^7 + x^3 + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


class FieldError(ValueError):
    pass


class ZeroInverseError(ZeroDivisionError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def poly_mul(a: int, b: int, modulus: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials reduced by ``modulus``."""
    m = modulus.bit_length() - 1
    top = 1 << m
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return result


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree 1..m//2."""
    m = modulus.bit_length() - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _poly_mod(modulus, f) == 0:
                return False
    return True


class GaloisField:
    """The finite field GF(q); immutable once built.

    ``GaloisField(16)`` uses the default modulus x^4 + x + 1; pass
    ``modulus=`` to pin another irreducible polynomial. Prime fields ignore
    the modulus and use integer arithmetic mod q.
    """

    __slots__ = ("q", "characteristic", "degree", "modulus", "_exp", "_log", "_inv")

    def __init__(self, q: int, modulus: int | None = None):
        if not 2 <= q <= MAX_ORDER:
            raise FieldError(f"field order {q} outside [2, {MAX_ORDER}]")
        if _is_prime(q):
            characteristic, degree = q, 1
            modulus = 0
        elif q & (q - 1) == 0:
            characteristic, degree = 2, q.bit_length() - 1
            if modulus is None or modulus == 0:
                modulus = DEFAULT_MODULI[degree]
            if modulus.bit_length() - 1 != degree:
                raise FieldError(f"modulus {modulus:#x} does not have degree {degree}")
            if not is_irreducible(modulus):
                raise FieldError(f"modulus {modulus:#x} is reducible")
        else:
            raise FieldError(f"q={q} is neither prime nor a power of two")
        self.q = q
        self.characteristic = characteristic
        self.degree = degree
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []
        mul = self._slow_mul
        gen = None
        for g in range(2 if q > 2 else 1, q):
            if all(self._slow_pow(g, order // p) != 1 for p in factors):
                gen = g
                break
        if gen is None:
            gen = 1
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = mul(x, gen)
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log
        self._inv = [0] + [exp[(order - log[a]) % order] for a in range(1, q)]

    def _slow_mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.q
        return poly_mul(a, b, self.modulus)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GaloisField({self.q})"
        return f"GaloisField({self.q}, modulus={self.modulus:#x})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GaloisField)
            and self.q == other.q
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.q
        return a ^ b

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.q
        return a

    def sub(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a - b) % self.q
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError("zero has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a
