"""Exact arithmetic substrate: rationals, p-adic valuations, finite fields,
and etale algebras K[t]/(f) with f squarefree.

All field-like structures expose a small uniform interface (zero/one/add/mul/
inv/...) with elements as plain data (ints, mpq, tuples), so the generic
linear algebra in linalg.py works over Q, F_{p^e}, Q[t]/(f) and F_p[t]/(f)
alike.  Inversion in an etale algebra either succeeds or raises
ZeroDivisorWitness carrying a nontrivial factor of the modulus, which callers
use to split the algebra and recurse.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

INF = float("inf")


def qq(a, b=1):
    return QQ(a, b)


def valuation(x, p: int):
    """p-adic valuation of a rational (or integer); v(0) = +inf."""
    if x == 0:
        return INF
    x = QQ(x)
    num, den = int(x.numerator), int(x.denominator)
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# Sorenson & Webster: these bases are a deterministic test below 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24 (fixed Miller-Rabin bases); above that the
    same bases plus 24 further fixed bases are used, which is conjecturally
    exact and certainly adequate for discriminant factor candidates."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < _MR_LIMIT:
        return _miller_rabin(n, _MR_BASES)
    return _miller_rabin(n, _MR_BASES + tuple(range(43, 160, 2)))


class PAdicContext:
    """A prime p with the normalised valuation on Q; the uniformiser is p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def valuation(self, x):
        return valuation(x, self.p)

    def __repr__(self):
        return f"PAdicContext({self.p})"


class ZeroDivisorWitness(Exception):
    """Raised when inverting a zero divisor in K[t]/(f); carries a nontrivial
    monic factor of the modulus so the caller can split the algebra."""

    def __init__(self, factor):
        self.factor = list(factor)
        super().__init__(f"zero divisor; modulus factor of degree {len(factor) - 1}")


# ---------------------------------------------------------------------------
# base fields


class FieldQ:
    """The rationals, elements are mpq."""

    def zero(self):
        return QQ(0)

    def one(self):
        return QQ(1)

    def from_int(self, n):
        return QQ(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / QQ(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def __repr__(self):
        return "Q"


class PrimeField:
    """F_p, elements are ints in [0, p)."""

    def __init__(self, p: int):
        self.p = p
        self.e = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"


# dense polynomials over a field object: lists of coefficients, low degree
# first, normalised so the last entry is nonzero (or the list is empty)


def poly_trim(F, f):
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero()
        b = g[i] if i < len(g) else F.zero()
        out.append(F.add(a, b))
    return poly_trim(F, out)


def poly_sub(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero()
        b = g[i] if i < len(g) else F.zero()
        out.append(F.sub(a, b))
    return poly_trim(F, out)


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_scale(F, f, c):
    return poly_trim(F, [F.mul(c, a) for a in f])


def poly_divmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [F.zero()] * max(0, len(f) - len(g) + 1)
    ginv = F.inv(g[-1])
    while len(f) >= len(g):
        c = F.mul(f[-1], ginv)
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] = F.sub(f[d + i], F.mul(c, g[i]))
        poly_trim(F, f)
    return poly_trim(F, q), f


def poly_gcd(F, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, poly_divmod(F, f, g)[1]
    if f:
        f = poly_scale(F, f, F.inv(f[-1]))
    return f


def poly_ext_gcd(F, f, g):
    """(d, u, v) with u f + v g = d, d monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [F.one()], []
    t0, t1 = [], [F.one()]
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if r0:
        c = F.inv(r0[-1])
        r0, s0, t0 = poly_scale(F, r0, c), poly_scale(F, s0, c), poly_scale(F, t0, c)
    return r0, s0, t0


def poly_derivative(F, f):
    return poly_trim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def poly_eval(F, f, x):
    acc = F.zero()
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_pow_mod(F, f, n, modulus):
    result = [F.one()]
    base = poly_divmod(F, f, modulus)[1]
    while n:
        if n & 1:
            result = poly_divmod(F, poly_mul(F, result, base), modulus)[1]
        base = poly_divmod(F, poly_mul(F, base, base), modulus)[1]
        n >>= 1
    return result


def poly_is_squarefree(F, f):
    return len(poly_gcd(F, f, poly_derivative(F, f))) <= 1


def _fp_poly_is_irreducible(p, f):
    """Rabin irreducibility over F_p; f a list of ints, monic."""
    F = PrimeField(p)
    e = len(f) - 1
    x = [0, 1]
    # x^(p^e) == x mod f
    t = x
    for _ in range(e):
        t = poly_pow_mod(F, t, p, f)
    if poly_trim(F, poly_sub(F, t, x)):
        return False
    for q in {d for d in range(2, e + 1) if e % d == 0 and is_prime(d)}:
        t = x
        for _ in range(e // q):
            t = poly_pow_mod(F, t, p, f)
        g = poly_gcd(F, poly_sub(F, t, x), f)
        if len(g) > 1:
            return False
    return True


def conway_style_polynomial(p: int, e: int):
    """First monic irreducible of degree e over F_p in lex order of
    coefficient vectors; deterministic, so field elements are reproducible."""
    if e == 1:
        return [0, 1]
    # iterate over constant..x^{e-1} coefficients lexicographically
    for idx in range(p**e):
        coeffs = []
        n = idx
        for _ in range(e):
            coeffs.append(n % p)
            n //= p
        f = coeffs + [1]
        if f[0] == 0:
            continue
        if _fp_poly_is_irreducible(p, f):
            return f
    raise RuntimeError("no irreducible found")  # unreachable


class FiniteField:
    """F_{p^e} as F_p[t]/(m) with a fixed deterministic irreducible m.

    Elements are tuples of e ints.  Degree capped (default 12) since larger
    extensions are only needed by enumeration oracles at desk scale.
    """

    MAX_DEGREE = 12

    def __init__(self, p: int, e: int = 1, modulus=None, max_degree=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        cap = max_degree if max_degree is not None else self.MAX_DEGREE
        if not 1 <= e <= cap:
            raise ValueError(f"extension degree {e} out of range 1..{cap}")
        self.p = p
        self.e = e
        self._Fp = PrimeField(p)
        self.modulus = list(modulus) if modulus else conway_style_polynomial(p, e)
        assert len(self.modulus) == e + 1

    def zero(self):
        return (0,) * self.e

    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.e - 1)

    def gen(self):
        if self.e == 1:
            return (0,)
        return tuple(1 if i == 1 else 0 for i in range(self.e))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        if self.e == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = poly_mul(self._Fp, poly_trim(self._Fp, list(a)), poly_trim(self._Fp, list(b)))
        rem = poly_divmod(self._Fp, prod, self.modulus)[1]
        rem = rem + [0] * (self.e - len(rem))
        return tuple(rem)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in finite field")
        if self.e == 1:
            return (pow(a[0], self.p - 2, self.p),)
        d, u, _ = poly_ext_gcd(self._Fp, poly_trim(self._Fp, list(a)), self.modulus)
        assert len(d) == 1
        u = poly_scale(self._Fp, u, self._Fp.inv(d[0]))
        u = u + [0] * (self.e - len(u))
        return tuple(u[: self.e])

    def is_zero(self, a):
        return all(x % self.p == 0 for x in a)

    def eq(self, a, b):
        return all((x - y) % self.p == 0 for x, y in zip(a, b))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pow(self, a, n):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def elements(self):
        p, e = self.p, self.e
        for idx in range(p**e):
            v = []
            n = idx
            for _ in range(e):
                v.append(n % p)
                n //= p
            yield tuple(v)

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


class EtaleAlgebra:
    """base[t]/(f) with f monic squarefree over the base field.

    Elements are tuples of base elements of length deg f.  inv raises
    ZeroDivisorWitness(g) with g a proper monic factor of f whenever the
    element is a zero divisor; split() then produces the two component
    algebras along with reduction maps.
    """

    def __init__(self, base, modulus):
        self.base = base
        f = poly_trim(base, [x for x in modulus])
        lead = f[-1]
        if not base.eq(lead, base.one()):
            f = poly_scale(base, f, base.inv(lead))
        if not poly_is_squarefree(base, f):
            raise ValueError("modulus must be squarefree")
        self.modulus = f
        self.deg = len(f) - 1
        if self.deg < 1:
            raise ValueError("modulus must have positive degree")

    # -- element constructors
    def zero(self):
        return (self.base.zero(),) * self.deg

    def one(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.deg - 1)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero(),) * (self.deg - 1)

    def from_base(self, c):
        return (c,) + (self.base.zero(),) * (self.deg - 1)

    def gen(self):
        if self.deg == 1:
            # t is a constant: t = -f[0]
            return (self.base.neg(self.modulus[0]),)
        return tuple(
            self.base.one() if i == 1 else self.base.zero() for i in range(self.deg)
        )

    def from_poly(self, coeffs):
        rem = poly_divmod(self.base, poly_trim(self.base, list(coeffs)), self.modulus)[1]
        rem = rem + [self.base.zero()] * (self.deg - len(rem))
        return tuple(rem)

    # -- arithmetic
    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        prod = poly_mul(B, list(a), list(b))
        rem = poly_divmod(B, prod, self.modulus)[1]
        rem = rem + [B.zero()] * (self.deg - len(rem))
        return tuple(rem)

    def inv(self, a):
        B = self.base
        fa = poly_trim(B, list(a))
        if not fa:
            raise ZeroDivisionError("inverse of 0 in etale algebra")
        d, u, _ = poly_ext_gcd(B, fa, self.modulus)
        if len(d) > 1:
            raise ZeroDivisorWitness(d)
        u = poly_scale(B, u, B.inv(d[0]))
        u = poly_divmod(B, u, self.modulus)[1]
        u = u + [B.zero()] * (self.deg - len(u))
        return tuple(u[: self.deg])

    def is_zero(self, a):
        B = self.base
        return all(B.is_zero(x) for x in a)

    def eq(self, a, b):
        B = self.base
        return all(B.eq(x, y) for x, y in zip(a, b))

    def is_constant(self, a):
        B = self.base
        return all(B.is_zero(x) for x in a[1:])

    def constant_value(self, a):
        if not self.is_constant(a):
            raise ValueError("element is not a constant of the algebra")
        return a[0]

    # -- splitting on a zero-divisor witness
    def split(self, factor):
        """Split along a monic proper factor g | f: returns the two component
        algebras and the two reduction maps."""
        B = self.base
        g = poly_trim(B, list(factor))
        h, r = poly_divmod(B, self.modulus, g)
        assert not r, "witness does not divide the modulus"
        A1, A2 = EtaleAlgebra(B, g), EtaleAlgebra(B, h)

        def red(A):
            def m(a):
                rem = poly_divmod(B, poly_trim(B, list(a)), A.modulus)[1]
                rem = rem + [B.zero()] * (A.deg - len(rem))
                return tuple(rem)

            return m

        return (A1, red(A1)), (A2, red(A2))

    def __repr__(self):
        return f"Etale({self.base}, deg {self.deg})"


# the spec's QuotientAlgebraElement lives over Q with deg <= 5
def rational_etale(modulus):
    return EtaleAlgebra(FieldQ(), [QQ(c) for c in modulus])


def algebra_invert(A: EtaleAlgebra, x):
    """Invert x in A, or surface the nontrivial gcd as a witness."""
    return A.inv(x)
