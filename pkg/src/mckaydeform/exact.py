"""Exact scalar arithmetic: rationals, cyclotomic fields, one radical step.

Every symbolic computation in this package runs over one of three scalar
kinds:

* plain rationals (gmpy2 ``mpq``, falling back to ``fractions.Fraction``),
* ``Cyclo`` -- elements of Q(zeta_n) on the power basis 1, zeta, ...,
  zeta^(phi(n)-1) reduced modulo the n-th cyclotomic polynomial,
* ``Radical`` -- elements of Q(zeta_n)[u]/(u^k - c) for a single radical u.

Values are immutable; mixed arithmetic coerces upward (rational -> Cyclo ->
Radical) and across conductors via the lcm embedding.  A float shadow
``embed_complex`` maps any scalar to a complex number with
zeta_n = exp(2*pi*i/n) and the principal k-th root for radicals.
"""

from __future__ import annotations

import cmath
from math import gcd

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

RAT_TYPES = (int, type(QQ(1)))


class DivisionByZero(ZeroDivisionError):
    pass


class IncompatibleRadicals(ValueError):
    """Two radical scalars with distinct defining relations u^k = c."""


def rat(p, q=1):
    """Exact rational from ints or a 'p/q' string."""
    if isinstance(p, str):
        return QQ(p)
    return QQ(p, q)


def is_rat(x) -> bool:
    return isinstance(x, RAT_TYPES)


def _euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divide_exact(num, den):
    """Quotient of integer polynomials (lists, low degree first), exact."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact division in cyclotomic setup")
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact division in cyclotomic setup")
    return out


_CYCLO_CACHE: dict[int, tuple] = {}


def _cyclo_data(n: int):
    """(phi, reduction rows) for Q(zeta_n); rows express zeta^k, k >= phi."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # Phi_n by exact division of x^n - 1 by the product of lower Phi_d.
    phi_d: dict[int, list] = {}
    for d in _divisors(n):
        num = [0] * (d + 1)
        num[0], num[d] = -1, 1
        for e in _divisors(d):
            if e < d:
                num = _poly_divide_exact(num, phi_d[e])
        phi_d[d] = num
    cyc = phi_d[n]
    phi = len(cyc) - 1
    assert phi == _euler_phi(n)
    # zeta^k on the power basis for phi <= k <= max needed (2*phi - 2 covers
    # products; n covers conductor embeddings).
    rows = []
    top = [QQ(-c) for c in cyc[:phi]]
    rows.append(top)
    for _ in range(phi, max(2 * phi - 2, n)):
        prev = rows[-1]
        nxt = [QQ(0)] + prev[: phi - 1]
        lead = prev[phi - 1]
        if lead:
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        rows.append(nxt)
    _CYCLO_CACHE[n] = (phi, rows)
    return _CYCLO_CACHE[n]


class Cyclo:
    """Element of Q(zeta_n), coordinates on the power basis mod Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        phi, _ = _cyclo_data(n)
        coeffs = tuple(QQ(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coordinates for conductor {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Cyclo is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_rat(x, n: int = 1) -> "Cyclo":
        phi, _ = _cyclo_data(n)
        return Cyclo(n, (QQ(x),) + (QQ(0),) * (phi - 1))

    @staticmethod
    def zeta(n: int, power: int = 1) -> "Cyclo":
        phi, rows = _cyclo_data(n)
        power %= n
        if power < phi:
            coeffs = [QQ(0)] * phi
            coeffs[power] = QQ(1)
            return Cyclo(n, coeffs)
        return Cyclo(n, rows[power - phi])

    # -- conductor handling -------------------------------------------
    def lift(self, m: int) -> "Cyclo":
        """Embed into Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("conductor must be a multiple")
        step = m // self.n
        out = Cyclo.from_rat(0, m)
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclo.zeta(m, j * step) * c
        return out

    def reduce_rat(self):
        """Return a plain rational if the element lies in Q, else self."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return self

    @staticmethod
    def _pair(a, b):
        if is_rat(b):
            b = Cyclo.from_rat(b, a.n)
        elif isinstance(b, Cyclo):
            if a.n != b.n:
                m = a.n * b.n // gcd(a.n, b.n)
                return a.lift(m), b.lift(m)
        else:
            return NotImplemented
        return a, b

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        pair = Cyclo._pair(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclo(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else -QQ(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rat(other):
            return Cyclo(self.n, tuple(c * QQ(other) for c in self.coeffs))
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = Cyclo._pair(self, other)
        phi, rows = _cyclo_data(a.n)
        conv = [QQ(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = rows[k - phi]
                out = [o + c * r for o, r in zip(out, row)]
        return Cyclo(a.n, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if not self:
            raise DivisionByZero("inverse of zero")
        # Extended Euclid in Q[x] against Phi_n, rebuilt from x^phi = rows[0].
        phi, rows = _cyclo_data(self.n)
        modulus = [-c for c in rows[0]] + [QQ(1)]
        a = list(self.coeffs)
        r0, r1 = modulus, _trim(a)
        s0, s1 = [QQ(0)], [QQ(1)]
        while _deg(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if _deg(r1) < 0:
            raise DivisionByZero("element not invertible")
        inv_lead = 1 / r1[0]
        inv = [c * inv_lead for c in s1]
        inv = inv[:phi] + [QQ(0)] * max(0, phi - len(inv))
        return Cyclo(self.n, inv[:phi])

    def __truediv__(self, other):
        if is_rat(other):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (QQ(1) / QQ(other))
        if isinstance(other, Cyclo):
            a, b = Cyclo._pair(self, other)
            return a * b.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.from_rat(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates ------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if is_rat(other):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, Cyclo):
            a, b = Cyclo._pair(self, other)
            return a.coeffs == b.coeffs
        if isinstance(other, Radical):
            return other == self
        return NotImplemented

    def __hash__(self):
        r = self.reduce_rat()
        if is_rat(r):
            return hash(r)
        return hash((self.n, self.coeffs))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.n}^{j}")
        return " + ".join(terms) if terms else "0"


def _deg(p):
    d = len(p) - 1
    while d >= 0 and not p[d]:
        d -= 1
    return d


def _trim(p):
    d = _deg(p)
    return [QQ(c) for c in p[: d + 1]] if d >= 0 else [QQ(0)]


def _poly_sub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [QQ(0)] * (m - len(a))
    b = list(b) + [QQ(0)] * (m - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    out = [QQ(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [QQ(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while _deg(r) >= _deg(b) >= 0 and any(r):
        shift = _deg(r) - _deg(b)
        c = r[_deg(r)] / b[_deg(b)]
        q[shift] += c
        for j in range(len(b)):
            r[shift + j] -= c * b[j]
    return _trim(q), _trim(r)


# -- named constants ------------------------------------------------------

def zeta(n: int, power: int = 1) -> Cyclo:
    return Cyclo.zeta(n, power)


def imag_unit() -> Cyclo:
    return zeta(4)


def sqrt2() -> Cyclo:
    # zeta_8 + zeta_8^-1 = 2 cos(pi/4)
    return zeta(8) + zeta(8, 7)


def sqrt3() -> Cyclo:
    # zeta_12 + zeta_12^-1 = 2 cos(pi/6)
    return zeta(12) + zeta(12, 11)


def sqrt6() -> Cyclo:
    return (sqrt2() * sqrt3()).lift(24)


def omega() -> Cyclo:
    return zeta(3)


def sqrt_rational(x):
    """sqrt(x) inside a cyclotomic field when the squarefree part allows it.

    Returns a Cyclo (or rational) with value sqrt(x) for x = p/q whose
    squarefree part divides 6 (handles the signs via i); None otherwise.
    """
    x = QQ(x)
    if x == 0:
        return QQ(0)
    sign = 1
    if x < 0:
        sign = -1
        x = -x
    p, q = x.numerator, x.denominator
    m = p * q  # sqrt(p/q) = sqrt(p*q)/q
    s, m0 = 1, m
    d = 2
    while d * d <= m0:
        while m0 % (d * d) == 0:
            m0 //= d * d
            s *= d
        d += 1
    if m0 not in (1, 2, 3, 6):
        return None
    root = {1: QQ(1), 2: sqrt2(), 3: sqrt3(), 6: sqrt6()}[m0]
    value = root * QQ(s, q)
    if sign < 0:
        value = value * imag_unit()
    return value.reduce_rat() if isinstance(value, Cyclo) else value


class Radical:
    """Element of F[u]/(u^k - c) over a cyclotomic (or rational) base F."""

    __slots__ = ("k", "c", "coeffs")

    def __init__(self, k: int, c, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != k:
            raise ValueError("need k coordinates")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Radical is immutable")

    @staticmethod
    def generator(k: int, c) -> "Radical":
        """The radical u itself, with u^k = c."""
        coeffs = [QQ(0)] * k
        coeffs[1 % k] = QQ(1)
        return Radical(k, c, coeffs)

    def _lift(self, other):
        if isinstance(other, Radical):
            if other.k != self.k or not _sc_eq(other.c, self.c):
                raise IncompatibleRadicals(
                    f"u^{self.k}={self.c} vs u^{other.k}={other.c}")
            return other
        if is_rat(other) or isinstance(other, Cyclo):
            coeffs = [other] + [QQ(0)] * (self.k - 1)
            return Radical(self.k, self.c, coeffs)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Radical(self.k, self.c,
                       tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Radical(self.k, self.c, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = self.k
        conv = [QQ(0)] * (2 * k - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        conv[i + j] = conv[i + j] + x * y
        out = list(conv[:k])
        for t in range(k, 2 * k - 1):
            if conv[t]:
                out[t - k] = out[t - k] + conv[t] * self.c
        return Radical(k, self.c, out)

    __rmul__ = __mul__

    def inverse(self) -> "Radical":
        if not self:
            raise DivisionByZero("inverse of zero")
        # Extended Euclid in F[u] against u^k - c.
        k = self.k
        modulus = [-self.c] + [QQ(0)] * (k - 1) + [QQ(1)]
        r0, r1 = _trim_sc(modulus), _trim_sc(list(self.coeffs))
        s0, s1 = [QQ(0)], [QQ(1)]
        while _deg_sc(r1) > 0:
            q, r = _divmod_sc(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub_sc(s0, _mul_sc(q, s1))
        if _deg_sc(r1) < 0:
            raise DivisionByZero("element not invertible")
        inv_lead = _sc_inv(r1[0])
        inv = [x * inv_lead for x in s1]
        inv = list(inv[:k]) + [QQ(0)] * max(0, k - len(inv))
        return Radical(k, self.c, inv[:k])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self._lift(QQ(1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(bool(x) for x in self.coeffs)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except IncompatibleRadicals:
            return False
        if o is None:
            return NotImplemented
        return all(_sc_eq(x, y) for x, y in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        if not any(bool(x) for x in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.k, tuple(hash(x) for x in self.coeffs)))

    def reduce_base(self):
        """Return the degree-0 part as a base scalar when u does not occur."""
        if not any(bool(x) for x in self.coeffs[1:]):
            c = self.coeffs[0]
            return c.reduce_rat() if isinstance(c, Cyclo) else c
        return self

    def __repr__(self):
        return f"Radical(u^{self.k}={self.c}; {list(self.coeffs)})"


def _sc_eq(a, b):
    return a == b


def _sc_inv(a):
    if isinstance(a, Cyclo):
        return a.inverse()
    return QQ(1) / a


def _deg_sc(p):
    d = len(p) - 1
    while d >= 0 and not p[d]:
        d -= 1
    return d


def _trim_sc(p):
    d = _deg_sc(p)
    return list(p[: d + 1]) if d >= 0 else [QQ(0)]


def _sub_sc(a, b):
    m = max(len(a), len(b))
    a = list(a) + [QQ(0)] * (m - len(a))
    b = list(b) + [QQ(0)] * (m - len(b))
    return _trim_sc([x - y for x, y in zip(a, b)])


def _mul_sc(a, b):
    out = [QQ(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _trim_sc(out)


def _divmod_sc(a, b):
    a = _trim_sc(a)
    b = _trim_sc(b)
    q = [QQ(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while _deg_sc(r) >= _deg_sc(b) >= 0 and any(bool(x) for x in r):
        da, db = _deg_sc(r), _deg_sc(b)
        if da < db:
            break
        c = r[da] * _sc_inv(b[db]) if isinstance(b[db], Cyclo) else r[da] / b[db]
        q[da - db] = q[da - db] + c
        for j in range(db + 1):
            r[da - db + j] = r[da - db + j] - c * b[j]
    return _trim_sc(q), _trim_sc(r)


# -- numeric shadow --------------------------------------------------------

def embed_complex(x) -> complex:
    """Complex value of any exact scalar, zeta_n = exp(2*pi*i/n)."""
    if is_rat(x):
        return complex(QQ(x))
    if isinstance(x, Cyclo):
        z = cmath.exp(2j * cmath.pi / x.n)
        value = 0j
        for c in reversed(x.coeffs):
            value = value * z + complex(c)
        return value
    if isinstance(x, Radical):
        base = embed_complex(x.c)
        root = base ** (1.0 / x.k)
        value = 0j
        for c in reversed(x.coeffs):
            value = value * root + embed_complex(c)
        return value
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_to_json(x):
    """Report form: rationals as 'p/q' strings, Cyclo as conductor+coords,
    complex floats as [re, im] pairs."""
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float):
        return [x, 0.0]
    if is_rat(x):
        return str(QQ(x))
    if isinstance(x, Cyclo):
        r = x.reduce_rat()
        if is_rat(r):
            return str(r)
        return {"conductor": x.n, "coords": [str(c) for c in x.coeffs]}
    if isinstance(x, Radical):
        return {"radical_power": x.k, "radicand": scalar_to_json(x.c),
                "coords": [scalar_to_json(c) for c in x.coeffs]}
    raise TypeError(f"not an exact scalar: {x!r}")
