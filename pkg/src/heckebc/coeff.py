"""Exact scalars: cyclotomic numbers, Laurent polynomials, sqrt(p) extensions.

Everything in this package is exact rational arithmetic; no floats.
Four rings live here:

* :class:`Cyc`, the cyclotomic field Q(zeta_m) in the power basis
  ``1, zeta, ..., zeta^{d-1}`` where d = deg Phi_m.
* :class:`LaurentV`, Laurent polynomials in a formal parameter v whose
  square stands for a prime power q.
* :class:`MultiLaurent`, Laurent polynomials in n commuting variables,
  the group algebra of the lattice Z^n written multiplicatively.
* :class:`SqrtScalar`, elements a + b*sqrt(p) with a, b in Q(zeta_m).
  The pair (a, b) is a faithful representation whenever gcd(p, m) = 1:
  Q(zeta_m)/Q is unramified at p while Q(sqrt p)/Q ramifies there, so
  sqrt(p) cannot lie in Q(zeta_m).

Coefficients are duck typed: the polynomial rings take int, Fraction or
Cyc coefficients, and mixed arithmetic promotes as needed.  Cyc values
of different level are combined through the smallest common cyclotomic
field, so ``Cyc.root(4, 1) == Cyc.root(8, 2)`` holds.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Cyc",
    "LaurentV",
    "MultiLaurent",
    "SqrtScalar",
    "cyclotomic",
    "msym",
]

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "Cyc"]


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _polydiv_exact(num: list[int], den: Sequence[int]) -> list[int]:
    # exact division of integer polynomials, low degree first; den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dd]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("division was not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, low degree first.

    >>> cyclotomic(1)
    (-1, 1)
    >>> cyclotomic(8)
    (1, 0, 0, 0, 1)
    >>> cyclotomic(12)
    (1, 0, -1, 0, 1)
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _polydiv_exact(num, cyclotomic(d))
    return tuple(num)


def _reduce_mod_phi(m: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic(m)
    d = len(phi) - 1
    c = list(coeffs) + [Fraction(0)] * max(0, d - len(coeffs))
    for i in range(len(c) - 1, d - 1, -1):
        top = c[i]
        if top:
            c[i] = Fraction(0)
            for j in range(d):
                c[i - d + j] -= top * phi[j]
    return tuple(c[:d])


# polynomial helpers over Fraction, used by Cyc.inverse

def _pdeg(p: list[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = _pdeg(b)
    lead = b[db]
    q = [Fraction(0)] * max(1, len(a))
    for i in range(_pdeg(a) - db, -1, -1):
        c = a[i + db] / lead
        if c:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a


def _pmulsub(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, _pdeg(q) + _pdeg(b) + 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] -= qi * bj
    return out


class Cyc:
    """An element of Q(zeta_m), coordinates in the power basis.

    >>> z = Cyc.root(4, 1)
    >>> z * z == -1
    True
    >>> (z + 1) * (z - 1) == -2
    True
    """

    __slots__ = ("m", "c")
    __hash__ = None  # equality crosses levels; do not use as dict keys

    def __init__(self, m: int, coeffs: Sequence[Rational] = ()):
        self.m = m
        self.c = _reduce_mod_phi(m, [Fraction(x) for x in coeffs])

    @classmethod
    def zero(cls, m: int = 1) -> "Cyc":
        return cls(m, ())

    @classmethod
    def one(cls, m: int = 1) -> "Cyc":
        return cls(m, (1,))

    @classmethod
    def from_rational(cls, m: int, q: Rational) -> "Cyc":
        return cls(m, (q,))

    @classmethod
    def root(cls, m: int, k: int = 1) -> "Cyc":
        """zeta_m^k."""
        k %= m
        return cls(m, (0,) * k + (1,))

    def lift(self, level: int) -> "Cyc":
        """Embed into Q(zeta_level); requires m | level, zeta_m -> zeta^{level/m}."""
        if level == self.m:
            return self
        if level % self.m:
            raise ValueError(f"no embedding of level {self.m} into level {level}")
        t = level // self.m
        out = [Fraction(0)] * ((len(self.c) - 1) * t + 1)
        for i, ci in enumerate(self.c):
            out[i * t] = ci
        return Cyc(level, out)

    def _pair(self, other: Scalar) -> tuple["Cyc", "Cyc"]:
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.m, other)
        if not isinstance(other, Cyc):
            raise TypeError
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, Cyc)):
            return NotImplemented
        a, b = self._pair(other)
        return Cyc(a.m, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.m, [-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, Cyc)):
            return NotImplemented
        return self + (-other if isinstance(other, Cyc) else Cyc.from_rational(self.m, -Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, Cyc)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyc(self.m, [x * q for x in self.c])
        a, b = self._pair(other)
        conv = [Fraction(0)] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        conv[i + j] += x * y
        return Cyc(a.m, conv)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.one(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.m, other)
        if isinstance(other, Cyc):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "Cyc":
        """Multiplicative inverse, by the extended Euclid algorithm mod Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(x) for x in cyclotomic(self.m)]
        r0, r1 = list(self.c), phi
        u0, u1 = [Fraction(1)], [Fraction(0)]
        while _pdeg(r1) >= 0:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            u0, u1 = u1, _pmulsub(u0, q, u1)
        g = r0[_pdeg(r0)]  # gcd is a nonzero constant: Phi_m is irreducible
        return Cyc(self.m, [x / g for x in u0])

    def galois(self, j: int) -> "Cyc":
        """Apply the automorphism zeta -> zeta^j; requires gcd(j, m) = 1."""
        if math.gcd(j, self.m) != 1:
            raise ValueError(f"sigma_{j} is not an automorphism at level {self.m}")
        acc = [Fraction(0)] * self.m
        for i, ci in enumerate(self.c):
            if ci:
                acc[(i * j) % self.m] += ci
        return Cyc(self.m, acc)

    def conj(self) -> "Cyc":
        return self.galois(self.m - 1) if self.m > 1 else self

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            a, b = self._pair(other)
            return a.c == b.c
        return NotImplemented

    def __repr__(self):
        if self.is_rational():
            return f"Cyc({self.m}, {self.c[0]!s})"
        body = " + ".join(f"({c})*z^{i}" for i, c in enumerate(self.c) if c)
        return f"Cyc({self.m}: {body})"


def _is_zero_scalar(x) -> bool:
    if isinstance(x, Cyc):
        return x.is_zero()
    return x == 0


def _inv_scalar(x):
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    return x.inverse()


def _ipow(x, k: int):
    """x**k for possibly negative k; x must be invertible when k < 0."""
    if k >= 0:
        return x ** k
    return _inv_scalar(x) ** (-k)


def _to_cyc(x, m: int) -> Cyc:
    if isinstance(x, Cyc):
        return x.lift(m) if x.m != m else x
    return Cyc.from_rational(m, x)


# ---------------------------------------------------------------------------
# Laurent polynomials in one formal variable v


class LaurentV:
    """Laurent polynomial in v, coefficients int, Fraction or Cyc.

    >>> v = LaurentV.v()
    >>> (v + v**-1) * v == v**2 + 1
    True
    """

    __slots__ = ("c",)
    __hash__ = None

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for k, x in coeffs.items():
                if not _is_zero_scalar(x):
                    c[k] = x if isinstance(x, (Fraction, Cyc)) else Fraction(x)
        self.c = c

    @classmethod
    def zero(cls) -> "LaurentV":
        return cls()

    @classmethod
    def one(cls) -> "LaurentV":
        return cls({0: 1})

    @classmethod
    def v(cls, k: int = 1) -> "LaurentV":
        return cls({k: 1})

    @classmethod
    def const(cls, x) -> "LaurentV":
        return cls({0: x})

    def coeff(self, k: int):
        return self.c.get(k, Fraction(0))

    def terms(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self.c.items()))

    def min_deg(self) -> int:
        return min(self.c) if self.c else 0

    def max_deg(self) -> int:
        return max(self.c) if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def shift(self, k: int) -> "LaurentV":
        """Multiply by v^k."""
        return LaurentV({e + k: x for e, x in self.c.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            other = LaurentV.const(other)
        if not isinstance(other, LaurentV):
            return NotImplemented
        out = dict(self.c)
        for k, x in other.c.items():
            out[k] = out.get(k, 0) + x
        return LaurentV(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentV({k: -x for k, x in self.c.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            other = LaurentV.const(other)
        if not isinstance(other, LaurentV):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return LaurentV({k: x * other for k, x in self.c.items()})
        if not isinstance(other, LaurentV):
            return NotImplemented
        out: dict[int, object] = {}
        for i, x in self.c.items():
            for j, y in other.c.items():
                k = i + j
                t = x * y
                out[k] = out.get(k, 0) + t
        return LaurentV(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentV.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "LaurentV":
        """Inverse of a monomial; raises for anything else."""
        if len(self.c) != 1:
            raise ZeroDivisionError("only monomials in v are invertible here")
        (k, x), = self.c.items()
        return LaurentV({-k: _inv_scalar(x)})

    def substitute_power(self, r: int) -> "LaurentV":
        """v -> v^r."""
        return LaurentV({k * r: x for k, x in self.c.items()})

    def map_coeff(self, fn: Callable) -> "LaurentV":
        return LaurentV({k: fn(x) for k, x in self.c.items()})

    def specialize(self, p: int, level: int = 1) -> "SqrtScalar":
        """Evaluate at v = sqrt(p), exactly, in Q(zeta_level)[sqrt p].

        v^k = p^(k//2) * sqrt(p)^(k%2), which is right for negative k too
        since Python floors: v^-1 = p^-1 * sqrt(p).
        """
        a = Cyc.zero(level)
        b = Cyc.zero(level)
        for k, x in self.c.items():
            t = _to_cyc(x, level) * Fraction(p) ** (k // 2)
            if k % 2:
                b = b + t
            else:
                a = a + t
        return SqrtScalar(p, a, b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            other = LaurentV.const(other)
        if not isinstance(other, LaurentV):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.c:
            return "LaurentV(0)"
        parts = []
        for k, x in sorted(self.c.items(), reverse=True):
            xs = str(x) if not isinstance(x, Cyc) else repr(x)
            parts.append(f"({xs})" + ("" if k == 0 else f"*v^{k}"))
        return "LaurentV(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Laurent polynomials in n commuting variables (group algebra of Z^n)


class MultiLaurent:
    """Element of the group algebra of Z^n: sums of c_lam * X^lam.

    Exponents are integer tuples of fixed length n; coefficients may be
    int, Fraction, Cyc or LaurentV.

    >>> f = MultiLaurent.monomial((1, 0)) + MultiLaurent.monomial((0, 1))
    >>> f.evaluate((Fraction(2), Fraction(3)))
    Fraction(5, 1)
    """

    __slots__ = ("n", "c")
    __hash__ = None

    def __init__(self, n: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        self.n = n
        c = {}
        if coeffs:
            for lam, x in coeffs.items():
                lam = tuple(lam)
                if len(lam) != n:
                    raise ValueError(f"exponent {lam} has wrong length, expected {n}")
                if isinstance(x, LaurentV):
                    if not x.is_zero():
                        c[lam] = x
                elif not _is_zero_scalar(x):
                    c[lam] = x if isinstance(x, (Fraction, Cyc)) else Fraction(x)
        self.c = c

    @classmethod
    def zero(cls, n: int) -> "MultiLaurent":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "MultiLaurent":
        return cls(n, {(0,) * n: 1})

    @classmethod
    def monomial(cls, lam: Sequence[int], coeff=1) -> "MultiLaurent":
        lam = tuple(lam)
        return cls(len(lam), {lam: coeff})

    def coeff(self, lam: Sequence[int]):
        return self.c.get(tuple(lam), Fraction(0))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def _promote(self, other) -> "MultiLaurent":
        if isinstance(other, MultiLaurent):
            if other.n != self.n:
                raise ValueError("mixed variable counts")
            return other
        return MultiLaurent(self.n, {(0,) * self.n: other})

    def __add__(self, other):
        if isinstance(other, MultiLaurent) or isinstance(other, (int, Fraction, Cyc, LaurentV)):
            other = self._promote(other)
        else:
            return NotImplemented
        out = dict(self.c)
        for lam, x in other.c.items():
            out[lam] = out.get(lam, 0) + x
        return MultiLaurent(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent(self.n, {lam: -x for lam, x in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, (MultiLaurent, int, Fraction, Cyc, LaurentV)):
            return NotImplemented
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc, LaurentV)):
            return MultiLaurent(self.n, {lam: x * other for lam, x in self.c.items()})
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("mixed variable counts")
        out: dict[tuple[int, ...], object] = {}
        for lam, x in self.c.items():
            for mu, y in other.c.items():
                key = tuple(a + b for a, b in zip(lam, mu))
                out[key] = out.get(key, 0) + x * y
        return MultiLaurent(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported; invert monomials by hand")
        out = MultiLaurent.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def map_exponents(self, fn: Callable[[tuple[int, ...]], Sequence[int]]) -> "MultiLaurent":
        out: dict[tuple[int, ...], object] = {}
        for lam, x in self.c.items():
            key = tuple(fn(lam))
            out[key] = out.get(key, 0) + x
        return MultiLaurent(self.n, out)

    def act(self, mat: Sequence[Sequence[int]]) -> "MultiLaurent":
        """Apply an integer matrix to every exponent: X^lam -> X^(mat . lam)."""
        rows = [tuple(r) for r in mat]
        return self.map_exponents(
            lambda lam: tuple(sum(rij * lj for rij, lj in zip(row, lam)) for row in rows)
        )

    def substitute_power(self, r: int) -> "MultiLaurent":
        """X^lam -> X^(r*lam)."""
        return self.map_exponents(lambda lam: tuple(r * a for a in lam))

    def map_coeff(self, fn: Callable[[object], object]) -> "MultiLaurent":
        return MultiLaurent(self.n, {lam: fn(x) for lam, x in self.c.items()})

    def evaluate(self, xi: Sequence):
        """Plug invertible scalars into the variables: sum of c_lam * prod xi_i^lam_i."""
        if len(xi) != self.n:
            raise ValueError("wrong number of values")
        total = None
        for lam, x in self.c.items():
            term = x
            for i, e in enumerate(lam):
                if e:
                    term = term * _ipow(xi[i], e)
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def __eq__(self, other):
        try:
            other = self._promote(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.c:
            return f"MultiLaurent({self.n}, 0)"
        parts = [f"({x})*X^{list(lam)}" for lam, x in sorted(self.c.items())]
        return "MultiLaurent(" + " + ".join(parts) + ")"


def msym(mats: Iterable[Sequence[Sequence[int]]], mu: Sequence[int]) -> MultiLaurent:
    """Monomial symmetric sum: X^lam summed over the orbit of mu under mats.

    ``mats`` lists the elements of a finite matrix group acting on Z^n;
    each orbit point contributes exactly once.
    """
    mu = tuple(mu)
    orbit = set()
    for m in mats:
        rows = [tuple(r) for r in m]
        orbit.add(tuple(sum(rij * lj for rij, lj in zip(row, mu)) for row in rows))
    out = MultiLaurent.zero(len(mu))
    for lam in sorted(orbit):
        out = out + MultiLaurent.monomial(lam)
    return out


# ---------------------------------------------------------------------------
# the quadratic extension Q(zeta_m)[sqrt p]


class SqrtScalar:
    """a + b*sqrt(p), a and b cyclotomic; faithful since gcd(p, m) = 1."""

    __slots__ = ("p", "a", "b")
    __hash__ = None

    def __init__(self, p: int, a, b=0):
        self.p = p
        self.a = a if isinstance(a, Cyc) else Cyc.from_rational(1, a)
        self.b = b if isinstance(b, Cyc) else Cyc.from_rational(1, b)
        if math.gcd(p, self.a.m) != 1 or math.gcd(p, self.b.m) != 1:
            raise ValueError("sqrt(p) may collide with Q(zeta_m) when p | m")

    @classmethod
    def sqrt_p(cls, p: int) -> "SqrtScalar":
        return cls(p, 0, 1)

    def _pair(self, other) -> tuple["SqrtScalar", "SqrtScalar"]:
        if isinstance(other, (int, Fraction, Cyc)):
            other = SqrtScalar(self.p, other, 0)
        if not isinstance(other, SqrtScalar):
            raise TypeError
        if other.p != self.p:
            if other.b.is_zero():
                other = SqrtScalar(self.p, other.a, 0)
            elif self.b.is_zero():
                return SqrtScalar(other.p, self.a, 0), other
            else:
                raise ValueError("mixed sqrt(p) levels")
        return self, other

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, Cyc, SqrtScalar)):
            return NotImplemented
        x, y = self._pair(other)
        return SqrtScalar(x.p, x.a + y.a, x.b + y.b)

    __radd__ = __add__

    def __neg__(self):
        return SqrtScalar(self.p, -self.a, -self.b)

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, Cyc, SqrtScalar)):
            return NotImplemented
        x, y = self._pair(other)
        return SqrtScalar(x.p, x.a - y.a, x.b - y.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, Cyc, SqrtScalar)):
            return NotImplemented
        x, y = self._pair(other)
        return SqrtScalar(
            x.p,
            x.a * y.a + Fraction(x.p) * x.b * y.b,
            x.a * y.b + x.b * y.a,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = SqrtScalar(self.p, 1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "SqrtScalar":
        nrm = self.a * self.a - Fraction(self.p) * self.b * self.b
        if nrm.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ni = nrm.inverse()
        return SqrtScalar(self.p, self.a * ni, -self.b * ni)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, Cyc, SqrtScalar)):
            return NotImplemented
        x, y = self._pair(other)
        return x.a == y.a and x.b == y.b

    def __repr__(self):
        return f"SqrtScalar({self.a!r} + ({self.b!r})*sqrt({self.p}))"
