"""Exact arithmetic in small unramified p-adic fields, and 2x2 matrices.

Elements of the degree r unramified extension F_r of Q_p are stored as
p^val * u where the unit u lives in the Galois ring
(Z / p^prec)[x] / (h(x)), h the lexicographically least monic degree r
polynomial that is irreducible mod p.  Arithmetic tracks the relative
precision ultrametrically and raises :class:`PrecisionError` rather
than ever returning a digit it cannot justify; exact zeros are a
separate case, so algebraically guaranteed zeros never eat precision.

The context also holds the residue field F_{p^r} with a discrete log
table (fixed generator: lexicographically least), the Frobenius lift
(the Hensel root of h congruent to x^p), and fixed residue lifts used
for coset representatives.

On top of the scalars, :class:`Mat2` gives GL_2(F_r) with the Iwahori
subgroup I = "upper triangular mod p", the factorization of any g as
i1 * (p^lam times an optional Weyl turn) * i2 with i1, i2 in I, and the
value of a depth-zero character on I through the reduction of the
diagonal.  The Weyl lift is n_s = [[0, 1], [-1, 0]]; with this choice
the depth-zero Hecke relations hold without any sign cocycle.

The last section enumerates the cosets I x I / I for x in the extended
affine Weyl group: a reduced word for x (plus a power of the rotation
omega = t_(1,0) s) converts into q^l(x) representatives, each a product
of one-parameter unipotents at fixed residue lifts times the chosen
Weyl lifts.  The residue coordinates of a representative double as a
dictionary key, which is what the orbit bookkeeping downstream sorts
and deduplicates by.

One sign is load bearing: the affine Weyl group convention used by the
algebra layer pairs with the lift t_lam -> diag(p^-lam).  Under that
dictionary (and only under it) the double coset of the lift of x
splits into exactly q^l(x) cosets for the Iwahori fixed here, so the
lift of the affine reflection s0 = t_(1,-1) s is diag(p^-1, p) n_s.
:func:`aff_cell` and :func:`cell_aff` translate between group elements
and the valuation cells that :func:`iwahori_factor` reports.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .rootdata import AffElt, Character, RootDatum

__all__ = [
    "Mat2",
    "PadicContext",
    "PadicNum",
    "PrecisionError",
    "aff_cell",
    "cell_aff",
    "cell_matrix",
    "chi_exponent",
    "descend_num",
    "gallery_cosets",
    "iwahori_factor",
    "norm_elt",
    "reduced_word",
    "schubert_cosets",
    "torus_norm_fibers",
]


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be certified at the working precision."""


def _ff_mul(u: tuple, v: tuple, h: tuple, p: int) -> tuple:
    # residue field multiply: tuples mod p, reduction by monic h
    r = len(u)
    conv = [0] * (2 * r - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                conv[i + j] = (conv[i + j] + a * b) % p
    for i in range(len(conv) - 1, r - 1, -1):
        top = conv[i]
        if top:
            conv[i] = 0
            for j in range(r):
                conv[i - r + j] = (conv[i - r + j] - top * h[j]) % p
    return tuple(conv[:r])


class PadicContext:
    """Shared tables for one (p, r, precision) choice."""

    def __init__(self, p: int, r: int, digits: int = 24, guard: int = 4):
        if r > 3:
            raise ValueError("unramified degree above 3 is not supported")
        self.p = p
        self.r = r
        self.digits = digits
        self.guard = guard
        self.q = p ** r
        self.h = self._least_irreducible()
        self._xpow = self._power_table()
        self._build_residue_field()
        self.frob_image = self._hensel_frobenius()

    # polynomial tables -------------------------------------------------------

    def _least_irreducible(self) -> tuple:
        p, r = self.p, self.r
        if r == 1:
            return (0,)
        for tail in self._lex_tuples(r):
            h = tail  # h = x^r + tail[r-1] x^{r-1} + ... + tail[0]
            if not any(self._poly_eval_mod_p(h, a) == 0 for a in range(p)):
                if r <= 3:
                    return h
        raise AssertionError("no irreducible polynomial found")

    def _lex_tuples(self, r: int):
        # lexicographic in (c_{r-1}, ..., c_1, c_0): high coefficients move
        # slowest, the constant term fastest
        p = self.p
        for n in range(p ** r):
            digitsrep = []
            m = n
            for _ in range(r):
                digitsrep.append(m % p)
                m //= p
            yield tuple(digitsrep)

    def _poly_eval_mod_p(self, tail: tuple, a: int) -> int:
        # evaluate x^r + sum tail[i] x^i at a, mod p
        r = self.r
        out = pow(a, r, self.p)
        for i, c in enumerate(tail):
            out = (out + c * pow(a, i, self.p)) % self.p
        return out

    def _power_table(self) -> list[tuple]:
        # x^k mod h, with integer coefficients of h lifted as-is, for k < 2r-1
        r = self.r
        if r == 1:
            return [(1,)]
        table = []
        for k in range(2 * r - 1):
            if k < r:
                table.append(tuple(1 if i == k else 0 for i in range(r)))
            else:
                # x^k = x * x^{k-1}, reduce the overflow with x^r = -h_tail
                prev = table[k - 1]
                shifted = [0] + list(prev[: r - 1])
                top = prev[r - 1]
                red = [s - top * hc for s, hc in zip(shifted, self.h)]
                table.append(tuple(red))
        return table

    # raw Galois ring ops (tuples of ints, arbitrary modulus) -------------------

    def ring_mul(self, u: Sequence[int], v: Sequence[int], mod: int) -> tuple:
        r = self.r
        if r == 1:
            return ((u[0] * v[0]) % mod,)
        conv = [0] * (2 * r - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    conv[i + j] += a * b
        out = [0] * r
        for k, c in enumerate(conv):
            if c:
                for i, t in enumerate(self._xpow[k]):
                    out[i] += c * t
        return tuple(x % mod for x in out)

    def ring_inv(self, u: Sequence[int], k: int) -> tuple:
        """Inverse of a unit mod p^k, by lifting the residue field inverse."""
        p = self.p
        res = tuple(x % p for x in u)
        if not any(res):
            raise ZeroDivisionError("not a unit")
        inv = self._ff_inverse(res)
        e = 1
        while e < k:
            e = min(2 * e, k)
            mod = p ** e
            # Newton: inv <- inv * (2 - u * inv)
            t = self.ring_mul(u, inv, mod)
            two_minus = tuple((-x) % mod for x in t)
            two_minus = tuple(
                (c + (2 if i == 0 else 0)) % mod for i, c in enumerate(two_minus)
            )
            inv = self.ring_mul(inv, two_minus, mod)
        return inv

    def _ff_inverse(self, u: tuple) -> tuple:
        k = self.dlog(u)
        return self._dlog_pow[(-k) % (self.q - 1)]

    # residue field -------------------------------------------------------------

    def _build_residue_field(self):
        p, r = self.p, self.r
        elems = list(self._lex_tuples(r)) if r > 1 else [(a,) for a in range(p)]
        self.residue_elements = elems
        gen = None
        m = self.q - 1
        for cand in elems:
            if not any(cand):
                continue
            powers = [tuple([1] + [0] * (r - 1))]
            cur = powers[0]
            ok = True
            for k in range(1, m + 1):
                cur = _ff_mul(cur, cand, self.h, p) if r > 1 else ((cur[0] * cand[0]) % p,)
                if k < m and cur == powers[0]:
                    ok = False
                    break
                if k < m:
                    powers.append(cur)
            if ok and cur == powers[0]:
                gen = cand
                self._dlog_pow = powers
                break
        assert gen is not None, "no generator of the residue field"
        self.residue_generator = gen
        self._dlog = {t: k for k, t in enumerate(self._dlog_pow)}

    def dlog(self, res: tuple) -> int:
        """Discrete log of a nonzero residue, base the fixed generator."""
        try:
            return self._dlog[tuple(res)]
        except KeyError:
            raise ZeroDivisionError(f"{res} is not a unit residue") from None

    # Frobenius -------------------------------------------------------------------

    def _hensel_frobenius(self) -> tuple:
        p, r, n = self.p, self.r, self.digits
        if r == 1:
            return (1,)
        # start from x^p in the residue field, Newton against h
        y = tuple(1 if i == 0 else 0 for i in range(r))
        base = tuple(1 if i == 1 else 0 for i in range(r))
        for _ in range(p):
            y = _ff_mul(y, base, self.h, p)
        e = 1
        while e < n:
            e = min(2 * e, n)
            mod = p ** e
            hy = self._eval_h(y, mod)
            hpy = self._eval_h_deriv(y, mod)
            corr = self.ring_mul(hy, self.ring_inv(hpy, e), mod)
            y = tuple((a - b) % mod for a, b in zip(y, corr))
        return y

    def _eval_h(self, y: tuple, mod: int) -> tuple:
        # h(y) = y^r + sum h_i y^i, evaluated in the ring
        powers = [tuple(1 if i == 0 else 0 for i in range(self.r))]
        for _ in range(self.r):
            powers.append(self.ring_mul(powers[-1], y, mod))
        out = powers[self.r]
        for i, hc in enumerate(self.h):
            if hc:
                out = tuple((a + hc * b) % mod for a, b in zip(out, powers[i]))
        return out

    def _eval_h_deriv(self, y: tuple, mod: int) -> tuple:
        # h'(y) = r y^{r-1} + sum i h_i y^{i-1}
        r = self.r
        out = tuple(0 for _ in range(r))
        acc = tuple(1 if i == 0 else 0 for i in range(r))
        powers = [acc]
        for _ in range(r - 1):
            powers.append(self.ring_mul(powers[-1], y, mod))
        out = tuple(r * c % mod for c in powers[r - 1])
        for i in range(1, r):
            coeff = (i * self.h[i]) % mod
            if coeff:
                out = tuple(
                    (a + coeff * b) % mod for a, b in zip(out, powers[i - 1])
                )
        return out

    # element constructors ----------------------------------------------------------

    def zero(self) -> "PadicNum":
        return PadicNum(self, None, (0,) * self.r, self.digits)

    def one(self) -> "PadicNum":
        return self.from_int(1)

    def from_int(self, n: int) -> "PadicNum":
        return self.from_coeffs((n,) + (0,) * (self.r - 1))

    def from_coeffs(self, coeffs: Sequence[int], val_shift: int = 0) -> "PadicNum":
        """The element p^val_shift * (sum coeffs[i] x^i), exactly."""
        coeffs = tuple(coeffs)
        if len(coeffs) > self.r:
            raise ValueError(f"{len(coeffs)} coordinates in a degree {self.r} context")
        coeffs += (0,) * (self.r - len(coeffs))
        if not any(coeffs):
            # exact input, so this is the exact zero, not a lost cancellation
            return self.zero()
        return _make(self, val_shift, coeffs, self.digits)

    def uniformizer(self, k: int = 1) -> "PadicNum":
        return self.from_coeffs((1,) + (0,) * (self.r - 1), k)

    def lift_residue(self, res: Sequence[int]) -> "PadicNum":
        """The fixed integral lift of a residue field element."""
        return self.from_coeffs(tuple(int(c) % self.p for c in res))

    def residue_lifts(self) -> list["PadicNum"]:
        return [self.lift_residue(t) for t in self.residue_elements]

    def frob(self, a: "PadicNum") -> "PadicNum":
        # Frobenius is an isometry, so both zero states pass through
        if a.val is None or a.unit is None or self.r == 1:
            return a
        mod = self.p ** a.prec
        out = (0,) * self.r
        acc = tuple(1 if i == 0 else 0 for i in range(self.r))
        img = tuple(c % mod for c in self.frob_image)
        for c in a.unit:
            if c:
                out = tuple((o + c * t) % mod for o, t in zip(out, acc))
            acc = self.ring_mul(acc, img, mod)
        return _make(self, a.val, out, a.prec)


def _ozero(ctx: PadicContext, bound: int) -> "PadicNum":
    """An element certified to vanish mod p^bound but with no known digits."""
    return PadicNum(ctx, bound, None, 0)


def _make(ctx: PadicContext, val: Optional[int], unit: tuple, prec: int) -> "PadicNum":
    """Normalize: strip p factors from the unit into the valuation.

    When every available digit cancels the result degrades to an
    approximate zero O(p^cutoff) rather than guessing a valuation.
    """
    if val is None:
        return PadicNum(ctx, None, (0,) * ctx.r, ctx.digits)
    p = ctx.p
    cutoff = val + prec
    mod = p ** prec
    unit = tuple(c % mod for c in unit)
    if not any(unit):
        return _ozero(ctx, cutoff)
    shift = 0
    while all(c % p == 0 for c in unit):
        unit = tuple(c // p for c in unit)
        shift += 1
        prec -= 1
        if prec <= 0:
            return _ozero(ctx, cutoff)
    mod = p ** prec
    return PadicNum(ctx, val + shift, tuple(c % mod for c in unit), prec)


class PadicNum:
    """p^val * unit, unit a Galois ring element known mod p^prec.

    Three states.  val=None is the exact zero.  unit=None with an
    integer val is an approximate zero: the element is certified to
    vanish mod p^val but no digit of it is known, the residue of a
    full cancellation.  Otherwise val is the exact valuation.
    """

    __slots__ = ("ctx", "val", "unit", "prec")
    __hash__ = None

    def __init__(self, ctx: PadicContext, val: Optional[int], unit: Optional[tuple], prec: int):
        self.ctx = ctx
        self.val = val
        self.unit = unit
        self.prec = prec

    def is_zero(self) -> bool:
        """Exactly zero.  Approximate zeros answer False."""
        return self.val is None

    def is_ozero(self) -> bool:
        return self.unit is None and self.val is not None

    def at_least(self, k: int) -> bool:
        """Decide val >= k.  Raises when an approximate zero cannot settle it."""
        if self.val is None or self.val >= k:
            return True
        if self.unit is None:
            raise PrecisionError(f"valuation in [{self.val}, oo), cannot compare with {k}")
        return False

    def valuation(self) -> Optional[int]:
        """The exact valuation, None for zero.  Refuses approximate zeros."""
        if self.is_ozero():
            raise PrecisionError(f"valuation only bounded below by {self.val}")
        return self.val

    def residue(self) -> tuple:
        """Reduction mod p of an integral element."""
        if self.val is None:
            return (0,) * self.ctx.r
        if self.is_ozero():
            if self.val >= 1:
                return (0,) * self.ctx.r
            raise PrecisionError("residue of an uncertified element")
        if self.val < 0:
            raise ValueError("not integral")
        if self.val > 0:
            return (0,) * self.ctx.r
        return tuple(c % self.ctx.p for c in self.unit)

    def __neg__(self) -> "PadicNum":
        if self.val is None or self.unit is None:
            return self
        mod = self.ctx.p ** self.prec
        return PadicNum(self.ctx, self.val, tuple((-c) % mod for c in self.unit), self.prec)

    def __add__(self, other: "PadicNum") -> "PadicNum":
        if not isinstance(other, PadicNum):
            return NotImplemented
        if self.val is None:
            return other
        if other.val is None:
            return self
        if self.unit is None or other.unit is None:
            return self._add_ozero(other)
        v = min(self.val, other.val)
        cutoff = min(self.val + self.prec, other.val + other.prec)
        m = cutoff - v
        if m <= 0:
            raise PrecisionError("no overlapping digits in addition")
        mod = self.ctx.p ** m
        pa = self.ctx.p ** (self.val - v)
        pb = self.ctx.p ** (other.val - v)
        coeffs = tuple(
            (a * pa + b * pb) % mod for a, b in zip(self.unit, other.unit)
        )
        return _make(self.ctx, v, coeffs, m)

    def _add_ozero(self, other: "PadicNum") -> "PadicNum":
        # at least one side is an approximate zero O(p^k)
        if self.unit is None and other.unit is None:
            return _ozero(self.ctx, min(self.val, other.val))
        oz, full = (self, other) if self.unit is None else (other, self)
        cutoff = min(oz.val, full.val + full.prec)
        if cutoff <= full.val:
            return _ozero(self.ctx, cutoff)
        return _make(self.ctx, full.val, full.unit, cutoff - full.val)

    def __sub__(self, other: "PadicNum") -> "PadicNum":
        if not isinstance(other, PadicNum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "PadicNum") -> "PadicNum":
        if not isinstance(other, PadicNum):
            return NotImplemented
        if self.val is None or other.val is None:
            return self.ctx.zero()
        if self.unit is None or other.unit is None:
            return _ozero(self.ctx, self.val + other.val)
        prec = min(self.prec, other.prec)
        mod = self.ctx.p ** prec
        unit = self.ctx.ring_mul(self.unit, other.unit, mod)
        return _make(self.ctx, self.val + other.val, unit, prec)

    def inverse(self) -> "PadicNum":
        if self.val is None:
            raise ZeroDivisionError("inverse of zero")
        if self.unit is None:
            raise PrecisionError("inverse of an uncertified element")
        inv = self.ctx.ring_inv(self.unit, self.prec)
        return PadicNum(self.ctx, -self.val, inv, self.prec)

    def __truediv__(self, other: "PadicNum") -> "PadicNum":
        if not isinstance(other, PadicNum):
            return NotImplemented
        return self * other.inverse()

    def frob(self) -> "PadicNum":
        return self.ctx.frob(self)

    def __eq__(self, other):
        """Equality to the available precision; insists on guard digits."""
        if not isinstance(other, PadicNum):
            return NotImplemented
        if self.val is None and other.val is None:
            return True
        for side in (self, other):
            if side.unit is not None and side.val is not None and side.prec < side.ctx.guard:
                raise PrecisionError("not enough guard digits to compare")
        diff = self - other
        return diff.val is None or diff.unit is None

    def __repr__(self):
        if self.val is None:
            return "PadicNum(0)"
        if self.unit is None:
            return f"PadicNum(O(p^{self.val}))"
        return f"PadicNum(p^{self.val} * {list(self.unit)} + O(p^{self.val + self.prec}))"


# ---------------------------------------------------------------------------
# 2x2 matrices


class Mat2:
    """A 2x2 matrix over one p-adic context."""

    __slots__ = ("a", "b", "c", "d")
    __hash__ = None

    def __init__(self, a: PadicNum, b: PadicNum, c: PadicNum, d: PadicNum):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, ctx: PadicContext) -> "Mat2":
        return cls(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())

    @classmethod
    def diag(cls, x: PadicNum, y: PadicNum) -> "Mat2":
        z = x.ctx.zero()
        return cls(x, z, z, y)

    @classmethod
    def weyl_turn(cls, ctx: PadicContext) -> "Mat2":
        """n_s = [[0, 1], [-1, 0]]; the cocycle-free lift of the Weyl flip."""
        return cls(ctx.zero(), ctx.one(), -ctx.one(), ctx.zero())

    @classmethod
    def upper(cls, x: PadicNum) -> "Mat2":
        ctx = x.ctx
        return cls(ctx.one(), x, ctx.zero(), ctx.one())

    @classmethod
    def lower(cls, x: PadicNum) -> "Mat2":
        ctx = x.ctx
        return cls(ctx.one(), ctx.zero(), x, ctx.one())

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> PadicNum:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        dt = self.det().inverse()
        return Mat2(self.d * dt, -self.b * dt, -self.c * dt, self.a * dt)

    def frob(self) -> "Mat2":
        return Mat2(self.a.frob(), self.b.frob(), self.c.frob(), self.d.frob())

    def scale(self, x: PadicNum) -> "Mat2":
        return Mat2(self.a * x, self.b * x, self.c * x, self.d * x)

    def in_iwahori(self) -> bool:
        """Integral, invertible over O, and upper triangular mod p."""
        if not all(e.at_least(0) for e in self.entries()):
            return False
        if not self.c.at_least(1):
            return False
        return self.det().valuation() == 0

    def in_gl_o(self) -> bool:
        if not all(e.at_least(0) for e in self.entries()):
            return False
        return self.det().valuation() == 0

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _vv(x: PadicNum, top: float) -> float:
    """Valuation with +inf for exact zero; pivoting may not guess.

    An approximate zero is usable once its certified bound beats every
    certified valuation in the matrix: it then loses every comparison
    no matter what its true valuation is.
    """
    if x.is_ozero():
        if x.val <= top:
            raise PrecisionError("pivot selection needs a certified valuation")
        return float(x.val)
    return float("inf") if x.val is None else x.val


def cell_matrix(ctx: PadicContext, lam: tuple[int, int], turn: bool) -> Mat2:
    """The chosen representative p^lam (times n_s when turn) of a cell."""
    m = Mat2.diag(ctx.uniformizer(lam[0]), ctx.uniformizer(lam[1]))
    if turn:
        m = m * Mat2.weyl_turn(ctx)
    return m


def iwahori_factor(g: Mat2, check: bool = False) -> tuple[Mat2, tuple[int, int], bool, Mat2]:
    """Write g = i1 * (p^lam [n_s]) * i2 with i1, i2 Iwahori.

    Returns (i1, lam, turn, i2).  Each step multiplies by an elementary
    Iwahori matrix on one side, picked by comparing entry valuations;
    among the four possible pivots at least one is always legal.  The
    cleared entries vanish identically, so they are set to exact zero
    instead of being subtracted, which keeps the precision honest.
    """
    ctx = g.a.ctx
    i1 = Mat2.identity(ctx)
    i2 = Mat2.identity(ctx)

    def used_left(e_inv: Mat2):
        # an op E was applied on the left of the working matrix
        nonlocal i1
        i1 = i1 * e_inv

    def used_right(e_inv: Mat2):
        nonlocal i2
        i2 = e_inv * i2

    a, b, c, d = g.entries()
    cert = [e.val for e in (a, b, c, d) if not (e.is_zero() or e.is_ozero())]
    if not cert:
        raise PrecisionError("no entry of the matrix has a certified valuation")
    top = max(cert)
    va, vb, vc, vd = (_vv(e, top) for e in (a, b, c, d))

    if vc <= va and vc <= vd:
        # pivot c: row move kills a, column move kills d
        if not a.is_zero():
            x = a / c
            used_left(Mat2.upper(x))
            b = b - x * d
        if not d.is_zero():
            used_right(Mat2.upper(d / c))
        diag_pair = None
        anti_pair = (b, c)
    elif va <= vb and va < vc:
        # pivot a: row move kills c (legal since val(c/a) > 0), column kills b
        if not c.is_zero():
            y = c / a
            used_left(Mat2.lower(y))
            d = d - y * b
        if not b.is_zero():
            used_right(Mat2.upper(b / a))
        diag_pair = (a, d)
        anti_pair = None
    elif vd <= vb and vd < vc:
        # pivot d: row move kills b, column move kills c (val(c/d) > 0)
        if not b.is_zero():
            x = b / d
            used_left(Mat2.upper(x))
            a = a - x * c
        if not c.is_zero():
            used_right(Mat2.lower(c / d))
        diag_pair = (a, d)
        anti_pair = None
    else:
        # pivot b: both moves are lower type, legal by val(a/b), val(d/b) > 0
        assert va > vb and vd > vb, (va, vb, vc, vd)
        if not a.is_zero():
            y = a / b
            used_right(Mat2.lower(y))
            c = c - y * d
        if not d.is_zero():
            used_left(Mat2.lower(d / b))
        diag_pair = None
        anti_pair = (b, c)

    if diag_pair is not None:
        x, y = diag_pair
        lam = (x.valuation(), y.valuation())
        turn = False
        absorb = Mat2.diag(x * ctx.uniformizer(-lam[0]), y * ctx.uniformizer(-lam[1]))
    else:
        bb, cc = anti_pair
        lam = (bb.valuation(), cc.valuation())
        turn = True
        ub = bb * ctx.uniformizer(-lam[0])
        uc = cc * ctx.uniformizer(-lam[1])
        # [[0, b], [c, 0]] = p^(vb, vc) n_s diag(-uc, ub)
        absorb = Mat2.diag(-uc, ub)
    used_right(absorb)

    if check:
        if not (i1.in_iwahori() and i2.in_iwahori()):
            raise AssertionError("factor left the Iwahori subgroup")
        recon = i1 * cell_matrix(ctx, lam, turn) * i2
        for u, w in zip(recon.entries(), g.entries()):
            if not (u == w):
                raise AssertionError("factorization does not multiply back")
    return i1, lam, turn, i2


def chi_exponent(chi: Character, i: Mat2) -> int:
    """Exponent k with value zeta^k of a depth-zero character on Iwahori.

    The character of T(F_q) with exponents (a1, a2) extends to I through
    the mod p reduction of the diagonal.
    """
    ctx = i.a.ctx
    k1 = ctx.dlog(i.a.residue())
    k2 = ctx.dlog(i.d.residue())
    a1, a2 = chi.exps
    return (a1 * k1 + a2 * k2) % chi.modulus


# ---------------------------------------------------------------------------
# norms and coset enumeration


def norm_elt(g: Mat2) -> Mat2:
    """The twisted norm g * theta(g) * ... * theta^{r-1}(g)."""
    out = g
    cur = g
    for _ in range(g.a.ctx.r - 1):
        cur = cur.frob()
        out = out * cur
    return out


def descend_num(x: PadicNum, target: PadicContext) -> PadicNum:
    """Reinterpret a Frobenius fixed element inside the degree one context.

    Only descent to the base field is supported; intermediate subfields
    would need a change of defining polynomial.  Every known digit of x
    outside the first coordinate must vanish, otherwise the element does
    not lie in the base field and a ValueError is raised.
    """
    ctx = x.ctx
    if target.p != ctx.p or target.r != 1:
        raise ValueError("descent target must be the degree one context")
    if x.is_zero():
        return target.zero()
    if x.is_ozero():
        return _ozero(target, x.val)
    mod = ctx.p ** x.prec
    if any(c % mod for c in x.unit[1:]):
        raise ValueError("element has a component outside the base field")
    return _make(target, x.val, (x.unit[0] % mod,), min(x.prec, target.digits))


def torus_norm_fibers(ctx: PadicContext) -> dict[tuple, list[tuple]]:
    """Fibers of the residue norm y -> y^(1 + p + ... + p^(r-1)).

    Maps each target in k^x to the full list of its preimages in k_r^x.
    Every fiber has exactly (q-1)/(p-1) elements, so the enumeration
    itself certifies that the norm is onto the residue torus.
    """
    q, p = ctx.q, ctx.p
    s = (q - 1) // (p - 1)
    fibers: dict[tuple, list[tuple]] = {}
    for j in range(q - 1):
        tgt = ctx._dlog_pow[(j * s) % (q - 1)]
        fibers.setdefault(tgt, []).append(ctx._dlog_pow[j])
    assert len(fibers) == p - 1
    assert all(len(v) == s for v in fibers.values())
    assert all(not any(t[1:]) for t in fibers), "norm image left the prime field"
    return fibers


_GL2 = RootDatum.gl(2)
_FLIP = ((0, 1), (1, 0))
_AFF_S = AffElt((0, 0), _FLIP)
_AFF_S0 = AffElt((1, -1), _FLIP)
_AFF_OMEGA = AffElt((1, 0), _FLIP)


def _omega_aff(k: int) -> AffElt:
    out = _GL2.t((0, 0))
    step = _AFF_OMEGA if k >= 0 else _GL2.inv(_AFF_OMEGA)
    for _ in range(abs(k)):
        out = _GL2.mul(out, step)
    return out


def reduced_word(x: AffElt) -> tuple[list[str], int]:
    """A reduced word for x, plus the leftover rotation power.

    Returns (letters, k) with letters in {"s", "s0"} and
    x = product of the letters, left to right, times omega^k where
    omega = t_(1,0) s generates the length zero subgroup.
    """
    letters: list[str] = []
    cur = x
    n = _GL2.length(cur)
    while n > 0:
        for label, g in (("s", _AFF_S), ("s0", _AFF_S0)):
            rest = _GL2.mul(g, cur)
            m = _GL2.length(rest)
            if m < n:
                letters.append(label)
                cur, n = rest, m
                break
        else:
            raise AssertionError("no left descent at positive length")
    k = cur.lam[0] + cur.lam[1]
    if _omega_aff(k) != cur:
        raise AssertionError("length zero remainder is not a rotation power")
    return letters, k


def aff_cell(x: AffElt) -> tuple[tuple[int, int], bool]:
    """The valuation cell of the lift of x, as iwahori_factor reports it."""
    return tuple(-a for a in x.lam), x.w == _FLIP


def cell_aff(lam: Sequence[int], turn: bool) -> AffElt:
    """The group element whose lift lives in the given valuation cell."""
    neg = tuple(-a for a in lam)
    return AffElt(neg, _FLIP) if turn else AffElt(neg, _ident2())


def _ident2() -> tuple:
    return ((1, 0), (0, 1))


def _omega_matrix(ctx: PadicContext, k: int) -> Mat2:
    step = cell_matrix(ctx, (-1, 0), True)
    if k < 0:
        step = step.inverse()
    out = Mat2.identity(ctx)
    for _ in range(abs(k)):
        out = out * step
    return out


def gallery_cosets(
    ctx: PadicContext, x: AffElt, max_length: int = 12
) -> list[tuple[tuple, Mat2]]:
    """Representatives of I x I / I, keyed by residue coordinates.

    Walking the reduced word i_1 ... i_l of x, each coset of I x I / I
    contains exactly one product
    u_{i_1}(c_1) n_{i_1} ... u_{i_l}(c_l) n_{i_l} omega^k with the c_j
    fixed residue lifts; the key is the coordinate tuple (c_1, ..., c_l)
    as residues.  Output comes in lexicographic key order, q^l entries,
    all in the valuation cell aff_cell(x).
    """
    letters, k = reduced_word(x)
    if len(letters) > max_length:
        raise ValueError(f"cell length {len(letters)} exceeds bound {max_length}")
    lifts = list(zip(ctx.residue_elements, ctx.residue_lifts()))
    out: list[tuple[tuple, Mat2]] = [((), Mat2.identity(ctx))]
    for letter in letters:
        if letter == "s":
            factors = [(res, Mat2.upper(c) * Mat2.weyl_turn(ctx)) for res, c in lifts]
        else:
            turn = cell_matrix(ctx, (-1, 1), True)
            factors = [
                (res, Mat2.lower(c * ctx.uniformizer()) * turn) for res, c in lifts
            ]
        out = [(key + (res,), g * f) for key, g in out for res, f in factors]
    tail = _omega_matrix(ctx, k)
    return sorted(((key, g * tail) for key, g in out), key=lambda kv: kv[0])


def schubert_cosets(ctx: PadicContext, x: AffElt, max_length: int = 12) -> list[Mat2]:
    """The q^l(x) pairwise inequivalent representatives of I x I / I."""
    return [g for _, g in gallery_cosets(ctx, x, max_length)]
