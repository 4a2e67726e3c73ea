"""Constant term maps to a standard Levi, and the discriminant factor.

The constant term homomorphism has two faces.  Algebraically it is the
inclusion of invariant rings: a W_chi-symmetric Laurent polynomial,
reread as a polynomial symmetric under the smaller group cut out by a
standard Levi.  Composed with the center isomorphisms on both sides it
sends the center of the block algebra of G to the center of the block
algebra of M.  Analytically, for G = GL2 and M = T, it is the integral
of the realized function over the unipotent radical of the Borel,
normalized by the square root of the modulus character.  The two faces
agree pointwise on the torus; the test suite checks that agreement
exactly, which pins every normalization in this module.

Measures: the integration over N(F) gives the congruence subgroup
u(p^c O) volume 1, c = 0 for the standard window.  The descent sums in
the orbital layer use c = 1 for the long-Weyl-element twist, where the
intersection of N with the conjugated Iwahori subgroup is u(p O).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .coeff import Cyc, LaurentV, MultiLaurent
from .hecke import HeckeAlgebra, HeckeElt
from .padic import Mat2, PadicContext, chi_exponent
from .rootdata import Block, Character, RootDatum

__all__ = [
    "ct_algebraic",
    "ct_center",
    "ct_integral",
    "dgm_factor",
    "dgm_valuation",
    "levi_algebra",
    "levi_datum",
    "realize_torus",
    "unipotent_shell",
]


# ---------------------------------------------------------------------------
# standard Levis


def levi_datum(datum: RootDatum, simples: Sequence[int]) -> RootDatum:
    """The sub-root-datum spanned by a subset of the simple roots.

    The lattice is unchanged; only the roots lying in the span of the
    chosen simples survive.  The empty subset gives the maximal torus.
    """
    chosen = sorted(set(simples))
    for i in chosen:
        if not 0 <= i < len(datum.simple_roots):
            raise ValueError(f"no simple root with index {i}")
    picked = [datum.simple_roots[i] for i in chosen]
    keep = [rt for rt in datum.pos_roots if _in_simple_span(datum, picked, rt[0])]
    tag = ",".join(str(i) for i in chosen)
    return RootDatum(f"{datum.name}|levi({tag})", datum.rank, keep)


def _in_simple_span(datum: RootDatum, picked, a) -> bool:
    # peel picked simples off a; every partial remainder of a positive
    # root is again a positive root, so membership in the span shows up
    vecs = {v for v, _ in datum.pos_roots}
    cur = tuple(a)
    for _ in range(len(datum.pos_roots) + 1):
        if not any(cur):
            return True
        for b, _ in picked:
            if cur == b:
                return True
            rem = tuple(x - y for x, y in zip(cur, b))
            if rem in vecs:
                cur = rem
                break
        else:
            return False
    return False


def levi_algebra(algebra: HeckeAlgebra, simples: Sequence[int]) -> HeckeAlgebra:
    """The block algebra of the same character on a standard Levi."""
    return HeckeAlgebra(Block(levi_datum(algebra.rd, simples), algebra.block.chi))


# ---------------------------------------------------------------------------
# algebraic constant term


def ct_algebraic(block: Block, m_block: Block, f: MultiLaurent) -> MultiLaurent:
    """The same polynomial, viewed in the invariant ring of the Levi block.

    A ring homomorphism (it is an inclusion); the identity when M = G.
    Raises when f is not invariant under the full block Weyl group.
    """
    if m_block.chi != block.chi:
        raise ValueError("blocks must share one character")
    if not set(m_block.datum.pos_roots) <= set(block.datum.pos_roots):
        raise ValueError("Levi roots must be a subset of the group's roots")
    for w in block.w_chi:
        if f.act(w) != f:
            raise ValueError("polynomial is not invariant under the block Weyl group")
    return f


def ct_center(algebra: HeckeAlgebra, m_algebra: HeckeAlgebra, z: HeckeElt) -> HeckeElt:
    """The constant term on centers: beta_M after ct_algebraic after beta_inv.

    Sends central elements of the big block to central elements of the
    Levi block; non-central input fails the invariance check inside.
    """
    f = algebra.beta_inv(z)
    return m_algebra.beta(ct_algebraic(algebra.block, m_algebra.block, f))


# ---------------------------------------------------------------------------
# integral constant term on GL2


def unipotent_shell(ctx: PadicContext, k: int, c: int):
    """Representatives x of the valuation shell of p^-k O / p^c O.

    For k = 0 the central window O / p^c O; for k >= 1 only the x of
    valuation exactly -k.  Together over k = 0..V these partition
    p^-V O / p^c O, one representative per coset of p^c O.
    """
    p, r = ctx.p, ctx.r
    mod = p ** (k + c)
    if mod == 1:
        yield ctx.zero()
        return
    for coords in product(range(mod), repeat=r):
        if k and all(x % p == 0 for x in coords):
            continue
        yield ctx.from_coeffs(coords, -k)


def ct_integral(
    f_eval: Callable[[Mat2], object],
    ctx: PadicContext,
    coset_val: int = 0,
    max_window: int = 9,
) -> Callable[[Mat2], object]:
    """The constant term along the upper Borel, as a function on T(F).

    f_eval must be constant on right cosets of u(p^coset_val O); that
    subgroup gets Haar volume 1.  The N(F)-integral is then the finite
    sum of f(t u(x)) over coset representatives x, windowed by valuation
    and grown until two consecutive shells contribute nothing.  The
    modulus factor is delta_B^(1/2)(t) = v^(val t2 - val t1) with
    v = sqrt(q) for the field of definition.
    """

    def f_B(t: Mat2):
        if not (t.b.is_zero() and t.c.is_zero()):
            raise ValueError("constant term is evaluated on diagonal elements")
        dv = t.d.valuation() - t.a.valuation()
        delta_half = LaurentV.v(dv).substitute_power(ctx.r).specialize(ctx.p, 1)
        total = None
        silent = 0
        k = 0
        while silent < 2:
            if k > max_window:
                raise RuntimeError("unipotent integral did not stabilize")
            shell_total = None
            for x in unipotent_shell(ctx, k, coset_val):
                val = f_eval(t * Mat2.upper(x))
                if _nonzero(val):
                    shell_total = val if shell_total is None else shell_total + val
            if shell_total is None or not _nonzero(shell_total):
                silent += 1
            else:
                silent = 0
                total = shell_total if total is None else total + shell_total
            k += 1
        if total is None:
            return Fraction(0)
        return delta_half * total

    return f_B


def _nonzero(x) -> bool:
    return not (hasattr(x, "is_zero") and x.is_zero()) and x != 0


# ---------------------------------------------------------------------------
# realizing a torus-block element as a function on T(F)


def realize_torus(
    ctx: PadicContext, chi: Character, f: MultiLaurent
) -> Callable[[Mat2], object]:
    """The function on T(F) with value f_{-lam} * chi^-1(units) on p^lam T(O).

    f is the polynomial model of an element of the torus block algebra;
    its coefficients are Laurent polynomials in v, specialized at
    v = sqrt(q) for the field of definition.  The sign matches the group
    side, where the basis element of a translation is supported on the
    cell of the negated cocharacter.
    """
    m = ctx.p ** ctx.r - 1
    if chi.modulus != m:
        raise ValueError("character level does not match the context")

    def at(t: Mat2):
        if not (t.b.is_zero() and t.c.is_zero()):
            raise ValueError("torus functions are evaluated on diagonal elements")
        lam = (t.a.valuation(), t.d.valuation())
        c = f.coeff((-lam[0], -lam[1]))
        if not isinstance(c, LaurentV):
            c = LaurentV.const(c)
        if c.is_zero():
            return Fraction(0)
        units = Mat2(
            t.a * ctx.uniformizer(-lam[0]),
            ctx.zero(),
            ctx.zero(),
            t.d * ctx.uniformizer(-lam[1]),
        )
        k = chi_exponent(chi, units)
        return c.substitute_power(ctx.r).specialize(ctx.p, m) * Cyc.root(m, -k)

    return at


# ---------------------------------------------------------------------------
# Harish-Chandra discriminant factor


def dgm_valuation(gamma: Mat2) -> int:
    """val det(1 - Ad(gamma^-1)) on Lie G / Lie T, gamma regular diagonal."""
    if not (gamma.b.is_zero() and gamma.c.is_zero()):
        raise ValueError("only the diagonal Levi is supported")
    ctx = gamma.a.ctx
    ratio = gamma.d / gamma.a
    x = ctx.one() - ratio
    y = ctx.one() - ratio.inverse()
    if x.is_zero() or y.is_zero():
        raise ValueError("element is not regular relative to the Levi")
    return x.valuation() + y.valuation()


def dgm_factor(gamma: Mat2) -> Fraction:
    """|det(1 - Ad(gamma^-1); Lie G / Lie T)| as an exact power of p."""
    ctx = gamma.a.ctx
    q = Fraction(ctx.p) ** ctx.r
    return q ** (-dgm_valuation(gamma))
