"""Affine Hecke algebras of depth-zero blocks, with Bernstein elements.

The algebra attached to a :class:`~heckebc.rootdata.Block` has basis
T_x for x in the block group X x| W_chi, coefficients in Z[v, v^-1]
with q = v^2, and relations

    T_s T_x = T_{sx}                     if len(sx) > len(x),
    T_s T_x = (q - 1) T_x + q T_{sx}     if len(sx) < len(x),
    T_w T_x = T_{wx}                     if len(w) = 0,

where len is the block length and s runs over the simple affine
generators.  There is no twisting cocycle on the length-zero part.

On top of the T-basis this module builds:

* Bernstein elements theta_lam = v^(len t_nu - len t_mu) T_{t_mu} T_{t_nu}^{-1}
  for any decomposition lam = mu - nu into block-dominant pieces (the
  result is independent of the choice; tests check this).
* The central basis map beta, sending a W_chi-symmetric Laurent
  polynomial f = sum f_lam X^lam to sum f_lam theta_lam, and its inverse
  beta_inv by triangularity with respect to the block length.
* The trace of the principal series module attached to an unramified
  character eta of the cocharacter lattice: ps_trace(h, eta) is the
  trace of h acting on the right module spanned by 1 (x) T_u, u in W_chi,
  where theta_lam acts through the scalar eta(lam).
"""
from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .coeff import Cyc, LaurentV, MultiLaurent
from .rootdata import AffElt, Block, Mat, Vec

__all__ = [
    "HeckeAlgebra",
    "HeckeElt",
    "character_from_exponents",
    "unramified_character",
]

Eta = Callable[[Vec], Cyc]


def unramified_character(xi: Sequence) -> Eta:
    """The character lam -> prod xi_i^lam_i of the lattice Z^n."""
    vals = tuple(xi)

    def eta(lam: Sequence[int]):
        out = None
        for x, e in zip(vals, lam):
            t = x ** e if e >= 0 else x.inverse() ** (-e)
            out = t if out is None else out * t
        return Cyc.one(1) if out is None else out

    return eta


def character_from_exponents(m: int, exps: Sequence[int]) -> Eta:
    """lam -> zeta_m ^ <exps, lam>."""
    exps = tuple(exps)

    def eta(lam: Sequence[int]):
        k = sum(a * l for a, l in zip(exps, lam))
        return Cyc.root(m, k)

    return eta


class HeckeElt:
    """A finite sum of T_x with Laurent polynomial coefficients."""

    __slots__ = ("algebra", "c")
    __hash__ = None

    def __init__(self, algebra: "HeckeAlgebra", coeffs: Mapping[AffElt, LaurentV]):
        self.algebra = algebra
        c = {}
        for x, f in coeffs.items():
            if not isinstance(f, LaurentV):
                f = LaurentV.const(f)
            if not f.is_zero():
                c[x] = f
        self.c = c

    def coeff(self, x: AffElt) -> LaurentV:
        return self.c.get(x, LaurentV.zero())

    def support(self) -> list[AffElt]:
        return sorted(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        out = dict(self.c)
        for x, f in other.c.items():
            out[x] = out.get(x, LaurentV.zero()) + f
        return HeckeElt(self.algebra, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.algebra, {x: -f for x, f in self.c.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.algebra.mul(self, other)
        return HeckeElt(self.algebra, {x: f * other for x, f in self.c.items()})

    def __rmul__(self, other):
        # scalars commute with coefficients
        return HeckeElt(self.algebra, {x: f * other for x, f in self.c.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.c:
            return "HeckeElt(0)"
        bits = [f"{f!r}*T[{x.lam},{x.w}]" for x, f in sorted(self.c.items())]
        return "HeckeElt(" + " + ".join(bits) + ")"


class HeckeAlgebra:
    """The Hecke algebra of one depth-zero block."""

    def __init__(self, block: Block):
        self.block = block
        self.rd = block.datum
        self._len: dict[AffElt, int] = {}
        self._prod: dict[tuple[AffElt, AffElt], dict[AffElt, LaurentV]] = {}
        self._inv: dict[AffElt, dict[AffElt, LaurentV]] = {}
        self._theta: dict[Vec, HeckeElt] = {}
        if block.pos_chi:
            self._delta = tuple(
                sum(av[i] for _, av in block.pos_chi) for i in range(self.rd.rank)
            )
        else:
            self._delta = (0,) * self.rd.rank

    # basics -----------------------------------------------------------------

    def length(self, x: AffElt) -> int:
        out = self._len.get(x)
        if out is None:
            out = self._len[x] = self.block.length(x)
        return out

    def elt(self, coeffs: Mapping[AffElt, LaurentV]) -> HeckeElt:
        return HeckeElt(self, coeffs)

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def unit(self) -> HeckeElt:
        return self.T(self.rd.t((0,) * self.rd.rank))

    def T(self, x: AffElt) -> HeckeElt:
        return HeckeElt(self, {x: LaurentV.one()})

    def T_translation(self, lam: Sequence[int]) -> HeckeElt:
        return self.T(self.rd.t(lam))

    # multiplication -----------------------------------------------------------

    def _apply_gen_left(self, s: AffElt, terms: dict[AffElt, LaurentV]) -> dict[AffElt, LaurentV]:
        # left multiply a T-combination by T_s, s a simple affine generator
        out: dict[AffElt, LaurentV] = {}
        qm1 = LaurentV({2: 1, 0: -1})
        q = LaurentV({2: 1})
        for w, f in terms.items():
            sw = self.rd.mul(s, w)
            if self.length(sw) > self.length(w):
                out[sw] = out.get(sw, LaurentV.zero()) + f
            else:
                out[w] = out.get(w, LaurentV.zero()) + qm1 * f
                out[sw] = out.get(sw, LaurentV.zero()) + q * f
        return {w: f for w, f in out.items() if not f.is_zero()}

    def _basis_mul(self, x: AffElt, y: AffElt) -> dict[AffElt, LaurentV]:
        key = (x, y)
        cached = self._prod.get(key)
        if cached is not None:
            return cached
        if self.length(x) == 0:
            out = {self.rd.mul(x, y): LaurentV.one()}
        else:
            s = self.block.left_descent(x)
            assert s is not None, f"positive length without descent: {x}"
            rest = self._basis_mul(self.rd.mul(s, x), y)
            out = self._apply_gen_left(s, rest)
        self._prod[key] = out
        return out

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        out: dict[AffElt, LaurentV] = {}
        for x, f in a.c.items():
            for y, g in b.c.items():
                fg = f * g
                for w, cf in self._basis_mul(x, y).items():
                    out[w] = out.get(w, LaurentV.zero()) + fg * cf
        return HeckeElt(self, out)

    def t_inv(self, x: AffElt) -> HeckeElt:
        """The inverse of the basis element T_x."""
        return HeckeElt(self, self._t_inv_dict(x))

    def _t_inv_dict(self, x: AffElt) -> dict[AffElt, LaurentV]:
        cached = self._inv.get(x)
        if cached is not None:
            return cached
        if self.length(x) == 0:
            out = {self.rd.inv(x): LaurentV.one()}
        else:
            s = self.block.left_descent(x)
            assert s is not None
            rest = self._t_inv_dict(self.rd.mul(s, x))
            # T_x = T_s T_{sx} gives T_x^{-1} = T_{sx}^{-1} T_s^{-1} with
            # T_s^{-1} = q^{-1} T_s - (1 - q^{-1}); when len(ws) < len(w)
            # the two contributions to T_w collapse and only T_{ws} survives
            qinv = LaurentV({-2: 1})
            one_minus_qinv = LaurentV({0: 1, -2: -1})
            out: dict[AffElt, LaurentV] = {}
            for w, f in rest.items():
                ws = self.rd.mul(w, s)
                if self.length(ws) > self.length(w):
                    out[ws] = out.get(ws, LaurentV.zero()) + qinv * f
                    out[w] = out.get(w, LaurentV.zero()) - one_minus_qinv * f
                else:
                    out[ws] = out.get(ws, LaurentV.zero()) + f
            out = {w: f for w, f in out.items() if not f.is_zero()}
        self._inv[x] = out
        return out

    # Bernstein elements -------------------------------------------------------

    def theta(self, lam: Sequence[int]) -> HeckeElt:
        """theta_lam, via any block-dominant decomposition lam = mu - nu."""
        lam = tuple(lam)
        out = self._theta.get(lam)
        if out is not None:
            return out
        mu, nu = self.block.dominant_decomposition(lam)
        lmu = self.block.translation_length(mu)
        lnu = self.block.translation_length(nu)
        prod = self.mul(self.T_translation(mu), self.t_inv(self.rd.t(nu)))
        out = LaurentV.v(lnu - lmu) * prod
        self._theta[lam] = out
        return out

    def central_orbit_sum(self, mu: Sequence[int]) -> HeckeElt:
        """Z_mu: the sum of theta_lam over the W_chi-orbit of mu."""
        out = self.zero()
        for lam in self.block.orbit(mu):
            out = out + self.theta(lam)
        return out

    def beta(self, f: MultiLaurent) -> HeckeElt:
        """sum f_lam theta_lam; f should be W_chi-symmetric to land in the center."""
        out = self.zero()
        for lam in f.support():
            out = out + f.coeff(lam) * self.theta(lam)
        return out

    def beta_inv(self, h: HeckeElt) -> MultiLaurent:
        """Invert beta by peeling leading terms, top block length first.

        theta_lam = v^(-len t_lam) T_{t_lam} + terms of smaller length, so
        the maximal-length terms of any element of the image of beta are
        translations; peel them, subtract, repeat.
        """
        n = self.rd.rank
        rest = h
        out = MultiLaurent.zero(n)
        guard = 0
        while not rest.is_zero():
            guard += 1
            if guard > 10000:
                raise ArithmeticError("beta_inv failed to terminate")
            top = max(self.length(x) for x in rest.c)
            layer = [x for x in rest.c if self.length(x) == top]
            ident = self.rd.t((0,) * n).w
            for x in layer:
                if x.w != ident:
                    raise ValueError("element is not in the span of the theta basis")
                flam = LaurentV.v(self.block.translation_length(x.lam)) * rest.c[x]
                out = out + MultiLaurent.monomial(x.lam, flam)
                rest = rest - flam * self.theta(x.lam)
        return out

    def is_central(self, h: HeckeElt) -> bool:
        """Commutation against a generating set of the block algebra."""
        gens = [self.T(self.rd.from_w(u)) for u in self.block.w_chi]
        for i in range(self.rd.rank):
            e = tuple(1 if j == i else 0 for j in range(self.rd.rank))
            gens.append(self.theta(e))
            gens.append(self.theta(tuple(-x for x in e)))
        return all(self.mul(h, g) == self.mul(g, h) for g in gens)

    # principal series trace ----------------------------------------------------

    def _finite_dual_inv(self, u: Mat) -> dict[Mat, LaurentV]:
        # expansion of T_{u^{-1}}^{-1} in the finite T-basis
        x = self.rd.from_w(self.rd.w_inv(u))
        out = {}
        for w, f in self._t_inv_dict(x).items():
            assert not any(w.lam), "finite inverse left the finite subalgebra"
            out[w.w] = f
        return out

    def _reduce_pass(self, terms: dict[AffElt, LaurentV], eta: Eta) -> dict[Mat, LaurentV] | None:
        out: dict[Mat, LaurentV] = {}
        for x, f in terms.items():
            lam, u = x.lam, x.w
            if not self.block.is_dominant(lam):
                return None
            lt = self.block.translation_length(lam)
            lu = self.length(self.rd.from_w(u))
            if self.length(x) != lt - lu:
                return None
            scale = LaurentV.v(lt) * eta(lam) * f
            for w, g in self._finite_dual_inv(u).items():
                out[w] = out.get(w, LaurentV.zero()) + scale * g
        return {w: f for w, f in out.items() if not f.is_zero()}

    def module_vector(self, h: HeckeElt, eta: Eta) -> dict[Mat, LaurentV]:
        """Coordinates of 1 (x) h in the basis 1 (x) T_u of the eta module."""
        if h.is_zero():
            return {}
        k = 0
        while True:
            if k == 0:
                shifted = h
                pre = LaurentV.one()
            else:
                mu = tuple(k * d for d in self._delta)
                shifted = self.mul(self.T_translation(mu), h)
                pre = LaurentV.v(-self.block.translation_length(mu)) * eta(tuple(-x for x in mu))
            res = self._reduce_pass(shifted.c, eta)
            if res is not None:
                return {w: pre * f for w, f in res.items()}
            if not any(self._delta):
                raise ArithmeticError("reduction failed in a block without roots")
            k = max(1, 2 * k)
            if k > 256:
                raise ArithmeticError("no sufficiently deep shift found")

    def ps_trace(self, h: HeckeElt, eta: Eta) -> LaurentV:
        """Trace of h on the principal series module of eta.

        The module is C_eta (x)_A H with A the commutative theta span;
        1 (x) theta_lam h = eta(lam) (1 (x) h), and the T_u, u in W_chi,
        give a basis.  For h in the image of beta this returns
        |W_chi| * beta_inv(h)(eta).
        """
        total = LaurentV.zero()
        for u in self.block.w_chi:
            vec = self.module_vector(self.mul(self.T(self.rd.from_w(u)), h), eta)
            total = total + vec.get(u, LaurentV.zero())
        return total
