"""Root data, extended affine Weyl groups, and depth-zero block data.

A :class:`RootDatum` packages the cocharacter lattice X = Z^n of a split
maximal torus together with the roots (as integer functionals on X), the
coroots (as vectors in X), the finite Weyl group W (integer matrices),
and the Kottwitz invariant X / Z R_coroot computed through Smith normal
form.  Constructors cover GL(n), SL(2) and PGL(2); everything downstream
is written against the abstract interface.

Elements of the extended affine Weyl group X x| W are :class:`AffElt`
pairs (lam, w) with the product t_lam w . t_mu u = t_{lam + w mu} (wu)
and the length

    len(t_lam w) = sum_{a > 0, w^-1 a > 0} |<a, lam>|
                 + sum_{a > 0, w^-1 a < 0} |<a, lam> - 1|

which can be taken relative to a subsystem of the roots.  A depth-zero
character chi of T(F_q), encoded by its exponents mod q - 1, determines
a :class:`Block`: the stabilizer W_chi, the subsystem

    R_chi = {a in R : <chi, a_coroot> = 0 mod q - 1},

the block length function, and the simple affine generators used for
Hecke algebra reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

__all__ = [
    "AffElt",
    "Block",
    "Character",
    "RootDatum",
    "norm_transfer",
]

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def _ident(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matvec(m: Mat, v: Sequence[int]) -> Vec:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def _matmul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _rowmat(f: Sequence[int], m: Mat) -> Vec:
    # functional composed with a matrix: (f . m)(v) = f(m v)
    n = len(f)
    return tuple(sum(f[i] * m[i][j] for i in range(n)) for j in range(n))


def _dot(f: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(f, v))


class AffElt(NamedTuple):
    """t_lam w in the extended affine Weyl group; w is a matrix on X."""

    lam: Vec
    w: Mat


# ---------------------------------------------------------------------------
# Smith normal form, for Kottwitz invariants


def _smith_left(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Return (U, diag) with U*A*V = diag(d_1, d_2, ...), d_i | d_{i+1}.

    Only the left transform U is tracked; column operations change nothing
    about the column span, which is all the quotient X / col-span(A) needs.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        for k in range(nc):
            a[i][k] += c * a[j][k]
        for k in range(nr):
            u[i][k] += c * u[j][k]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]

    def add_col(i, j, c):
        for r in a:
            r[i] += c * r[j]

    k = 0
    while k < min(nr, nc):
        # find a pivot in the lower-right block
        pivot = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j]:
                    if pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            done = True
            for i in range(k + 1, nr):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    add_row(i, k, -q)
                    if a[i][k]:
                        swap_rows(i, k)
                        done = False
            for j in range(k + 1, nc):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    add_col(j, k, -q)
                    if a[k][j]:
                        swap_cols(j, k)
                        done = False
            if done:
                # enforce divisibility d_k | everything below
                bad = None
                for i in range(k + 1, nr):
                    for j in range(k + 1, nc):
                        if a[i][j] % a[k][k]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(k, bad, 1)
        if a[k][k] < 0:
            add_row(k, k, -2)  # flip sign: row *= -1 via row += -2*row
        k += 1
    diag = [a[i][i] if i < nc else 0 for i in range(nr)]
    return u, diag


# ---------------------------------------------------------------------------
# root data


class RootDatum:
    """Split root datum on X = Z^n, with W realized by integer matrices."""

    def __init__(
        self,
        name: str,
        rank: int,
        pos_roots: Sequence[tuple[Vec, Vec]],
    ):
        self.name = name
        self.rank = rank
        self.pos_roots = [(tuple(a), tuple(av)) for a, av in pos_roots]
        self.two_rho: Vec = tuple(
            sum(a[i] for a, _ in self.pos_roots) for i in range(rank)
        )
        self.simple_roots = _simple_system(self.pos_roots)
        self.weyl = self._generate_weyl()
        self._w_inv = {w: next(x for x in self.weyl if _matmul(w, x) == _ident(rank))
                       for w in self.weyl}
        coroot_cols = [[av[i] for _, av in self.pos_roots] for i in range(rank)]
        if self.pos_roots:
            self._kott_u, self._kott_d = _smith_left(coroot_cols)
        else:
            self._kott_u = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
            self._kott_d = [0] * rank

    # constructors ---------------------------------------------------------

    @classmethod
    def gl(cls, n: int) -> "RootDatum":
        """GL(n): X = Z^n, roots e_i - e_j, W = S_n."""
        pos = []
        for i in range(n):
            for j in range(i + 1, n):
                a = [0] * n
                a[i], a[j] = 1, -1
                pos.append((tuple(a), tuple(a)))
        return cls(f"GL{n}", n, pos)

    @classmethod
    def sl2(cls) -> "RootDatum":
        """SL(2): X = coroot lattice Z, alpha = 2, alpha_coroot = 1."""
        return cls("SL2", 1, [((2,), (1,))])

    @classmethod
    def pgl2(cls) -> "RootDatum":
        """PGL(2): X = coweight lattice Z, alpha = 1, alpha_coroot = 2."""
        return cls("PGL2", 1, [((1,), (2,))])

    # finite Weyl group ----------------------------------------------------

    def reflection(self, a: Vec, av: Vec) -> Mat:
        n = self.rank
        return tuple(
            tuple((1 if i == j else 0) - a[j] * av[i] for j in range(n))
            for i in range(n)
        )

    def _generate_weyl(self) -> list[Mat]:
        gens = [self.reflection(a, av) for a, av in self.simple_roots]
        seen = {_ident(self.rank)}
        frontier = [_ident(self.rank)]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    x = _matmul(g, w)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return sorted(seen)

    def w_inv(self, w: Mat) -> Mat:
        return self._w_inv[w]

    # extended affine Weyl group -------------------------------------------

    def t(self, lam: Sequence[int]) -> AffElt:
        return AffElt(tuple(lam), _ident(self.rank))

    def from_w(self, w: Mat) -> AffElt:
        return AffElt((0,) * self.rank, w)

    def mul(self, x: AffElt, y: AffElt) -> AffElt:
        return AffElt(
            tuple(a + b for a, b in zip(x.lam, _matvec(x.w, y.lam))),
            _matmul(x.w, y.w),
        )

    def inv(self, x: AffElt) -> AffElt:
        wi = self.w_inv(x.w)
        return AffElt(tuple(-a for a in _matvec(wi, x.lam)), wi)

    def length(self, x: AffElt, pos: Optional[Sequence[tuple[Vec, Vec]]] = None) -> int:
        """Iwahori-Matsumoto length, optionally relative to a subsystem."""
        roots = self.pos_roots if pos is None else pos
        total = 0
        posset = {a for a, _ in roots}
        for a, _ in roots:
            pairing = _dot(a, x.lam)
            back = _rowmat(a, x.w)
            if back in posset:
                total += abs(pairing)
            else:
                total += abs(pairing - 1)
        return total

    def translation_length(self, lam: Sequence[int]) -> int:
        return sum(abs(_dot(a, lam)) for a, _ in self.pos_roots)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(_dot(a, lam) >= 0 for a, _ in self.simple_roots)

    def dominant_rep(self, lam: Sequence[int]) -> Vec:
        """The dominant element in the W-orbit of lam."""
        best = None
        for w in self.weyl:
            mu = _matvec(w, lam)
            if all(_dot(a, mu) >= 0 for a, _ in self.simple_roots):
                best = mu
                break
        assert best is not None
        return best

    def pairing_two_rho(self, lam: Sequence[int]) -> int:
        return _dot(self.two_rho, lam)

    # Kottwitz invariant ----------------------------------------------------

    def kottwitz_invariants(self) -> tuple[int, ...]:
        """Invariant factors of X / (coroot lattice), 1s dropped, 0 = Z.

        >>> RootDatum.gl(2).kottwitz_invariants()
        (0,)
        >>> RootDatum.sl2().kottwitz_invariants()
        ()
        >>> RootDatum.pgl2().kottwitz_invariants()
        (2,)
        """
        return tuple(d for d in self._kott_d if d != 1)

    def kottwitz(self, lam: Sequence[int]) -> tuple[int, ...]:
        """Class of lam in X / (coroot lattice), as canonical residues."""
        img = [sum(self._kott_u[i][j] * lam[j] for j in range(self.rank))
               for i in range(self.rank)]
        out = []
        for x, d in zip(img, self._kott_d):
            if d == 1:
                continue
            out.append(x % d if d else x)
        return tuple(out)


def _simple_system(pos_roots: Sequence[tuple[Vec, Vec]]) -> list[tuple[Vec, Vec]]:
    # a positive root is simple iff it is not a sum of two positive roots
    vecs = {a for a, _ in pos_roots}
    out = []
    for a, av in pos_roots:
        if not any(
            tuple(x - y for x, y in zip(a, b)) in vecs for b in vecs if b != a
        ):
            out.append((a, av))
    return out


# ---------------------------------------------------------------------------
# depth-zero characters and blocks


@dataclass(frozen=True, eq=True)
class Character:
    """Character of T(F_q), q = modulus + 1, via exponents in X^* mod modulus.

    The value on lam tensor u (u a unit with discrete log L) is
    zeta_modulus ^ (<exps, lam> * L).
    """

    modulus: int
    exps: Vec

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(e % self.modulus for e in self.exps))

    def act(self, w: Mat) -> "Character":
        """chi composed with w, i.e. t -> chi(w t).

        The Weyl twist (w . chi)(t) = chi(w^-1 t) is act(w_inverse).
        """
        return Character(self.modulus, _rowmat(self.exps, w))

    def pair_coroot(self, av: Vec) -> int:
        return _dot(self.exps, av) % self.modulus


def norm_transfer(chi: Character, p: int, r: int) -> Character:
    """Level raising along the norm: exponents times 1 + p + ... + p^(r-1).

    Sends a character of T(F_p) to the character of T(F_{p^r}) obtained by
    composing with the norm map.
    """
    if chi.modulus != p - 1:
        raise ValueError("character is not at base level p - 1")
    s = (p ** r - 1) // (p - 1)
    return Character(p ** r - 1, tuple(e * s for e in chi.exps))


class Block:
    """Everything the Hecke layer needs about the block of a character chi.

    Attributes:
        w_chi: matrices of the stabilizer of chi in W.
        pos_chi: positive roots a with <chi, a_coroot> = 0.
        simple_chi: simple system of pos_chi.
        aff_gens: candidate simple affine generators of the block affine
            Weyl group (finite reflections plus t_{th_coroot} s_th for each
            component top th, both translation signs).
    """

    def __init__(self, datum: RootDatum, chi: Character):
        self.datum = datum
        self.chi = chi
        self.w_chi = [
            w for w in datum.weyl
            if all(x % chi.modulus == 0
                   for x in _vec_sub(_rowmat(chi.exps, w), chi.exps))
        ]
        self.pos_chi = [
            (a, av) for a, av in datum.pos_roots if chi.pair_coroot(av) == 0
        ]
        self.simple_chi = _simple_system(self.pos_chi)
        self.aff_gens = self._affine_generators()

    # block length ----------------------------------------------------------

    def length(self, x: AffElt) -> int:
        if x.w not in self.w_chi:
            raise ValueError("element is not in the block group")
        return self.datum.length(x, self.pos_chi)

    def translation_length(self, lam: Sequence[int]) -> int:
        return sum(abs(_dot(a, lam)) for a, _ in self.pos_chi)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(_dot(a, lam) >= 0 for a, _ in self.pos_chi)

    def dominant_decomposition(self, lam: Sequence[int]) -> tuple[Vec, Vec]:
        """lam = mu - nu with both parts dominant for the block subsystem."""
        lam = tuple(lam)
        if not self.pos_chi:
            return lam, (0,) * self.datum.rank
        delta = tuple(
            sum(av[i] for _, av in self.pos_chi) for i in range(self.datum.rank)
        )
        need = 0
        for a, _ in self.simple_chi:
            da = _dot(a, delta)
            assert da > 0
            la = _dot(a, lam)
            if la < 0:
                need = max(need, (-la + da - 1) // da)
        nu = tuple(need * d for d in delta)
        mu = tuple(x + y for x, y in zip(lam, nu))
        assert self.is_dominant(mu) and self.is_dominant(nu)
        return mu, nu

    def orbit(self, lam: Sequence[int]) -> list[Vec]:
        return sorted({_matvec(w, lam) for w in self.w_chi})

    def dominant_orbit_rep(self, lam: Sequence[int]) -> Vec:
        for mu in self.orbit(lam):
            if self.is_dominant(mu):
                return mu
        raise AssertionError("orbit without dominant point")

    # affine generators ------------------------------------------------------

    def _components(self) -> list[list[tuple[Vec, Vec]]]:
        simples = list(self.simple_chi)
        comps: list[list[tuple[Vec, Vec]]] = []
        unseen = set(range(len(simples)))
        while unseen:
            comp = [unseen.pop()]
            grew = True
            while grew:
                grew = False
                for i in list(unseen):
                    if any(_dot(simples[i][0], simples[j][1]) != 0 for j in comp):
                        comp.append(i)
                        unseen.discard(i)
                        grew = True
            comps.append([simples[i] for i in comp])
        return comps

    def _expand_in_simples(self, a: Vec) -> Optional[dict[int, int]]:
        # write a as an N-combination of simple_chi, by peeling
        simples = self.simple_chi
        vecs = {v for v, _ in self.pos_chi}
        counts: dict[int, int] = {}
        cur = a
        guard = 0
        while any(cur):
            guard += 1
            if guard > 200:
                return None
            for i, (b, _) in enumerate(simples):
                if cur == b:
                    counts[i] = counts.get(i, 0) + 1
                    cur = (0,) * len(a)
                    break
                rem = tuple(x - y for x, y in zip(cur, b))
                if rem in vecs:
                    counts[i] = counts.get(i, 0) + 1
                    cur = rem
                    break
            else:
                return None
        return counts

    def _affine_generators(self) -> list[AffElt]:
        rd = self.datum
        gens = [rd.from_w(rd.reflection(a, av)) for a, av in self.simple_chi]
        simples = self.simple_chi
        for comp in self._components():
            idx = {simples.index(s) for s in comp}
            best = None
            best_ht = -1
            for a, av in self.pos_chi:
                counts = self._expand_in_simples(a)
                if counts is None or not set(counts) <= idx:
                    continue
                ht = sum(counts.values())
                if ht > best_ht:
                    best, best_ht = (a, av), ht
            assert best is not None
            th, thv = best
            s_th = rd.reflection(th, thv)
            gens.append(AffElt(thv, s_th))
            gens.append(AffElt(tuple(-x for x in thv), s_th))
        return gens

    def left_descent(self, x: AffElt) -> Optional[AffElt]:
        """Some generator s with len(s x) < len(x), if one exists."""
        lx = self.length(x)
        for s in self.aff_gens:
            if self.length(self.datum.mul(s, x)) < lx:
                return s
        return None


def _vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))
