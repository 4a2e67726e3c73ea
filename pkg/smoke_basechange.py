"""Throwaway smoke checks for the base change layer."""
import random
import sys

sys.path.insert(0, "src")

from heckebc.basechange import (
    PlusLevelElement, base_change, br_characterization, br_compat_conj,
    br_compat_iota, br_plus, ch_eval, conj_center, conjugate_block,
    iota_center, is_frobenius_fixed, norm_preimage, power_character,
    support_norm_check,
)
from heckebc.coeff import Cyc, LaurentV
from heckebc.hecke import HeckeAlgebra
from heckebc.rootdata import Block, Character, RootDatum

random.seed(7)

rd = RootDatum.gl(2)

# -- b_r characterization on a nontrivial block, including v coefficients ----
p = 5
chi = Character(p - 1, (1, 3))
alg = HeckeAlgebra(Block(rd, chi))
z = alg.central_orbit_sum((2, 0)) + alg.central_orbit_sum((1, 1)) * LaurentV({1: 2})
assert alg.is_central(z)
for r in (2, 3):
    bz = base_change(alg, z, r)
    assert alg.is_central(bz)
    for _ in range(12):
        xi = tuple(Cyc.root(840, random.randrange(840)) for _ in range(2))
        assert br_characterization(alg, z, r, xi)

# v_r -> v^r on coefficients: z has a coefficient v on the (1,1) orbit sum
f2 = alg.beta_inv(base_change(alg, z, 2))
assert f2.coeff((2, 2)) == LaurentV({2: 2}), f2.coeff((2, 2))
assert f2.coeff((4, 0)) == LaurentV({0: 1})

# -- iota and conjugation squares --------------------------------------------
w_s = ((0, 1), (1, 0))
for r in (2, 3):
    assert br_compat_iota(alg, z, r)
    assert br_compat_conj(alg, z, w_s, r)

# conj lands in the right block and matches a direct orbit-sum transport
target = conjugate_block(alg, w_s)
assert target.block.chi == chi.act(w_s)
zc = conj_center(alg, alg.central_orbit_sum((2, 0)), w_s, target)
assert zc == target.central_orbit_sum((0, 2))

# iota negates exponents
zi = iota_center(alg, alg.central_orbit_sum((2, 0)))
assert zi == alg.central_orbit_sum((-2, 0))

# -- support_norm_check -------------------------------------------------------
assert support_norm_check(rd, base_change(alg, z, 2), 2)
assert not support_norm_check(rd, alg.central_orbit_sum((1, 0)), 2)
# torsion: in PGL2 the invariant factor is 2, so r=3 restricts nothing
rd_p = RootDatum.pgl2()
alg_p = HeckeAlgebra(Block(rd_p, Character(2, (1,))))
assert support_norm_check(rd_p, alg_p.central_orbit_sum((1,)), 3)
assert not support_norm_check(rd_p, alg_p.central_orbit_sum((1,)), 2)

# -- Frobenius-fixedness and norm preimages ------------------------------------
p, r = 3, 2
m = p ** r - 1
fixed = [Character(m, (a, b)) for a in range(m) for b in range(m)
         if is_frobenius_fixed(Character(m, (a, b)), p)]
# exponents fixed by *p mod 8: multiples of 4 -> 2 choices per slot
assert len(fixed) == 4, len(fixed)
for chi_r in fixed:
    chi0 = norm_preimage(chi_r, p, r)
    assert chi0 is not None
    s = (p ** r - 1) // (p - 1)
    assert Character(m, tuple(e * s for e in chi0.exps)) == chi_r
nonfixed = Character(m, (1, 0))
assert not is_frobenius_fixed(nonfixed, p)
assert norm_preimage(nonfixed, p, r) is None

# -- PlusLevelElement membership and br_plus -----------------------------------
# Build a genuine member: take any central z_chi for one chi per W-orbit and
# spread it by transport.
def spread(datum, modulus, seeds):
    comps = {}
    for chi, z in seeds.items():
        alg_c = z.algebra
        f = alg_c.beta_inv(z)
        for w in datum.weyl:
            chi_w = chi.act(datum._w_inv[w])
            alg_w = HeckeAlgebra(Block(datum, chi_w))
            comps[chi_w] = alg_w.beta(f.act(w))
    return PlusLevelElement(datum, modulus, comps)

m = 8  # level r = 2 over p = 3
chi_fix = Character(m, (4, 0))     # norm character, regular (4 != 0 slotwise)
chi_non = Character(m, (1, 0))     # not Frobenius fixed
alg_fix = HeckeAlgebra(Block(rd, chi_fix))
alg_non = HeckeAlgebra(Block(rd, chi_non))
elt = spread(rd, m, {
    chi_fix: alg_fix.central_orbit_sum((2, 0)),
    chi_non: alg_non.central_orbit_sum((1, 1)),
})
assert elt.is_member()

# a deliberate violation: overwrite one component
bad = dict(elt.components)
bad[chi_fix.act(rd._w_inv[((0, 1), (1, 0))])] = alg_fix.central_orbit_sum((1, 1))
assert not PlusLevelElement(rd, m, bad).is_member()

down = br_plus(elt, 3, 2)
assert down.modulus == 2
assert down.is_member()
# the non-norm component was discarded; the norm one maps to chi0 = (2,0) mod 2 = (0,0)
chi0 = norm_preimage(chi_fix, 3, 2)
assert set(down.components) <= {chi0.act(w) for w in rd.weyl}
f_down = down.component_poly(chi0)
assert f_down.coeff((4, 0)) == LaurentV({0: 1})  # exponents doubled

print("basechange OK")
