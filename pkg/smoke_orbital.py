"""Staged orbital smoke: goldens, convolution, constant terms, traces, descent, FL."""

import os
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from heckebc.basechange import base_change_poly
from heckebc.coeff import Cyc, LaurentV, MultiLaurent, SqrtScalar
from heckebc.constterm import ct_center, ct_integral, levi_algebra, realize_torus
from heckebc.hecke import HeckeAlgebra
from heckebc.orbital import (
    RealizedFunction,
    convolve_eval,
    elliptic_class,
    quadratic_generator,
    split_class,
    twisted_orbital,
    verify_descent,
    verify_fundamental_lemma,
    verify_nonnorm_char_vanishing,
    verify_trace_identities,
    _run_twisted,
    _scalar_eq,
)
from heckebc.padic import (
    Mat2,
    PadicContext,
    cell_aff,
    cell_matrix,
    chi_exponent,
    norm_elt,
    schubert_cosets,
)
from heckebc.rootdata import Block, Character, RootDatum, norm_transfer

GL2 = RootDatum.gl(2)
T0 = time.time()


def check(name, ok):
    print(f"[{time.time() - T0:7.1f}s]", "PASS" if ok else "FAIL", name)
    if not ok:
        raise SystemExit(1)


# ---- stage A: level-one orbital goldens and level-r twisted goldens ----------

SKIP_A = bool(os.environ.get("SKIP_A"))

for p, exps in () if SKIP_A else ((3, (0, 0)), (3, (1, 0)), (5, (1, 3))):
    ctx = PadicContext(p, 1)
    chi = Character(p - 1, exps)
    phi = RealizedFunction.elementary(ctx, chi, (1, 0))
    for units in ((1, 1), (2, 1), (1, p - 1)):
        delta = split_class(ctx, (1, 0), units)
        mm = Mat2.diag(ctx.from_int(units[0]), ctx.from_int(units[1]))
        golden = Cyc.root(p - 1, -chi_exponent(chi, mm))
        run = _run_twisted(phi, delta)
        ok = _scalar_eq(run.value, golden)
        check(f"golden O p={p} exps={exps} units={units} "
              f"(orbits={run.orbits} R={run.radius})", ok)

for p in () if SKIP_A else (2, 3):
    ctx = PadicContext(p, 2)
    m = p * p - 1
    for exps in ((0, 0), (1, 0)):
        chi1 = Character(p - 1, tuple(e % (p - 1) if p > 2 else 0 for e in exps))
        chi_r = norm_transfer(chi1, p, 2)
        phi = RealizedFunction.elementary(ctx, chi_r, (1, 0))
        for units in (((1,), (1,)), ((1, 1), (1,)), ((0, 1), (1, 1))):
            if not any(units[0]) or not any(units[1]):
                continue
            delta = split_class(ctx, (1, 0), units)
            mm = Mat2.diag(ctx.from_coeffs(units[0]), ctx.from_coeffs(units[1]))
            golden = Cyc.root(m, -chi_exponent(chi_r, mm))
            run = _run_twisted(phi, delta)
            ok = _scalar_eq(run.value, golden)
            check(f"golden TO p={p} r=2 exps={chi_r.exps} units={units} "
                  f"(orbits={run.orbits} R={run.radius})", ok)

# ---- stage B: convolution homomorphism (pins the d(x) normalization) ---------

for p, r, exps in ((3, 1, (0, 0)), (3, 1, (1, 2)), (2, 2, (1, 0))):
    ctx = PadicContext(p, r)
    m = p**r - 1
    chi = Character(m, tuple(e % m for e in exps))
    alg = HeckeAlgebra(Block(GL2, chi))
    h1 = alg.T(cell_aff((1, 0), False))
    turn = len(alg.block.w_chi) > 1   # flip only if it fixes chi
    h2 = alg.T(cell_aff((0, 1), turn))
    prod = alg.mul(h1, h2)
    f1 = RealizedFunction.from_hecke(alg, h1, ctx)
    f2 = RealizedFunction.from_hecke(alg, h2, ctx)
    fp = RealizedFunction.from_hecke(alg, prod, ctx)
    pts = [cell_matrix(ctx, lam, t) for lam, t in fp.coeffs]
    pts.append(cell_matrix(ctx, (1, 1), False))
    extra = Mat2.upper(ctx.from_int(1)) * cell_matrix(ctx, (1, 1), True)
    pts.append(extra * Mat2.lower(ctx.from_coeffs((1,), 1)))
    ok = all(_scalar_eq(fp(y), convolve_eval(f1, f2, y)) for y in pts)
    check(f"convolution homomorphism p={p} r={r} exps={chi.exps}", ok)

# ---- stage C: constant term agreement ----------------------------------------

for p, r, exps in ((2, 1, (0,)), (3, 1, (1, 0)), (2, 2, (1, 0)), (3, 2, (0, 0))):
    ctx = PadicContext(p, r)
    m = p**r - 1
    chi = Character(m, tuple((exps * 2)[:2])) if len(exps) < 2 else Character(m, exps)
    chi = Character(m, tuple(e % m for e in chi.exps))
    alg = HeckeAlgebra(Block(GL2, chi))
    t_alg = levi_algebra(alg, [])
    z = alg.central_orbit_sum((1, 0))
    zt = ct_center(alg, t_alg, z)
    model = t_alg.beta_inv(zt)
    fn = RealizedFunction.from_hecke(alg, z, ctx)
    f_b = ct_integral(fn, ctx, coset_val=0)
    f_t = realize_torus(ctx, chi, model)
    pts = []
    for lam in ((1, 0), (0, 1), (0, 0), (2, -1), (1, 1)):
        pts.append(Mat2.diag(ctx.uniformizer(lam[0]), ctx.uniformizer(lam[1])))
    if p > 2:
        pts.append(Mat2.diag(ctx.from_coeffs((2,), 1), ctx.from_int(1)))
    ok = all(_scalar_eq(f_b(t), f_t(t)) for t in pts)
    check(f"constant term realization p={p} r={r} exps={chi.exps}", ok)

# ---- stage D: trace identities ------------------------------------------------

for p, r, exps, level in ((3, 1, (0, 0), 5), (5, 1, (1, 3), 8), (2, 2, (0, 0), 7), (3, 2, (1, 0), 5)):
    chi = Character(p - 1, tuple(e % (p - 1) if p > 2 else 0 for e in exps))
    eta = (Cyc.root(level, 1), Cyc.root(level, level - 2))
    reps = verify_trace_identities(p, r, chi, eta, (1, 0))
    for rep in reps:
        check(f"trace {rep.name} p={p} r={r} exps={chi.exps} {rep.params.get('nu', '')}", rep.equal)

# ---- stage E: parabolic descent -----------------------------------------------

for p in (2, 3):
    ctx = PadicContext(p, 2)
    chi_r = norm_transfer(Character(p - 1, (0,) * 2 if p > 2 else (0, 0)), p, 2)
    alg = HeckeAlgebra(Block(GL2, chi_r))
    cases = (
        ((1, 0), (-1, 0), (1, 1)),
        ((1, 0), (0, -1), ((1, 1), (1,))),
        ((2, 0), (-2, 0), (1, 1)),
        ((2, 0), (0, -2), (1, 1)),
        ((1, 0), (-2, 1), (1, 1)),   # off support: both sides vanish
    )
    for mu, lam, units in cases:
        model = alg.beta_inv(alg.central_orbit_sum(mu))
        delta = split_class(ctx, lam, units)
        rep = verify_descent(ctx, chi_r, model, delta)
        nz = "nonzero" if _scalar_eq(rep.left, rep.left) and not _scalar_eq(rep.left, 0) else "zero"
        check(f"descent p={p} mu={mu} lam={lam} L={nz} "
              f"(R={rep.radius}, {rep.wall_time:.1f}s)", rep.equal)

# ---- stage F: fundamental lemma -----------------------------------------------

def find_elliptic(ctx, want_det_val, count):
    out = []
    p = ctx.p
    for x0 in range(p):
        for x1 in range(p):
            for y0 in range(p):
                for y1 in range(p):
                    if not any((y0, y1)):
                        continue
                    try:
                        d = elliptic_class(ctx, (x0, x1), (y0, y1))
                    except ValueError:
                        continue
                    if d.det().valuation() == want_det_val:
                        out.append(((x0, x1), (y0, y1), d))
                        if len(out) >= count:
                            return out
    return out


for p in (2, 3):
    ctx = PadicContext(p, 2)
    chi1 = Character(p - 1, (0, 0))
    chi_r = norm_transfer(chi1, p, 2)
    alg = HeckeAlgebra(Block(GL2, chi_r))
    model = alg.beta_inv(alg.central_orbit_sum((1, 0)))
    # the realized functions live on det valuation -1 (level r) and -2
    # (level one), so classes get a central p^-1 rescale
    zinv = Mat2.diag(ctx.uniformizer(-1), ctx.uniformizer(-1))
    deltas = [zinv * d for _, _, d in find_elliptic(ctx, 1, 2)]
    deltas.append(split_class(ctx, (-1, 0)))
    deltas.append(split_class(ctx, (0, -1), ((1, 1), (1,))))
    ctx1 = PadicContext(p, 1)
    nn = [Mat2.diag(ctx1.uniformizer(-1), ctx1.from_int(1))]
    reps = verify_fundamental_lemma(ctx, chi1, model, deltas, nn)
    for rep in reps:
        check(f"FL p={p} {rep.name} class={rep.params['class']} "
              f"L={rep.left} R={rep.right} ({rep.wall_time:.1f}s)", rep.equal)

# character not fixed by Frobenius: every twisted integral vanishes
for p in (2, 3):
    ctx = PadicContext(p, 2)
    chi_p = Character(p * p - 1, (1, 0))
    deltas = [d for _, _, d in find_elliptic(ctx, 1, 1)]
    deltas.append(split_class(ctx, (1, 0)))
    for rep in verify_nonnorm_char_vanishing(ctx, chi_p, deltas):
        check(f"char vanishing p={p} class={rep.params['class']} L={rep.left}",
              rep.equal)

print(f"[{time.time() - T0:7.1f}s] all orbital smoke stages passed")
