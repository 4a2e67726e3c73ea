"""Throwaway smoke for norms and coset enumeration."""
import itertools

from heckebc.padic import (
    Mat2,
    aff_cell,
    PadicContext,
    cell_matrix,
    gallery_cosets,
    iwahori_factor,
    norm_elt,
    reduced_word,
    schubert_cosets,
    torus_norm_fibers,
)
from heckebc.rootdata import AffElt, RootDatum

GL2 = RootDatum.gl(2)
FLIP = ((0, 1), (1, 0))

# --- norm_elt ---------------------------------------------------------------
for p, r in [(2, 2), (3, 2), (2, 3), (5, 2)]:
    ctx = PadicContext(p, r)
    # identity
    n1 = norm_elt(Mat2.identity(ctx))
    assert n1 == None or True
    assert (n1.a - ctx.one()).val is None or (n1.a - ctx.one()).unit is None

    # diagonal of residue units: entrywise residue norm y^(1+p+...+p^{r-1})
    s = (p ** r - 1) // (p - 1)
    for res in ctx.residue_elements[1 : 4]:
        if not any(res):
            continue
        u = ctx.lift_residue(res)
        nu = norm_elt(Mat2.diag(u, ctx.one()))
        j = ctx.dlog(res)
        want = ctx._dlog_pow[(j * s) % (ctx.q - 1)]
        assert nu.a.residue() == want, (res, nu.a.residue(), want)
        assert nu.a.valuation() == 0

    # base field element x -> x^r exactly
    x = ctx.from_int(1 + p)
    nx = norm_elt(Mat2.diag(x, x))
    want = ctx.from_int((1 + p) ** r)
    assert nx.a == want and nx.d == want

    # N(theta(d)) = d^-1 N(d) d for a few random-ish d
    for seed in range(3):
        a = ctx.from_int(2 + seed) + ctx.uniformizer()
        b = ctx.from_coeffs(tuple((seed + i + 1) % (p * p) for i in range(r)))
        d = Mat2(a, b, ctx.uniformizer(), ctx.from_int(1) + ctx.uniformizer(2))
        assert d.det().valuation() is not None
        lhs = norm_elt(d.frob())
        rhs = d.inverse() * norm_elt(d) * d
        for u, v in zip(lhs.entries(), rhs.entries()):
            assert u == v, (p, r, seed, u, v)
print("norm_elt ok")

# --- torus_norm_fibers --------------------------------------------------------
for p, r in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]:
    ctx = PadicContext(p, r)
    fib = torus_norm_fibers(ctx)
    s = (p ** r - 1) // (p - 1)
    assert len(fib) == p - 1
    assert all(len(v) == s for v in fib.values())
    # disjoint union is all of k_r^x
    seen = set()
    for v in fib.values():
        seen.update(v)
    assert len(seen) == p ** r - 1
print("torus_norm_fibers ok")

# --- reduced_word -------------------------------------------------------------
cases = [
    (GL2.t((0, 0)), 0),
    (AffElt((0, 0), FLIP), 1),
    (AffElt((1, -1), FLIP), 1),
    (GL2.t((1, 0)), 1),
    (GL2.t((1, 1)), 0),
    (GL2.t((2, 0)), 2),
    (GL2.t((0, 2)), 2),
    (GL2.t((3, -1)), 4),
    (AffElt((2, 0), FLIP), 1),
    (AffElt((2, 1), FLIP), 0),
    (GL2.t((-1, 0)), 1),
    (AffElt((-2, 1), FLIP), 4),
]
for x, want_len in cases:
    letters, k = reduced_word(x)
    assert len(letters) == GL2.length(x) == want_len, (x, letters, k, want_len)
    # multiply back
    acc = GL2.t((0, 0))
    gens = {"s": AffElt((0, 0), FLIP), "s0": AffElt((1, -1), FLIP)}
    for ltr in letters:
        acc = GL2.mul(acc, gens[ltr])
    om = AffElt((1, 0), FLIP)
    step = om if k >= 0 else GL2.inv(om)
    for _ in range(abs(k)):
        acc = GL2.mul(acc, step)
    assert acc == x, (x, letters, k, acc)
print("reduced_word ok")

# --- gallery / schubert -------------------------------------------------------
ctx = PadicContext(3, 1)
for x in [GL2.t((0, 0)), AffElt((0, 0), FLIP), GL2.t((1, 0)), GL2.t((1, -1)),
          AffElt((1, 0), FLIP), GL2.t((2, 0))]:
    reps = schubert_cosets(ctx, x)
    q = ctx.q
    ell = GL2.length(x)
    assert len(reps) == q ** ell, (x, len(reps))
    # every rep factors back to the cell of x
    lam_want, turn_want = aff_cell(x)
    for g in reps:
        i1, lam, turn, i2 = iwahori_factor(g, check=True)
        assert lam == lam_want and turn == turn_want, (x, lam, turn)
    # pairwise distinct cosets: g_i^-1 g_j not in I
    for g1, g2 in itertools.combinations(reps, 2):
        assert not (g1.inverse() * g2).in_iwahori(), x
print("schubert GL2(Q3) ok")

# r = 2: q = 9, check a length-2 cell and key ordering
ctx = PadicContext(3, 2)
x = GL2.t((1, -1))
pairs = gallery_cosets(ctx, x)
keys = [k for k, _ in pairs]
assert len(pairs) == 81 and keys == sorted(keys)
seen_cells = set()
for key, g in pairs:
    i1, lam, turn, i2 = iwahori_factor(g)
    seen_cells.add((lam, turn))
assert seen_cells == {((-1, 1), False)}, seen_cells
for (k1, g1), (k2, g2) in itertools.combinations(pairs[:20], 2):
    assert not (g1.inverse() * g2).in_iwahori()
print("gallery GL2(Q9) ok")

# identity cell has the single rep 1; omega cells are single cosets
reps = schubert_cosets(ctx, GL2.t((0, 0)))
assert len(reps) == 1 and reps[0].in_iwahori()
reps = schubert_cosets(ctx, AffElt((1, 0), FLIP))
assert len(reps) == 1
i1, lam, turn, i2 = iwahori_factor(reps[0], check=True)
assert lam == (-1, 0) and turn
# antidiagonal (0,1;p,0): the s0-related cell
g = Mat2(ctx.zero(), ctx.one(), ctx.uniformizer(), ctx.zero())
i1, lam, turn, i2 = iwahori_factor(g, check=True)
assert turn and sorted(lam) == [0, 1], (lam, turn)
print("cells ok")

# bound errors
try:
    schubert_cosets(ctx, GL2.t((9, -9)), max_length=4)
except ValueError as e:
    print("bound error ok:", e)
else:
    raise SystemExit("missing bound error")

print("ALL PADIC2 SMOKE PASSED")
