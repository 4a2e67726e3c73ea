"""Command line driver: configured verification suites with stable reports.

A run is described by one JSON config file; there is no environment
based configuration.  Every suite emits rows of exact scalars, the rows
are serialized with sorted keys and canonical scalar encodings, and no
timing data enters the output, so identical configs produce identical
report bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .basechange import (
    base_change,
    base_change_poly,
    br_compat_conj,
    br_compat_iota,
    br_plus,
    ch_eval,
    norm_preimage,
    power_character,
    support_norm_check,
    PlusLevelElement,
)
from .coeff import Cyc, LaurentV, MultiLaurent, SqrtScalar
from .constterm import ct_center, ct_integral, levi_algebra, realize_torus
from .hecke import HeckeAlgebra, HeckeElt
from .orbital import (
    RealizedFunction,
    VerificationReport,
    elliptic_class,
    split_class,
    verify_descent,
    verify_elementary,
    verify_fundamental_lemma,
    verify_nonnorm_char_vanishing,
    verify_trace_identities,
    _scalar_eq,
)
from .padic import Mat2, PadicContext
from .rootdata import Block, Character, RootDatum, norm_transfer

__all__ = [
    "ClassSpec",
    "ConfigError",
    "RunConfig",
    "SUITES",
    "encode_value",
    "load_config",
    "main",
    "parse_rows",
    "render_csv",
    "render_jsonl",
    "run",
]

SUITES = (
    "center",
    "basechange",
    "constterm",
    "descent",
    "elementary",
    "fl",
    "traces",
    "plus-level",
)

_GROUPS = {
    "gl2": lambda: RootDatum.gl(2),
    "sl2": RootDatum.sl2,
    "pgl2": RootDatum.pgl2,
}


class ConfigError(Exception):
    """An invalid run configuration; one message per offending field."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


# config -----------------------------------------------------------------------


@dataclass(frozen=True)
class ClassSpec:
    """A conjugacy class descriptor, split torus or unramified elliptic."""

    kind: str
    lam: tuple[int, ...] = ()
    units: tuple = ()
    x: tuple[int, ...] = ()
    y: tuple[int, ...] = ()
    shift: int = 0

    def matrix(self, ctx: PadicContext) -> Mat2:
        if self.kind == "split":
            units = self.units or ((1,), (1,))
            g = split_class(ctx, self.lam, units)
        else:
            g = elliptic_class(ctx, self.x, self.y)
        if self.shift:
            u = ctx.uniformizer(self.shift)
            g = Mat2.diag(u, u) * g
        return g


@dataclass
class RunConfig:
    """One validated run: group data, the prime, and the work lists."""

    group: str = "gl2"
    rank: int = 2
    p: int = 3
    r: int = 1
    precision: int = 24
    chi: tuple[int, ...] = ()
    chi_level: int = 0
    chi_prime: Optional[tuple[int, ...]] = None
    mu: tuple[tuple[int, ...], ...] = ((1, 0),)
    nu: tuple[tuple[int, ...], ...] = ((1, 0),)
    classes: tuple[ClassSpec, ...] = ()
    nonnorm: tuple[tuple[int, int], ...] = ()
    eta: Optional[tuple[int, tuple[int, ...]]] = None
    radius: Optional[int] = None
    points: int = 20
    seed: int = 0
    out: str = "reports"

    def base_character(self) -> Character:
        m = self.p - 1
        if self.chi_level in (0, m):
            return Character(max(m, 1), self.chi)
        pre = norm_preimage(Character(self.chi_level, self.chi), self.p, self.r)
        assert pre is not None, "validation admits norm characters only"
        return pre

    def eta_values(self) -> tuple:
        if self.eta is None:
            return tuple(Cyc.one() for _ in range(self.rank))
        level, exps = self.eta
        return tuple(Cyc.root(level, e) for e in exps)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def _int_list(raw, n: int) -> tuple[int, ...]:
    if not isinstance(raw, list) or len(raw) != n:
        raise ValueError(f"expected a list of {n} integers")
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in raw):
        raise ValueError(f"expected a list of {n} integers")
    return tuple(raw)


def _unit_part(raw) -> tuple:
    if isinstance(raw, int) and not isinstance(raw, bool):
        return (raw,)
    if not isinstance(raw, list) or not raw:
        raise ValueError("unit parts are integers or nonempty coefficient lists")
    return _int_list(raw, len(raw))


def _parse_class(raw, where: str, problems: list[str]) -> Optional[ClassSpec]:
    if not isinstance(raw, dict):
        problems.append(f"{where}: expected an object")
        return None
    kind = raw.get("kind")
    if kind not in ("split", "elliptic"):
        problems.append(f"{where}.kind: expected split or elliptic")
        return None
    shift = raw.get("shift", 0)
    if not isinstance(shift, int) or isinstance(shift, bool):
        problems.append(f"{where}.shift: expected an integer")
        return None
    try:
        if kind == "split":
            lam = _int_list(raw.get("lam"), 2)
            units = raw.get("units")
            parts = ((1,), (1,)) if units is None else tuple(_unit_part(u) for u in units)
            if len(parts) != 2:
                raise ValueError("expected two unit parts")
            return ClassSpec("split", lam=lam, units=parts, shift=shift)
        x = tuple(raw.get("x", ()))
        y = tuple(raw.get("y", ()))
        if not y or not all(isinstance(a, int) for a in x + y):
            raise ValueError("expected integer coefficient tuples x and y")
        return ClassSpec("elliptic", x=x, y=y, shift=shift)
    except ValueError as e:
        problems.append(f"{where}: {e}")
        return None


def load_config(path: str) -> RunConfig:
    """Parse and validate a JSON config; raises ConfigError on any defect."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError([f"config: {e}"])
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"config: line {e.lineno} column {e.colno}: {e.msg}"])
    if not isinstance(raw, dict):
        raise ConfigError(["config: the top level must be an object"])

    problems: list[str] = []
    known = {f.name for f in fields(RunConfig)}
    for key in sorted(set(raw) - known):
        problems.append(f"{key}: unknown field")

    def take(name, default, kinds, check=None, why=""):
        val = raw.get(name, default)
        if not isinstance(val, kinds) or isinstance(val, bool):
            problems.append(f"{name}: expected {why or kinds}")
            return default
        if check is not None and not check(val):
            problems.append(f"{name}: {why}")
            return default
        return val

    group = take("group", "gl2", str, lambda g: g in _GROUPS,
                 "expected one of " + ", ".join(sorted(_GROUPS)))
    datum = _GROUPS[group]() if group in _GROUPS else _GROUPS["gl2"]()
    rank = take("rank", datum.rank, int, lambda n: n == datum.rank,
                f"group {group} has rank {datum.rank}")
    p = take("p", 3, int, _is_prime, "must be a prime")
    r = take("r", 1, int, lambda n: 1 <= n <= 3, "must be between 1 and 3")
    precision = take("precision", 24, int, lambda n: n >= 8, "must be at least 8")
    points = take("points", 20, int, lambda n: n >= 1, "must be positive")
    seed = take("seed", 0, int)
    out = take("out", "reports", str, lambda s: bool(s), "must be a nonempty path stem")

    radius = raw.get("radius")
    if radius is not None and (not isinstance(radius, int) or isinstance(radius, bool) or radius < 0):
        problems.append("radius: expected null or a nonnegative integer")
        radius = None

    level = take("chi_level", 0, int)
    if level not in (0, p - 1, p**r - 1):
        problems.append(f"chi_level: expected {p - 1} or {p**r - 1}")
        level = 0
    modulus = max(level or p - 1, 1)
    try:
        chi = _int_list(raw.get("chi", [0] * rank), rank)
        if any(not 0 <= e < modulus for e in chi):
            problems.append(f"chi: exponents must be reduced mod {modulus}")
    except ValueError as e:
        problems.append(f"chi: {e}")
        chi = (0,) * rank
    if level == p**r - 1 and level != p - 1 and not problems:
        if norm_preimage(Character(level, chi), p, r) is None:
            problems.append("chi: not in the image of the norm transfer")

    chi_prime = raw.get("chi_prime")
    if chi_prime is not None:
        try:
            chi_prime = _int_list(chi_prime, rank)
        except ValueError as e:
            problems.append(f"chi_prime: {e}")
            chi_prime = None

    def take_vectors(name, default, length):
        vecs = raw.get(name, default)
        if not isinstance(vecs, list):
            problems.append(f"{name}: expected a list of integer vectors")
            return tuple(tuple(v) for v in default)
        out = []
        for i, v in enumerate(vecs):
            try:
                out.append(_int_list(v, length))
            except ValueError as e:
                problems.append(f"{name}[{i}]: {e}")
        return tuple(out)

    mu = take_vectors("mu", [[1, 0][:rank] + [0] * (rank - 2)], rank)
    nu = take_vectors("nu", [[1, 0]], 2)
    nonnorm = take_vectors("nonnorm", [], 2)
    if not mu:
        problems.append("mu: must list at least one cocharacter")
    if not nu:
        problems.append("nu: must list at least one cocharacter")

    classes = []
    raw_classes = raw.get("classes", [])
    if not isinstance(raw_classes, list):
        problems.append("classes: expected a list of class descriptors")
        raw_classes = []
    for i, item in enumerate(raw_classes):
        spec = _parse_class(item, f"classes[{i}]", problems)
        if spec is not None:
            if spec.kind == "elliptic" and r != 2:
                problems.append(f"classes[{i}]: elliptic descriptors need r = 2")
            else:
                classes.append(spec)

    eta = raw.get("eta")
    if eta is not None:
        if (not isinstance(eta, dict) or not isinstance(eta.get("level"), int)
                or eta["level"] < 1):
            problems.append("eta: expected an object with a positive level and exps")
            eta = None
        else:
            try:
                eta = (eta["level"], _int_list(eta.get("exps"), rank))
            except ValueError as e:
                problems.append(f"eta.exps: {e}")
                eta = None

    if problems:
        raise ConfigError(problems)
    return RunConfig(
        group=group, rank=rank, p=p, r=r, precision=precision, chi=chi,
        chi_level=level, chi_prime=chi_prime, mu=mu, nu=nu,
        classes=tuple(classes), nonnorm=nonnorm, eta=eta, radius=radius,
        points=points, seed=seed, out=out,
    )


# serialization ------------------------------------------------------------------


def encode_value(x):
    """A stable JSON form for exact scalars.

    Rationals become num/den strings, cyclotomics coordinate arrays at
    their level, sqrt-extended scalars a pair of cyclotomics, and
    algebra elements sorted term lists.
    """
    if x is None or isinstance(x, bool):
        return x
    if isinstance(x, int):
        return f"{x}/1"
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Cyc):
        return {"coords": [encode_value(Fraction(c)) for c in x.c], "level": x.m}
    if isinstance(x, SqrtScalar):
        return {"plain": encode_value(x.a), "root": x.p, "scaled": encode_value(x.b)}
    if isinstance(x, LaurentV):
        return {"v": {str(k): encode_value(x.c[k]) for k in sorted(x.c)}}
    if isinstance(x, MultiLaurent):
        return {"x": {",".join(map(str, k)): encode_value(x.c[k]) for k in sorted(x.c)}}
    if isinstance(x, HeckeElt):
        return {"terms": [
            [list(t.lam), [list(row) for row in t.w], encode_value(x.coeff(t))]
            for t in x.support()
        ]}
    if isinstance(x, str):
        return x
    if isinstance(x, (list, tuple)):
        return [encode_value(a) for a in x]
    raise TypeError(f"cannot serialize a {type(x).__name__}")


def _encode_param(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Character):
        return {"exps": list(x.exps), "level": x.modulus}
    if isinstance(x, dict):
        return {str(k): _encode_param(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode_param(a) for a in x]
    return str(x)


def _report_row(suite: str, rep: VerificationReport) -> dict:
    # wall_time stays out: reports must be byte stable across runs
    return {
        "equal": bool(rep.equal),
        "left": encode_value(rep.left),
        "name": rep.name,
        "params": _encode_param(rep.params),
        "radius": rep.radius,
        "right": encode_value(rep.right),
        "suite": suite,
    }


def render_jsonl(rows: Sequence[dict]) -> str:
    """Canonical JSON lines: sorted keys, compact separators, one row a line."""
    return "".join(
        json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n" for row in rows
    )


def parse_rows(path: str) -> list[dict]:
    """Read a JSON lines report back; raises ConfigError with the bad line."""
    rows = []
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError([f"report: {e}"])
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise ConfigError([f"report: line {n}: {e.msg}"])
    return rows


def _cell(x) -> str:
    return x if isinstance(x, str) else json.dumps(x, sort_keys=True, separators=(",", ":"))


def render_csv(rows: Sequence[dict]) -> str:
    """One summary line per report row; an empty run gives an empty file."""
    if not rows:
        return ""
    cols = sorted(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in cols])
    return buf.getvalue()


# suites -------------------------------------------------------------------------


def _require_gl2(cfg: RunConfig, suite: str) -> None:
    if cfg.group != "gl2":
        raise ConfigError([f"group: suite {suite} runs on gl2 only"])


def _algebra(cfg: RunConfig, level_r: bool = False) -> HeckeAlgebra:
    chi = cfg.base_character()
    if level_r:
        chi = norm_transfer(chi, cfg.p, cfg.r)
    return HeckeAlgebra(Block(_GROUPS[cfg.group](), chi))


def _report(name, params, left, right, equal, radius=None) -> VerificationReport:
    return VerificationReport(name, params, left, right, equal, radius)


def _suite_center(cfg: RunConfig) -> list[VerificationReport]:
    alg = _algebra(cfg)
    out = []
    for mu in cfg.mu:
        z = alg.central_orbit_sum(mu)
        ok = alg.is_central(z)
        out.append(_report(
            "orbit-sum-central",
            {"group": cfg.group, "p": cfg.p, "chi": list(alg.block.chi.exps), "mu": list(mu)},
            ok, True, ok,
        ))
    return out


def _suite_basechange(cfg: RunConfig) -> list[VerificationReport]:
    alg = _algebra(cfg)
    rng = random.Random(cfg.seed * 1000003 + cfg.p * 1009 + cfg.r)
    out = []
    for mu in cfg.mu:
        z = alg.central_orbit_sum(mu)
        b = base_change(alg, z, cfg.r)
        for i in range(cfg.points):
            xi = tuple(
                Fraction(rng.randint(1, 60), rng.randint(1, 60))
                for _ in range(cfg.rank)
            )
            left = ch_eval(alg, b, xi)
            right = ch_eval(alg, z, power_character(xi, cfg.r))
            if isinstance(right, LaurentV):
                right = right.substitute_power(cfg.r)
            out.append(_report(
                "characterization-point",
                {"mu": list(mu), "point": [str(q) for q in xi], "index": i},
                left, right, left == right,
            ))
        ok = support_norm_check(alg.rd, b, cfg.r)
        out.append(_report(
            "support-norm-cells", {"mu": list(mu), "r": cfg.r}, ok, True, ok,
        ))
    return out


def _suite_constterm(cfg: RunConfig) -> list[VerificationReport]:
    alg = _algebra(cfg)
    t_alg = levi_algebra(alg, [])
    out = []
    for mu in cfg.mu:
        z = alg.central_orbit_sum(mu)
        base = {"group": cfg.group, "p": cfg.p, "r": cfg.r, "mu": list(mu)}
        ok = br_compat_iota(alg, z, cfg.r)
        out.append(_report("involution-compatibility", dict(base), ok, True, ok))
        for k, w in enumerate(alg.rd.weyl):
            ok = br_compat_conj(alg, z, w, cfg.r)
            out.append(_report("conjugation-compatibility", dict(base, w=k), ok, True, ok))
        lhs = ct_center(alg, t_alg, base_change(alg, z, cfg.r))
        rhs = base_change(t_alg, ct_center(alg, t_alg, z), cfg.r)
        out.append(_report("constant-term-square", dict(base), lhs, rhs, lhs == rhs))
    if cfg.group != "gl2":
        return out
    # the integral form of the constant term, sampled on the diagonal torus
    ctx = PadicContext(cfg.p, cfg.r, digits=cfg.precision)
    alg_r = _algebra(cfg, level_r=True)
    t_alg_r = levi_algebra(alg_r, [])
    chi_r = alg_r.block.chi
    for mu in cfg.mu:
        z = alg_r.central_orbit_sum(mu)
        fn = RealizedFunction.from_hecke(alg_r, z, ctx)
        f_b = ct_integral(fn, ctx, coset_val=0)
        f_t = realize_torus(ctx, chi_r, t_alg_r.beta_inv(ct_center(alg_r, t_alg_r, z)))
        # the group side is supported on det valuation -(mu1 + mu2), so
        # sample that sheet, plus one off-sheet point for the vanishing
        s = -(mu[0] + mu[1])
        pts = dict.fromkeys([(s, 0), (0, s), (s + 1, -1), (-1, s + 1), (s + 1, 0)])
        for lam in pts:
            t = Mat2.diag(ctx.uniformizer(lam[0]), ctx.uniformizer(lam[1]))
            left, right = f_b(t), f_t(t)
            out.append(_report(
                "constant-term-integral",
                {"p": cfg.p, "r": cfg.r, "mu": list(mu), "lam": list(lam)},
                left, right, _scalar_eq(left, right),
            ))
        if cfg.p > 2:
            t = Mat2.diag(ctx.from_coeffs((2,), s), ctx.from_int(1))
            left, right = f_b(t), f_t(t)
            out.append(_report(
                "constant-term-integral",
                {"p": cfg.p, "r": cfg.r, "mu": list(mu), "lam": [s, 0], "units": [2, 1]},
                left, right, _scalar_eq(left, right),
            ))
    return out


def _suite_descent(cfg: RunConfig) -> list[VerificationReport]:
    _require_gl2(cfg, "descent")
    ctx = PadicContext(cfg.p, cfg.r, digits=cfg.precision)
    alg = _algebra(cfg, level_r=True)
    chi_r = alg.block.chi
    out = []
    for mu in cfg.mu:
        model = alg.beta_inv(alg.central_orbit_sum(mu))
        for spec in cfg.classes:
            if spec.kind != "split":
                continue
            delta = spec.matrix(ctx)
            rep = verify_descent(ctx, chi_r, model, delta, max_radius=cfg.radius)
            rep.params["mu"] = list(mu)
            rep.params["lam"] = list(spec.lam)
            out.append(rep)
    return out


def _suite_elementary(cfg: RunConfig) -> list[VerificationReport]:
    _require_gl2(cfg, "elementary")
    ctx = PadicContext(cfg.p, cfg.r, digits=cfg.precision)
    chi_r = norm_transfer(cfg.base_character(), cfg.p, cfg.r)
    out = []
    for nu in cfg.nu:
        out.extend(verify_elementary(ctx, chi_r, nu, max_radius=cfg.radius))
    return out


def _suite_fl(cfg: RunConfig) -> list[VerificationReport]:
    _require_gl2(cfg, "fl")
    ctx = PadicContext(cfg.p, cfg.r, digits=cfg.precision)
    ctx1 = PadicContext(cfg.p, 1, digits=cfg.precision)
    chi = cfg.base_character()
    alg = _algebra(cfg, level_r=True)
    deltas = [spec.matrix(ctx) for spec in cfg.classes]
    gammas = [
        Mat2.diag(ctx1.uniformizer(a), ctx1.uniformizer(b)) for a, b in cfg.nonnorm
    ]
    out = []
    for mu in cfg.mu:
        model = alg.beta_inv(alg.central_orbit_sum(mu))
        reps = verify_fundamental_lemma(
            ctx, chi, model, deltas, gammas, max_radius=cfg.radius
        )
        for rep in reps:
            rep.params["mu"] = list(mu)
        out.extend(reps)
    if cfg.chi_prime is not None:
        chi_p = Character(cfg.p**cfg.r - 1, cfg.chi_prime)
        out.extend(verify_nonnorm_char_vanishing(
            ctx, chi_p, deltas, nu=cfg.nu[0], max_radius=cfg.radius,
        ))
    return out


def _suite_traces(cfg: RunConfig) -> list[VerificationReport]:
    _require_gl2(cfg, "traces")
    chi = cfg.base_character()
    eta = cfg.eta_values()
    out = []
    for nu in cfg.nu:
        out.extend(verify_trace_identities(cfg.p, cfg.r, chi, eta, nu))
    return out


def _orbit_element(
    datum: RootDatum, chi_r: Character, mu: Sequence[int]
) -> PlusLevelElement:
    """A transport-consistent family built from one central orbit sum."""
    alg = HeckeAlgebra(Block(datum, chi_r))
    f = alg.beta_inv(alg.central_orbit_sum(mu))
    comps: dict[Character, HeckeElt] = {}
    for w in datum.weyl:
        c = chi_r.act(datum.w_inv(w))
        if c in comps:
            continue
        target = HeckeAlgebra(Block(datum, c))
        comps[c] = target.beta(f.act(w))
    return PlusLevelElement(datum, chi_r.modulus, comps)


def _suite_plus(cfg: RunConfig) -> list[VerificationReport]:
    datum = _GROUPS[cfg.group]()
    p, r = cfg.p, cfg.r
    m_r = p**r - 1
    mu = cfg.mu[0]
    out = []
    for exps in itertools.product(range(m_r), repeat=datum.rank):
        chi_r = Character(m_r, exps)
        elt = _orbit_element(datum, chi_r, mu)
        base = {"p": p, "r": r, "chi": list(exps), "mu": list(mu)}
        member_in = elt.is_member()
        try:
            img = br_plus(elt, p, r)
            transported = True
        except ValueError:
            img = None
            transported = False
        ok = member_in and transported
        out.append(_report("plus-level-transport", dict(base), transported, True, ok))
        chi1 = norm_preimage(chi_r, p, r)
        if img is None:
            continue
        if chi1 is None:
            out.append(_report(
                "nonnorm-component-vanishes", dict(base),
                len(img.components), 0, not img.components,
            ))
            continue
        got = img.component_poly(chi1)
        want = base_change_poly(elt.components[chi_r], r)
        out.append(_report(
            "norm-component-agreement", dict(base, chi1=list(chi1.exps)),
            got, want, got == want,
        ))
    return out


_SUITE_FNS = {
    "center": _suite_center,
    "basechange": _suite_basechange,
    "constterm": _suite_constterm,
    "descent": _suite_descent,
    "elementary": _suite_elementary,
    "fl": _suite_fl,
    "traces": _suite_traces,
    "plus-level": _suite_plus,
}


def run(config: RunConfig, suites: Sequence[str], threads: int = 1) -> list[dict]:
    """Execute the named suites; rows come back in the order suites were named."""
    for name in suites:
        if name not in _SUITE_FNS:
            raise ConfigError([f"suite: unknown name {name!r}"])
    if threads > 1 and len(suites) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_SUITE_FNS[name], config) for name in suites]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_SUITE_FNS[name](config) for name in suites]
    rows = []
    for name, chunk in zip(suites, chunks):
        rows.extend(_report_row(name, rep) for rep in chunk)
    return rows


# dumps --------------------------------------------------------------------------


def _dump_center_rows(cfg: RunConfig) -> list[dict]:
    alg = _algebra(cfg, level_r=cfg.chi_level not in (0, cfg.p - 1))
    rows = []
    for mu in cfg.mu:
        z = alg.central_orbit_sum(mu)
        for x in z.support():
            rows.append({
                "coeff": encode_value(z.coeff(x)),
                "lam": list(x.lam),
                "mu": list(mu),
                "w": [list(row) for row in x.w],
            })
    return rows


def _basechange_rows(cfg: RunConfig) -> list[dict]:
    alg = _algebra(cfg)
    rows = []
    for mu in cfg.mu:
        b = base_change(alg, alg.central_orbit_sum(mu), cfg.r)
        rows.append({
            "image": encode_value(b),
            "mu": list(mu),
            "norm_support": support_norm_check(alg.rd, b, cfg.r),
            "r": cfg.r,
        })
    return rows


# entry point ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="heckebc.json",
                        help="path of the JSON run configuration")
    common.add_argument("--out", default=None,
                        help="output stem; <out>.jsonl and <out>.csv are written")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="which serialization to echo on stdout")
    common.add_argument("--threads", type=int, default=1,
                        help="run suites concurrently; report order is unchanged")
    parser = argparse.ArgumentParser(
        prog="heckebc",
        description="verification suites for depth-zero base change on GL2",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", parents=[common],
                            help="run one or more verification suites")
    verify.add_argument("suites", nargs="+", metavar="suite",
                        help="any of: " + ", ".join(SUITES))
    sub.add_parser("dump-center", parents=[common],
                   help="dump central orbit sums in the standard basis")
    sub.add_parser("basechange", parents=[common],
                   help="dump base change images and their support check")
    report = sub.add_parser("report", parents=[common],
                            help="summarize an existing JSON lines report")
    report.add_argument("path", help="the JSON lines report to summarize")
    return parser


def _emit(rows: list[dict], args) -> int:
    base = args.out
    jsonl = render_jsonl(rows)
    summary = render_csv(rows)
    if base is not None:
        Path(base + ".jsonl").write_text(jsonl)
        Path(base + ".csv").write_text(summary)
    sys.stdout.write(jsonl if args.format == "json" else summary)
    failures = sum(1 for row in rows if row.get("equal") is False)
    checked = sum(1 for row in rows if "equal" in row)
    print(f"rows={len(rows)} checked={checked} failures={failures}", file=sys.stderr)
    return 1 if failures else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "report":
            rows = parse_rows(args.path)
            return _emit(rows, args)
        cfg = load_config(args.config)
        if args.out is None:
            args.out = cfg.out
        if args.command == "verify":
            rows = run(cfg, args.suites, threads=args.threads)
        elif args.command == "dump-center":
            rows = _dump_center_rows(cfg)
        else:
            rows = _basechange_rows(cfg)
        return _emit(rows, args)
    except ConfigError as e:
        for problem in e.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
