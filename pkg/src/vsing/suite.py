"""The full verification suite for one value of p.

Every check returns a :class:`~vsing.report.CheckResult`; the suite is
deterministic given its configuration (the seed only picks sample grids).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from . import singlet, whittaker as wh
from .modes import TruncationError, cyclic_vector, truncation_bound, vertex_mode
from .report import FAIL, PASS, CheckReport, CheckResult, to_result
from .state import FockState, WhittakerParams, format_rational, serialize
from .virasoro import (
    check_heisenberg_bracket,
    check_L_alpha_bracket,
    check_omega_power_mode,
    check_omega_word_vanishing,
    check_vanishing_top,
    check_virasoro_bracket,
    conformal_vector,
    lemma_top_hypotheses,
    omega,
)

log = logging.getLogger(__name__)

TYPE_SAMPLES = 20
MU_SAMPLES = 5        # per r, so 10 per p
TOP_SEQUENCES = 50


@dataclass(frozen=True)
class SuiteConfig:
    p: int
    zeta: tuple | None = None
    max_weight: int = 6
    mode_window: int = 4
    seed: int = 0


def random_zeta(rng: random.Random, r: int):
    def rat(nonzero=False):
        while True:
            x = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if x or not nonzero:
                return x
    return tuple(rat() for _ in range(r)) + (rat(nonzero=True),)


def sample_params(config: SuiteConfig, r: int, n: int = TYPE_SAMPLES):
    """``n`` distinct Whittaker parameter sets with this r; the fixed
    (0, 2) / (0, 0, 1) instances come first, then seeded random ones."""
    rng = random.Random(f"{config.seed}:{config.p}:{r}")
    fixed = {1: (0, 2), 2: (0, 0, 1)}
    out = [WhittakerParams.from_zeta(config.p, fixed[r])]
    if config.zeta is not None and len(config.zeta) == r + 1 and config.zeta[-1] != 0:
        out.insert(0, WhittakerParams.from_zeta(config.p, config.zeta))
    seen = set(out)
    while len(out) < n:
        pr = WhittakerParams(config.p, r, random_zeta(rng, r))
        if pr not in seen:
            seen.add(pr)
            out.append(pr)
    return out[:n]


def bracket_samples(p: int, max_weight: int, params: WhittakerParams | None = None, charge=0):
    params = params or WhittakerParams.vacuum(p)
    return [FockState._raw(params, {lam: Fraction(1)}, charge)
            for w in range(max_weight + 1) for lam in sorted(singlet.partitions(w))]


def _named(report: CheckReport, name: str) -> CheckReport:
    report.name = name
    return report


def _bool_check(name, params, ok, details, witness=None):
    if ok:
        return CheckResult(name, params, PASS, details)
    return CheckResult(name, params, FAIL, details, witness or "no state witness")


def _brackets(cfg):
    p, idx = cfg.p, range(-cfg.mode_window, cfg.mode_window + 1)
    m1 = bracket_samples(p, cfg.max_weight)
    wpar = sample_params(cfg, 1, 1)[0]
    whit = bracket_samples(p, cfg.max_weight, wpar)
    lattice = bracket_samples(p, cfg.max_weight, charge=-1)
    out = []
    for tag, samples in (("M1", m1), ("whittaker", whit)):
        out.append(to_result(_named(check_heisenberg_bracket(p, samples, idx), f"heisenberg_bracket[{tag}]")))
        out.append(to_result(_named(check_virasoro_bracket(p, samples, idx), f"virasoro_bracket[{tag}]")))
        out.append(to_result(_named(check_L_alpha_bracket(p, samples, idx), f"L_alpha_bracket[{tag}]")))
    out.append(to_result(_named(check_heisenberg_bracket(p, lattice, idx), "heisenberg_bracket[charge-1]")))
    # c/2 on the vacuum from omega_3 omega
    cd = conformal_vector(p)
    got = vertex_mode(cd.omega, 3, cd.omega)
    want = cyclic_vector(WhittakerParams.vacuum(p)) * (cd.central_charge / 2)
    out.append(_bool_check("central_charge", {"p": p}, got == want,
                           f"omega_3 omega = c/2 with c = {format_rational(cd.central_charge)}",
                           serialize(got - want)))
    return out


def _truncation(cfg):
    p = cfg.p
    rep = CheckReport("truncation_bound", {"p": p})
    H = singlet.singlet_H(p)
    elems = [("omega", omega(p)), ("H", H)]
    targets = [cyclic_vector(pr) for pr in sample_params(cfg, 1, 2)]
    targets.append(cyclic_vector(WhittakerParams.vacuum(p)))
    for name, a in elems:
        for k, v in enumerate(targets):
            B = truncation_bound(a, v)
            try:
                ok = all(vertex_mode(a, n, v, strict=True).is_zero() for n in range(B, B + 6))
                rep.add((name, k), ok, v)
            except TruncationError as e:
                rep.add((name, k), False, v, str(e))
    return [to_result(rep)]


def _whittaker_types(cfg):
    out = []
    for r in (1, 2):
        rep = CheckReport(f"whittaker_type[r={r}]", {"p": cfg.p, "r": r})
        inv = CheckReport(f"fiber_involution[r={r}]", {"p": cfg.p, "r": r})
        for pr in sample_params(cfg, r):
            try:
                t = wh.whittaker_type(pr)
                rep.add(tuple(pr.zeta), True)
            except wh.EngineMismatch as e:
                rep.add(tuple(pr.zeta), False, e.witness, str(e))
                continue
            partner = wh.fiber_partner(pr)
            ok = (wh.fiber_partner(partner) == pr and wh.whittaker_type(partner) == t
                  and partner != pr)
            inv.add(tuple(pr.zeta), ok, cyclic_vector(pr))
        out.append(to_result(rep))
        out.append(to_result(inv))
        out.append(to_result(_named(wh.check_fiber_completeness(cfg.p, r), f"fiber_completeness[r={r}]")))
    return out


def _h_spectrum(cfg):
    out = []
    for r in (1, 2):
        top = CheckReport(f"h_spectrum[r={r}]", {"p": cfg.p, "r": r})
        sq = CheckReport(f"Hm_squared[r={r}]", {"p": cfg.p, "r": r})
        for pr in sample_params(cfg, r):
            key = tuple(pr.zeta)
            try:
                q = wh.h_top_eigen(pr, window=cfg.mode_window)
                ok = q == wh.q_formula(pr) and wh.h_top_eigen(wh.fiber_partner(pr)) == -q
                top.add(key, ok, cyclic_vector(pr))
            except wh.EngineMismatch as e:
                top.add(key, False, e.witness or cyclic_vector(pr), str(e))
            sq.add(key, wh.check_Hm_squared(pr), cyclic_vector(pr))
        out += [to_result(top), to_result(sq)]
    return out


def _mu(cfg):
    rep = CheckReport("mu_table_vs_fock", {"p": cfg.p})
    for r in (1, 2):
        for pr in sample_params(cfg, r, MU_SAMPLES):
            try:
                sub = wh.check_mu_table(pr)
                for c in sub.cases:
                    rep.add((tuple(pr.zeta),) + c.key, c.ok, cyclic_vector(pr), c.note)
            except (wh.EngineMismatch, wh.NonTriangular) as e:
                rep.add((tuple(pr.zeta),), False, cyclic_vector(pr), str(e))
    return [to_result(rep)]


def _lemma_top(cfg):
    out = []
    for r in (1, 2):
        s = 2 * r + 1
        rng = random.Random(f"{cfg.seed}:{cfg.p}:top:{r}")
        params = sample_params(cfg, r, 3)
        rep = CheckReport(f"vanishing_top[r={r}]", {"p": cfg.p, "r": r, "s": s})
        n = 0
        while n < TOP_SEQUENCES:
            q = rng.randint(1, 3)
            npos = rng.randint(0, q)
            seq = tuple(rng.randint(0, s + 2) for _ in range(npos)) + \
                tuple(rng.randint(-3, -1) for _ in range(q - npos))
            if not lemma_top_hypotheses(s, seq):
                continue
            pr = params[n % len(params)]
            u = cyclic_vector(pr)
            rep.add((tuple(pr.zeta), seq), check_vanishing_top(s, u, seq), u)
            n += 1
        out.append(to_result(rep))
    return out


def _lemma_omega_power(cfg):
    rep = CheckReport("omega_power_mode", {"p": cfg.p})
    words = [(-2,), (-3,), (-1, -1), (-2, -1), (-1, -2), (-3, -1)]
    for r in (1, 2):
        s = 2 * r + 1
        for pr in sample_params(cfg, r, 3):
            u = cyclic_vector(pr)
            for k in (2, 4):
                rep.add((tuple(pr.zeta), "k", k), check_omega_power_mode(k, s, u, cfg.mode_window), u)
            for js in words:
                rep.add((tuple(pr.zeta), "word", js), check_omega_word_vanishing(js, s, u), u)
    hh = CheckReport("HH_commutator", {"p": cfg.p})
    for r in (1, 2):
        for pr in sample_params(cfg, r, 3):
            sub = wh.check_HH_commutator(pr, cfg.mode_window)
            for c in sub.cases:
                hh.add((tuple(pr.zeta),) + c.key, c.ok, c.witness)
    return [to_result(rep), to_result(hh)]


def _relations(cfg):
    p = cfg.p
    out = []
    try:
        res = singlet.solve_relation_2_20(p)
        ok = res.matches != "neither" and res.cross_check
        out.append(_bool_check(
            "relation_omega_H", {"p": p}, ok,
            f"c* = {format_rational(res.coefficient)} ({res.matches}); "
            f"residual terms at 3/(2p): {len(res.residual_stated)}, at 2p/3: {len(res.residual_alternate)}; "
            f"omega_0^3 H = 3! H_(-4)1: {res.cross_check}",
            serialize(res.residual_stated)))
    except singlet.RelationError as e:
        out.append(CheckResult("relation_omega_H", {"p": p}, FAIL, str(e), serialize(e.residual_stated)))
    try:
        d = singlet.decompose_H_minus1_H(p)
        want = singlet.leading_coefficient_formula(p)
        out.append(_bool_check(
            "H_minus1_H_decomposition", {"p": p}, d.leading == want and d.leading_unique,
            f"leading {format_rational(d.leading)} vs (4p)^(2p-1)/((2p-1)!)^2 = {format_rational(want)}; "
            f"nullity {d.nullity}; unique {d.leading_unique}"))
    except singlet.SpanError as e:
        out.append(CheckResult("H_minus1_H_decomposition", {"p": p}, FAIL, str(e), serialize(e.target)))
    out.append(to_result(singlet.check_HkH_membership(p, range(-2 * p, 4 * p - 2))))
    samples = [cyclic_vector(pr) for pr in sample_params(cfg, 1, 2)]
    out.append(to_result(singlet.check_H_primary(p, 4, samples)))
    return out


def _singlet(cfg):
    p = cfg.p
    out = [to_result(singlet.check_singlet_membership(p, cfg.max_weight))]
    dims = [singlet.kernel_basis(p, w).kernel_dim for w in range(min(cfg.max_weight, 2) + 1)]
    expected = [1, 0, 1][:len(dims)] if p == 2 else None
    if expected is None:
        out.append(CheckResult("kernel_dims", {"p": p}, PASS, f"dims {dims} (no reference values for this p)"))
    else:
        out.append(_bool_check("kernel_dims", {"p": p}, dims == expected, f"dims {dims}, expected {expected}"))
    return out


def _classification(cfg):
    rep = CheckReport("classification_separation", {"p": cfg.p})
    records = []
    for r in (1, 2):
        for pr in sample_params(cfg, r):
            rec = wh.classification_record(pr)
            records.append(rec)
            records.append(wh.classification_record(rec.partner))
    seen = {}
    for rec in records:
        k = rec.key()
        prev = seen.setdefault(k, rec.params)
        rep.add((tuple(rec.params.zeta),), prev == rec.params, cyclic_vector(rec.params))
    for rec in records:
        partner = wh.classification_record(rec.partner, verify=False)
        rep.add(("partner", tuple(rec.params.zeta)),
                partner.type == rec.type and partner.q == -rec.q, cyclic_vector(rec.params))
    return [to_result(rep)]


SECTIONS = [
    ("brackets", _brackets),
    ("truncation", _truncation),
    ("whittaker_types", _whittaker_types),
    ("h_spectrum", _h_spectrum),
    ("mu_table", _mu),
    ("vanishing_top", _lemma_top),
    ("omega_power", _lemma_omega_power),
    ("relations", _relations),
    ("singlet", _singlet),
    ("classification", _classification),
]


def run_suite(config: SuiteConfig):
    if config.p < 2:
        raise ValueError("p must be >= 2")
    results = []
    for name, fn in SECTIONS:
        log.info("running %s (p=%d)", name, config.p)
        results.extend(fn(config))
    names = [r.name for r in results]
    assert len(names) == len(set(names)), "check names must be unique"
    return sorted(results, key=lambda r: r.name)


def summarize(results):
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        counts[r.status] += 1
    return counts


def build_report(config: SuiteConfig, results) -> dict:
    return {
        "version": "1",
        "p": config.p,
        "config": {
            "p": config.p,
            "zeta": None if config.zeta is None else [format_rational(z) for z in config.zeta],
            "max_weight": config.max_weight,
            "mode_window": config.mode_window,
            "seed": config.seed,
        },
        "checks": [r.to_json() for r in results],
        "summary": summarize(results),
    }
