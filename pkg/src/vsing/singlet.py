"""The singlet generator H, the screening operator, and relations among omega and H."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .modes import alpha_act, mode_commutator, vacuum, vertex_mode
from .report import CheckReport
from .state import FockState, WhittakerParams, partitions, insert_depth
from .virasoro import L, conformal_vector, omega, virasoro_state


class UnsupportedCharge(ValueError):
    """The screening residue needs a non-integral power of x on this charge."""


class RelationError(ArithmeticError):
    def __init__(self, message, residual_stated, residual_alternate):
        super().__init__(message)
        self.residual_stated = residual_stated
        self.residual_alternate = residual_alternate


class SpanError(ArithmeticError):
    def __init__(self, message, target):
        super().__init__(message)
        self.target = target


def _exp_coeffs(i: int, scale: Fraction):
    """Coefficient of t^i in exp(scale * sum_j X_j t^j / j) as {partition: coeff}."""
    out = {}
    for lam in partitions(i):
        mult = Counter(lam)
        c = scale ** len(lam)
        for j, mj in mult.items():
            c /= Fraction(j) ** mj * math.factorial(mj)
        out[lam] = c
    return out


def schur_component(p: int, i: int) -> FockState:
    """S_i(alpha)1: the t^i coefficient of exp(sum_j alpha(-j) t^j / j) on the vacuum."""
    if i < 0:
        raise ValueError("Schur index must be >= 0")
    return FockState(WhittakerParams.vacuum(p), _exp_coeffs(i, Fraction(1)))


def singlet_H(p: int) -> FockState:
    """H = S_{2p-1}(alpha)1, of weight 2p - 1."""
    if p < 2:
        raise ValueError("p must be >= 2")
    return schur_component(p, 2 * p - 1)


def _apply_positive_word(ctx_state, lam, mono):
    """alpha(lam_1)...alpha(lam_k) on one monomial in M(1) (annihilators commute)."""
    v = FockState._raw(ctx_state.params, {mono: Fraction(1)}, ctx_state.charge)
    for n in lam:
        v = alpha_act(n, v)
        if v.is_zero():
            break
    return v


def screening_Q(a: FockState) -> FockState:
    """Residue of Y(e^{-alpha/p}, x) on ``a`` (charge k -> k - 1).

    Y(e^{-alpha/p}, x) = E^-(x) E^+(x) e^{-alpha/p} x^{-2k/p} with
    E^-(x) = exp(-(1/p) sum alpha(-n) x^n / n) and
    E^+(x) = exp((1/p) sum alpha(n) x^{-n} / n).  Only the PBW part is
    tracked; the charge label carries e^{-alpha/p}.  Lattice cocycle
    signs are not modelled.
    """
    pr = a.params
    if not pr.is_vacuum:
        raise ValueError("screening operator is defined on the lattice sectors of M(1)")
    p, k = pr.p, a.charge
    if (2 * k) % p:
        raise UnsupportedCharge(f"x-exponent -2k/p = {Fraction(-2 * k, p)} is not an integer")
    shift = -2 * k // p
    out = {}
    top = a.max_weight()
    plus = {j: _exp_coeffs(j, Fraction(1, p)) for j in range(top + 1)}
    for mono, c in a.items():
        w = sum(mono)
        for j in range(w + 1):
            # need i - j + shift = -1 with i >= 0
            i = j - 1 - shift
            if i < 0:
                continue
            minus = _exp_coeffs(i, Fraction(-1, p))
            for lam, cl in plus[j].items():
                v = _apply_positive_word(a, lam, mono)
                for vm, vc in v.items():
                    for mu, cm in minus.items():
                        target = vm
                        for d in mu:
                            target = insert_depth(target, d)
                        x = out.get(target, 0) + c * cl * vc * cm
                        if x:
                            out[target] = x
                        else:
                            out.pop(target, None)
    return FockState._raw(pr, out, k - 1)


@dataclass
class KernelReport:
    weight: int
    dim_M1: int
    kernel_dim: int
    basis: list = field(default_factory=list)


def weight_basis(p: int, w: int):
    """PBW basis of the weight-w piece of M(1), lexicographically ordered."""
    pr = WhittakerParams.vacuum(p)
    return [FockState._raw(pr, {lam: Fraction(1)}) for lam in sorted(partitions(w))]


def coordinates(v: FockState, monos):
    return [v.coeff(m) for m in monos]


def kernel_basis(p: int, weight: int) -> KernelReport:
    """Exact kernel of the screening operator on the weight-graded piece of M(1).

    The basis is the canonical one from the reduced echelon form: one vector
    per free PBW monomial, normalized to coefficient 1 there.
    """
    if weight < 0:
        raise ValueError("weight must be >= 0")
    pr = WhittakerParams.vacuum(p)
    src = sorted(partitions(weight))
    images = [screening_Q(FockState._raw(pr, {m: Fraction(1)})) for m in src]
    tgt = sorted({m for im in images for m in im.terms})
    rows = [[im.coeff(t) for im in images] for t in tgt]
    if rows:
        null = linalg.nullspace(rows, len(src))
    else:
        null = [[Fraction(int(i == j)) for i in range(len(src))] for j in range(len(src))]
    basis = [FockState(pr, dict(zip(src, vec))) for vec in null]
    return KernelReport(weight, len(src), len(basis), basis)


def in_kernel_span(v: FockState, report: KernelReport) -> bool:
    monos = sorted(partitions(report.weight))
    rows = [[b.coeff(m) for b in report.basis] for m in monos]
    if not report.basis:
        return v.is_zero()
    try:
        linalg.solve(rows, coordinates(v, monos))
    except linalg.InconsistentSystem:
        return False
    return True


# --- relation between omega and H at weight 2p+2 --------------------------------

@dataclass
class RelationResult:
    p: int
    coefficient: Fraction
    stated: Fraction           # 3/(2p)
    alternate: Fraction        # 2p/3
    residual_stated: FockState
    residual_alternate: FockState
    cross_check: bool          # omega_0^3 H == 3! H_{-4}1

    @property
    def matches(self) -> str:
        if self.coefficient == self.stated:
            return "3/(2p)"
        if self.coefficient == self.alternate:
            return "2p/3"
        return "neither"


def relation_parts(p: int):
    """(H_{-4}1, -omega_{-1}H_{-2}1 + (2p-1)/2 omega_{-2}H) in M(1)."""
    H = singlet_H(p)
    one = vacuum(p)
    w = omega(p)
    h4 = vertex_mode(H, -4, one)
    h2 = vertex_mode(H, -2, one)
    rest = vertex_mode(w, -1, h2) * -1 + vertex_mode(w, -2, H) * Fraction(2 * p - 1, 2)
    return h4, rest


def solve_relation_2_20(p: int) -> RelationResult:
    """Find the unique c with c H_{-4}1 - omega_{-1}H_{-2}1 + (2p-1)/2 omega_{-2}H = 0."""
    if p < 2:
        raise ValueError("p must be >= 2")
    h4, rest = relation_parts(p)
    stated, alternate = Fraction(3, 2 * p), Fraction(2 * p, 3)
    res_s = h4 * stated + rest
    res_a = h4 * alternate + rest
    # omega_0^i H = i! H_{-1-i} 1
    w = omega(p)
    v = singlet_H(p)
    for _ in range(3):
        v = vertex_mode(w, 0, v)
    cross = v == h4 * 6
    if h4.is_zero():
        raise RelationError("H_{-4}1 vanishes; coefficient undetermined", res_s, res_a)
    mono, c0 = next(iter(sorted(h4.items())))
    c = -rest.coeff(mono) / c0
    if not (h4 * c + rest).is_zero():
        raise RelationError("no coefficient annihilates the relation", res_s, res_a)
    return RelationResult(p, c, stated, alternate, res_s, res_a, cross)


# --- H_{-1}H in the Virasoro span --------------------------------------------

@dataclass
class Decomposition:
    p: int
    weight: int
    leading: Fraction
    coords: dict                 # Virasoro partition -> coefficient (free vars = 0)
    nullity: int                 # dependencies among the Virasoro PBW states
    leading_unique: bool


def virasoro_partitions(w: int):
    """Partitions of w with parts >= 2, each weakly decreasing."""
    return sorted(partitions(w, min_part=2))


def express_in_virasoro_span(target: FockState, w: int):
    """Solve target = sum_j x_j L(-j_1)...L(-j_k)1 exactly at weight w."""
    p = target.params.p
    parts = virasoro_partitions(w)
    cols = [virasoro_state(p, lam) for lam in parts]
    monos = sorted(partitions(w))
    rows = [[col.coeff(m) for col in cols] for m in monos]
    if not parts:
        if target.is_zero():
            return parts, [], []
        raise SpanError("nonzero target with an empty Virasoro span", target)
    try:
        x, null = linalg.solve(rows, coordinates(target, monos))
    except linalg.InconsistentSystem:
        raise SpanError(f"target lies outside the Virasoro span at weight {w}", target) from None
    return parts, x, null


def decompose_H_minus1_H(p: int) -> Decomposition:
    H = singlet_H(p)
    target = vertex_mode(H, -1, H)
    w = 4 * p - 2
    parts, x, null = express_in_virasoro_span(target, w)
    lead = parts.index((2,) * (2 * p - 1))
    unique = all(vec[lead] == 0 for vec in null)
    coords = {lam: c for lam, c in zip(parts, x) if c}
    return Decomposition(p, w, x[lead], coords, len(null), unique)


def leading_coefficient_formula(p: int) -> Fraction:
    """(4p)^{2p-1} / ((2p-1)!)^2."""
    return Fraction((4 * p) ** (2 * p - 1), math.factorial(2 * p - 1) ** 2)


def check_HkH_membership(p: int, ks) -> CheckReport:
    """H_k H lies in the Virasoro vacuum span for each k (weight 4p-3-k)."""
    H = singlet_H(p)
    rep = CheckReport("HkH_virasoro_span", {"p": p})
    for k in ks:
        w = 4 * p - 3 - k
        if w < 0:
            continue
        t = vertex_mode(H, k, H)
        try:
            express_in_virasoro_span(t, w)
            rep.add((k,), True)
        except SpanError:
            rep.add((k,), False, t, f"H_{k}H outside span")
    return rep


def check_H_primary(p: int, n_max: int, samples=(), index_range=range(-3, 4)) -> CheckReport:
    """L(n)H = 0 (1 <= n <= n_max), L(0)H = (2p-1)H, and
    [omega_i, H_j] v = ((2p-2)i - j) H_{i+j-1} v on the samples."""
    H = singlet_H(p)
    w = omega(p)
    rep = CheckReport("H_primary", {"p": p, "n_max": n_max})
    for n in range(1, n_max + 1):
        t = L(n, H)
        rep.add(("L", n), t.is_zero(), t)
    d = L(0, H) - H * (2 * p - 1)
    rep.add(("L", 0), d.is_zero(), d)
    idx = list(index_range)
    for k, v in enumerate(samples):
        for i in idx:
            for j in idx:
                diff = mode_commutator(w, i, H, j, v) - vertex_mode(H, i + j - 1, v) * ((2 * p - 2) * i - j)
                rep.add(("bracket", k, i, j), diff.is_zero(), diff)
    return rep


def check_singlet_membership(p: int, max_weight: int) -> CheckReport:
    """Screening kills 1, omega, H, and every Virasoro PBW state up to max_weight."""
    rep = CheckReport("singlet_membership", {"p": p, "max_weight": max_weight})
    named = [("vacuum", vacuum(p)), ("omega", omega(p)), ("H", singlet_H(p))]
    for name, v in named:
        q = screening_Q(v)
        rep.add((name,), q.is_zero(), q)
    for w in range(2, max_weight + 1):
        kr = kernel_basis(p, w)
        for lam in virasoro_partitions(w):
            v = virasoro_state(p, lam)
            q = screening_Q(v)
            rep.add(("virasoro", lam), q.is_zero() and in_kernel_span(v, kr), q)
    return rep


def central_charge(p: int) -> Fraction:
    return conformal_vector(p).central_charge
