"""Conformal vector, Virasoro operators L(n) = omega_{n+1}, and the Virasoro checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .modes import (
    alpha_act,
    alpha_generator,
    binom,
    mode_commutator,
    vacuum,
    vertex_mode,
)
from .report import CheckReport
from .state import FockState, WhittakerParams


@dataclass(frozen=True)
class ConformalData:
    p: int
    omega: FockState
    central_charge: Fraction


def conformal_vector(p: int) -> ConformalData:
    """omega = alpha(-1)^2 1/(4p) + (p-1)/(2p) alpha(-2) 1, c = 1 - 6(p-1)^2/p."""
    if p < 2:
        raise ValueError("p must be >= 2")
    omega = FockState(WhittakerParams.vacuum(p), {
        (1, 1): Fraction(1, 4 * p),
        (2,): Fraction(p - 1, 2 * p),
    })
    return ConformalData(p, omega, 1 - Fraction(6 * (p - 1) ** 2, p))


def omega(p: int) -> FockState:
    return conformal_vector(p).omega


def L(n: int, v: FockState) -> FockState:
    return vertex_mode(omega(v.params.p), n + 1, v)


def virasoro_state(p: int, parts) -> FockState:
    """L(-j_1)...L(-j_k) 1 for ``parts = (j_1, ..., j_k)``."""
    v = vacuum(p)
    for j in reversed(tuple(parts)):
        v = L(-j, v)
    return v


def check_virasoro_bracket(p, sample_states, index_range=range(-4, 5)) -> CheckReport:
    """[L(m), L(n)]v = (m-n)L(m+n)v + delta_{m+n,0} c/12 (m^3-m) v on every sample."""
    c = conformal_vector(p).central_charge
    w = omega(p)
    rep = CheckReport("virasoro_bracket", {"p": p})
    idx = list(index_range)
    for k, v in enumerate(sample_states):
        for m in idx:
            for n in idx:
                lhs = mode_commutator(w, m + 1, w, n + 1, v)
                rhs = (m - n) * L(m + n, v)
                if m + n == 0:
                    rhs = rhs + v * (c / 12 * (m ** 3 - m))
                diff = lhs - rhs
                rep.add((k, m, n), diff.is_zero(), diff)
    return rep


def check_L_alpha_bracket(p, samples, index_range=range(-4, 5)) -> CheckReport:
    """[L(j), alpha(i)] = -i alpha(i+j) + (-2p+2) C(j+1, 2) delta_{i+j,0}."""
    a = alpha_generator(p)
    w = omega(p)
    rep = CheckReport("L_alpha_bracket", {"p": p})
    idx = list(index_range)
    for k, v in enumerate(samples):
        for j in idx:
            for i in idx:
                lhs = mode_commutator(w, j + 1, a, i, v)
                rhs = -i * alpha_act(i + j, v)
                if i + j == 0:
                    rhs = rhs + v * ((-2 * p + 2) * binom(j + 1, 2))
                diff = lhs - rhs
                rep.add((k, i, j), diff.is_zero(), diff)
    return rep


def check_heisenberg_bracket(p, samples, index_range=range(-4, 5)) -> CheckReport:
    a = alpha_generator(p)
    rep = CheckReport("heisenberg_bracket", {"p": p})
    idx = list(index_range)
    for k, v in enumerate(samples):
        for m in idx:
            for n in idx:
                diff = mode_commutator(a, m, a, n, v)
                if m + n == 0:
                    diff = diff - v * (2 * p * m)
                rep.add((k, m, n), diff.is_zero(), diff)
    return rep


def lemma_top_hypotheses(s: int, seq) -> bool:
    """Whether ``seq = (i_1, ..., i_q)`` meets the hypotheses of the top-vanishing lemma.

    i_1 is applied first.  Requires nonnegative entries followed by negative
    ones, s*q <= sum(seq), and excludes the all-equal-to-s nonnegative word.
    """
    seq = tuple(seq)
    q = len(seq)
    npos = 0
    while npos < q and seq[npos] >= 0:
        npos += 1
    if any(i >= 0 for i in seq[npos:]):
        return False
    if s * q > sum(seq):
        return False
    if npos == q and all(i == s for i in seq):
        return False
    return True


def check_vanishing_top(s: int, u: FockState, seq) -> bool:
    """omega_{i_q} ... omega_{i_1} u == 0; ``u`` must satisfy omega_i u = 0 for i > s."""
    if not lemma_top_hypotheses(s, seq):
        raise ValueError(f"index sequence {tuple(seq)} violates the lemma's hypotheses for s={s}")
    w = omega(u.params.p)
    v = u
    for i in seq:
        v = vertex_mode(w, i, v)
        if v.is_zero():
            return True
    return v.is_zero()


def omega_word(p: int, js) -> FockState:
    """omega_{j_1} ... omega_{j_q} 1 as an element of M(1)."""
    w = omega(p)
    v = vacuum(p)
    for j in reversed(tuple(js)):
        v = vertex_mode(w, j, v)
    return v


def check_omega_power_mode(k: int, s: int, u: FockState, window: int = 4) -> bool:
    """(omega_{-1}^{k/2} 1)_{(s+1)k/2-1} u == omega_s^{k/2} u, and higher modes vanish."""
    if k <= 0 or k % 2:
        raise ValueError("k must be a positive even integer")
    p = u.params.p
    q = k // 2
    elem = omega_word(p, (-1,) * q)
    crit = (s + 1) * q - 1
    rhs = u
    w = omega(p)
    for _ in range(q):
        rhs = vertex_mode(w, s, rhs)
    if vertex_mode(elem, crit, u) != rhs:
        return False
    return all(vertex_mode(elem, mm, u).is_zero() for mm in range(crit + 1, crit + 1 + window))


def check_omega_word_vanishing(js, s: int, u: FockState, window: int = 3) -> bool:
    """(omega_{j_1}...omega_{j_q} 1)_m u == 0 for m >= (s+1)k/2 - 1 when k != 2q.

    k = wt(omega_{j_1}...omega_{j_q} 1).  For k == 2q only m above the
    critical index is required to vanish.
    """
    js = tuple(js)
    if any(j > -1 for j in js):
        raise ValueError("word indices must be <= -1")
    q = len(js)
    k = q - sum(js)
    elem = omega_word(u.params.p, js)
    # ceil((s+1)k/2 - 1)
    lo = -(-((s + 1) * k - 2) // 2)
    if k == 2 * q:
        lo = (s + 1) * k // 2
    return all(vertex_mode(elem, m, u).is_zero() for m in range(lo, lo + window))
