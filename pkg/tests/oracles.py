"""Independent reference computations used by the tests.

Nothing here calls ``vertex_mode``: modes of PBW elements come from the
normal-ordered field formula

    Y(alpha(-n_1)...alpha(-n_k)1, x) = :d^(n_1-1)alpha(x) ... d^(n_k-1)alpha(x):

with d^(n)alpha(x) = sum_j C(-j-1, n) alpha(j) x^(-j-1-n), so that
a_m = sum over j_1+...+j_k = m+1-wt(a) of prod C(-j_i-1, n_i-1) :alpha(j_1)...alpha(j_k):.
"""

from fractions import Fraction

import sympy

from vsing.modes import alpha_act, binom
from vsing.state import FockState, partitions


def _compositions(total, k, lo, hi):
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        if lo <= total <= hi:
            yield (total,)
        return
    for j in range(lo, hi + 1):
        rest = total - j
        if (k - 1) * lo <= rest <= (k - 1) * hi:
            for tail in _compositions(rest, k - 1, lo, hi):
                yield (j,) + tail


def mode_oracle(a: FockState, m: int, v: FockState) -> FockState:
    out = FockState.zero(v.params, v.charge)
    r = v.params.r
    for amono, ac in a.items():
        k = len(amono)
        if k == 0:
            if m == -1:
                out = out + v * ac
            continue
        total = m + 1 - sum(amono)
        for vmono, vc in v.items():
            basis = FockState(v.params, {vmono: 1}, v.charge)
            J = max([r] + list(vmono))
            lo = total - (k - 1) * J
            for js in _compositions(total, k, lo, J):
                coef = 1
                for j, n in zip(js, amono):
                    coef *= binom(-j - 1, n - 1)
                if not coef:
                    continue
                w = basis
                for j in sorted(js, reverse=True):  # annihilators act first
                    w = alpha_act(j, w)
                    if w.is_zero():
                        break
                out = out + w * (ac * vc * coef)
    return out


def schur_oracle(i: int) -> dict:
    """Coefficient of t^i in exp(sum_j x_j t^j / j), as {partition: Fraction}."""
    t = sympy.Symbol("t")
    xs = sympy.symbols(f"x1:{i + 2}")
    expo = sum(xs[j - 1] * t ** j / j for j in range(1, i + 1))
    series = sympy.series(sympy.exp(expo), t, 0, i + 1).removeO()
    coeff = sympy.expand(series.coeff(t, i))
    out = {}
    for lam in partitions(i):
        mono = sympy.Integer(1)
        for d in lam:
            mono *= xs[d - 1]
        c = sympy.Poly(coeff, *xs[:max(i, 1)]).coeff_monomial(mono) if i else coeff
        out[lam] = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
    return out


def sympy_nullity(rows, ncols):
    M = sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j]))
    return len(M.nullspace())


def sympy_rank(rows, ncols):
    M = sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j]))
    return M.rank()
