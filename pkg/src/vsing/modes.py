"""Mode calculus on Heisenberg Fock modules.

``alpha_act`` is the Heisenberg action.  ``vertex_mode`` computes a_m v for an
element ``a`` of the vertex algebra M(1) by recursion on the leftmost factor
of each PBW monomial of ``a`` (the iterate formula), bottoming out at the
vacuum, 1_m v = delta_{m,-1} v.  Results on basis monomials are cached per
module, so repeated evaluation inside the checks is cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .state import (
    FockState,
    WhittakerParams,
    insert_depth,
    remove_depth,
    to_rational,
)

# Extra creation-sum terms evaluated (and asserted zero) in strict mode.
SAFETY_MARGIN = 2


class TruncationError(AssertionError):
    """A term beyond the truncation bound came out nonzero."""


def binom(x: int, k: int) -> int:
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k! for integer x."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


def _ctx(v: FockState):
    pr = v.params
    return (pr.p, pr.r, pr.zeta, v.charge)


def _alpha_basis(ctx, n, mono):
    """alpha(n) on a single monomial; returns a list of (monomial, coeff)."""
    p, r, zeta, charge = ctx
    if n < 0:
        return [(insert_depth(mono, -n), 1)]
    if n == 0:
        c = zeta[0] + 2 * charge
        return [(mono, c)] if c else []
    out = []
    cnt = mono.count(n)
    if cnt:
        out.append((remove_depth(mono, n), 2 * p * n * cnt))
    if n <= r and zeta[n]:
        out.append((mono, zeta[n]))
    return out


def alpha_act(n: int, v: FockState) -> FockState:
    """Apply the Heisenberg mode alpha(n) to ``v``.

    On the charge-k sector alpha(0) acts by zeta_0 + 2k.
    """
    ctx = _ctx(v)
    out = {}
    for mono, c in v.items():
        for w, d in _alpha_basis(ctx, n, mono):
            x = out.get(w, 0) + c * d
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return FockState._raw(v.params, out, v.charge)


def _bound(r, a_weight, v_weight):
    return (r + 1) * a_weight + v_weight


def _add_into(out, mono, c):
    x = out.get(mono, 0) + c
    if x:
        out[mono] = x
    else:
        out.pop(mono, None)


@lru_cache(maxsize=None)
def _mode(ctx, a, m, v, strict):
    """(a_mono)_m (v_mono) as a tuple of (monomial, Fraction) pairs."""
    p, r, zeta, charge = ctx
    if not a:
        return ((v, Fraction(1)),) if m == -1 else ()
    wb = sum(a[1:])
    wv = sum(v)
    if not strict and m >= _bound(r, wb + a[0], wv):
        return ()
    n, b = a[0], a[1:]
    out = {}
    # creation half: sum_i C(n+i-1, i) alpha(-n-i) b_{m+i} v
    stop = _bound(r, wb, wv) - m
    extra = SAFETY_MARGIN if strict else 0
    for i in range(max(stop, 0) + extra):
        inner = _mode(ctx, b, m + i, v, strict)
        if i >= stop:
            if inner:
                raise TruncationError(
                    f"b_{m + i} v != 0 beyond bound for b={b}, v={v}")
            continue
        coef = math.comb(n + i - 1, i)
        for w, c in inner:
            _add_into(out, insert_depth(w, n + i), coef * c)
    # annihilation half: -(-1)^n sum_i C(n+i-1, i) b_{m-n-i} alpha(i) v
    sign = 1 if n % 2 else -1
    top = max(r, v[0] if v else 0)
    for i in range(top + 1):
        coef = sign * math.comb(n + i - 1, i)
        for w, c in _alpha_basis(ctx, i, v):
            for w2, c2 in _mode(ctx, b, m - n - i, w, strict):
                _add_into(out, w2, coef * c * c2)
    return tuple(out.items())


def clear_caches():
    _mode.cache_clear()


def check_va_element(a: FockState, p: int | None = None):
    if a.charge != 0 or not a.params.is_vacuum:
        raise ValueError("vertex algebra elements must live in M(1) (charge 0, zeta = (0))")
    if p is not None and a.params.p != p:
        raise ValueError(f"p mismatch: element has p={a.params.p}, module has p={p}")


def vertex_mode(a: FockState, m: int, v: FockState, strict: bool = False) -> FockState:
    """a_m v for a in M(1), v in any M(1, zeta) (any charge).

    With ``strict=True`` the truncation shortcut is disabled and the creation
    sums run ``SAFETY_MARGIN`` terms past the bound, raising
    :class:`TruncationError` if any of those terms is nonzero.
    """
    check_va_element(a, v.params.p)
    ctx = _ctx(v)
    out = {}
    for am, ac in a.items():
        for vm, vc in v.items():
            for w, c in _mode(ctx, am, m, vm, strict):
                _add_into(out, w, ac * vc * c)
    return FockState._raw(v.params, out, v.charge)


def mode_commutator(a: FockState, i: int, b: FockState, j: int, v: FockState) -> FockState:
    """a_i b_j v - b_j a_i v."""
    return vertex_mode(a, i, vertex_mode(b, j, v)) - vertex_mode(b, j, vertex_mode(a, i, v))


def normal_ordered_apply(indices, a: FockState, v: FockState) -> FockState:
    """Apply :a_{i_1} ... a_{i_q}: to ``v``.

    Inductive rule: a nonnegative leading index is moved to the far right,
    a negative one stays on the left.
    """
    indices = list(indices)
    if not indices:
        return v
    i1, rest = indices[0], indices[1:]
    if i1 >= 0:
        return normal_ordered_apply(rest, a, vertex_mode(a, i1, v))
    return vertex_mode(a, i1, normal_ordered_apply(rest, a, v))


def truncation_bound(a: FockState, v: FockState) -> int:
    """B = (r+1) wt(a) + g with a_n v = 0 for all n >= B (g = top PBW weight of v)."""
    check_va_element(a)
    if not a.is_homogeneous():
        raise ValueError("truncation_bound needs a weight-homogeneous element")
    h = a.max_weight()
    return _bound(v.params.r, h, v.max_weight())


# --- convenience constructors ------------------------------------------------

def vacuum(p: int) -> FockState:
    return FockState.cyclic(WhittakerParams.vacuum(p))


def alpha_state(p: int, *depths, coeff=1) -> FockState:
    """alpha(-d_1)...alpha(-d_k) 1 in M(1)."""
    return FockState.monomial(WhittakerParams.vacuum(p), depths, coeff)


def alpha_generator(p: int) -> FockState:
    """alpha(-1)1, whose modes are the alpha(n)."""
    return alpha_state(p, 1)


def cyclic_vector(params: WhittakerParams, charge: int = 0) -> FockState:
    return FockState.cyclic(params, charge)


def apply_word(modes, v: FockState) -> FockState:
    """Apply ``[(a, m), ...]`` right to left, i.e. the last pair acts first."""
    for a, m in reversed(list(modes)):
        v = vertex_mode(a, m, v)
    return v


def scalar_on(v: FockState, w: FockState):
    """Return c with w == c*v, or None when w is not a multiple of v."""
    if w.is_zero():
        return Fraction(0)
    if v.is_zero():
        return None
    mono, c0 = next(iter(v.items()))
    c = w.coeff(mono) / c0
    return c if w == v * c else None


__all__ = [
    "SAFETY_MARGIN", "TruncationError", "alpha_act", "alpha_generator", "alpha_state",
    "apply_word", "binom", "clear_caches", "cyclic_vector", "mode_commutator",
    "normal_ordered_apply", "scalar_on", "to_rational", "truncation_bound", "vacuum",
    "vertex_mode",
]
