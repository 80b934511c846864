"""Whittaker data of M(1, zeta): type map, fiber involution, H-spectrum, mu table,
and classification records."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .modes import binom, cyclic_vector, scalar_on, vertex_mode
from .report import CheckReport
from .singlet import solve_relation_2_20, singlet_H
from .state import FockState, WhittakerParams, format_rational
from .virasoro import omega


class EngineMismatch(AssertionError):
    """Closed formula and direct Fock computation disagree."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonTriangular(ArithmeticError):
    pass


@dataclass(frozen=True)
class WhittakerType:
    s: int
    lam: dict  # i -> Fraction, (s+1)/2 <= i <= s

    def __post_init__(self):
        if self.s < 3 or self.s % 2 == 0:
            raise ValueError(f"s = {self.s}: Whittaker types here have odd s >= 3")
        if self.lam.get(self.s, 0) == 0:
            raise ValueError("lambda_s must be nonzero")
        band = set(range((self.s + 1) // 2, self.s + 1))
        if set(self.lam) != band:
            raise ValueError(f"lambda must be indexed by {sorted(band)}")

    @property
    def t(self) -> int:
        return (self.s + 1) // 2

    def key(self):
        return (self.s, tuple(self.lam[i] for i in sorted(self.lam)))

    def __eq__(self, other):
        return isinstance(other, WhittakerType) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def type_formula(params: WhittakerParams) -> dict:
    """lambda_i = (1/4p) sum_{j+k=i-1} zeta_j zeta_k - delta_{i,r+1} (p-1)(r+1)/(2p) zeta_r."""
    p, r, z = params.p, params.r, params.zeta
    lam = {}
    for i in range(r + 1, 2 * r + 2):
        acc = sum((z[j] * z[i - 1 - j] for j in range(max(0, i - 1 - r), min(r, i - 1) + 1)),
                  Fraction(0))
        val = acc / (4 * p)
        if i == r + 1:
            val -= Fraction((p - 1) * (r + 1), 2 * p) * z[r]
        lam[i] = val
    return lam


def whittaker_type(params: WhittakerParams, verify: bool = True) -> WhittakerType:
    """Type of u_zeta: s = 2r+1 and the lambda band, checked against the engine."""
    params.require_whittaker()
    lam = type_formula(params)
    s = 2 * params.r + 1
    if verify:
        u = cyclic_vector(params)
        w = omega(params.p)
        for i in range(params.r + 1, s + 3):
            got = vertex_mode(w, i, u)
            want = u * lam[i] if i <= s else FockState.zero(params)
            if got != want:
                raise EngineMismatch(f"omega_{i} u_zeta disagrees with the type formula",
                                     got - want)
    return WhittakerType(s, lam)


def fiber_partner(params: WhittakerParams) -> WhittakerParams:
    """zeta'_0 = 2(p-1)(r+1) - zeta_0, zeta'_i = -zeta_i for i >= 1."""
    p, r, z = params.p, params.r, params.zeta
    if r < 1:
        raise ValueError("fiber partner needs r >= 1")
    return WhittakerParams(p, r, (2 * (p - 1) * (r + 1) - z[0],) + tuple(-x for x in z[1:]))


def top_index(params: WhittakerParams) -> int:
    """m = (r+1)(2p-1) - 1, the top nonvanishing H-mode on u_zeta."""
    return (params.r + 1) * (2 * params.p - 1) - 1


def band_start(params: WhittakerParams) -> int:
    """(r+1)(2p-1) - r - 1: H-modes from here up act by scalars on u_zeta."""
    return (params.r + 1) * (2 * params.p - 1) - params.r - 1


def q_formula(params: WhittakerParams) -> Fraction:
    p = params.p
    return params.zeta[params.r] ** (2 * p - 1) / math.factorial(2 * p - 1)


def h_eigenvalues(params: WhittakerParams, lo: int, hi: int) -> dict:
    """{i: c} with H_i u_zeta = c u_zeta for lo <= i <= hi; EngineMismatch if not scalar."""
    H = singlet_H(params.p)
    u = cyclic_vector(params)
    out = {}
    for i in range(lo, hi + 1):
        v = vertex_mode(H, i, u)
        c = scalar_on(u, v)
        if c is None:
            raise EngineMismatch(f"H_{i} u_zeta is not a multiple of u_zeta", v)
        out[i] = c
    return out


def h_top_eigen(params: WhittakerParams, window: int = 3) -> Fraction:
    """q = zeta_r^{2p-1}/(2p-1)!, cross-checked on the engine.

    Verifies H_m u = q u at m = (r+1)(2p-1)-1, H_i u = 0 for m < i <= m+window,
    and H_i u in Q u on the whole band i >= (r+1)(2p-1)-r-1.
    """
    params.require_whittaker()
    q = q_formula(params)
    m = top_index(params)
    eig = h_eigenvalues(params, band_start(params), m + window)
    if eig[m] != q:
        raise EngineMismatch(f"H_{m} u = {eig[m]} u, formula gives {q}")
    for i in range(m + 1, m + window + 1):
        if eig[i] != 0:
            raise EngineMismatch(f"H_{i} u_zeta should vanish above the top index")
    return q


def hm_squared_formula(p: int, lam_s: Fraction) -> Fraction:
    """(4p)^{2p-1}/((2p-1)!)^2 * lambda_s^{2p-1}."""
    return Fraction((4 * p) ** (2 * p - 1), math.factorial(2 * p - 1) ** 2) * lam_s ** (2 * p - 1)


def check_Hm_squared(params: WhittakerParams) -> bool:
    params.require_whittaker()
    H = singlet_H(params.p)
    u = cyclic_vector(params)
    m = top_index(params)
    lhs = vertex_mode(H, m, vertex_mode(H, m, u))
    lam_s = params.zeta[params.r] ** 2 / (4 * params.p)
    return lhs == u * hm_squared_formula(params.p, lam_s)


def check_HH_commutator(params: WhittakerParams, window: int = 4) -> CheckReport:
    """H_i H_j u == H_j H_i u for i + j = (s+1)(2p-1) - 2, |i - m| <= window."""
    params.require_whittaker()
    H = singlet_H(params.p)
    u = cyclic_vector(params)
    m = top_index(params)
    rep = CheckReport("HH_commutator", {"p": params.p, "zeta": list(params.zeta)})
    for d in range(0, window + 1):
        i, j = m - d, m + d
        diff = vertex_mode(H, i, vertex_mode(H, j, u)) - vertex_mode(H, j, vertex_mode(H, i, u))
        rep.add((i, j), diff.is_zero(), diff)
    return rep


# --- mu table from the omega/H relation ----------------------------------------

@dataclass
class EigenTable:
    p: int
    s: int
    m: int
    q: Fraction
    mu: dict  # i -> Fraction, m-s+t <= i <= m


def _relation_terms(p: int, c: Fraction, N: int):
    """Mode N of c H_{-4}1 - omega_{-1}H_{-2}1 + (2p-1)/2 omega_{-2}H on a vector.

    Returns ``(h_terms, wh)``: h_terms are ``(coef, j)`` for bare H_j, and
    ``wh(i)`` is the coefficient of :omega_i H_j: with j = N - 2 - i, for
    every integer i.
    """
    # (H_{-4}1)_N = (L(-1)^3 H / 3!)_N = -C(N, 3) H_{N-3}
    h_terms = [(-c * binom(N, 3), N - 3)]

    def wh(i):
        j = N - 2 - i
        return Fraction(j + 1) - Fraction(2 * p - 1, 2) * (i + 1)

    return h_terms, wh


def mu_table(p: int, wtype: WhittakerType, q, coefficient=None) -> EigenTable:
    """H-eigenvalues mu_i (m-s+t <= i <= m) on a Whittaker vector of type ``wtype``.

    Each t' = s-1, ..., (s+1)/2 contributes the equation obtained by applying
    mode t'+m+2 of the verified omega/H relation to u and expanding with only
    the abstract rules: omega_i u = lambda_i u on the band, omega_i u = 0 for
    i > s, H_j u = mu_j u once known, H_m u = q u, H_j u = 0 for j > m, and
    the primary bracket [omega_i, H_j] = ((2p-2)i - j) H_{i+j-1}.  Exactly one
    new unknown may appear per equation.
    """
    q = Fraction(q)
    s, lam = wtype.s, wtype.lam
    if lam[s] == 0:
        raise ValueError("lambda_s must be nonzero")
    if q * q != hm_squared_formula(p, lam[s]):
        raise ValueError("q^2 does not match (4p)^{2p-1}/((2p-1)!)^2 lambda_s^{2p-1}")
    if coefficient is None:
        coefficient = solve_relation_2_20(p).coefficient
    t = wtype.t
    m = (s + 1) * (2 * p - 1) // 2 - 1
    mu = {m: q}

    def H_on_u(j):
        """('zero'|'known'|'unknown', value)."""
        if j > m:
            return "zero", Fraction(0)
        if j in mu:
            return "known", mu[j]
        return "unknown", j

    for tp in range(s - 1, t - 1, -1):
        N = tp + m + 2
        h_terms, wh = _relation_terms(p, coefficient, N)
        const = Fraction(0)
        unknown = {}

        def accumulate(coef, j):
            nonlocal const
            kind, val = H_on_u(j)
            if kind == "known":
                const += coef * val
            elif kind == "unknown":
                unknown[val] = unknown.get(val, 0) + coef

        for coef, j in h_terms:
            accumulate(coef, j)
        # i < 0: omega_i H_j u with j = N-2-i >= N-1; needs H_j u = 0
        if N - 1 <= m:
            raise NonTriangular(f"t'={tp}: omega_i H_j u with i < 0 is not controlled")
        for i in range(0, s + 1):
            j = N - 2 - i
            coef = wh(i)
            if not coef:
                continue
            if i >= t:
                # H_j omega_i u = lambda_i H_j u
                accumulate(coef * lam[i], j)
            else:
                # H_j omega_i u = omega_i H_j u - ((2p-2)i - j) H_{i+j-1} u
                if H_on_u(j)[0] != "zero":
                    raise NonTriangular(f"t'={tp}: omega_{i} acts on H_{j} u with unknown omega_{i} u")
                accumulate(-coef * ((2 * p - 2) * i - j), i + j - 1)
        unknown = {j: c for j, c in unknown.items() if c}
        if len(unknown) != 1:
            raise NonTriangular(f"t'={tp}: expected one new unknown, got {sorted(unknown)}")
        (j, c), = unknown.items()
        if j != tp + m - s:
            raise NonTriangular(f"t'={tp}: unknown index {j}, expected {tp + m - s}")
        mu[j] = -const / c
    return EigenTable(p, s, m, q, dict(sorted(mu.items())))


def check_mu_table(params: WhittakerParams) -> CheckReport:
    """mu_table on the realized type against direct H_i u_zeta eigenvalues."""
    wt = whittaker_type(params)
    q = h_top_eigen(params)
    table = mu_table(params.p, wt, q)
    rep = CheckReport("mu_table_vs_fock", {"p": params.p, "zeta": list(params.zeta)})
    lo = table.m - table.s + wt.t
    direct = h_eigenvalues(params, lo, table.m)
    for i in range(lo, table.m + 1):
        rep.add((i,), table.mu[i] == direct[i],
                note=f"table {table.mu[i]} vs Fock {direct[i]}")
    # the two scalar bands should coincide; flag any index in only one of them
    b1 = set(range(band_start(params), table.m + 1))
    b2 = set(range(lo, table.m + 1))
    rep.add(("bands",), b1 == b2, note=f"only in one band: {sorted(b1 ^ b2)}")
    return rep


# --- classification ------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRecord:
    params: WhittakerParams
    type: WhittakerType
    q: Fraction
    partner: WhittakerParams

    def key(self):
        return (self.params.p, self.type.key(), self.q)

    def to_json(self) -> dict:
        return {
            "p": self.params.p,
            "zeta": [format_rational(z) for z in self.params.zeta],
            "lambda": {str(i): format_rational(v) for i, v in sorted(self.type.lam.items())},
            "q": format_rational(self.q),
            "partner_zeta": [format_rational(z) for z in self.partner.zeta],
        }


def classification_record(params: WhittakerParams, verify: bool = True) -> ClassificationRecord:
    wt = whittaker_type(params, verify=verify)
    q = h_top_eigen(params) if verify else q_formula(params)
    partner = fiber_partner(params)
    if verify:
        if whittaker_type(partner) != wt:
            raise EngineMismatch("fiber partner has a different type")
        if h_top_eigen(partner) != -q:
            raise EngineMismatch("fiber partner should carry -q")
        if q != 0 and partner == params:
            raise EngineMismatch("fiber partner coincides with params")
    return ClassificationRecord(params, wt, q, partner)


def rational_grid(bound: int = 3):
    """Distinct rationals a/b with |a| <= bound, 1 <= b <= bound, sorted."""
    return sorted({Fraction(a, b) for a in range(-bound, bound + 1) for b in range(1, bound + 1)})


def check_fiber_completeness(p: int, r: int, bound: int = 3) -> CheckReport:
    """Equal types on the bounded grid only for zeta' in {zeta, partner(zeta)}."""
    from itertools import product
    grid = rational_grid(bound)
    nonzero = [x for x in grid if x]
    groups = {}
    for head in product(grid, repeat=r):
        for last in nonzero:
            pr = WhittakerParams(p, r, head + (last,))
            key = tuple(sorted(type_formula(pr).items()))
            groups.setdefault(key, []).append(pr)
    rep = CheckReport("fiber_completeness", {"p": p, "r": r, "bound": bound})
    for key, members in sorted(groups.items()):
        ok = True
        for a in members:
            allowed = {a, fiber_partner(a)}
            if any(b not in allowed for b in members):
                ok = False
        rep.add((key[-1][1],), ok and len(members) <= 2)
    return rep
