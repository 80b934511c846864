import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import whittaker_params
from vsing.modes import cyclic_vector, vertex_mode
from vsing.singlet import singlet_H
from vsing.state import WhittakerParams
from vsing.virasoro import omega
from vsing.whittaker import (
    NonTriangular,
    WhittakerType,
    band_start,
    check_fiber_completeness,
    check_HH_commutator,
    check_Hm_squared,
    check_mu_table,
    classification_record,
    fiber_partner,
    h_eigenvalues,
    h_top_eigen,
    hm_squared_formula,
    mu_table,
    q_formula,
    rational_grid,
    top_index,
    type_formula,
    whittaker_type,
)

WP = WhittakerParams(2, 1, (0, 2))


def test_worked_type():
    t = whittaker_type(WP)
    assert t.s == 3
    assert t.lam == {2: -1, 3: Fraction(1, 2)}
    assert t.t == 2


def test_worked_partner_and_q():
    assert fiber_partner(WP).zeta == (4, -2)
    assert h_top_eigen(WP) == Fraction(4, 3)
    assert h_top_eigen(fiber_partner(WP)) == Fraction(-4, 3)
    assert top_index(WP) == 5


def test_worked_H5_squared():
    H = singlet_H(2)
    u = cyclic_vector(WP)
    assert vertex_mode(H, 5, vertex_mode(H, 5, u)) == u * Fraction(16, 9)
    assert hm_squared_formula(2, Fraction(1, 2)) == Fraction(16, 9)


def test_p3_H9_squared():
    pr = WhittakerParams(3, 1, (0, 1))
    assert q_formula(pr) == Fraction(1, 120)
    assert check_Hm_squared(pr)
    H = singlet_H(3)
    u = cyclic_vector(pr)
    assert vertex_mode(H, 9, vertex_mode(H, 9, u)) == u * Fraction(1, 120) ** 2


@given(whittaker_params())
def test_type_formula_matches_engine(pr):
    # whittaker_type(verify=True) raises EngineMismatch on any disagreement
    t = whittaker_type(pr)
    assert t.s == 2 * pr.r + 1
    u = cyclic_vector(pr)
    assert vertex_mode(omega(pr.p), t.s + 1, u).is_zero()


@given(whittaker_params())
def test_fiber_involution(pr):
    partner = fiber_partner(pr)
    assert fiber_partner(partner) == pr
    assert type_formula(partner) == type_formula(pr)
    assert partner != pr


@given(whittaker_params(ps=(2,)))
def test_h_spectrum_band(pr):
    q = h_top_eigen(pr)
    assert q == q_formula(pr)
    eig = h_eigenvalues(pr, band_start(pr), top_index(pr) + 2)
    assert eig[top_index(pr) + 1] == 0


@given(whittaker_params(ps=(2,)))
def test_Hm_squared_property(pr):
    assert check_Hm_squared(pr)


def test_mu4_worked_instance():
    wt = WhittakerType(3, {2: Fraction(-1), 3: Fraction(1, 2)})
    table = mu_table(2, wt, Fraction(4, 3))
    assert table.m == 5
    assert table.mu[4] == -4
    assert table.mu[5] == Fraction(4, 3)
    assert sorted(table.mu) == [4, 5]


def test_mu_table_rejects_bad_q():
    wt = WhittakerType(3, {2: Fraction(-1), 3: Fraction(1, 2)})
    with pytest.raises(ValueError):
        mu_table(2, wt, Fraction(1, 3))


@pytest.mark.parametrize("zeta", [(0, 2), (0, 0, 1)])
def test_mu_table_independent_of_relation_coefficient(zeta):
    # the H_{-4}1 term contributes H_{N-3} with N-3 = t'+m-1 > m, which kills u
    pr = WhittakerParams.from_zeta(2, zeta)
    wt = whittaker_type(pr)
    q = h_top_eigen(pr)
    assert mu_table(2, wt, q).mu == mu_table(2, wt, q, coefficient=Fraction(4, 3)).mu


@pytest.mark.parametrize("zeta", [(0, 2), (1, Fraction(-1, 2)), (0, 0, 1), (Fraction(1, 3), 2, -1)])
@pytest.mark.parametrize("p", [2, 3])
def test_mu_table_against_fock(p, zeta):
    rep = check_mu_table(WhittakerParams.from_zeta(p, zeta))
    assert rep.passed, [c.note for c in rep.failures]


@pytest.mark.parametrize("s", [2, 4, 1])
def test_type_rejects_bad_s(s):
    with pytest.raises(ValueError):
        WhittakerType(s, {s: Fraction(1)})


def test_type_rejects_zero_lambda_s():
    with pytest.raises(ValueError):
        WhittakerType(3, {2: Fraction(1), 3: Fraction(0)})


def test_requires_whittaker():
    with pytest.raises(ValueError):
        whittaker_type(WhittakerParams(2, 1, (1, 0)))
    with pytest.raises(ValueError):
        fiber_partner(WhittakerParams.vacuum(2))


def test_HH_commutator():
    assert check_HH_commutator(WP).passed
    assert check_HH_commutator(WhittakerParams(3, 2, (0, 1, -1)), 2).passed


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_fiber_completeness(p, r):
    rep = check_fiber_completeness(p, r, bound=2)
    assert rep.passed
    assert rep.cases


def test_rational_grid():
    g = rational_grid(2)
    assert g == sorted(set(g))
    assert Fraction(-1, 2) in g and Fraction(2) in g


def test_classification_record_json():
    rec = classification_record(WP)
    obj = rec.to_json()
    assert obj == {"p": 2, "zeta": ["0/1", "2/1"], "lambda": {"2": "-1/1", "3": "1/2"},
                   "q": "4/3", "partner_zeta": ["4/1", "-2/1"]}
    assert json.loads(json.dumps(obj)) == obj


@given(whittaker_params(ps=(2,)))
def test_partner_record_negates_q(pr):
    rec = classification_record(pr)
    other = classification_record(rec.partner)
    assert other.type == rec.type
    assert other.q == -rec.q


def test_nontriangular_is_arithmetic_error():
    assert issubclass(NonTriangular, ArithmeticError)
