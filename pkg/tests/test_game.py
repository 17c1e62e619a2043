import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from discordgame import game
from discordgame.game import StrategyProfile
from discordgame.quantum import bell_state, discorded_state
import oracles

PI = math.pi
OPT = StrategyProfile(PI / 2, 0.0, PI / 2, 0.0, 7 * PI / 8)
angle = st.floats(0, 2 * PI, allow_nan=False, exclude_max=True)
profiles = st.builds(StrategyProfile, angle, angle, angle, angle, angle)


def test_table_chsh_entries():
    t = game.table_chsh()
    assert t.get("a", "b", 1, 1) == 1
    assert t.get("a'", "b'", 1, 1) == 0
    assert t.get("a'", "b'", 1, -1) == 1
    assert t.entries.sum() == 8


def test_table_modified_entries():
    t = game.table_modified()
    assert t.get("a", "b", 1, 1) == -1
    assert t.get("a", "b'", -1, 1) == 1
    assert t.get("a'", "b'", 1, 1) == 1
    assert t.get("a'", "b", -1, -1) == -1
    with pytest.raises(KeyError):
        t.get("c", "b", 1, 1)


def test_table_and_prior_validation():
    with pytest.raises(ValueError):
        game.PayoffTable(np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        game.PayoffTable(np.full((2, 2, 2, 2), np.inf))
    with pytest.raises(ValueError):
        game.Prior(np.full((2, 2), 0.3))
    assert game.Prior.uniform().weights.sum() == 1.0


def test_profile_wraps_angles():
    p = StrategyProfile(-PI / 2, 2 * PI, 7.0, 0.0, -0.1)
    assert all(0 <= v < 2 * PI for v in p)
    assert p.theta_a == pytest.approx(1.5 * PI)


def test_bruteforce_examples():
    spec = game.modified_game()
    assert game.expected_payoff_bruteforce(spec, OPT) == pytest.approx(0.30178, abs=5e-5)
    assert game.expected_payoff_bruteforce(spec, StrategyProfile(PI / 2, 0, PI / 2, 0, 0)) == pytest.approx(0.25, abs=1e-12)
    chsh = game.chsh_game("bell")
    value = game.expected_payoff_bruteforce(chsh, StrategyProfile(0, PI / 2, PI / 4, 7 * PI / 4))
    assert value == pytest.approx((2 + math.sqrt(2)) / 4, abs=1e-12)


def test_bruteforce_matches_explicit_oracle(rng):
    table = game.table_modified().entries.tolist()
    for v in rng.uniform(0, 2 * PI, (200, 5)):
        p = StrategyProfile(*v)
        expected = oracles.born_payoff(table, p.angles, oracles.mixed_state(p.x))
        assert game.expected_payoff_bruteforce(game.modified_game(), p) == pytest.approx(expected, abs=1e-13)


def test_closed_form_examples():
    assert game.f_closed_form(*OPT) == pytest.approx((2 + 2 * math.sqrt(2)) / 16, abs=1e-15)
    assert game.f_closed_form(*OPT) == pytest.approx(0.3017767, abs=1e-7)
    assert game.f_closed_form(0, 0, 0, 0, 0) == pytest.approx(-0.5, abs=1e-15)


@given(profiles)
def test_closed_form_equals_bruteforce(p):
    assert abs(game.f_closed_form(*p) - game.expected_payoff_bruteforce(game.modified_game(), p)) < 1e-10


@given(profiles)
def test_decomposition_identity(p):
    assert abs(game.f_closed_form(*p) - (game.f_classical(*p) + game.f_quantum(*p))) < 1e-12
    d = game.decompose(p)
    assert abs(d.total - d.classical - d.quantum) < 1e-12


@given(angle, angle, angle, angle)
def test_classical_when_x_zero(a, ap, b, bp):
    assert game.f_closed_form(a, ap, b, bp, 0.0) == pytest.approx(game.f_classical(a, ap, b, bp), abs=1e-15)


def test_quantum_part_vanishes_at_zero_and_pi(rng):
    for v in rng.uniform(0, 2 * PI, (1000, 4)):
        assert abs(game.f_quantum(*v, 0.0)) < 1e-12
        assert abs(game.f_quantum(*v, PI)) < 1e-12


def test_classical_examples():
    assert game.f_classical(PI / 2, 0, PI / 2, 0) == pytest.approx(0.25, abs=1e-15)
    assert game.f_classical(0, 0, 0, 0) == pytest.approx(-0.5)
    assert game.f_classical(PI / 2, PI / 4, 0, 0) == pytest.approx(0.0, abs=1e-15)


def test_quantum_examples():
    assert game.f_quantum(PI / 2, 0, PI / 2, 0, 7 * PI / 8) == pytest.approx((math.sqrt(2) - 1) / 8, abs=1e-15)
    assert game.f_quantum(PI / 2, 0, PI / 2, 0, 7 * PI / 8) == pytest.approx(0.828 / 16, abs=1e-4)
    xs = np.linspace(0, 2 * PI, 4097)
    reduced = -(np.sin(xs) / 4) * (np.sin(xs) + np.cos(xs))
    np.testing.assert_allclose(game.f_quantum(PI / 2, 0, PI / 2, 0, xs), reduced, atol=1e-15)
    peaks = xs[np.argsort(reduced)[-2:]]
    np.testing.assert_allclose(sorted(peaks), [7 * PI / 8, 15 * PI / 8], atol=2e-3)


def test_decompose_examples():
    d = game.decompose(OPT)
    assert (d.total, d.classical, d.quantum) == pytest.approx((0.3017767, 0.25, 0.0517767), abs=1e-7)
    assert d.kappa == pytest.approx(0.0517767 / 0.25, abs=1e-6)
    assert d.kappa == pytest.approx(0.2071, abs=1e-4)
    d = game.decompose(StrategyProfile(PI / 2, PI / 4, 0, 0, 2.0))
    assert d.kappa == math.inf
    d = game.decompose(StrategyProfile(PI / 2, 0, PI / 2, 0, 0.0))
    assert d.quantum == 0.0 and d.kappa == 0.0


def test_kappa_markers():
    assert game.kappa_from_parts(0.2, 0.2) == 1.0
    assert game.kappa_from_parts(0.0, 0.1) == math.inf
    assert game.kappa_from_parts(0.0, 0.0) is None
    assert game.kappa_from_parts(-0.1, 0.1) is None
    assert game.kappa_from_parts(0.1, -0.1) is None
    assert game.kappa_from_parts(-1e-8, 0.1, zero_tol=1e-6) == math.inf
    assert game.kappa_to_json(None) == "undefined"
    assert game.kappa_to_json(math.inf) == "inf"


def test_kappa_above_one_iff_quantum_dominates(rng):
    checked = 0
    for v in rng.uniform(0, 2 * PI, (20000, 5)):
        cl, q = float(game.f_classical(*v)), float(game.f_quantum(*v))
        if cl <= 1e-9 or q < 0:
            continue
        k = game.kappa(StrategyProfile(*v))
        assert (k > 1) == (q > cl)
        checked += 1
    assert checked > 1000


def test_players_agree():
    spec = game.modified_game()
    for v in np.random.default_rng(3).uniform(0, 2 * PI, (100, 5)):
        p = StrategyProfile(*v)
        assert game.expected_payoff_bruteforce(spec, p, "A") == pytest.approx(
            game.expected_payoff_bruteforce(spec, p, "B"), abs=1e-12
        )
    assert spec.payoff_A == spec.payoff_B


def test_non_uniform_prior_changes_bruteforce_only():
    t = game.table_modified()
    skewed = game.Prior(np.array([[0.7, 0.1], [0.1, 0.1]]))
    spec = game.GameSpec(t, t, skewed, skewed)
    p = StrategyProfile(0.3, 1.1, 2.0, 0.4, 1.0)
    value = game.expected_payoff_bruteforce(spec, p)
    assert abs(value - game.f_closed_form(*p)) > 1e-3
    rho = discorded_state(p.x)
    manual = sum(
        skewed.weights[al, be] * t.entries[al, be, i, j]
        * game.joint_probability(s, u, game.DetectorSetting(p.angles[al]), game.DetectorSetting(p.angles[2 + be]), rho)
        for al in range(2) for be in range(2) for i, s in enumerate((1, -1)) for j, u in enumerate((1, -1))
    )
    assert value == pytest.approx(manual, abs=1e-14)


def test_batch_matches_scalar(rng):
    v = rng.uniform(0, 2 * PI, (5, 300))
    for spec in (game.modified_game(), game.chsh_game("bell"), game.chsh_game(bell_state())):
        batch = game.expected_payoff_batch(spec, *v)
        scalar = [game.expected_payoff_bruteforce(spec, StrategyProfile(*col)) for col in v.T]
        np.testing.assert_allclose(batch, scalar, atol=1e-13)
    # broadcasting over an open mesh
    out = game.expected_payoff_batch(game.modified_game(), v[0][:, None], v[1][:, None], v[2][:, None], v[3][:, None], v[4][None, :7])
    assert out.shape == (300, 7)
