"""Admissibility predicates and the jet samplers."""

import math
from fractions import Fraction

import numpy as np
import pytest

from coeffforge import (SchwarzJet, is_admissible, is_schur_admissible,
                        jet_constraint_profile, rationalize, sample_jet_arrays,
                        sample_jets)
from coeffforge.schwarz import block_size, sample_block_arrays
from helpers import exact_jet

F = Fraction


# -- Schur-Carlson ------------------------------------------------------------

def test_schur_boundary_c1_zero():
    assert is_schur_admissible(0.0, 1.0)


def test_schur_full_c1_forces_c2_zero():
    assert not is_schur_admissible(1.0, 0.1)
    assert is_schur_admissible(1.0, 0.0)


def test_schur_derived_boundary():
    assert is_schur_admissible(0.6, 0.64)
    assert not is_schur_admissible(0.6, 0.65)


def test_schur_exact_comparisons():
    assert is_schur_admissible(exact_jet(F(3, 5), 0, 0).c1, exact_jet(F(16, 25), 0, 0).c1)
    over = exact_jet(F(3, 5), F(16, 25) + F(1, 10 ** 9), 0)
    assert not is_schur_admissible(over.c1, over.c2)


def test_schur_tolerance_band():
    assert is_schur_admissible(1.0 + 5e-13, 0.0)
    assert not is_schur_admissible(1.0 + 1e-9, 0.0)


# -- constraint profile ---------------------------------------------------------

def test_profile_corner_saturates_exactly():
    jet = exact_jet(1, 0, 0)
    for lam in (F(1, 4), F(1, 2), F(9, 10), F(1)):
        prof = jet_constraint_profile(lam, jet)
        assert prof.t == lam          # exact equality, rational square root
        assert prof.c3_slack == 0
        assert prof.satisfied


def test_profile_corner_forces_c3_zero():
    jet = exact_jet(1, 0, F(1, 10 ** 6))
    prof = jet_constraint_profile(F(1, 2), jet)
    assert prof.c3_slack == 0
    assert not prof.second_ok


def test_profile_zero_jet():
    prof = jet_constraint_profile(F(1, 2), exact_jet(0, 0, 0))
    assert prof.t == 0
    assert prof.c3_slack == F(1, 2)
    assert prof.satisfied


def test_profile_saturating_c2():
    # c1 = 0, c2 = 1/2 at the parameter 1: t = 1, slack 0, so |4 c3| <= 0
    assert jet_constraint_profile(F(1), exact_jet(0, F(1, 2), 0)).satisfied
    prof = jet_constraint_profile(F(1), exact_jet(0, F(1, 2), F(1, 100)))
    assert prof.t == 1 and prof.c3_slack == 0
    assert not prof.second_ok


def test_profile_float_mode():
    prof = jet_constraint_profile(0.5, SchwarzJet(1.0 + 0j, 0j, 0j))
    assert prof.t == pytest.approx(0.5, abs=1e-15)
    assert prof.satisfied


def test_profile_lambda_range():
    for lam in (0.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            jet_constraint_profile(lam, SchwarzJet(0j, 0j, 0j))


def test_slack_nonnegative_when_first_holds():
    rng = np.random.default_rng(3)
    for _ in range(200):
        lam = float(rng.uniform(0.05, 1.0))
        jet = sample_jets(lam, 1, seed=int(rng.integers(1 << 30)))[0]
        prof = jet_constraint_profile(lam, jet)
        assert prof.first_ok
        assert prof.c3_slack >= -1e-12


# -- samplers --------------------------------------------------------------------

def test_sampler_single_jet_contract():
    jet = sample_jets(0.7, 1, seed=42)[0]
    assert is_schur_admissible(jet.c1, jet.c2)
    assert jet_constraint_profile(0.7, jet).satisfied


@pytest.mark.parametrize("strategy", ["uniform", "boundary-biased", "grid"])
def test_sampler_deterministic(strategy):
    a = sample_jets(0.4, 300, seed=9, strategy=strategy)
    b = sample_jets(0.4, 300, seed=9, strategy=strategy)
    assert a == b


@pytest.mark.parametrize("strategy", ["uniform", "boundary-biased", "grid"])
@pytest.mark.parametrize("lam", [0.05, 0.3, 1.0])
def test_sampler_emits_only_admissible(strategy, lam):
    for jet in sample_jets(lam, 400, seed=1, strategy=strategy):
        assert is_schur_admissible(jet.c1, jet.c2)
        assert jet_constraint_profile(lam, jet).satisfied


def test_grid_includes_corner():
    jets = sample_jets(0.5, 100, seed=0, strategy="grid")
    assert jets[0] == SchwarzJet(1.0 + 0.0j, 0.0j, 0.0j)


def test_sampler_count_validation():
    with pytest.raises(ValueError):
        sample_jets(0.5, 0)


def test_sampler_lambda_validation():
    with pytest.raises(ValueError):
        sample_jets(1.2, 10)


def test_sampler_unknown_strategy():
    with pytest.raises(ValueError):
        sample_jets(0.5, 10, strategy="latin-hypercube")


def test_rotation_closure():
    rng = np.random.default_rng(17)
    jets = sample_jets(0.6, 50, seed=5, strategy="uniform")
    for jet in jets:
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        rotated = jet.rotated(theta)
        assert is_schur_admissible(rotated.c1, rotated.c2, tol=1e-10)
        assert jet_constraint_profile(0.6, rotated, tol=1e-10).satisfied


def test_rotation_reduction_option():
    c1, _, _ = sample_jet_arrays(0.5, 500, seed=3, strategy="uniform",
                                 rotation_reduce=True)
    assert np.all(np.abs(c1.imag) == 0.0)
    assert np.all(c1.real >= 0.0)


def test_schur_only_relaxation():
    c1, c2, c3 = sample_jet_arrays(0.2, 500, seed=8, strategy="uniform",
                                   constraint="schur")
    assert np.all(c3 == 0)
    for a, b in zip(c1, c2):
        assert is_schur_admissible(complex(a), complex(b))


def test_block_partition_matches_sequential():
    lam, seed, count = 0.35, 123, 2 * block_size() + 700
    c1, c2, c3 = sample_jet_arrays(lam, count, seed=seed, strategy="boundary-biased")
    parts = [sample_block_arrays(lam, seed, b, strategy="boundary-biased")
             for b in range(3)]
    c1b = np.concatenate([p[0] for p in parts])[:count]
    assert np.array_equal(c1, c1b)


def test_jet_json_roundtrip():
    jet = SchwarzJet(0.5 + 0.25j, -0.1j, 0.01 + 0j)
    assert SchwarzJet.from_json(jet.to_json()) == jet
    with pytest.raises(ValueError):
        SchwarzJet.from_json({"c1": [0, 0]})


def test_rationalize_exact_binary():
    jet = SchwarzJet(0.5 + 0.25j, 0.125j, 0j)
    exact = rationalize(jet)
    assert exact.c1.re == F(1, 2) and exact.c1.im == F(1, 4)
    assert exact.c2.im == F(1, 8)
    capped = rationalize(SchwarzJet(1 / 3 + 0j, 0j, 0j), max_denominator=100)
    assert capped.c1.re == F(1, 3)


def test_is_admissible_wrapper():
    assert is_admissible(0.5, SchwarzJet(1.0 + 0j, 0j, 0j))
    assert not is_admissible(0.5, SchwarzJet(1.0 + 0j, 0.5 + 0j, 0j))
    # Schur-only relaxation admits jets the full constraint rejects
    jet = SchwarzJet(0.0j, 0.9 + 0j, 0j)
    assert is_admissible(0.5, jet, constraint="schur")
    assert not is_admissible(0.5, jet)
