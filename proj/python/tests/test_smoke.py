import math
import os
import subprocess

import pytest

import photon_uncertainty as pu

SINGLE_BOUND = (1 + math.sqrt(5) / 2) ** 2
BEAM_BOUND = (0.5 + math.sqrt(2)) ** 2


@pytest.mark.parametrize("m", [-1, 0, 1])
def test_single_saturators(m):
    rep = pu.expectation_report(pu.saturator_single(m))
    assert rep.gamma2 == pytest.approx(SINGLE_BOUND, rel=1e-9)
    assert rep.norm == pytest.approx(1.0, rel=1e-12)
    assert not rep.divergent


def test_mean_momentum():
    oracle = math.gamma(1.5 + math.sqrt(5) / 2) / (2 * math.gamma(1 + math.sqrt(5) / 2))
    assert pu.expectation_report(pu.saturator_single(1)).mean_P[2] == pytest.approx(oracle, rel=1e-9)


def test_beam_saturator():
    rep = pu.beam_gamma2(pu.saturator_beam(0))
    assert rep.gamma2 == pytest.approx(BEAM_BOUND, rel=1e-9)
    assert rep.V_f == pytest.approx(rep.V_min, rel=1e-8)


def test_spectrum_and_shooting():
    assert pu.gamma_spectrum("imf", 0, 0) == 1.5
    assert pu.shoot_eigenvalue("beam", 1, 0) == pytest.approx(0.5 + math.sqrt(2), abs=1e-9)
    with pytest.raises(ValueError):
        pu.gamma_spectrum("single", 0, 0)


def test_gaussian_one_dimensional():
    assert pu.one_dimensional_product(pu.gaussian_1d(2.0)) == pytest.approx(0.5, abs=1e-8)


def test_state_round_trip():
    st = pu.state_from_json('{"family": "trial-poly", "m": 1, "coeffs": [0.2]}')
    again = pu.state_from_json(st.to_json())
    assert again(0.3, 0.4, 0.5) == pytest.approx(st(0.3, 0.4, 0.5))
    with pytest.raises(ValueError):
        pu.state_from_json('{"family": "nope"}')


def test_short_sweep():
    runs = pu.figure1_sweep([0, 1, 2])
    values = [r.variance_product for r in runs]
    assert values == sorted(values, reverse=True)
    assert values[0] == pytest.approx(3.488384, abs=1e-6)
    assert pu.fit_eval(0.0) == pytest.approx(pu.exact_endpoint())


def test_cli_spectrum_csv():
    exe = os.environ.get("PHOTON_CLI")
    if not exe:
        pytest.skip("command-line tool location not provided")
    out = subprocess.run([exe, "spectrum", "--system", "beam", "--nmax", "0", "--jmax", "1", "--format", "csv"],
                         check=True, capture_output=True, text=True).stdout
    assert out.splitlines()[1].startswith("beam,0,1,1.91421356")
