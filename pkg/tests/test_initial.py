import math

import numpy as np
import pytest

from coinwalk.errors import ParameterDomainError
from coinwalk.initial import (
    XI1,
    XI2,
    GaussianProfile,
    InitialCondition,
    Localized,
    TwoSite,
    build_state,
    gaussian_profile,
    grid_localized,
    grid_two_site,
    random_ics,
    support,
)
from coinwalk.observables import entropy, reduce_spin


def test_grid_counts_exact():
    # delta=0.4 over four angles bounded by pi/2, pi/2, 2pi, 2pi:
    # 4*4*16*16; delta=0.1 over two angles: 16*126
    assert len(grid_two_site(0.4)) == 16_384
    assert len(grid_localized(0.1)) == 2_016


def test_grid_angles_cover_domain():
    # half-angle convention: alpha spans [0, pi], beta [0, 2*pi]
    ics = grid_localized(0.5)
    alphas = sorted({ic.spin[0] for ic in ics})
    betas = sorted({ic.spin[1] for ic in ics})
    assert alphas[0] == 0.0 and alphas[-1] <= math.pi
    assert betas[0] == 0.0 and betas[-1] <= 2.0 * math.pi
    # step size is delta exactly
    assert abs(alphas[1] - 0.5) < 1e-15


def test_build_localized_normalized_separable():
    st = build_state(InitialCondition(spin=(0.7, 2.1)))
    assert abs(st.norm() - 1.0) < 1e-12
    assert entropy(reduce_spin(st)) == 0.0
    assert st.lo == 0 and len(st.a) == 1


def test_build_two_site_support():
    ic = InitialCondition(spin=(0.3, 0.1), position=TwoSite(0.5, 1.2))
    assert support(ic) == (-1, 1)
    st = build_state(ic)
    assert abs(st.norm() - 1.0) < 1e-12
    # site 0 carries no amplitude: superposition of |-1> and |+1>
    assert st.a[1] == 0.0 and st.b[1] == 0.0
    assert entropy(reduce_spin(st)) < 1e-12


def test_gaussian_profile_variance_and_norm():
    ic = gaussian_profile(5.0, XI1)
    st = build_state(ic)
    assert abs(st.norm() - 1.0) < 1e-12
    p = np.abs(st.a) ** 2 + np.abs(st.b) ** 2
    sites = st.sites()
    var = float(np.sum(sites**2 * p) - np.sum(sites * p) ** 2)
    # discretized Gaussian with probability variance sigma^2
    assert abs(var - 25.0) < 0.05
    # cutoff at 6 sigma
    assert support(ic) == (-30, 30)


def test_gaussian_spin_states():
    assert XI1 == (math.pi / 4.0, math.pi / 2.0)
    assert XI2 == (math.pi / 4.0, 0.0)
    st1 = build_state(gaussian_profile(1.0, XI1))
    # spin part (|up> + i |down>)/sqrt(2): b = i*a everywhere
    assert np.max(np.abs(st1.b - 1j * st1.a)) < 1e-12


def test_random_ics_deterministic_and_distinct():
    a = random_ics(50, 2026)
    b = random_ics(50, 2026)
    assert a == b
    assert len({ic.spin for ic in a}) == 50
    # prefix stability: a longer draw starts with the same ics
    c = random_ics(80, 2026)
    assert c[:50] == a


def test_random_two_site_draws_position_angles():
    ics = random_ics(10, 5, "two-site")
    assert all(isinstance(ic.position, TwoSite) for ic in ics)
    assert len({ic.position for ic in ics}) == 10


def test_bad_arguments_raise():
    with pytest.raises(ParameterDomainError):
        grid_two_site(0.0)
    with pytest.raises(ParameterDomainError):
        random_ics(-1, 1)
    with pytest.raises(ParameterDomainError):
        random_ics(3, 1, kind="ring")
    with pytest.raises(ParameterDomainError):
        build_state(InitialCondition(position=GaussianProfile(-1.0)))
