import numpy as np
import pytest
from pydantic import ValidationError

from hormander_lab.src.models import families
from hormander_lab.src.models.families import LPFamily

RHO = np.geomspace(2.0**-4, 2.0**4, 2001)


class TestProfiles:
    def test_bump_and_step(self):
        """Bump is 1 at the centre and vanishes off (-1, 1); the step is symmetric."""
        assert families.smooth_bump(np.array([0.0]))[0] == 1.0
        assert np.all(families.smooth_bump(np.array([-1.0, 1.0, 1.5])) == 0.0)
        assert families.smooth_step(np.array([0.0, 0.5, 1.0])).tolist() == [0.0, 0.5, 1.0]

    def test_psi_support(self):
        """psi^ vanishes outside the open annulus (1/2, 2)."""
        assert np.all(families.psi_profile(np.array([0.0, 0.25, 0.5, 2.0, 3.0])) == 0.0)
        assert families.psi_profile(np.array([1.0]))[0] > 0

    def test_psi_partition_of_unity(self):
        """Dyadic dilates of psi^ sum to one away from the origin."""
        total = sum(families.psi_profile(RHO / 2.0**k) for k in range(-6, 7))
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_phi_plus_tail(self):
        """phi^ is the part of the partition below scale one."""
        tail = sum(families.psi_profile(RHO / 2.0**j) for j in range(1, 7))
        total = families.phi_profile(RHO) + tail
        np.testing.assert_allclose(total, 1.0, atol=1e-12)
        assert np.all(families.phi_profile(np.array([0.0, 0.5, 1.0])) == 1.0)
        assert np.all(families.phi_profile(np.array([2.0, 3.0])) == 0.0)

    def test_cutoff(self):
        """eta is 1 near the origin, 0 beyond 1 and nonincreasing."""
        u = np.linspace(0.0, 1.5, 301)
        eta = families.cutoff_profile(u)
        assert np.all(eta[u <= 0.5] == 1.0)
        assert np.all(eta[u >= 1.0] == 0.0)
        assert np.all(np.diff(eta) <= 0)

    def test_plateau(self):
        values = families.plateau_profile(np.array([0.5, 1.0, 2.0, 3.0, 5.0]), 0.5, 1.0, 3.0, 5.0)
        assert values.tolist() == [0.0, 1.0, 1.0, 1.0, 0.0]

    def test_theta_annulus(self):
        assert families.theta_annulus(1) == (0.125, 0.25, 4.0, 8.0)


class TestLPFamily:
    def test_window_and_guard_band(self):
        fam = LPFamily(m=2, n=1, k_min=-3, k_max=3, partition_defect=0.0, low_defect=0.0)
        assert list(fam.window) == list(range(-3, 4))
        assert fam.guard_band == (0.25, 4.0)
        assert fam.annuli()["Gamma"]["plateau_lo"] == 0.999

    def test_narrow_window_rejected(self):
        with pytest.raises(ValidationError):
            LPFamily(m=1, n=1, k_min=0, k_max=1, partition_defect=0.0, low_defect=0.0)

    def test_failed_certificate_rejected(self):
        with pytest.raises(ValidationError):
            LPFamily(m=1, n=1, k_min=-3, k_max=3, partition_defect=1e-6, low_defect=0.0)
