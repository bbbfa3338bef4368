import os

import hypothesis
import mpmath
import pytest

from spectral_gluing import Circle, GeometryConfig, Laboratory, Point

hypothesis.settings.register_profile("dev", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

#: Identities that are exact on finite spectra.
EXACT = 1e-10

#: Quantities computed through the Mellin transform of a heat trace.
MELLIN = 1e-8

LOG2 = mpmath.log(2)


@pytest.fixture
def point_lab():
    return Laboratory(GeometryConfig(cross_section=Point(), lhs_method="factorized"))


@pytest.fixture
def twisted_circle():
    return Circle(holonomy="1/2")


@pytest.fixture
def twisted_lab(twisted_circle):
    return Laboratory(GeometryConfig(cross_section=twisted_circle, lhs_method="factorized"))
