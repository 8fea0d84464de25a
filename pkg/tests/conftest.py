import pytest

from ssmana.measure import REFERENCE_IFS_NAMES, preset_ifs
from ssmana.phase import PhaseSpec, WeightSpec


@pytest.fixture
def cantor():
    return preset_ifs("cantor")


@pytest.fixture
def biased3():
    return preset_ifs("biased3")


@pytest.fixture(params=REFERENCE_IFS_NAMES)
def any_ifs(request):
    return preset_ifs(request.param)


@pytest.fixture
def square():
    return PhaseSpec.quadratic(1.0)


@pytest.fixture
def unit_weight():
    return WeightSpec.constant(1.0)
