import pytest
from hypothesis import settings

from bigcell.groups import build_parabolic
from bigcell.sampling import Sampler

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SHIPPED = {
    "sl2-borel": ("SL", 2, "borel"),
    "sl3-21": ("SL", 3, (2, 1)),
    "gl4-22": ("GL", 4, (2, 2)),
    "sp4-siegel": ("Sp", 4, "siegel"),
}


def datum(key):
    fam, n, sel = SHIPPED[key]
    return build_parabolic(fam, n, sel)


@pytest.fixture(params=sorted(SHIPPED))
def shipped(request):
    return datum(request.param)


@pytest.fixture
def sl2():
    return datum("sl2-borel")


@pytest.fixture
def sp4():
    return datum("sp4-siegel")


@pytest.fixture
def sampler():
    return Sampler(3, 1, seed=11)
