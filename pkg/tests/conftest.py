import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def P():
    from omegacalc.gring import PolyF2

    def make(text, md=16):
        return PolyF2.parse(text, md)

    return make
