import pytest

from config import Config
from lattice import build_blowup_poset


class SmallConfig(Config):
    """Bounds small enough for every suite to run inside the unit tests"""
    PARALLELISM = 1
    MAX_R = 2
    CLOSURE_MAX_DEPTH = 2
    CROSSCUT_MAX_DEPTH = 2
    CATALOGUE_MAX_D = 2
    SUPERADDITIVITY_MAX_DEPTH = 2
    RANK_MAX_POINTS = 2
    RANK_MAX_DEPTH = 2
    HOMOLOGY_MAX_DEPTH = 2
    HOMOLOGY_MAX_POINTS = 2
    ANTISYMMETRY_MAX_POINTS = 2
    ANTISYMMETRY_MAX_DEPTH = 2
    CENSUS_MAX_POINTS = 1
    CENSUS_MAX_DEPTH = 2
    CERTIFICATE_MAX_POINTS = 2
    CERTIFICATE_MAX_DEPTH = 2
    CERTIFICATE_DEGREES = (9,)
    DELPEZZO_SAMPLES = 100


@pytest.fixture
def q1():
    return build_blowup_poset(1, 3)


@pytest.fixture
def q2():
    return build_blowup_poset(2, 3)


@pytest.fixture
def q3():
    return build_blowup_poset(3, 3)


@pytest.fixture
def small_config():
    return SmallConfig


@pytest.fixture
def small_env(monkeypatch):
    """Route get_config() to the small bounds for CLI runs"""
    import config

    monkeypatch.setattr(config, 'get_config', lambda: SmallConfig)
    for module in ('cli', 'stability', 'commands.census_commands', 'commands.build_p_commands',
                   'commands.verify_commands'):
        monkeypatch.setattr(f"{module}.get_config", lambda: SmallConfig)
    return SmallConfig
