import pytest

from config import Config, get_config
from config_optimized import OptimizedConfig


def test_default_config(monkeypatch):
    monkeypatch.delenv('USE_OPTIMIZED_CONFIG', raising=False)
    assert get_config() is Config


def test_optimized_config(monkeypatch):
    monkeypatch.setenv('USE_OPTIMIZED_CONFIG', '1')
    cfg = get_config()
    assert cfg is OptimizedConfig
    assert cfg.MAX_R < Config.MAX_R
    assert cfg.verify_bounds()['max_r'] == cfg.MAX_R


def test_verify_bounds_are_json_ready():
    bounds = Config.verify_bounds()
    assert bounds['certificate_degrees'] == list(Config.CERTIFICATE_DEGREES)
    assert Config.universe_bounds() == {'max_points': Config.CENSUS_MAX_POINTS,
                                        'max_depth': Config.CENSUS_MAX_DEPTH}


def test_overrides_reach_every_bound():
    cfg = Config.with_overrides(max_r=2, max_depth=2, max_points=1, degrees=[7])
    assert issubclass(cfg, Config)
    assert cfg.MAX_R == 2
    assert cfg.HOMOLOGY_MAX_DEPTH == cfg.CERTIFICATE_MAX_DEPTH == 2
    assert cfg.RANK_MAX_POINTS == cfg.CERTIFICATE_MAX_POINTS == 1
    assert cfg.verify_bounds()['certificate_degrees'] == [7]
    assert Config.CERTIFICATE_DEGREES == (7, 9, 11)


def test_no_overrides_keep_the_class():
    assert Config.with_overrides() is Config
    assert Config.with_overrides(max_depth=None) is Config


def test_unknown_override_rejected():
    with pytest.raises(KeyError):
        Config.with_overrides(max_colors=3)
