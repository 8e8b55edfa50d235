import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    # Output
    OUTPUT_DIR = os.getenv("CENSUS_OUTPUT_DIR", "reports")
    DEFAULT_FORMAT = os.getenv("CENSUS_FORMAT", "json")

    # Logging
    LOG_LEVEL = os.getenv("CENSUS_LOG_LEVEL", "INFO")
    LOG_DIR = os.getenv("CENSUS_LOG_DIR", "")
    LOG_MAX_BYTES = 10 * 1024 * 1024
    LOG_BACKUP_COUNT = 10

    # Randomized checks
    DEFAULT_SEED = int(os.getenv("CENSUS_SEED", "20240611"))
    DELPEZZO_SAMPLES = int(os.getenv("CENSUS_DELPEZZO_SAMPLES", "1000"))
    DELPEZZO_MAX_DEGREE = int(os.getenv("CENSUS_DELPEZZO_MAX_DEGREE", "30"))

    # Verification runner
    PARALLELISM = int(os.getenv("CENSUS_PARALLELISM", "1"))

    # Exact arithmetic guard for Smith normal form entries
    SNF_ENTRY_LIMIT = int(os.getenv("CENSUS_SNF_ENTRY_LIMIT", str(2 ** 62)))

    # Chain-poset verification ranges
    MAX_R = int(os.getenv("CENSUS_MAX_R", "3"))
    CLOSURE_MAX_DEPTH = 3
    CROSSCUT_MAX_DEPTH = 3
    CATALOGUE_MAX_D = 3
    SUPERADDITIVITY_MAX_DEPTH = 3
    RANK_MAX_POINTS = 2
    RANK_MAX_DEPTH = 3

    # Homology ranges (upper word lengths summed over the support)
    HOMOLOGY_MAX_DEPTH = int(os.getenv("CENSUS_HOMOLOGY_MAX_DEPTH", "4"))
    HOMOLOGY_MAX_POINTS = 2

    # Type universes; CENSUS_MAX_* are the census and build-p defaults
    ANTISYMMETRY_MAX_POINTS = 2
    ANTISYMMETRY_MAX_DEPTH = 2
    CENSUS_MAX_POINTS = int(os.getenv("CENSUS_MAX_POINTS", "3"))
    CENSUS_MAX_DEPTH = int(os.getenv("CENSUS_MAX_DEPTH", "4"))

    # build_P certificates checked by the verification runner, one per flavor and degree
    CERTIFICATE_MAX_POINTS = int(os.getenv("CENSUS_CERTIFICATE_MAX_POINTS", "3"))
    CERTIFICATE_MAX_DEPTH = int(os.getenv("CENSUS_CERTIFICATE_MAX_DEPTH", "4"))
    CERTIFICATE_DEGREES = (7, 9, 11)
    CERTIFICATE_MULTIPLICITIES = (2, 2, 2)

    # Attributes moved together by the verify command's bound overrides
    OVERRIDE_TARGETS = {
        'max_r': ('MAX_R',),
        'max_depth': ('CLOSURE_MAX_DEPTH', 'CROSSCUT_MAX_DEPTH', 'SUPERADDITIVITY_MAX_DEPTH',
                      'RANK_MAX_DEPTH', 'HOMOLOGY_MAX_DEPTH', 'ANTISYMMETRY_MAX_DEPTH',
                      'CERTIFICATE_MAX_DEPTH'),
        'max_points': ('RANK_MAX_POINTS', 'HOMOLOGY_MAX_POINTS', 'ANTISYMMETRY_MAX_POINTS',
                       'CERTIFICATE_MAX_POINTS'),
        'degrees': ('CERTIFICATE_DEGREES',),
    }

    @classmethod
    def verify_bounds(cls):
        """Bounds recorded in every verification report"""
        return {
            'max_r': cls.MAX_R,
            'closure_max_depth': cls.CLOSURE_MAX_DEPTH,
            'crosscut_max_depth': cls.CROSSCUT_MAX_DEPTH,
            'catalogue_max_d': cls.CATALOGUE_MAX_D,
            'superadditivity_max_depth': cls.SUPERADDITIVITY_MAX_DEPTH,
            'rank_max_points': cls.RANK_MAX_POINTS,
            'rank_max_depth': cls.RANK_MAX_DEPTH,
            'homology_max_depth': cls.HOMOLOGY_MAX_DEPTH,
            'homology_max_points': cls.HOMOLOGY_MAX_POINTS,
            'antisymmetry_max_points': cls.ANTISYMMETRY_MAX_POINTS,
            'antisymmetry_max_depth': cls.ANTISYMMETRY_MAX_DEPTH,
            'census_max_points': cls.CENSUS_MAX_POINTS,
            'census_max_depth': cls.CENSUS_MAX_DEPTH,
            'certificate_max_points': cls.CERTIFICATE_MAX_POINTS,
            'certificate_max_depth': cls.CERTIFICATE_MAX_DEPTH,
            'certificate_degrees': list(cls.CERTIFICATE_DEGREES),
            'certificate_multiplicities': list(cls.CERTIFICATE_MULTIPLICITIES),
            'delpezzo_samples': cls.DELPEZZO_SAMPLES,
            'delpezzo_max_degree': cls.DELPEZZO_MAX_DEGREE,
        }

    @classmethod
    def universe_bounds(cls):
        return {'max_points': cls.CENSUS_MAX_POINTS, 'max_depth': cls.CENSUS_MAX_DEPTH}

    @classmethod
    def with_overrides(cls, **overrides):
        """
        Subclass with the given bounds replaced; None values are ignored.
        Keys are those of OVERRIDE_TARGETS.
        """
        attributes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in cls.OVERRIDE_TARGETS:
                raise KeyError(f"unknown bound override {key!r}")
            if isinstance(value, list):
                value = tuple(value)
            for target in cls.OVERRIDE_TARGETS[key]:
                attributes[target] = value
        if not attributes:
            return cls
        return type(f"{cls.__name__}WithOverrides", (cls,), attributes)


def get_config():
    """Return the active configuration class"""
    if os.getenv('USE_OPTIMIZED_CONFIG'):
        from config_optimized import OptimizedConfig
        return OptimizedConfig
    return Config
