"""
Optimized Configuration for small machines
Shrinks verification universes so `verify --suite all` stays quick on 2-core laptops
"""
from config import Config


class OptimizedConfig(Config):
    """Reduced bounds for low-resource runs"""

    # Verification runner
    PARALLELISM = 1

    # Chain-poset ranges
    MAX_R = 2  # Down from 3
    CLOSURE_MAX_DEPTH = 2  # Down from 3
    CROSSCUT_MAX_DEPTH = 2
    SUPERADDITIVITY_MAX_DEPTH = 2
    RANK_MAX_DEPTH = 2

    # Homology ranges
    HOMOLOGY_MAX_DEPTH = 3  # Down from 4

    # Type universes
    CENSUS_MAX_POINTS = 2  # Down from 3
    CENSUS_MAX_DEPTH = 3  # Down from 4

    # Certificates: a single degree on a smaller universe
    CERTIFICATE_MAX_POINTS = 2
    CERTIFICATE_MAX_DEPTH = 3
    CERTIFICATE_DEGREES = (9,)

    # Monte Carlo
    DELPEZZO_SAMPLES = 200  # Down from 1000
