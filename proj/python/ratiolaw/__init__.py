"""Random-classifier ratio law, resampling baselines and imbalanced-data metrics."""

from ._ratiolaw import *  # noqa: F401,F403
from ._ratiolaw import RatiolawError, ConfigError, DataError, NumericError  # noqa: F401

__version__ = "0.1.0"
