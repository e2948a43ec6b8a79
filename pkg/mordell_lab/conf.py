"""
    conf.py - Defaults and the configuration file layer.

Values resolve in the order command-line flags > configuration file > the defaults below.
"""
import json
import logging
import os
from collections import OrderedDict

from .exceptions import ImproperlyConfigured


__all__ = ["DEFAULT_EPS_INTERIOR", "DEGENERACY_RATIO", "DEFAULT_TOLERANCE_REL", "DEFAULT_WEIGHT_LOG_STD",
           "MAX_WEIGHT_LOG_STD", "DEFAULT_MIN_ANGLE_FLOOR", "HISTOGRAM_BINS", "SCHEMA_VERSION", "TINY",
           "CONFIG_FIELDS", "CONFIG_TYPES", "load_config_file", "resolve_options"]


logger = logging.getLogger(__name__)

# ===== Geometry =====
DEFAULT_EPS_INTERIOR = 1e-6
DEGENERACY_RATIO = 1e-12  # |area| < ratio * (max side)**2 is rejected
GEOMETRY_RTOL = 1e-9

# ===== Catalog =====
TINY = 1e-300

# ===== Sampling =====
DEFAULT_TOLERANCE_REL = 1e-9
DEFAULT_WEIGHT_LOG_STD = 0.5
MAX_WEIGHT_LOG_STD = 5.0
UNIFORM_MIN_ANGLE = 0.05
NEAR_DEGENERATE_MIN_ANGLE = 1e-3
NEAR_DEGENERATE_CONCENTRATION = 0.5
NEAR_EQUILATERAL_STD = 0.05
MAX_RESAMPLES = 100

# ===== Search =====
DEFAULT_MIN_ANGLE_FLOOR = 0.02
DEFAULT_STARTS = 16
DEFAULT_ITERATIONS = 2000
DEFAULT_PROBE_RADIUS = 1e-2

# ===== Reports =====
HISTOGRAM_BINS = 64
HISTOGRAM_LOG_RANGE = (-16, 0)
SCHEMA_VERSION = 1


def _integer(minimum):
    def convert(value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError("expected an integer")
        if value < minimum:
            raise ValueError("expected an integer >= %d" % minimum)
        return value
    return convert


def _number(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("expected a number")
    return float(value)


def _flag(value):
    if not isinstance(value, bool):
        raise ValueError("expected true or false")
    return value


def _text(choices=None, nullable=False):
    def convert(value):
        if value is None and nullable:
            return None
        if not isinstance(value, str):
            raise ValueError("expected a string")
        if choices is not None and value not in choices:
            raise ValueError("expected one of %s" % ", ".join(choices))
        return value
    return convert


def _ids(value):
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return ",".join(value)
    return _text()(value)


# Field names accepted in a JSON configuration file (same names as the command line flags) and their converters
CONFIG_TYPES = OrderedDict([
    ("samples", _integer(1)), ("seed", _integer(0)), ("ids", _ids), ("shape", _text()), ("weight_std", _number),
    ("tol", _number), ("eps_interior", _number), ("locus_vertex", _text(("A", "B", "C", "a", "b", "c"), True)),
    ("bridges", _flag), ("starts", _integer(0)), ("iters", _integer(1)), ("floor", _number), ("locus", _flag),
    ("radius", _number), ("probes", _integer(0)), ("trace", _flag), ("out", _text(nullable=True)),
    ("format", _text(("json", "csv", "both"))), ("threads", _integer(0)),
])
CONFIG_FIELDS = tuple(CONFIG_TYPES)


def load_config_file(filename):
    """Read a JSON configuration file into a dict of option values.

    Args:
        filename (str): Path to a JSON object whose keys are flag names ("weight-std" or "weight_std").

    Raises:
        ImproperlyConfigured: If the file cannot be read, is not a JSON object, names an unknown option or holds
            a value of the wrong type.
    """
    if filename is None:
        return {}

    try:
        with open(filename, "r") as file:
            data = json.load(file)
    except (OSError, ValueError) as err:
        raise ImproperlyConfigured("Cannot read configuration file %r: %s" % (filename, err)) from err

    if not isinstance(data, dict):
        raise ImproperlyConfigured("Configuration file %r must hold a JSON object." % filename)

    options = {}
    for key, value in data.items():
        name = str(key).replace("-", "_")
        if name not in CONFIG_TYPES:
            raise ImproperlyConfigured("Unknown configuration field %r in %r." % (key, filename))
        try:
            options[name] = CONFIG_TYPES[name](value)
        except ValueError as err:
            raise ImproperlyConfigured("Invalid value %r for %r in %r: %s." % (value, key, filename, err)) from err
    logger.debug("Loaded %d option(s) from %s", len(options), os.path.abspath(filename))
    return options


def resolve_options(flags, file_options=None, defaults=None):
    """Merge option dicts; flags that were not given on the command line are None and fall through."""
    resolved = dict(defaults or {})
    resolved.update(file_options or {})
    resolved.update({key: value for key, value in flags.items() if value is not None})
    return resolved
