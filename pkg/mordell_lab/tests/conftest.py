import math
import os
from collections import OrderedDict

import pytest

from mordell_lab.geometry import Triangle, Point2
from mordell_lab.verify import SamplerConfig, draw_sample


DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
MATH_NAMES = {name: getattr(math, name) for name in dir(math) if not name.startswith("_")}


def _value(expression):
    return float(eval(expression, {"__builtins__": {}}, MATH_NAMES))


def read_reference_table(filename=os.path.join(DATA_DIR, "quantities.txt")):
    """Parse the reference table into {name: {"triangle", "point", "expected"}}."""
    table = OrderedDict()
    current = None
    with open(filename, "r") as file:
        for line in file:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("@"):
                name, *coords = line[1:].split()
                values = [_value(c) for c in coords]
                current = table[name] = {
                    "triangle": Triangle(values[0:2], values[2:4], values[4:6]),
                    "point": Point2(*values[6:8]),
                    "expected": OrderedDict(),
                }
            else:
                quantity, expression = line.split(None, 1)
                current["expected"][quantity] = _value(expression)
    return table


REFERENCE_TABLE = read_reference_table()


@pytest.fixture(params=list(REFERENCE_TABLE))
def reference(request):
    return REFERENCE_TABLE[request.param]


@pytest.fixture(scope="session")
def right_triangle():
    return REFERENCE_TABLE["right_triangle"]


@pytest.fixture(scope="session")
def samples():
    """Two thousand seeded configurations (seed 1, uniform angles, log-weight std 0.5)."""
    cfg = SamplerConfig(seed=1, n_samples=2000)
    return [draw_sample(cfg, index) for index in range(cfg.n_samples)]
