__version__ = "0.1.0"

from .exceptions import *
from .geometry import *
from .catalog import *
from .verify import *
from .tighten import *
from .report import *
