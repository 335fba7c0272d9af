"""Two-qubit decoherence under gravitational redshift.

Thin Python layer over the C++ core. Matrices are 4x4 complex numpy arrays
in the |00>, |01>, |10>, |11> basis with qubit A in the left tensor slot.
"""

import json

from ._core import *  # noqa: F401,F403
from ._core import run_scenario as _run_scenario
from ._core import validate_config as _validate_config

__version__ = "1.0.0"


def _as_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def run(config):
    """Run a scenario given as a dict (or JSON text) and return its trajectory."""
    return _run_scenario(_as_text(config))


def validate(config):
    """Return the list of schema/physics issues for a scenario (empty if valid)."""
    return _validate_config(_as_text(config))
