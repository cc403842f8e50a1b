"""vhdlkern: a delta-cycle simulator for a synthesizable VHDL subset."""

__version__ = "0.1.0"

from .errors import ElabError, EvalError, LoadError, SimError, VhdlError

__all__ = [
    "ElabError",
    "EvalError",
    "LoadError",
    "SimError",
    "VhdlError",
    "__version__",
]
