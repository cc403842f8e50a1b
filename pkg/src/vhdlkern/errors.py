"""Exception types shared across the simulator."""


class VhdlError(Exception):
    """Base class for all simulator errors."""


class EvalError(VhdlError):
    """Expression or assignment evaluation failed (type mismatch, overflow,
    out-of-range index, division by zero, ...)."""


class SimError(VhdlError):
    """Runtime simulation failure: delta-cycle limit, loop budget,
    unresolved signal read, bad clock."""


class ElabError(VhdlError):
    """Static elaboration failure (desugaring, generate expansion)."""


class LoadError(VhdlError):
    """Design loading failed; carries the aggregated diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))
