"""Exception types shared across the package."""


class FtlocalError(Exception):
    """Base class for all errors raised by ftlocal."""


class DimensionError(FtlocalError, ValueError):
    """Operand lengths or widths do not match."""


class CapacityError(FtlocalError):
    """A brute-force routine was asked to go beyond its configured cap."""


class CorruptionError(FtlocalError):
    """A word disagrees with every codeword on its non-erased positions.

    Erasures alone can never produce this, so it signals a non-erasure fault.
    """


class ConstructionError(FtlocalError, ValueError):
    """A gadget or code could not be built from the given ingredients."""


class GadgetPreconditionError(FtlocalError):
    """A netlist does not implement the encoded gate it is claimed to."""


class LocalityContradiction(FtlocalError):
    """A verified gadget exposes an output bit with no linear reader.

    For a correct CNOT gadget this cannot happen; seeing it means the gadget
    or the influence computation is wrong.
    """

    def __init__(self, beta: int, message: str):
        super().__init__(message)
        self.beta = beta


class CompilationError(FtlocalError):
    """An ideal circuit step could not be compiled into a gadget."""
