"""Exception types raised by the library.

The CLI maps any :class:`NumericalError` to exit status 2 and reports the
class name.
"""


class ChiralTBGError(Exception):
    pass


class NumericalError(ChiralTBGError):
    pass


class PoleAtLattice(NumericalError):
    pass


class SymmetryViolation(ChiralTBGError):
    def __init__(self, identity: str, point: complex, residual: float):
        self.identity = identity
        self.point = point
        self.residual = residual
        super().__init__(f"{identity} fails at z={point:.6g} (residual {residual:.3e})")


class CutoffTooSmall(NumericalError):
    pass


class ResolventPole(NumericalError):
    def __init__(self, momentum: complex, distance: float):
        self.momentum = momentum
        self.distance = distance
        super().__init__(f"resolvent pole at basis momentum {momentum:.6g} (distance {distance:.2e})")


class BranchAmbiguous(NumericalError):
    pass


class NewtonDiverged(NumericalError):
    def __init__(self, message: str, cell=None):
        self.cell = cell
        super().__init__(message if cell is None else f"{message} (grid cell {cell})")


class CountMismatch(NumericalError):
    pass


class ContinuationLost(NumericalError):
    pass


class NotMagic(NumericalError):
    pass


class NotSimple(NumericalError):
    pass


class QuadratureNearPole(NumericalError):
    pass


class InconsistentK(NumericalError):
    pass


class DegenerateG1(NumericalError):
    pass


class FitUnstable(NumericalError):
    pass
