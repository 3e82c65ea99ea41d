"""Exception hierarchy for hilbertgeom.

Every operation raises subclasses of :class:`HilbertGeomError`; the CLI maps
:class:`InvalidInput` to exit code 2 and :class:`NumericalFailure` to 3.
"""


class HilbertGeomError(Exception):
    """Base class for all package errors."""


class InvalidInput(HilbertGeomError):
    """Precondition violated by caller-supplied data."""


class NumericalFailure(HilbertGeomError):
    """A numerical procedure did not converge or produced inconsistent output."""


# projlin
class NonCollinear(InvalidInput):
    pass


class DegenerateConfiguration(InvalidInput):
    pass


class Singular(InvalidInput):
    pass


# domain
class NotInterior(InvalidInput):
    pass


class NotBoundary(InvalidInput):
    pass


class UnknownExample(InvalidInput):
    pass


class TargetNotMet(HilbertGeomError):
    """Benzecri normalization missed the requested outer radius.

    Carries the best chart found so the caller can still use it.
    """

    def __init__(self, message, chart=None, achieved=None):
        super().__init__(message)
        self.chart = chart
        self.achieved = achieved


# isometry
class NotAnIsometry(InvalidInput):
    pass


class NotUnitModulus(InvalidInput):
    pass


class NotHyperbolic(InvalidInput):
    pass


class DegeneratePencil(HilbertGeomError):
    pass


# horocusp
class NotSupporting(InvalidInput):
    pass


class SegmentNotInterior(InvalidInput):
    pass


class OutsideRadialShadow(InvalidInput):
    pass


class NotC1Point(InvalidInput):
    pass


class NotInStabilizer(InvalidInput):
    pass


# duality
class NotInCone(InvalidInput):
    pass


class EmptySlice(InvalidInput):
    pass


# groups
class ExplosionGuard(HilbertGeomError):
    pass


class BudgetExhausted(HilbertGeomError):
    pass


class HyperbolicPresent(InvalidInput):
    pass


# hyperbolicity
class DegenerateTriangle(InvalidInput):
    pass
