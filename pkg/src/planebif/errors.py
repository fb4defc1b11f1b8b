"""Exception hierarchy shared by all modules.

Input-level problems (bad text, bad options) are ordinary ValueErrors raised
by the parser / CLI; everything here signals a *mathematical* degeneracy and
maps to exit code 3 in the CLI.
"""


class PlanebifError(Exception):
    """Base class for mathematical errors of the pipeline."""


class DegreeTooSmall(PlanebifError):
    """Homogenization degree below the polynomial's total degree."""


class ZeroOperand(PlanebifError):
    """Resultant of a zero polynomial is not defined here."""


class ConstantInVariable(PlanebifError):
    """Discriminant with respect to a variable the polynomial does not contain."""


class ZeroPolynomial(PlanebifError):
    """Root isolation of the zero polynomial."""


class DivisionByZero(PlanebifError):
    """Inversion of the zero element of a field or product ring."""


class PositiveDimensional(PlanebifError):
    """A system expected to be zero-dimensional has a common curve."""


class NonIsolated(PlanebifError):
    """Intersection multiplicity at a non-isolated intersection point."""


class NonIsolatedSingularity(NonIsolated):
    """Milnor number at a non-isolated critical point."""


class PencilNonReduced(PlanebifError):
    """disc_x(f - t g) vanishes identically even after squarefree reduction."""


class CommonFactor(PlanebifError):
    """f and g share a nonconstant factor; F = f/g is not a reduced fraction."""


class DegenerateCriticalLocus(PlanebifError):
    """The critical locus of F off {g = 0} is not finite (e.g. F constant)."""


class RequiresStrictDegree(PlanebifError):
    """Euler-characteristic machinery needs deg f > deg g."""


class CriterionInapplicable(PlanebifError):
    """A characterization was invoked outside its hypotheses."""


class CurveInPolarLocus(PlanebifError):
    """Every sample of a witness curve lies on {g = 0}."""
