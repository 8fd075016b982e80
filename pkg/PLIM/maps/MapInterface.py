from ..algebra import FieldElement
from ..utils import Mode, get_logger
from ..utils.enumerators import DEFAULT_GUARD_BAND
from ..utils.errors import BreakpointAmbiguityError, FieldMismatchError, OutOfDomainError
from ..utils.parsing import parse_scalar

from dataclasses import dataclass, field, replace
from fractions import Fraction
import numpy as np


@dataclass(frozen=True)
class MapGeometry:
    """ Structural points of a map: branch boundaries, the orientation reversing fixed point and its partners. """
    breakpoints: tuple
    fixed_point: object = None
    secondary: dict = field(default_factory=dict)
    ordering_ok: bool = True


class MapInterface:
    """ Base class of the piecewise-linear map families.

    A map holds a `MapParams` and evaluates in the number type of its mode: floats, or exact scalars
    (Fractions or FieldElements of one field) whose comparisons are certified. Subclasses define the branch
    structure through the hooks in USER-DEFINED INTERFACES; orbits, one-sided limits and domain checks are
    shared.
    """

    def __init__(self, params, guard_band=DEFAULT_GUARD_BAND, debug=False):
        """ Lifts the parameters into the number type of the mode and validates them.

        Args:
            params : The MapParams to evaluate.
            guard_band : Distance to a breakpoint under which a float branch choice is refused.
            debug : Enables debug logging.

        Raises:
            InvalidParametersError: If the parameters violate the family's constraints.
            FieldMismatchError: If exact parameters come from different fields.
        """
        self.params = params
        self.kind = params.kind
        self.exact = params.mode == Mode.EXACT
        self.guard_band = guard_band
        self.debug = debug
        self.log = get_logger(__name__, debug)

        # Exact parameters share one field when any of them is a field element
        self.field = None
        for value in (params.alpha, params.beta):
            if isinstance(value, FieldElement):
                if self.field is not None:
                    value._check(self.field)
                self.field = value.field
        self.alpha = self.lift(params.alpha)
        self.beta = self.lift(params.beta)
        self._validate()

    def __repr__(self):
        return f'{type(self).__name__}({self.params.to_spec()}, mode={self.params.mode.value})'

    ########## KEY FUNCTIONALITIES ##########
    def eval(self, x):
        """ Evaluates the map at x.

        Args:
            x : Point of [0, 1] in the number type of the mode.

        Returns:
            The image and the branch symbol.

        Raises:
            OutOfDomainError: If x lies outside [0, 1].
            BreakpointAmbiguityError: In float mode, if x lies within the guard band of a breakpoint.
        """
        self._check_domain(x)
        symbol = self.branch(x)
        return self.apply(x, symbol), symbol

    def eval_left(self, x):
        """ Limit of the map from the left of x; coincides with `eval` away from breakpoints. """
        self._check_domain(x)
        symbol = self.branch_left(x)
        return self.apply(x, symbol), symbol

    def eval_right(self, x):
        """ Limit of the map from the right of x. """
        self._check_domain(x)
        symbol = self.branch_right(x)
        return self.apply(x, symbol), symbol

    def orbit(self, x0, n: int, left: bool = False) -> list[tuple]:
        """ The first n images of x0 with the branch taken at each step.

        Args:
            x0 : Starting point.
            n : Number of iterations, n >= 0.
            left : Follows left limits at every step (the orbit of a point approached from below).

        Returns:
            n + 1 pairs (x_j, symbol_j); symbol_0 is None.
        """
        if n < 0:
            raise ValueError(f'iteration count must be >= 0, got {n}')
        step = self.eval_left if left else self.eval
        x = self.lift(x0)
        out = [(x, None)]
        for _ in range(n):
            x, symbol = step(x)
            out.append((x, symbol))
        return out

    def iterate_float(self, x0: float, n: int) -> np.ndarray:
        """ Unguarded float orbit of length n + 1 for statistics over long runs. """
        alpha, beta = float(self.alpha), float(self.beta)
        out = np.empty(n + 1, dtype=np.float64)
        x = float(x0)
        out[0] = x
        step = self._float_step(alpha, beta)
        for j in range(1, n + 1):
            x = step(x)
            out[j] = x
        return out

    def lift(self, x):
        """ Converts x into the number type of this map's mode.

        Raises:
            FieldMismatchError: If a float is given in exact mode, or an element of a foreign field.
        """
        if not self.exact:
            return x.to_float() if isinstance(x, FieldElement) else float(x)
        if isinstance(x, float):
            raise FieldMismatchError(f'float {x!r} given to an exact map')
        if isinstance(x, str):
            return parse_scalar(x, self.field)
        if self.field is not None:
            return self.field.element(x)
        if isinstance(x, FieldElement):
            raise FieldMismatchError(f'{x!r} given to a map over the rationals')
        return Fraction(x)

    def to_float(self, x) -> float:
        return x.to_float() if isinstance(x, FieldElement) else float(x)

    def derive(self, **changes):
        """ Same family, mode and guard band with some parameters replaced. """
        return type(self)(replace(self.params, **changes), guard_band=self.guard_band, debug=self.debug)

    ########## USER-DEFINED INTERFACES ##########
    def branch(self, x):
        """ Symbol of the branch evaluated at x (right-continuous where the map jumps). """
        raise NotImplementedError('Functionality to select the branch of a point must be defined!')

    def branch_left(self, x):
        return self.branch(x)

    def branch_right(self, x):
        return self.branch(x)

    def apply(self, x, symbol):
        """ Value of the affine branch `symbol` at x. """
        raise NotImplementedError('Functionality to evaluate a branch must be defined!')

    def slope(self, symbol):
        """ Derivative in x of the branch `symbol`. """
        raise NotImplementedError('Functionality to differentiate a branch in space must be defined!')

    def d_param(self, x, symbol):
        """ Derivative of the branch value at x in the varied parameter of the family. """
        raise NotImplementedError('Functionality to differentiate a branch in the parameter must be defined!')

    def breakpoints(self) -> list:
        raise NotImplementedError('Functionality to list the breakpoints must be defined!')

    def fixed_point(self):
        raise NotImplementedError('Functionality to compute the fixed point must be defined!')

    def geometry(self) -> MapGeometry:
        raise NotImplementedError('Functionality to compute the map geometry must be defined!')

    def critical_start(self):
        """ First point of the critical orbit the family is parametrised by. """
        raise NotImplementedError('Functionality to locate the critical point must be defined!')

    def _float_step(self, alpha: float, beta: float):
        raise NotImplementedError('Functionality to iterate in fast float mode must be defined!')

    def _validate(self):
        raise NotImplementedError('Functionality to validate the parameters must be defined!')

    ########## HELPERS ##########
    def _check_domain(self, x):
        if x < 0 or x > 1:
            raise OutOfDomainError(f'{x} lies outside [0, 1]', x=x)

    def _guard(self, x, breakpoint):
        """ Refuses a float branch choice for x within the guard band of `breakpoint`. """
        if abs(x - breakpoint) < self.guard_band:
            raise BreakpointAmbiguityError(
                f'{x!r} lies within {self.guard_band:g} of the breakpoint {breakpoint!r}', x=x, breakpoint=breakpoint)
