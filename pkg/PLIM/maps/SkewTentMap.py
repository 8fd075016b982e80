from .MapInterface import MapGeometry, MapInterface
from ..utils.errors import BoundOrbitError, InvalidParametersError, NoFixedPointError, OutOfDomainError


class SkewTentMap(MapInterface):
    """ Skew tent map T(x) = beta x / alpha on [0, alpha], beta (1 - x) / (1 - alpha) on [alpha, 1].

    The turning point alpha is the critical point and T(alpha) = beta the critical value. Branch symbols are
    'L', 'R' and 'C' for the critical point itself. The family is parametrised by beta with alpha fixed.
    """

    def _validate(self):
        if not 0 < self.alpha < 1:
            raise InvalidParametersError(f'alpha must lie in (0, 1), got {self.alpha}', alpha=self.alpha)
        if not (max(self.alpha, 1 - self.alpha) < self.beta <= 1):
            raise InvalidParametersError(
                f'beta must satisfy max(alpha, 1 - alpha) < beta <= 1, got alpha={self.alpha}, beta={self.beta}',
                alpha=self.alpha, beta=self.beta)

    ########## BRANCHES ##########
    def branch(self, x) -> str:
        if x == self.alpha:
            return 'C'
        if not self.exact:
            self._guard(x, self.alpha)
        return 'L' if x < self.alpha else 'R'

    def branch_left(self, x) -> str:
        if not self.exact and x != self.alpha:
            self._guard(x, self.alpha)
        return 'L' if x <= self.alpha else 'R'

    def branch_right(self, x) -> str:
        if not self.exact and x != self.alpha:
            self._guard(x, self.alpha)
        return 'L' if x < self.alpha else 'R'

    def apply(self, x, symbol: str):
        if symbol == 'L':
            return self.beta * x / self.alpha
        if symbol == 'R':
            return self.beta * (1 - x) / (1 - self.alpha)
        return self.beta

    def slope(self, symbol: str):
        if symbol == 'L':
            return self.beta / self.alpha
        if symbol == 'R':
            return -self.beta / (1 - self.alpha)
        raise BoundOrbitError(f'{self!r}: no derivative at the critical point',
                              left=self.beta / self.alpha, right=-self.beta / (1 - self.alpha))

    def d_param(self, x, symbol: str):
        """ Derivative of T(x) in beta. """
        if symbol == 'L':
            return x / self.alpha
        if symbol == 'R':
            return (1 - x) / (1 - self.alpha)
        return 1

    def critical_start(self):
        return self.alpha

    def breakpoints(self) -> list:
        return [self.alpha]

    ########## GEOMETRY ##########
    def fixed_point(self):
        """ Orientation reversing fixed point p = beta / (1 - alpha + beta). """
        p = self.beta / (1 - self.alpha + self.beta)
        residual = self.apply(p, 'R') - p
        if (self.exact and residual != 0) or (not self.exact and abs(residual) > 1e-12):
            raise NoFixedPointError(f'T(p) - p = {residual} at p = {p}', p=p)
        return p

    def involution(self, x):
        """ The other preimage x_hat != x of T(x).

        Raises:
            OutOfDomainError: If x is the critical point or lies outside [0, 1].
        """
        self._check_domain(x)
        if x == self.alpha:
            raise OutOfDomainError('the critical point has a single preimage of its image', x=x)
        if x < self.alpha:
            return 1 - (1 - self.alpha) * x / self.alpha
        return self.alpha * (1 - x) / (1 - self.alpha)

    def geometry(self) -> MapGeometry:
        """ Breakpoint alpha, fixed point p, its partner p_hat and the first critical images.

        `ordering_ok` records T^2(alpha) < p_hat < p < T(alpha); the chain is not guaranteed for every admissible
        parameter pair.
        """
        p = self.fixed_point()
        p_hat = self.involution(p)
        t1 = self.beta
        t2 = self.apply(t1, 'R')
        ordering_ok = bool(t2 < p_hat < p < t1)
        if not ordering_ok:
            self.log.debug(f'{self!r}: T^2(alpha) < p_hat < p < T(alpha) does not hold')
        return MapGeometry(
            breakpoints=(self.alpha,), fixed_point=p,
            secondary={'p_hat': p_hat, 'critical_value': t1, 'second_image': t2},
            ordering_ok=ordering_ok)

    def _float_step(self, alpha: float, beta: float):
        def step(x):
            return beta * x / alpha if x <= alpha else beta * (1.0 - x) / (1.0 - alpha)
        return step
