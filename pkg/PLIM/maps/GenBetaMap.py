from .MapInterface import MapGeometry, MapInterface
from ..utils.errors import InvalidParametersError, NoFixedPointError, NotMultinacciError

import math


class GenBetaMap(MapInterface):
    """ Generalised beta-transformation G(x) = beta x + alpha (mod 1).

    On the circle [0, 1) the map has the single discontinuity c = 0 = 1. Branch k is x -> beta x + alpha - k
    on [c_k, c_{k+1}) with c_k = (k - alpha) / beta. `eval` is right-continuous with values in [0, 1) and
    follows the orbit of c^+ = 0; `eval_left` is left-continuous with values in (0, 1] and follows the orbit
    of c^- = 1.
    """

    def _validate(self):
        if not self.beta > 1:
            raise InvalidParametersError(f'slope must exceed 1, got {self.beta}', beta=self.beta)
        if not 0 <= self.alpha < 1:
            raise InvalidParametersError(f'alpha must lie in [0, 1), got {self.alpha}', alpha=self.alpha)

    ########## BRANCHES ##########
    def branch(self, x) -> int:
        y = self.beta * x + self.alpha
        if self.exact:
            return math.floor(y)
        self._guard_float(x, y)
        k = 0
        while y >= k + 1:
            k += 1
        return k

    def branch_left(self, x) -> int:
        y = self.beta * x + self.alpha
        if self.exact:
            return math.ceil(y) - 1
        self._guard_float(x, y)
        k = -1
        while y > k + 1:
            k += 1
        return k

    def apply(self, x, k: int):
        return self.beta * x + self.alpha - k

    def slope(self, k: int):
        return self.beta

    def d_param(self, x, k: int):
        return 1

    def critical_start(self):
        return self.lift(0)

    def breakpoints(self) -> list:
        """ The interior discontinuities c_k = (k - alpha) / beta in (0, 1), increasing. """
        out, k = [], 1
        while k < self.alpha + self.beta:
            out.append((k - self.alpha) / self.beta)
            k += 1
        return out

    ########## GEOMETRY ##########
    def fixed_point(self):
        """ Fixed point p = (1 - alpha) / (beta - 1) on branch 1, with p = 1 identified with 0.

        Raises:
            NoFixedPointError: If alpha + beta < 2, so that p would leave the circle.
        """
        if self.alpha + self.beta < 2:
            raise NoFixedPointError(f'alpha + beta = {self.alpha + self.beta} < 2 leaves no fixed point on branch 1',
                                    alpha=self.alpha, beta=self.beta)
        p = (1 - self.alpha) / (self.beta - 1)
        if p == 1:
            return self.lift(0)
        residual = self.apply(p, 1) - p
        if (self.exact and residual != 0) or (not self.exact and abs(residual) > 1e-12):
            raise NoFixedPointError(f'G(p) - p = {residual} at p = {p}', p=p)
        return p

    def geometry(self) -> MapGeometry:
        """ Breakpoints, fixed point and the points c_1, c_2, p_hat = p - 1/beta when present.

        Raises:
            InvalidParametersError: If 2 < alpha + beta < 3 and p_hat < c_1 < p < c_2 < 1 fails.
        """
        cuts = self.breakpoints()
        secondary = {f'c{k + 1}': c for k, c in enumerate(cuts[:2])}
        p = None
        if self.alpha + self.beta >= 2:
            p = self.fixed_point()
            secondary['p_hat'] = (1 - self.alpha) / (self.beta - 1) - 1 / self.beta
        ordering_ok = True
        if 2 < self.alpha + self.beta < 3:
            c1, c2 = secondary['c1'], secondary['c2']
            ordering_ok = secondary['p_hat'] < c1 < p < c2 < 1
            if not ordering_ok:
                raise InvalidParametersError(f'{self!r}: ordering p_hat < c_1 < p < c_2 < 1 violated')
        return MapGeometry(breakpoints=tuple(cuts), fixed_point=p, secondary=secondary, ordering_ok=ordering_ok)

    def matching_inequalities(self, n: int | None = None) -> dict:
        """ Checks 1/b^2 < p - c_1 < (b - 1)/b and 1/b^(N+1) < c_2 - p < 1/b - 1/b^2.

        Both chains hold for multinacci slopes whenever b^(1-N) < alpha < 1/b; inside that strip a violation
        is an error, outside it the report only records the margins.

        Args:
            n : Degree N; defaults to the degree of a multinacci field.

        Raises:
            NotMultinacciError: If N is neither given nor implied by the field.
            InvalidParametersError: If a chain fails inside the strip.
        """
        if n is None:
            if self.field is None or not self.field.is_multinacci:
                raise NotMultinacciError(f'{self!r}: degree N must be given for a non-multinacci slope')
            n = self.field.degree
        b, a = self.beta, self.alpha
        in_strip = b ** (1 - n) < a < 1 / b
        report = {'n': n, 'in_strip': in_strip}
        if a + b <= 2:
            report['applicable'] = False
            return report
        geo = self.geometry()
        p, c1, c2 = geo.fixed_point, geo.secondary['c1'], geo.secondary['c2']
        lower, upper = p - c1, c2 - p
        report.update({
            'applicable': True,
            'p_minus_c1': self.to_float(lower),
            'c2_minus_p': self.to_float(upper),
            'pc1': 1 / b ** 2 < lower < (b - 1) / b,
            'pc2': 1 / b ** (n + 1) < upper < 1 / b - 1 / b ** 2,
        })
        if in_strip and not (report['pc1'] and report['pc2']):
            raise InvalidParametersError(f'{self!r}: ordering inequalities fail inside the strip', **report)
        return report

    ########## SYMMETRY ##########
    def symmetry_conjugate(self) -> 'GenBetaMap':
        """ The map with alpha' = 1 - ((alpha + beta) mod 1), so that G(1 - x) = 1 - G'(x) off breakpoints. """
        s = self.alpha + self.beta
        conjugate = 1 - (s - math.floor(s))
        if conjugate == 1:
            conjugate = conjugate - 1
        return self.derive(alpha=conjugate)

    def symmetric_threshold(self):
        return (1 + math.floor(self.alpha + self.beta) - self.beta) / 2

    def symmetric_reduction(self) -> tuple['GenBetaMap', bool]:
        """ Returns the map itself when alpha <= (1 + floor(alpha + beta) - beta) / 2, else its conjugate. """
        if self.alpha <= self.symmetric_threshold():
            return self, False
        return self.symmetry_conjugate(), True

    ########## HELPERS ##########
    def _guard_float(self, x, y):
        k = round(y)
        if 1 <= k < self.alpha + self.beta:
            self._guard(x, (k - self.alpha) / self.beta)

    def _float_step(self, alpha: float, beta: float):
        def step(x):
            y = beta * x + alpha
            while y >= 1.0:
                y -= 1.0
            return y
        return step
