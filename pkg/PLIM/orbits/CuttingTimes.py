from ..maps import SkewTentMap

from dataclasses import dataclass


@dataclass
class Arm:
    """ Image T^{k-1}(W) of a one-sided maximal monotone neighbourhood W of the critical value.

    `near` is always the critical image c_k, `far` the image of the other end of W.
    """
    level: int
    near: object
    far: object
    cut: bool


class CuttingTimes:
    """ Cutting and co-cutting times of a skew tent map through its Hofbauer tower.

    Two arms grow from the critical value c_1 = beta: the left arm starts as [0, c_1] and the right arm as
    [c_1, 1]. At level k an arm containing the critical point in its interior is cut, keeping the piece
    [c_k, c] on the side of c_k, and k is recorded. The arm is then mapped forward. Cutting times come from
    the left arm and co-cutting times from the right arm. After the last cut S < n the far end of the left
    arm is c_{n-S}.
    """

    def __init__(self, m: SkewTentMap, n: int):
        """
        Args:
            m : Skew tent map, float or exact.
            n : Highest level of the tower to build, n >= 1.
        """
        if not isinstance(m, SkewTentMap):
            raise TypeError('cutting times are defined for skew tent maps')
        if n < 1:
            raise ValueError(f'need n >= 1, got {n}')
        self.map = m
        self.n = n
        self.critical_orbit = [x for x, _ in m.orbit(m.critical_start(), n + 1)]
        self.arms = {'left': [], 'right': []}
        self.times = {'left': [], 'right': []}
        for side, far in (('left', m.lift(0)), ('right', m.lift(1))):
            self._grow(side, far)

    def __repr__(self):
        return f'CuttingTimes({self.map!r}, n={self.n}, S={self.cutting}, co={self.co_cutting})'

    @property
    def cutting(self) -> list[int]:
        return list(self.times['left'])

    @property
    def co_cutting(self) -> list[int]:
        return list(self.times['right'])

    def c(self, k: int):
        """ Critical image c_k = T^k(alpha), c_0 = alpha. """
        return self.critical_orbit[k]

    def arm(self, level: int, side: str = 'left') -> Arm:
        return self.arms[side][level - 1]

    def far_endpoint_index(self, n: int, side: str = 'left') -> int | None:
        """ b_n = n - max{S_k : S_k < n}, the index with far end of the level-n arm equal to c_{b_n}.

        Returns None when no cut happened below level n, so that the far end is still an image of 0 or 1.
        The index lives in phase space at fixed beta. It need not equal the parameter-window index r_n of
        param_window, which follows xi_n as beta moves; the two can differ, for instance at n = 7.
        """
        earlier = [s for s in self.times[side] if s < n]
        return n - max(earlier) if earlier else None

    def _grow(self, side: str, far):
        m, crit = self.map, self.map.alpha
        for level in range(1, self.n + 1):
            near = self.c(level)
            cut = min(near, far) < crit < max(near, far)
            self.arms[side].append(Arm(level=level, near=near, far=far, cut=cut))
            if cut:
                self.times[side].append(level)
                far = crit
            far = m.eval(far)[0]


def closest_approach_times(m: SkewTentMap, n: int) -> list[int]:
    """ Iterates 0 <= j <= n at which the critical orbit comes closer to the critical value than before.

    With d_j = |xi_{j+1} - beta|, j is returned when d_j < d_k for every 1 <= k < j; d_0 = 0 is trivial and
    0 always heads the list. No distance threshold is applied. The only orbits reported as non-recurrent,
    with an empty list, are those that fall onto a float cycle which does not pass through beta.
    """
    orbit = m.iterate_float(float(m.alpha), n + 1)
    if len(orbit) < 3 or _absorbed_away(orbit, float(m.beta)):
        return []
    dists = abs(orbit[2:] - float(m.beta))
    times, best = [0], float('inf')
    for j, d in enumerate(dists, start=1):
        if d < best:
            times.append(j)
            best = d
    return times


def _absorbed_away(orbit, beta: float) -> bool:
    seen = {}
    for j, x in enumerate(orbit.tolist()):
        if x in seen:
            return beta not in orbit[seen[x]:j].tolist()
        seen[x] = j
    return False
