"""Convex polygons indexing Cartan classes, and the unit-increment path
between consecutive scaled polygons.

A vector (lambda_1..lambda_r) of nonnegative integers lies in the cone
when its slope sequence mu_i = lambda_i - lambda_{i-1} (with
lambda_0 = lambda_{r+1} = 0) is non-increasing; the break at vertex i
is 2 lambda_i - lambda_{i-1} - lambda_{i+1} = mu_i - mu_{i+1} >= 0.
"""

from dataclasses import dataclass

from .errors import InputError, SchedulerError


def polygon_check(lam):
    """Membership of an integer vector in the convex cone.

    Args:
        lam: sequence of integers (lambda_1..lambda_r).

    Returns:
        (in_cone, slopes, breaks): slopes has length r+1, breaks length
        r; in_cone is True iff all entries are >= 0 and the slopes are
        non-increasing (equivalently all breaks >= 0).
    """
    lam = tuple(int(x) for x in lam)
    r = len(lam)
    if r == 0:
        raise InputError("polygon needs at least one coordinate")
    ext = (0,) + lam + (0,)
    slopes = tuple(ext[i + 1] - ext[i] for i in range(r + 1))
    breaks = tuple(slopes[i] - slopes[i + 1] for i in range(r))
    ok = all(x >= 0 for x in lam) and all(b >= 0 for b in breaks)
    return ok, slopes, breaks


@dataclass(frozen=True)
class Polygon:
    """A point of the convex cone, indexed 1..r."""

    lam: tuple

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        object.__setattr__(self, "lam", lam)
        ok, _, _ = polygon_check(lam)
        if not ok:
            raise InputError(f"{lam} is not in the convex cone")

    @property
    def r(self):
        return len(self.lam)

    @property
    def slopes(self):
        return polygon_check(self.lam)[1]

    @property
    def breaks(self):
        return polygon_check(self.lam)[2]

    def break_at(self, vertex):
        """Break at vertex in 1..r."""
        if not 1 <= vertex <= self.r:
            raise InputError(f"vertex {vertex} outside 1..{self.r}")
        return self.breaks[vertex - 1]

    def increment(self, i):
        """The vector with coordinate i (1-based) raised by one; raises
        if the result leaves the cone."""
        if not 1 <= i <= self.r:
            raise InputError(f"index {i} outside 1..{self.r}")
        lam = list(self.lam)
        lam[i - 1] += 1
        return Polygon(tuple(lam))

    def can_increment(self, i):
        if not 1 <= i <= self.r:
            return False
        lam = list(self.lam)
        lam[i - 1] += 1
        return polygon_check(lam)[0]

    def reflect(self):
        """Coordinate reversal (the outer-automorphism image)."""
        return Polygon(tuple(reversed(self.lam)))

    def __str__(self):
        return " ".join(str(x) for x in self.lam)


def scaled_polygon(r, m):
    """The polygon with lambda_i = m i (r+1-i); every break equals 2m."""
    if r < 1 or m < 0:
        raise InputError(f"need r >= 1 and m >= 0, got r={r} m={m}")
    return Polygon(tuple(m * i * (r + 1 - i) for i in range(1, r + 1)))


@dataclass
class PathStep:
    """One unit increment along the path, with its certificate data.

    rule is 16 when the governing break sits at vertex index+1 (used
    for index <= (r+1)/2) and 17 when it sits at index-1; the governing
    break is read off the polygon before the step.
    """

    polygon: Polygon
    index: int
    rule: int
    governing_break: int


def _governing(poly, i):
    r = poly.r
    if 2 * i <= r + 1:
        rule = 16
        vertex = i + 1
    else:
        rule = 17
        vertex = i - 1
    if not 1 <= vertex <= r:
        # boundary vertices carry no break; fall back to the other side
        vertex = i - 1 if vertex > r else i + 1
        rule = 17 if rule == 16 else 16
    return rule, poly.break_at(vertex)


def lambda_m_path(r, m, max_backtrack=200_000):
    """Unit-increment path from the m-scaled polygon to the (m+1)-scaled
    polygon keeping every intermediate break >= 2m - 2.

    The step count is forced: coordinate i must rise by i(r+1-i), a
    total of sum_i i(r+1-i) increments, each staying inside the cone.
    The schedule is found greedily (prefer the step maximizing the
    minimum post-step break, ties to the smallest index) with
    depth-limited backtracking; its success is an empirical claim of
    this implementation, checked on every emitted path.

    Args:
        r: polygon length >= 3.
        m: scale >= 1.
        max_backtrack: node budget for the search.

    Returns:
        List of PathStep of length sum_i i(r+1-i); step k holds the
        polygon after k+1 increments, the incremented index, the rule
        label, and the governing break before the step.

    Raises:
        SchedulerError: search exhausted (this would falsify the
            scheduling strategy, not the existence claim).
    """
    if r < 3:
        raise InputError(f"need r >= 3, got r={r}")
    if m < 1:
        raise InputError(f"need m >= 1, got m={m}")
    start = scaled_polygon(r, m)
    floor = 2 * m - 2
    target = scaled_polygon(r, m + 1).lam

    total = sum(i * (r + 1 - i) for i in range(1, r + 1))
    steps = []
    nodes = 0

    def candidates(poly):
        cands = []
        for i in range(1, r + 1):
            if poly.lam[i - 1] >= target[i - 1]:
                continue
            lam2 = list(poly.lam)
            lam2[i - 1] += 1
            ok, _, breaks2 = polygon_check(lam2)
            if not ok or min(breaks2) < floor:
                continue
            cands.append((-min(breaks2), i, Polygon(tuple(lam2))))
        cands.sort(key=lambda t: (t[0], t[1]))
        return cands

    def dfs(poly):
        nonlocal nodes
        if len(steps) == total:
            return True
        nodes += 1
        if nodes > max_backtrack:
            raise SchedulerError(
                f"increment scheduler exceeded {max_backtrack} nodes at r={r} m={m}"
            )
        for _, i, nxt in candidates(poly):
            rule, gov = _governing(poly, i)
            steps.append(PathStep(polygon=nxt, index=i, rule=rule, governing_break=gov))
            if dfs(nxt):
                return True
            steps.pop()
        return False

    if not dfs(start):
        raise SchedulerError(f"no admissible increment path at r={r}, m={m}")
    assert steps[-1].polygon.lam == target
    return steps
