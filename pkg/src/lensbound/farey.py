"""The Farey graph on extended rationals.

Counterclockwise order on the boundary circle is increasing real value,
wrapping from +infinity through ``inf`` back to -infinity.  The only geodesics
built here run from ``-p/q`` counterclockwise to ``0``.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import chain

from lensbound.errors import InputError, InvariantError
from lensbound.rational import LensSpace, Slope, neg_cf

ZERO = Slope(0, 1)
INF = Slope(1, 0)


def det(s: Slope, t: Slope) -> int:
    return s.num * t.den - s.den * t.num


def is_farey_edge(s: Slope, t: Slope) -> bool:
    if s == t:
        raise InputError(f"is_farey_edge needs distinct slopes, got {s} twice")
    return abs(det(s, t)) == 1


def _line_key(x: Slope):
    # linear order obtained by cutting the circle just after inf
    if x.is_inf:
        return (1, Fraction(0))
    return (0, x.value)


def ccw_key(x: Slope, base: Slope):
    """Sort key for the counterclockwise distance travelled from ``base`` to ``x``."""
    kx, kb = _line_key(x), _line_key(base)
    if x == base:
        return (2, kx)
    return (0, kx) if kx > kb else (1, kx)


def ccw_in_open_arc(x: Slope, a: Slope, b: Slope) -> bool:
    """True iff ``x`` lies strictly inside the arc swept counterclockwise from a to b."""
    if a == b:
        raise InputError("arc endpoints must differ")
    if x == a or x == b:
        return False
    return ccw_key(x, a) < ccw_key(b, a)


def in_closed_arc(x: Slope, a: Slope, b: Slope) -> bool:
    return x == a or x == b or ccw_in_open_arc(x, a, b)


def _fans(r: Slope):
    """The two neighbor fans of ``r``, each marching monotonically towards ``r``.

    For finite r = a/b they start at its Stern-Brocot parents u, v (the
    neighbors of smallest denominator) and continue u + k*r, v + k*r.
    """
    if r.is_inf:
        return _walk((0, 1), (1, 0)), _walk((-1, 1), (-1, 0))
    if r.den == 1:
        u = (1, 0)
    else:
        d = pow(r.num, -1, r.den)
        u = ((r.num * d - 1) // r.den, d)
    v = (r.num - u[0], r.den - u[1])
    step = (r.num, r.den)
    return _walk(u, step), _walk(v, step)


def _walk(start, step):
    k = 0
    while True:
        yield Slope(start[0] + k * step[0], start[1] + k * step[1])
        k += 1


def neighbors_in_arc(r: Slope, a: Slope, b: Slope) -> list[Slope]:
    """Farey neighbors of ``r`` strictly inside the counterclockwise arc (a, b).

    The neighbors of ``r`` form two fans from its Stern-Brocot parents that
    accumulate at ``r`` from either side, so with ``r`` outside the closed arc
    each fan crosses the arc in a single contiguous run.
    """
    if in_closed_arc(r, a, b):
        raise InputError(f"infinite neighbor set: {r} lies in the closed arc [{a}, {b}]")
    lo, hi = ccw_key(a, r), ccw_key(b, r)
    found = []
    for gen in _fans(r):
        first = next(gen)
        second = next(gen)
        rising = ccw_key(second, r) > ccw_key(first, r)
        for t in chain((first, second), gen):
            kt = ccw_key(t, r)
            if lo < kt < hi:
                found.append(t)
            elif (rising and kt >= hi) or (not rising and kt <= lo):
                break
    found = sorted(set(found), key=lambda t: ccw_key(t, a))
    for t in found:
        if not (is_farey_edge(r, t) and ccw_in_open_arc(t, a, b)):
            raise InvariantError(f"fan enumeration produced {t} outside the contract")
    return found


def _successor(c: Slope) -> Slope:
    """Neighbor of ``c`` in the arc (c, 0] with the smallest denominator.

    For c = -p/q the neighbors a/b above c solve a*q + b*p = 1, so b runs over
    one residue class mod q and its least positive member is unique.
    """
    p, q = -c.num, c.den
    b = pow(p, -1, q) if q > 1 else 1
    a = (1 - b * p) // q
    nxt = Slope(a, b)
    if not (is_farey_edge(c, nxt) and in_closed_arc(nxt, c, ZERO) and nxt != c):
        raise InvariantError(f"greedy successor {nxt} of {c} is not a forward neighbor")
    # the only other candidate of equal denominator would be b + q, so no tie can occur
    return nxt


def start_slope(lens: LensSpace) -> Slope:
    if lens.p < 2:
        raise InputError(f"Farey paths need p >= 2, got {lens}")
    return Slope(-lens.p, lens.q)


def minimal_path(lens: LensSpace) -> list[Slope]:
    """The minimal counterclockwise Farey path from -p/q to 0 (greedy construction)."""
    c = start_slope(lens)
    path = [c]
    while c != ZERO:
        c = _successor(c)
        path.append(c)
    for s, t in zip(path, path[1:]):
        if not is_farey_edge(s, t):
            raise InvariantError(f"{s} -> {t} is not a Farey edge")
    coeffs = neg_cf(lens.p, lens.q)
    expected = sum(-a for a in coeffs) - 2 * len(coeffs) + 2
    if len(path) - 1 != expected:
        raise InvariantError(f"path for {lens} has {len(path) - 1} edges, expected {expected}")
    return path


def bfs_minimal_path(lens: LensSpace) -> list[Slope]:
    """Breadth-first shortest monotone path from -p/q to 0.

    Vertices are reduced slopes in [-p/q, 0] with denominator at most q.  The
    candidate successors of a/b are all c/d with d <= q and a*d - b*c = +-1,
    found from the residue of d mod b; each is re-checked against the
    determinant condition before it enters the queue.
    """
    src = start_slope(lens)
    p, q = lens.p, lens.q
    start, goal = (-p, q), (0, 1)
    parent = {start: None}
    queue = deque([start])
    while queue and goal not in parent:
        a, b = queue.popleft()
        succ = set()
        for s in (1, -1):
            # a*d = c*b + s, so d = s * a^-1 (mod b)
            d = (s * pow(a, -1, b)) % b if b > 1 else 1
            if d == 0:
                d = b
            while d <= q:
                c = (a * d - s) // b
                # a/b < c/d <= 0 and c/d >= -p/q
                if c * b > a * d and c <= 0 and c * q >= -p * d:
                    succ.add((c, d))
                d += b
        for t in sorted(succ, key=lambda t: (t[1], t[0])):
            if t in parent:
                continue
            if abs(a * t[1] - b * t[0]) != 1:
                raise InvariantError(f"bad candidate {t} from {(a, b)}")
            parent[t] = (a, b)
            queue.append(t)
    if goal not in parent:
        raise InvariantError(f"no monotone path from {src} to 0")
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return [Slope(*v) for v in reversed(path)]


def pivot_value(prev: Slope, cur: Slope, nxt: Slope) -> int:
    """The integer c with prev + next = c * cur as vectors (denominators >= 0)."""
    sx, sy = prev.num + nxt.num, prev.den + nxt.den
    c = sy // cur.den if cur.den else sx // cur.num
    if (c * cur.num, c * cur.den) != (sx, sy):
        raise InvariantError(f"{prev}, {cur}, {nxt} is not a Farey path")
    return c


def interior_runs(path: list[Slope]) -> list[int]:
    """Lengths of the runs of interior edges (all but first and last) sharing a pivot.

    Consecutive interior edges turn about the same vertex exactly when the
    vertex between them has pivot value 2.
    """
    n_edges = len(path) - 1
    if n_edges <= 2:
        return []
    runs = [1]
    for j in range(2, n_edges - 1):
        if pivot_value(path[j - 1], path[j], path[j + 1]) == 2:
            runs[-1] += 1
        else:
            runs.append(1)
    return runs


def slope_to_json(s: Slope) -> str:
    return str(s)


def path_to_json(path: list[Slope]) -> list[str]:
    return [slope_to_json(s) for s in path]
