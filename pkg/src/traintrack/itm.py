"""Interval translation maps, in particular the one attached to the BK automorphism.

The BK configuration uses the positive root ``alpha`` of
``a^3 - a^2 - 3a + 1`` and the pieces ``I_a = [0, 1-alpha)``,
``I_b = [1-alpha, 1-alpha^2)``, ``I_c = [1-alpha^2, 1]`` translated by
``alpha``, ``alpha^2`` and ``alpha^2 - 1``.  Pieces are half-open except the
last, which contains 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fractal import IntervalUnion, box_counting_dimension

MERGE_TOL = 1e-12


def _bk_poly(a: float) -> float:
    return ((a - 1.0) * a - 3.0) * a + 1.0


def solve_alpha(tol: float = 1e-14) -> float:
    """Root of ``a^3 - a^2 - 3a + 1`` in (0, 1): bisection, then Newton polish."""
    lo, hi = 0.0, 1.0  # p(0) = 1 > 0, p(1) = -2 < 0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _bk_poly(mid) > 0:
            lo = mid
        else:
            hi = mid
    a = 0.5 * (lo + hi)
    for _ in range(5):
        step = _bk_poly(a) / (3 * a * a - 2 * a - 3)
        a -= step
        if abs(step) < 1e-17:
            break
    if abs(_bk_poly(a)) >= tol:
        raise ArithmeticError(f"alpha residual {_bk_poly(a):.3g} above {tol}")
    return a


@dataclass(frozen=True)
class ITMConfig:
    """Piecewise translation of [0, 1].

    ``cuts`` are the piece boundaries ``0 = c_0 < ... < c_k = 1`` and
    ``shifts[i]`` translates ``[c_i, c_{i+1})``.
    """

    cuts: tuple[float, ...]
    shifts: tuple[float, ...]
    symbols: str = "abc"
    alpha: float | None = None

    def __post_init__(self):
        if len(self.cuts) != len(self.shifts) + 1 or len(self.symbols) < len(self.shifts):
            raise ValueError("need one shift and one symbol per piece")
        if self.cuts[0] != 0.0 or self.cuts[-1] != 1.0:
            raise ValueError("pieces must cover [0, 1]")
        if any(b <= a for a, b in zip(self.cuts, self.cuts[1:])):
            raise ValueError("cut points must increase")
        for (a, b), s in zip(zip(self.cuts, self.cuts[1:]), self.shifts):
            if a + s < -1e-12 or b + s > 1 + 1e-12:
                raise ValueError("a piece is translated outside [0, 1]")

    def piece(self, x: float) -> int:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"{x} lies outside [0, 1]")
        for i in range(len(self.shifts) - 1):
            if x < self.cuts[i + 1]:
                return i
        return len(self.shifts) - 1


def bk_config(alpha: float | None = None) -> ITMConfig:
    a = solve_alpha() if alpha is None else alpha
    return ITMConfig((0.0, 1 - a, 1 - a * a, 1.0), (a, a * a, a * a - 1), "abc", a)


def itm_apply(cfg: ITMConfig, x: float) -> float:
    return x + cfg.shifts[cfg.piece(x)]


def itm_itinerary(cfg: ITMConfig, x: float, n: int) -> str:
    out = []
    for _ in range(n):
        i = cfg.piece(x)
        out.append(cfg.symbols[i])
        # clamp rounding spill so the orbit stays in the domain
        x = min(1.0, max(0.0, x + cfg.shifts[i]))
    return "".join(out)


def _step(cfg: ITMConfig, union: IntervalUnion) -> IntervalUnion:
    pieces = []
    for lo, hi in union:
        for i, s in enumerate(cfg.shifts):
            a, b = max(lo, cfg.cuts[i]), min(hi, cfg.cuts[i + 1])
            if b > a:
                pieces.append((a + s, b + s))
    return IntervalUnion.merged(pieces, MERGE_TOL)


def itm_forward_intervals(cfg: ITMConfig, n: int) -> IntervalUnion:
    """``T^n([0, 1])`` as a merged union of closed intervals."""
    return itm_forward_sequence(cfg, n)[-1]


def itm_forward_sequence(cfg: ITMConfig, n: int) -> list[IntervalUnion]:
    if n < 0:
        raise ValueError("n must be non-negative")
    seq = [IntervalUnion(((0.0, 1.0),))]
    for _ in range(n):
        seq.append(_step(cfg, seq[-1]))
    return seq


class InsufficientData(ValueError):
    pass


def itm_dimension_estimate(cfg: ITMConfig, depth: int) -> float:
    """Dimension of the survivor set from the natural covers ``T^n(I)``.

    At depth ``n`` the survivor set is covered by ``N_n`` pieces of mean
    length ``s_n``.  The slope of ``log N_n`` against ``-log s_n`` over
    ``n in [depth/2, depth]`` is fitted through the origin, which is the
    point contributed by the trivial cover ``{I}``.  When the covers never
    refine (the map does not shrink ``I``) the estimate falls back to box
    counting.
    """
    if depth < 6:
        raise InsufficientData("depth must be at least 6")
    seq = itm_forward_sequence(cfg, depth)
    xs, ys = [], []
    for n in range(depth // 2, depth + 1):
        u = seq[n]
        xs.append(-math.log(u.mean_length))
        ys.append(math.log(len(u)))
    sxx = sum(x * x for x in xs)
    if sxx < 1e-18:
        return box_counting_dimension(seq[-1]).dimension
    return sum(x * y for x, y in zip(xs, ys)) / sxx
