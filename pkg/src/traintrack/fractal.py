"""Graph-directed model of the limit set and dimension estimates.

The limit set is modelled by its address tree: a node per e-path, with
contraction ``lambda_inv ** -|path|`` and mass ``mu[end] / lambda ** |path|``.
Pieces of sibling nodes may intersect; no overlap detection is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .psa import EPath, PrefixSuffixAutomaton
from .spectral import PFData, left_pf_eigenpair, pf_eigenpair, transition_matrix
from .graphs import rose_of
from .words import BasisMorphism, Letter, Word, iterate_morphism

DEFAULT_SCALES = tuple(2.0 ** -k for k in range(3, 11))


@dataclass(frozen=True)
class DimensionReport:
    lambda_phi: float
    lambda_phi_inv: float
    delta: float
    heart_dim: float

    def as_dict(self) -> dict:
        return {"lambdaPhi": self.lambda_phi, "lambdaPhiInv": self.lambda_phi_inv,
                "delta": self.delta, "heartDim": self.heart_dim}


def _eigenvalue(x) -> float:
    return float(x.eigenvalue if isinstance(x, PFData) else x)


def hausdorff_dimension(pf_phi, pf_phi_inv) -> DimensionReport:
    """``delta = ln lambda_phi / ln lambda_phi_inv``; the compact heart has ``max(1, delta)``.

    Accepts :class:`PFData` or bare expansion factors.
    """
    lam, lam_inv = _eigenvalue(pf_phi), _eigenvalue(pf_phi_inv)
    if not (lam > 1 and lam_inv > 1):
        raise ValueError("expansion factors must exceed 1")
    delta = math.log(lam) / math.log(lam_inv)
    return DimensionReport(lam, lam_inv, delta, max(1.0, delta))


@dataclass
class AddressNode:
    path: EPath
    scale: float
    weight: float
    children: list["AddressNode"] = field(default_factory=list)


def build_address_tree(psa: PrefixSuffixAutomaton, pf_phi: PFData, pf_phi_inv, e: Letter,
                       depth: int) -> AddressNode:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    lam = pf_phi.eigenvalue
    ratio = 1.0 / _eigenvalue(pf_phi_inv)
    mu = pf_phi.eigenvector

    def node(path: EPath) -> AddressNode:
        n = len(path)
        nd = AddressNode(path, ratio ** n, float(mu[path.end.index]) / lam ** n)
        if n < depth:
            nd.children = [node(path.extend(a)) for a in psa.out_edges(path.end)]
        return nd

    return node(EPath(e))


def tree_levels(root: AddressNode) -> Iterator[list[AddressNode]]:
    level = [root]
    while level:
        yield level
        level = [c for nd in level for c in nd.children]


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    letter: str
    depth: int

    def __len__(self) -> int:
        return len(self.points)

    def diameter(self) -> float:
        p = self.points
        if len(p) < 2:
            return 0.0
        d2 = ((p[:, None, :] - p[None, :, :]) ** 2).sum(-1)
        return float(math.sqrt(d2.max()))

    def bbox_diagonal(self) -> float:
        p = self.points
        return float(np.linalg.norm(p.max(axis=0) - p.min(axis=0)))


def transverse_basis(left: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as rows) of the hyperplane orthogonal to ``left``.

    Gram-Schmidt on ``left`` followed by the standard basis vectors, so the
    result depends only on ``left``.
    """
    n = len(left)
    basis = [left / np.linalg.norm(left)]
    for i in range(n):
        v = np.zeros(n)
        v[i] = 1.0
        for b in basis:
            v = v - (v @ b) * b
        norm = np.linalg.norm(v)
        if norm > 1e-9:
            basis.append(v / norm)
        if len(basis) == n:
            break
    return np.array(basis[1:])


def rauzy_points(m: BasisMorphism, letter: int | str, depth: int) -> PointCloud:
    """Abelianised prefixes of ``m^depth(letter)`` projected along the expanding direction.

    A prefix vector ``v`` goes to ``v - (l.v / l.r) r`` with ``r``, ``l`` the
    expanding right and left eigenvectors of the abelianisation matrix, then
    to coordinates in :func:`transverse_basis`.
    """
    if not m.is_positive():
        raise ValueError("the planar embedding is only defined for positive substitutions")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if isinstance(letter, str):
        letter = m.names.index(letter)
    mat = transition_matrix(rose_of(m))
    r = pf_eigenpair(mat).eigenvector
    ell = left_pf_eigenpair(mat).eigenvector
    word = iterate_morphism(m, Word((Letter(letter, 1),)), depth)
    counts = np.zeros((len(word), m.rank))
    for i, x in enumerate(word.letters[:-1]):
        counts[i + 1] = counts[i]
        counts[i + 1, x.index] += 1
    projected = counts - np.outer(counts @ ell / (ell @ r), r)
    coords = projected @ transverse_basis(ell).T
    return PointCloud(coords, m.names[letter], depth)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev = -math.inf
        for lo, hi in self.intervals:
            if hi < lo or lo <= prev:
                raise ValueError("intervals must be sorted, disjoint and non-degenerate")
            prev = hi

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    @property
    def mean_length(self) -> float:
        return self.total_length / len(self.intervals)

    def contains(self, other: "IntervalUnion", tol: float = 1e-12) -> bool:
        """Whether every interval of ``other`` lies inside one of ours."""
        j = 0
        mine = self.intervals
        for lo, hi in other.intervals:
            while j < len(mine) and mine[j][1] < lo - tol:
                j += 1
            if j == len(mine) or not (mine[j][0] - tol <= lo and hi <= mine[j][1] + tol):
                return False
        return True

    @classmethod
    def merged(cls, pieces, tol: float = 1e-12) -> "IntervalUnion":
        out: list[list[float]] = []
        for lo, hi in sorted(pieces):
            if out and lo <= out[-1][1] + tol:
                out[-1][1] = max(out[-1][1], hi)
            else:
                out.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in out))


@dataclass(frozen=True)
class BoxCount:
    dimension: float
    scales: tuple[float, ...]
    counts: tuple[int, ...]
    intercept: float
    r_squared: float
    degenerate: bool = False


def _count_intervals(union: IntervalUnion, eps: float, origin: float) -> int:
    boxes = set()
    for lo, hi in union:
        # half-open boxes: an interval ending exactly on a grid line does not
        # spill into the next box
        first = int(math.floor((lo - origin) / eps))
        last = max(first, int(math.ceil((hi - origin) / eps - 1e-9)) - 1)
        boxes.update(range(first, last + 1))
    return len(boxes)


def _count_points(points: np.ndarray, eps: float, origin: np.ndarray) -> int:
    cells = np.floor((points - origin) / eps).astype(np.int64)
    return len(np.unique(cells, axis=0))


def _degenerate(scales) -> BoxCount:
    scales = tuple(float(s) for s in (DEFAULT_SCALES if scales is None else scales))
    return BoxCount(0.0, scales, tuple(1 for _ in scales), 0.0, 1.0, True)


def box_counting_dimension(data, scales: Sequence[float] | None = None) -> BoxCount:
    """Least-squares slope of ``log N(eps)`` against ``log(1/eps)``.

    ``data`` is an :class:`IntervalUnion`, a :class:`PointCloud` or an array
    of points (one per row).  The grid is anchored at the minimum corner of
    the bounding box and ``scales`` defaults to ``2^-3 .. 2^-10``.
    """
    if isinstance(data, IntervalUnion):
        if len(data) == 1 and data.total_length == 0:
            return _degenerate(scales)
        origin = data.intervals[0][0]
        counter = lambda eps: _count_intervals(data, eps, origin)  # noqa: E731
    else:
        pts = np.asarray(data.points if isinstance(data, PointCloud) else data, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if len(np.unique(pts, axis=0)) < 2:
            return _degenerate(scales)
        origin = pts.min(axis=0)
        counter = lambda eps: _count_points(pts, eps, origin)  # noqa: E731
    scales = tuple(float(s) for s in (DEFAULT_SCALES if scales is None else scales))
    if len(scales) < 4:
        raise ValueError("box counting needs at least 4 scales")
    ratios = [b / a for a, b in zip(scales, scales[1:])]
    if not all(0 < q < 1 for q in ratios) or max(ratios) - min(ratios) > 1e-9:
        raise ValueError("scales must decrease geometrically")
    counts = tuple(counter(eps) for eps in scales)
    x = np.log(1.0 / np.array(scales))
    y = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    fit = slope * x + intercept
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(((y - fit) ** 2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return BoxCount(float(slope), scales, counts, float(intercept), r2)
