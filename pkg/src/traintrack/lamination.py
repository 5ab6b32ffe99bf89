"""Leaf segments of the attracting lamination and their cylinder structure.

Cylinders are handled through their finite combinatorial shadow: an
occurrence of an edge ``e`` at a given position of ``f^n(e')``.  Every such
occurrence corresponds to exactly one e-path of length ``n`` in the
prefix-suffix automaton ending at ``e'``; :func:`decompose_occurrences`
builds and checks that correspondence.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .graphs import EdgePath, GraphMap, is_train_track
from .psa import EPath, PrefixSuffixAutomaton, build_psa, enumerate_paths
from .words import Letter

DEFAULT_MAX_DEPTH = 8


class CancellationError(RuntimeError):
    """Free reduction occurred while iterating a supposed train track."""


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class LeafSegment:
    base: Letter
    depth: int
    path: EdgePath
    occurrences: dict

    def __len__(self) -> int:
        return len(self.path)


def _image_no_cancel(gm: GraphMap, path: EdgePath) -> EdgePath:
    out: list[Letter] = []
    for e in path:
        img = gm.image(e)
        if out and out[-1] == img[0].inverse():
            raise CancellationError(f"cancellation at position {len(out)}")
        out.extend(img)
    return tuple(out)


def iterate_edge(gm: GraphMap, e: Letter, n: int, max_depth: int | None = DEFAULT_MAX_DEPTH,
                 check: bool = True) -> LeafSegment:
    """``f^n(e)`` with an occurrence table; no reduction is ever performed.

    ``max_depth`` guards against exponential blow-up; pass ``None`` to lift it.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_depth is not None and n > max_depth:
        raise ValueError(f"depth {n} exceeds the cap {max_depth}")
    if check and not is_train_track(gm):
        raise CancellationError("graph map is not a train track")
    path: EdgePath = (e,)
    for _ in range(n):
        path = _image_no_cancel(gm, path)
    occ = defaultdict(list)
    for i, x in enumerate(path):
        occ[x].append(i)
    return LeafSegment(e, n, path, dict(occ))


def count_reductions(gm: GraphMap, path: EdgePath, n: int) -> int:
    """Number of cancelling pairs met while iterating ``path`` ``n`` times."""
    total = 0
    for _ in range(n):
        stack: list[Letter] = []
        for e in path:
            for x in gm.image(e):
                if stack and stack[-1] == x.inverse():
                    stack.pop()
                    total += 1
                else:
                    stack.append(x)
        path = tuple(stack)
    return total


def occurrence_position(gm: GraphMap, sigma: EPath) -> int:
    """Index of ``sigma.start`` inside ``f^n(sigma.end)``.

    Unwinding ``f^n(e_n) = f^(n-1)(p) f^(n-1)(e_(n-1)) f^(n-1)(s)`` gives
    ``sum_k |f^k(p_k)|`` where ``p_k`` is the prefix of the k-th arrow.
    """
    pos = 0
    for k, a in enumerate(sigma.edges):
        pos += gm.path_length_after(a.prefix, k)
    return pos


def decompose_occurrences(gm: GraphMap, e: Letter, n: int,
                          psa: PrefixSuffixAutomaton | None = None) -> dict[tuple[Letter, int], EPath]:
    """Map every occurrence ``(host e', position)`` of ``e`` in ``f^n(e')`` to its e-path.

    Raises :class:`DecompositionError` unless the correspondence is a
    bijection between occurrences and e-paths of length ``n``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if psa is None:
        psa = build_psa(gm)
    occurrences = set()
    for host in gm.graph.oriented_edges():
        seg = iterate_edge(gm, host, n, max_depth=None, check=False)
        for pos in seg.occurrences.get(e, []):
            occurrences.add((host, pos))
    mapping: dict[tuple[Letter, int], EPath] = {}
    for sigma in enumerate_paths(psa, e, n):
        key = (sigma.end, occurrence_position(gm, sigma))
        if key in mapping:
            raise DecompositionError(f"two e-paths land on occurrence {key}")
        if key not in occurrences:
            raise DecompositionError(f"e-path lands on {key}, which is not an occurrence of {e}")
        mapping[key] = sigma
    missing = occurrences - mapping.keys()
    if missing:
        raise DecompositionError(f"occurrences without an e-path: {sorted(missing)[:5]}")
    return mapping


@dataclass(frozen=True)
class LoopCertificate:
    vertex: Letter
    length: int
    positions: tuple[int, ...]


def verify_loop_realization(gm: GraphMap, loop: EPath, repeats: int = 3) -> LoopCertificate:
    """Check that ``e`` sits inside ``f^(kn)(e)`` where the loop says, for k <= repeats."""
    if not loop.is_loop():
        raise ValueError("expected a non-empty loop")
    e, n = loop.start, len(loop)
    positions = []
    path = loop
    for k in range(1, repeats + 1):
        if k > 1:
            path = path + loop
        pos = occurrence_position(gm, path)
        seg = iterate_edge(gm, e, k * n, max_depth=None, check=False)
        if pos >= len(seg.path) or seg.path[pos] != e:
            raise DecompositionError(f"{e} not found at position {pos} of f^{k * n}({e})")
        positions.append(pos)
    return LoopCertificate(e, n, tuple(positions))
