"""Prefix-suffix automaton of a train-track map.

There is one arrow ``e -> e'`` labelled ``(p, s)`` for each factorisation
``f(e') = p . e . s``.  Vertices are oriented edges of the graph.  The
unoriented quotient identifies ``e`` with ``~e`` and an arrow
``e -(p,s)-> e'`` with its mirror ``~e -(~s,~p)-> ~e'``.  The mirror of an
arrow always has reversed endpoints, so no arrow is identified with itself
and the quotient halves the arrow count exactly.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .graphs import EdgePath, Graph, GraphMap, is_train_track, reverse_path
from .words import Letter


class NotATrainTrack(ValueError):
    pass


@dataclass(frozen=True)
class PSAEdge:
    source: Letter
    target: Letter
    prefix: EdgePath
    suffix: EdgePath
    position: int

    def mirror(self) -> "PSAEdge":
        return PSAEdge(self.source.inverse(), self.target.inverse(),
                       reverse_path(self.suffix), reverse_path(self.prefix),
                       len(self.suffix))


@dataclass
class PrefixSuffixAutomaton:
    graph: Graph
    vertices: list[Letter]
    edges: list[PSAEdge]
    unoriented: bool = False
    _out: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        out = defaultdict(list)
        for a in self.edges:
            out[a.source].append(a)
        self._out = dict(out)

    def out_edges(self, v: Letter) -> list[PSAEdge]:
        return self._out.get(v, [])

    def adjacency(self) -> np.ndarray:
        """Arrow counts ``A[u, v]`` in vertex order."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = np.zeros((len(self.vertices), len(self.vertices)), dtype=np.int64)
        for arrow in self.edges:
            a[idx[arrow.source], idx[arrow.target]] += 1
        return a

    def vertex_name(self, v: Letter) -> str:
        return self.graph.edge_names[v.index] if self.unoriented else self.graph.edge_name(v)


def build_psa(gm: GraphMap) -> PrefixSuffixAutomaton:
    if not is_train_track(gm):
        raise NotATrainTrack("the prefix-suffix automaton needs a train-track map")
    vertices = gm.graph.oriented_edges()
    edges = []
    for host in vertices:
        img = gm.image(host)
        for pos, e in enumerate(img):
            edges.append(PSAEdge(e, host, img[:pos], img[pos + 1:], pos))
    return PrefixSuffixAutomaton(gm.graph, vertices, edges)


def build_unoriented_psa(psa: PrefixSuffixAutomaton) -> PrefixSuffixAutomaton:
    """Quotient by the orientation flip.

    Each flip orbit is represented by the arrow whose target is positively
    oriented (or by the arrow itself when its mirror is absent); vertices
    become the positive edges.
    """
    present = set(psa.edges)
    edges = []
    for a in psa.edges:
        if a.target.sign > 0:
            rep = a
        elif a.mirror() in present:
            continue
        else:
            rep = a
        edges.append(PSAEdge(Letter(rep.source.index, 1), Letter(rep.target.index, 1),
                             rep.prefix, rep.suffix, rep.position))
    vertices = sorted({Letter(v.index, 1) for v in psa.vertices})
    return PrefixSuffixAutomaton(psa.graph, vertices, edges, unoriented=True)


def positive_part(psa: PrefixSuffixAutomaton) -> PrefixSuffixAutomaton:
    """Restriction to positively oriented vertices.

    For a positive substitution this is one of the two mirror-image
    connected components, the one conventionally drawn.
    """
    vertices = [v for v in psa.vertices if v.sign > 0]
    edges = [a for a in psa.edges if a.source.sign > 0 and a.target.sign > 0]
    return PrefixSuffixAutomaton(psa.graph, vertices, edges, psa.unoriented)


def is_closed_component(psa: PrefixSuffixAutomaton, sub: PrefixSuffixAutomaton) -> bool:
    keep = set(sub.vertices)
    return all((a.source in keep) == (a.target in keep) for a in psa.edges)


@dataclass(frozen=True)
class EPath:
    start: Letter
    edges: tuple[PSAEdge, ...] = ()

    def __post_init__(self):
        v = self.start
        for a in self.edges:
            if a.source != v:
                raise ValueError("arrows of an e-path must compose")
            v = a.target

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def end(self) -> Letter:
        return self.edges[-1].target if self.edges else self.start

    def vertex(self, n: int) -> Letter:
        return self.start if n == 0 else self.edges[n - 1].target

    def vertices(self) -> list[Letter]:
        return [self.vertex(n) for n in range(len(self) + 1)]

    def extend(self, a: PSAEdge) -> "EPath":
        return EPath(self.start, self.edges + (a,))

    def prepend(self, a: PSAEdge) -> "EPath":
        return EPath(a.source, (a,) + self.edges)

    def __add__(self, other: "EPath") -> "EPath":
        return EPath(self.start, self.edges + other.edges)

    def is_loop(self) -> bool:
        return len(self) > 0 and self.end == self.start


@dataclass(frozen=True)
class PreperiodicPath:
    preperiod: EPath
    period: EPath

    def __post_init__(self):
        if not self.period.is_loop():
            raise ValueError("the period must be a non-empty loop")
        if self.period.start != self.preperiod.end:
            raise ValueError("the period must start where the preperiod ends")

    def truncate(self, n: int) -> EPath:
        """The first ``n`` arrows of the infinite path."""
        arrows = list(self.preperiod.edges[:n])
        while len(arrows) < n:
            arrows.extend(self.period.edges[: n - len(arrows)])
        return EPath(self.preperiod.start, tuple(arrows))


def _iter_paths(psa: PrefixSuffixAutomaton, path: EPath, n: int) -> Iterator[EPath]:
    if n == 0:
        yield path
        return
    for a in psa.out_edges(path.end):
        yield from _iter_paths(psa, path.extend(a), n - 1)


def enumerate_paths(psa: PrefixSuffixAutomaton, e: Letter, n: int) -> list[EPath]:
    """All e-paths of length ``n``, in arrow order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_iter_paths(psa, EPath(e), n))


def count_paths(psa: PrefixSuffixAutomaton, e: Letter, n: int) -> int:
    """Number of e-paths of length ``n`` from adjacency powers."""
    a = psa.adjacency()
    row = np.zeros(len(psa.vertices), dtype=object)
    row[psa.vertices.index(e)] = 1
    for _ in range(n):
        row = row @ a.astype(object)
    return int(sum(row))


def loops_up_to(psa: PrefixSuffixAutomaton, max_len: int) -> list[tuple[Letter, EPath]]:
    """Simple loops of length at most ``max_len``, listed once per base vertex."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    found = []

    def walk(start: Letter, path: EPath, visited: set):
        for a in psa.out_edges(path.end):
            if a.target == start:
                found.append((start, path.extend(a)))
            elif a.target not in visited and len(path) + 1 < max_len:
                walk(start, path.extend(a), visited | {a.target})

    for v in psa.vertices:
        walk(v, EPath(v), {v})
    return found


def cylinder_weight(pf, sigma: EPath) -> float:
    """``mu[terminal] / lambda^|sigma|`` with mu indexed by unoriented edge."""
    return float(pf.eigenvector[sigma.end.index]) / pf.eigenvalue ** len(sigma)


def _label(graph: Graph, path: Sequence[Letter]) -> str:
    return graph.format_path(path)


def to_dot(psa: PrefixSuffixAutomaton, name: str = "psa") -> str:
    g = psa.graph
    lines = [f"digraph {name} {{"]
    for v in psa.vertices:
        label = psa.vertex_name(v)
        lines.append(f'  "{label}";')
    for a in psa.edges:
        src, dst = psa.vertex_name(a.source), psa.vertex_name(a.target)
        lines.append(f'  "{src}" -> "{dst}" [label="{_label(g, a.prefix)} | {_label(g, a.suffix)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
