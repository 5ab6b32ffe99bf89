"""Finite graphs, graph self-maps and train-track validation.

Oriented edges reuse :class:`~traintrack.words.Letter`: ``Letter(i, +1)`` is
edge ``i`` in its stored orientation and ``Letter(i, -1)`` its reverse.  The
positive member is the canonical representative of an unoriented edge, so
matrices are indexed by ``Letter.index`` in declaration order.

Legality of turns is decided with the derivative map ``Df`` (first edge of
the image).  A turn is illegal when some iterate of ``Df`` sends it to a
degenerate turn; since there are finitely many turns the orbit of a turn
either degenerates or enters a cycle, which is how the iteration stops.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .words import BasisMorphism, Letter, Word, reduce_word

EdgePath = tuple[Letter, ...]


class GraphError(ValueError):
    """The graph or graph map is malformed."""


def reverse_path(path: Sequence[Letter]) -> EdgePath:
    return tuple(e.inverse() for e in reversed(path))


@dataclass(frozen=True)
class Graph:
    vertex_names: tuple[str, ...]
    edge_names: tuple[str, ...]
    ends: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.ends) != len(self.edge_names):
            raise GraphError("one (source, target) pair is needed per edge")
        nv = len(self.vertex_names)
        for s, t in self.ends:
            if not (0 <= s < nv and 0 <= t < nv):
                raise GraphError(f"edge endpoint outside vertex range: {(s, t)}")
        for v in range(nv):
            if self.valence(v) == 0:
                raise GraphError(f"vertex {self.vertex_names[v]!r} is isolated")

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def num_edges(self) -> int:
        return len(self.edge_names)

    def oriented_edges(self) -> list[Letter]:
        """Positive edges in declaration order, then their reverses."""
        n = self.num_edges
        return [Letter(i, 1) for i in range(n)] + [Letter(i, -1) for i in range(n)]

    def source(self, e: Letter) -> int:
        s, t = self.ends[e.index]
        return s if e.sign > 0 else t

    def target(self, e: Letter) -> int:
        s, t = self.ends[e.index]
        return t if e.sign > 0 else s

    def directions_at(self, v: int) -> list[Letter]:
        return [e for e in self.oriented_edges() if self.source(e) == v]

    def valence(self, v: int) -> int:
        return sum(1 for s, t in self.ends for w in (s, t) if w == v)

    def is_path(self, path: Sequence[Letter]) -> bool:
        return all(self.target(x) == self.source(y) for x, y in zip(path, path[1:]))

    def edge_name(self, e: Letter) -> str:
        return self.edge_names[e.index] if e.sign > 0 else "~" + self.edge_names[e.index]

    def format_path(self, path: Sequence[Letter]) -> str:
        return " ".join(self.edge_name(e) for e in path) if path else "ε"

    @classmethod
    def rose(cls, names: Sequence[str]) -> "Graph":
        return cls(("*",), tuple(names), tuple((0, 0) for _ in names))


@dataclass(frozen=True)
class GraphMap:
    """A combinatorial self-map of a graph.

    ``edge_images[i]`` is the image of the positive edge ``i``; images of
    reversed edges are derived.  ``marking`` optionally names, for each
    generator of F_N, a loop at vertex 0; it is stored but not collapsed
    to a basis automorphism.
    """

    graph: Graph
    vertex_images: tuple[int, ...]
    edge_images: tuple[EdgePath, ...]
    marking: tuple[EdgePath, ...] | None = None
    marking_names: tuple[str, ...] = ()

    def __post_init__(self):
        g = self.graph
        if len(self.vertex_images) != g.num_vertices:
            raise GraphError("one vertex image is needed per vertex")
        if len(self.edge_images) != g.num_edges:
            raise GraphError("one edge image is needed per edge")
        for v in self.vertex_images:
            if not 0 <= v < g.num_vertices:
                raise GraphError(f"vertex image {v} out of range")
        for i, img in enumerate(self.edge_images):
            name = g.edge_names[i]
            if not img:
                raise GraphError(f"image of {name} is empty")
            if any(not 0 <= x.index < g.num_edges for x in img):
                raise GraphError(f"image of {name} uses an unknown edge")
            if not g.is_path(img):
                raise GraphError(f"image of {name} is not a path")
            if reduce_word(img).letters != tuple(img):
                raise GraphError(f"image of {name} is not reduced")
            s, t = g.ends[i]
            if g.source(img[0]) != self.vertex_images[s] or g.target(img[-1]) != self.vertex_images[t]:
                raise GraphError(f"image of {name} does not join the images of its endpoints")
        if self.marking is not None:
            for loop in self.marking:
                if loop and not (g.is_path(loop) and g.source(loop[0]) == 0 and g.target(loop[-1]) == 0):
                    raise GraphError("marking loops must be closed paths at the base vertex")

    def image(self, e: Letter) -> EdgePath:
        img = self.edge_images[e.index]
        return img if e.sign > 0 else reverse_path(img)

    def image_of_path(self, path: Sequence[Letter]) -> EdgePath:
        """Image of a path, freely reduced."""
        raw: list[Letter] = []
        for e in path:
            raw.extend(self.image(e))
        return reduce_word(raw).letters

    def iterate_path(self, path: Sequence[Letter], n: int) -> EdgePath:
        path = tuple(path)
        for _ in range(n):
            path = self.image_of_path(path)
        return path

    def image_lengths(self, n: int) -> list[int]:
        """``|f^n(e)|`` for each unoriented edge, without building the paths.

        Only meaningful when no cancellation occurs, i.e. on a train track.
        """
        lengths = [1] * self.graph.num_edges
        for _ in range(n):
            lengths = [sum(lengths[x.index] for x in img) for img in self.edge_images]
        return lengths

    def path_length_after(self, path: Sequence[Letter], n: int) -> int:
        lengths = self.image_lengths(n)
        return sum(lengths[x.index] for x in path)

    @property
    def is_rose(self) -> bool:
        return self.graph.num_vertices == 1

    def format(self) -> str:
        g = self.graph
        return "\n".join(f"{name} -> {g.format_path(img)}" for name, img in zip(g.edge_names, self.edge_images))


def rose_of(m: BasisMorphism) -> GraphMap:
    """The map of the rose with ``m.rank`` petals induced by ``m``."""
    g = Graph.rose(m.names)
    return GraphMap(g, (0,), tuple(w.letters for w in m.images),
                    marking=tuple((Letter(i, 1),) for i in range(m.rank)),
                    marking_names=tuple(m.names))


def morphism_of_rose(gm: GraphMap) -> BasisMorphism:
    if not gm.is_rose:
        raise GraphError("only maps of a rose correspond directly to basis morphisms")
    return BasisMorphism(gm.graph.num_edges, tuple(Word(img) for img in gm.edge_images), gm.graph.edge_names)


def realizes(gm: GraphMap, m: BasisMorphism) -> bool:
    """Check that ``gm`` represents ``m`` through its marking.

    For every generator ``x`` the reduced loops ``f(marking(x))`` and
    ``marking(m(x))`` must coincide.  This certifies a declared automorphism;
    it does not compute one.
    """
    if gm.marking is None:
        raise GraphError("graph map carries no marking")
    if len(gm.marking) != m.rank:
        raise GraphError("marking rank differs from morphism rank")
    if gm.vertex_images[0] != 0:
        return False

    def mark(w: Word) -> EdgePath:
        raw: list[Letter] = []
        for x in w:
            loop = gm.marking[x.index]
            raw.extend(loop if x.sign > 0 else reverse_path(loop))
        return reduce_word(raw).letters

    for i in range(m.rank):
        if gm.image_of_path(gm.marking[i]) != mark(m.images[i]):
            return False
    return True


def derivative_map(gm: GraphMap) -> dict[Letter, Letter]:
    return {e: gm.image(e)[0] for e in gm.graph.oriented_edges()}



def crossed_turns(path: Sequence[Letter]) -> list[tuple[int, tuple[Letter, Letter]]]:
    """Turns ``(~e_i, e_{i+1})`` crossed by a path, with the junction index."""
    return [(i + 1, (a.inverse(), b)) for i, (a, b) in enumerate(zip(path, path[1:]))]


def turn_collapse(df: Mapping[Letter, Letter], d1: Letter, d2: Letter) -> int | None:
    """Number of ``Df`` iterates after which the turn degenerates, or None."""
    seen = set()
    k = 0
    while True:
        if d1 == d2:
            return k
        key = frozenset((d1, d2))
        if key in seen:
            return None
        seen.add(key)
        d1, d2 = df[d1], df[d2]
        k += 1


@dataclass
class TrainTrackCertificate:
    ok: bool
    illegal_turns: frozenset = field(default_factory=frozenset)
    crossed: frozenset = field(default_factory=frozenset)
    # set on failure
    edge: Letter | None = None
    position: int | None = None
    turn: tuple[Letter, Letter] | None = None
    collapse_iterate: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, graph: Graph) -> str:
        if self.ok:
            illegal = sorted(" ".join(sorted(graph.edge_name(d) for d in t)) for t in self.illegal_turns)
            return "train track; illegal turns: " + (", ".join("{" + t + "}" for t in illegal) or "none")
        d1, d2 = self.turn
        return (f"not a train track: image of {graph.edge_name(self.edge)} crosses turn "
                f"{{{graph.edge_name(d1)}, {graph.edge_name(d2)}}} at junction {self.position}, "
                f"which degenerates after {self.collapse_iterate} iterate(s) of Df "
                f"(cancellation in f^{self.collapse_iterate + 1})")


def is_train_track(gm: GraphMap) -> TrainTrackCertificate:
    g = gm.graph
    df = derivative_map(gm)
    crossed = set()
    for i in range(g.num_edges):
        e = Letter(i, 1)
        for pos, (d1, d2) in crossed_turns(gm.image(e)):
            k = turn_collapse(df, d1, d2)
            if k is not None:
                return TrainTrackCertificate(False, edge=e, position=pos, turn=(d1, d2), collapse_iterate=k)
            crossed.add(frozenset((d1, d2)))
    illegal = set()
    for v in range(g.num_vertices):
        for d1, d2 in combinations(g.directions_at(v), 2):
            if turn_collapse(df, d1, d2) is not None:
                illegal.add(frozenset((d1, d2)))
    return TrainTrackCertificate(True, frozenset(illegal), frozenset(crossed))


def transition_digraph(gm: GraphMap) -> dict[int, set[int]]:
    """Arrow ``e' -> e`` whenever ``e`` (either orientation) occurs in ``f(e')``."""
    return {i: {x.index for x in img} for i, img in enumerate(gm.edge_images)}


def _reachable(adj: Mapping[int, set[int]], start: int) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_irreducible_representative(gm: GraphMap) -> bool:
    g = gm.graph
    if any(g.valence(v) <= 2 for v in range(g.num_vertices)):
        return False
    adj = transition_digraph(gm)
    rev: dict[int, set[int]] = {i: set() for i in adj}
    for u, ws in adj.items():
        for w in ws:
            rev[w].add(u)
    n = g.num_edges
    return len(_reachable(adj, 0)) == n and len(_reachable(rev, 0)) == n
