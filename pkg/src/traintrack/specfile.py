"""Line-oriented automorphism spec files.

Grammar (EBNF; ``NAME`` is any run of non-space characters other than
``=``, ``:``, ``[``, ``]``, ``#``, ``~`` and ``'``)::

    file      = { line } ;
    line      = [ section | entry ] [ comment ] NEWLINE ;
    comment   = "#" { any character } ;
    section   = "[" ( "meta" | "alphabet" | "graph" | "vertices" | "map" | "marking" ) "]" ;
    entry     = meta | letters | vertex | edge | vimage | image ;
    meta      = ( "name" | "inverse" ) "=" text ;                (in [meta])
    letters   = NAME { NAME } ;                                  (in [alphabet])
    vertex    = "vertex" NAME { NAME } ;                         (in [graph])
    edge      = "edge" NAME ":" NAME "->" NAME ;                 (in [graph])
    vimage    = NAME "=" NAME ;                                  (in [vertices])
    image     = NAME "=" token { token } ;                       (in [map], [marking])
    token     = "~" NAME | NAME { "'" } ;

A file has either an ``[alphabet]`` section (basis mode: a morphism of the
free group, realised on the rose) or a ``[graph]`` section (graph mode:
an explicit graph map).  In basis mode inverses are written ``x'``; in
graph mode reversed edges are written ``~X``.  Both spellings are accepted
everywhere.  ``[vertices]`` may be omitted when the graph has one vertex.
``[marking]`` is graph-mode only and sends generators to loops at the
first declared vertex.  ``inverse`` names another spec file, resolved
relative to this one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graphs import Graph, GraphMap, rose_of
from .words import BasisMorphism, Letter, Word

SECTIONS = ("meta", "alphabet", "graph", "vertices", "map", "marking")
BUNDLED = ("bk", "bk-inv", "tribonacci", "tribonacci-inv")
_NAME = re.compile(r"[^\s=:\[\]#~']+")

Token = tuple[str, int]


class SpecParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<spec>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class AutoSpec:
    mode: str
    name: str = ""
    inverse: str = ""
    alphabet: tuple[str, ...] = ()
    vertices: tuple[str, ...] = ()
    edges: tuple[tuple[str, str, str], ...] = ()
    vertex_images: tuple[tuple[str, str], ...] = ()
    images: tuple[tuple[str, tuple[Token, ...]], ...] = ()
    marking: tuple[tuple[str, tuple[Token, ...]], ...] = ()
    path: Path | None = None

    def __eq__(self, other):
        if not isinstance(other, AutoSpec):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.mode, self.name, self.inverse, self.alphabet, self.vertices, self.edges,
                self.vertex_images, self.images, self.marking)

    @property
    def letters(self) -> tuple[str, ...]:
        return self.alphabet if self.mode == "basis" else tuple(e[0] for e in self.edges)

    def _word(self, tokens, names) -> tuple[Letter, ...]:
        lookup = {n: i for i, n in enumerate(names)}
        return tuple(Letter(lookup[n], s) for n, s in tokens)

    def to_morphism(self) -> BasisMorphism:
        if self.mode != "basis":
            raise ValueError("graph-mode specs do not define a basis morphism")
        imgs = dict(self.images)
        return BasisMorphism(len(self.alphabet),
                             tuple(Word(self._word(imgs[a], self.alphabet)) for a in self.alphabet),
                             self.alphabet)

    def to_graph_map(self) -> GraphMap:
        if self.mode == "basis":
            return rose_of(self.to_morphism())
        vidx = {v: i for i, v in enumerate(self.vertices)}
        graph = Graph(self.vertices, tuple(e[0] for e in self.edges),
                      tuple((vidx[s], vidx[t]) for _, s, t in self.edges))
        vimg = dict(self.vertex_images)
        vertex_images = tuple(vidx[vimg.get(v, v)] for v in self.vertices)
        imgs = dict(self.images)
        names = graph.edge_names
        edge_images = tuple(self._word(imgs[e], names) for e in names)
        marking = None
        if self.marking:
            marking = tuple(self._word(toks, names) for _, toks in self.marking)
        return GraphMap(graph, vertex_images, edge_images, marking,
                        tuple(g for g, _ in self.marking))

    def inverse_path(self) -> Path | None:
        if not self.inverse:
            return None
        if self.path is not None and (self.path.parent / self.inverse).exists():
            return self.path.parent / self.inverse
        return resolve_spec(self.inverse)

    def dump(self) -> str:
        """Canonical text; parsing it gives back an equal spec."""
        def fmt(tokens):
            if self.mode == "basis":
                return " ".join(n + ("'" if s < 0 else "") for n, s in tokens)
            return " ".join(("~" if s < 0 else "") + n for n, s in tokens)

        out = []
        if self.name or self.inverse:
            out.append("[meta]")
            if self.name:
                out.append(f"name = {self.name}")
            if self.inverse:
                out.append(f"inverse = {self.inverse}")
            out.append("")
        if self.mode == "basis":
            out += ["[alphabet]", " ".join(self.alphabet), ""]
        else:
            out += ["[graph]", "vertex " + " ".join(self.vertices)]
            out += [f"edge {e} : {s} -> {t}" for e, s, t in self.edges]
            out.append("")
            if self.vertex_images:
                out += ["[vertices]"] + [f"{v} = {w}" for v, w in self.vertex_images] + [""]
        out += ["[map]"] + [f"{n} = {fmt(t)}" for n, t in self.images] + [""]
        if self.marking:
            out += ["[marking]"] + [f"{n} = {fmt(t)}" for n, t in self.marking] + [""]
        return "\n".join(out)


def _tokens(text: str, offset: int, lineno: int, src: str) -> list[tuple[str, int, int]]:
    """Split ``text`` into (name, sign, column) triples."""
    out = []
    for m in re.finditer(r"\S+", text):
        tok, col = m.group(), offset + m.start() + 1
        sign = 1
        if tok.startswith("~"):
            sign, tok = -1, tok[1:]
        while tok.endswith("'"):
            sign, tok = -sign, tok[:-1]
        if not _NAME.fullmatch(tok):
            raise SpecParseError(f"malformed token {m.group()!r}", lineno, col, src)
        out.append((tok, sign, col))
    return out


def parse_spec(text: str, source: str = "<spec>", path: Path | None = None) -> AutoSpec:
    section = None
    seen_sections = set()
    meta: dict[str, str] = {}
    alphabet: list[str] = []
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    vimages: list[tuple[str, str]] = []
    images: list[tuple[str, tuple[Token, ...]]] = []
    marking: list[tuple[str, tuple[Token, ...]]] = []
    lhs_cols: dict[str, tuple[int, int]] = {}
    pending: list[tuple[list, int]] = []

    def err(msg, lineno, col):
        raise SpecParseError(msg, lineno, col, source)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        if stripped.startswith("["):
            m = re.fullmatch(r"\[\s*(\w+)\s*\]", stripped)
            if not m or m.group(1) not in SECTIONS:
                err(f"unknown section {stripped!r}", lineno, indent + 1)
            section = m.group(1)
            if section in seen_sections:
                err(f"duplicate section [{section}]", lineno, indent + 1)
            seen_sections.add(section)
            continue
        if section is None:
            err("entry outside of any section", lineno, indent + 1)
        if section == "alphabet":
            for name, sign, col in _tokens(line, 0, lineno, source):
                if sign < 0:
                    err("alphabet letters cannot be inverted", lineno, col)
                if name in alphabet:
                    err(f"letter {name!r} declared twice", lineno, col)
                alphabet.append(name)
            continue
        if section == "graph":
            m = re.fullmatch(r"(\s*)vertex\s+(.+)", line)
            if m:
                for name, sign, col in _tokens(m.group(2), m.start(2), lineno, source):
                    if sign < 0 or name in vertices:
                        err(f"bad vertex {name!r}", lineno, col)
                    vertices.append(name)
                continue
            m = re.fullmatch(r"\s*edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", line)
            if not m:
                err("expected 'vertex NAMES' or 'edge NAME : SRC -> TGT'", lineno, indent + 1)
            name, s, t = m.groups()
            if not _NAME.fullmatch(name) or any(e[0] == name for e in edges):
                err(f"bad or duplicate edge name {name!r}", lineno, m.start(1) + 1)
            for grp in (2, 3):
                if m.group(grp) not in vertices:
                    err(f"undeclared vertex {m.group(grp)!r}", lineno, m.start(grp) + 1)
            edges.append((name, s, t))
            continue
        m = re.fullmatch(r"(\s*)([^=\s]+)\s*=\s*(.*)", line)
        if not m:
            err("expected 'NAME = ...'", lineno, indent + 1)
        lhs, rhs = m.group(2), m.group(3)
        lcol, rcol = m.start(2) + 1, m.start(3)
        if section == "meta":
            if lhs not in ("name", "inverse"):
                err(f"unknown meta key {lhs!r}", lineno, lcol)
            meta[lhs] = rhs.strip()
            continue
        if section == "vertices":
            if lhs not in vertices:
                err(f"undeclared vertex {lhs!r}", lineno, lcol)
            target = rhs.strip()
            if target not in vertices:
                err(f"undeclared vertex {target!r}", lineno, rcol + 1)
            vimages.append((lhs, target))
            continue
        toks = _tokens(rhs, rcol, lineno, source)
        if not toks:
            err("empty image", lineno, rcol + 1)
        entry = (lhs, tuple((n, s) for n, s, _ in toks))
        if section == "map":
            if any(n == lhs for n, _ in images):
                err(f"image of {lhs!r} given twice", lineno, lcol)
            images.append(entry)
        else:
            marking.append(entry)
        lhs_cols[f"{section}:{lhs}"] = (lineno, lcol)
        pending.append((toks, lineno))

    if "alphabet" in seen_sections and "graph" in seen_sections:
        err("a spec has either [alphabet] or [graph], not both", 1, 1)
    if "alphabet" in seen_sections:
        mode, letters = "basis", alphabet
        if "marking" in seen_sections or "vertices" in seen_sections:
            err("[marking] and [vertices] belong to graph-mode specs", 1, 1)
    elif "graph" in seen_sections:
        mode, letters = "graph", [e[0] for e in edges]
    else:
        err("missing [alphabet] or [graph] section", 1, 1)
    if "map" not in seen_sections:
        err("missing [map] section", 1, 1)
    for toks, lineno in pending:
        for name, _, col in toks:
            if name not in letters:
                err(f"undeclared letter {name!r}", lineno, col)
    for name, _ in images:
        if name not in letters:
            ln, col = lhs_cols[f"map:{name}"]
            err(f"image given for undeclared letter {name!r}", ln, col)
    missing = [n for n in letters if n not in dict(images)]
    if missing:
        err(f"no image for {', '.join(missing)}", len(text.splitlines()) or 1, 1)
    order = {n: i for i, n in enumerate(letters)}
    images.sort(key=lambda item: order[item[0]])
    return AutoSpec(mode, meta.get("name", ""), meta.get("inverse", ""), tuple(alphabet),
                    tuple(vertices), tuple(edges), tuple(vimages), tuple(images),
                    tuple(marking), path)


def resolve_spec(ref: str) -> Path:
    """A path on disk, or the name of a bundled spec (``bk``, ``bk.spec`` ...)."""
    p = Path(ref)
    if p.exists():
        return p
    stem = p.name[:-5] if p.name.endswith(".spec") else p.name
    if stem in BUNDLED:
        return Path(str(resources.files("traintrack") / "specs" / f"{stem}.spec"))
    raise FileNotFoundError(ref)


def load_spec(ref: str) -> AutoSpec:
    path = resolve_spec(ref)
    return parse_spec(path.read_text(encoding="utf-8"), str(ref), path)


def bundled(name: str) -> AutoSpec:
    return load_spec(name)
