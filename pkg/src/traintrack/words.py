"""Reduced words in a free group and endomorphisms given on a basis.

Letters are ``(index, sign)`` pairs.  A :class:`Word` is always freely
reduced; build one with :func:`reduce_word` (or :meth:`Word.parse`) rather
than by hand.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class MalformedInput(ValueError):
    """A word or morphism refers to letters outside its alphabet."""


class AlphabetMismatch(ValueError):
    pass


class Letter(NamedTuple):
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    @property
    def positive(self) -> bool:
        return self.sign > 0


def default_names(rank: int) -> tuple[str, ...]:
    if rank <= 26:
        return tuple(string.ascii_lowercase[:rank])
    return tuple(f"x{i}" for i in range(rank))


def reduce_word(raw: Iterable, rank: int | None = None) -> "Word":
    """Freely reduce a sequence of letters with a single stack pass.

    ``raw`` may contain :class:`Letter` objects or plain ``(index, sign)``
    pairs.  If ``rank`` is given, every index must be below it.
    """
    stack: list[Letter] = []
    for item in raw:
        x = Letter(*item)
        if x.sign not in (1, -1) or x.index < 0:
            raise MalformedInput(f"bad letter {item!r}")
        if rank is not None and x.index >= rank:
            raise AlphabetMismatch(f"letter index {x.index} outside alphabet of size {rank}")
        if stack and stack[-1] == x.inverse():
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __mul__(self, other: "Word") -> "Word":
        return reduce_word(self.letters + tuple(other))

    def inverse(self) -> "Word":
        return Word(tuple(x.inverse() for x in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(x.sign > 0 for x in self.letters)

    def format(self, names: Sequence[str] | None = None) -> str:
        """Space separated letters, inverses marked with a trailing ``'``."""
        if not self.letters:
            return "1"
        if names is None:
            names = default_names(max(x.index for x in self.letters) + 1)
        return " ".join(names[x.index] + ("" if x.sign > 0 else "'") for x in self.letters)

    def __str__(self) -> str:
        return self.format().replace(" ", "")

    @classmethod
    def parse(cls, text: str, names: Sequence[str] | None = None) -> "Word":
        """Parse ``"c a a a"``, ``"c' b"`` or the compact ``"caaa"``.

        Tokens are whitespace separated when the text contains whitespace;
        otherwise each character (with an optional trailing ``'``) is a
        token.  ``"1"`` and the empty string are the identity.
        """
        text = text.strip()
        if text in ("", "1"):
            return cls()
        if names is None:
            names = string.ascii_lowercase
        lookup = {n: i for i, n in enumerate(names)}
        if any(ch.isspace() for ch in text):
            tokens = text.split()
        else:
            tokens = []
            for ch in text:
                if ch == "'" and tokens:
                    tokens[-1] += ch
                else:
                    tokens.append(ch)
        raw = []
        for tok in tokens:
            sign = 1
            while tok.endswith("'"):
                tok = tok[:-1]
                sign = -sign
            if tok not in lookup:
                raise MalformedInput(f"unknown letter {tok!r}")
            raw.append((lookup[tok], sign))
        return reduce_word(raw)


@dataclass(frozen=True)
class BasisMorphism:
    """Endomorphism of F_N given by the images of the basis elements."""

    rank: int
    images: tuple[Word, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise MalformedInput(f"expected {self.rank} images, got {len(self.images)}")
        for w in self.images:
            if not isinstance(w, Word):
                raise MalformedInput(f"image {w!r} is not a Word")
            if len(w) == 0:
                raise MalformedInput("images of generators must be non-empty")
            if reduce_word(w.letters, self.rank) != w:
                raise MalformedInput(f"image {w} is not reduced")
        if not self.names:
            object.__setattr__(self, "names", default_names(self.rank))

    @classmethod
    def from_strings(cls, images: Sequence[str], names: Sequence[str] | None = None) -> "BasisMorphism":
        names = tuple(names) if names is not None else default_names(len(images))
        return cls(len(images), tuple(Word.parse(s, names) for s in images), names)

    @classmethod
    def identity(cls, rank: int) -> "BasisMorphism":
        return cls(rank, tuple(Word((Letter(i, 1),)) for i in range(rank)))

    def image(self, x: Letter) -> Word:
        w = self.images[x.index]
        return w if x.sign > 0 else w.inverse()

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def is_positive(self) -> bool:
        return all(w.is_positive() for w in self.images)

    def __str__(self) -> str:
        return ", ".join(f"{n} -> {w.format(self.names)}" for n, w in zip(self.names, self.images))


def apply_morphism(m: BasisMorphism, w: Word) -> Word:
    for x in w:
        if x.index >= m.rank:
            raise AlphabetMismatch(f"letter index {x.index} outside rank {m.rank}")
    raw: list[Letter] = []
    for x in w:
        raw.extend(m.image(x))
    return reduce_word(raw)


def iterate_morphism(m: BasisMorphism, w: Word, n: int) -> Word:
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        w = apply_morphism(m, w)
    return w


def compose(outer: BasisMorphism, inner: BasisMorphism) -> BasisMorphism:
    """The morphism ``x -> outer(inner(x))``."""
    if outer.rank != inner.rank:
        raise AlphabetMismatch("ranks differ")
    return BasisMorphism(outer.rank, tuple(apply_morphism(outer, w) for w in inner.images), inner.names)


def verify_inverse_pair(m1: BasisMorphism, m2: BasisMorphism) -> bool:
    """True iff ``m2 o m1`` and ``m1 o m2`` both fix every generator."""
    if m1.rank != m2.rank:
        raise AlphabetMismatch(f"ranks {m1.rank} and {m2.rank} differ")
    for i in range(m1.rank):
        x = Word((Letter(i, 1),))
        if apply_morphism(m2, apply_morphism(m1, x)) != x:
            return False
        if apply_morphism(m1, apply_morphism(m2, x)) != x:
            return False
    return True
