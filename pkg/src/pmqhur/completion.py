"""
Norm-truncated completion of a locally finite PMQ.

An element of the completion is a class of words over Q+ (the non-unit
elements) modulo the standard moves

    MERGE  (..., a, b, ...) -> (..., ab, ...)      when ab is defined in Q
    SPLIT  the inverse of MERGE
    BRAID  (..., a, b, ...) <-> (..., b, a^b, ...)

Words are graded by the sum of the norms of their letters.  ``complete(spec, N)``
enumerates every word of weight <= N, joins words related by a move and keeps the
classes whose members all have weight <= N.  Merging can only raise the weight
(norms are superadditive) so a class that reaches beyond N is dropped as a whole.

Each class is identified by its shortlex-minimal member, which for a class
containing a letter of Q is that letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CompletionNotConservative, NormUnavailable, TruncationOverflow
from .pmq import PairSpec, PmqSpec, classify

Word = tuple


@dataclass(frozen=True)
class HqClass:
    word: tuple  # canonical member
    norm: int
    in_q: Optional[str] = None

    @property
    def is_unit(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        return ".".join(self.word) if self.word else "1"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                rx, ry = ry, rx
            self.parent[rx] = ry


class TruncatedCompletion:
    """The classes of the completion up to norm ``bound``; immutable after construction."""

    def __init__(self, base: PmqSpec, bound: int, norms: dict, members: Sequence[Sequence[Word]]):
        self.base = base
        self.bound = bound
        self.h = dict(norms)
        self._key = {x: base.index(x) for x in base.elements}
        classes = []
        self._lookup: dict = {}
        self._members: dict = {}
        for group in members:
            group = sorted(group, key=self.shortlex)
            letters = [w[0] for w in group if len(w) == 1]
            if len(letters) > 1:
                raise CompletionNotConservative(
                    f"elements {', '.join(letters)} of Q lie in the same completion class"
                )
            cls = HqClass(tuple(group[0]), max(self.weight(w) for w in group), letters[0] if letters else None)
            classes.append(cls)
            self._members[cls] = tuple(tuple(w) for w in group)
            for w in group:
                self._lookup[tuple(w)] = cls
        classes.sort(key=lambda c: (c.norm, self.shortlex(c.word)))
        self.classes: tuple = tuple(classes)
        self.unit = self._lookup[()]

    def shortlex(self, word: Word) -> tuple:
        return (len(word), tuple(self._key[x] for x in word))

    def weight(self, word: Iterable[str]) -> int:
        return sum(self.h[x] for x in word)

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, cls) -> bool:
        return cls in self._members

    def of_word(self, word: Iterable[str]) -> HqClass:
        """Class of a word over Q (unit letters are dropped)."""
        word = tuple(x for x in word if x != self.base.unit)
        try:
            return self._lookup[word]
        except KeyError:
            if any(x not in self.h for x in word):
                raise KeyError(f"unknown letters in {word!r}") from None
            raise TruncationOverflow(
                f"word {'.'.join(word)} has norm above the truncation bound {self.bound}"
            ) from None

    def letter(self, x: str) -> HqClass:
        return self.of_word((x,))

    def parse(self, text: str) -> HqClass:
        """Inverse of ``str(cls)``; any member word is accepted, letters joined by '.'."""
        text = text.strip()
        if text in ("", self.base.unit, "1"):
            return self.unit
        letters = tuple(text.split("."))
        for x in letters:
            if x not in self._key:
                raise KeyError(f"unknown element {x!r}")
        return self.of_word(letters)

    def format(self, cls: HqClass) -> str:
        return ".".join(cls.word) if cls.word else self.base.unit

    def product(self, u: HqClass, v: HqClass) -> HqClass:
        if u.norm + v.norm > self.bound:
            raise TruncationOverflow(f"norm {u.norm}+{v.norm} exceeds bound {self.bound}")
        return self.of_word(u.word + v.word)

    def prod(self, classes: Iterable[HqClass]) -> HqClass:
        word: tuple = ()
        for c in classes:
            word += c.word
        return self.of_word(word)

    def conj_word(self, word: Word, by: Word) -> Word:
        cj = self.base.cj
        out = []
        for x in word:
            for y in by:
                x = cj(x, y)
            out.append(x)
        return tuple(out)

    def conj(self, u: HqClass, w: HqClass) -> HqClass:
        return self.of_word(self.conj_word(u.word, w.word))

    def members(self, u: HqClass) -> tuple:
        return self._members[u]

    def e_image(self, u: HqClass, pair: PairSpec) -> str:
        return pair.e_word(u.word)


def _words_up_to(letters: Sequence[str], h: dict, bound: int) -> list:
    out = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for word, wt in frontier:
            for x in letters:
                w2 = wt + h[x]
                if w2 <= bound:
                    item = word + (x,)
                    out.append(item)
                    nxt.append((item, w2))
        frontier = nxt
    return out


def complete(spec: PmqSpec, bound: int) -> TruncatedCompletion:
    """Completion classes of all words of norm <= ``bound``."""
    rep = classify(spec)
    if not rep.locally_finite:
        raise NormUnavailable(f"PMQ is not locally finite (cycle {' -> '.join(rep.cycle)})")
    h = rep.norms
    letters = spec.nonunit
    words = _words_up_to(letters, h, bound)
    index = {w: n for n, w in enumerate(words)}
    uf = _UnionFind(len(words))
    escapes = []
    for n, w in enumerate(words):
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            ab = spec.mul(a, b)
            if ab is not None:
                target = index.get(w[:k] + (ab,) + w[k + 2:])
                if target is None:
                    escapes.append(n)
                else:
                    uf.union(n, target)
            uf.union(n, index[w[:k] + (b, spec.cj(a, b)) + w[k + 2:]])
    groups: dict = {}
    for n, w in enumerate(words):
        groups.setdefault(uf.find(n), []).append(w)
    dropped = {uf.find(n) for n in escapes}
    kept = [g for root, g in groups.items() if root not in dropped]
    return TruncatedCompletion(spec, bound, h, kept)


def hq_product(tc: TruncatedCompletion, u: HqClass, v: HqClass) -> HqClass:
    return tc.product(u, v)


def hq_conj(tc: TruncatedCompletion, u: HqClass, w: HqClass) -> HqClass:
    return tc.conj(u, w)


def decompositions(tc: TruncatedCompletion, u: HqClass) -> list:
    """All member words of the class, in shortlex order; the unit class gives [()]."""
    return list(tc.members(u))
