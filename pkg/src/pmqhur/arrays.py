"""
Arrays over a truncated completion and the bisimplicial structure on them.

An array of bidegree (p, q) is a (p+2) x (q+2) grid of completion classes,
stored column by column: ``entries[i][j]`` is the entry in column i and row j.
Columns 0 and p+1 and rows 0 and q+1 are the boundary lines.

Products run column by column from left to right and bottom to top inside a
column.  Horizontal faces merge two adjacent columns, twisting the left entry
by the part of the right column lying below it; vertical faces merge two rows.
Degeneracies insert an all-unit line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .completion import HqClass, TruncatedCompletion
from .errors import ClosureViolation, NormUnavailable, TruncationOverflow
from .pmq import PmqSpec, classify


@dataclass(frozen=True)
class ArrayPQ:
    p: int
    q: int
    entries: tuple  # entries[i][j], 0 <= i <= p+1, 0 <= j <= q+1
    tc: TruncatedCompletion = field(compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.entries) != self.p + 2 or any(len(col) != self.q + 2 for col in self.entries):
            raise ValueError(f"entries do not form a {self.p + 2}x{self.q + 2} grid")

    def __getitem__(self, ij) -> HqClass:
        i, j = ij
        return self.entries[i][j]

    @property
    def support(self) -> frozenset:
        return frozenset(
            (i, j) for i, col in enumerate(self.entries) for j, x in enumerate(col) if not x.is_unit
        )

    def key(self) -> tuple:
        """Deterministic sort key."""
        sk = self.tc.shortlex
        return (self.p, self.q, tuple(tuple(sk(x.word) for x in col) for col in self.entries))

    def render(self) -> str:
        """Rows top to bottom, columns left to right."""
        fmt = self.tc.format
        lines = []
        for j in reversed(range(self.q + 2)):
            lines.append(" ".join(fmt(self.entries[i][j]) for i in range(self.p + 2)))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        fmt = self.tc.format
        return {
            "p": self.p,
            "q": self.q,
            "entries": [[fmt(x) for x in col] for col in self.entries],
        }


def make_array(tc: TruncatedCompletion, p: int, q: int, placed: Optional[dict] = None) -> ArrayPQ:
    """Array with the given non-unit entries ({(i, j): class or word string}), units elsewhere."""
    cols = [[tc.unit] * (q + 2) for _ in range(p + 2)]
    for (i, j), x in (placed or {}).items():
        if not (0 <= i <= p + 1 and 0 <= j <= q + 1):
            raise ValueError(f"position {(i, j)} outside a ({p},{q}) array")
        cols[i][j] = tc.parse(x) if isinstance(x, str) else x
    return ArrayPQ(p, q, tuple(tuple(c) for c in cols), tc)


def array_from_dict(tc: TruncatedCompletion, d: dict) -> ArrayPQ:
    p, q = int(d["p"]), int(d["q"])
    entries = tuple(tuple(tc.parse(x) for x in col) for col in d["entries"])
    return ArrayPQ(p, q, entries, tc)


def is_nondegenerate(ua: ArrayPQ) -> bool:
    supp = ua.support
    cols = {i for i, _ in supp}
    rows = {j for _, j in supp}
    return all(i in cols for i in range(1, ua.p + 1)) and all(j in rows for j in range(1, ua.q + 1))


def is_admissible(ua: ArrayPQ) -> bool:
    for i, col in enumerate(ua.entries):
        for j, x in enumerate(col):
            if x.is_unit:
                continue
            if x.in_q is None:
                return False
            if i in (0, ua.p + 1) or j in (0, ua.q + 1):
                return False
    return True


def face_h(ua: ArrayPQ, i: int) -> ArrayPQ:
    if ua.p < 1 or not 0 <= i <= ua.p:
        raise ValueError(f"horizontal face {i} undefined in bidegree ({ua.p},{ua.q})")
    tc = ua.tc
    left, right = ua.entries[i], ua.entries[i + 1]
    merged = []
    below: tuple = ()
    for j in range(ua.q + 2):
        merged.append(tc.of_word(tc.conj_word(left[j].word, below) + right[j].word))
        below += right[j].word
    cols = ua.entries[:i] + (tuple(merged),) + ua.entries[i + 2:]
    return ArrayPQ(ua.p - 1, ua.q, cols, tc)


def face_v(ua: ArrayPQ, j: int) -> ArrayPQ:
    if ua.q < 1 or not 0 <= j <= ua.q:
        raise ValueError(f"vertical face {j} undefined in bidegree ({ua.p},{ua.q})")
    tc = ua.tc
    cols = tuple(
        col[:j] + (tc.of_word(col[j].word + col[j + 1].word),) + col[j + 2:] for col in ua.entries
    )
    return ArrayPQ(ua.p, ua.q - 1, cols, tc)


def degeneracy_h(ua: ArrayPQ, i: int) -> ArrayPQ:
    if not 0 <= i <= ua.p:
        raise ValueError(f"horizontal degeneracy {i} undefined in bidegree ({ua.p},{ua.q})")
    blank = (ua.tc.unit,) * (ua.q + 2)
    return ArrayPQ(ua.p + 1, ua.q, ua.entries[: i + 1] + (blank,) + ua.entries[i + 1:], ua.tc)


def degeneracy_v(ua: ArrayPQ, j: int) -> ArrayPQ:
    if not 0 <= j <= ua.q:
        raise ValueError(f"vertical degeneracy {j} undefined in bidegree ({ua.p},{ua.q})")
    u = ua.tc.unit
    cols = tuple(col[: j + 1] + (u,) + col[j + 1:] for col in ua.entries)
    return ArrayPQ(ua.p, ua.q + 1, cols, ua.tc)


def total_product(ua: ArrayPQ) -> HqClass:
    word: tuple = ()
    for col in ua.entries:
        for x in col:
            word += x.word
    return ua.tc.of_word(word)


@dataclass
class CellSet:
    component: HqClass
    tc: TruncatedCompletion
    cells: dict  # (p, q) -> tuple of ArrayPQ, sorted by key()
    admissible: dict  # ArrayPQ -> bool

    def __iter__(self):
        for pq in sorted(self.cells):
            yield from self.cells[pq]

    def __len__(self) -> int:
        return sum(len(v) for v in self.cells.values())

    def __contains__(self, ua) -> bool:
        return ua in self.admissible

    def counts(self) -> dict:
        return {pq: len(v) for pq, v in sorted(self.cells.items()) if v}

    def nadm(self) -> list:
        return [c for c in self if not self.admissible[c]]

    def check_closure(self) -> None:
        for ua in self:
            faces = [face_h(ua, i) for i in range(ua.p + 1)] if ua.p else []
            faces += [face_v(ua, j) for j in range(ua.q + 1)] if ua.q else []
            for f in faces:
                if f not in self.admissible:
                    raise ClosureViolation(f"face of\n{ua.render()}\nmissing:\n{f.render()}")


def _labelings(tc, classes, k, budget):
    """Ordered k-tuples of non-unit classes with total norm <= budget."""
    if k == 0:
        yield ()
        return
    for c in classes:
        # each of the remaining k-1 entries has norm at least 1
        if c.norm <= budget - (k - 1):
            for rest in _labelings(tc, classes, k - 1, budget - c.norm):
                yield (c,) + rest


def enumerate_cells(spec: PmqSpec, tc: TruncatedCompletion, a: HqClass) -> CellSet:
    """All non-degenerate arrays over ``tc`` whose total product is ``a``."""
    rep = classify(spec)
    if not rep.locally_finite:
        raise NormUnavailable(f"PMQ is not locally finite (cycle {' -> '.join(rep.cycle)})")
    if not rep.augmented:
        raise NormUnavailable("cell enumeration needs an augmented PMQ")
    if a not in tc:
        raise KeyError(f"{a} is not a class of this completion")
    if a.norm > tc.bound:
        raise TruncationOverflow(f"element norm {a.norm} exceeds bound {tc.bound}")
    budget = a.norm
    nonunit = [c for c in tc.classes if not c.is_unit and c.norm <= budget]
    found: dict = {}
    # every interior line needs an entry, so p, q <= number of entries <= h(a)
    for k in range(0, budget + 1):
        labels = list(_labelings(tc, nonunit, k, budget))
        if not labels:
            continue
        for p in range(0, k + 1):
            for q in range(0, k + 1):
                grid = [(i, j) for i in range(p + 2) for j in range(q + 2)]
                for pos in combinations(grid, k):
                    if not all(any(i == c for c, _ in pos) for i in range(1, p + 1)):
                        continue
                    if not all(any(j == r for _, r in pos) for j in range(1, q + 1)):
                        continue
                    # positions are in product order, so the word is the concatenation
                    for lab in labels:
                        word: tuple = ()
                        for c in lab:
                            word += c.word
                        try:
                            if tc.of_word(word) != a:
                                continue
                        except TruncationOverflow:
                            continue
                        ua = make_array(tc, p, q, dict(zip(pos, lab)))
                        found.setdefault((p, q), []).append(ua)
    cells = {pq: tuple(sorted(v, key=ArrayPQ.key)) for pq, v in found.items()}
    adm = {ua: is_admissible(ua) for v in cells.values() for ua in v}
    return CellSet(a, tc, cells, adm)
