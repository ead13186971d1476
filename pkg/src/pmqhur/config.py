"""
Labelled point configurations in the unit square.

A configuration is a finite set of points with exact rational coordinates in
[0,1]^2.  Fine points carry a class of the truncated completion, coarse points
carry a group element and sit on one of a finite list of sites.  All products
over a configuration run through its points ordered by x and then by y.

The grid correspondence with arrays goes through ``cell_of`` (configuration to
array plus interior coordinates) and ``upsilon`` (back, collapsing coinciding
coordinates with faces first).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Union

from .arrays import ArrayPQ, face_h, face_v, is_nondegenerate, make_array
from .completion import HqClass, TruncatedCompletion
from .errors import (
    CoarsePointPresent,
    CoveringNotAdapted,
    CoveringNotStripSeparated,
    DegenerateCell,
    InvalidConfiguration,
    MalformedSpec,
    MonotonicityViolation,
    NoBasePoint,
    TruncationOverflow,
)
from .pmq import PairSpec


@dataclass(frozen=True)
class Fine:
    label: HqClass


@dataclass(frozen=True)
class Coarse:
    label: str


Label = Union[Fine, Coarse]


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction
    label: Label

    @property
    def pos(self) -> tuple:
        return (self.x, self.y)

    @property
    def fine(self) -> bool:
        return isinstance(self.label, Fine)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        # floats are taken at their decimal spelling, never their binary value
        return Fraction(repr(v))
    return Fraction(v) if isinstance(v, int) else Fraction(str(v).strip())


def _fmt(v: Fraction) -> str:
    return str(v)


@dataclass(frozen=True)
class Configuration:
    points: tuple  # sorted by (x, y)
    sites: tuple = ()  # sorted positions
    tc: Optional[TruncatedCompletion] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pts = tuple(sorted(self.points, key=lambda p: (p.x, p.y)))
        sites = tuple(sorted(set((_frac(x), _frac(y)) for x, y in self.sites)))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "sites", sites)
        seen = set()
        for p in pts:
            if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
                raise InvalidConfiguration(f"point {p.pos} lies outside the unit square")
            if p.pos in seen:
                raise InvalidConfiguration(f"two points at {p.pos}")
            seen.add(p.pos)
            on_site = p.pos in sites
            if p.fine and on_site:
                raise InvalidConfiguration(f"fine point at site {p.pos}")
            if not p.fine and not on_site:
                raise InvalidConfiguration(f"coarse point at {p.pos} is not a site")

    @property
    def all_fine(self) -> bool:
        return all(p.fine for p in self.points)

    def replace_points(self, points: Iterable[Point]) -> "Configuration":
        return Configuration(tuple(points), self.sites, self.tc)

    def to_dict(self) -> dict:
        out = {"sites": [[_fmt(x), _fmt(y)] for x, y in self.sites], "points": []}
        for p in self.points:
            d = {"x": _fmt(p.x), "y": _fmt(p.y)}
            if p.fine:
                d["fine"] = self.tc.format(p.label.label) if self.tc else str(p.label.label)
            else:
                d["coarse"] = p.label.label
            out["points"].append(d)
        return out


def config_from_dict(d: dict, tc: Optional[TruncatedCompletion] = None,
                     pair: Optional[PairSpec] = None) -> Configuration:
    try:
        sites = [(_frac(x), _frac(y)) for x, y in d.get("sites", [])]
        pts = []
        for item in d.get("points", []):
            x, y = _frac(item["x"]), _frac(item["y"])
            if "fine" in item:
                if tc is None:
                    raise MalformedSpec("fine labels need a PMQ")
                pts.append(Point(x, y, Fine(tc.parse(str(item["fine"])))))
            elif "coarse" in item:
                g = str(item["coarse"])
                if pair is not None and g not in pair.group.elements:
                    raise MalformedSpec(f"coarse label {g!r} is not a group element")
                pts.append(Point(x, y, Coarse(g)))
            else:
                raise MalformedSpec(f"point {item!r} has neither 'fine' nor 'coarse'")
    except (KeyError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedSpec(f"bad configuration entry: {exc}") from None
    return Configuration(tuple(pts), tuple(sites), tc)


def load_config(path, tc=None, pair=None) -> Configuration:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{path}: {exc}") from None
    return config_from_dict(d, tc, pair)


# monodromy ------------------------------------------------------------------


def omega(c: Configuration, pair: PairSpec) -> str:
    G = pair.group
    acc = G.unit
    for p in c.points:
        g = pair.e_word(p.label.label.word) if p.fine else p.label.label
        acc = G.mul(acc, g)
    return acc


def omega_hat(c: Configuration, tc: TruncatedCompletion) -> HqClass:
    if not c.all_fine:
        raise CoarsePointPresent("total completion monodromy needs an all-fine configuration")
    return tc.prod(p.label.label for p in c.points)


# cells ----------------------------------------------------------------------


@dataclass(frozen=True)
class CellLocation:
    ua: ArrayPQ
    us: tuple
    ut: tuple

    def to_dict(self) -> dict:
        return {"array": self.ua.to_dict(), "us": [_fmt(s) for s in self.us],
                "ut": [_fmt(t) for t in self.ut]}


def location_from_dict(d: dict, tc: TruncatedCompletion) -> CellLocation:
    from .arrays import array_from_dict

    try:
        return CellLocation(array_from_dict(tc, d["array"]), tuple(_frac(s) for s in d["us"]),
                            tuple(_frac(t) for t in d["ut"]))
    except (KeyError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedSpec(f"bad cell location: {exc}") from None


def cell_of(c: Configuration, tc: TruncatedCompletion) -> CellLocation:
    """Array and interior coordinates of an all-fine configuration; unit-labelled points are ignored."""
    if not c.all_fine:
        raise CoarsePointPresent("cell_of needs an all-fine configuration")
    pts = [p for p in c.points if not p.label.label.is_unit]
    xs = sorted({p.x for p in pts if 0 < p.x < 1})
    ys = sorted({p.y for p in pts if 0 < p.y < 1})
    p_, q_ = len(xs), len(ys)
    col = {x: k + 1 for k, x in enumerate(xs)}
    col.update({Fraction(0): 0, Fraction(1): p_ + 1})
    row = {y: k + 1 for k, y in enumerate(ys)}
    row.update({Fraction(0): 0, Fraction(1): q_ + 1})
    placed = {(col[p.x], row[p.y]): p.label.label for p in pts}
    return CellLocation(make_array(tc, p_, q_, placed), tuple(xs), tuple(ys))


def upsilon(loc: CellLocation, tc: TruncatedCompletion, sites: Iterable = ()) -> Configuration:
    ua = loc.ua
    if not is_nondegenerate(ua):
        raise DegenerateCell("upsilon is defined on non-degenerate arrays")
    if len(loc.us) != ua.p or len(loc.ut) != ua.q:
        raise InvalidConfiguration("coordinate lists do not match the bidegree")
    s = [Fraction(0), *map(_frac, loc.us), Fraction(1)]
    t = [Fraction(0), *map(_frac, loc.ut), Fraction(1)]
    for seq in (s, t):
        if any(b < a for a, b in zip(seq, seq[1:])):
            raise MonotonicityViolation("coordinates must be nondecreasing in [0,1]")
    i = 0
    while i < len(s) - 1:
        if s[i] == s[i + 1]:
            ua = face_h(ua, i)
            del s[i + 1]
        else:
            i += 1
    j = 0
    while j < len(t) - 1:
        if t[j] == t[j + 1]:
            ua = face_v(ua, j)
            del t[j + 1]
        else:
            j += 1
    pts = [Point(s[i], t[j], Fine(ua[i, j])) for i, j in ua.support]
    return Configuration(tuple(pts), tuple(sites), tc)


def collide(c: Configuration, us_targets, ut_targets, tc: TruncatedCompletion) -> Configuration:
    """
    Move the distinct interior x (resp. y) coordinates of ``c`` to the given
    targets, merging points whose coordinates come together.
    """
    loc = cell_of(c, tc)
    us = tuple(map(_frac, us_targets))
    ut = tuple(map(_frac, ut_targets))
    if len(us) != len(loc.us) or len(ut) != len(loc.ut):
        raise MonotonicityViolation(
            f"expected {len(loc.us)} x targets and {len(loc.ut)} y targets"
        )
    for seq in (us, ut):
        full = (Fraction(0),) + seq + (Fraction(1),)
        if any(b < a for a, b in zip(full, full[1:])):
            raise MonotonicityViolation("targets must be weakly increasing inside [0,1]")
    return upsilon(CellLocation(loc.ua, us, ut), tc, c.sites)


# group actions --------------------------------------------------------------


def _relabel_fine(label: HqClass, g: str, pair: PairSpec, tc: TruncatedCompletion) -> HqClass:
    return tc.of_word(tuple(pair.act(x, g) for x in label.word))


def conj_global(c: Configuration, g: str, pair: PairSpec) -> Configuration:
    G = pair.group
    pts = []
    for p in c.points:
        if p.fine:
            pts.append(Point(p.x, p.y, Fine(_relabel_fine(p.label.label, g, pair, c.tc))))
        else:
            pts.append(Point(p.x, p.y, Coarse(G.conj(p.label.label, g))))
    return c.replace_points(pts)


def _extreme(c: Configuration, leftmost: bool) -> int:
    if not c.points:
        raise NoBasePoint("empty configuration")
    xs = [p.x for p in c.points]
    target = min(xs) if leftmost else max(xs)
    idx = [k for k, x in enumerate(xs) if x == target]
    side = "left" if leftmost else "right"
    if len(idx) != 1:
        raise NoBasePoint(f"no unique {side}most point")
    if c.points[idx[0]].fine:
        raise NoBasePoint(f"the {side}most point is fine")
    return idx[0]


def _act(c: Configuration, g: str, pair: PairSpec, leftmost: bool) -> Configuration:
    k = _extreme(c, leftmost)
    G = pair.group
    pts = list(c.points)
    p = pts[k]
    h = p.label.label
    pts[k] = Point(p.x, p.y, Coarse(G.mul(g, h) if leftmost else G.mul(h, g)))
    return c.replace_points(pts)


def act_left(c: Configuration, g: str, pair: PairSpec) -> Configuration:
    return _act(c, g, pair, True)


def act_right(c: Configuration, g: str, pair: PairSpec) -> Configuration:
    return _act(c, g, pair, False)


# inert points ---------------------------------------------------------------


def is_reduced(c: Configuration) -> bool:
    return not any(p.fine and p.label.label.is_unit for p in c.points)


def reduce(c: Configuration) -> Configuration:
    return c.replace_points(p for p in c.points if not (p.fine and p.label.label.is_unit))


# neighbourhoods ---------------------------------------------------------------


@dataclass(frozen=True)
class Rect:
    """Open rectangle (x0, x1) x (y0, y1)."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise InvalidConfiguration(f"empty rectangle {self}")

    def contains(self, pos) -> bool:
        x, y = pos
        return self.x0 < x < self.x1 and self.y0 < y < self.y1

    def closure_contains(self, pos) -> bool:
        x, y = pos
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass(frozen=True)
class RectCovering:
    rects: tuple

    def strip_separated(self) -> bool:
        rs = sorted(self.rects, key=lambda r: r.x0)
        return all(a.x1 < b.x0 for a, b in zip(rs, rs[1:]))


def covering_from_list(items) -> RectCovering:
    try:
        return RectCovering(tuple(Rect(*r) for r in items))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedSpec(f"bad rectangle list: {exc}") from None


def _assign(cov: RectCovering, base: Configuration) -> list:
    """For each rectangle, its unique base point; raises if the covering is not adapted."""
    if not cov.strip_separated():
        raise CoveringNotStripSeparated("rectangle x-intervals have overlapping closures")
    out = []
    covered = set()
    for r in cov.rects:
        inside = [p for p in base.points if r.contains(p.pos)]
        if len(inside) != 1:
            raise CoveringNotAdapted(f"rectangle {r} contains {len(inside)} base points")
        p = inside[0]
        if p.pos in covered:
            raise CoveringNotAdapted(f"base point {p.pos} lies in two rectangles")
        covered.add(p.pos)
        sites = [s for s in base.sites if r.closure_contains(s)]
        if p.fine and sites:
            raise CoveringNotAdapted(f"rectangle {r} around a fine point meets a site")
        if not p.fine and sites != [p.pos]:
            raise CoveringNotAdapted(f"rectangle {r} around a coarse point meets another site")
        out.append((r, p))
    missing = [p.pos for p in base.points if p.pos not in covered]
    if missing:
        raise CoveringNotAdapted(f"base points {missing} are not covered")
    return out


def neighborhood_contains(base: Configuration, cov: RectCovering, cand: Configuration,
                          pair: Optional[PairSpec], tc: TruncatedCompletion) -> bool:
    blocks = _assign(cov, base)
    if cand.sites != base.sites:
        return False
    # (i) every candidate point lies in some rectangle
    if not all(any(r.contains(p.pos) for r, _ in blocks) for p in cand.points):
        return False
    for r, b in blocks:
        inside = [p for p in cand.points if r.contains(p.pos)]
        # (ii) every rectangle meets the candidate
        if not inside:
            return False
        if b.fine:
            # (iii) fine block: all fine, ordered product equals the base label
            if not all(p.fine for p in inside):
                return False
            try:
                if tc.prod(p.label.label for p in inside) != b.label.label:
                    return False
            except TruncationOverflow:
                return False
        else:
            # (iv) coarse block: the site keeps a coarse point, ordered G product matches
            if not any(p.pos == b.pos and not p.fine for p in inside):
                return False
            if pair is None:
                raise InvalidConfiguration("coarse points need a PMQ-group pair")
            G = pair.group
            acc = G.unit
            for p in inside:
                acc = G.mul(acc, pair.e_word(p.label.label.word) if p.fine else p.label.label)
            if acc != b.label.label:
                return False
    return True
