"""
Finite partially multiplicative quandles (PMQs), finite groups and PMQ-group pairs.

Elements are opaque string symbols and every operation is a table lookup.  A PMQ
carries a partial product ``a*b`` (absent entries are undefined) and a total
right conjugation ``a^b``.  Validation reports each failed axiom separately,
together with a witness tuple, so that a stricter axiom set can be layered on
top without touching the callers.

JSON layout (keys are part of the public format)::

    {"elements": ["1", "a"], "unit": "1",
     "product": {"1|1": "1", "1|a": "a", "a|1": "a"},
     "conj":    {"1|1": "1", "1|a": "1", "a|1": "a", "a|a": "a"}}

Groups use ``mul`` (total) and ``inv`` instead; pairs bundle ``pmq``, ``group``,
``e`` (element -> group element) and ``r`` (group element -> permutation of the
PMQ, given as a mapping).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .errors import MalformedSpec, NormUnavailable

Table = Mapping[tuple, str]


def _split_key(key: str) -> tuple[str, str]:
    parts = key.split("|")
    if len(parts) != 2:
        raise MalformedSpec(f"table key {key!r} is not of the form 'a|b'")
    return parts[0], parts[1]


def _pair_table(raw: Mapping[str, str], where: str) -> dict[tuple[str, str], str]:
    if not isinstance(raw, Mapping):
        raise MalformedSpec(f"{where}: expected an object")
    return {_split_key(k): v for k, v in raw.items()}


def _dump_pair_table(table: Mapping[tuple[str, str], str]) -> dict[str, str]:
    return {f"{a}|{b}": c for (a, b), c in table.items()}


@dataclass(frozen=True)
class Violation:
    """One failed axiom.  ``witness`` is the tuple of elements exhibiting the failure."""

    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.axiom}: witness {', '.join(map(str, self.witness))}"


# --------------------------------------------------------------------------- PMQ


@dataclass(frozen=True, eq=False)
class PmqSpec:
    elements: tuple[str, ...]
    unit: str
    product: Mapping[tuple[str, str], str]
    conj: Mapping[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "product", dict(self.product))
        object.__setattr__(self, "conj", dict(self.conj))
        object.__setattr__(self, "_index", {x: n for n, x in enumerate(self.elements)})

    def __eq__(self, other):
        if not isinstance(other, PmqSpec):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.unit == other.unit
            and self.product == other.product
            and self.conj == other.conj
        )

    __hash__ = None

    @property
    def nonunit(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if x != self.unit)

    def index(self, x: str) -> int:
        return self._index[x]

    def mul(self, a: str, b: str) -> Optional[str]:
        return self.product.get((a, b))

    def cj(self, a: str, b: str) -> str:
        return self.conj[(a, b)]

    @classmethod
    def from_dict(cls, d: Mapping) -> "PmqSpec":
        try:
            spec = cls(
                elements=tuple(d["elements"]),
                unit=d["unit"],
                product=_pair_table(d.get("product", {}), "product"),
                conj=_pair_table(d["conj"], "conj"),
            )
        except KeyError as exc:
            raise MalformedSpec(f"missing key {exc.args[0]!r}") from None
        check_pmq_structure(spec)
        return spec

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "unit": self.unit,
            "product": _dump_pair_table(self.product),
            "conj": _dump_pair_table(self.conj),
        }

    @classmethod
    def load(cls, path) -> "PmqSpec":
        return cls.from_dict(_read_json(path))


def _read_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def check_pmq_structure(spec: PmqSpec) -> None:
    """Raise MalformedSpec unless every table entry is an element and conj is total."""
    elems = set(spec.elements)
    if len(elems) != len(spec.elements):
        raise MalformedSpec("duplicate symbols in element list")
    if spec.unit not in elems:
        raise MalformedSpec(f"unit {spec.unit!r} is not an element")
    for name, table in (("product", spec.product), ("conj", spec.conj)):
        for (a, b), c in table.items():
            if a not in elems or b not in elems or c not in elems:
                raise MalformedSpec(f"{name} entry {a}|{b} -> {c} uses an unknown symbol")
    for a, b in itertools.product(spec.elements, repeat=2):
        if (a, b) not in spec.conj:
            raise MalformedSpec(f"conj entry {a}|{b} is missing (conj must be total)")


def validate_pmq(spec: PmqSpec) -> list[Violation]:
    """Exhaustively check the adopted PMQ axioms; an empty list means valid.

    Structural problems (unknown symbols, partial conj) raise MalformedSpec instead.
    """
    check_pmq_structure(spec)
    E = spec.elements
    one = spec.unit
    mul, cj = spec.mul, spec.cj
    out: list[Violation] = []

    def bad(axiom, *w):
        out.append(Violation(axiom, tuple(w)))

    for a in E:
        if mul(one, a) != a:
            bad("1·a = a", a)
        if mul(a, one) != a:
            bad("a·1 = a", a)
        if cj(a, one) != a:
            bad("a^1 = a", a)
        if cj(one, a) != one:
            bad("1^a = 1", a)
        if cj(a, a) != a:
            bad("a^a = a", a)
    for b in E:
        image = {cj(x, b) for x in E}
        if len(image) != len(E):
            bad("x -> x^b bijective", b)
    for a, b, c in itertools.product(E, repeat=3):
        if cj(cj(a, b), c) != cj(cj(a, c), cj(b, c)):
            bad("(a^b)^c = (a^c)^(b^c)", a, b, c)
        ab, bc = mul(a, b), mul(b, c)
        left = mul(ab, c) if ab is not None else None
        right = mul(a, bc) if bc is not None else None
        if left is not None and (right is None or right != left):
            bad("(ab)c = a(bc)", a, b, c)
        elif right is not None and left is None:
            bad("(ab)c = a(bc)", a, b, c)
        acbc = mul(cj(a, c), cj(b, c))
        if (ab is None) != (acbc is None) or (ab is not None and cj(ab, c) != acbc):
            bad("(ab)^c = a^c b^c", a, b, c)
        if bc is not None and cj(a, bc) != cj(cj(a, b), c):
            bad("a^(bc) = (a^b)^c", a, b, c)
    for a, b in itertools.product(E, repeat=2):
        ab = mul(a, b)
        braided = mul(b, cj(a, b))
        if ab != braided:
            bad("ab = b(a^b)", a, b)
    return out


def pmq_product(spec: PmqSpec, a: str, b: str) -> Optional[str]:
    """Table lookup of a*b; None when undefined."""
    return spec.mul(a, b)


def pmq_conj(spec: PmqSpec, a: str, b: str) -> str:
    return spec.cj(a, b)


# --------------------------------------------------------------------------- classification


@dataclass(frozen=True)
class ClassificationReport:
    augmented: bool
    complete: bool
    locally_finite: bool
    norms: Optional[dict]
    # a cycle in the factorization graph, present iff not locally finite
    cycle: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {
            "augmented": self.augmented,
            "complete": self.complete,
            "locally_finite": self.locally_finite,
            "norms": self.norms,
            "cycle": list(self.cycle) if self.cycle is not None else None,
        }


def _factorizations(spec: PmqSpec, support: set) -> dict:
    """x -> list of (y, z) with y*z = x and y, z in ``support``."""
    out: dict = {x: [] for x in spec.elements}
    for (y, z), x in spec.product.items():
        if y in support and z in support:
            out[x].append((y, z))
    return out


def _find_cycle(nodes: Sequence, succ: Mapping) -> Optional[tuple]:
    for v in nodes:
        if v in succ[v]:
            return (v, v)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in nodes}
    for root in nodes:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            for w in it:
                if colour[w] == GREY:
                    return tuple(path[path.index(w):]) + (w,)
                if colour[w] == WHITE:
                    colour[w] = GREY
                    path.append(w)
                    stack.append((w, iter(succ[w])))
                    break
            else:
                colour[v] = BLACK
                path.pop()
                stack.pop()
    return None


def classify(spec: PmqSpec) -> ClassificationReport:
    """Augmented / complete / locally finite, plus the maximal decomposition lengths.

    The set of elements admitting a non-empty Q+-decomposition is Q+ together with
    the unit when 1 = y*z for such y, z.  Edges x -> y, x -> z for every
    factorization x = y*z inside that set; a cycle means decomposition lengths
    are unbounded, otherwise the lengths follow by dynamic programming.
    """
    one = spec.unit
    complete = all((a, b) in spec.product for a, b in itertools.product(spec.elements, repeat=2))
    augmented = not any(c == one and (a, b) != (one, one) for (a, b), c in spec.product.items())

    support = set(spec.nonunit)
    if any(c == one and a in support and b in support for (a, b), c in spec.product.items()):
        support.add(one)
    facts = _factorizations(spec, support)
    nodes = [x for x in spec.elements if x in support and x != one] + [x for x in (one,) if x in support]
    succ = {x: [w for yz in facts[x] for w in yz] for x in nodes}
    cycle = _find_cycle(nodes, succ)
    if cycle is not None:
        return ClassificationReport(augmented, complete, False, None, cycle)

    norms: dict = {}

    def length(x):
        if x not in norms:
            best = 1 if x != one else 0
            for y, z in facts[x]:
                best = max(best, length(y) + length(z))
            norms[x] = best
        return norms[x]

    for x in spec.elements:
        length(x)
    norms[one] = 0
    return ClassificationReport(augmented, complete, True, {x: norms[x] for x in spec.elements}, None)


def norms_of(spec: PmqSpec) -> dict:
    rep = classify(spec)
    if not rep.locally_finite:
        raise NormUnavailable(f"PMQ is not locally finite (cycle {' -> '.join(rep.cycle)})")
    return rep.norms


def sub_pmq_norm_le(spec: PmqSpec, k: int) -> PmqSpec:
    """Restriction to the elements of norm <= k; products landing outside become undefined."""
    h = norms_of(spec)
    keep = [x for x in spec.elements if h[x] <= k]
    kept = set(keep)
    product = {ab: c for ab, c in spec.product.items() if ab[0] in kept and ab[1] in kept and c in kept}
    conj = {}
    for a, b in itertools.product(keep, repeat=2):
        c = spec.cj(a, b)
        # conjugation preserves norms, so the subset is closed under it
        assert c in kept, (a, b, c)
        conj[(a, b)] = c
    return PmqSpec(tuple(keep), spec.unit, product, conj)


# --------------------------------------------------------------------------- groups


@dataclass(frozen=True, eq=False)
class GroupSpec:
    elements: tuple[str, ...]
    unit: str
    mul_table: Mapping[tuple[str, str], str]
    inv_table: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "mul_table", dict(self.mul_table))
        object.__setattr__(self, "inv_table", dict(self.inv_table))

    def mul(self, g: str, h: str) -> str:
        return self.mul_table[(g, h)]

    def inv(self, g: str) -> str:
        return self.inv_table[g]

    def prod(self, items: Iterable[str]) -> str:
        acc = self.unit
        for g in items:
            acc = self.mul(acc, g)
        return acc

    def conj(self, h: str, g: str) -> str:
        """h^g = g^-1 h g."""
        return self.mul(self.mul(self.inv(g), h), g)

    @classmethod
    def from_dict(cls, d: Mapping) -> "GroupSpec":
        try:
            g = cls(tuple(d["elements"]), d["unit"], _pair_table(d["mul"], "mul"), dict(d["inv"]))
        except KeyError as exc:
            raise MalformedSpec(f"missing key {exc.args[0]!r}") from None
        check_group_structure(g)
        return g

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "unit": self.unit,
            "mul": _dump_pair_table(self.mul_table),
            "inv": dict(self.inv_table),
        }


def check_group_structure(g: GroupSpec) -> None:
    elems = set(g.elements)
    if g.unit not in elems:
        raise MalformedSpec(f"group unit {g.unit!r} is not an element")
    for a, b in itertools.product(g.elements, repeat=2):
        c = g.mul_table.get((a, b))
        if c is None:
            raise MalformedSpec(f"mul entry {a}|{b} is missing (group product must be total)")
        if c not in elems:
            raise MalformedSpec(f"mul entry {a}|{b} -> {c} uses an unknown symbol")
    for a in g.elements:
        if g.inv_table.get(a) not in elems:
            raise MalformedSpec(f"inv entry for {a!r} is missing or unknown")


def validate_group(g: GroupSpec) -> list[Violation]:
    check_group_structure(g)
    out = []
    E = g.elements
    for a in E:
        if g.mul(g.unit, a) != a or g.mul(a, g.unit) != a:
            out.append(Violation("group unit", (a,)))
        if g.mul(a, g.inv(a)) != g.unit or g.mul(g.inv(a), a) != g.unit:
            out.append(Violation("group inverse", (a,)))
    for a, b, c in itertools.product(E, repeat=3):
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
            out.append(Violation("group associativity", (a, b, c)))
    return out


# --------------------------------------------------------------------------- pairs


@dataclass(frozen=True, eq=False)
class PairSpec:
    pmq: PmqSpec
    group: GroupSpec
    e: Mapping[str, str]
    r: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "e", dict(self.e))
        object.__setattr__(self, "r", {g: dict(perm) for g, perm in self.r.items()})

    def act(self, a: str, g: str) -> str:
        """Right action a . g of the group on the PMQ."""
        return self.r[g][a]

    def e_word(self, word: Iterable[str]) -> str:
        return self.group.prod(self.e[x] for x in word)

    @classmethod
    def from_dict(cls, d: Mapping, base: Optional[Path] = None) -> "PairSpec":
        def part(key, loader):
            raw = d.get(key)
            if raw is None:
                raise MalformedSpec(f"missing key {key!r}")
            if isinstance(raw, str):
                path = Path(raw) if base is None else base / raw
                raw = _read_json(path)
            return loader(raw)

        pair = cls(
            part("pmq", PmqSpec.from_dict),
            part("group", GroupSpec.from_dict),
            dict(d.get("e", {})),
            dict(d.get("r", {})),
        )
        check_pair_structure(pair)
        return pair

    def to_dict(self) -> dict:
        return {
            "pmq": self.pmq.to_dict(),
            "group": self.group.to_dict(),
            "e": dict(self.e),
            "r": {g: dict(p) for g, p in self.r.items()},
        }

    @classmethod
    def load(cls, path) -> "PairSpec":
        path = Path(path)
        return cls.from_dict(_read_json(path), base=path.parent)


def check_pair_structure(pair: PairSpec) -> None:
    Q, G = pair.pmq, pair.group
    gset, qset = set(G.elements), set(Q.elements)
    for a in Q.elements:
        if pair.e.get(a) not in gset:
            raise MalformedSpec(f"e is missing or invalid at {a!r}")
    for g in G.elements:
        perm = pair.r.get(g)
        if perm is None:
            raise MalformedSpec(f"r is missing group element {g!r}")
        for a in Q.elements:
            if perm.get(a) not in qset:
                raise MalformedSpec(f"r({g}) is missing or invalid at {a!r}")


def validate_pair(pair: PairSpec) -> list[Violation]:
    """Axioms of both components followed by the compatibility conditions of the pair."""
    check_pair_structure(pair)
    Q, G = pair.pmq, pair.group
    out = validate_pmq(Q) + validate_group(G)
    e, act = pair.e, pair.act

    def bad(axiom, *w):
        out.append(Violation(axiom, tuple(w)))

    if e[Q.unit] != G.unit:
        bad("e(1) = 1", Q.unit)
    for a, b in itertools.product(Q.elements, repeat=2):
        ab = Q.mul(a, b)
        if ab is not None and e[ab] != G.mul(e[a], e[b]):
            bad("e(ab) = e(a)e(b)", a, b)
        if e[Q.cj(a, b)] != G.conj(e[a], e[b]):
            bad("e(a^b) = e(b)^-1 e(a) e(b)", a, b)
    for a in Q.elements:
        if act(a, G.unit) != a:
            bad("r(1) = id", a)
    for g in G.elements:
        if len({act(a, g) for a in Q.elements}) != len(Q.elements):
            bad("r(g) bijective", g)
        if act(Q.unit, g) != Q.unit:
            bad("r(g) fixes 1", g)
        for a in Q.elements:
            if e[act(a, g)] != G.conj(e[a], g):
                bad("e(a.g) = g^-1 e(a) g", a, g)
        for a, b in itertools.product(Q.elements, repeat=2):
            if act(Q.cj(a, b), g) != Q.cj(act(a, g), act(b, g)):
                bad("r(g) preserves conj", a, b, g)
            ab = Q.mul(a, b)
            image = Q.mul(act(a, g), act(b, g))
            if (ab is None) != (image is None) or (ab is not None and act(ab, g) != image):
                bad("r(g) preserves product", a, b, g)
    for g, h in itertools.product(G.elements, repeat=2):
        gh = G.mul(g, h)
        for a in Q.elements:
            if act(a, gh) != act(act(a, g), h):
                bad("r(gh) = r(h) r(g)", a, g, h)
    for a, b in itertools.product(Q.elements, repeat=2):
        if act(a, e[b]) != Q.cj(a, b):
            bad("r(e(b)) = (-)^b", a, b)
    return out
