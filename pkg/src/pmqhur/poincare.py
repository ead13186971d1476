"""
Poincare verdicts for a locally finite PMQ.

For each non-unit a in Q the component of the array complex with total
product a is enumerated, and its homology relative to the non-admissible part
is computed.  The PMQ passes over R when every such group is R in degree
2h(a) and zero elsewhere.  Connectivity is read off the absolute H0.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .arrays import enumerate_cells
from .completion import complete
from .homology import Ring, ZZ, total_homology
from .pmq import PmqSpec, norms_of, sub_pmq_norm_le


def intrinsic_norm_check(spec: PmqSpec) -> tuple:
    """(True, None) if h(ab) = h(a) + h(b) for every defined product, else (False, (a, b, ab))."""
    h = norms_of(spec)
    for a in spec.elements:
        for b in spec.elements:
            ab = spec.mul(a, b)
            if ab is not None and h[ab] != h[a] + h[b]:
                return False, (a, b, ab)
    return True, None


@dataclass
class ElementVerdict:
    element: str
    norm: int
    relative: dict  # HomologyResult.to_dict()
    concentrated: Optional[int]
    passes: bool
    connected: bool
    cells: int

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "norm": self.norm,
            "concentrated_degree": self.concentrated,
            "passes": self.passes,
            "connected": self.connected,
            "cells": self.cells,
            "relative_homology": self.relative,
        }


@dataclass
class PoincareReport:
    ring: Ring
    verdicts: list
    norm_is_intrinsic: bool
    witness: Optional[tuple] = None
    overall: bool = field(init=False)

    def __post_init__(self):
        self.overall = self.norm_is_intrinsic and all(v.passes for v in self.verdicts)

    @property
    def connectivity(self) -> dict:
        return {v.element: v.connected for v in self.verdicts}

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.name,
            "norm_is_intrinsic": self.norm_is_intrinsic,
            "witness": list(self.witness) if self.witness else None,
            "elements": [v.to_dict() for v in self.verdicts],
            "overall": self.overall,
        }


def element_verdict(spec: PmqSpec, a: str, ring: Ring = ZZ) -> ElementVerdict:
    h = norms_of(spec)[a]
    tc = complete(spec, h)
    cells = enumerate_cells(spec, tc, tc.letter(a))
    rel = total_homology(cells, True, ring)
    absolute = total_homology(cells, False, ring)
    deg = rel.concentrated_degree()
    return ElementVerdict(
        element=a,
        norm=h,
        relative=rel.to_dict(),
        concentrated=deg,
        passes=deg == 2 * h,
        connected=absolute.ranks.get(0, 0) == 1 and not absolute.torsion.get(0),
        cells=len(cells),
    )


def _job(args):
    return element_verdict(*args)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PMQHUR_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_nonunit(spec: PmqSpec) -> list:
    # element order in the presentation must not matter
    return sorted(spec.nonunit)


def poincare_report(spec: PmqSpec, ring: Ring = ZZ, workers: Optional[int] = None) -> PoincareReport:
    norms_of(spec)  # NormUnavailable for non locally finite inputs
    ok, witness = intrinsic_norm_check(spec)
    elements = _ordered_nonunit(spec)
    workers = _workers() if workers is None else workers
    jobs = [(spec, a, ring) for a in elements]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            verdicts = list(ex.map(_job, jobs))
    else:
        verdicts = [_job(j) for j in jobs]
    return PoincareReport(ring, verdicts, ok, witness)


@dataclass
class CoconnectivityRow:
    element: str
    norm: int
    rank_sub: int
    rank_full: int

    @property
    def equal(self) -> bool:
        return self.rank_sub == self.rank_full

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "norm": self.norm,
            "rank_sub": self.rank_sub,
            "rank_full": self.rank_full,
            "equal": self.equal,
        }


def _top_rank_full(spec: PmqSpec, a: str, h: int, ring: Ring) -> int:
    tc = complete(spec, h)
    cells = enumerate_cells(spec, tc, tc.letter(a))
    return total_homology(cells, True, ring).ranks.get(2 * h, 0)


def _top_rank_sub(spec: PmqSpec, sub: PmqSpec, a: str, h: int, ring: Ring) -> int:
    """
    Sum of the top-degree relative ranks over the completion classes of Q<=1 of
    norm h that map to a under the inclusion into the completion of Q.
    """
    tc_sub = complete(sub, h)
    tc = complete(spec, h)
    target = tc.letter(a)
    total = 0
    for cls in tc_sub.classes:
        if cls.norm != h or cls.is_unit:
            continue
        if tc.of_word(cls.word) != target:
            continue
        cells = enumerate_cells(sub, tc_sub, cls)
        total += total_homology(cells, True, ring).ranks.get(2 * h, 0)
    return total


def coconnectivity_probe(spec: PmqSpec, ring: Ring = ZZ) -> list:
    h = norms_of(spec)
    sub = sub_pmq_norm_le(spec, 1)
    rows = []
    for a in _ordered_nonunit(spec):
        rows.append(
            CoconnectivityRow(a, h[a], _top_rank_sub(spec, sub, a, h[a], ring),
                              _top_rank_full(spec, a, h[a], ring))
        )
    return rows

