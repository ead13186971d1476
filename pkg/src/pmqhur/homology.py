"""
Chain complexes of array cells and their homology over Z, Q or a prime field.

The total complex of a cell set has one basis element per non-degenerate array,
graded by p+q, with differential

    d(x) = sum_i (-1)^i face_h(x, i) + (-1)^p sum_j (-1)^j face_v(x, j).

Relative mode drops the non-admissible cells (they span a subcomplex).  The
diagonal oracle computes the same homology from the diagonal simplicial set
instead and serves as an independent check.

Ranks over fields use sparse Gaussian elimination.  Over Z, unit pivots are
eliminated sparsely first and the remainder goes through a dense Smith normal
form on Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional

from .arrays import ArrayPQ, CellSet, face_h, face_v, is_nondegenerate
from .errors import ClosureViolation, SizeGuardExceeded

DIAGONAL_GUARD = 10_000


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z", "Q" or "F"
    p: int = 0

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.kind == "F" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __str__(self) -> str:
        return self.name


ZZ = Ring("Z")
QQ = Ring("Q")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def parse_ring(text: str) -> Ring:
    t = text.strip()
    if t in ("Z", "ZZ"):
        return ZZ
    if t in ("Q", "QQ"):
        return QQ
    if t[:1] in ("F", "f") and t[1:].isdigit() and _is_prime(int(t[1:])):
        return Ring("F", int(t[1:]))
    raise ValueError(f"unknown ring {text!r} (use Z, Q or Fp for a prime p)")


@dataclass
class ChainComplexData:
    ring: Ring
    basis: dict  # n -> list of cells
    boundary: dict  # n -> sparse matrix {(row, col): int}, rows index basis[n-1], cols basis[n]

    def degrees(self) -> list:
        return sorted(self.basis)

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def matrix(self, n: int) -> list:
        rows, cols = self.dim(n - 1), self.dim(n)
        m = [[0] * cols for _ in range(rows)]
        for (r, c), v in self.boundary.get(n, {}).items():
            m[r][c] = v
        return m

    def euler_cells(self) -> int:
        return sum((-1) ** n * len(b) for n, b in self.basis.items())


@dataclass
class HomologyResult:
    ring: Ring
    ranks: dict  # degree -> free rank
    torsion: dict = field(default_factory=dict)  # degree -> invariant factors > 1

    def nonzero(self) -> dict:
        out = {}
        for n in sorted(set(self.ranks) | set(self.torsion)):
            r, t = self.ranks.get(n, 0), self.torsion.get(n, [])
            if r or t:
                out[n] = (r, list(t))
        return out

    def concentrated_degree(self) -> Optional[int]:
        """The degree n if homology is R in degree n and zero elsewhere, else None."""
        nz = self.nonzero()
        if len(nz) == 1:
            n, (r, t) = next(iter(nz.items()))
            if r == 1 and not t:
                return n
        return None

    def euler(self) -> int:
        return sum((-1) ** n * r for n, r in self.ranks.items())

    def same_as(self, other: "HomologyResult") -> bool:
        return self.nonzero() == other.nonzero()

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.name,
            "degrees": [
                {"degree": n, "rank": r, "torsion": t} for n, (r, t) in self.nonzero().items()
            ],
        }

    def __str__(self) -> str:
        nz = self.nonzero()
        if not nz:
            return "0"
        R = self.ring.name
        parts = []
        for n, (r, t) in nz.items():
            terms = ([R if r == 1 else f"{R}^{r}"] if r else []) + [f"Z/{d}" for d in t]
            parts.append(f"H{n} = " + " + ".join(terms))
        return ", ".join(parts)


# sparse elimination ---------------------------------------------------------


def _field_ops(ring: Ring):
    if ring.kind == "Q":
        return (lambda v: Fraction(v)), (lambda a: 1 / a), (lambda a: a)
    p = ring.p
    return (lambda v: v % p), (lambda a: pow(a, -1, p)), (lambda a: a % p)


def _eliminate(rows: list, ring: Ring) -> tuple:
    """
    Sparse pivoting on rows (each a dict col -> value).  Returns (rank found,
    leftover rows) where leftover rows have no unit entries (over Z) or are empty
    (over a field).
    """
    if ring.is_field:
        conv, inv, norm = _field_ops(ring)
        rows = [{c: conv(v) for c, v in r.items() if conv(v) != 0} for r in rows]
    else:
        inv, norm = (lambda a: a), (lambda a: a)
        rows = [dict(r) for r in rows if r]
    rows = [r for r in rows if r]
    colidx: dict = {}
    for k, r in enumerate(rows):
        for c in r:
            colidx.setdefault(c, set()).add(k)
    alive = set(range(len(rows)))
    rank = 0
    while True:
        best = None
        for k in alive:
            for c, v in rows[k].items():
                if ring.is_field or v in (1, -1):
                    cost = (len(colidx[c]) - 1) * (len(rows[k]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, k, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, k, c = best
        prow = rows[k]
        pinv = inv(prow[c])
        for k2 in list(colidx[c]):
            if k2 == k:
                continue
            r2 = rows[k2]
            f = r2[c] * pinv
            for c2, v in prow.items():
                nv = norm(r2.get(c2, 0) - f * v)
                if nv == 0:
                    if c2 in r2:
                        del r2[c2]
                        colidx[c2].discard(k2)
                else:
                    if c2 not in r2:
                        colidx.setdefault(c2, set()).add(k2)
                    r2[c2] = nv
            if not r2:
                alive.discard(k2)
        for c2 in prow:
            colidx[c2].discard(k)
        alive.discard(k)
        rank += 1
    return rank, [rows[k] for k in sorted(alive) if rows[k]]


def smith_normal_form(M: list) -> tuple:
    """Invariant factors (d1 | d2 | ...) of an integer matrix and its rank."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv and piv[0] == 1:
                break
        if piv is None:
            break
        _, i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t onto the diagonal
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # normalize to a divisibility chain: diag(a, b) ~ diag(gcd, lcm)
    diag.sort()
    changed = True
    while changed:
        changed = False
        for x in range(len(diag)):
            for y in range(x + 1, len(diag)):
                a, b = diag[x], diag[y]
                g = gcd(a, b)
                if b % a:
                    diag[x], diag[y] = g, a // g * b
                    changed = True
        diag.sort()
    return diag, len(diag)


def _sparse_rows(mat: dict, nrows: int) -> list:
    rows = [dict() for _ in range(nrows)]
    for (r, c), v in mat.items():
        if v:
            rows[r][c] = v
    return rows


def matrix_invariants(mat: dict, nrows: int, ring: Ring) -> tuple:
    """(rank, invariant factors > 1) of a sparse boundary matrix over ``ring``."""
    rows = _sparse_rows(mat, nrows)
    rank, rest = _eliminate(rows, ring)
    if ring.is_field or not rest:
        return rank, []
    cols = sorted({c for r in rest for c in r})
    pos = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][pos[c]] = v
    diag, r2 = smith_normal_form(dense)
    return rank + r2, [d for d in diag if d > 1]


def homology(cx: ChainComplexData) -> HomologyResult:
    ranks, torsion = {}, {}
    inv = {}
    for n in cx.degrees():
        inv[n] = matrix_invariants(cx.boundary.get(n, {}), cx.dim(n - 1), cx.ring)
    for n in cx.degrees():
        r_out = inv[n][0]
        r_in, tors = inv.get(n + 1, (0, []))
        ranks[n] = cx.dim(n) - r_out - r_in
        if tors:
            torsion[n] = tors
    return HomologyResult(cx.ring, ranks, torsion)


# total complex ----------------------------------------------------------------


def _differential(cells, keep, index, boundary_terms, ring: Ring):
    basis: dict = {}
    for ua in cells:
        if keep(ua):
            basis.setdefault(ua.p + ua.q, []).append(ua)
    pos = {ua: k for n, b in basis.items() for k, ua in enumerate(b)}
    bd: dict = {}
    for n, b in basis.items():
        mat: dict = {}
        for col, ua in enumerate(b):
            for sign, f in boundary_terms(ua):
                if f is None:
                    continue
                if f not in index:
                    raise ClosureViolation(f"face of\n{ua.render()}\nnot in the cell set:\n{f.render()}")
                if not keep(f):
                    continue
                key = (pos[f], col)
                mat[key] = mat.get(key, 0) + sign
        mat = {k: v for k, v in mat.items() if v}
        if ring.kind == "F":
            mat = {k: v % ring.p for k, v in mat.items() if v % ring.p}
        bd[n] = mat
    for n in list(basis):
        basis.setdefault(n - 1, [])
    return ChainComplexData(ring, {n: basis[n] for n in sorted(basis)}, bd)


def build_total_complex(cells: CellSet, relative: bool, ring: Ring = ZZ) -> ChainComplexData:
    def keep(ua):
        return cells.admissible[ua] or not relative

    def terms(ua: ArrayPQ):
        out = []
        if ua.p:
            for i in range(ua.p + 1):
                f = face_h(ua, i)
                out.append(((-1) ** i, f if is_nondegenerate(f) else None))
        if ua.q:
            for j in range(ua.q + 1):
                f = face_v(ua, j)
                out.append(((-1) ** (ua.p + j), f if is_nondegenerate(f) else None))
        return out

    return _differential(list(cells), keep, cells.admissible, terms, ring)


def total_homology(cells: CellSet, relative: bool, ring: Ring = ZZ) -> HomologyResult:
    return homology(build_total_complex(cells, relative, ring))


# diagonal oracle ----------------------------------------------------------------


def _diag_degenerate(ua: ArrayPQ) -> bool:
    supp = ua.support
    cols = {i for i, _ in supp}
    rows = {j for _, j in supp}
    return any(k not in cols and k not in rows for k in range(1, ua.p + 1))


def _spread(ua: ArrayPQ, n: int, col_slots: tuple, row_slots: tuple) -> ArrayPQ:
    """Place the interior columns/rows of ``ua`` at the given interior indices of an (n,n) array."""
    u = ua.tc.unit
    cmap = {0: 0, n + 1: ua.p + 1}
    cmap.update({s: k + 1 for k, s in enumerate(col_slots)})
    rmap = {0: 0, n + 1: ua.q + 1}
    rmap.update({s: k + 1 for k, s in enumerate(row_slots)})
    cols = []
    for i in range(n + 2):
        if i in cmap:
            src = ua.entries[cmap[i]]
            cols.append(tuple(src[rmap[j]] if j in rmap else u for j in range(n + 2)))
        else:
            cols.append((u,) * (n + 2))
    return ArrayPQ(n, n, tuple(cols), ua.tc)


def diagonal_simplices(cells: CellSet, guard: int = DIAGONAL_GUARD) -> list:
    """Non-degenerate simplices of the diagonal, as (n,n) arrays, paired with their source cell."""
    out = []
    for ua in cells:
        p, q = ua.p, ua.q
        for n in range(max(p, q), p + q + 1):
            for cs in combinations(range(1, n + 1), p):
                for rs in combinations(range(1, n + 1), q):
                    empty_c = set(range(1, n + 1)) - set(cs)
                    empty_r = set(range(1, n + 1)) - set(rs)
                    if empty_c & empty_r:
                        continue
                    out.append((_spread(ua, n, cs, rs), ua))
                    if len(out) > guard:
                        raise SizeGuardExceeded(
                            f"diagonal has more than {guard} non-degenerate simplices"
                        )
    return out


def build_diagonal_complex(cells: CellSet, relative: bool, ring: Ring = ZZ,
                           guard: int = DIAGONAL_GUARD) -> ChainComplexData:
    simplices = diagonal_simplices(cells, guard)
    adm = {x: cells.admissible[src] for x, src in simplices}

    def keep(x):
        return adm[x] or not relative

    def terms(x: ArrayPQ):
        # (n,n) arrays sit in degree 2n in _differential's grading; regrade below
        if x.p == 0:
            return []
        out = []
        for k in range(x.p + 1):
            f = face_h(face_v(x, k), k)
            out.append(((-1) ** k, None if _diag_degenerate(f) else f))
        return out

    cx = _differential([x for x, _ in simplices], keep, adm, terms, ring)
    # _differential grades by p+q = 2n; the diagonal degree is n
    basis = {n // 2: b for n, b in cx.basis.items() if n % 2 == 0}
    boundary = {n // 2: m for n, m in cx.boundary.items() if n % 2 == 0}
    return ChainComplexData(ring, basis, boundary)


def diagonal_oracle(cells: CellSet, relative: bool, ring: Ring = ZZ,
                    guard: int = DIAGONAL_GUARD) -> HomologyResult:
    return homology(build_diagonal_complex(cells, relative, ring, guard))
