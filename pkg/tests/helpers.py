"""Independent oracles and random generators shared by the test modules."""

import itertools
import random
from collections import deque
from fractions import Fraction
from fractions import Fraction as F

from pmqhur.arrays import make_array
from pmqhur.config import Coarse, Configuration, Fine, Point
from pmqhur.pmq import norms_of


def orbit_oracle(spec, bound):
    """Connected components of the move graph by breadth-first search from every word."""
    h = norms_of(spec)
    letters = spec.nonunit
    words = set()
    for n in range(bound + 1):
        for w in itertools.product(letters, repeat=n):
            if sum(h[x] for x in w) <= bound:
                words.add(w)

    def moves(w):
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            yield w[:k] + (b, spec.cj(a, b)) + w[k + 2:]
            # inverse braid: (a, b) came from (c, a) when c^a = b
            for c in letters:
                if spec.cj(c, a) == b:
                    yield w[:k] + (c, a) + w[k + 2:]
            ab = spec.mul(a, b)
            if ab is not None:
                yield w[:k] + (ab,) + w[k + 2:]
        for k, x in enumerate(w):
            for a, b in itertools.product(letters, repeat=2):
                if spec.mul(a, b) == x:
                    yield w[:k] + (a, b) + w[k + 1:]

    seen, comps, escaped = {}, [], set()
    for w in sorted(words):
        if w in seen:
            continue
        comp = [w]
        seen[w] = len(comps)
        queue = deque([w])
        bad = False
        while queue:
            u = queue.popleft()
            for v in moves(u):
                if v not in words:
                    bad = True
                    continue
                if v not in seen:
                    seen[v] = len(comps)
                    comp.append(v)
                    queue.append(v)
        comps.append(comp)
        if bad:
            escaped.add(len(comps) - 1)
    return [sorted(c) for k, c in enumerate(comps) if k not in escaped]


def free1_cell_oracle(n):
    """Non-degenerate FREE1 arrays with total a^n, by assigning exponents to every grid position."""
    counts = {}
    for p in range(n + 1):
        for q in range(n + 1):
            grid = [(i, j) for i in range(p + 2) for j in range(q + 2)]

            def rec(k, left, used):
                if k == len(grid):
                    if left == 0:
                        cols = {i for i, _ in used}
                        rows = {j for _, j in used}
                        if all(i in cols for i in range(1, p + 1)) and all(j in rows for j in range(1, q + 1)):
                            counts[(p, q)] = counts.get((p, q), 0) + 1
                    return
                for e in range(left + 1):
                    rec(k + 1, left - e, used + [grid[k]] if e else used)

            rec(0, n, [])
    return counts


def random_array(rng: random.Random, tc, max_pq=3):
    """Array of random bidegree whose entries have total norm <= tc.bound."""
    p, q = rng.randint(0, max_pq), rng.randint(0, max_pq)
    letters = [c for c in tc.classes if c.norm == 1]
    budget = tc.bound
    placed = {}
    for _ in range(rng.randint(0, budget)):
        pos = (rng.randint(0, p + 1), rng.randint(0, q + 1))
        if pos in placed:
            continue
        x = rng.choice(letters)
        if x.norm > budget:
            break
        # occasionally a longer word from the completion
        if budget >= 2 and rng.random() < 0.2:
            x = tc.prod([x, rng.choice(letters)])
        placed[pos] = x
        budget -= x.norm
    return make_array(tc, p, q, placed)


def rand_coord(rng, boundary=0.1, denom=8):
    r = rng.random()
    if r < boundary / 2:
        return Fraction(0)
    if r < boundary:
        return Fraction(1)
    return Fraction(rng.randint(1, denom - 1), denom)


def random_fine_config(rng, tc, n_max=4):
    letters = [c for c in tc.classes if not c.is_unit and c.norm <= 1]
    pts = {}
    budget = tc.bound
    for _ in range(rng.randint(0, n_max)):
        if budget == 0:
            break
        pos = (rand_coord(rng, denom=6), rand_coord(rng, denom=6))
        lab = rng.choice(letters)
        pts[pos] = Point(pos[0], pos[1], Fine(lab))
        budget -= 1
    return Configuration(tuple(pts.values()), (), tc)


def based_config(rng, tc, pair):
    """Coarse points at the unique leftmost and rightmost sites, fine points in between."""
    G = pair.group.elements
    sites = [(F(0), F(rng.randint(0, 4), 4)), (F(1), F(rng.randint(0, 4), 4))]
    pts = [Point(sites[0][0], sites[0][1], Coarse(rng.choice(G))),
           Point(sites[1][0], sites[1][1], Coarse(rng.choice(G)))]
    if rng.random() < 0.5:
        s = (F(rng.randint(1, 5), 6), F(rng.randint(0, 6), 6))
        sites.append(s)
        pts.append(Point(s[0], s[1], Coarse(rng.choice(G))))
    letters = [c for c in tc.classes if c.norm == 1]
    taken = {p.pos for p in pts}
    for _ in range(rng.randint(0, 3)):
        pos = (F(rng.randint(1, 5), 6), F(rng.randint(0, 6), 6))
        if pos not in taken:
            taken.add(pos)
            pts.append(Point(pos[0], pos[1], Fine(rng.choice(letters))))
    return Configuration(tuple(pts), tuple(sites), tc)
