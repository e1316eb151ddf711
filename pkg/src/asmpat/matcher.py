"""Pattern containment in {-1, 0, 1} matrices.

Two search engines are used:

* row backtracking: pattern rows are mapped to increasing host rows, and
  each pattern column receives its host column at the first pattern row
  where it is nonzero, inside a window that leaves room for the pattern
  columns still unplaced.  Permutation patterns get a specialised version
  over the host's 1-positions.  Used to decide CLASSICAL/ONES containment.
* column selection: for each choice of host columns the rows can be matched
  greedily.  Used for IDENTICAL containment and to extract the
  lexicographically least occurrence.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import Asm, ContainmentMode, PatternMatrix, Permutation, Rows, _as_rows

HostLike = Asm | PatternMatrix | Sequence[Sequence[int]]


class EmptyPatternError(ValueError):
    pass


@dataclass(frozen=True)
class Occurrence:
    """1-based row and column injections witnessing a containment."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    mode: ContainmentMode

    def __str__(self):
        return f"rows={','.join(map(str, self.rows))} cols={','.join(map(str, self.cols))}"

    def verify(self, host: HostLike, pattern: PatternMatrix) -> bool:
        """Re-check this witness entrywise."""
        rows = _host_rows(host)
        b = pattern.ones_only() if self.mode is ContainmentMode.ONES else pattern
        if len(self.rows) != b.m or len(self.cols) != b.q:
            return False
        for seq in (self.rows, self.cols):
            if any(x >= y for x, y in zip(seq, seq[1:])):
                return False
        if not (1 <= self.rows[0] and self.rows[-1] <= len(rows)):
            return False
        if not (1 <= self.cols[0] and self.cols[-1] <= len(rows[0])):
            return False
        for i, fi in enumerate(self.rows):
            for j, gj in enumerate(self.cols):
                want, got = b.entries[i][j], rows[fi - 1][gj - 1]
                if self.mode is ContainmentMode.IDENTICAL:
                    if want != got:
                        return False
                elif want != 0 and want != got:
                    return False
        return True


def _host_rows(host: HostLike) -> Rows:
    if isinstance(host, Asm):
        return host.rows
    if isinstance(host, PatternMatrix):
        return host.entries
    return _as_rows(host)


def host_planes(host: HostLike) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """``(pos, neg, width)`` bitplanes of any host matrix."""
    if isinstance(host, Asm):
        return host.pos, host.neg, host.n
    rows = _host_rows(host)
    pos = tuple(sum(1 << j for j, x in enumerate(r) if x == 1) for r in rows)
    neg = tuple(sum(1 << j for j, x in enumerate(r) if x == -1) for r in rows)
    return pos, neg, len(rows[0])


def _window(lo: int, hi: int) -> int:
    return ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)


# --- compiled patterns -------------------------------------------------------


class CompiledPattern:
    """A pattern prepared for repeated containment queries under one mode."""

    def __init__(self, pattern: PatternMatrix, mode: ContainmentMode | None = None):
        mode = mode or pattern.mode
        self.pattern = pattern
        self.mode = mode
        b = pattern.ones_only() if mode is ContainmentMode.ONES else pattern
        self.effective = b
        self.m, self.q = b.shape
        self.perm = b.as_permutation() if mode is not ContainmentMode.IDENTICAL else None
        self.size = self.m * self.q
        if self.perm is not None:
            self._plan = _perm_plan(self.perm)
        else:
            self._plan = _row_plan(b.entries)

    def contains(self, pos: Sequence[int], neg: Sequence[int], width: int) -> bool:
        if self.m > len(pos) or self.q > width:
            return False
        if self.mode is ContainmentMode.IDENTICAL:
            return _column_search(pos, neg, width, self.effective.entries, True, first=True) is not None
        if self.perm is not None:
            return _perm_search(pos, len(pos), width, self._plan)
        return _row_search(pos, neg, len(pos), width, self.m, self.q, self._plan)

    def occurrence(self, pos, neg, width) -> Occurrence | None:
        """Lexicographically least occurrence (by rows, then columns)."""
        if self.m > len(pos) or self.q > width:
            return None
        identical = self.mode is ContainmentMode.IDENTICAL
        found = _column_search(pos, neg, width, self.effective.entries, identical, first=False)
        if found is None:
            return None
        f, g = found
        return Occurrence(tuple(x + 1 for x in f), tuple(x + 1 for x in g), self.mode)


def _perm_plan(perm: Permutation) -> tuple:
    # Each step places value v = perm(i); L/R are the nearest values already
    # placed below/above v, with sentinels 0 and k+1 (1-based values).
    k = len(perm)
    placed = [0, k + 1]
    steps = []
    for v in perm.images:
        left = max(x for x in placed if x < v)
        right = min(x for x in placed if x > v)
        steps.append((v, left, right, v - left, right - v))
        placed.append(v)
    return k, tuple(steps)


def _perm_search(pos: Sequence[int], n_rows: int, width: int, plan) -> bool:
    k, steps = plan
    h = [0] * (k + 2)
    h[0] = -1
    h[k + 1] = width
    last = k - 1

    def rec(i: int, rmin: int) -> bool:
        v, left, right, dl, dr = steps[i]
        lo = h[left] + dl
        hi = h[right] - dr
        if lo > hi:
            return False
        wmask = ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)
        for r in range(rmin, n_rows - k + i + 1):
            cand = pos[r] & wmask
            if not cand:
                continue
            if i == last:
                return True
            while cand:
                low = cand & -cand
                h[v] = low.bit_length() - 1
                if rec(i + 1, r + 1):
                    return True
                cand ^= low
        return False

    return rec(0, 0)


def _row_plan(entries: Rows) -> tuple:
    # Per pattern row: checks on already-placed columns and placements of new
    # columns (with nearest placed neighbours), in increasing column order.
    q = len(entries[0])
    placed = {-1, q}
    plan = []
    for row in entries:
        ops = []
        for c, v in enumerate(row):
            if v == 0:
                continue
            if c in placed:
                ops.append((c, v, False, 0, 0))
            else:
                left = max(x for x in placed if x < c)
                right = min(x for x in placed if x > c)
                ops.append((c, v, True, left, right))
                placed.add(c)
        plan.append(tuple(ops))
    return tuple(plan)


def _row_search(pos, neg, n_rows: int, width: int, m: int, q: int, plan) -> bool:
    h = {-1: -1, q: width}

    def rec(i: int, rmin: int) -> bool:
        if i == m:
            return True
        ops = plan[i]
        if not ops:
            # an all-zero pattern row takes the first free host row
            return rmin <= n_rows - (m - i) and rec(i + 1, rmin + 1)
        for r in range(rmin, n_rows - (m - i) + 1):
            if ops_rec(ops, 0, r, i):
                return True
        return False

    def ops_rec(ops, j: int, r: int, i: int) -> bool:
        if j == len(ops):
            return rec(i + 1, r + 1)
        c, v, new, left, right = ops[j]
        plane = pos[r] if v == 1 else neg[r]
        if not new:
            return bool(plane >> h[c] & 1) and ops_rec(ops, j + 1, r, i)
        lo = h[left] + (c - left)
        hi = h[right] - (right - c)
        if lo > hi:
            return False
        cand = plane & _window(lo, hi)
        while cand:
            low = cand & -cand
            h[c] = low.bit_length() - 1
            if ops_rec(ops, j + 1, r, i):
                return True
            cand ^= low
        h.pop(c, None)
        return False

    return rec(0, 0)


@lru_cache(maxsize=4096)
def _column_tables(entries: Rows, width: int, identical: bool) -> tuple:
    """For each host column choice g: (g, per-row (care+, want+, care-, want-))."""
    q = len(entries[0])
    tables = []
    for g in itertools.combinations(range(width), q):
        full = sum(1 << x for x in g)
        reqs = []
        for row in entries:
            want_p = sum(1 << g[j] for j, v in enumerate(row) if v == 1)
            want_n = sum(1 << g[j] for j, v in enumerate(row) if v == -1)
            if identical:
                reqs.append((full, want_p, full, want_n))
            else:
                reqs.append((want_p, want_p, want_n, want_n))
        tables.append((g, tuple(reqs)))
    return tuple(tables)


def _column_search(pos, neg, width, entries: Rows, identical: bool, first: bool):
    """Column selection with greedy rows.

    Returns ``(f, g)`` 0-based: the first found if ``first``, otherwise the
    lexicographically least by ``f`` then ``g``.
    """
    n_rows = len(pos)
    m = len(entries)
    best = None
    for g, reqs in _column_tables(entries, width, identical):
        f = []
        r = 0
        for cp, wp, cn, wn in reqs:
            while r < n_rows and not ((pos[r] & cp) == wp and (neg[r] & cn) == wn):
                r += 1
            if r == n_rows:
                break
            f.append(r)
            r += 1
        if len(f) == m:
            cand = (tuple(f), g)
            if first:
                return cand
            if best is None or cand < best:
                best = cand
    return best


@lru_cache(maxsize=1024)
def compile_pattern(pattern: PatternMatrix, mode: ContainmentMode | None = None) -> CompiledPattern:
    return CompiledPattern(pattern, mode)


# --- public operations -------------------------------------------------------


def _check_pattern(pattern: PatternMatrix) -> None:
    if pattern.m == 0 or pattern.q == 0:
        raise EmptyPatternError("the empty pattern is not allowed")


def contains(host: HostLike, pattern: PatternMatrix, mode: ContainmentMode | None = None) -> Occurrence | None:
    """The least occurrence of ``pattern`` in ``host`` under ``mode``, or None.

    ``mode`` defaults to the pattern's own mode.
    """
    _check_pattern(pattern)
    cp = compile_pattern(pattern, mode)
    pos, neg, width = host_planes(host)
    if not cp.contains(pos, neg, width):
        return None
    occ = cp.occurrence(pos, neg, width)
    assert occ is not None, "search engines disagree"
    return occ


def is_contained(host: HostLike, pattern: PatternMatrix, mode: ContainmentMode | None = None) -> bool:
    _check_pattern(pattern)
    pos, neg, width = host_planes(host)
    return compile_pattern(pattern, mode).contains(pos, neg, width)


def avoids_all(host: HostLike, patterns: Iterable[PatternMatrix], mode: ContainmentMode | None = None) -> bool:
    """True iff ``host`` contains none of ``patterns``; smaller patterns are tried first."""
    pos, neg, width = host_planes(host)
    compiled = sorted((compile_pattern(p, mode) for p in patterns), key=lambda c: c.size)
    return not any(c.contains(pos, neg, width) for c in compiled)


def perm_contains_perm(sigma: Permutation, tau: Permutation) -> bool:
    """Classical permutation containment of ``tau`` in ``sigma``."""
    if len(tau) == 0:
        raise EmptyPatternError("the empty permutation is not a pattern")
    if len(tau) > len(sigma):
        return False
    m = sigma.matrix()
    return compile_pattern(tau.pattern()).contains(m.pos, m.neg, m.n)


# --- classification predicates ------------------------------------------------

EXCEPTIONAL = frozenset(
    Permutation.parse(s) for s in ("1", "12", "21", "132", "213", "231", "312", "2143", "2413", "3142", "3412")
)

_P123 = Permutation((1, 2, 3))
_P321 = Permutation((3, 2, 1))


def is_exceptional(sigma: Permutation) -> bool:
    """True iff ``sigma`` avoids both 123 and 321."""
    if len(sigma) < 1:
        raise ValueError("the empty permutation is excluded")
    return not perm_contains_perm(sigma, _P123) and not perm_contains_perm(sigma, _P321)


class GridVariant(enum.Enum):
    INC = "inc"
    DEC = "dec"


_GRID_CELLS = ((0, 1), (1, 0), (1, 2), (2, 1))


def in_grid_class(sigma: Permutation, variant: GridVariant = GridVariant.INC) -> bool:
    """Membership in the 3x3 grid class with four monotone cells in a diamond.

    Tries every pair of horizontal and vertical cuts (empty bands allowed).
    """
    n = len(sigma)
    points = [(i, sigma.images[i] - 1) for i in range(n)]
    inc = variant is GridVariant.INC

    def band(x: int, a: int, b: int) -> int:
        return 0 if x < a else (1 if x < b else 2)

    for a in range(n + 1):
        for b in range(a, n + 1):
            row_band = [band(i, a, b) for i in range(n)]
            for c in range(n + 1):
                for d in range(c, n + 1):
                    last: dict[tuple[int, int], int] = {}
                    ok = True
                    for i, v in points:
                        cell = (row_band[i], band(v, c, d))
                        if cell not in _GRID_CELLS:
                            ok = False
                            break
                        prev = last.get(cell)
                        if prev is not None and (v < prev if inc else v > prev):
                            ok = False
                            break
                        last[cell] = v
                    if ok:
                        return True
    return False


def fits_on_rectangle(sigma: Permutation) -> bool:
    """True iff some axis-parallel rectangle has every 1 of ``sigma`` on its boundary."""
    n = len(sigma)
    points = [(i, sigma.images[i] - 1) for i in range(n)]
    for r1 in range(n):
        for r2 in range(r1, n):
            for c1 in range(n):
                for c2 in range(c1, n):
                    if all(
                        r1 <= i <= r2 and c1 <= j <= c2 and (i in (r1, r2) or j in (c1, c2))
                        for i, j in points
                    ):
                        return True
    return False


def contained_permutations(host: HostLike, max_size: int) -> list[Permutation]:
    """Every permutation of size 1..max_size classically contained in ``host``."""
    out = []
    pos, neg, width = host_planes(host)
    for k in range(1, max_size + 1):
        for images in itertools.permutations(range(1, k + 1)):
            p = Permutation(images)
            if compile_pattern(p.pattern()).contains(pos, neg, width):
                out.append(p)
    return out
