"""Counting ASMs by exhaustive filtering of the generator stream.

Counts are folded per generator shard and reduced by addition, so a run with
several worker processes returns exactly what a sequential run returns.
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import Asm, ContainmentMode, PatternMatrix, Permutation, Symmetry, apply_symmetry_pattern, word_to_pattern
from .generator import check_ceiling, generate_asms, iter_planes
from .matcher import compile_pattern
from . import lemmas


class Provenance(enum.Enum):
    ENUMERATED = "enumerated"
    FORMULA = "formula"
    PUBLISHED = "published"


@dataclass(frozen=True)
class AvoidanceQuery:
    """Which ASMs to count.

    ``k`` keeps ASMs with exactly that many -1s; ``k_at_most`` keeps those
    with at most that many.  ``mode`` must be given when a pattern has -1s.
    """

    patterns: tuple[PatternMatrix, ...] = ()
    mode: ContainmentMode | None = None
    k: int | None = None
    k_at_most: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if self.k is not None and self.k_at_most is not None:
            raise ValueError("k and k_at_most are mutually exclusive")
        for bound in (self.k, self.k_at_most):
            if bound is not None and bound < 0:
                raise ValueError("negative-one bounds must be non-negative")
        if self.mode is None and any(p.has_negatives() for p in self.patterns):
            raise ValueError("patterns with -1 entries need an explicit containment mode")

    @property
    def effective_mode(self) -> ContainmentMode:
        return self.mode or ContainmentMode.CLASSICAL

    def with_k(self, k: int | None) -> AvoidanceQuery:
        return AvoidanceQuery(self.patterns, self.mode, k, None)

    def compiled(self):
        # cheapest first so that avoids-all short-circuits early
        cps = [compile_pattern(p, self.effective_mode) for p in self.patterns]
        return tuple(sorted(cps, key=lambda c: (c.size, c.m)))

    def accepts_k(self, k: int) -> bool:
        if self.k is not None:
            return k == self.k
        if self.k_at_most is not None:
            return k <= self.k_at_most
        return True


def perm_patterns(*names: str) -> tuple[PatternMatrix, ...]:
    return tuple(Permutation.parse(s).pattern() for s in names)


def _fold_shard(n: int, query: AvoidanceQuery, shard: tuple[int, int] | None) -> dict[int, int]:
    """Histogram by number of -1s over one shard of ASM_n satisfying ``query``."""
    compiled = query.compiled()
    exact, at_most = query.k, query.k_at_most
    hist: Counter = Counter()
    for pos, neg in iter_planes(n, shard):
        k = 0
        for q in neg:
            if q:
                k += q.bit_count()
        if exact is not None and k != exact:
            continue
        if at_most is not None and k > at_most:
            continue
        for cp in compiled:
            if cp.contains(pos, neg, n):
                break
        else:
            hist[k] += 1
    return dict(hist)


def _fold_task(args):
    return _fold_shard(*args)


def stratify(n: int, query: AvoidanceQuery, threads: int = 1, allow_large: bool = False) -> dict[int, int]:
    """``{k: |ASMs of size n with k -1s satisfying query|}``, zero strata omitted."""
    check_ceiling(n, allow_large)
    if threads <= 1:
        hist = _fold_shard(n, query, None)
    else:
        tasks = [(n, query, (i, threads)) for i in range(threads)]
        hist = Counter()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_fold_task, tasks):
                hist.update(part)
        hist = dict(hist)
    return dict(sorted(hist.items()))


def count_avoiding(n: int, query: AvoidanceQuery, threads: int = 1, allow_large: bool = False) -> int:
    return sum(stratify(n, query, threads, allow_large).values())


def count_avoiding_stratified(n: int, query: AvoidanceQuery, k: int, threads: int = 1, allow_large: bool = False) -> int:
    return count_avoiding(n, query.with_k(k), threads, allow_large)


def count_identical_avoiding(n: int, asms: Iterable[Asm], threads: int = 1) -> int:
    patterns = tuple(PatternMatrix(a.rows) for a in asms)
    return count_avoiding(n, AvoidanceQuery(patterns, ContainmentMode.IDENTICAL), threads)


def word_patterns(words: Iterable[str | Sequence[int] | PatternMatrix]) -> tuple[PatternMatrix, ...]:
    return tuple(w if isinstance(w, PatternMatrix) else word_to_pattern(w) for w in words)


def count_word_avoiding(n: int, words: Iterable, threads: int = 1) -> int:
    """Count ASMs avoiding every word (entries may also be ready-made patterns)."""
    return count_avoiding(n, AvoidanceQuery(word_patterns(words)), threads)


def at_most_one_negative_patterns() -> tuple[PatternMatrix, ...]:
    """Words whose joint avoidance means at most one -1, plus 111 transposed."""
    words = word_patterns(["111", "1122", "1212", "1221", "2112", "2121", "2211"])
    return words + (apply_symmetry_pattern(word_to_pattern("111"), Symmetry.TRANSPOSE),)


@dataclass
class SequenceRecord:
    name: str
    offset: int
    terms: list[int]
    provenance: Provenance
    n_range: tuple[int, int] | None = None
    mode: str | None = None
    patterns: list[str] = field(default_factory=list)
    k: int | None = None
    k_at_most: int | None = None

    def __post_init__(self):
        if any(t < 0 for t in self.terms):
            raise ValueError("sequence terms must be non-negative")

    def items(self):
        return [(self.offset + i, t) for i, t in enumerate(self.terms)]


def describe_pattern(p: PatternMatrix) -> str:
    perm = p.as_permutation()
    if perm is not None:
        return str(perm)
    return ";".join("".join({1: "+", -1: "-", 0: "0"}[x] for x in row) for row in p.entries)


def sequence(
    query: AvoidanceQuery,
    n_max: int,
    n_min: int = 1,
    name: str | None = None,
    threads: int = 1,
    allow_large: bool = False,
) -> SequenceRecord:
    check_ceiling(n_max, allow_large)
    terms = [count_avoiding(n, query, threads, allow_large) for n in range(n_min, n_max + 1)]
    labels = [describe_pattern(p) for p in query.patterns]
    return SequenceRecord(
        name=name or ("ASM(" + ",".join(labels) + ")" if labels else "ASM"),
        offset=n_min,
        terms=terms,
        provenance=Provenance.ENUMERATED,
        n_range=(n_min, n_max),
        mode=query.effective_mode.value,
        patterns=labels,
        k=query.k,
        k_at_most=query.k_at_most,
    )


# --- structure suites --------------------------------------------------------

_SKEW_PAIR = AvoidanceQuery(perm_patterns("2143", "3412"))
_EVERYTHING = AvoidanceQuery()

# id -> (predicate, population query); each predicate returns None when its
# hypothesis does not apply to the matrix
STRUCTURE_SUITES: dict[str, tuple[Callable[[Asm], bool | None], AvoidanceQuery]] = {
    "two-neg-ones": (lemmas.check_two_negative_ones, _EVERYTHING),
    "path-lemma": (lemmas.check_path_lemma, _EVERYTHING),
    "path-construction": (lemmas.check_path_construction, _EVERYTHING),
    "allinarow": (lemmas.check_all_in_a_row, _SKEW_PAIR),
    "atmost3": (lemmas.check_at_most_three, _SKEW_PAIR),
    "rows-adjacent": (lemmas.check_rows_adjacent, _SKEW_PAIR),
    "cols-adjacent": (lemmas.check_cols_adjacent, _SKEW_PAIR),
}


@dataclass
class StructureReport:
    name: str
    n_max: int
    population: dict[int, int] = field(default_factory=dict)
    applicable: dict[int, int] = field(default_factory=dict)
    counterexamples: list[tuple[int, Asm]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_structure_suite(name: str, n_max: int, allow_large: bool = False) -> StructureReport:
    """Check one structural lemma on every ASM of its class, for n = 1..n_max."""
    if name not in STRUCTURE_SUITES:
        raise KeyError(f"unknown lemma id {name!r}; expected one of {sorted(STRUCTURE_SUITES)}")
    predicate, query = STRUCTURE_SUITES[name]
    check_ceiling(n_max, allow_large)
    compiled = query.compiled()
    report = StructureReport(name, n_max)
    for n in range(1, n_max + 1):
        pop = hits = 0
        for a in generate_asms(n, allow_large=allow_large):
            if any(cp.contains(a.pos, a.neg, n) for cp in compiled):
                continue
            pop += 1
            verdict = predicate(a)
            if verdict is None:
                continue
            hits += 1
            if not verdict:
                report.counterexamples.append((n, a))
        report.population[n] = pop
        report.applicable[n] = hits
    return report


def brute_force_permutation_count(n: int, patterns: Sequence[Permutation]) -> int:
    """|S_n(patterns)| by filtering all n! permutations."""
    from .matcher import perm_contains_perm
    from .generator import generate_permutations

    return sum(
        1 for s in generate_permutations(n) if not any(perm_contains_perm(s, t) for t in patterns)
    )

