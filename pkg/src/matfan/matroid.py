"""Matroids on a ground set {0, ..., n} with exact rank oracles.

A matroid is its rank function.  Concrete backends cover the standard
constructions: uniform and free matroids, multigraphs, column matroids of
exact matrices over GF(p) or the rationals, explicit basis lists, and
explicit rank tables.  Derived wrappers implement truncation, duality,
free extension and relabelling lazily, without materializing tables.

Rank values are memoized per instance.  Instances are immutable after
construction and the memo dict is only written under CPython's GIL, so
concurrent readers are safe.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from . import linalg
from .masks import (
    MAX_GROUND_SIZE,
    check_mask,
    complement,
    elements_of,
    full_mask,
    iter_subsets,
    mask_of,
)


class Flat(NamedTuple):
    mask: int
    rank: int


class Matroid:
    """Abstract base: subclasses implement ``_rank_impl`` on valid masks."""

    def __init__(self, size: int, name: str | None = None):
        if not 1 <= size <= MAX_GROUND_SIZE:
            raise ValueError(f"ground-set size {size} out of range 1..{MAX_GROUND_SIZE}")
        self.size = size
        self.name = name if name is not None else type(self).__name__
        self._rank_cache: dict[int, int] = {}
        self._strata_cache: Optional[tuple[list[list[int]], dict[int, list[int]]]] = None

    def _rank_impl(self, mask: int) -> int:
        raise NotImplementedError

    # -- rank oracle -------------------------------------------------

    def rank(self, mask: int) -> int:
        check_mask(mask, self.size)
        r = self._rank_cache.get(mask)
        if r is None:
            r = self._rank_impl(mask)
            self._rank_cache[mask] = r
        return r

    @property
    def ground_mask(self) -> int:
        return full_mask(self.size)

    @property
    def full_rank(self) -> int:
        return self.rank(self.ground_mask)

    # -- closure and flats --------------------------------------------

    def closure(self, mask: int) -> int:
        """Smallest flat containing mask: add every element that keeps rank."""
        r = self.rank(mask)
        out = mask
        for x in range(self.size):
            b = 1 << x
            if not out & b and self.rank(mask | b) == r:
                out |= b
        return out

    def closure_flat(self, mask: int) -> Flat:
        return Flat(self.closure(mask), self.rank(mask))

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def loops(self) -> int:
        return self.closure(0)

    def is_simple(self) -> bool:
        if self.closure(0):
            return False
        return all(self.closure(1 << x) == 1 << x for x in range(self.size))

    def flat_strata(self) -> tuple[list[list[int]], dict[int, list[int]]]:
        """All flats, stratified by rank, plus the covering relation.

        Returns (strata, covered_by): strata[k] lists the rank-k flats in
        ascending mask order, and covered_by[G] lists the flats covered by
        G.  Built by closure search: for a flat F and x outside F, the
        closure of F + x is a flat covering F, and every cover arises.
        """
        if self._strata_cache is None:
            bottom = self.closure(0)
            strata = [[bottom]]
            covered_by: dict[int, list[int]] = {bottom: []}
            current = [bottom]
            top = self.ground_mask
            while current != [top]:
                nxt: dict[int, set[int]] = {}
                for f in current:
                    for x in range(self.size):
                        b = 1 << x
                        if f & b:
                            continue
                        g = self.closure(f | b)
                        nxt.setdefault(g, set()).add(f)
                current = sorted(nxt)
                strata.append(current)
                for g, parents in nxt.items():
                    covered_by[g] = sorted(parents)
            self._strata_cache = (strata, covered_by)
        return self._strata_cache

    def flats_of_rank(self, k: int) -> list[Flat]:
        strata, _ = self.flat_strata()
        if not 0 <= k < len(strata):
            raise ValueError(f"no flats of rank {k}; valid ranks are 0..{len(strata) - 1}")
        return [Flat(m, k) for m in strata[k]]

    # -- standard constructions ---------------------------------------

    def simplify(self) -> tuple["Matroid", list[Optional[int]]]:
        """Combinatorial geometry: drop loops, collapse parallel classes.

        Returns (geometry, mapping) where mapping[x] is the new index of
        element x, or None for loops.  Simple matroids are fixed points
        and are returned unchanged.
        """
        loops = self.closure(0)
        reps: list[int] = []
        class_of: dict[int, int] = {}
        seen = loops
        for x in range(self.size):
            b = 1 << x
            if b & seen:
                continue
            cls = self.closure(b)
            rep_index = len(reps)
            reps.append(x)
            for y in elements_of(cls & ~loops):
                class_of[y] = rep_index
            seen |= cls
        if not reps:
            raise ValueError("rank-zero matroid has an empty simplification")
        if loops == 0 and len(reps) == self.size:
            return self, list(range(self.size))
        mapping: list[Optional[int]] = [
            None if (1 << x) & loops else class_of[x] for x in range(self.size)
        ]
        geometry = RelabeledMatroid(self, reps, name=f"si({self.name})")
        return geometry, mapping

    def truncate(self, k: int) -> "Matroid":
        """Rank capped at k + 1; requires 0 <= k <= full_rank - 1."""
        if not 0 <= k <= self.full_rank - 1:
            raise ValueError(f"truncation level {k} outside 0..{self.full_rank - 1}")
        return TruncatedMatroid(self, k)

    def dual(self) -> "Matroid":
        return DualMatroid(self)

    def free_extension(self) -> "Matroid":
        """One new element in general position; the rank stays the same."""
        return FreeExtensionMatroid(self)

    def free_coextension(self) -> "Matroid":
        """Dual of the free extension of the dual; rank and size grow by one."""
        return self.dual().free_extension().dual()

    # -- whole-matroid queries -----------------------------------------

    def independent_set_counts(self) -> tuple[int, ...]:
        """Number of independent sets of each cardinality 0..full_rank."""
        counts = [0] * (self.full_rank + 1)
        for mask in iter_subsets(self.size):
            c = mask.bit_count()
            if c <= self.full_rank and self.rank(mask) == c:
                counts[c] += 1
        return tuple(counts)

    def rank_table(self) -> list[int]:
        return [self.rank(mask) for mask in iter_subsets(self.size)]

    def same_rank_function(self, other: "Matroid") -> bool:
        if self.size != other.size:
            return False
        return all(self.rank(m) == other.rank(m) for m in iter_subsets(self.size))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name!r} size={self.size}>"


class UniformMatroid(Matroid):
    """Every k-subset is a basis: rank(S) = min(|S|, k)."""

    def __init__(self, rank: int, size: int, name: str | None = None):
        if not 0 <= rank <= size:
            raise ValueError(f"uniform rank {rank} outside 0..{size}")
        super().__init__(size, name or f"uniform({rank},{size})")
        self.uniform_rank = rank

    def _rank_impl(self, mask: int) -> int:
        return min(mask.bit_count(), self.uniform_rank)


class FreeMatroid(UniformMatroid):
    """Every subset independent; the lattice of flats is Boolean."""

    def __init__(self, size: int, name: str | None = None):
        super().__init__(size, size, name or f"free({size})")


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; elements are edge indices.

    rank(S) = (vertices touched by S) - (components of the subgraph on S).
    Parallel edges and self-loops are allowed; self-loops are matroid loops.
    """

    def __init__(self, vertices: int, edges: Sequence[tuple[int, int]],
                 name: str | None = None):
        if vertices < 1:
            raise ValueError("graph needs at least one vertex")
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise ValueError(f"edge ({u},{v}) has endpoints outside 0..{vertices - 1}")
        super().__init__(len(edges), name or f"graphic(V={vertices},E={len(edges)})")
        self.vertices = vertices
        self.edges = [(min(u, v), max(u, v)) for u, v in edges]

    def _rank_impl(self, mask: int) -> int:
        parent: dict[int, int] = {}

        def find(a: int) -> int:
            root = a
            while parent[root] != root:
                root = parent[root]
            while parent[a] != root:
                parent[a], a = root, parent[a]
            return root

        rank = 0
        for e in elements_of(mask):
            u, v = self.edges[e]
            for w in (u, v):
                if w not in parent:
                    parent[w] = w
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                rank += 1
        return rank


class LinearMatroid(Matroid):
    """Column matroid of an exact matrix over GF(p) or the rationals.

    field is None for the rationals or a prime p for GF(p).  Rational
    entries may be ints or Fractions.
    """

    def __init__(self, matrix: Sequence[Sequence], field: int | None = None,
                 name: str | None = None):
        if not matrix or not matrix[0]:
            raise ValueError("matrix must be nonempty")
        width = len(matrix[0])
        if any(len(row) != width for row in matrix):
            raise ValueError("matrix rows have unequal lengths")
        if field is not None and not linalg.is_prime(field):
            raise ValueError(f"{field} is not prime")
        tag = "Q" if field is None else f"GF({field})"
        super().__init__(width, name or f"linear({tag},{len(matrix)}x{width})")
        self.field = field
        if field is None:
            self.columns = [tuple(Fraction(matrix[i][j]) for i in range(len(matrix)))
                            for j in range(width)]
        else:
            self.columns = [tuple(int(matrix[i][j]) % field for i in range(len(matrix)))
                            for j in range(width)]

    def _rank_impl(self, mask: int) -> int:
        # Rank is transpose-invariant, so feed the columns as rows.
        chosen = [self.columns[e] for e in elements_of(mask)]
        if not chosen:
            return 0
        if self.field is None:
            return linalg.rank_rational(chosen)
        return linalg.rank_mod_p(chosen, self.field)


class BasesMatroid(Matroid):
    """Matroid given by its bases: rank(S) = max over bases of |B & S|."""

    def __init__(self, size: int, bases: Sequence[int], name: str | None = None):
        super().__init__(size, name or f"bases({size})")
        if not bases:
            raise ValueError("at least one basis is required")
        card = bases[0].bit_count()
        for b in bases:
            check_mask(b, size)
            if b.bit_count() != card:
                raise ValueError("bases must all have the same cardinality")
        self.bases = sorted(set(bases))

    def _rank_impl(self, mask: int) -> int:
        return max((b & mask).bit_count() for b in self.bases)


class RankTableMatroid(Matroid):
    """Matroid given by an explicit table of all 2**size rank values.

    The constructor checks only shape; run validate_rank_table on
    untrusted tables to confirm the rank axioms.
    """

    def __init__(self, size: int, ranks: Sequence[int], name: str | None = None):
        super().__init__(size, name or f"table({size})")
        if len(ranks) != 1 << size:
            raise ValueError(f"rank table needs {1 << size} entries, got {len(ranks)}")
        if ranks[0] != 0:
            raise ValueError("rank of the empty set must be 0")
        self.ranks = list(ranks)

    def _rank_impl(self, mask: int) -> int:
        return self.ranks[mask]


class TruncatedMatroid(Matroid):
    def __init__(self, base: Matroid, level: int):
        super().__init__(base.size, f"tr{level}({base.name})")
        self.base = base
        self.level = level

    def _rank_impl(self, mask: int) -> int:
        return min(self.base.rank(mask), self.level + 1)

    def truncate(self, k: int) -> Matroid:
        # Truncating a truncation only lowers the cap.
        if not 0 <= k <= self.full_rank - 1:
            raise ValueError(f"truncation level {k} outside 0..{self.full_rank - 1}")
        return TruncatedMatroid(self.base, k)


class DualMatroid(Matroid):
    def __init__(self, base: Matroid):
        super().__init__(base.size, f"dual({base.name})")
        self.base = base

    def _rank_impl(self, mask: int) -> int:
        co = complement(mask, self.size)
        return mask.bit_count() + self.base.rank(co) - self.base.full_rank

    def dual(self) -> Matroid:
        return self.base


class RelabeledMatroid(Matroid):
    """Restriction to a subset of elements, relabelled to 0..k-1."""

    def __init__(self, base: Matroid, kept: Sequence[int], name: str | None = None):
        super().__init__(len(kept), name or f"re({base.name})")
        self.base = base
        self.kept = list(kept)

    def _rank_impl(self, mask: int) -> int:
        return self.base.rank(mask_of(self.kept[e] for e in elements_of(mask)))


class FreeExtensionMatroid(Matroid):
    """Adds element `base.size` in general position."""

    def __init__(self, base: Matroid):
        super().__init__(base.size + 1, f"ext({base.name})")
        self.base = base

    def _rank_impl(self, mask: int) -> int:
        b = 1 << self.base.size
        if mask & b:
            return min(self.base.rank(mask ^ b) + 1, self.base.full_rank)
        return self.base.rank(mask)


def validate_rank_table(size: int, ranks: Sequence[int], seed: int = 0):
    """Check the rank axioms on an explicit table.

    Returns None if the table passes, otherwise a human-readable witness.
    Normalization and unit-increase are checked exhaustively; submodularity
    is exhaustive for size <= 9 and a seeded 20000-pair sample above that.
    """
    import random

    if len(ranks) != 1 << size:
        return f"table has {len(ranks)} entries, expected {1 << size}"
    if ranks[0] != 0:
        return f"rank of the empty set is {ranks[0]}, expected 0"
    for mask in iter_subsets(size):
        r = ranks[mask]
        if r < 0:
            return f"rank of {sorted(elements_of(mask))} is negative"
        for x in range(size):
            b = 1 << x
            if mask & b:
                continue
            step = ranks[mask | b] - r
            if step < 0 or step > 1:
                return (f"unit increase fails at S={sorted(elements_of(mask))}, "
                        f"x={x}: {r} -> {ranks[mask | b]}")
    if size <= 9:
        pairs = ((s, t) for s in iter_subsets(size) for t in iter_subsets(size))
    else:
        rng = random.Random(seed)
        top = 1 << size
        pairs = ((rng.randrange(top), rng.randrange(top)) for _ in range(20000))
    for s, t in pairs:
        if ranks[s | t] + ranks[s & t] > ranks[s] + ranks[t]:
            return (f"submodularity fails at S={sorted(elements_of(s))}, "
                    f"T={sorted(elements_of(t))}")
    return None
