"""Bitmask subsets of a ground set {0, ..., n}.

A subset is a plain int: bit i set means element i is in the subset.
Ground sets are capped at 31 elements so masks stay single machine words;
exhaustive 2**size scans are additionally capped at 21 elements.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

MAX_GROUND_SIZE = 31
EXHAUSTIVE_SCAN_LIMIT = 21


def full_mask(size: int) -> int:
    return (1 << size) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def iter_elements(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements_of(mask: int) -> tuple[int, ...]:
    return tuple(iter_elements(mask))


def min_element(mask: int) -> int:
    if not mask:
        raise ValueError("empty mask has no minimum element")
    return (mask & -mask).bit_length() - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def complement(mask: int, size: int) -> int:
    return full_mask(size) & ~mask


def check_mask(mask: int, size: int) -> int:
    """Reject masks with bits outside {0, ..., size-1}."""
    if mask < 0 or mask & ~full_mask(size):
        raise ValueError(
            f"mask {bin(mask)} has bits outside the {size}-element ground set"
        )
    return mask


def iter_subsets(size: int) -> Iterator[int]:
    """All 2**size masks in ascending order.  Guarded: exhaustive scans only."""
    if size > EXHAUSTIVE_SCAN_LIMIT:
        raise ValueError(f"refusing exhaustive scan of 2**{size} subsets")
    return iter(range(1 << size))
