import re
import logging
from collections import Counter
from typing import Iterable, Iterator, List, Optional, Tuple

import numpy as np

from models import (
    Algebra,
    CollapseAssertionError,
    DomainError,
    InvalidPartitionError,
    ParseError,
    Partition,
    Series,
    SingularData,
    SizeMismatchError,
)

ALGEBRA_PATTERN = re.compile(r"^\s*(so|sp)\s*_?\s*(\d+)\s*$", re.IGNORECASE)


def parse_algebra(text: str) -> Algebra:
    """Parse "so15" or "sp30" into an Algebra; so_N needs N >= 3, sp_N needs even N >= 2"""
    match = ALGEBRA_PATTERN.match(text or "")
    if not match:
        raise ParseError(f"Cannot parse algebra {text!r}; expected so<N> or sp<N>")
    series = Series(match.group(1).lower())
    size = int(match.group(2))
    if series is Series.SO and size < 3:
        raise ParseError(f"so_N needs N >= 3, got {size}")
    if series is Series.SP and (size < 2 or size % 2):
        raise ParseError(f"sp_N needs even N >= 2, got {size}")
    return Algebra(series, size)


def parse_partition(text: str) -> Partition:
    """Comma separated parts; "" and "0" denote the empty partition"""
    text = (text or "").strip()
    if text in ("", "0"):
        return Partition(())
    parts = []
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit():
            raise ParseError(f"Partition part {token!r} is not a nonnegative integer")
        parts.append(int(token))
    if parts != sorted(parts, reverse=True):
        logging.debug(f"Reordering partition parts {parts}")
        parts.sort(reverse=True)
    return Partition(tuple(parts))


def parse_blocks(text: str) -> List[int]:
    text = (text or "").strip()
    if not text:
        return []
    blocks = []
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit() or int(token) < 1:
            raise ParseError(f"gl block {token!r} is not a positive integer")
        blocks.append(int(token))
    return blocks


def _bad_parity(value: int, g: Algebra) -> bool:
    # even parts are constrained in so_N, odd parts in sp_N
    if g.series is Series.SO:
        return value % 2 == 0
    return value % 2 == 1


def _check_size(p: Partition, g: Algebra):
    if p.size != g.size:
        raise SizeMismatchError(f"Partition {p} has size {p.size}, {g.name} needs {g.size}")


def violation(p: Partition, g: Algebra) -> Optional[Tuple[int, int]]:
    """Largest part of the constrained parity occurring an odd number of times, with its multiplicity"""
    _check_size(p, g)
    counts = Counter(p.parts)
    for value in p.distinct_parts():
        if _bad_parity(value, g) and counts[value] % 2:
            return value, counts[value]
    return None


def is_valid(p: Partition, g: Algebra) -> bool:
    return violation(p, g) is None


def describe_violation(p: Partition, g: Algebra) -> Optional[str]:
    found = violation(p, g)
    if found is None:
        return None
    value, times = found
    parity = "even" if g.series is Series.SO else "odd"
    occurs = "once" if times == 1 else f"{times} times"
    return f"{parity} part {value} occurs {occurs}"


def require_valid(p: Partition, g: Algebra):
    message = describe_violation(p, g)
    if message is not None:
        value, times = violation(p, g)
        raise InvalidPartitionError(f"{p} is not a {g.name} partition: {message}", value, times)


def transpose(p: Partition) -> Partition:
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in p.parts if x >= j) for j in range(1, p.parts[0] + 1)))


def prefix_sums(p: Partition, length: int) -> np.ndarray:
    padded = np.zeros(length, dtype=np.int64)
    padded[:p.length] = p.parts
    return np.cumsum(padded)


def dominates(p: Partition, q: Partition) -> bool:
    """p >= q in the dominance order"""
    if p.size != q.size:
        raise SizeMismatchError(f"Cannot compare {p} and {q}: sizes {p.size} and {q.size}")
    length = max(p.length, q.length, 1)
    return bool(np.all(prefix_sums(p, length) >= prefix_sums(q, length)))


def is_very_even(p: Partition, g: Algebra) -> bool:
    return (
        g.series is Series.SO
        and g.size % 2 == 0
        and all(x % 2 == 0 for x in p.parts)
    )


def singular_set(p: Partition) -> List[SingularData]:
    """Rows m with alpha_m - alpha_{m+1} >= 2, the last row compared against zero"""
    result = []
    for m in range(1, p.length + 1):
        gap = p.row(m) - p.row(m + 1)
        if gap >= 2:
            result.append(SingularData(m, gap // 2))
    return result


def is_special_at(p: Partition, k: int, g: Algebra) -> bool:
    """Rows k and k+1 hold equal odd values and are the only odd rows, in so_N with N even"""
    if g.series is not Series.SO or g.size % 2 or k < 1:
        return False
    value = p.row(k)
    if value % 2 == 0 or p.row(k + 1) != value:
        return False
    odd_rows = [i for i, x in enumerate(p.parts, start=1) if x % 2]
    return odd_rows == [k, k + 1]


def special_indices(p: Partition, g: Algebra) -> List[int]:
    return [k for k in range(1, p.length) if is_special_at(p, k, g)]


def is_odd_pair_at(p: Partition, m: int) -> bool:
    """Rows m and m+1 are the only odd rows and differ"""
    if m < 1 or p.row(m) % 2 == 0 or p.row(m + 1) % 2 == 0:
        return False
    if p.row(m) <= p.row(m + 1):
        return False
    odd_rows = [i for i, x in enumerate(p.parts, start=1) if x % 2]
    return odd_rows == [m, m + 1]


def raise_rows(p: Partition, m: int, amount: int = 2) -> Partition:
    """alpha^m: add amount to each of the first m rows, padding with zero rows"""
    if m < 1:
        raise DomainError(f"Block size must be positive, got {m}")
    length = max(p.length, m)
    return Partition(tuple(p.row(i) + (amount if i <= m else 0) for i in range(1, length + 1)))


def collapse_down(seq: Iterable[int], g: Algebra) -> Partition:
    """Largest g-partition dominated by seq"""
    rows = sorted((int(x) for x in seq), reverse=True)
    if any(x < 0 for x in rows):
        raise DomainError(f"Negative part in {rows}")
    if sum(rows) != g.size:
        raise SizeMismatchError(f"Sequence {rows} has size {sum(rows)}, {g.name} needs {g.size}")
    rows = [x for x in rows if x > 0]
    original = list(rows)
    steps = 0
    while True:
        counts = Counter(rows)
        bad = [value for value, count in counts.items() if _bad_parity(value, g) and count % 2]
        if not bad:
            break
        q = max(bad)
        last = len(rows) - 1 - rows[::-1].index(q)
        rows[last] = q - 1
        target = last + 1
        while target < len(rows) and rows[target] >= q - 1:
            target += 1
        if target == len(rows):
            rows.append(1)
        else:
            rows[target] += 1
        rows = [x for x in rows if x > 0]
        steps += 1
    if steps:
        logging.debug(f"Collapsed {original} to {rows} in {steps} steps")
    return Partition(tuple(rows))


def add_two_then_collapse(p: Partition, m: int, g_target: Algebra) -> Partition:
    """Induction of the orbit p from gl_m x g_{N-2m} to g_N, in partition form"""
    if g_target.size - 2 * m < 0:
        raise SizeMismatchError(f"gl{m} does not fit inside {g_target.name}")
    g_source = g_target.with_size(g_target.size - 2 * m)
    _check_size(p, g_source)
    require_valid(p, g_source)
    raised = raise_rows(p, m)
    if is_valid(raised, g_target):
        return raised
    row_m, row_next = p.row(m), p.row(m + 1)
    same_parity = (row_m % 2 == 0) == (g_target.series is Series.SO)
    if row_m != row_next or not same_parity:
        raise CollapseAssertionError(
            f"Raising {p} at row {m} leaves {raised} invalid but rows {m}, {m + 1} are {row_m}, {row_next}"
        )
    length = max(p.length, m + 1)
    parts = []
    for i in range(1, length + 1):
        if i < m:
            parts.append(p.row(i) + 2)
        elif i in (m, m + 1):
            parts.append(p.row(i) + 1)
        else:
            parts.append(p.row(i))
    result = Partition(tuple(parts))
    if not is_valid(result, g_target):
        raise CollapseAssertionError(f"Collapse of {raised} produced invalid {result}")
    return result


def _partitions_bounded(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order"""
    if n < 0:
        raise DomainError(f"Cannot partition {n}")
    for parts in _partitions_bounded(n, n):
        yield Partition(parts)


def diagram(p: Partition, box: str = "#") -> str:
    """Young diagram, one line per row"""
    return "\n".join(box * x for x in p.parts)
