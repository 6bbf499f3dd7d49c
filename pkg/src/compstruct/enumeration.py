"""Enumeration of all subsemigroups of a finite universe (typically T_n).

Subsets are int bitsets over universe indices; the universe product is a
precomputed index table, so closure is table lookups only.

The primary search is a depth-first extension: a closed set is grown by one
element larger than the last generator used, then closed again.  Searches
are split into root branches by the smallest element of the set, which
makes branches disjoint and lets them run in separate processes.  A second,
independent breadth-first algorithm serves as an oracle.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Iterable, Iterator

from .algebra import MulTable, as_table
from .errors import DomainError, FormatError, ResourceError
from .transforms import Transformation, TransSgp, conjugate_transformation, mul_table_of

ALGORITHM_VERSION = "dfs-bound-v1"
CHECKPOINT_MAGIC = "# compstruct enumeration checkpoint v1"
DEFAULT_MAX_SIZE = 27


@dataclass(frozen=True)
class ElementUniverse:
    """An ambient semigroup with its index-level product table.

    ``elements`` is set when the universe is a transformation semigroup;
    conjugation is only available then.
    """

    table: tuple[tuple[int, ...], ...]
    elements: tuple[Transformation, ...] | None = None
    degree: int | None = None

    @classmethod
    def from_trans(cls, s: TransSgp) -> ElementUniverse:
        return cls(mul_table_of(s).entries, s.elements, s.degree)

    @classmethod
    def from_table(cls, table) -> ElementUniverse:
        return cls(as_table(table).entries)

    @property
    def size(self) -> int:
        return len(self.table)

    def check_guard(self, long_run: bool = False) -> None:
        # |T_3| = 27 is the desk-scale ceiling; T_4 and anything that large needs the flag
        if not long_run and self.size > DEFAULT_MAX_SIZE:
            what = f"degree {self.degree} universe" if self.degree is not None else "universe"
            raise ResourceError(
                f"{what} of {self.size} elements exceeds the default guard of "
                f"{DEFAULT_MAX_SIZE}; pass long_run=True (--long-run)")


class ClosedSet:
    """A subsemigroup as a bitset over universe indices."""

    __slots__ = ("mask",)

    def __init__(self, mask: int):
        self.mask = mask

    @classmethod
    def of(cls, indices: Iterable[int]) -> ClosedSet:
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask)

    @property
    def members(self) -> tuple[int, ...]:
        return mask_members(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClosedSet) and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"ClosedSet({list(self.members)})"

    def sort_key(self) -> tuple[int, ...]:
        return self.members

    def to_line(self) -> str:
        return " ".join(str(i) for i in self.members)


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class _Closer:
    """Incremental closure against a fixed product table."""

    def __init__(self, table):
        self.rows = [list(r) for r in table]
        self.cols = [list(c) for c in zip(*table)]

    def extend(self, mask: int, members: list[int], e: int) -> tuple[int, list[int]]:
        if mask >> e & 1:
            return mask, members
        rows, cols = self.rows, self.cols
        members = members + [e]
        mask |= 1 << e
        queue = [e]
        while queue:
            x = queue.pop()
            row, col = rows[x], cols[x]
            for y in members:
                z = row[y]
                if not mask >> z & 1:
                    mask |= 1 << z
                    members.append(z)
                    queue.append(z)
                z = col[y]
                if not mask >> z & 1:
                    mask |= 1 << z
                    members.append(z)
                    queue.append(z)
        return mask, members


def _search_branch(table, root: int) -> list[int]:
    """All closed sets whose smallest element is ``root``.

    ``visited`` maps each closed set to the smallest generator bound it has
    been explored with; reaching a set again with a smaller bound reopens
    only the extensions it has not tried yet.
    """
    closer = _Closer(table)
    n = len(table)
    below = (1 << root) - 1
    mask, members = closer.extend(0, [], root)
    if mask & below:
        return []
    visited = {mask: root}
    stack = [(mask, members, root, n - 1)]
    while stack:
        mask, members, lo, hi = stack.pop()
        for e in range(hi, lo, -1):
            if mask >> e & 1:
                continue
            child, child_members = closer.extend(mask, members, e)
            if child & below:
                continue
            prev = visited.get(child)
            if prev is None:
                visited[child] = e
                stack.append((child, child_members, e, n - 1))
            elif e < prev:
                visited[child] = e
                stack.append((child, child_members, e, prev))
    return list(visited)


@dataclass(frozen=True)
class WorkDescriptor:
    """A slice of the search: the root branches (smallest elements) it owns."""

    roots: tuple[int, ...]


def partition_search(u: ElementUniverse, jobs: int) -> list[WorkDescriptor]:
    if jobs < 1:
        raise DomainError("jobs must be at least 1")
    count = max(1, min(jobs, u.size))
    return [WorkDescriptor(tuple(range(j, u.size, count))) for j in range(count)]


def run_descriptor(u: ElementUniverse, d: WorkDescriptor) -> list[int]:
    masks = []
    for root in d.roots:
        masks.extend(_search_branch(u.table, root))
    return masks


_WORKER_TABLE = None


def _init_worker(table):
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _worker_branch(root: int) -> list[int]:
    return _search_branch(_WORKER_TABLE, root)


def _worker_descriptor(roots: tuple[int, ...]) -> list[int]:
    masks = []
    for root in roots:
        masks.extend(_search_branch(_WORKER_TABLE, root))
    return masks


def _sorted_sets(masks: Iterable[int]) -> list[ClosedSet]:
    sets = [ClosedSet(m) for m in masks]
    sets.sort(key=ClosedSet.sort_key)
    return sets


def enumerate_subsemigroups(u: ElementUniverse, jobs: int = 1, long_run: bool = False,
                            checkpoint: str | os.PathLike | None = None) -> Iterator[ClosedSet]:
    """Every nonempty closed subset exactly once, ordered by sorted index tuple.

    The order does not depend on ``jobs``.  With ``checkpoint``, finished
    root branches are appended to that file and skipped on a rerun.
    """
    u.check_guard(long_run)
    if checkpoint is not None:
        masks = _enumerate_with_checkpoint(u, jobs, Path(checkpoint))
    else:
        descriptors = partition_search(u, jobs)
        if len(descriptors) == 1:
            masks = run_descriptor(u, descriptors[0])
        else:
            masks = []
            with ProcessPoolExecutor(len(descriptors), initializer=_init_worker,
                                     initargs=(u.table,)) as pool:
                for part in pool.map(_worker_descriptor, [d.roots for d in descriptors]):
                    masks.extend(part)
    return iter(_sorted_sets(masks))


def _checkpoint_header(u: ElementUniverse) -> str:
    return (f"{CHECKPOINT_MAGIC}\n"
            f"degree={u.degree if u.degree is not None else '-'} size={u.size} "
            f"algorithm={ALGORITHM_VERSION}\n")


def read_checkpoint(path: Path, u: ElementUniverse) -> dict[int, list[int]]:
    """Finished branches recorded in a checkpoint file: root -> masks.

    Layout: two header lines, then per finished branch ``branch <root> <count>``
    followed by ``count`` lines of hex bitsets.  A truncated trailing branch
    is ignored.
    """
    text = path.read_text()
    header = _checkpoint_header(u)
    if not text.startswith(header):
        raise FormatError(f"{path}: checkpoint header does not match this universe/algorithm")
    lines = text[len(header):].splitlines()
    done: dict[int, list[int]] = {}
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        if len(parts) != 3 or parts[0] != "branch":
            raise FormatError(f"{path}: bad branch line {lines[i]!r}")
        root, count = int(parts[1]), int(parts[2])
        block = lines[i + 1:i + 1 + count]
        if len(block) < count:
            break
        done[root] = [int(h, 16) for h in block]
        i += 1 + count
    return done


def _enumerate_with_checkpoint(u: ElementUniverse, jobs: int, path: Path) -> list[int]:
    if path.exists() and path.stat().st_size:
        done = read_checkpoint(path, u)
    else:
        path.write_text(_checkpoint_header(u))
        done = {}
    todo = [r for r in range(u.size) if r not in done]

    def record(root, masks):
        with path.open("a") as fh:
            fh.write(f"branch {root} {len(masks)}\n")
            fh.writelines(f"{m:x}\n" for m in masks)
        done[root] = masks

    if jobs <= 1:
        for root in todo:
            record(root, _search_branch(u.table, root))
    else:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(u.table,)) as pool:
            for root, masks in zip(todo, pool.map(_worker_branch, todo)):
                record(root, masks)
    return [m for root in sorted(done) for m in done[root]]


def bfs_oracle_enumerate(u: ElementUniverse, long_run: bool = False) -> set[frozenset[int]]:
    """Independent fixpoint search over Python sets.

    Seeds are the closures of singletons; every known set is repeatedly
    extended by one outside element and closed, until nothing new appears.
    """
    u.check_guard(long_run)
    t = u.table
    n = len(t)

    def close(base: frozenset[int], new: Iterable[int]) -> frozenset[int]:
        current = set(base)
        fresh = set(new) - current
        current |= fresh
        while fresh:
            produced = set()
            for x in fresh:
                for y in current:
                    produced.add(t[x][y])
                    produced.add(t[y][x])
            fresh = produced - current
            current |= fresh
        return frozenset(current)

    found = {close(frozenset(), [x]) for x in range(n)}
    queue = list(found)
    while queue:
        s = queue.pop()
        for e in range(n):
            if e in s:
                continue
            c = close(s, [e])
            if c not in found:
                found.add(c)
                queue.append(c)
    return found


def is_closed_by_composition(u: ElementUniverse, s: ClosedSet) -> bool:
    """Re-check closure of ``s`` from the transformations themselves, not the table."""
    if u.elements is None:
        members = set(s.members)
        return all(u.table[x][y] in members for x in members for y in members)
    elems = [u.elements[i].images for i in s.members]
    present = set(elems)
    return all(tuple(g[v] for v in f) in present for f in elems for g in elems)


def conjugation_maps(u: ElementUniverse) -> list[tuple[int, ...]]:
    """Index permutations induced by point relabelings that preserve the universe."""
    if u.elements is None or u.degree is None:
        raise DomainError("conjugacy needs a transformation universe")
    pos = {f: i for i, f in enumerate(u.elements)}
    maps = []
    for perm in permutations(range(u.degree)):
        p = Transformation(perm)
        idx = []
        for f in u.elements:
            j = pos.get(conjugate_transformation(f, p))
            if j is None:
                break
            idx.append(j)
        else:
            maps.append(tuple(idx))
    return maps


def _apply_map(mask: int, idx: tuple[int, ...]) -> int:
    out = 0
    for i in mask_members(mask):
        out |= 1 << idx[i]
    return out


def canonical_mask(mask: int, maps: list[tuple[int, ...]]) -> int:
    return min((_apply_map(mask, idx) for idx in maps), key=mask_members)


def orbit_size(mask: int, maps: list[tuple[int, ...]]) -> int:
    return len({_apply_map(mask, idx) for idx in maps})


def enumerate_up_to_conjugacy(u: ElementUniverse, jobs: int = 1, long_run: bool = False,
                              raw: Iterable[ClosedSet] | None = None) -> Iterator[ClosedSet]:
    """One canonical (orbit-minimal) representative per conjugacy class."""
    maps = conjugation_maps(u)
    if raw is None:
        raw = enumerate_subsemigroups(u, jobs=jobs, long_run=long_run)
    reps = {canonical_mask(s.mask, maps) for s in raw}
    return iter(_sorted_sets(reps))


class SizeDistribution(dict):
    """Histogram: semigroup order -> number of semigroups of that order."""

    def total(self) -> int:
        return sum(self.values())

    def rows(self) -> list[tuple[int, int]]:
        return sorted(self.items())

    def to_csv(self) -> str:
        return "order,count\n" + "".join(f"{k},{v}\n" for k, v in self.rows())

    def to_gnuplot(self) -> str:
        return "# order count\n" + "".join(f"{k} {v}\n" for k, v in self.rows())

    @classmethod
    def from_csv(cls, text: str) -> SizeDistribution:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != "order,count":
            raise FormatError("histogram CSV must start with 'order,count'")
        out = cls()
        for ln in lines[1:]:
            try:
                k, v = ln.split(",")
                out[int(k)] = int(v)
            except ValueError:
                raise FormatError(f"bad histogram row {ln!r}") from None
        return out


def size_distribution(sets: Iterable) -> SizeDistribution:
    return SizeDistribution(sorted(Counter(len(s) for s in sets).items()))


def universe_of_full(n: int) -> ElementUniverse:
    from .transforms import full_transformation_semigroup
    return ElementUniverse.from_trans(full_transformation_semigroup(n))


def subsemigroups_of_table(table, long_run: bool = False) -> list[ClosedSet]:
    """Convenience wrapper used by the division search."""
    return list(enumerate_subsemigroups(ElementUniverse.from_table(table), long_run=long_run))
