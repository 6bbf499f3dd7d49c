"""Abstract finite semigroups given by multiplication tables.

Products read left to right: ``table[x][y]`` is "x then y".  Elements are
0-based indices.  Tables are allowed to be non-associative so that
:func:`is_associative` has something to reject.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, StructuralError


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker.  Truthy iff the checked property holds.

    ``clause`` names what failed (or ``"ok"``); ``witness`` carries the
    offending indices in a stable order.  ``failures`` lists every failing
    clause with its first witness when a checker evaluates several.
    """

    ok: bool
    clause: str = "ok"
    witness: tuple = ()
    failures: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok" + (f" {self.detail}" if self.detail else "")
        text = f"FAIL {self.clause}"
        if self.witness:
            text += " witness " + " ".join(str(w) for w in self.witness)
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass(frozen=True)
class MulTable:
    entries: tuple[tuple[int, ...], ...]
    order: int = field(init=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0:
            raise StructuralError("a multiplication table needs at least one element")
        for x, row in enumerate(rows):
            if len(row) != n:
                raise StructuralError(f"row {x} has {len(row)} entries, expected {n}")
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise StructuralError(f"entry ({x},{y}) = {v} is outside 0..{n - 1}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "order", n)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, x: int) -> tuple[int, ...]:
        return self.entries[x]

    def mul(self, x: int, y: int) -> int:
        return self.entries[x][y]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def as_table(table: MulTable | Sequence[Sequence[int]]) -> MulTable:
    if isinstance(table, MulTable):
        return table
    return MulTable(tuple(tuple(row) for row in table))


def is_associative(table) -> Verdict:
    """Check ``(xy)z == x(yz)`` over all triples.

    On failure the witness is the lexicographically first violating triple.
    """
    t = as_table(table).entries
    n = len(t)
    for x in range(n):
        row = t[x]
        for y in range(n):
            xy = t[row[y]]
            ty = t[y]
            for z in range(n):
                if xy[z] != row[ty[z]]:
                    return Verdict(False, "associativity", (x, y, z))
    return Verdict(True)


def require_associative(table) -> MulTable:
    table = as_table(table)
    verdict = is_associative(table)
    if not verdict:
        raise DomainError(f"table is not associative: {verdict.describe()}")
    return table


def idempotents(table) -> frozenset[int]:
    t = as_table(table).entries
    return frozenset(x for x in range(len(t)) if t[x][x] == x)


def resets(table) -> frozenset[int]:
    """Right zeros: every ``v`` with ``xv == v`` for all ``x``."""
    t = as_table(table).entries
    n = len(t)
    return frozenset(v for v in range(n) if all(t[x][v] == v for x in range(n)))


def identity_element(table) -> int | None:
    t = as_table(table).entries
    n = len(t)
    for e in range(n):
        if all(t[e][x] == x and t[x][e] == x for x in range(n)):
            return e
    return None


def closure_in_table(table, subset: Iterable[int]) -> frozenset[int]:
    t = as_table(table).entries
    n = len(t)
    closed = set(subset)
    if not closed:
        raise DomainError("closure of the empty set is not a semigroup")
    for x in closed:
        if not 0 <= x < n:
            raise DomainError(f"index {x} is outside 0..{n - 1}")
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            for z in (t[x][y], t[y][x]):
                if z not in closed:
                    closed.add(z)
                    frontier.append(z)
    return frozenset(closed)


def sub_table(table, subset: Iterable[int]) -> tuple[MulTable, tuple[int, ...]]:
    """Restrict a table to a closed subset.

    Returns the induced table over the subset (indices renumbered in
    ascending order) together with the ascending list of original indices.
    """
    t = as_table(table).entries
    members = tuple(sorted(subset))
    pos = {x: i for i, x in enumerate(members)}
    try:
        rows = tuple(tuple(pos[t[x][y]] for y in members) for x in members)
    except KeyError:
        raise DomainError("subset is not closed under the product") from None
    return MulTable(rows), members


def cyclic_group(n: int) -> MulTable:
    return MulTable(tuple(tuple((x + y) % n for y in range(n)) for x in range(n)))


def right_zero_semigroup(n: int) -> MulTable:
    return MulTable(tuple(tuple(range(n)) for _ in range(n)))


def left_zero_semigroup(n: int) -> MulTable:
    return MulTable(tuple(tuple([x] * n) for x in range(n)))


def trivial_semigroup() -> MulTable:
    return MulTable(((0,),))


def cayley_embedding(table):
    """Faithful right-regular representation as a transformation semigroup.

    Element ``x`` acts by ``p -> p*x``.  Without an identity the action on
    the elements alone may be unfaithful, so one extra point ``n`` is
    adjoined and acts as a left identity (``n -> x``).  The generators of
    the result are the images of ``0..n-1`` in order, which keeps the
    element-to-transformation map recoverable.
    """
    from .transforms import Transformation, TransSgp

    t = require_associative(table).entries
    n = len(t)
    if identity_element(t) is not None:
        maps = [Transformation(tuple(t[p][x] for p in range(n))) for x in range(n)]
    else:
        maps = [Transformation(tuple(t[p][x] for p in range(n)) + (x,)) for x in range(n)]
    degree = maps[0].degree
    return TransSgp(degree, tuple(sorted(set(maps))), tuple(maps))


def _element_period(t, x: int) -> tuple[int, int]:
    # (index, period) of the monogenic subsemigroup generated by x
    seen = {}
    power, k = x, 1
    while power not in seen:
        seen[power] = k
        power = t[power][x]
        k += 1
    return seen[power], k - seen[power]


def _invariants(t) -> list[tuple]:
    n = len(t)
    idem = [t[x][x] == x for x in range(n)]
    out = []
    for x in range(n):
        is_reset = all(t[y][x] == x for y in range(n))
        is_left_zero = all(t[x][y] == x for y in range(n))
        right_ideal = len(set(t[x]))
        left_ideal = len({t[y][x] for y in range(n)})
        out.append((idem[x], is_reset, is_left_zero, _element_period(t, x),
                    right_ideal, left_ideal))
    return out


def are_isomorphic(a, b) -> dict[int, int] | None:
    """Search for a bijection ``pi`` with ``pi(xy) == pi(x)pi(y)``.

    Backtracking over element images; candidates must agree on a vector of
    isomorphism invariants, and every assignment is propagated through the
    products of already-assigned elements.
    """
    ta, tb = as_table(a).entries, as_table(b).entries
    n = len(ta)
    if n != len(tb):
        return None
    inv_a, inv_b = _invariants(ta), _invariants(tb)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]
    # most constrained elements first
    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))

    def assign(pi: dict, used: set, x: int, y: int) -> bool:
        queue = [(x, y)]
        while queue:
            u, v = queue.pop()
            if u in pi:
                if pi[u] != v:
                    return False
                continue
            if v in used or inv_b[v] != inv_a[u]:
                return False
            pi[u] = v
            used.add(v)
            for w in list(pi):
                pw = pi[w]
                queue.append((ta[u][w], tb[v][pw]))
                queue.append((ta[w][u], tb[pw][v]))
        return True

    def search(pi: dict, used: set) -> dict | None:
        if len(pi) == n:
            return pi
        x = next(e for e in order if e not in pi)
        for y in candidates[x]:
            if y in used:
                continue
            trial, trial_used = dict(pi), set(used)
            if assign(trial, trial_used, x, y):
                found = search(trial, trial_used)
                if found is not None:
                    return found
        return None

    pi = search({}, set())
    if pi is None:
        return None
    assert all(pi[ta[x][y]] == tb[pi[x]][pi[y]] for x, y in product(range(n), repeat=2))
    return dict(sorted(pi.items()))
