import itertools
import random

import pytest

from compstruct.algebra import MulTable, cyclic_group, left_zero_semigroup, right_zero_semigroup
from compstruct.constructions import flip_flop

_acceptance_lines = []


def brute_force_subsemigroups(table):
    """Every nonempty subset closed under the table, by checking all 2^n subsets."""
    n = len(table)
    found = set()
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if all(mask >> table[x][y] & 1 for x in members for y in members):
            found.add(frozenset(members))
    return found


def next_closure_all(table):
    """All closed sets of the generated-subsemigroup closure operator (lectic order).

    Ganter's NextClosure; the empty set is included as the closure of nothing.
    """
    n = len(table)

    def close(a):
        a = set(a)
        changed = True
        while changed:
            changed = False
            for x, y in itertools.product(list(a), repeat=2):
                z = table[x][y]
                if z not in a:
                    a.add(z)
                    changed = True
        return frozenset(a)

    current = close(())
    out = [current]
    while len(current) < n:
        for i in range(n - 1, -1, -1):
            if i in current:
                continue
            candidate = close({x for x in current if x < i} | {i})
            if all(x in current for x in candidate if x < i):
                current = candidate
                out.append(current)
                break
    return out


def naive_associative(entries):
    n = len(entries)
    return all(entries[entries[x][y]][z] == entries[x][entries[y][z]]
               for x in range(n) for y in range(n) for z in range(n))


def gallery_tables():
    return {
        "flip-flop": flip_flop(),
        "C2": cyclic_group(2),
        "C3": cyclic_group(3),
        "right-zero-2": right_zero_semigroup(2),
        "left-zero-2": left_zero_semigroup(2),
        "trivial": MulTable(((0,),)),
    }


@pytest.fixture
def rng():
    return random.Random(20161122)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        _acceptance_lines.append(f"{verdict}  {name}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
