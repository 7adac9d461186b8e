import pytest

from solweights.algebra.groups import GenGroup, PermKind


def perm_from_cycles(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


@pytest.fixture
def s3():
    return GenGroup(PermKind(3), [perm_from_cycles(3, (0, 1)), perm_from_cycles(3, (0, 1, 2))])


@pytest.fixture
def gl32_perm():
    # GL_3(2) on the 7 points of the Fano plane
    return GenGroup(PermKind(7), [perm_from_cycles(7, (0, 1, 2, 3, 4, 5, 6)),
                                  perm_from_cycles(7, (1, 2, 4), (3, 6, 5)),
                                  perm_from_cycles(7, (1, 2), (3, 6))])


# acceptance lines, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}")
