from fractions import Fraction

from hypothesis import strategies as st

from itinlab.permgroup import Perm


def perms(min_n=1, max_n=4):
    """Permutations of S_{n+1} for n in the given range."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 2)).map(lambda p: Perm(tuple(p))))


def perms_of(n):
    return st.permutations(range(1, n + 2)).map(lambda p: Perm(tuple(p)))


def positive_fracs(max_den=9, max_num=30):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


def fracs(lo=-20, hi=20, max_den=9):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
