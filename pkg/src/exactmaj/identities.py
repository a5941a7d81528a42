"""Exhaustive checking of identities and of exact-m-majority conditions.

Every check here enumerates all relevant assignments of a finite algebra and
evaluates both sides coordinatewise with numpy, so a whole identity is one
vectorized evaluation. Counterexamples are always the first ones in a fixed
order, which makes the verdicts reproducible.
"""
from dataclasses import dataclass
from math import comb
from typing import Optional, Tuple
import numpy as np
from .algebra import Operation
from .libs.aux_functions import assignment_columns, sorted_subsets
from .terms import Var, evaluate_columns, max_variable, substitute


@dataclass(frozen=True)
class MajorityVerdict:
    """Outcome of an exact (or non-exact) m-majority check.

    On failure the arguments are: position ``i`` gets `a` if ``i`` is in
    `pattern`, `b` otherwise. Evaluating the term there gives `got` while the
    condition demands `want` (which is always `a`).

    Attributes
    ----------
    passed : bool
    n : int
    m : int
    pattern : tuple of int or None
        The set J of positions holding `a`, sorted, 1-indexed.
    a, b, got, want : int or None

    """

    passed: bool
    n: int
    m: int
    pattern: Optional[Tuple[int, ...]] = None
    a: Optional[int] = None
    b: Optional[int] = None
    got: Optional[int] = None
    want: Optional[int] = None

    def __bool__(self):
        return self.passed

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    @property
    def arguments(self):
        """The argument tuple of the counterexample, None if the check passed."""
        if self.passed:
            return None
        return tuple(self.a if i in self.pattern else self.b for i in range(1, self.n + 1))

    def describe(self):
        if self.passed:
            return "pass"
        return (
            "J={" + ",".join(map(str, self.pattern)) + "}"
            + f" a={self.a} b={self.b} got={self.got} want={self.want}"
        )


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of checking ``lhs = rhs`` under all assignments.

    Attributes
    ----------
    passed : bool
    label : str
        Name of the identity, used in reports.
    assignment : tuple of int or None
        First failing assignment (values of x1, x2, ...).
    lhs_value, rhs_value : int or None
        Values of both sides at `assignment`.

    """

    passed: bool
    label: str = ""
    assignment: Optional[Tuple[int, ...]] = None
    lhs_value: Optional[int] = None
    rhs_value: Optional[int] = None

    def __bool__(self):
        return self.passed

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def describe(self):
        if self.passed:
            return "pass"
        values = ",".join(map(str, self.assignment))
        return f"({values}) gives {self.lhs_value} != {self.rhs_value}"


def equation_rows(n, m):
    """Number of equations defining an n-ary exact-m-majority term (patterns J)."""
    return comb(n, m)


def describe_condition(n, m):
    """Name the condition "u is an n-ary exact-m-majority term" by its usual name.

    Parameters
    ----------
    n, m : int
        With 1 <= m <= n.

    Returns
    -------
    str
        One of "trivial-only", "idempotent", "majority", "minority",
        "near-unanimity", "lone-dissent", "exact-majority".

    """
    _validate_exact(n, m)
    if 2 * m == n:
        return "trivial-only"
    if m == n:
        return "idempotent"
    if (n, m) == (3, 2):
        return "majority"
    if (n, m) == (3, 1):
        return "minority"
    if m == n - 1:
        return "near-unanimity"
    if m == 1:
        return "lone-dissent"
    return "exact-majority"


def _validate_exact(n, m):
    if n < 1 or not 1 <= m <= n:
        raise ValueError(f"Need 1 <= m <= n, got n={n}, m={m}")


def validate_arity(term, n):
    highest = max_variable(term)
    if highest > n:
        raise ValueError(f"Term uses x{highest}, but only x1...x{n} are allowed")


def _normalize_patterns(patterns, n, sizes):
    normalized = set()
    for pattern in patterns:
        pattern = tuple(sorted(pattern))
        if len(set(pattern)) != len(pattern) or any(not 1 <= i <= n for i in pattern):
            raise ValueError(f"Pattern {pattern} is not a set of positions in 1...{n}")
        if len(pattern) not in sizes:
            raise ValueError(f"Pattern {pattern} has the wrong number of positions")
        normalized.add(pattern)
    return sorted(normalized)


def pattern_columns(size, n, patterns):
    """Argument columns for all (pattern, a, b) instances.

    Instances are ordered by pattern (in the given order), then by (a, b)
    lexicographically. Position ``j`` holds `a` if ``j`` is in the pattern and
    `b` otherwise.

    Parameters
    ----------
    size : int
    n : int
    patterns : list of tuple of int

    Returns
    -------
    columns : list of np.ndarray
        n columns of length len(patterns) * size**2.
    a_values, b_values : np.ndarray
        The values of a and b for each instance.

    """
    pairs_a = np.repeat(np.arange(size, dtype=np.intp), size)
    pairs_b = np.tile(np.arange(size, dtype=np.intp), size)
    membership = np.array(
        [[j in pattern for j in range(1, n + 1)] for pattern in patterns], dtype=bool
    ).reshape(len(patterns), n)
    columns = [
        np.where(membership[:, j - 1, None], pairs_a[None, :], pairs_b[None, :]).ravel()
        for j in range(1, n + 1)
    ]
    return columns, np.tile(pairs_a, len(patterns)), np.tile(pairs_b, len(patterns))


def _first_pattern_failure(size, n, m, patterns, got, a_values, b_values):
    bad = np.flatnonzero(got != a_values)
    if bad.size == 0:
        return MajorityVerdict(passed=True, n=n, m=m)
    i = int(bad[0])
    return MajorityVerdict(
        passed=False,
        n=n,
        m=m,
        pattern=patterns[i // (size * size)],
        a=int(a_values[i]),
        b=int(b_values[i]),
        got=int(got[i]),
        want=int(a_values[i]),
    )


def _check_patterns(algebra, term, n, m, patterns):
    if not patterns:
        return MajorityVerdict(passed=True, n=n, m=m)
    columns, a_values, b_values = pattern_columns(algebra.size, n, patterns)
    got = evaluate_columns(algebra, term, columns)
    return _first_pattern_failure(algebra.size, n, m, patterns, got, a_values, b_values)


def check_exact_majority(algebra, term, n, m, patterns=None):
    """Check that `term` is an n-ary exact-m-majority term of `algebra`.

    For every m-subset J of {1...n} and every (a, b), the term evaluated with
    a at the positions in J and b elsewhere must give a. Pairs with a = b are
    included, so idempotence is checked as well.

    Parameters
    ----------
    algebra : FiniteAlgebra
    term : Term
        Uses only variables among x1...xn.
    n, m : int
        1 <= m <= n.
    patterns : list of sets of int or None
        Only check these m-subsets J. Default: None (all of them).

    Returns
    -------
    MajorityVerdict
        The first counterexample in the order J (lexicographic), then (a, b).

    """
    _validate_exact(n, m)
    validate_arity(term, n)
    if patterns is None:
        patterns = sorted_subsets(n, m)
    else:
        patterns = _normalize_patterns(patterns, n, sizes={m})
    return _check_patterns(algebra, term, n, m, patterns)


def check_m_majority(algebra, term, n, m):
    """Check that `term` is a (non-exact) n-ary m-majority term of `algebra`.

    Like check_exact_majority, but for every J with at least m elements.
    The notion only makes sense for n/2 < m <= n.

    Parameters
    ----------
    algebra : FiniteAlgebra
    term : Term
    n, m : int

    Returns
    -------
    MajorityVerdict
        First counterexample with J ordered lexicographically as sorted tuples.

    """
    if not (2 * m > n and m <= n):
        raise ValueError(f"m-majority terms need n/2 < m <= n, got n={n}, m={m}")
    validate_arity(term, n)
    patterns = sorted(
        pattern for size in range(m, n + 1) for pattern in sorted_subsets(n, size)
    )
    return _check_patterns(algebra, term, n, m, patterns)


def check_near_unanimity(algebra, term, n):
    """Check that `term` is an n-ary near-unanimity term (exact-(n-1)-majority)."""
    if n < 2:
        raise ValueError(f"Near-unanimity terms need n >= 2, got n={n}")
    return check_exact_majority(algebra, term, n, n - 1)


def check_identity(algebra, lhs, rhs, num_variables, label=""):
    """Check ``lhs = rhs`` for all assignments of x1...x_num_variables.

    Parameters
    ----------
    algebra : FiniteAlgebra
    lhs, rhs : Term
    num_variables : int
    label : str
        Optional name of the identity, carried into the verdict.

    Returns
    -------
    IdentityVerdict
        The first failing assignment in lexicographic order (x1 slowest).

    """
    validate_arity(lhs, num_variables)
    validate_arity(rhs, num_variables)
    columns = assignment_columns(algebra.size, num_variables)
    length = columns.shape[1]
    left = evaluate_columns(algebra, lhs, list(columns), length=length)
    right = evaluate_columns(algebra, rhs, list(columns), length=length)
    bad = np.flatnonzero(left != right)
    if bad.size == 0:
        return IdentityVerdict(passed=True, label=label)
    i = int(bad[0])
    return IdentityVerdict(
        passed=False,
        label=label,
        assignment=tuple(int(v) for v in columns[:, i]),
        lhs_value=int(left[i]),
        rhs_value=int(right[i]),
    )


def check_idempotent(algebra, term, n):
    """Check ``u(x, ..., x) = x``; equivalent to being exact-n-majority."""
    validate_arity(term, n)
    diagonal = substitute(term, [Var(1)] * n) if n else term
    return check_identity(algebra, diagonal, Var(1), 1, label="idempotent")


def table_is_exact_majority(operation, n, m):
    """Whether an n-ary operation table satisfies the exact-m-majority equations.

    Parameters
    ----------
    operation : Operation or tuple
        An n-ary Operation, or its flat table together with the universe size
        as ``(table, size)``.
    n, m : int

    Returns
    -------
    bool

    """
    if not isinstance(operation, Operation):
        table, size = operation
        operation = Operation("t", n, table, size)
    _validate_exact(n, m)
    if operation.arity != n:
        raise ValueError(f"Expected an {n}-ary operation, got arity {operation.arity}")
    columns, a_values, _ = pattern_columns(operation.size, n, sorted_subsets(n, m))
    return bool(np.array_equal(operation.apply_columns(*columns), a_values))
