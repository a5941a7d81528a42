"""Terms derived from an exact-m-majority term, and explicit majority-type terms.

Given an n-ary exact-m-majority term u, the functions here build the terms
whose existence u implies: a Maltsev term for m < n/2, collapsed terms of
smaller arity, near-unanimity terms and the directed Gumm terms for m > n/2.
They also build concrete exact-majority terms for lattices and abelian groups
and an exact-majority operation on an arbitrary set.

Derived terms are u applied to variables among x1, x2, x3 (or x1...x_{n/k}),
with the argument slots filled left to right in blocks.
"""
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple
import numpy as np
from .algebra import Operation
from .identities import check_identity, check_m_majority, validate_arity
from .libs.aux_functions import assignment_columns, sorted_subsets
from .terms import Var, fold_left, substitute

x, y, z = Var(1), Var(2), Var(3)


class SideConditionError(ValueError):
    """The arithmetic side condition of a construction does not hold."""


class PreconditionError(ValueError):
    """The input term does not satisfy the condition a construction needs.

    Parameters
    ----------
    message : str
    verdict : MajorityVerdict
        The failed check.

    """

    def __init__(self, message, verdict):
        super(PreconditionError, self).__init__(f"{message}: {verdict.describe()}")
        self.verdict = verdict


@dataclass(frozen=True)
class ConstructionParams:
    """Arity n, majority count m and the rule specific parameters of a construction.

    The ``require_*`` methods check the side condition of one rule and raise
    SideConditionError with the arithmetic spelled out.
    """

    n: int
    m: int
    k: Optional[int] = None
    h: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.m <= self.n:
            raise SideConditionError(f"Need 1 <= m <= n, got n={self.n}, m={self.m}")

    def require_below_half(self):
        if not 2 * self.m < self.n:
            raise SideConditionError(
                f"Need m < n/2, got 2*m = {2 * self.m} >= n = {self.n}"
            )

    def require_above_half(self):
        if not 2 * self.m > self.n:
            raise SideConditionError(
                f"Need m > n/2, got 2*m = {2 * self.m} <= n = {self.n}"
            )

    def require_k_divides(self):
        if self.k is None or self.k < 1:
            raise SideConditionError(f"Need k >= 1, got k={self.k}")
        if self.n % self.k or self.m % self.k:
            raise SideConditionError(
                f"Need k | m and k | n, got m mod k = {self.m % self.k}, n mod k = {self.n % self.k} for k={self.k}"
            )

    def require_group_congruence(self):
        if self.q is None or self.q < 1 or self.h is None or self.h < 1:
            raise SideConditionError(f"Need h >= 1 and q >= 1, got h={self.h}, q={self.q}")
        if (self.h * self.m) % self.q != 1 % self.q:
            raise SideConditionError(
                f"h*m = {self.h * self.m} is {(self.h * self.m) % self.q}, not 1 (mod {self.q})"
            )
        if self.k is None or self.n != self.m + self.k * self.q:
            raise SideConditionError(
                f"Need n = m + k*q, got n = {self.n} and m + k*q = {self.m} + {self.k}*{self.q}"
            )


def _apply_to_slots(u, n, blocks):
    """u with its argument slots filled by consecutive blocks (variable, count)."""
    validate_arity(u, n)
    arguments = [variable for variable, count in blocks for _ in range(count)]
    if len(arguments) != n:
        raise ValueError(f"Slot blocks fill {len(arguments)} arguments, u has {n}")
    return substitute(u, arguments)


def derive_maltsev(u, n, m):
    """Maltsev term t(x, y, z) = u(x^m, y^(n-2m), z^m) from an exact-m-majority term, m < n/2.

    Parameters
    ----------
    u : Term
        n-ary exact-m-majority term.
    n, m : int

    Returns
    -------
    Term
        Ternary term in x1, x2, x3.

    """
    ConstructionParams(n, m).require_below_half()
    return _apply_to_slots(u, n, [(x, m), (y, n - 2 * m), (z, m)])


def check_maltsev_identities(algebra, t):
    """Check t(x, z, z) = x and t(x, x, z) = z exhaustively.

    Returns
    -------
    tuple of IdentityVerdict
        One verdict per identity, in this order.

    """
    validate_arity(t, 3)
    return (
        check_identity(algebra, substitute(t, [x, y, y]), x, 2, label="t(x,z,z)=x"),
        check_identity(algebra, substitute(t, [x, x, y]), y, 2, label="t(x,x,z)=z"),
    )


def build_lattice_majority_term(n, m, meet="meet", join="join"):
    """The lattice term: meet over all m-subsets J of the join of the x_i, i in J.

    Both are nested to the left and J runs through the m-subsets in
    lexicographic order. For m > n/2 this is an m-majority term in every lattice.

    Parameters
    ----------
    n, m : int
        n/2 < m <= n.
    meet, join : str
        Operation symbols. Default: "meet", "join"

    Returns
    -------
    Term

    """
    ConstructionParams(n, m).require_above_half()
    blocks = [fold_left(join, [Var(i) for i in J]) for J in sorted_subsets(n, m)]
    return fold_left(meet, blocks)


def derive_collapse(u, n, m, k):
    """Identify consecutive blocks of k variables: t(x1, ..., x_{n/k}) = u(x1^k, ..., x_{n/k}^k).

    If u is an exact-m-majority term and k divides m and n, then t is an
    (n/k)-ary exact-(m/k)-majority term.
    """
    ConstructionParams(n, m, k=k).require_k_divides()
    return _apply_to_slots(u, n, [(Var(i), k) for i in range(1, n // k + 1)])


def derive_near_unanimity(u, n, m):
    """The collapse with k = n - m, which is an (n/k)-ary near-unanimity term.

    Raises
    ------
    SideConditionError
        If n - m does not divide n.

    """
    if m == n:
        raise SideConditionError(f"Need m < n, got m = n = {n}")
    k = n - m
    if n % k:
        raise SideConditionError(f"Need (n-m) | n, got n mod (n-m) = {n % k} for n-m = {k}")
    if n // k == 2:
        warnings.warn(
            f"n={n}, m={m} gives a binary near-unanimity term, which exists only in trivial algebras"
        )
    return derive_collapse(u, n, m, k)


def derive_nu_from_nonexact(u, n, m, algebra=None):
    """Near-unanimity term v(x1, ..., x_{m+1}) = u(x1, ..., xm, x_{m+1}, ..., x_{m+1}).

    Parameters
    ----------
    u : Term
        n-ary (non-exact) m-majority term.
    n, m : int
        n/2 < m < n.
    algebra : FiniteAlgebra or None
        If given, u is first checked to be an m-majority term of it.
        Default: None

    Returns
    -------
    Term
        (m+1)-ary term.

    Raises
    ------
    PreconditionError
        If `algebra` is given and u fails the m-majority check there.

    """
    params = ConstructionParams(n, m)
    params.require_above_half()
    if m == n:
        raise SideConditionError(f"Need m < n, got m = n = {n}")
    if algebra is not None:
        verdict = check_m_majority(algebra, u, n, m)
        if not verdict:
            raise PreconditionError(f"u is not a {m}-majority term of {algebra.name}", verdict)
    return _apply_to_slots(
        u, n, [(Var(i), 1) for i in range(1, m + 1)] + [(Var(m + 1), n - m)]
    )


@dataclass(frozen=True)
class GummSystem:
    """Directed Gumm terms d_1, ..., d_{l-1}, q obtained from an exact-m-majority term.

    Attributes
    ----------
    n, m : int
    k : int
        n - m
    h : int
        n mod k
    ell : int
        n // k, at least 2.
    d : tuple of Term
        d_1, ..., d_{ell-1}, ternary.
    q : Term
        Ternary.

    """

    n: int
    m: int
    k: int
    h: int
    ell: int
    d: Tuple[object, ...]
    q: object

    @property
    def terms(self):
        """All terms with their names, in order d1, d2, ..., q."""
        named = [(f"d{i}", term) for i, term in enumerate(self.d, start=1)]
        return named + [("q", self.q)]


def derive_gumm(u, n, m):
    """The directed Gumm terms of an exact-m-majority term with m > n/2.

    With k = n - m, h = n mod k and l = n // k::

        d_i(x, y, z) = u(x^h, x^k ... x^k, y^k, z^k ... z^k)   (l-1-i blocks x^k, i blocks z^k)
        q(x, y, z)   = u(x^h, y^(k-h), z^h, z^k ... z^k)       (l-1 blocks z^k)

    Blocks of length 0 are left out, so h = 0 needs no special treatment.

    Returns
    -------
    GummSystem

    """
    params = ConstructionParams(n, m)
    params.require_above_half()
    if m == n:
        raise SideConditionError(f"Need m < n, got m = n = {n}")
    k = n - m
    h = n % k
    ell = n // k
    d = tuple(
        _apply_to_slots(u, n, [(x, h), (x, k * (ell - 1 - i)), (y, k), (z, k * i)])
        for i in range(1, ell)
    )
    q = _apply_to_slots(u, n, [(x, h), (y, k - h), (z, h), (z, k * (ell - 1))])
    return GummSystem(n=n, m=m, k=k, h=h, ell=ell, d=d, q=q)


def check_gumm_identities(algebra, system):
    """Check the directed Gumm identities of `system` on `algebra` exhaustively.

    The identities are d_i(x,y,x) = x for all i, d_1(x,x,z) = x,
    d_i(x,z,z) = d_{i+1}(x,x,z), d_{l-1}(x,z,z) = q(x,z,z) and q(x,x,z) = z.

    Returns
    -------
    tuple of IdentityVerdict
        In the order listed above.

    """
    # two variables suffice: x1 for x, x2 for whichever of y, z occurs
    def _at(term, first, second, third):
        return substitute(term, [first, second, third])

    d, q = system.d, system.q
    verdicts = []
    for i, d_i in enumerate(d, start=1):
        verdicts.append(
            check_identity(algebra, _at(d_i, x, y, x), x, 2, label=f"d{i}(x,y,x)=x")
        )
    verdicts.append(check_identity(algebra, _at(d[0], x, x, y), x, 2, label="d1(x,x,z)=x"))
    for i in range(1, len(d)):
        verdicts.append(
            check_identity(
                algebra,
                _at(d[i - 1], x, y, y),
                _at(d[i], x, x, y),
                2,
                label=f"d{i}(x,z,z)=d{i + 1}(x,x,z)",
            )
        )
    verdicts.append(
        check_identity(
            algebra,
            _at(d[-1], x, y, y),
            _at(q, x, y, y),
            2,
            label=f"d{len(d)}(x,z,z)=q(x,z,z)",
        )
    )
    verdicts.append(check_identity(algebra, _at(q, x, x, y), y, 2, label="q(x,x,z)=z"))
    return tuple(verdicts)


def build_group_sum_term(h, q, k, m, plus="+"):
    """The term h*x1 + h*x2 + ... + h*xn with n = m + k*q.

    It is an exact-m-majority term in every abelian group of exponent dividing
    q when h*m = 1 (mod q). Sums are nested to the left, h*x is written as h
    copies of x.

    Parameters
    ----------
    h, q, k, m : int
    plus : str
        Symbol of the group operation. Default: "+"

    Returns
    -------
    (Term, int)
        The term and its arity n.

    """
    n = m + k * q
    ConstructionParams(n, m, k=k, h=h, q=q).require_group_congruence()
    summands = [Var(i) for i in range(1, n + 1) for _ in range(h)]
    return fold_left(plus, summands), n


def has_exponent_dividing(algebra, q, plus="+"):
    """Whether q*x + y = y holds, i.e. the group exponent divides q."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    lhs = fold_left(plus, [x] * q + [y])
    return check_identity(algebra, lhs, y, 2, label=f"{q}x+y=y").passed


def build_generic_majority_operation(size, n, m, anchor, name="u"):
    """An n-ary exact-m-majority operation on the set 0...size-1.

    u(a1, ..., an) is b if exactly two values occur and b occurs exactly m
    times, it is b if all arguments equal b, and `anchor` otherwise.

    Parameters
    ----------
    size, n, m : int
    anchor : int
        The fallback value.
    name : str
        Operation symbol. Default: "u"

    Returns
    -------
    Operation

    Raises
    ------
    SideConditionError
        If m = n/2 on a set with more than one element, where the first rule
        is ambiguous.

    """
    ConstructionParams(n, m)
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    if not 0 <= anchor < size:
        raise ValueError(f"anchor {anchor} is outside 0...{size - 1}")
    if 2 * m == n and size >= 2:
        raise SideConditionError(f"Need m != n/2, got 2*m = n = {n}")
    columns = assignment_columns(size, n)
    counts = np.stack([(columns == b).sum(axis=0) for b in range(size)])
    distinct = (counts > 0).sum(axis=0)
    exact = counts == m
    table = np.full(columns.shape[1], anchor, dtype=np.intp)
    two_values = (distinct == 2) & exact.any(axis=0)
    table[two_values] = exact.argmax(axis=0)[two_values]
    constant = distinct == 1
    table[constant] = columns[0][constant]
    return Operation(name, n, table, size)
