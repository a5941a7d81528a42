"""A catalog of small algebras used as fixtures and examples.

Gallery names have the form ``family`` or ``family:p1:p2...`` with integer
parameters:

=====================================  ==============================================
``z_mod:<q>``                          cyclic group Z_q with ``+``, ``-`` and ``0``
``klein``                              Z2 x Z2, (a, b) encoded as 2a + b
``sym:3``                              symmetric group S3 with ``*``, ``inv``, ``e``
``chain:<n>``                          n-element chain with ``meet`` and ``join``
``n5``, ``m3``                         the two 5-element non-distributive lattices
``bare:<n>``                           n-element set without operations
``example4b:<size>:<n>:<m>:<anchor>``  set with a generic exact-m-majority operation
``v35_lattice_witness``                2-chain with the lattice 3-of-5 majority term
``v35_chain_witness``                  3-chain with the lattice 3-of-5 majority term
``v35_group_witness``                  Klein group with x1 + ... + x5
=====================================  ==============================================

The three ``v35_*`` algebras have the 5-ary operation ``u`` as their only
basic operation.
"""
from itertools import permutations
import numpy as np
from ..algebra import FiniteAlgebra, Operation
from ..constructions import (
    build_generic_majority_operation,
    build_group_sum_term,
    build_lattice_majority_term,
)
from ..identities import check_exact_majority, check_identity
from ..libs.aux_functions import assignment_columns
from ..terms import App, Var, evaluate_columns

x, y, z = Var(1), Var(2), Var(3)


class UnknownGalleryError(KeyError):
    """No gallery algebra of that name."""

    def __init__(self, name):
        super(UnknownGalleryError, self).__init__(name)
        self.name = name

    def __str__(self):
        return f"Unknown gallery algebra {self.name!r}, known families: {', '.join(GALLERY)}"


def cyclic_group(q):
    if q < 1:
        raise ValueError(f"Z_q needs q >= 1, got {q}")
    return FiniteAlgebra(
        name=f"z_mod:{q}",
        size=q,
        operations=[
            Operation.from_function("+", 2, q, lambda a, b: (a + b) % q),
            Operation.from_function("-", 1, q, lambda a: (-a) % q),
            Operation("0", 0, [0], q),
        ],
    )


def klein_group():
    return FiniteAlgebra(
        name="klein",
        size=4,
        operations=[
            Operation.from_function("+", 2, 4, lambda a, b: a ^ b),
            Operation.from_function("-", 1, 4, lambda a: a),
            Operation("0", 0, [0], 4),
        ],
    )


def symmetric_group_3():
    """S3 with elements the permutations of (0, 1, 2) in lexicographic order.

    The product is composition, ``(p * q)(i) = p(q(i))``.
    """
    elements = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(elements)}

    def _mul(a, b):
        p, q = elements[a], elements[b]
        return index[tuple(p[q[i]] for i in range(3))]

    def _inv(a):
        p = elements[a]
        return index[tuple(p.index(i) for i in range(3))]

    return FiniteAlgebra(
        name="sym:3",
        size=6,
        operations=[
            Operation.from_function("*", 2, 6, _mul),
            Operation.from_function("inv", 1, 6, _inv),
            Operation("e", 0, [index[(0, 1, 2)]], 6),
        ],
    )


def chain(n):
    if n < 1:
        raise ValueError(f"A chain needs n >= 1 elements, got {n}")
    return FiniteAlgebra(
        name=f"chain:{n}",
        size=n,
        operations=[
            Operation.from_function("meet", 2, n, min),
            Operation.from_function("join", 2, n, max),
        ],
    )


def lattice_from_order(name, size, covers):
    """The lattice with the order generated by a cover relation.

    Parameters
    ----------
    name : str
    size : int
    covers : list of (int, int)
        Pairs (a, b) with a covered by b.

    Returns
    -------
    FiniteAlgebra
        With operations "meet" and "join".

    Raises
    ------
    ValueError
        If the order is not a lattice.

    """
    leq = np.eye(size, dtype=bool)
    for a, b in covers:
        leq[a, b] = True
    for k in range(size):
        leq |= leq[:, k, None] & leq[None, k, :]
    if np.any(leq & leq.T & ~np.eye(size, dtype=bool)):
        raise ValueError(f"The cover relation of {name} has a cycle")

    def _bound(order, a, b):
        common = np.flatnonzero(order[:, a] & order[:, b])
        best = [c for c in common if order[common, c].all()]
        if len(best) != 1:
            raise ValueError(f"{name} is not a lattice: no unique bound for ({a}, {b})")
        return int(best[0])

    return FiniteAlgebra(
        name=name,
        size=size,
        operations=[
            Operation.from_function("meet", 2, size, lambda a, b: _bound(leq, a, b)),
            Operation.from_function("join", 2, size, lambda a, b: _bound(leq.T, a, b)),
        ],
    )


def n5():
    """Pentagon: 0 < a < b < 1 and 0 < c < 1, encoded 0, a, b, c, 1 = 0...4."""
    return lattice_from_order("n5", 5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def m3():
    """Diamond: 0 < a, b, c < 1, encoded 0, a, b, c, 1 = 0...4."""
    return lattice_from_order("m3", 5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def bare_set(n):
    if n < 1:
        raise ValueError(f"A set needs n >= 1 elements, got {n}")
    return FiniteAlgebra(name=f"bare:{n}", size=n)


def example4b(size, n, m, anchor):
    return FiniteAlgebra(
        name=f"example4b:{size}:{n}:{m}:{anchor}",
        size=size,
        operations=[build_generic_majority_operation(size, n, m, anchor)],
    )


def _term_operation(algebra, term, arity, name="u"):
    columns = assignment_columns(algebra.size, arity)
    table = evaluate_columns(algebra, term, list(columns))
    return Operation(name, arity, table, algebra.size)


def v35_lattice_witness():
    operation = _term_operation(chain(2), build_lattice_majority_term(5, 3), 5)
    return FiniteAlgebra(name="v35_lattice_witness", size=2, operations=[operation])


def v35_chain_witness():
    operation = _term_operation(chain(3), build_lattice_majority_term(5, 3), 5)
    return FiniteAlgebra(name="v35_chain_witness", size=3, operations=[operation])


def v35_group_witness():
    term, n = build_group_sum_term(h=1, q=2, k=1, m=3)
    operation = _term_operation(klein_group(), term, n)
    return FiniteAlgebra(name="v35_group_witness", size=4, operations=[operation])


def _symmetric_group(n):
    if n != 3:
        raise ValueError(f"Only sym:3 is available, got sym:{n}")
    return symmetric_group_3()


# family: (constructor, number of integer parameters)
GALLERY = {
    "z_mod": (cyclic_group, 1),
    "klein": (klein_group, 0),
    "sym": (_symmetric_group, 1),
    "chain": (chain, 1),
    "n5": (n5, 0),
    "m3": (m3, 0),
    "bare": (bare_set, 1),
    "example4b": (example4b, 4),
    "v35_lattice_witness": (v35_lattice_witness, 0),
    "v35_chain_witness": (v35_chain_witness, 0),
    "v35_group_witness": (v35_group_witness, 0),
}


def gallery_names():
    """Example names for every family, e.g. for listing in a help text."""
    return [
        "z_mod:2",
        "z_mod:3",
        "z_mod:4",
        "klein",
        "sym:3",
        "chain:2",
        "chain:3",
        "n5",
        "m3",
        "bare:4",
        "example4b:3:4:1:0",
        "example4b:3:6:2:0",
        "v35_lattice_witness",
        "v35_chain_witness",
        "v35_group_witness",
    ]


def is_gallery_name(name):
    return name.split(":")[0] in GALLERY


def get_algebra(name):
    """Build the gallery algebra called `name`.

    Raises
    ------
    UnknownGalleryError
        If the family is unknown.
    ValueError
        If the parameters are malformed or violate a side condition.

    """
    family, *parameters = name.split(":")
    try:
        constructor, num_parameters = GALLERY[family]
    except KeyError:
        raise UnknownGalleryError(name) from None
    if len(parameters) != num_parameters:
        raise ValueError(
            f"Gallery family {family} takes {num_parameters} parameters, got {len(parameters)} in {name!r}"
        )
    try:
        values = [int(p) for p in parameters]
    except ValueError:
        raise ValueError(f"Gallery parameters must be integers, got {name!r}") from None
    return constructor(*values)


# ---------------------------------------------------------------------------
# sanity checks


def check_group_axioms(algebra, mul="+", inv="-", unit="0", commutative=True):
    """Group axioms (and commutativity if asked) as identity verdicts."""
    e = App(unit)

    def _m(a, b):
        return App(mul, (a, b))

    verdicts = [
        check_identity(algebra, _m(_m(x, y), z), _m(x, _m(y, z)), 3, label="associative"),
        check_identity(algebra, _m(x, e), x, 1, label="right unit"),
        check_identity(algebra, _m(e, x), x, 1, label="left unit"),
        check_identity(algebra, _m(x, App(inv, (x,))), e, 1, label="inverse"),
    ]
    if commutative:
        verdicts.append(check_identity(algebra, _m(x, y), _m(y, x), 2, label="commutative"))
    return tuple(verdicts)


def check_lattice_axioms(algebra, meet="meet", join="join"):
    """Lattice axioms as identity verdicts."""
    verdicts = []
    for op, dual in ((meet, join), (join, meet)):
        verdicts += [
            check_identity(
                algebra, App(op, (x, y)), App(op, (y, x)), 2, label=f"{op} commutative"
            ),
            check_identity(
                algebra,
                App(op, (App(op, (x, y)), z)),
                App(op, (x, App(op, (y, z)))),
                3,
                label=f"{op} associative",
            ),
            check_identity(
                algebra, App(op, (x, App(dual, (x, y)))), x, 2, label=f"{op} absorbs {dual}"
            ),
        ]
    return tuple(verdicts)


def sanity_check(name):
    """The documented checks of a gallery algebra.

    Returns
    -------
    tuple
        Verdicts (IdentityVerdict or MajorityVerdict); all of them pass for
        a correctly built gallery algebra.

    """
    algebra = get_algebra(name)
    family = name.split(":")[0]
    if family in ("z_mod", "klein"):
        return check_group_axioms(algebra)
    if family == "sym":
        return check_group_axioms(algebra, mul="*", inv="inv", unit="e", commutative=False)
    if family in ("chain", "n5", "m3"):
        return check_lattice_axioms(algebra)
    if family == "example4b":
        _, n, m, _ = (int(p) for p in name.split(":")[1:])
        term = App("u", tuple(Var(i) for i in range(1, n + 1)))
        return (check_exact_majority(algebra, term, n, m),)
    if family.startswith("v35"):
        term = App("u", tuple(Var(i) for i in range(1, 6)))
        return (check_exact_majority(algebra, term, 5, 3),)
    return ()
