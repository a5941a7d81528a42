"""Tabulate searches and congruence properties over many algebras as DataFrames."""
from itertools import product
import pandas as pd
from ..algebra import FiniteAlgebra, Operation
from ..congruences import (
    check_distributive,
    check_modular,
    check_permutable,
    congruence_lattice,
)
from ..identities import describe_condition, table_is_exact_majority
from ..subpower import (
    DEFAULT_MAX_CLOSURE,
    DEFAULT_MAX_WORK,
    enumerate_term_operations,
    find_exact_majority_term,
)
from ..terms import term_size
from .gallery import get_algebra


def majority_survey(algebra, pairs, cap=DEFAULT_MAX_CLOSURE, max_work=DEFAULT_MAX_WORK):
    """Search exact-m-majority terms of `algebra` for several (n, m).

    Parameters
    ----------
    algebra : FiniteAlgebra
    pairs : iterable of (int, int)
        The (n, m) to search.
    cap : int
        Closure cap per search. Default: DEFAULT_MAX_CLOSURE
    max_work : int
        Argument combinations allowed per closure round. Default: DEFAULT_MAX_WORK

    Returns
    -------
    pd.DataFrame
        columns: "n", "m", "condition", "status", "closure_size",
        "coordinates", "witness_size" (None where not applicable)

    """
    rows = []
    for n, m in pairs:
        result = find_exact_majority_term(algebra, n, m, cap=cap, max_work=max_work)
        rows.append(
            {
                "n": n,
                "m": m,
                "condition": describe_condition(n, m),
                "status": result.status,
                "closure_size": getattr(result, "closure_size", None),
                "coordinates": getattr(result, "coordinates", None),
                "witness_size": term_size(result.term) if result.found else None,
            }
        )
    columns = ["n", "m", "condition", "status", "closure_size", "coordinates", "witness_size"]
    return pd.DataFrame(rows, columns=columns)


def binary_oracle_survey(n_max=3):
    """Compare the search with brute force on every binary operation on {0, 1}.

    For each of the 16 tables and every 1 <= m <= n <= n_max, the search
    result is compared with the existence of an exact-m-majority operation
    among all n-ary term operations.

    Returns
    -------
    pd.DataFrame
        columns: "table", "n", "m", "status", "oracle", "agree"

    """
    rows = []
    for table in product(range(2), repeat=4):
        algebra = FiniteAlgebra(
            name="binary:" + "".join(map(str, table)),
            size=2,
            operations=[Operation("f", 2, table, 2)],
        )
        for n in range(1, n_max + 1):
            term_operations = enumerate_term_operations(algebra, n)
            for m in range(1, n + 1):
                oracle = any(
                    table_is_exact_majority((t, 2), n, m) for t in term_operations
                )
                status = find_exact_majority_term(algebra, n, m).status
                rows.append(
                    {
                        "table": table,
                        "n": n,
                        "m": m,
                        "status": status,
                        "oracle": oracle,
                        "agree": (status == "FOUND") == oracle,
                    }
                )
    return pd.DataFrame(rows, columns=["table", "n", "m", "status", "oracle", "agree"])


def congruence_survey(names):
    """Size of Con(A) and its permutability, modularity and distributivity.

    Parameters
    ----------
    names : iterable of str
        Gallery names.

    Returns
    -------
    pd.DataFrame
        Indexed by name; columns "size", "congruences", "permutable",
        "modular", "distributive".

    """
    rows = []
    for name in names:
        lattice = congruence_lattice(get_algebra(name))
        rows.append(
            {
                "name": name,
                "size": lattice.algebra.size,
                "congruences": len(lattice),
                "permutable": check_permutable(lattice).passed,
                "modular": check_modular(lattice).passed,
                "distributive": check_distributive(lattice).passed,
            }
        )
    frame = pd.DataFrame(
        rows, columns=["name", "size", "congruences", "permutable", "modular", "distributive"]
    )
    return frame.set_index("name")
