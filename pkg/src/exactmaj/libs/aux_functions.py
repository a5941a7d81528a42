"""Small combinatorial helpers shared by the algebra modules."""
import numpy as np
from itertools import combinations


def element_dtype(size):
    """Return the smallest unsigned numpy dtype that can hold elements 0...size-1.

    Parameters
    ----------
    size : int
        Size of the universe.

    Returns
    -------
    np.dtype

    """
    if size <= 2**8:
        return np.dtype(np.uint8)
    elif size <= 2**16:
        return np.dtype(np.uint16)
    else:
        return np.dtype(np.uint32)


def assignment_columns(size, num_variables):
    """All assignments of `num_variables` variables over 0...size-1, as columns.

    Assignments are listed in lexicographic order, the first variable varies
    slowest. Row ``i`` of the result holds the values of variable ``x_{i+1}``.

    Parameters
    ----------
    size : int
        Size of the universe.
    num_variables : int
        Number of variables.

    Returns
    -------
    np.ndarray
        Shape (num_variables, size**num_variables).

    """
    if num_variables == 0:
        return np.zeros((0, 1), dtype=np.intp)
    grid = np.indices((size,) * num_variables, dtype=np.intp)
    return grid.reshape(num_variables, -1)


def sorted_subsets(n, m):
    """The m-subsets of {1, ..., n} as sorted tuples in lexicographic order."""
    return list(combinations(range(1, n + 1), m))


def canonical_labels(labels):
    """Relabel a block labelling so every element points to the least element of its block.

    Parameters
    ----------
    labels : sequence of hashable
        ``labels[x] == labels[y]`` iff x and y lie in the same block.

    Returns
    -------
    tuple of int

    """
    first_seen = {}
    out = []
    for element, label in enumerate(labels):
        out.append(first_seen.setdefault(label, element))
    return tuple(out)


def set_partitions(size):
    """Generate all partitions of 0...size-1 in canonical label form.

    The partitions are produced as restricted growth strings, so the order is
    deterministic. There are Bell(size) of them.

    Parameters
    ----------
    size : int

    Yields
    ------
    tuple of int
        For each element, the least element of its block.

    """
    if size == 0:
        yield ()
        return
    growth = [0] * size

    def _extend(position, num_blocks):
        if position == size:
            yield canonical_labels(growth)
            return
        for block in range(num_blocks + 1):
            growth[position] = block
            yield from _extend(position + 1, max(num_blocks, block + 1))

    growth[0] = 0
    yield from _extend(1, 1)
