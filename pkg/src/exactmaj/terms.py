"""Terms over a finite signature: construction, s-expression syntax and evaluation.

Terms are immutable trees. Leaves are variables ``x1, x2, ...`` (1-indexed),
inner nodes apply an operation symbol to a tuple of subterms. The textual form
is an s-expression, e.g. ``(meet x1 (join x2 x3))``.
"""
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Tuple, Union
import numpy as np
from .algebra import SignatureError


class TermSyntaxError(ValueError):
    """The text is not a well-formed term.

    Parameters
    ----------
    message : str
    position : int
        0-based character offset of the problem; ``len(text)`` for the end of input.

    """

    def __init__(self, message, position):
        super(TermSyntaxError, self).__init__(f"{message} at position {position}")
        self.position = position


class UnassignedVariableError(ValueError):
    """A variable of the term has no value in the assignment."""

    def __init__(self, index):
        super(UnassignedVariableError, self).__init__(f"Variable x{index} is not assigned")
        self.index = index


@dataclass(frozen=True)
class Var:
    """The variable ``x{index}``."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"Variables are numbered from 1, got x{self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    """The application of operation symbol `op` to `children`."""

    op: str
    children: Tuple["Term", ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        # witness terms share subterms heavily, so the hash is computed once
        object.__setattr__(self, "_hash", hash((self.op, self.children)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return format_term(self)


Term = Union[Var, App]


def variables(term):
    """Set of variable indices occurring in `term`."""
    found = set()
    seen = set()
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, Var):
            found.add(current.index)
        elif current not in seen:
            seen.add(current)
            stack.extend(current.children)
    return found


def max_variable(term):
    """Largest variable index in `term`, 0 if it has no variables."""
    return max(variables(term), default=0)


def term_size(term):
    """Number of nodes of `term` as a tree (shared subterms are counted each time)."""
    sizes = {}

    def _size(t):
        if isinstance(t, Var):
            return 1
        if t not in sizes:
            sizes[t] = 1 + sum(_size(child) for child in t.children)
        return sizes[t]

    return _size(term)


def term_depth(term):
    """Height of `term`; variables and constants have depth 0."""
    depths = {}

    def _depth(t):
        if isinstance(t, Var):
            return 0
        if t not in depths:
            depths[t] = 1 + max((_depth(child) for child in t.children), default=-1)
        return depths[t]

    return _depth(term)


def substitute(term, arguments):
    """Replace every variable ``x_i`` of `term` by ``arguments[i-1]``.

    This is how a term u is applied to a list of argument terms,
    e.g. ``substitute(u, [x1, x1, x2])`` is u(x1, x1, x2).

    Parameters
    ----------
    term : Term
    arguments : sequence of Term

    Returns
    -------
    Term

    """
    arguments = tuple(arguments)
    done = {}

    def _sub(t):
        if isinstance(t, Var):
            if t.index > len(arguments):
                raise UnassignedVariableError(t.index)
            return arguments[t.index - 1]
        if t not in done:
            done[t] = App(t.op, tuple(_sub(child) for child in t.children))
        return done[t]

    return _sub(term)


def fold_left(op, terms):
    """Left-nested binary application: ``(op (op t1 t2) t3) ...``.

    A single term is returned unchanged.
    """
    terms = list(terms)
    if not terms:
        raise ValueError(f"Cannot fold {op} over no terms")
    result = terms[0]
    for t in terms[1:]:
        result = App(op, (result, t))
    return result


# ---------------------------------------------------------------------------
# s-expressions

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([A-Za-z0-9_+*∧∨-]+)|(\S))")
_VARIABLE = re.compile(r"x([0-9]+)")


def _tokenize(text):
    position = 0
    tokens = []
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:  # only trailing whitespace is left
            break
        opening, closing, symbol, junk = match.groups()
        start = match.start(match.lastindex)
        if junk is not None:
            raise TermSyntaxError(f"Unexpected character {junk!r}", start)
        tokens.append((opening or closing or symbol, start))
        position = match.end()
    return tokens


def parse_term(text):
    """Parse an s-expression into a Term.

    Variables are ``x1, x2, ...``; applications are ``(op t1 ... tk)``; a bare
    operation symbol is the nullary application. Symbols are only resolved
    against a signature when the term is evaluated.

    Parameters
    ----------
    text : str

    Returns
    -------
    Term

    Raises
    ------
    TermSyntaxError
        With the position of the offending token.

    """
    tokens = _tokenize(text)
    end = len(text)

    def _leaf(symbol, position):
        variable = _VARIABLE.fullmatch(symbol)
        if variable is not None:
            index = int(variable.group(1))
            if index < 1:
                raise TermSyntaxError(f"Variables are numbered from 1, got {symbol}", position)
            return Var(index)
        return App(symbol, ())

    def _parse(i):
        if i >= len(tokens):
            raise TermSyntaxError("Unexpected end of input", end)
        token, position = tokens[i]
        if token == ")":
            raise TermSyntaxError("Unexpected ')'", position)
        if token != "(":
            return _leaf(token, position), i + 1
        if i + 1 >= len(tokens):
            raise TermSyntaxError("Unexpected end of input", end)
        op, op_position = tokens[i + 1]
        if op in "()" or _VARIABLE.fullmatch(op):
            raise TermSyntaxError(f"Expected an operation symbol, got {op!r}", op_position)
        children = []
        i += 2
        while True:
            if i >= len(tokens):
                raise TermSyntaxError("Unexpected end of input", end)
            if tokens[i][0] == ")":
                return App(op, tuple(children)), i + 1
            child, i = _parse(i)
            children.append(child)

    term, i = _parse(0)
    if i < len(tokens):
        raise TermSyntaxError(f"Unexpected trailing input {tokens[i][0]!r}", tokens[i][1])
    return term


def format_term(term):
    """Write `term` as an s-expression; ``parse_term(format_term(t)) == t``."""
    if isinstance(term, Var):
        return f"x{term.index}"
    parts = [term.op] + [format_term(child) for child in term.children]
    return "(" + " ".join(parts) + ")"


# ---------------------------------------------------------------------------
# evaluation


def _resolve(algebra, term):
    operation = algebra.operation(term.op)
    if len(term.children) != operation.arity:
        raise SignatureError(
            f"Operation {term.op} has arity {operation.arity}, applied to {len(term.children)} arguments",
            symbol=term.op,
        )
    return operation


def eval_term(algebra, term, assignment):
    """Evaluate `term` in `algebra` under a single assignment.

    Parameters
    ----------
    algebra : FiniteAlgebra
    term : Term
    assignment : sequence or Mapping
        A sequence gives ``x_i`` the value ``assignment[i-1]``; a mapping maps
        variable indices to elements.

    Returns
    -------
    int
        The value of the term.

    Raises
    ------
    SignatureError
        Unknown operation symbol or arity mismatch.
    UnassignedVariableError
        A variable of `term` has no value.

    """
    if isinstance(assignment, Mapping):
        lookup = dict(assignment)
    else:
        lookup = {i + 1: value for i, value in enumerate(assignment)}
    for index, value in lookup.items():
        if not 0 <= value < algebra.size:
            raise ValueError(
                f"Value {value} of x{index} is outside the universe 0...{algebra.size - 1}"
            )
    values = {}

    def _eval(t):
        if isinstance(t, Var):
            try:
                return lookup[t.index]
            except KeyError:
                raise UnassignedVariableError(t.index) from None
        if t not in values:
            operation = _resolve(algebra, t)
            values[t] = operation(*[_eval(child) for child in t.children])
        return values[t]

    return int(_eval(term))


def evaluate_columns(algebra, term, columns, length=None):
    """Evaluate `term` coordinatewise on whole columns of assignments.

    ``columns[i-1]`` holds the values of ``x_i`` across L assignments; the
    result holds the value of the term for each of them. This is also the
    coordinatewise action of a term on tuples of a power A^L.

    Parameters
    ----------
    algebra : FiniteAlgebra
    term : Term
    columns : sequence of np.ndarray
        Equally long integer arrays.
    length : int or None
        Number of assignments; only needed when `columns` is empty.

    Returns
    -------
    np.ndarray
        Integer array of length L.

    """
    columns = [np.asarray(column, dtype=np.intp) for column in columns]
    if length is None:
        if not columns:
            raise ValueError("length is required when no columns are given")
        length = len(columns[0])
    values = {}

    def _eval(t):
        if isinstance(t, Var):
            if t.index > len(columns):
                raise UnassignedVariableError(t.index)
            return columns[t.index - 1]
        if t not in values:
            operation = _resolve(algebra, t)
            values[t] = operation.apply_columns(
                *[_eval(child) for child in t.children], length=length
            )
        return values[t]

    return _eval(term)
