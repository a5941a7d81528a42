"""Plain text files describing finite algebras.

The format is line oriented, ``#`` starts a comment::

    algebra z2
    size 2
    op + 2
    0 1
    1 0

After the header each operation is ``op <name> <arity>`` followed by its
size**arity table entries in lexicographic argument order (last argument
fastest). Entries may be spread over lines freely; `dumps` writes ``size``
entries per line and a constant on a line of its own.
"""
import re
from ..algebra import FiniteAlgebra, Operation

_NAME = re.compile(r"[^\s#]+")


class AlgebraFileError(ValueError):
    """A malformed algebra file.

    Parameters
    ----------
    message : str
    line : int
        1-based line number of the problem.

    """

    def __init__(self, message, line):
        super(AlgebraFileError, self).__init__(f"line {line}: {message}")
        self.line = line


def dumps(algebra):
    """The algebra file text of `algebra`.

    Raises
    ------
    ValueError
        If the algebra or one of its operations has a name that could not be
        read back (empty, or containing whitespace or ``#``).

    """
    for name in [algebra.name] + [operation.name for operation in algebra.operations]:
        if not _NAME.fullmatch(str(name)):
            raise ValueError(f"Name {name!r} cannot be written to an algebra file")
    lines = [f"algebra {algebra.name}", f"size {algebra.size}"]
    for operation in algebra.operations:
        lines.append(f"op {operation.name} {operation.arity}")
        table = operation.flat_table
        width = algebra.size if operation.arity else 1
        for start in range(0, len(table), width):
            lines.append(" ".join(str(v) for v in table[start : start + width]))
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for number, line in enumerate(text.splitlines(), start=1):
        fields = line.split("#", 1)[0].split()
        if fields:
            yield number, fields


def _header(lines, keyword, last_line):
    try:
        number, fields = next(lines)
    except StopIteration:
        raise AlgebraFileError(
            f"Expected '{keyword} ...', got end of file", last_line
        ) from None
    if fields[0] != keyword or len(fields) != 2:
        raise AlgebraFileError(f"Expected '{keyword} <value>', got {' '.join(fields)!r}", number)
    return number, fields[1]


def _integer(token, number, what):
    try:
        return int(token)
    except ValueError:
        raise AlgebraFileError(f"{what} must be an integer, got {token!r}", number) from None


def loads(text):
    """Parse algebra file text.

    Returns
    -------
    FiniteAlgebra

    Raises
    ------
    AlgebraFileError
        With the line number of the first problem.

    """
    lines = _content_lines(text)
    last_line = max(1, len(text.splitlines()))
    _, name = _header(lines, "algebra", last_line)
    number, size = _header(lines, "size", last_line)
    size = _integer(size, number, "size")
    if size < 1:
        raise AlgebraFileError(f"size must be positive, got {size}", number)
    operations = []
    pending = None  # (name, arity, header line, entries so far)

    def _finish(current, at_line):
        op_name, arity, header_line, entries = current
        if len(entries) != size**arity:
            raise AlgebraFileError(
                f"Operation {op_name} of arity {arity} needs {size**arity} entries, got {len(entries)}",
                at_line,
            )
        if any(o.name == op_name for o in operations):
            raise AlgebraFileError(f"Operation {op_name} is defined twice", header_line)
        operations.append(Operation(op_name, arity, entries, size))

    for number, fields in lines:
        if fields[0] == "op":
            if pending is not None:
                _finish(pending, number)
            if len(fields) != 3:
                raise AlgebraFileError(
                    f"Expected 'op <name> <arity>', got {' '.join(fields)!r}", number
                )
            arity = _integer(fields[2], number, "arity")
            if arity < 0:
                raise AlgebraFileError(f"arity must not be negative, got {arity}", number)
            pending = (fields[1], arity, number, [])
            continue
        if pending is None:
            raise AlgebraFileError(f"Expected 'op <name> <arity>', got {' '.join(fields)!r}", number)
        entries = pending[3]
        for token in fields:
            value = _integer(token, number, "table entry")
            if not 0 <= value < size:
                raise AlgebraFileError(
                    f"table entry {value} is outside the universe 0...{size - 1}", number
                )
            if len(entries) == size ** pending[1]:
                raise AlgebraFileError(
                    f"Operation {pending[0]} has more than {size ** pending[1]} entries", number
                )
            entries.append(value)
    if pending is not None:
        _finish(pending, number)
    return FiniteAlgebra(name=name, size=size, operations=operations)


def load_algebra(path):
    """Read an algebra file."""
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())


def save_algebra(algebra, path):
    """Write `algebra` to `path` in the algebra file format."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(algebra))
