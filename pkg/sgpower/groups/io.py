"""Plain-text storage of subgroups"""

# License: MIT
#
# Format: a header line "n=<n> size=<size> class=<class>" followed by one
# element per line written as '+'/'-' characters, identity first.

import numpy as np

from .signflip import classify, _format_signs


def format_subgroup(subgroup):
    """
    Serializes a subgroup to text.

    Parameters
    ----------
    subgroup : Subgroup

    Returns
    -------
    text : str
        Header line and one line per element, newline terminated.
    """
    lines = [f"n={subgroup.n} size={subgroup.size} class={subgroup.kind}"]
    lines.extend(_format_signs(row) for row in subgroup.elements)
    return "\n".join(lines) + "\n"


def parse_subgroup(text, iota=None):
    """
    Parses text written by :func:`format_subgroup`.

    The elements are verified again with :func:`classify`, and the header
    must agree with what is found.

    Parameters
    ----------
    text : str

    iota : array-like, shape (n,), optional (default canonical)

    Returns
    -------
    subgroup : Subgroup
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("Empty subgroup file")
    try:
        header = dict(field.split("=", 1) for field in lines[0].split())
        n, size = int(header["n"]), int(header["size"])
        kind = header["class"]
    except (KeyError, ValueError):
        raise ValueError(
            f"Malformed subgroup header: {lines[0]!r}"
        ) from None

    rows = lines[1:]
    if len(rows) != size:
        raise ValueError(f"Header announces {size} elements, found {len(rows)}")
    if any(len(row) != n or set(row) - {"+", "-"} for row in rows):
        raise ValueError(f"Every element must be {n} '+'/'-' characters")

    elements = np.array([[1 if c == "+" else -1 for c in row] for row in rows],
                        dtype=np.int8)
    subgroup = classify(elements, iota=iota)
    if subgroup.size != size:
        raise ValueError("Subgroup file contains duplicate elements")
    if subgroup.kind != kind:
        raise ValueError(
            f"Header says class={kind} but the elements are {subgroup.kind}"
        )
    return subgroup


def write_subgroup(subgroup, path):
    """Writes a subgroup to ``path`` in the text format."""
    with open(path, "w", newline="\n") as f:
        f.write(format_subgroup(subgroup))


def read_subgroup(path, iota=None):
    """Reads and verifies a subgroup from ``path``."""
    with open(path, "r") as f:
        return parse_subgroup(f.read(), iota=iota)
