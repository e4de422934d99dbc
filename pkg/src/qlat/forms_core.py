"""Integral lattices as exact integer Gram matrices.

A lattice here is a positive definite symmetric integer matrix plus a
rank and an optional label. A PSD-flagged variant (determinant 0
allowed) exists solely for the witness-repair path of the rank-3
buriedness engine; nothing else may construct or consume one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .linalg import (
    NotPositiveDefiniteMatrix,
    cholesky_fraction,
    det_bareiss,
    is_psd,
)


class NotSymmetric(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    """Carries .minor, the 1-based index of the first failing leading
    principal minor."""

    def __init__(self, minor):
        self.minor = minor
        super().__init__(f"not positive definite (leading minor {minor})")


class NotPositiveSemidefinite(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    rank: int
    gram: tuple
    label: str | None = field(default=None, compare=False)
    psd: bool = False

    def __repr__(self):
        name = self.label or "lattice"
        return f"<{name} rank {self.rank} det {self.det()}>"

    def det(self):
        return det_bareiss([list(r) for r in self.gram])

    def gram_rows(self):
        return [list(r) for r in self.gram]

    def relabel(self, label):
        return Lattice(self.rank, self.gram, label, self.psd)


def make_lattice(gram, label=None, allow_psd=False):
    rows = [list(r) for r in gram]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSymmetric("matrix is not square")
    for i in range(n):
        for j in range(n):
            if not isinstance(rows[i][j], int):
                raise NotSymmetric("entries must be integers")
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"asymmetric at ({i},{j})")
    try:
        cholesky_fraction(rows)
        definite = True
    except NotPositiveDefiniteMatrix as exc:
        if not allow_psd:
            raise NotPositiveDefinite(exc.minor) from None
        definite = False
    if not definite and not is_psd(rows):
        raise NotPositiveSemidefinite("matrix is not positive semidefinite")
    return Lattice(n, tuple(tuple(r) for r in rows), label, psd=not definite)


def diagonal(entries, label=None):
    n = len(entries)
    gram = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return make_lattice(gram, label or "<" + ",".join(map(str, entries)) + ">")


def unit_lattice(n):
    return diagonal([1] * n, f"I_{n}")


def root_A(n):
    gram = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]
    return make_lattice(gram, f"A_{n}")


def root_E(n):
    if n not in (6, 7, 8):
        raise ValueError("only E_6, E_7, E_8 exist")
    edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    gram = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return make_lattice(gram, f"E_{n}")


def direct_sum(*lattices):
    if not lattices:
        raise ValueError("need at least one summand")
    n = sum(lat.rank for lat in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    allow = any(lat.psd for lat in lattices)
    return make_lattice(gram, allow_psd=allow)


def scale(lat, c):
    if c < 1:
        raise ValueError("scale factor must be positive")
    gram = [[c * x for x in row] for row in lat.gram]
    return make_lattice(gram, allow_psd=lat.psd)


def even_sublattice(lat):
    """Largest sublattice on which the quadratic form is even.

    The odd-diagonal coordinates satisfy a single parity condition; the
    kernel of x -> sum(x_i for odd g_ii) mod 2 has index 1 or 2.
    """
    n = lat.rank
    odd = [i for i in range(n) if lat.gram[i][i] % 2 == 1]
    if not odd:
        return lat
    i0 = odd[0]
    basis = []
    for j in range(n):
        if j == i0:
            continue
        row = [0] * n
        row[j] = 1
        if j in odd:
            row[i0] = -1
        basis.append(row)
    last = [0] * n
    last[i0] = 2
    basis.append(last)
    from .linalg import congruent_gram

    return make_lattice(congruent_gram(basis, lat.gram_rows()))


def lattice_det(lat):
    return lat.det()


# Named lattices: the seven ternaries whose exceptional sets are single
# square-classes of arithmetic progressions, the four ternaries with
# exceptions in a progression times an odd prime power, and the classic
# <1,1,10>.

def named_L(i):
    builders = {
        1: lambda: make_lattice([[2, 1, 0], [1, 2, 1], [0, 1, 3]], "L(1)"),
        2: lambda: direct_sum(diagonal([1]), make_lattice([[3, 1], [1, 5]])).relabel("L(2)"),
        3: lambda: diagonal([1, 1, 5], "L(3)"),
        4: lambda: direct_sum(diagonal([1]), make_lattice([[2, 1], [1, 2]])).relabel("L(4)"),
        5: lambda: diagonal([1, 2, 3], "L(5)"),
        6: lambda: diagonal([1, 1, 1], "L(6)"),
        7: lambda: diagonal([1, 1, 2], "L(7)"),
    }
    return builders[i]()


def named_M(i):
    builders = {
        1: lambda: diagonal([1, 1, 6], "M(1)"),
        2: lambda: diagonal([1, 1, 3], "M(2)"),
        3: lambda: direct_sum(diagonal([1]), make_lattice([[2, 1], [1, 3]])).relabel("M(3)"),
        4: lambda: diagonal([1, 2, 5], "M(4)"),
    }
    return builders[i]()


def named_K():
    return make_lattice([[4, 1], [1, 4]], "K")


def ramanujan_ternary():
    return diagonal([1, 1, 10])


NAMED = {}


def _register_named():
    for i in range(1, 8):
        NAMED[f"L{i}"] = lambda i=i: named_L(i)
    for i in range(1, 5):
        NAMED[f"M{i}"] = lambda i=i: named_M(i)
    NAMED["K"] = named_K
    NAMED["R"] = ramanujan_ternary
    for n in range(1, 13):
        NAMED[f"I{n}"] = lambda n=n: unit_lattice(n)
        NAMED[f"A{n}"] = lambda n=n: root_A(n)
    for n in (6, 7, 8):
        NAMED[f"E{n}"] = lambda n=n: root_E(n)


_register_named()


# File formats. JSON: {"rank": n, "gram": [[...], ...], "label": ...} with
# the label key omitted when absent; text: first line n, then n rows of n
# integers. Both writers are canonical so write(read(x)) == x holds
# byte-for-byte on files this module produced.

def to_json_text(lat):
    obj = {"rank": lat.rank, "gram": [list(r) for r in lat.gram]}
    if lat.label is not None:
        obj["label"] = lat.label
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def from_json_text(text, allow_psd=False):
    obj = json.loads(text)
    gram = obj["gram"]
    if "rank" in obj and obj["rank"] != len(gram):
        raise ValueError("rank field disagrees with gram size")
    return make_lattice(gram, obj.get("label"), allow_psd=allow_psd)


def to_plain_text(lat):
    lines = [str(lat.rank)]
    lines += [" ".join(str(x) for x in row) for row in lat.gram]
    return "\n".join(lines) + "\n"


def from_plain_text(text, allow_psd=False):
    tokens = text.split()
    if not tokens:
        raise ValueError("empty lattice file")
    n = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(vals)}")
    gram = [vals[i * n:(i + 1) * n] for i in range(n)]
    return make_lattice(gram, allow_psd=allow_psd)


def read_lattice_file(path, allow_psd=False):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_json_text(text, allow_psd=allow_psd)
    return from_plain_text(text, allow_psd=allow_psd)


def write_lattice_file(path, lat, form="json"):
    text = to_json_text(lat) if form == "json" else to_plain_text(lat)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
