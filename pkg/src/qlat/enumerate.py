"""Short vectors, successive minima, isometry tests, and lattice enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import factorint

from .forms_core import Lattice, make_lattice
from .linalg import cholesky_fraction, enumerate_quadratic, hnf_with_transform


@dataclass(frozen=True)
class ShortVectorList:
    """Nonzero vectors with Q(x) <= bound, one per sign pair, lex sorted."""

    bound: int
    vectors: tuple

    def by_norm(self):
        table = {}
        for coords, norm in self.vectors:
            table.setdefault(norm, []).append(coords)
        return table

    def norms(self):
        return sorted({norm for _, norm in self.vectors})

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def short_vectors(lat, bound):
    """Every x with 0 < Q(x) <= bound whose first nonzero coordinate is positive."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    dvec, mu = cholesky_fraction(lat.gram)
    out = []
    for coords, value in enumerate_quadratic(dvec, mu, Fraction(bound)):
        if value == 0:
            continue
        lead = next(c for c in coords if c)
        if lead < 0:
            continue
        assert value.denominator == 1
        out.append((coords, int(value)))
    out.sort()
    return ShortVectorList(bound=bound, vectors=tuple(out))


def minimum(lat):
    """Smallest nonzero value of Q on the lattice."""
    best = min(lat.gram[i][i] for i in range(lat.rank))
    sv = short_vectors(lat, best)
    return min(norm for _, norm in sv.vectors)


def successive_minima(lat):
    """m_j = least t with j independent vectors of norm <= t."""
    n = lat.rank
    if n == 0:
        return ()
    diag = [lat.gram[i][i] for i in range(n)]
    # m_n <= max diagonal; growing from the smallest entry usually stops early
    bound = min(diag)
    top = max(diag)
    while True:
        minima = _minima_from_vectors(lat, short_vectors(lat, bound))
        if len(minima) == n:
            return tuple(minima)
        bound = min(2 * bound, top)


def _minima_from_vectors(lat, sv):
    n = lat.rank
    ordered = sorted(sv.vectors, key=lambda item: (item[1], item[0]))
    echelon = []  # (pivot column, reduced row)
    minima = []
    for coords, norm in ordered:
        row = [Fraction(c) for c in coords]
        for col, ref in echelon:
            if row[col]:
                f = row[col] / ref[col]
                row = [a - f * b for a, b in zip(row, ref)]
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            continue
        echelon.append((lead, row))
        minima.append(norm)
        if len(minima) == n:
            break
    return minima


class Isometry:
    """Boolean-like verdict; witness T satisfies T^t G1 T = G2 when true."""

    __slots__ = ("witness",)

    def __init__(self, witness=None):
        self.witness = witness

    def __bool__(self):
        return self.witness is not None

    def __repr__(self):
        return f"Isometry(witness={self.witness!r})"


def _norm_profile(lat, bound):
    counts = {}
    for _, norm in short_vectors(lat, bound).vectors:
        counts[norm] = counts.get(norm, 0) + 1
    return counts


def is_isometric(lat1, lat2):
    """Isometry verdict, found by invariant filtering then embedding search."""
    if lat1.rank != lat2.rank:
        return Isometry(None)
    if lat1.rank == 0:
        return Isometry(witness=())
    if lat1.det() != lat2.det():
        return Isometry(None)
    m1 = successive_minima(lat1)
    if m1 != successive_minima(lat2):
        return Isometry(None)
    bound = m1[-1]
    if _norm_profile(lat1, bound) != _norm_profile(lat2, bound):
        return Isometry(None)
    from .represent import embeds

    found = embeds(lat2, lat1)
    if found is None:
        return Isometry(None)
    # equal determinant forces |det T| = 1
    return Isometry(witness=found.T)


def enumerate_binary_by_det(d):
    """Reduced binaries [[a,b],[b,c]], 0 <= 2b <= a <= c, ac - b^2 = d."""
    if d < 1:
        raise ValueError("determinant must be positive")
    found = []
    a = 1
    while 3 * a * a <= 4 * d:
        for b in range(a // 2 + 1):
            num = d + b * b
            if num % a == 0 and num // a >= a:
                found.append(make_lattice(((a, b), (b, num // a))))
        a += 1
    out = []  # reduced representatives are already distinct; dedup is a guard
    for lat in found:
        if not any(is_isometric(lat, seen) for seen in out):
            out.append(lat)
    return out


def _kernel_mod_p(gram, p):
    """Basis of the null space of the Gram matrix over F_p."""
    n = len(gram)
    rows = [[gram[i][j] % p for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(tuple(v))
    return basis


def _projective_points(k, p):
    for lead in range(k):
        for rest in product(range(p), repeat=k - lead - 1):
            yield (0,) * lead + (1,) + rest


def _index_p_superlattices(lat, p):
    """Grams of the integral superlattices of index exactly p."""
    n = lat.rank
    g = lat.gram
    basis = _kernel_mod_p(g, p)
    p2 = p * p
    for point in _projective_points(len(basis), p):
        v = [sum(c * b[j] for c, b in zip(point, basis)) % p for j in range(n)]
        qv = sum(v[i] * g[i][j] * v[j] for i in range(n) for j in range(n))
        if qv % p2:
            continue
        rows = [[p if i == j else 0 for j in range(n)] for i in range(n)]
        rows.append(v)
        h, _ = hnf_with_transform(tuple(tuple(r) for r in rows))
        top = [list(h[i]) for i in range(n)]
        new = []
        for i in range(n):
            gh = [sum(top[i][t] * g[t][j] for t in range(n)) for j in range(n)]
            row = []
            for j in range(n):
                num = sum(gh[t] * top[j][t] for t in range(n))
                assert num % p2 == 0
                row.append(num // p2)
            new.append(tuple(row))
        yield tuple(new)


def superlattices(s):
    """All integral lattices containing s with finite index, up to isometry."""
    found = [s]
    queue = [s]
    while queue:
        cur = queue.pop(0)
        det = cur.det()
        for p in sorted(factorint(det)):
            if det % (p * p):
                continue
            for gram in _index_p_superlattices(cur, p):
                cand = make_lattice(gram)
                if not any(is_isometric(cand, seen) for seen in found):
                    found.append(cand)
                    queue.append(cand)
    return found


def is_primitive(lat):
    """True when no proper integral lattice contains lat with finite index."""
    det = lat.det()
    for p in sorted(factorint(det)):
        if det % (p * p):
            continue
        for _ in _index_p_superlattices(lat, p):
            return False
    return True
