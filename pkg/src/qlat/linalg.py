"""Exact integer and rational matrix routines behind the lattice engine.

Plain lists of lists throughout. Integer algorithms (Bareiss, Hermite
normal form, adjugate) never leave the integers; everything else uses
fractions.Fraction. No floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def vec_mat(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gram_value(g, x):
    """x^t g x for a coordinate vector x."""
    return dot(x, mat_vec(g, x))


def gram_pair(g, x, y):
    """x^t g y."""
    return dot(x, mat_vec(g, y))


def congruent_gram(t, g):
    """t g t^t where the rows of t are vectors in g's coordinates."""
    return matmul(matmul(t, g), transpose(t))


def det_bareiss(m):
    """Exact determinant by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(m):
    """Determinants of the upper-left k-by-k blocks, k = 1..n."""
    return [det_bareiss([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def adjugate(m):
    """Integer adjugate via cofactors; m @ adj = det * I."""
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * det_bareiss(sub)
    return adj


def fraction_inverse(m):
    """Exact inverse as a Fraction matrix; raises ZeroDivisionError if singular."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def inverse_unimodular(u):
    """Integer inverse of a matrix with determinant +-1."""
    inv = fraction_inverse(u)
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            irow.append(x.numerator)
        out.append(irow)
    return out


def hnf_with_transform(a):
    """Row Hermite normal form.

    Returns (h, u) with u unimodular and u @ a = h; pivots positive,
    entries above each pivot reduced into [0, pivot), zero rows last.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(row) for row in a]
    u = identity(m)
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if h[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        while True:
            piv = r
            for i in range(r + 1, m):
                if h[i][c] != 0 and (h[piv][c] == 0 or abs(h[i][c]) < abs(h[piv][c])):
                    piv = i
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def left_kernel(a):
    """Basis rows of {x in Z^m : x a = 0}; saturated because the transform
    is unimodular."""
    h, u = hnf_with_transform(a)
    return [u[i] for i in range(len(h)) if all(x == 0 for x in h[i])]


def kernel_complement(a):
    """Rows (k, c) with k a basis of the left kernel of a and k + c together
    unimodular; c projects onto a basis of Z^m modulo the kernel."""
    h, u = hnf_with_transform(a)
    ker, com = [], []
    for i in range(len(h)):
        (ker if all(x == 0 for x in h[i]) else com).append(u[i])
    return ker, com


def solve_left(a, b):
    """One integer solution x of x a = b, or None. Combine with left_kernel
    for the full solution set."""
    h, u = hnf_with_transform(a)
    n = len(a[0]) if a else 0
    res = list(b)
    coeffs = [0] * len(a)
    for r in range(len(h)):
        c = next((j for j in range(n) if h[r][j] != 0), None)
        if c is None:
            break
        if res[c] % h[r][c] != 0:
            return None
        q = res[c] // h[r][c]
        coeffs[r] = q
        if q:
            res = [x - q * y for x, y in zip(res, h[r])]
    if any(res):
        return None
    m = len(a)
    return [sum(coeffs[r] * u[r][i] for r in range(m)) for i in range(m)]


class NotPositiveDefiniteMatrix(Exception):
    """Raised by the rational Cholesky when a pivot fails; .minor is the
    1-based index of the first non-positive leading principal minor."""

    def __init__(self, minor):
        self.minor = minor
        super().__init__(f"leading principal minor {minor} is not positive")


def cholesky_fraction(g):
    """g = R^t D R with D = diag(d) positive and R unit upper triangular.

    Returns (d, mu) as Fractions, mu[i][j] defined for j > i, so that
    Q(x) = sum_i d[i] * (x[i] + sum_{j>i} mu[i][j] x[j])**2.
    """
    n = len(g)
    c = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    d = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if c[i][i] <= 0:
            raise NotPositiveDefiniteMatrix(i + 1)
        d.append(c[i][i])
        for j in range(i + 1, n):
            mu[i][j] = c[i][j] / c[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                c[j][k] -= mu[i][j] * c[i][k]
                c[k][j] = c[j][k]
    return d, mu


def psd_pivots(g):
    """Pivot list of a symmetric positive-semidefinite matrix, or None if g
    is not PSD. Uses symmetric elimination with diagonal pivoting; a PSD
    matrix with a zero diagonal entry has that whole row zero."""
    n = len(g)
    c = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    pivots = []
    while active:
        neg = [i for i in active if c[i][i] < 0]
        if neg:
            return None
        pos = [i for i in active if c[i][i] > 0]
        if not pos:
            for i in active:
                for j in active:
                    if c[i][j] != 0:
                        return None
            pivots.extend(Fraction(0) for _ in active)
            break
        p = pos[0]
        pivots.append(c[p][p])
        active.remove(p)
        for i in active:
            f = c[i][p] / c[p][p]
            if f:
                for j in active:
                    c[i][j] -= f * c[p][j]
        for i in active:
            c[i][p] = c[p][i] = Fraction(0)
    return pivots


def is_psd(g):
    return psd_pivots(g) is not None


def symmetric_rank(g):
    piv = psd_pivots(g)
    if piv is None:
        raise ValueError("matrix is not positive semidefinite")
    return sum(1 for p in piv if p != 0)


def radical_quotient(g):
    """For a PSD integer Gram g: (quotient_gram, proj) where proj maps an
    old coordinate row onto the quotient basis, and quotient_gram is the
    positive definite Gram of the quotient by the radical."""
    ker, com = kernel_complement(g)
    if not com:
        return [], lambda x: []
    basis = ker + com
    w = inverse_unimodular(basis)
    k = len(ker)

    def proj(x):
        y = vec_mat(x, w)
        return y[k:]

    q = congruent_gram(com, g)
    return q, proj


def complete_primitive(x):
    """Unimodular matrix whose first row is the primitive vector x."""
    if gcd(*(abs(c) for c in x)) != 1:
        raise ValueError("vector is not primitive")
    col = [[c] for c in x]
    h, u = hnf_with_transform(col)
    if h[0][0] != 1:
        raise ValueError("vector is not primitive")
    w = inverse_unimodular(u)
    basis = transpose(w)
    if basis[0] != list(x):
        # h[0][0] = 1 guarantees the first column of w is x itself
        raise AssertionError("completion lost the seed vector")
    return basis


def _floor_sqrt_affine(a, m, b):
    """floor((a + sqrt(m)) / b) for integers a, m >= 0, b > 0, exactly."""
    s = isqrt(m)
    return (a + s) // b


def _ceil_sqrt_affine(a, m, b):
    """ceil((a - sqrt(m)) / b) for integers a, m >= 0, b > 0, exactly."""
    s = isqrt(m)
    k = -((-(a - s)) // b) - 1

    def ok(v):
        t = a - v * b
        return t <= 0 or t * t <= m

    while not ok(k):
        k += 1
    while ok(k - 1):
        k -= 1
    return k


def sqrt_interval(center, radius2):
    """Integers t with (t - center)^2 < radius2, given Fractions.

    Returns (lo, hi) inclusive integer bounds of the open interval
    (center - sqrt(radius2), center + sqrt(radius2)); empty iff lo > hi.
    """
    cn, cd = center.numerator, center.denominator
    rn, rd = radius2.numerator, radius2.denominator
    if rn <= 0:
        return 0, -1
    # bounds of cn/cd +- sqrt(rn/rd): scale to common denominator cd*rd
    m = rn * rd * cd * cd
    hi = _floor_sqrt_affine(cn * rd, m, cd * rd)
    lo = _ceil_sqrt_affine(cn * rd, m, cd * rd)
    # the interval is open: trim exact endpoints
    while lo <= hi and (Fraction(lo) - center) ** 2 >= radius2:
        lo += 1
    while lo <= hi and (Fraction(hi) - center) ** 2 >= radius2:
        hi -= 1
    return lo, hi


def enumerate_quadratic(d, mu, bound, offset=None):
    """Integer points x with Q(x + offset) <= bound for the Cholesky data
    (d, mu) of a positive definite form; offset defaults to 0.

    Yields (x, value) with value the exact Fraction Q(x + offset).
    Enumerates the last coordinate in its full signed range; callers wanting
    one vector per +-pair must normalize themselves (only sensible when
    offset is zero).
    """
    n = len(d)
    bound = Fraction(bound)
    if offset is None:
        offset = [Fraction(0)] * n
    x = [0] * n

    def rec(i, remaining, centers):
        # solve d[i] * (x_i + c_i)^2 <= remaining for x_i
        c = centers[i]
        lo, hi = _sqrt_box(c, remaining / d[i])
        for v in range(lo, hi + 1):
            x[i] = v
            rem2 = remaining - d[i] * (v + c) ** 2
            if i == 0:
                yield tuple(x), bound - rem2
            else:
                new_centers = list(centers)
                for j in range(i):
                    new_centers[j] += mu[j][i] * (v + offset[i])
                yield from rec(i - 1, rem2, new_centers)

    if n == 0:
        yield (), Fraction(0)
        return
    yield from rec(n - 1, bound, list(offset))


def _sqrt_box(c, q):
    """Integer v range with (v + c)^2 <= q, Fractions c and q >= 0."""
    if q < 0:
        return 0, -1
    cn, cd = c.numerator, c.denominator
    qn, qd = q.numerator, q.denominator
    m = qn * qd * cd * cd
    # v <= -c + sqrt(q) and v >= -c - sqrt(q)
    hi = _floor_sqrt_affine(-cn * qd, m, cd * qd)
    lo = _ceil_sqrt_affine(-cn * qd, m, cd * qd)
    return lo, hi
