"""Local invariants and representation over p-adic integers and rationals.

Places are either a prime number or the string "inf" for the real place.
Rational quadratic spaces are classified by dimension, a canonical square
class of the determinant, and a Hasse symbol taken as the product of
Hilbert symbols over all index pairs i <= j of a diagonalization.  That
product is basis independent, and two spaces over the same completion are
isometric exactly when all three invariants agree.

Integral questions (Jordan splitting, representation over Z_p, genus
equality, burial of a pair inside a higher rank lattice) live in the
second half of the module.  The Z_p representation test runs a digit by
digit Newton search whose positive answers are certified by a Hensel
lifting criterion and whose negative answers come from exhausting every
approximate solution, so neither verdict is heuristic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from sympy import isprime, jacobi_symbol, primefactors
from sympy.ntheory.residue_ntheory import sqrt_mod

from .forms_core import make_lattice
from .linalg import cholesky_fraction
from .represent import RankTooSmall

REAL_PLACE = "inf"

_BRANCH_LIMIT = 4096
_BASE_LIMIT = 600000
_COMPLETION_NODE_LIMIT = 500000


def _check_prime(p):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError("finite place must be a prime number, got %r" % (p,))


def _check_place(v):
    if v == REAL_PLACE:
        return REAL_PLACE
    _check_prime(v)
    return v


def jacobi(a, m):
    """Jacobi symbol (a/m) for odd positive m."""
    if m <= 0 or m % 2 == 0:
        raise ValueError("lower argument must be odd and positive")
    return int(jacobi_symbol(a, m))


def _split_val(x, p):
    # x nonzero int or Fraction -> (valuation, unit part as Fraction)
    num = x.numerator if isinstance(x, Fraction) else x
    den = x.denominator if isinstance(x, Fraction) else 1
    if num == 0:
        raise ValueError("valuation of zero")
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _val_int(x, p):
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _unit_residue(u, modulus):
    # u is a Fraction whose numerator and denominator are prime to modulus
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def hilbert(a, b, v):
    """Hilbert symbol (a, b) at the place v; arguments are nonzero rationals."""
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    v = _check_place(v)
    if v == REAL_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = v
    alpha, u = _split_val(a, p)
    beta, w = _split_val(b, p)
    if p == 2:
        uu = _unit_residue(u, 8)
        ww = _unit_residue(w, 8)
        eps_u = 0 if uu % 4 == 1 else 1
        eps_w = 0 if ww % 4 == 1 else 1
        om_u = 0 if uu in (1, 7) else 1
        om_w = 0 if ww in (1, 7) else 1
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    s = -1 if e % 2 else 1
    if beta % 2:
        s *= jacobi(_unit_residue(u, p), p)
    if alpha % 2:
        s *= jacobi(_unit_residue(w, p), p)
    return s


def _least_nonresidue(p):
    for u in range(2, p):
        if jacobi(u, p) == -1:
            return u
    raise AssertionError("no quadratic nonresidue below %d" % p)


_DYADIC_CLASS = {
    (0, 1): 1, (0, 3): -5, (0, 5): 5, (0, 7): -1,
    (1, 1): 2, (1, 3): -10, (1, 5): 10, (1, 7): -2,
}


def square_class(d, v):
    """Canonical representative of d modulo squares at the place v.

    Real place: the sign.  p = 2: one of 1, -1, 5, -5, 2, -2, 10, -10.
    Odd p: one of 1, u, p, u*p with u the least positive nonresidue.
    """
    if d == 0:
        raise ValueError("square class of zero")
    v = _check_place(v)
    if v == REAL_PLACE:
        return 1 if d > 0 else -1
    p = v
    val, unit = _split_val(d, p)
    if p == 2:
        return _DYADIC_CLASS[(val % 2, _unit_residue(unit, 8))]
    u = _least_nonresidue(p)
    rep = 1 if jacobi(_unit_residue(unit, p), p) == 1 else u
    if val % 2:
        rep *= p
    return rep


def _same_class(x, y, v):
    return square_class(x, v) == square_class(y, v)


@dataclass(frozen=True)
class QpSpaceInv:
    """Complete isometry invariants of a rational quadratic space at one place."""

    place: object
    dim: int
    det_class: int
    hasse: int


def _rational_diagonal(lat):
    # leading principal minors are positive, so no pivot ever vanishes
    d, _ = cholesky_fraction(lat.gram)
    return d


def qp_invariants(lat, v):
    """Dimension, determinant class, and Hasse symbol of the span of lat at v."""
    v = _check_place(v)
    diag = _rational_diagonal(lat)
    n = len(diag)
    if n == 0:
        return QpSpaceInv(place=v, dim=0, det_class=1, hasse=1)
    det = 1
    for a in diag:
        det *= a
    hasse = 1
    for i in range(n):
        for j in range(i, n):
            hasse *= hilbert(diag[i], diag[j], v)
    return QpSpaceInv(place=v, dim=n, det_class=square_class(det, v), hasse=hasse)


def qp_space_represents(small, big, v):
    """Whether the span of small embeds isometrically into the span of big at v.

    The forced complement has dimension n - m, determinant class d(small)
    times d(big), and a Hasse symbol pinned by the direct sum rule, so the
    question reduces to whether a space with those three invariants exists.
    """
    v = _check_place(v)
    m, n = small.rank, big.rank
    if m > n:
        raise RankTooSmall("cannot represent rank %d inside rank %d" % (m, n))
    if v == REAL_PLACE:
        return True
    p = v
    if n - m >= 3:
        return True
    iu = qp_invariants(small, p)
    iv = qp_invariants(big, p)
    if n == m:
        return iu == iv
    du = small.det() if m else 1
    dv = big.det() if n else 1
    dw = du * dv
    s_w = iv.hasse * iu.hasse * hilbert(du, dw, p)
    if n - m == 1:
        return s_w == hilbert(dw, -1, p)
    if _same_class(dw, -1, p):
        return s_w == hilbert(-1, -1, p)
    return True


def buried_over_qp(l1, l2, n, v):
    """Whether some rational space of dimension n at v represents both inputs.

    With m the shared rank this holds exactly when the spans are isometric,
    or n = m + 1 and the determinant classes differ, or n >= m + 2.
    """
    v = _check_place(v)
    m = l1.rank
    if l2.rank != m:
        raise ValueError("inputs must have the same rank")
    if n < m:
        raise RankTooSmall("container rank %d below input rank %d" % (n, m))
    if v == REAL_PLACE:
        return True
    if n >= m + 2:
        return True
    i1 = qp_invariants(l1, v)
    i2 = qp_invariants(l2, v)
    if i1 == i2:
        return True
    return n == m + 1 and i1.det_class != i2.det_class


@dataclass(frozen=True)
class JordanForm:
    """Scale decomposition of a lattice over Z_p.

    blocks is a tuple of (scale, descriptor) with scales strictly
    increasing.  At an odd prime the descriptor is (dimension, sign) where
    the sign is the Legendre symbol of the unit part of the block
    determinant.  At p = 2 the descriptor is a sorted tuple of labels,
    "u1"/"u3"/"u5"/"u7" for unit diagonal summands by residue mod 8 and
    "H"/"A" for the two even binary blocks.
    """

    place: int
    blocks: tuple


def jordan_decomposition(lat, p):
    """Split lat into unimodular blocks scaled by powers of p."""
    _check_prime(p)
    n = lat.rank
    a = [[Fraction(x) for x in row] for row in lat.gram]
    active = list(range(n))
    unaries = []
    binaries = []

    def val(x):
        return _split_val(x, p)[0]

    while active:
        vmin = None
        for i in active:
            for j in active:
                if a[i][j] != 0:
                    w = val(a[i][j])
                    if vmin is None or w < vmin:
                        vmin = w
        assert vmin is not None, "degenerate gram in jordan splitting"
        diag = [i for i in active if a[i][i] != 0 and val(a[i][i]) == vmin]
        if not diag and p != 2:
            # fold one row into another; 2 is a unit so the new diagonal
            # entry a_ii + 2a_ij + a_jj attains the minimal valuation
            i, j = next(
                (i, j) for i in active for j in active
                if i != j and a[i][j] != 0 and val(a[i][j]) == vmin
            )
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            diag = [i]
        if diag:
            i = diag[0]
            piv = a[i][i]
            others = [r for r in active if r != i]
            coef = {r: a[r][i] / piv for r in others}
            for r in others:
                for s in others:
                    a[r][s] -= coef[r] * piv * coef[s]
                a[r][i] = a[i][r] = Fraction(0)
            unaries.append((vmin, piv / p ** vmin))
            active.remove(i)
            continue
        # p = 2 and the minimum lives strictly off the diagonal
        i, j = next(
            (i, j) for i in active for j in active
            if i < j and a[i][j] != 0 and val(a[i][j]) == vmin
        )
        bd = a[i][i] * a[j][j] - a[i][j] ** 2
        assert val(bd) == 2 * vmin
        others = [r for r in active if r not in (i, j)]
        inv = [
            [a[j][j] / bd, -a[i][j] / bd],
            [-a[i][j] / bd, a[i][i] / bd],
        ]
        coef = {
            r: (
                inv[0][0] * a[i][r] + inv[0][1] * a[j][r],
                inv[1][0] * a[i][r] + inv[1][1] * a[j][r],
            )
            for r in others
        }
        for r in others:
            for s in others:
                xr, yr = coef[r]
                a[r][s] -= xr * a[i][s] + yr * a[j][s]
            a[r][i] = a[i][r] = Fraction(0)
            a[r][j] = a[j][r] = Fraction(0)
        binaries.append((vmin, bd / p ** (2 * vmin)))
        active.remove(i)
        active.remove(j)

    scales = {}
    if p == 2:
        for s, unit in unaries:
            scales.setdefault(s, []).append("u%d" % _unit_residue(unit, 8))
        for s, unit in binaries:
            r = _unit_residue(unit, 8)
            assert r in (3, 7), "even block determinant must be -1 or 3 mod 8"
            scales.setdefault(s, []).append("H" if r == 7 else "A")
        blocks = tuple((s, tuple(sorted(scales[s]))) for s in sorted(scales))
    else:
        for s, unit in unaries:
            scales.setdefault(s, []).append(unit)
        blocks = []
        for s in sorted(scales):
            units = scales[s]
            prod = Fraction(1)
            for u in units:
                prod *= u
            blocks.append((s, (len(units), jacobi(_unit_residue(prod, p), p))))
        blocks = tuple(blocks)
    if n:
        total = sum(
            s * (len(desc) if p == 2 else desc[0]) for s, desc in blocks
        )
        assert total == _val_int(lat.det(), p), "scales lost determinant valuation"
    return JordanForm(place=p, blocks=blocks)


def _image_gram_and_deriv(g_big, t_mat, m, n):
    # returns T^t G T together with the derivative rows of the map
    # T -> T^t G T at T, one row per unordered index pair (i, j)
    gt = [
        [sum(g_big[r][k] * t_mat[k][s] for k in range(n)) for s in range(m)]
        for r in range(n)
    ]
    image = [
        [sum(t_mat[r][i] * gt[r][j] for r in range(n)) for j in range(m)]
        for i in range(m)
    ]
    rows = []
    for i in range(m):
        for j in range(i, m):
            row = []
            for r in range(n):
                for s in range(m):
                    c = 0
                    if s == i:
                        c += gt[r][j]
                    if s == j:
                        c += gt[r][i]
                    row.append(c)
            rows.append(row)
    return image, rows


def _max_invariant_valuation(rows, p):
    # largest invariant factor valuation over Z_p, or None on row rank drop;
    # fraction free: rescaling a row by a p-unit keeps the invariants
    m = [list(row) for row in rows]
    nrow = len(m)
    ncol = len(m[0]) if nrow else 0
    used_r, used_c = set(), set()
    worst = 0
    for _ in range(nrow):
        best = None
        for i in range(nrow):
            if i in used_r:
                continue
            for j in range(ncol):
                if j in used_c or m[i][j] == 0:
                    continue
                v = _val_int(m[i][j], p)
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            return None
        v, bi, bj = best
        worst = max(worst, v)
        piv = m[bi][bj]
        pv = p ** v
        for i in range(nrow):
            if i in used_r or i == bi or m[i][bj] == 0:
                continue
            f = m[i][bj]
            m[i] = [(piv * x - f * y) // pv for x, y in zip(m[i], m[bi])]
        used_r.add(bi)
        used_c.add(bj)
    return worst


def _solve_mod_p(rows, rhs, p):
    # Gaussian elimination over F_p; returns (particular, nullspace basis)
    # or None when the system is inconsistent
    ncol = len(rows[0]) if rows else 0
    aug = [[x % p for x in row] + [b % p] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncol):
        pr = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][ncol]:
            return None
    particular = [0] * ncol
    for i, c in enumerate(piv_cols):
        particular[c] = aug[i][ncol]
    basis = []
    for fc in range(ncol):
        if fc in piv_cols:
            continue
        vec = [0] * ncol
        vec[fc] = 1
        for i, c in enumerate(piv_cols):
            vec[c] = (-aug[i][fc]) % p
        basis.append(vec)
    return particular, basis


def _quad_roots_mod(c2, c1, c0, p):
    # roots of c2 x^2 + c1 x + c0 over F_p, p odd
    c2, c1, c0 = c2 % p, c1 % p, c0 % p
    if c2 == 0:
        if c1 == 0:
            return list(range(p)) if c0 == 0 else []
        return [(-c0) * pow(c1, -1, p) % p]
    disc = (c1 * c1 - 4 * c2 * c0) % p
    roots = sqrt_mod(disc, p, all_roots=True) or []
    inv = pow(2 * c2, -1, p)
    return sorted({(r - c1) * inv % p for r in roots})


def _affine_quadric_points(gmat, lin_rows, lin_rhs, target, p):
    """Lazily yield x in F_p^n with x^t gmat x = target on an affine subspace.

    The subspace is cut out by lin_rows x = lin_rhs.  Requires p odd.  The
    subspace is parameterized and one coordinate of the induced quadric is
    solved per fiber, so the loop runs over p^(dim-1) fibers.
    """
    n = len(gmat)
    if lin_rows:
        sol = _solve_mod_p(lin_rows, lin_rhs, p)
        if sol is None:
            return
        x0, basis = sol
    else:
        x0 = [0] * n
        basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d = len(basis)
    gx0 = [sum(gmat[i][j] * x0[j] for j in range(n)) % p for i in range(n)]
    const = (sum(x0[i] * gx0[i] for i in range(n)) - target) % p
    if d == 0:
        if const == 0:
            yield list(x0)
        return
    if p ** (d - 1) > _BASE_LIMIT:
        raise ArithmeticError("quadric fiber enumeration too large at p=%d" % p)
    gv = [
        [sum(gmat[i][j] * v[j] for j in range(n)) % p for i in range(n)]
        for v in basis
    ]
    amat = [
        [sum(basis[k][i] * gv[l][i] for i in range(n)) % p for l in range(d)]
        for k in range(d)
    ]
    bvec = [2 * sum(basis[k][i] * gx0[i] for i in range(n)) % p for k in range(d)]
    # a genuine square term keeps most fibers down to two points
    pivot = next((k for k in range(d) if amat[k][k] % p), 0)
    rest = [k for k in range(d) if k != pivot]
    for assign in product(range(p), repeat=d - 1):
        y = [0] * d
        for k, val in zip(rest, assign):
            y[k] = val
        c2 = amat[pivot][pivot]
        c1 = bvec[pivot] + 2 * sum(amat[pivot][k] * y[k] for k in rest)
        c0 = (
            const
            + sum(bvec[k] * y[k] for k in rest)
            + sum(amat[k][l] * y[k] * y[l] for k in rest for l in rest)
        )
        for root in _quad_roots_mod(c2, c1, c0, p):
            y[pivot] = root
            yield [
                (x0[i] + sum(y[k] * basis[k][i] for k in range(d))) % p
                for i in range(n)
            ]


def _unary_base_states(a, g, p):
    n = len(g)
    target = a % p
    if p ** n <= _BRANCH_LIMIT:
        out = []
        for vec in product(range(p), repeat=n):
            q = sum(vec[i] * g[i][j] * vec[j] for i in range(n) for j in range(n))
            if q % p == target:
                out.append(tuple((x,) for x in vec))
        return out
    if p == 2:
        raise ArithmeticError("unary base enumeration too large at p=2")
    return (
        tuple((x,) for x in point)
        for point in _affine_quadric_points(g, [], [], a, p)
    )


def _column_base_states(h, g, p):
    # p odd: choose the image columns one at a time; each new column meets
    # the inner product conditions against the earlier ones (linear) plus
    # its own norm condition (a quadric on the affine solution space)
    m, n = len(h), len(g)

    def extend(cols):
        j = len(cols)
        if j == m:
            yield tuple(tuple(cols[s][r] for s in range(m)) for r in range(n))
            return
        lin_rows = [
            [sum(g[k][i] * cols[s][i] for i in range(n)) % p for k in range(n)]
            for s in range(j)
        ]
        lin_rhs = [h[s][j] for s in range(j)]
        for col in _affine_quadric_points(g, lin_rows, lin_rhs, h[j][j], p):
            yield from extend(cols + [col])

    return extend([])


def _base_states(h, g, p):
    m, n = len(h), len(g)
    if m == 1:
        return _unary_base_states(h[0][0], g, p)
    if p != 2:
        return _column_base_states(h, g, p)
    if p ** (n * m) > _BASE_LIMIT:
        raise ArithmeticError("base enumeration too large: p=%d size %d" % (p, n * m))

    def brute():
        for flat in product(range(p), repeat=n * m):
            t_mat = tuple(tuple(flat[r * m + s] for s in range(m)) for r in range(n))
            image, _ = _image_gram_and_deriv(g, t_mat, m, n)
            if all(
                (image[i][j] - h[i][j]) % p == 0
                for i in range(m)
                for j in range(i, m)
            ):
                yield t_mat

    return brute()


def _zp_search(h, g, p, depth_cap):
    """Digit by digit search for T with T^t G T = h over Z_p.

    States at level t are exactly the solutions modulo p^t reachable from
    the full set of base solutions, so an empty frontier proves there is
    no solution, while a Hensel certificate (residual valuation more than
    twice the largest invariant factor of the derivative) proves there is
    one.
    """
    m, n = len(h), len(g)
    pairs = [(i, j) for i in range(m) for j in range(i, m)]
    states = _base_states(h, g, p)
    level = 1
    while states:
        if level > depth_cap:
            raise ArithmeticError(
                "p-adic representation search undecided at depth %d" % depth_cap
            )
        step = p ** level
        nxt = []
        for t_mat in states:
            image, deriv = _image_gram_and_deriv(g, t_mat, m, n)
            residual = [image[i][j] - h[i][j] for (i, j) in pairs]
            rv = min(
                (_val_int(x, p) for x in residual if x != 0), default=None
            )
            if rv is None:
                return True
            # at p = 2 every diagonal derivative row is even, so the largest
            # invariant factor is at least 1 and commits need valuation 3
            if rv >= (3 if p == 2 else 1):
                w = _max_invariant_valuation(deriv, p)
                if w is not None and rv >= 2 * w + 1:
                    return True
            sol = _solve_mod_p(deriv, [-(x // step) for x in residual], p)
            if sol is None:
                continue
            particular, basis = sol
            if p ** len(basis) > _BRANCH_LIMIT:
                raise ArithmeticError("local branch space too large at p=%d" % p)
            for coeffs in product(range(p), repeat=len(basis)):
                delta = particular[:]
                for c, vec in zip(coeffs, basis):
                    if c:
                        delta = [(x + c * y) % p for x, y in zip(delta, vec)]
                nxt.append(
                    tuple(
                        tuple(
                            t_mat[r][s] + step * delta[r * m + s]
                            for s in range(m)
                        )
                        for r in range(n)
                    )
                )
        states = nxt
        level += 1
    return False


def zp_represents(small, big, p):
    """Whether small embeds isometrically into big over the p-adic integers."""
    _check_prime(p)
    m, n = small.rank, big.rank
    if m > n:
        raise RankTooSmall("cannot represent rank %d inside rank %d" % (m, n))
    if m == 0:
        return True
    if small.gram == big.gram:
        return True
    if not qp_space_represents(small, big, p):
        return False
    margin = _val_int(4 * small.det() * big.det(), p) + 3
    return _zp_search(
        [list(row) for row in small.gram],
        [list(row) for row in big.gram],
        p,
        margin + 6,
    )


def same_genus(l1, l2):
    """Whether the two lattices are isometric over Z_p at every place."""
    if l1.rank != l2.rank:
        return False
    if l1.det() != l2.det():
        return False
    if l1.gram == l2.gram or l1.rank == 0:
        return True
    for p in primefactors(l1.det()):
        if p == 2:
            continue
        if jordan_decomposition(l1, p) != jordan_decomposition(l2, p):
            return False
    # the scale decomposition is not a complete invariant at 2, so decide
    # by representation both ways, which at equal rank and determinant
    # forces a dyadic isometry
    return zp_represents(l1, l2, 2) and zp_represents(l2, l1, 2)


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _det4(m):
    total = 0
    for c in range(4):
        minor = [[m[r][t] for t in range(4) if t != c] for r in range(1, 4)]
        term = m[0][c] * _det3(minor)
        total += term if c % 2 == 0 else -term
    return total


def _cof4(m, i, j):
    minor = [[m[r][t] for t in range(4) if t != j] for r in range(4) if r != i]
    sign = 1 if (i + j) % 2 == 0 else -1
    return sign * _det3(minor)


def _pair_matrix(g1, g2, c):
    return [
        [g1[0][0], g1[0][1], c[0], c[1]],
        [g1[1][0], g1[1][1], c[2], c[3]],
        [c[0], c[2], g2[0][0], g2[0][1]],
        [c[1], c[3], g2[1][0], g2[1][1]],
    ]


_COMPLETION_SLOTS = ((0, 2), (0, 3), (1, 2), (1, 3))


def _singular_completion_dyadic(g1, g2):
    """Whether the two binary grams admit pairing values over Z_2 making the
    joint 4 x 4 gram singular.

    Such pairings exist exactly when some rank 3 lattice over Z_2
    represents both binaries: the joint gram of the two embedded pairs of
    vectors has rank at most 3, and conversely a singular joint gram is
    the gram of four vectors spanning a module of rank at most 3, which
    embeds both binaries after splitting off the radical.
    """
    d1 = g1[0][0] * g1[1][1] - g1[0][1] ** 2
    d2 = g2[0][0] * g2[1][1] - g2[0][1] ** 2
    depth_cap = (_val_int(4 * d1 * d2, 2) or 0) + 12
    nodes = 0
    states = [c for c in product(range(2), repeat=4) if _det4(_pair_matrix(g1, g2, c)) % 2 == 0]
    level = 1
    while states:
        if level > depth_cap:
            raise ArithmeticError("dyadic completion search undecided")
        step = 1 << level
        mask = step << 1
        nxt = []
        for c in states:
            mat = _pair_matrix(g1, g2, c)
            value = _det4(mat)
            if value == 0:
                return True
            vv = _val_int(value, 2)
            for r, s in _COMPLETION_SLOTS:
                der = 2 * _cof4(mat, r, s)
                if der == 0:
                    continue
                if vv > 2 * _val_int(der, 2):
                    return True
            for bits in product(range(2), repeat=4):
                child = tuple(x + step * b for x, b in zip(c, bits))
                if _det4(_pair_matrix(g1, g2, child)) % mask == 0:
                    nxt.append(child)
                    nodes += 1
                    if nodes > _COMPLETION_NODE_LIMIT:
                        raise ArithmeticError("dyadic completion search too large")
        states = nxt
        level += 1
    return False


def _is_even(lat):
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def _dyadic_superlattice_closure(lat):
    from .enumerate import _index_p_superlattices, is_isometric

    found = [lat]
    queue = [lat]
    while queue:
        cur = queue.pop(0)
        if cur.det() % 4:
            continue
        for gram in _index_p_superlattices(cur, 2):
            cand = make_lattice(gram)
            if not any(is_isometric(cand, seen) for seen in found):
                found.append(cand)
                queue.append(cand)
    return found


def buried_over_zp(l1, l2, n, p):
    """Whether some integral Z_p lattice of rank n represents both inputs."""
    _check_prime(p)
    m = l1.rank
    if l2.rank != m:
        raise ValueError("inputs must have the same rank")
    if n < m:
        raise RankTooSmall("container rank %d below input rank %d" % (n, m))
    if p != 2:
        # at an odd prime every integral lattice sits inside a maximal one,
        # and maximal lattices on isometric spaces are isometric, so the
        # rational answer settles the integral question
        return buried_over_qp(l1, l2, n, p)
    if n >= 2 * m:
        return True
    if n == m:
        for container in _dyadic_superlattice_closure(l1):
            if zp_represents(l2, container, 2):
                return True
        return False
    if _is_even(l1) and _is_even(l2):
        return buried_over_qp(l1, l2, n, 2)
    if not buried_over_qp(l1, l2, n, 2):
        return False
    if m == 2 and n == 3:
        return _singular_completion_dyadic(l1.gram, l2.gram)
    raise NotImplementedError(
        "dyadic burial is only decided for equal rank, doubled rank, even "
        "inputs, or binary inputs in rank 3; got rank %d in rank %d" % (m, n)
    )


def buried_in_genus(l1, l2, n):
    """Whether some genus of rank n represents both lattices.

    Away from 2 and the two determinants every completion contains a
    unimodular container, so only the ramified places are consulted; in
    the equal rank case the determinants must additionally have square
    product, since at any other prime the two unimodular completions
    would disagree.
    """
    m = l1.rank
    if l2.rank != m:
        raise ValueError("inputs must have the same rank")
    if n < m:
        raise RankTooSmall("container rank %d below input rank %d" % (n, m))
    d1 = l1.det() if m else 1
    d2 = l2.det() if m else 1
    if n == m:
        s = d1 * d2
        if isqrt(s) ** 2 != s:
            return False
    # odd places are pure invariant arithmetic; the dyadic search goes last
    places = sorted(primefactors(2 * d1 * d2), reverse=True)
    return all(buried_over_zp(l1, l2, n, p) for p in places)
