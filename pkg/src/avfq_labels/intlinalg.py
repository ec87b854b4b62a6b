"""Exact integer and rational linear algebra: Hermite and Smith normal
forms, determinants, inverses, kernels and lattice indices.

All matrices are dense and small (ambient dimension 2g <= ~12), so every
routine favours exactness and determinism over asymptotics.  The HNF
convention is fixed bit-exactly because label sort keys consume the literal
entry sequence: row-style, upper triangular, positive pivots, entries above
a pivot reduced into [0, pivot).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class IntMat:
    """Immutable dense matrix of arbitrary-size integers."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if not data or not data[0]:
            raise ValueError("empty matrix rejected")
        if any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = len(data[0])
        self.data = data

    def __eq__(self, other):
        return isinstance(other, IntMat) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMat({list(map(list, self.data))})"

    @staticmethod
    def identity(n):
        return IntMat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        od = other.data
        out = []
        for row in self.data:
            out.append([sum(row[k] * od[k][j] for k in range(self.cols))
                        for j in range(other.cols)])
        return IntMat(out)

    def transpose(self):
        return IntMat([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def det(self):
        return det_int(self.data)


@dataclass(frozen=True)
class HnfResult:
    H: IntMat
    U: IntMat          # U * M = H, |det U| = 1
    rank: int


@dataclass(frozen=True)
class SnfResult:
    D: IntMat
    P: IntMat          # P * M * Q = D
    Q: IntMat


def det_int(rows):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    a = [list(r) for r in rows]
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


def hnf(M):
    """Row-style upper-triangular HNF with unimodular transform.

    Deterministic: the output depends only on the row space of M (for H)
    and on the literal input (for U).  Zero rows sink to the bottom.
    """
    if not isinstance(M, IntMat):
        M = IntMat(M)
    nr, nc = M.rows, M.cols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]

    def addmul(dst, src, q):
        ad, asrc = a[dst], a[src]
        for j in range(nc):
            ad[j] += q * asrc[j]
        ud, usrc = u[dst], u[src]
        for j in range(nr):
            ud[j] += q * usrc[j]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    r = 0
    for c in range(nc):
        # gather the pivot for column c among rows r..
        while True:
            live = [i for i in range(r, nr) if a[i][c] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: (abs(a[i][c]), i))
            if piv != r:
                swap(r, piv)
            done = True
            for i in range(r + 1, nr):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    addmul(i, r, -q)
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < nr and a[r][c] != 0:
            if a[r][c] < 0:
                for j in range(nc):
                    a[r][j] = -a[r][j]
                for j in range(nr):
                    u[r][j] = -u[r][j]
            p = a[r][c]
            for i in range(r):
                q = a[i][c] // p      # floor: lands entries in [0, p)
                if q:
                    addmul(i, r, -q)
            r += 1
        if r == nr:
            break
    return HnfResult(IntMat(a), IntMat(u), r)


def row_span_hnf(rows, ncols):
    """HNF basis of the row span, without transform tracking: rows are
    folded into an accumulator one at a time, so the cost scales with the
    number of rows instead of their square."""
    acc = []                 # rows kept in echelon order by pivot column

    def insert(vec):
        vec = list(vec)
        while True:
            piv = next((j for j, x in enumerate(vec) if x), None)
            if piv is None:
                return
            slot = None
            for idx, row in enumerate(acc):
                rp = next(j for j, x in enumerate(row) if x)
                if rp == piv:
                    slot = idx
                    break
                if rp > piv:
                    acc.insert(idx, vec)
                    return
            if slot is None:
                acc.append(vec)
                return
            row = acc[slot]
            a, b = row[piv], vec[piv]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, row)]
                continue
            g, s, t = _xgcd(a, b)
            newrow = [s * x + t * y for x, y in zip(row, vec)]
            vec = [(-(b // g)) * x + (a // g) * y for x, y in zip(row, vec)]
            acc[slot] = newrow

    for r in rows:
        if len(r) != ncols:
            r = list(r) + [0] * (ncols - len(r))
        insert(r)
    # normalize: positive pivots, entries above a pivot reduced into [0, pivot)
    for i, row in enumerate(acc):
        piv = next(j for j, x in enumerate(row) if x)
        if row[piv] < 0:
            acc[i] = [-x for x in row]
    for i in range(len(acc) - 1, -1, -1):
        piv = next(j for j, x in enumerate(acc[i]) if x)
        for k in range(i):
            q = acc[k][piv] // acc[i][piv]
            if q:
                acc[k] = [x - q * y for x, y in zip(acc[k], acc[i])]
    return acc


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def snf(M):
    """Smith normal form with both transforms; diagonal nonnegative with
    d_1 | d_2 | ... | d_r."""
    if not isinstance(M, IntMat):
        M = IntMat(M)
    nr, nc = M.rows, M.cols
    a = [list(r) for r in M.data]
    p = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    q = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_addmul(dst, src, c):
        for j in range(nc):
            a[dst][j] += c * a[src][j]
        for j in range(nr):
            p[dst][j] += c * p[src][j]

    def col_addmul(dst, src, c):
        for i in range(nr):
            a[i][dst] += c * a[i][src]
        for i in range(nc):
            q[i][dst] += c * q[i][src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def col_swap(i, j):
        for r_ in a:
            r_[i], r_[j] = r_[j], r_[i]
        for r_ in q:
            r_[i], r_[j] = r_[j], r_[i]

    def smallest_nonzero(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = abs(a[i][j])
                if v and (best is None or v < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while True:
        pos = smallest_nonzero(t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    c = a[i][t] // a[t][t]
                    row_addmul(i, t, -c)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    c = a[t][j] // a[t][t]
                    col_addmul(j, t, -c)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        # force divisibility of the remaining block by the pivot
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_addmul(t, bad, 1)
            continue
        if a[t][t] < 0:
            for j in range(nc):
                a[t][j] = -a[t][j]
            for j in range(nr):
                p[t][j] = -p[t][j]
        t += 1
        if t == min(nr, nc):
            break
    res = SnfResult(IntMat(a), IntMat(p), IntMat(q))
    _check_snf(res, M)
    return res


def _check_snf(res, M):
    d = res.D.data
    r = min(res.D.rows, res.D.cols)
    diag = [d[i][i] for i in range(r)]
    for i in range(r):
        for j in range(res.D.cols):
            if j != i and d[i][j]:
                raise AssertionError("SNF not diagonal")
    for x, y in zip(diag, diag[1:]):
        if y and x == 0:
            raise AssertionError("SNF zero before nonzero")
        if x and y % x:
            raise AssertionError("SNF divisibility chain broken")
    if abs(res.P.det()) != 1 or abs(res.Q.det()) != 1:
        raise AssertionError("SNF transforms not unimodular")
    if res.P.mul(M).mul(res.Q) != res.D:
        raise AssertionError("P*M*Q != D")


def inv_fraction(rows):
    """Exact inverse of a square matrix given as rows of ints/Fractions,
    returned as rows of Fractions."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def mat_fraction_mul(A, B):
    """Product of two matrices with Fraction/int entries (lists of rows)."""
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def left_kernel(M):
    """Basis (rows) of the integer left kernel {x : x*M = 0}."""
    res = hnf(M)
    return [res.U.data[i] for i in range(res.rank, res.U.rows)]


def lattice_index(mat_a, den_a, mat_b, den_b):
    """Generalized index [A : B] for full-rank lattices A = (1/den_a)*rowspan
    and B likewise; integer when B is contained in A."""
    na, nb = len(mat_a), len(mat_b)
    if na != nb or len(mat_a[0]) != len(mat_b[0]):
        raise ValueError("rank mismatch")
    da, db = det_int(mat_a), det_int(mat_b)
    if da == 0 or db == 0:
        raise ValueError("rank-deficient lattice")
    return abs(Fraction(db, den_b ** nb) / Fraction(da, den_a ** na))


def reduce_mod_hnf(H, v):
    """Canonical representative of v modulo the row span of the full-rank
    upper-triangular HNF matrix H.  Pivots are consumed front-to-back; row i
    only touches columns >= i, so the result lands in the HNF box."""
    n = len(v)
    w = list(v)
    for i in range(n):
        q = w[i] // H[i][i]
        if q:
            for j in range(i, n):
                w[j] -= q * H[i][j]
    return tuple(w)


def vector_in_span(H, v):
    """Membership of integer vector v in the row span of full-rank HNF H."""
    n = len(v)
    w = list(v)
    for i in range(n):
        if w[i] % H[i][i]:
            return False
        q = w[i] // H[i][i]
        if q:
            for j in range(i, n):
                w[j] -= q * H[i][j]
    return all(x == 0 for x in w)


def content(rows):
    g = 0
    for r in rows:
        for x in r:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g
