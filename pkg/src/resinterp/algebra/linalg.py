"""Exact dense linear algebra over Q(i) and determinants of polynomial matrices.

Matrices are lists of rows.
"""

from ..errors import NonInvertibleError
from .scalar import ONE, ZERO, as_scalar


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for k in range(n):
        m[k][k] = ONE
    return m


def matmul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([_dot(row, col) for col in bt])
    return out


def matvec(a, v):
    return [_dot(row, v) for row in a]


def _dot(u, v):
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def dot(u, v):
    return _dot(u, v)


def transpose(a):
    return [list(r) for r in zip(*a)]


def trace(a):
    acc = ZERO
    for k in range(len(a)):
        acc = acc + a[k][k]
    return acc


def is_symmetric(a):
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def det(a):
    """Determinant by Gaussian elimination."""
    m = [list(map(as_scalar, row)) for row in a]
    n = len(m)
    result = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * inv
                row_c = m[c]
                m[r] = [x - f * y if y else x for x, y in zip(m[r], row_c)]
    return result


def solve(a, b):
    """Solve ``a x = b`` for square non-singular ``a``; ``b`` is a vector."""
    n = len(a)
    m = [list(map(as_scalar, row)) + [as_scalar(b[k])] for k, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise NonInvertibleError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[c])]
    return [m[k][n] for k in range(n)]


def inverse(a):
    n = len(a)
    cols = [solve(a, [ONE if i == k else ZERO for i in range(n)]) for k in range(n)]
    return transpose(cols)


def charpoly(a):
    """Coefficients ``[c_0, ..., c_N]`` (``c_N = 1``) of ``det(x I - a)``.

    Faddeev-LeVerrier recursion; exact over Q(i).
    """
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = zeros(n, n)
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        mk = matmul(a, mk)
        for i in range(n):
            mk[i][i] = mk[i][i] + prev
        am = matmul(a, mk)
        coeffs[n - k] = -trace(am) / k
    return coeffs


def krylov_minpoly(a, v):
    """Monic annihilator of ``v`` under ``a``, lowest degree first."""
    basis = []      # echelonised Krylov vectors with their combination records
    n = len(v)
    cur = [as_scalar(x) for x in v]
    k = 0
    while True:
        vec = list(cur)
        comb = [ZERO] * k + [ONE]
        for pivot, bvec, bcomb in basis:
            f = vec[pivot]
            if f:
                vec = [x - f * y for x, y in zip(vec, bvec)]
                comb = [x - f * y for x, y in zip(comb, bcomb + [ZERO] * (len(comb) - len(bcomb)))]
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            return comb
        inv = vec[pivot].inverse()
        basis.append((pivot, [x * inv for x in vec], [x * inv for x in comb]))
        cur = matvec(a, cur)
        k += 1
        if k > n:
            raise AssertionError("Krylov sequence failed to terminate")


def det_cofactor(m, zero):
    """Laplace expansion along the first row; any commutative ring."""
    n = len(m)
    if n == 0:
        return zero + 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = zero
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_bareiss(m, exact_div, zero):
    """Fraction-free Bareiss elimination; ``exact_div(a, b)`` divides exactly."""
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return zero + 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else exact_div(num, prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d
