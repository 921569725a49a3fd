"""Element-level recomputation of a few structures, independent of the whiskering code.

Elements are plain lists of scalars; products are evaluated from structure
constants with explicit loops.
"""

def scal(field, x):
    return field.scalar(x)


def entries(m):
    return [[m.entries[i, j] for j in range(m.cols)] for i in range(m.rows)]


def mult(field, a, x, y):
    n, M = a.dim, entries(a.mult)
    out = [field.zero] * n
    for i in range(n):
        for j in range(n):
            c = x[i] * y[j]
            if c:
                for k in range(n):
                    out[k] += M[k][i * n + j] * c
    return [field.scalar(v) for v in out]


def comult(field, c, x):
    """``Delta(x)`` as a dict ``(i, j) -> coefficient``."""
    n, D = c.dim, entries(c.comult)
    out = {}
    for i in range(n):
        for j in range(n):
            v = sum((D[i * n + j][k] * x[k] for k in range(n)), field.zero)
            v = field.scalar(v)
            if v:
                out[(i, j)] = v
    return out


def counit(field, c, x):
    return field.scalar(sum((c.counit.entries[0, k] * x[k] for k in range(c.dim)), field.zero))


def basis(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v


def psi_R_column(field, h, c_index, a_index):
    """``c (x) a -> a_1 (x) c a_2`` on basis vectors, as a vector on ``A (x) C``."""
    n = h.dim
    out = [field.zero] * (n * n)
    for (i, j), v in comult(field, h, basis(field, n, a_index)).items():
        prod_ = mult(field, h, basis(field, n, c_index), basis(field, n, j))
        for k in range(n):
            out[i * n + k] = field.scalar(out[i * n + k] + v * prod_[k])
    return out


def target(field, h, x):
    """``eps(1_1 x) 1_2``."""
    n = h.dim
    one = [h.unit.entries[i, 0] for i in range(n)]
    out = [field.zero] * n
    for (i, j), v in comult(field, h, one).items():
        e = counit(field, h, mult(field, h, basis(field, n, i), x))
        for k in range(n):
            out[k] = field.scalar(out[k] + v * e * basis(field, n, j)[k])
    return out


def smash_product(field, h, a_basis, a, h1, b, h2):
    """``(a # h1)(b # h2) = a (h1_1 . b) # h1_2 h2`` in ``H_t (x) H``.

    ``a`` and ``b`` are coordinate vectors in the basis ``a_basis`` of the
    target subalgebra (given as elements of ``H``); the result is the
    element of ``H (x) H`` before choosing coordinates on ``H_t``.
    """
    n = h.dim

    def elem(coords):
        out = [field.zero] * n
        for c, v in zip(coords, a_basis):
            for k in range(n):
                out[k] = field.scalar(out[k] + c * v[k])
        return out

    A, B = elem(a), elem(b)
    out = [[field.zero] * n for _ in range(n)]
    for (i, j), v in comult(field, h, h1).items():
        acted = target(field, h, mult(field, h, basis(field, n, i), B))
        left = mult(field, h, A, acted)
        right = mult(field, h, basis(field, n, j), h2)
        for p in range(n):
            for q in range(n):
                out[p][q] = field.scalar(out[p][q] + v * left[p] * right[q])
    return out

