# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integral LLL kernel (Lovasz parameter delta = num/den, default 3/4).

Same all-integer algorithm as _kernel_py (d[i] = leading Gram determinants,
lam[i][j] = mu * d[j+1]); values stay arbitrary-precision Python ints, the
speedup comes from compiling away the interpreter loop overhead around them.
Semantics must match _kernel_py.lll_reduce_int exactly; the parity test in
tests/test_kernel.py holds both to identical outputs.
"""


def lll_reduce_int(rows, delta_num=3, delta_den=4):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t dim, i, j, k, t, c
    b = [list(map(int, r)) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 1:
        if all(x == 0 for x in b[0]):
            raise ValueError("zero row")
        return b, u
    dim = len(b[0])

    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = 0
            bi = b[i]
            bj = b[j]
            for c in range(dim):
                s += bi[c] * bj[c]
            li = lam[i]
            lj = lam[j]
            for t in range(j):
                s = (d[t + 1] * s - li[t] * lj[t]) // d[t]
            if j < i:
                li[j] = s
            else:
                if s <= 0:
                    raise ValueError(f"rows are linearly dependent (row {i})")
                d[i + 1] = s

    k = 1
    while k < n:
        _size_reduce(b, u, lam, d, n, dim, k, k - 1)
        lk = lam[k][k - 1]
        if delta_den * (d[k + 1] * d[k - 1] + lk * lk) < delta_num * d[k] * d[k]:
            b[k - 1], b[k] = b[k], b[k - 1]
            u[k - 1], u[k] = u[k], u[k - 1]
            lkm1 = lam[k - 1]
            lkk = lam[k]
            for j in range(k - 1):
                lkm1[j], lkk[j] = lkk[j], lkm1[j]
            dk_new = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
            for i in range(k + 1, n):
                li = lam[i]
                t_km1 = li[k - 1]
                t_k = li[k]
                li[k] = (d[k + 1] * t_km1 - lk * t_k) // d[k]
                li[k - 1] = (d[k - 1] * t_k + lk * t_km1) // d[k]
            d[k] = dk_new
            k = k - 1 if k > 1 else 1
        else:
            for j in range(k - 2, -1, -1):
                _size_reduce(b, u, lam, d, n, dim, k, j)
            k += 1
    return b, u


cdef _size_reduce(list b, list u, list lam, list d, Py_ssize_t n, Py_ssize_t dim,
                  Py_ssize_t k, Py_ssize_t j):
    cdef Py_ssize_t c, t
    lk = lam[k]
    if 2 * abs(lk[j]) > d[j + 1]:
        q = (2 * lk[j] + d[j + 1]) // (2 * d[j + 1])
        bk = b[k]
        bj = b[j]
        for c in range(dim):
            bk[c] = bk[c] - q * bj[c]
        uk = u[k]
        uj = u[j]
        for c in range(n):
            uk[c] = uk[c] - q * uj[c]
        lk[j] = lk[j] - q * d[j + 1]
        lj = lam[j]
        for t in range(j):
            lk[t] = lk[t] - q * lj[t]
