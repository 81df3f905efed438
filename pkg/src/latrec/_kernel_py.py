"""Pure-Python integral LLL kernel (Lovasz parameter delta = num/den).

All-integer variant: instead of rational Gram-Schmidt data it maintains
  d[i]      = Gram determinant of the first i rows (d[0] = 1),
  lam[i][j] = mu_{j,i} * d[j+1]  (an integer, for j < i),
so every update is exact integer arithmetic with exact divisions.  The swap
condition den*(d[k+1]*d[k-1] + lam^2) < num*d[k]^2 is the Lovasz condition
with delta = num/den cleared of denominators; the default is 3/4.  delta = 1
also terminates: the strict inequality means every swap strictly decreases
the positive integer d[k].

The kernel only accepts integer rows; callers clear denominators first (the
reduction decisions are invariant under scaling a basis, so the transform
computed for q*B is the transform for B).
"""

from __future__ import annotations


def lll_reduce_int(
    rows: list[list[int]], delta_num: int = 3, delta_den: int = 4
) -> tuple[list[list[int]], list[list[int]]]:
    """Reduce integer basis rows in place-order; return (reduced_rows, u_rows).

    u_rows is the unimodular transform: reduced = U @ input (row convention).
    Raises ValueError on linearly dependent input rows.
    """
    n = len(rows)
    b = [list(map(int, r)) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 1:
        if all(x == 0 for x in b[0]):
            raise ValueError("zero row")
        return b, u

    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = 0
            bi, bj = b[i], b[j]
            for a, c in zip(bi, bj):
                s += a * c
            for t in range(j):
                s = (d[t + 1] * s - lam[i][t] * lam[j][t]) // d[t]
            if j < i:
                lam[i][j] = s
            else:
                if s <= 0:
                    raise ValueError(f"rows are linearly dependent (row {i})")
                d[i + 1] = s

    def size_reduce(k: int, j: int) -> None:
        if 2 * abs(lam[k][j]) > d[j + 1]:
            q = (2 * lam[k][j] + d[j + 1]) // (2 * d[j + 1])
            bk, bj = b[k], b[j]
            for c in range(len(bk)):
                bk[c] -= q * bj[c]
            uk, uj = u[k], u[j]
            for c in range(n):
                uk[c] -= q * uj[c]
            lam[k][j] -= q * d[j + 1]
            for t in range(j):
                lam[k][t] -= q * lam[j][t]

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        lk = lam[k][k - 1]
        if delta_den * (d[k + 1] * d[k - 1] + lk * lk) < delta_num * d[k] * d[k]:
            # swap rows k-1 and k, updating the integral GS data
            b[k - 1], b[k] = b[k], b[k - 1]
            u[k - 1], u[k] = u[k], u[k - 1]
            for j in range(k - 1):
                lam[k - 1][j], lam[k][j] = lam[k][j], lam[k - 1][j]
            dk_new = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
            for i in range(k + 1, n):
                t_km1, t_k = lam[i][k - 1], lam[i][k]
                lam[i][k] = (d[k + 1] * t_km1 - lk * t_k) // d[k]
                lam[i][k - 1] = (d[k - 1] * t_k + lk * t_km1) // d[k]
            d[k] = dk_new
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
    return b, u
