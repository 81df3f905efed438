"""Independent oracle for the frozen example values used in the test suite.

Uses sympy/mpmath only (none of the package code) so the numbers below are
derived on a separate route from the implementation under test.  Run:

    python tools/derive_examples.py

and compare the output against the constants frozen in tests/.
"""

import math
from itertools import product

import mpmath as mp
import sympy as sp

mp.mp.dps = 30


def gso_example():
    B = sp.Matrix([[1, 1], [0, 2]])
    b1 = B.row(0).T
    b2 = B.row(1).T
    mu = b2.dot(b1) / b1.dot(b1)
    bt2 = b2 - mu * b1
    print("gso [[1,1],[0,2]]: gs_norms_sq =", [b1.dot(b1), bt2.dot(bt2)], "mu_21 =", mu)


def gram_examples():
    for rows in ([[4, 1], [9, 2]], [[2, 0], [0, 3]]):
        M = sp.Matrix(rows)
        print("gram_det_sq", rows, "=", (M * M.T).det())


def orthogonal_examples():
    # Z^3 against the rank-1 sublattice of its dual generated by (1,1,1).
    K = sp.Matrix([[1, -1, 0], [0, 1, -1]])  # integer solutions of x+y+z=0
    print("det^2 of Z^3 cap (1,1,1)^perp =", (K * K.T).det())
    v = sp.Matrix([1, 1, 1])
    P = sp.eye(3) - v * v.T / 3
    e1p = (P.T * sp.Matrix([1, 0, 0])).T
    e2p = (P.T * sp.Matrix([0, 1, 0])).T
    Bp = sp.Matrix([list(e1p), list(e2p)])
    print("det^2 of projection of Z^3 onto (1,1,1)^perp =", (Bp * Bp.T).det())


def lll_example():
    M = sp.Matrix([[4, 1], [9, 2]])
    print("det [[4,1],[9,2]] =", M.det(), "(unimodular: lattice is Z^2, lambda_1^2 = 1)")


def svp_example():
    best = []
    for a, b in product(range(-6, 7), repeat=2):
        if (a, b) == (0, 0):
            continue
        vv = (2 * a + b, 2 * b)
        best.append((vv[0] ** 2 + vv[1] ** 2, (a, b), vv))
    best.sort()
    print("svp [[2,0],[1,2]] minima:", [x for x in best if x[0] == best[0][0]])


def hermite_values():
    exact = {1: 1, 2: sp.Rational(4, 3), 3: 2, 4: 4, 5: 8, 6: sp.Rational(64, 3), 7: 64, 8: 256}
    for k, v in exact.items():
        print(f"delta_{k} = ({v})^(1/{k}) =", mp.mpf(float(v)) ** (mp.mpf(1) / k))
    # Blichfeldt, even k: delta^k <= (2/pi)^k * ((k/2+1)!)^2
    k = 10
    d10_pow = mp.mpf(2 ** k * math.factorial(k // 2 + 1) ** 2) / mp.pi ** k
    print("blichfeldt delta_10^10 <=", d10_pow, "-> delta_10 <=", d10_pow ** (mp.mpf(1) / k))
    # Blichfeldt, odd k: j=(k+3)/2, Gamma(2+k/2) = (2j)! sqrt(pi) / (4^j j!)
    k = 9
    j = (k + 3) // 2
    g = sp.Rational(math.factorial(2 * j), 4 ** j * math.factorial(j))  # not an integer
    d9_pow = mp.mpf(float(2 ** k * g ** 2)) / mp.pi ** (k - 1)
    print("blichfeldt delta_9^9 <=", d9_pow, "-> delta_9 <=", d9_pow ** (mp.mpf(1) / 9))


def planner_values():
    d10 = ((mp.mpf(2) / mp.pi) * mp.gamma(7) ** (mp.mpf(2) / 10))
    print("planner asymptote (49/18)*log2(delta_10) =", mp.mpf(49) / 18 * mp.log(d10, 2))
    print("binomial call count C(6,2) =", math.comb(6, 2))


if __name__ == "__main__":
    gso_example()
    gram_examples()
    orthogonal_examples()
    lll_example()
    svp_example()
    hermite_values()
    planner_values()
