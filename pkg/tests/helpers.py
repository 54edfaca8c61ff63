"""Independent geometric oracles used only by the tests.

Points are mapped to Euclidean coordinates through a Cholesky factor of the
inverse Cartan matrix, and hull membership is decided by a feasibility LP.
"""
import numpy as np
from scipy.optimize import linprog


def euclid(cd):
    G = np.linalg.inv(np.array(cd.A, dtype=float))
    return np.linalg.cholesky(G).T  # x -> L x has |Lx|^2 = x^T A^{-1} x


def lp_in_hull(points, v, tol=1e-9):
    P = np.array(points, dtype=float).T
    v = np.array([float(a) for a in v])
    k = P.shape[1]
    A_eq = np.vstack([P, np.ones((1, k))])
    b_eq = np.concatenate([v, [1.0]])
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def lp_extreme_points(points):
    pts = list(dict.fromkeys(tuple(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or not lp_in_hull(others, p):
            out.append(p)
    return set(out)
