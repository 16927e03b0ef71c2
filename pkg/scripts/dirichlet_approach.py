"""Harmonic extension of a cylinder indicator along g_k -> beta, with the exact target per k.

For r = 2 the target follows from a renewal argument at the root: the walk from
depth k returns to o with probability q^-k, and from o the lamp parity and the
escape branch settle as a two-state linear system.
"""
import argparse

import numpy as np

from lamptree import ROOT, BoundaryFunction, BoundaryPoint, Configuration, EndPrefix, FreeProductSignature
from lamptree import basic_walk, dirichlet_boundary_convergence


def root_values(q, theta):
    ret = theta / q
    esc = theta * (1 - 1 / q) / (q + 1)
    M = np.array([[1 - ret, -(1 - theta)], [-(1 - theta), 1 - ret]])
    return np.linalg.solve(M, [0.0, esc])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=0.5)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--N", type=int, default=5000)
    ap.add_argument("--horizon", type=int, default=200)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()
    sig = FreeProductSignature(3, 0)
    q = sig.q
    mu = basic_walk(sig, 2, args.theta)
    u = sig.ray_vertex(args.kmax + 2)
    beta = BoundaryPoint(Configuration.delta(2), EndPrefix(u))
    f = BoundaryFunction.cylinder(sig.vertex(u.syllables[0]), {ROOT: 1})
    a1 = root_values(q, args.theta)[1]
    print("k,h_hat,std_err,indeterminate,exact")
    for p in dirichlet_boundary_convergence(mu, f, beta, range(1, args.kmax + 1), args.N, args.horizon, args.seed):
        exact = 1 - q ** -p.k + q ** -p.k * a1
        e = p.estimate
        print(f"{p.k},{e.h_hat:.5f},{e.std_err:.5f},{e.indeterminate},{exact:.5f}")


if __name__ == "__main__":
    main()
