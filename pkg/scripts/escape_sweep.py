"""Rates of escape of the basic walk across theta, against the drift of the distance chain."""
import argparse

import numpy as np

from lamptree import FreeProductSignature, basic_walk, escape_rates


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=3)
    ap.add_argument("--b", type=int, default=0)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--n", type=int, default=5000)
    ap.add_argument("--N", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    sig = FreeProductSignature(args.a, args.b)
    print("theta,m_drift,m_hat,m_se,ell_hat,ell_se")
    for theta in np.round(np.arange(0.1, 1.0, 0.1), 2):
        est = escape_rates(basic_walk(sig, args.r, float(theta)), args.n, args.N, args.seed, args.workers)
        drift = theta * (sig.q - 1) / (sig.q + 1)
        print(f"{theta},{drift:.6f},{est.m_hat:.6f},{est.m_se:.6f},{est.ell_hat:.6f},{est.ell_se:.6f}")


if __name__ == "__main__":
    main()
