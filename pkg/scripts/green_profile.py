"""Hitting probabilities F(o, x_d) of the projected walk versus q^-d."""
import argparse

from lamptree import FreeProductSignature, green_decay_profile, lazy_tree_walk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=3)
    ap.add_argument("--b", type=int, default=0)
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--dmax", type=int, default=6)
    ap.add_argument("--N", type=int, default=20000)
    ap.add_argument("--horizon", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sig = FreeProductSignature(args.a, args.b)
    prof = green_decay_profile(lazy_tree_walk(sig, args.theta), range(args.dmax + 1), args.N, args.horizon, args.seed)
    print("d,F_hat,F_se,G_hat,G_se,q^-d,truncation_suspect")
    for d, e in prof.items():
        print(f"{d},{e.F_hat:.5f},{e.F_se:.5f},{e.G_hat:.5f},{e.G_se:.5f},{sig.q ** -d:.5f},{int(e.truncation_suspect)}")


if __name__ == "__main__":
    main()
