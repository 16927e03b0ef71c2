"""Harmonic measure of depth-k end cylinders, with and without a lamp constraint at the root."""
import argparse

from lamptree import ROOT, CylinderEvent, FreeProductSignature, basic_walk, cylinder_events
from lamptree.boundary import simulate_records, tally_events


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=0.5)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--N", type=int, default=2000)
    ap.add_argument("--horizon", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    mu = basic_walk(FreeProductSignature(3, 0), 2, args.theta)
    recs = simulate_records(mu, args.horizon, args.N, args.seed, args.depth)
    print("k,event,p_hat,std_err,indeterminate")
    for k in range(1, args.depth + 1):
        est = tally_events(recs, cylinder_events(mu.group, k))
        for ev, p, se, ind in zip(est.events, est.p_hat, est.std_err, est.indeterminate):
            print(f"{k},{ev},{p:.5f},{se:.5f},{ind}")
    lit = tally_events(recs, [CylinderEvent.make(None, {ROOT: 1})])
    print(f"0,{lit.events[0]},{lit.p_hat[0]:.5f},{lit.std_err[0]:.5f},{lit.indeterminate[0]}")


if __name__ == "__main__":
    main()
