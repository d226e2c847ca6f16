"""Follow the singularities of the base-e Abel correction as the log branch grows.

For each branch ``n`` a Newton root of ``beta(s-1) + lam s / mu = 2 pi i n / mu``
is printed together with the jet radius estimate at ``s = 0.5`` for growing
depth.  Both columns shrink toward the real axis.
"""
import argparse

from betatet import Params, Sentinel, TauConfig, locate_singularity, radius_estimate, tau_jet


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--branches", type=int, default=6)
    ap.add_argument("--guess", type=complex, default=5 + 0.5j)
    ap.add_argument("--order", type=int, default=40)
    args = ap.parse_args()
    p = Params(1, 1)

    print("branch  root                                   |Im|")
    guess = args.guess
    for n in range(1, args.branches + 1):
        r = locate_singularity(guess, n, p)
        if isinstance(r, Sentinel):
            print(f"{n:6d}  {r}")
            continue
        print(f"{n:6d}  {r.real:.12f} {r.imag:+.12f}i  {abs(r.imag):.6f}")
        guess = r  # continuation from the previous root

    print("\ndepth  radius estimate at s = 0.5")
    for depth in range(2, 8):
        jet = tau_jet(0.5, args.order, p, TauConfig(depth, 0, 1e-300))
        est = jet if isinstance(jet, Sentinel) else f"{radius_estimate(jet):.6f}"
        print(f"{depth:5d}  {est}")


if __name__ == "__main__":
    main()
