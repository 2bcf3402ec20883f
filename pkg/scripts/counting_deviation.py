"""Deviation of the lattice counts from m^2/8, m^2/8 and m^2/12, scaled by m."""

import argparse

from eqseq.charsums import counting_sums


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-m", type=int, default=201)
    args = parser.parse_args()

    print("m,c1,c2,c3,dev1,dev2,dev3")
    worst = [0.0, 0.0, 0.0]
    for m in range(9, args.max_m + 1, 2):
        c = counting_sums(m)
        dev = [abs(c[0] - m * m / 8) / m, abs(c[1] - m * m / 8) / m, abs(c[2] - m * m / 12) / m]
        worst = [max(w, d) for w, d in zip(worst, dev)]
        print(f"{m},{c[0]},{c[1]},{c[2]},{dev[0]:.5f},{dev[1]:.5f},{dev[2]:.5f}")
    print(f"# max deviation/m: {worst}")


if __name__ == "__main__":
    main()
