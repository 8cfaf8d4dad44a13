#!/usr/bin/env python3
"""Reference values of g_n(z) = sum_k (-z)^k/(2k+n)! at 20 digits, summed at 120-digit working precision (mpmath)."""
import mpmath as mp

mp.mp.dps = 120


def g(n, z):
    return mp.nsum(lambda k: (-z) ** k / mp.factorial(2 * k + n), [0, mp.inf])


def main():
    zs = [0, 1e-12, -1e-9, 0.1, -0.1, 0.25, -0.25, 0.9, -0.9, 1, -1, 2.5, -2.5, 3, -4,
          mp.pi ** 2, 7.5, -7.5, 12, -12, 30, -30, 55.5, -55.5, 100, -100, 400, -400,
          1234.5, -1234.5, 1e4, -1e4]
    print("z," + ",".join("g%d" % n for n in range(15)))
    for z in zs:
        z = mp.mpf(z)
        print(",".join([mp.nstr(z, 20)] + [mp.nstr(g(n, z), 20) for n in range(15)]))


if __name__ == "__main__":
    main()
