#!/usr/bin/env python3
"""Recompute the degree bounds with Python big integers.

Usage: bounds_oracle.py N M [N M ...]
Prints one JSON object per (n, m) pair, values as exact fraction strings.
"""
import json
import math
import sys
from fractions import Fraction


def bounds(n, m):
    if n <= 0 or m <= 0:
        raise ValueError("n and m must be positive")
    sigma = math.factorial(n + 1)
    sigma_derksen = Fraction(n * n * 4 ** (n * n), 4)
    beta_derksen = max(Fraction(2), Fraction(3, 8) * n ** 4 * sigma ** 2)
    beta_explicit = Fraction(3, 128) * n ** 8 * 16 ** (n * n)
    return {
        "n": n,
        "m": m,
        "sigma_factorial": str(Fraction(sigma)),
        "sigma_derksen": str(sigma_derksen),
        "beta_derksen": str(beta_derksen),
        "beta_explicit": str(beta_explicit),
    }


def main(argv):
    nums = [int(a) for a in argv]
    if not nums or len(nums) % 2:
        sys.exit("usage: bounds_oracle.py N M [N M ...]")
    for n, m in zip(nums[::2], nums[1::2]):
        print(json.dumps(bounds(n, m)))


if __name__ == "__main__":
    main(sys.argv[1:])
