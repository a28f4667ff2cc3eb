#!/usr/bin/env python3
"""Write the multiplication table of the wreath product C_p wr C_p.

Elements are pairs (v, k) with v in (Z/p)^p and k in Z/p, multiplied as
(v, k)(w, l) = (v + shift_k(w), k + l) where shift_k(w)_i = w_(i-k).
Element (v, k) gets index k*p^p + sum v_i p^i, so the identity comes first.
Output uses the table file format: the order, then one row per element of
1-based indices.
"""
import argparse
import itertools
import sys


def build(p):
    vectors = list(itertools.product(range(p), repeat=p))
    index_of_vec = {v: sum(c * p**i for i, c in enumerate(v)) for v in vectors}
    base = p**p
    elems = [(v, k) for k in range(p) for v in sorted(vectors, key=index_of_vec.get)]

    def index(v, k):
        return k * base + index_of_vec[v]

    def mul(a, b):
        (v, k), (w, l) = a, b
        shifted = tuple(w[(i - k) % p] for i in range(p))
        return tuple((x + y) % p for x, y in zip(v, shifted)), (k + l) % p

    return [[index(*mul(a, b)) for b in elems] for a in elems]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("-o", "--output", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args()
    table = build(args.p)
    out = args.output
    out.write(f"{len(table)}\n")
    for row in table:
        out.write(" ".join(str(x + 1) for x in row) + "\n")


if __name__ == "__main__":
    main()
