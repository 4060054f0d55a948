#!/usr/bin/env python3
"""Recompute reference values with plain Python integers and sympy.

    derive.py --write derived.json   regenerate the frozen file
    derive.py --check derived.json   fail if anything drifted

Nothing here calls into the C++ library; the unit test `derived_test`
compares the library against the same file.
"""

import argparse
import itertools
import json
import sys
from math import gcd, isqrt

from sympy import factorint, isprime, nextprime, primerange


def deriv(primes):
    n = 1
    for p in primes:
        n *= p
    return sum(n // p for p in primes)


def prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def delta(R, c, primes):
    return c * prod(primes) - R * deriv(primes)


def ambient(primes):
    return prod(primes), prod(primes) - deriv(primes)


def problem(R, c, m):
    P0 = pow(c, -1, R)
    S0 = (c * P0 - 1) // R
    U = max(m + 1, R // c + 1)
    T = (U * U - S0 * U + P0) // (c * U - R)
    return {"P0": P0, "S0": S0, "U": U, "T": T}


def disc(R, c, pb, t):
    return (pb["S0"] + c * t) ** 2 - 4 * (pb["P0"] + t * R)


def square_hits(R, c, pb):
    hits = []
    for t in range(pb["T"] + 1):
        d = disc(R, c, pb, t)
        if d < 0:
            continue
        r = isqrt(d)
        if r * r != d:
            continue
        s = pb["S0"] + c * t
        if (s - r) % 2:
            continue
        u, v = (s - r) // 2, (s + r) // 2
        if u >= pb["U"] and u < v and isprime(u) and isprime(v) and R % u and R % v:
            hits.append([t, u, v])
    return hits


def sieve_classes(R, c, pb, l):
    q = sorted({x * x % l for x in range(l)})
    qs = set(q)
    allowed = [t for t in range(l) if disc(R, c, pb, t) % l in qs]
    return {"qr_set": q, "allowed": allowed}


def smallest_pocklington_base(p):
    f = factorint(p - 1)
    for a in range(2, 10000):
        if pow(a, p - 1, p) != 1:
            continue
        if all(gcd(pow(a, (p - 1) // q, p) - 1, p) == 1 for q in f):
            return a, f
    raise RuntimeError(p)


def prefix_fillings(R, c, floor, k, limit):
    """k-prime fillings of (R, c) with every prime in (floor, limit)."""
    ps = [p for p in primerange(floor + 1, limit) if R % p]
    return [list(s) for s in itertools.combinations(ps, k) if delta(R, c, s) == 1]


def completions_by_last_prime(R, c, floor, k, limit):
    """Fillings whose first k-1 primes lie below `limit`; the last prime is
    solved from (k-1)-prefix B: x = (R*B + 1) / delta(B)."""
    ps = [p for p in primerange(floor + 1, limit) if R % p]
    out = []
    for s in itertools.combinations(ps, k - 1):
        d = delta(R, c, s)
        if d < 1 or (R * prod(s) + 1) % d:
            continue
        x = (R * prod(s) + 1) // d
        if x > s[-1] and isprime(x) and R % x:
            out.append(list(s) + [x])
    return sorted(out)


def local_count(R, c, l):
    cr, rr = c % l, R % l
    n = 0
    for x in itertools.product(range(1, l), repeat=5):
        e4 = sum(prod(x[j] for j in range(5) if j != i) for i in range(5))
        if (cr * prod(x) - rr * e4 - 1) % l == 0:
            n += 1
    return n


def derive():
    H_primes = [2, 3, 11, 17, 101]
    HR, Hc = ambient(H_primes)
    out = {}

    out["ambient_66"] = list(ambient([2, 3, 11]))
    out["ambient_H"] = [HR, Hc]
    out["congruences_66_5"] = [pow(5, -1, 66), (-pow(66, -1, 5)) % 5]
    out["congruences_H"] = [pow(Hc, -1, HR), (-pow(HR, -1, Hc)) % Hc]

    out["delta_H_157_1979"] = delta(HR, Hc, [157, 1979])
    out["delta_H_149"] = delta(HR, Hc, [149])
    out["derivative_2_3_5_7"] = deriv([2, 3, 5, 7])
    out["defect_1806"] = 1806 - deriv([2, 3, 7, 43])

    toy = problem(6, 1, 5)
    out["problem_6_1_m5"] = toy
    out["hits_6_1_m5"] = square_hits(6, 1, toy)

    ph = problem(HR, Hc, 101)
    out["problem_H_m101"] = ph
    out["D_H_m101_t4"] = disc(HR, Hc, ph, 4)
    out["hits_H_m101"] = square_hits(HR, Hc, ph)
    out["sieve_H_m101_l11"] = sieve_classes(HR, Hc, ph, 11)
    out["sieve_H_m101_l13"] = sieve_classes(HR, Hc, ph, 13)

    iR, ic = HR * 157 * 1979, delta(HR, Hc, [157, 1979])
    out["induced_H_157_1979"] = [iR, ic]
    pi = problem(iR, ic, 1979)
    out["problem_induced_m1979"] = pi
    out["hits_induced_m1979"] = square_hits(iR, ic, pi)

    out["fillings_6_1_k2"] = prefix_fillings(6, 1, 3, 2, 2000)
    out["fillings_6_1_k3"] = prefix_fillings(6, 1, 3, 3, 400)
    out["fillings_6_1_k4"] = completions_by_last_prime(6, 1, 3, 4, 400)


    bases = {}
    for p in [1000003, 407221, 21807157, 480382349, 2147483647]:
        a, f = smallest_pocklington_base(p)
        bases[str(p)] = {"base": a, "p_minus_1": [[q, e] for q, e in sorted(f.items())]}
    out["pocklington_bases"] = bases

    out["local_counts_6_1_7"] = {str(l): local_count(6, 1, l) for l in [2, 3, 5, 7, 11]}
    n9, n9c = 5998279018951962402, 1
    out["local_counts_N9"] = {str(l): local_count(n9, n9c, l) for l in [2, 3, 5, 7]}

    out["mod288"] = {"N9": 5998279018951962402 % 288, "N10": 35979351189199316534587473905773572006 % 288}
    return stringify(out)


def stringify(v):
    """Big integers as decimal strings, everything else as is."""
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, list):
        return [stringify(x) for x in v]
    if isinstance(v, dict):
        return {k: stringify(x) for k, x in v.items()}
    return v


def main():
    ap = argparse.ArgumentParser()
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--write")
    g.add_argument("--check")
    args = ap.parse_args()
    data = derive()
    if args.write:
        with open(args.write, "w") as f:
            json.dump(data, f, indent=2)
            f.write("\n")
        return 0
    with open(args.check) as f:
        frozen = json.load(f)
    bad = [k for k in sorted(set(data) | set(frozen)) if data.get(k) != frozen.get(k)]
    for k in bad:
        print(f"MISMATCH {k}: derived {data.get(k)!r} frozen {frozen.get(k)!r}")
    print(f"{len(data) - len(bad)} of {len(data)} derived values match")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
