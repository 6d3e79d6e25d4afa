#!/usr/bin/env python3
"""Check Butcher tableau data files against the Runge-Kutta order conditions.

For each *.tab file under crates/core/data/ this script parses the tableau,
enumerates all rooted trees up to the declared order, and evaluates the
elementary-weight residuals Phi(t) - 1/gamma(t) in 60-digit arithmetic.
Every residual must be below 1e-20, and the row-sum consistency
c_i = sum_j a_ij must hold to the same tolerance.

Usage: python3 tools/verify_tableaus.py
"""

import os
import sys
from decimal import Decimal
from fractions import Fraction

from mpmath import mp, mpf

mp.dps = 60
TOL = mpf("1e-20")


def parse_value(tok):
    if "/" in tok:
        p, q = tok.split("/")
        return Fraction(int(p), int(q))
    if "." in tok or "e" in tok or "E" in tok:
        return Fraction(Decimal(tok))
    return Fraction(tok)


def parse_tableau(path):
    order = None
    stages = None
    c = []
    b = []
    a = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            key = parts[0]
            if key == "order":
                order = int(parts[1])
            elif key == "stages":
                stages = int(parts[1])
            elif key == "c":
                c = [parse_value(t) for t in parts[1:]]
            elif key == "b":
                b = [parse_value(t) for t in parts[1:]]
            elif key == "a":
                i, j = int(parts[1]), int(parts[2])
                a[(i, j)] = parse_value(parts[3])
            else:
                raise ValueError(f"unknown key {key!r} in {path}")
    amat = [[a.get((i, j), Fraction(0)) for j in range(stages)] for i in range(stages)]
    return order, stages, c, amat, b


def rooted_trees(max_order):
    """All rooted trees with up to max_order nodes, as canonical nested tuples."""
    by_order = {1: [()]}
    for n in range(2, max_order + 1):
        seen = set()
        trees = []
        # A tree with n nodes is a root whose child subtrees partition n-1 nodes.
        def extend(remaining, min_child, children):
            if remaining == 0:
                t = tuple(sorted(children))
                if t not in seen:
                    seen.add(t)
                    trees.append(t)
                return
            for k in range(min_child, remaining + 1):
                for sub in by_order[k]:
                    extend(remaining - k, k, children + [(k, sub)])

        def extend_wrap(n):
            # children stored as (size, tree) pairs to keep ordering canonical
            extend(n - 1, 1, [])

        extend_wrap(n)
        by_order[n] = [tuple(child for (_, child) in t) for t in trees]
        # Dedup after stripping sizes.
        by_order[n] = sorted(set(by_order[n]))
    out = []
    for n in range(1, max_order + 1):
        out.extend((n, t) for t in by_order[n])
    return out


def gamma(tree, size_cache):
    """Density gamma(t)."""
    n = tree_size(tree, size_cache)
    g = n
    for child in tree:
        g *= gamma(child, size_cache)
    return g


def tree_size(tree, cache):
    if tree in cache:
        return cache[tree]
    n = 1 + sum(tree_size(c, cache) for c in tree)
    cache[tree] = n
    return n


def phi_vector(tree, a, c, stages, memo):
    """Per-stage elementary weights phi_i(t)."""
    if tree in memo:
        return memo[tree]
    if tree == ():
        v = [mpf(1)] * stages
    else:
        v = [mpf(1)] * stages
        for child in tree:
            cv = phi_vector(child, a, c, stages, memo)
            for i in range(stages):
                acc = mpf(0)
                for j in range(stages):
                    if a[i][j]:
                        acc += mpf(a[i][j].numerator) / mpf(a[i][j].denominator) * cv[j]
                v[i] *= acc
    memo[tree] = v
    return v


def check(path):
    order, stages, c, a, b = parse_tableau(path)
    assert len(c) == stages and len(b) == stages
    ok = True
    # Explicitness and row-sum consistency.
    for i in range(stages):
        for j in range(i, stages):
            if a[i][j] != 0:
                print(f"  FAIL: a[{i}][{j}] nonzero (not explicit)")
                ok = False
        rowsum = sum(a[i][:i], Fraction(0))
        dev = abs(mpf((rowsum - c[i]).numerator) / mpf((rowsum - c[i]).denominator or 1))
        if dev > TOL:
            print(f"  FAIL: row {i}: |sum(a) - c| = {dev}")
            ok = False
    # Order conditions over all rooted trees.
    memo = {}
    size_cache = {}
    worst = mpf(0)
    nchecked = 0
    for n, tree in rooted_trees(order):
        v = phi_vector(tree, a, c, stages, memo)
        phi = mpf(0)
        for i in range(stages):
            phi += mpf(b[i].numerator) / mpf(b[i].denominator) * v[i]
        g = gamma(tree, size_cache)
        resid = abs(phi - mpf(1) / mpf(g))
        worst = max(worst, resid)
        nchecked += 1
        if resid > TOL:
            print(f"  FAIL: tree {tree} (order {n}): residual {resid}")
            ok = False
    print(f"  {nchecked} order conditions up to order {order}; worst residual {worst}")
    return ok


def main():
    data_dir = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")
    all_ok = True
    for name in sorted(os.listdir(data_dir)):
        if not name.endswith(".tab"):
            continue
        print(f"{name}:")
        all_ok &= check(os.path.join(data_dir, name))
    if not all_ok:
        sys.exit(1)
    print("all tableaus verified")


if __name__ == "__main__":
    main()
