"""Hyperoctahedral symmetry reduction for cube campaigns.

The symmetry group of the d-cube graph is the signed permutation group:
permute the d coordinates, then flip any subset of them (order 2^d * d!).
Campaigns over all terminal configurations of Q_d only need one
representative per group orbit; this module enumerates canonical
representatives and their orbit sizes.  Canonical means lexicographically
least image, comparing instances as (sorted subset, forbidden part,
sorted pairing) tuples.

The subset stage is the heavy part (every size-m subset of 2^d vertices
against every group element).  It runs vectorized: subsets become numpy
uint64 bitmasks over *reversed* vertex ids, under which "lexicographically
least subset" is exactly "numerically greatest mask", so one np.maximum
sweep per group element finds every orbit's representative.
"""

from __future__ import annotations

import itertools
import random
from math import comb, factorial
from typing import Optional, Sequence

import numpy as np

from .oracle import Instance, pairings


def group_order(d: int) -> int:
    return factorial(d) << d


def group_tables(d: int) -> list[tuple[int, ...]]:
    """All 2^d * d! vertex permutation tables of the signed permutation
    group acting on bit patterns: element (perm, flip) sends v to (bits of
    v moved by perm) xor flip.  Deterministic order."""
    if d > 6:
        raise ValueError("group enumeration supported for d <= 6")
    n = 1 << d
    out = []
    for perm in itertools.permutations(range(d)):
        base = [0] * n
        for v in range(n):
            w = 0
            for i in range(d):
                if (v >> i) & 1:
                    w |= 1 << perm[i]
            base[v] = w
        for flip in range(n):
            out.append(tuple(w ^ flip for w in base))
    return out


def random_table(d: int, rng: random.Random) -> tuple[int, ...]:
    n = 1 << d
    perm = list(range(d))
    rng.shuffle(perm)
    flip = rng.randrange(n)
    out = []
    for v in range(n):
        w = 0
        for i in range(d):
            if (v >> i) & 1:
                w |= 1 << perm[i]
        out.append(w ^ flip)
    return tuple(out)


def apply_instance(table: Sequence[int], inst: Instance) -> Instance:
    """Image of a (subset, forbidden, pairing) instance, re-normalized."""
    subset, forb, pr = inst
    nsub = tuple(sorted(table[v] for v in subset))
    nforb = tuple(sorted(table[v] for v in forb))
    npr = tuple(sorted(tuple(sorted((table[a], table[b]))) for a, b in pr))
    return nsub, nforb, npr


def canonical_instance(d: int, inst: Instance) -> Instance:
    """Lexicographically least image of the instance under the group.

    The least image's subset must contain vertex 0, so only flips sending
    some subset vertex to 0 can produce it; that cuts the flip factor from
    2^d to the subset size and keeps d=6 workable without full tables.
    """
    subset = inst[0]
    if not subset:
        return inst
    best: Optional[Instance] = None
    n = 1 << d
    for perm in itertools.permutations(range(d)):
        moved = []
        for v in range(n):
            w = 0
            for i in range(d):
                if (v >> i) & 1:
                    w |= 1 << perm[i]
            moved.append(w)
        for v0 in subset:
            flip = moved[v0]
            table = [w ^ flip for w in moved]
            img = apply_instance(table, inst)
            if best is None or img < best:
                best = img
    return best


# -- vectorized canonical subsets ----------------------------------------------

_BITMAT = ((np.arange(256)[:, None] >> np.arange(8)[None, :]) & 1).astype(np.uint64)


def _byte_tables(table: Sequence[int], n: int) -> np.ndarray:
    """(positions, 256) uint64 lookup: image of each byte chunk of a vertex
    bitmask under one vertex permutation."""
    positions = (n + 7) // 8
    out = np.zeros((positions, 256), dtype=np.uint64)
    for p in range(positions):
        for j in range(8):
            v = 8 * p + j
            if v >= n:
                break
            out[p] |= _BITMAT[:, j] * np.uint64(1 << table[v])
    return out


def _apply_tables(tbl: np.ndarray, masks: np.ndarray) -> np.ndarray:
    acc = tbl[0][(masks & np.uint64(0xFF)).astype(np.intp)]
    for p in range(1, tbl.shape[0]):
        chunk = ((masks >> np.uint64(8 * p)) & np.uint64(0xFF)).astype(np.intp)
        acc |= tbl[p][chunk]
    return acc


def canonical_subsets(d: int, size: int,
                      tables: Optional[list] = None) -> tuple[list[tuple[int, ...]], list]:
    """All size-subsets of V(Q_d) that are lexicographically least in their
    orbit, in ascending order, plus the group tables used.

    Works on reversed vertex ids (u = n-1-v), where subset S precedes T
    lexicographically iff S's reversed bitmask exceeds T's, so the orbit
    minimum is a running np.maximum over group images.
    """
    n = 1 << d
    if n > 64:
        raise ValueError("mask sweep supports d <= 6")
    if tables is None:
        tables = group_tables(d)
    rev = n - 1
    total = comb(n, size)
    masks = np.fromiter(
        (sum(1 << (rev - v) for v in c)
         for c in itertools.combinations(range(n), size)),
        dtype=np.uint64, count=total)
    canon = masks.copy()
    for t in tables:
        rt = tuple(rev - t[rev - u] for u in range(n))   # action on reversed ids
        np.maximum(canon, _apply_tables(_byte_tables(rt, n), masks), out=canon)
    subs = [
        tuple(sorted(rev - u for u in range(n) if (int(m) >> u) & 1))
        for m in masks[canon == masks]
    ]
    return subs, tables


def canonical_marked_instances(d: int, k: int,
                               strong: bool) -> tuple[list[Instance], dict]:
    """Canonical representatives of all terminal configurations: size-2k
    subsets with a pairing (plus, for strong, the choice of unpaired
    vertex), one per orbit of the signed permutation group.

    An instance is canonical iff its subset is the canonical subset of its
    orbit and the (forbidden, pairing) part is minimal under the subset's
    setwise stabilizer.  Returns (instances, info); info carries the orbit
    count, group order, and the labelled-instance total the orbits expand
    back to (orbit-stabilizer), which callers can check against the direct
    binomial count.
    """
    size = 2 * k + (1 if strong else 0)
    subs, tables = canonical_subsets(d, size)
    order = len(tables)
    out: list[Instance] = []
    labelled_total = 0
    for subset in subs:
        sset = set(subset)
        stab = [t for t in tables if {t[v] for v in subset} == sset]
        if strong:
            insts = [(subset, (x,), pr)
                     for x in subset
                     for pr in pairings(tuple(v for v in subset if v != x))]
        else:
            insts = [(subset, (), pr) for pr in pairings(subset)]
        for inst in insts:
            images = [apply_instance(t, inst) for t in stab]
            if inst == min(images):
                out.append(inst)
                fixed = sum(1 for img in images if img == inst)
                labelled_total += order // fixed
    info = {
        "orbits": len(out),
        "group_order": order,
        "labelled_total": labelled_total,
    }
    return out, info
