"""Named function families used as the verification corpus."""

from __future__ import annotations

import random

from .core import HypercubeFunction, make_function, parse_function


def parity(k: int) -> HypercubeFunction:
    """XOR of k variables; its decision-tree size is 2^k."""
    if k < 1:
        raise ValueError("parity needs k >= 1")
    return make_function(k, [bin(x).count("1") & 1 for x in range(1 << k)])


def read_once_tree(k: int) -> HypercubeFunction:
    """Complete read-once decision tree of depth k.

    Uses 2^k - 1 distinct variables in heap order (the root queries x1, node
    i queries x_i) and returns a distinct output 0..2^k-1 at each leaf.
    """
    if k < 1:
        raise ValueError("read_once_tree needs k >= 1")
    n = (1 << k) - 1
    outputs = []
    for x in range(1 << n):
        node = 1
        for _ in range(k):
            node = 2 * node + ((x >> (node - 1)) & 1)
        outputs.append(node - (1 << k))
    return make_function(n, outputs)


def and_function(k: int) -> HypercubeFunction:
    if k < 1:
        raise ValueError("and_function needs k >= 1")
    full = (1 << k) - 1
    return make_function(k, [1 if x == full else 0 for x in range(1 << k)])


def or_function(k: int) -> HypercubeFunction:
    if k < 1:
        raise ValueError("or_function needs k >= 1")
    return make_function(k, [0 if x == 0 else 1 for x in range(1 << k)])


def tribes(width: int, groups: int) -> HypercubeFunction:
    """OR of `groups` disjoint ANDs, each over `width` fresh variables."""
    if width < 1 or groups < 1:
        raise ValueError("tribes needs width >= 1 and groups >= 1")
    n = width * groups
    block = (1 << width) - 1
    outputs = []
    for x in range(1 << n):
        fired = any(
            (x >> (g * width)) & block == block for g in range(groups)
        )
        outputs.append(1 if fired else 0)
    return make_function(n, outputs)


def random_function(n: int, alphabet: int, seed: int) -> HypercubeFunction:
    """Seeded uniform function with outputs in range(alphabet)."""
    if alphabet < 2:
        raise ValueError("alphabet must be >= 2")
    rng = random.Random(seed)
    return make_function(n, [rng.randrange(alphabet) for _ in range(1 << n)])


def parse_family(spec: str) -> HypercubeFunction:
    """Parse the compact family syntax, e.g. ``parity:3`` or ``tribes:2,2``."""
    name, _, args = spec.partition(":")
    values = [int(tok) for tok in args.split(",")] if args else []
    try:
        if name == "parity":
            (k,) = values
            return parity(k)
        if name == "rotree":
            (k,) = values
            return read_once_tree(k)
        if name == "and":
            (k,) = values
            return and_function(k)
        if name == "or":
            (k,) = values
            return or_function(k)
        if name == "tribes":
            w, s = values
            return tribes(w, s)
        if name == "random":
            n, c, seed = values
            return random_function(n, c, seed)
    except ValueError as exc:
        raise ValueError(f"bad family spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown family {name!r} in {spec!r}")


def function_from_spec(text: str) -> HypercubeFunction:
    """Accept either a family spec or an explicit ``n=... outputs=...`` record."""
    if "=" in text:
        return parse_function(text)
    return parse_family(text)
