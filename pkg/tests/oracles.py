"""Independent reference routines used only by the tests.

These work on raw image tuples with their own composition so they share no
code path with the package.
"""

from itertools import product

from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup


def compose(a, b):
    return tuple(a[j] for j in b)


def inverse(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def naive_closure(gens, d):
    """Close a set under products by iterating to a fixed point."""
    elems = {tuple(range(d))} | {tuple(g) for g in gens}
    while True:
        new = {compose(a, b) for a in elems for b in elems} | elems
        if new == elems:
            return elems
        elems = new


def naive_class(elems, g):
    return {compose(compose(a, g), inverse(a)) for a in elems}


def naive_centralizer(elems, g):
    return {a for a in elems if compose(a, g) == compose(g, a)}


def sympy_group(G):
    gens = [SymPerm(list(p.images)) for p in G.generators] or [SymPerm(list(range(G.domain_size)))]
    return PermutationGroup(gens)


def naive_commutator_subgroup(elems, d):
    comms = {compose(compose(inverse(a), inverse(b)), compose(a, b)) for a, b in product(elems, elems)}
    return naive_closure(comms, d)


def naive_order(g):
    e = tuple(range(len(g)))
    x, n = tuple(g), 1
    while x != e:
        x, n = compose(x, g), n + 1
    return n
