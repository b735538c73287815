"""Finite permutation groups stored by exhaustive enumeration.

A ``FiniteGroup`` keeps every element in canonical (lexicographic) order,
so all set-valued answers below are deterministic sorted lists. Groups are
meant to be desk-sized: every constructor respects an enumeration cap.
"""

from collections import deque
from functools import cached_property

from .errors import (
    BadPerm,
    CapExceeded,
    NotHomomorphism,
    NotMember,
    NotNormal,
    NotPrime,
    NotSubgroup,
    resolve_cap,
)
from .perm import Perm

# Above this many source pairs, homomorphism checks run over
# (generator, element) pairs instead of all (element, element) pairs.
PAIRWISE_LIMIT = 40_000


def is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class FiniteGroup:
    """An explicitly enumerated group of permutations of ``range(domain_size)``.

    Build instances with :func:`closure` or :meth:`from_elements`; the raw
    constructor trusts its arguments.
    """

    def __init__(self, domain_size, elements, generator_indices):
        self.domain_size = domain_size
        self.elements = tuple(elements)
        self._index = {p: i for i, p in enumerate(self.elements)}
        self.identity_index = self._index[Perm.identity(domain_size)]
        self.generator_indices = tuple(generator_indices)

    @classmethod
    def from_elements(cls, domain_size, elements, check=True):
        """Wrap a set of permutations known (or claimed) to form a group."""
        elements = sorted(set(elements))
        if not check:
            return _wrap_sorted(domain_size, elements)
        for p in elements:
            if p.degree != domain_size:
                raise BadPerm(f"{p!r} does not act on {domain_size} points")
        try:
            gens = _greedy_generators(domain_size, elements)
            spanned = closure(gens, domain_size, cap=max(len(elements), 1))
        except CapExceeded:
            spanned = None
        if spanned is None or spanned.elements != tuple(elements):
            raise NotSubgroup("element set is not closed under composition")
        return spanned

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[self.identity_index]

    @property
    def generators(self):
        return [self.elements[i] for i in self.generator_indices]

    def index(self, p):
        try:
            return self._index[p]
        except KeyError:
            raise NotMember(f"{p!r} is not an element of this group") from None

    def __contains__(self, p):
        return p in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.domain_size == other.domain_size
            and self.elements == other.elements
            and self.generator_indices == other.generator_indices
        )

    def __hash__(self):
        return hash((self.domain_size, self.elements))

    def same_elements(self, other):
        return self.domain_size == other.domain_size and self.elements == other.elements

    def is_abelian(self):
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def mul_table(self):
        """``mul_table[i][j]`` is the index of ``elements[i] * elements[j]``."""
        idx = self._index
        els = self.elements
        return [[idx[a * b] for b in els] for a in els]

    @cached_property
    def inverse_indices(self):
        idx = self._index
        return [idx[p.inverse()] for p in self.elements]

    def subgroup(self, generators):
        for g in generators:
            self.index(g)
        return closure(generators, self.domain_size, cap=self.order)

    def __repr__(self):
        return f"<FiniteGroup order={self.order} degree={self.domain_size}>"


def _wrap_sorted(domain_size, members):
    gens = _greedy_generators(domain_size, members)
    index = {p: i for i, p in enumerate(members)}
    return FiniteGroup(domain_size, members, [index[g] for g in gens])


def _greedy_generators(domain_size, elements):
    """Pick generators in canonical order until they span ``elements``."""
    gens = []
    span = {Perm.identity(domain_size)}
    for p in elements:
        if p in span:
            continue
        gens.append(p)
        span = set(closure(gens, domain_size, cap=max(4 * len(elements), 2)).elements)
    return gens


def closure(generators, domain_size, cap=None):
    """Smallest group containing ``generators``, enumerated breadth first.

    Raises :class:`CapExceeded` as soon as more than ``cap`` elements appear.
    """
    cap = resolve_cap(cap)
    gens = []
    for g in generators:
        if not isinstance(g, Perm):
            g = Perm(g)
        if g.degree != domain_size:
            raise BadPerm(f"{g!r} does not act on {domain_size} points")
        gens.append(g)
    ident = Perm.identity(domain_size)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    elements = sorted(seen)
    index = {p: i for i, p in enumerate(elements)}
    gen_idx = []
    for g in gens:
        if index[g] not in gen_idx:
            gen_idx.append(index[g])
    return FiniteGroup(domain_size, elements, gen_idx)


def conjugacy_class(G, g):
    """``{a g a^-1 : a in G}`` in canonical order."""
    G.index(g)
    return sorted({a * g * a.inverse() for a in G})


def conjugacy_classes(G):
    """All classes, ordered by their least element."""
    done = set()
    classes = []
    for g in G:
        if g in done:
            continue
        cls = conjugacy_class(G, g)
        done.update(cls)
        classes.append(cls)
    return classes


def centralizer(G, g):
    """``{a in G : a g = g a}`` as a subgroup, by exhaustive commutation test."""
    G.index(g)
    members = [a for a in G if a * g == g * a]
    return _wrap_sorted(G.domain_size, members)


def element_order(G, g):
    G.index(g)
    n = 1
    x = g
    while not x.is_identity():
        x = x * g
        n += 1
    return n


def is_subgroup(H, G):
    return H.domain_size == G.domain_size and all(h in G for h in H)


def is_normal(G, N):
    if not is_subgroup(N, G):
        return False
    gens = N.generators
    return all(a * n * a.inverse() in N for a in G for n in gens)


def normal_closure(G, elements):
    """Smallest normal subgroup of ``G`` containing ``elements``."""
    gens = [g for g in elements if not g.is_identity()]
    for g in gens:
        G.index(g)
    S = closure(gens, G.domain_size, cap=G.order)
    changed = True
    while changed:
        changed = False
        for s in list(S.generators):
            for a in G.generators:
                c = a * s * a.inverse()
                if c not in S:
                    S = closure(S.generators + [c], G.domain_size, cap=G.order)
                    changed = True
    return S


def commutator(a, b):
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def commutator_subgroup(G):
    """Derived subgroup, as the normal closure of generator commutators."""
    gens = G.generators
    comms = [commutator(a, b) for a in gens for b in gens]
    return normal_closure(G, comms)


def power_subgroup(G, p):
    """Subgroup generated by all ``p``-th powers."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    powers = sorted({g ** p for g in G})
    return G.subgroup(powers)


def intersection(A, B):
    if A.domain_size != B.domain_size:
        raise NotSubgroup("groups act on different domains")
    members = [a for a in A if a in B]
    return _wrap_sorted(A.domain_size, members)


class GroupHom:
    """A homomorphism stored as a full table of target indices.

    ``table[i]`` is the index in ``target`` of the image of
    ``source.elements[i]``. With ``check=True`` the homomorphism identity is
    verified at construction.
    """

    def __init__(self, source, target, table, check=True):
        self.source = source
        self.target = target
        self.table = tuple(table)
        if check:
            bad = self.violations(limit=1)
            if bad:
                raise NotHomomorphism(bad[0])

    def __call__(self, p):
        return self.target.elements[self.table[self.source.index(p)]]

    def violations(self, limit=None):
        """Describe failures of the homomorphism identity (empty if none)."""
        S, T, tab = self.source, self.target, self.table
        out = []
        if len(tab) != S.order:
            return [f"table has {len(tab)} entries for a source of order {S.order}"]
        if any(not 0 <= t < T.order for t in tab):
            return ["table entry out of range of the target"]
        if tab[S.identity_index] != T.identity_index:
            out.append(f"identity {S.identity} maps to {T.elements[tab[S.identity_index]]}")
        if S.order ** 2 <= PAIRWISE_LIMIT:
            lefts = S.elements
        else:
            # (g, x) for generators g suffices: it forces table(w x) = table(w) table(x)
            # for every word w in the generators.
            lefts = S.generators
        for a in lefts:
            ta = T.elements[tab[S.index(a)]]
            for b in S.elements:
                lhs = tab[S.index(a * b)]
                rhs = T.index(ta * T.elements[tab[S.index(b)]])
                if lhs != rhs:
                    out.append(f"table({a}*{b}) != table({a})*table({b})")
                    if limit and len(out) >= limit:
                        return out
        return out

    def image_indices(self):
        return sorted(set(self.table))

    def is_surjective(self):
        return len(set(self.table)) == self.target.order

    def kernel(self):
        members = [self.source.elements[i] for i, t in enumerate(self.table)
                   if t == self.target.identity_index]
        return _wrap_sorted(self.source.domain_size, members)

    def compose(self, inner):
        """``self o inner``; ``inner.target`` must be ``self.source``."""
        if not inner.target.same_elements(self.source):
            raise NotHomomorphism("composition of incompatible maps")
        return GroupHom(inner.source, self.target,
                        [self.table[t] for t in inner.table], check=False)

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.table == other.table
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self):
        return f"<GroupHom {self.source.order} -> {self.target.order}>"


def quotient(G, N):
    """``G/N`` acting on the left cosets of ``N``, with the projection.

    Cosets are numbered by their least element in canonical order, and
    ``g`` acts by ``xN -> gxN``.
    """
    if not is_subgroup(N, G):
        raise NotSubgroup("N is not a subgroup of G")
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    coset_of = [-1] * G.order
    reps = []
    for i, g in enumerate(G.elements):
        if coset_of[i] >= 0:
            continue
        label = len(reps)
        reps.append(g)
        for n in N:
            coset_of[G.index(g * n)] = label
    m = len(reps)
    images = [Perm([coset_of[G.index(g * r)] for r in reps], check=False) for g in G]
    Q_elems = sorted(set(images))
    if len(Q_elems) != m:
        raise NotNormal("coset action is not regular")
    Q_index = {p: i for i, p in enumerate(Q_elems)}
    gen_idx = []
    for gi in G.generator_indices:
        t = Q_index[images[gi]]
        if t not in gen_idx and t != Q_index[Perm.identity(m)]:
            gen_idx.append(t)
    Q = FiniteGroup(m, Q_elems, gen_idx)
    proj = GroupHom(G, Q, [Q_index[p] for p in images])
    return Q, proj


def shift_perm(p, offset, total):
    """Embed ``p`` into ``range(total)`` acting on ``offset .. offset+deg-1``."""
    images = list(range(total))
    for i, j in enumerate(p.images):
        images[offset + i] = offset + j
    return Perm(images, check=False)


def concat(perms):
    """Juxtapose permutations on consecutive disjoint blocks."""
    images = []
    offset = 0
    for p in perms:
        images.extend(offset + j for j in p.images)
        offset += p.degree
    return Perm(images, check=False)


def direct_product(G, H, cap=None):
    """``G x H`` acting on the disjoint union (G's points first)."""
    cap = resolve_cap(cap)
    if G.order * H.order > cap:
        raise CapExceeded(f"product order {G.order * H.order} exceeds cap {cap}")
    d = G.domain_size + H.domain_size
    # Lexicographic order of (g, h) pairs equals that of the concatenated images.
    elements = [concat((g, h)) for g in G for h in H]
    gens = [shift_perm(g, 0, d) for g in G.generators]
    gens += [shift_perm(h, G.domain_size, d) for h in H.generators]
    index = {p: i for i, p in enumerate(elements)}
    return FiniteGroup(d, elements, [index[g] for g in gens])


def power_product(factor, k, cap=None):
    """``factor^k`` on ``k`` consecutive copies of the factor's domain."""
    if k < 1:
        raise ValueError("need at least one factor")
    P = factor
    for _ in range(k - 1):
        P = direct_product(P, factor, cap=cap)
    return P


# -- stock groups -----------------------------------------------------------

def trivial_group(d=1):
    return closure([], d)


def symmetric_group(n, cap=None):
    if n < 2:
        return trivial_group(max(n, 1))
    gens = [Perm.from_cycles(n, tuple(range(n)))]
    gens.append(Perm.from_cycles(n, (0, 1)))
    return closure(gens, n, cap=cap)


def alternating_group(n, cap=None):
    if n < 3:
        return trivial_group(max(n, 1))
    gens = [Perm.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return closure(gens, n, cap=cap)


def cyclic_group(n):
    """Regular cyclic group: shift by ``a`` has images ``x -> x + a mod n``."""
    if n == 1:
        return trivial_group(1)
    return closure([Perm([(x + 1) % n for x in range(n)])], n)


def dihedral_group(n):
    """Symmetries of the regular ``n``-gon (order ``2n``) on ``n`` vertices."""
    if n < 3:
        raise ValueError("dihedral_group needs n >= 3")
    rot = Perm([(x + 1) % n for x in range(n)])
    ref = Perm([(-x) % n for x in range(n)])
    return closure([rot, ref], n)


def elementary_abelian(p, k):
    """``(Z/p)^k`` as a product of regular cyclic groups."""
    return power_product(cyclic_group(p), k)


def regular_representation(elements, mul):
    """Left regular permutation group of an abstract group given by ``mul``."""
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    perms = [Perm([pos[mul(g, x)] for x in elements], check=False) for g in elements]
    return FiniteGroup.from_elements(len(elements), perms)


_QUAT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}

QUATERNION_UNITS = [(s, u) for s in (1, -1) for u in ("1", "i", "j", "k")]


def quaternion_mul(x, y):
    sign, unit = _QUAT[(x[1], y[1])]
    return (x[0] * y[0] * sign, unit)


def quaternion_group():
    """``Q8`` in its regular representation; points are ``QUATERNION_UNITS``."""
    return regular_representation(QUATERNION_UNITS, quaternion_mul)


def quaternion_element(Q, unit):
    """The element of ``quaternion_group()`` for, e.g., ``(-1, "i")``."""
    pos = {e: i for i, e in enumerate(QUATERNION_UNITS)}
    p = Perm([pos[quaternion_mul(unit, x)] for x in QUATERNION_UNITS], check=False)
    Q.index(p)
    return p


def named_group(name):
    """Parse a stock group name such as ``S3``, ``A5``, ``C9``, ``D4``, ``Q8``, ``E2^3``."""
    key = name.strip().upper()
    if key == "Q8":
        return quaternion_group()
    if key.startswith("E") and "^" in key:
        p, k = key[1:].split("^")
        return elementary_abelian(int(p), int(k))
    kind, num = key[0], key[1:]
    if not num.isdigit():
        raise ValueError(f"unknown group name {name!r}")
    n = int(num)
    if kind == "S":
        return symmetric_group(n)
    if kind == "A":
        return alternating_group(n)
    if kind == "C":
        return cyclic_group(n)
    if kind == "D":
        return dihedral_group(n)
    raise ValueError(f"unknown group name {name!r}")
