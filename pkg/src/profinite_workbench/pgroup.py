"""Frattini subgroups of finite p-groups and non-generator checks."""

from dataclasses import dataclass

from .errors import CapExceeded, NotMember, NotPGroup, NotSubgroup
from .groups import (
    FiniteGroup,
    commutator_subgroup,
    conjugacy_class,
    is_prime,
    is_subgroup,
    power_subgroup,
)

BRUTEFORCE_CAP = 512


def detect_prime(U):
    """Return ``p`` when ``|U| = p^k`` with ``k >= 1``; ``None`` for the trivial group."""
    n = U.order
    if n == 1:
        return None
    p = 2
    while n % p:
        p += 1
    m = n
    while m % p == 0:
        m //= p
    if m != 1 or not is_prime(p):
        raise NotPGroup(f"|U| = {n} is not a prime power")
    return p


def frattini_pgroup(U):
    """``Phi(U) = U^p [U, U]`` for a p-group ``U``."""
    p = detect_prime(U)
    if p is None:
        return U
    gens = power_subgroup(U, p).generators + commutator_subgroup(U).generators
    return U.subgroup(gens)


def _mask_closure(table, gens_idx, identity):
    """Bitmask of the subgroup generated by element indices ``gens_idx``."""
    seen = {identity}
    stack = [identity]
    while stack:
        x = stack.pop()
        for g in gens_idx:
            y = table[g][x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    mask = 0
    for i in seen:
        mask |= 1 << i
    return mask


def _subgroup_masks(U, cap=BRUTEFORCE_CAP):
    """All subgroups of ``U`` as ``{bitmask: generator indices}``.

    Every subgroup is a join of cyclic subgroups, so starting from the
    cyclic ones and repeatedly joining with a cyclic subgroup reaches all.
    """
    if U.order > cap:
        raise CapExceeded(f"subgroup enumeration capped at |U| <= {cap}")
    table = U.mul_table
    e = U.identity_index
    cyclic = {}
    for g in range(U.order):
        m = _mask_closure(table, [g], e)
        cyclic.setdefault(m, g)
    found = {1 << e: []}
    for m, g in cyclic.items():
        found.setdefault(m, [] if g == e else [g])
    frontier = list(found)
    while frontier:
        nxt = []
        for m in frontier:
            gens = found[m]
            for cm, g in cyclic.items():
                if cm & ~m == 0:
                    continue
                j = _mask_closure(table, gens + [g], e)
                if j not in found:
                    found[j] = gens + [g]
                    nxt.append(j)
        frontier = nxt
    return found


def _mask_group(U, mask, gens):
    members = [U.elements[i] for i in range(U.order) if mask >> i & 1]
    fg = FiniteGroup(U.domain_size, members, [])
    fg.generator_indices = tuple(sorted({fg.index(U.elements[g]) for g in gens}))
    return fg


def all_subgroups(U, cap=BRUTEFORCE_CAP):
    """Every subgroup of ``U``, sorted by order then element list."""
    found = _subgroup_masks(U, cap)
    groups = [_mask_group(U, m, g) for m, g in found.items()]
    groups.sort(key=lambda H: (H.order, [p.images for p in H]))
    return groups


def maximal_subgroups(U, cap=BRUTEFORCE_CAP):
    full = (1 << U.order) - 1
    found = _subgroup_masks(U, cap)
    proper = [m for m in found if m != full]
    maxi = [m for m in proper if not any(o != m and m & ~o == 0 for o in proper)]
    return [_mask_group(U, m, found[m]) for m in maxi]


def frattini_bruteforce(U, cap=BRUTEFORCE_CAP):
    """Intersection of all maximal proper subgroups (oracle for :func:`frattini_pgroup`)."""
    if U.order == 1:
        return U
    full = (1 << U.order) - 1
    found = _subgroup_masks(U, cap)
    proper = [m for m in found if m != full]
    inter = full
    for m in proper:
        if not any(o != m and m & ~o == 0 for o in proper):
            inter &= m
    members = [U.elements[i] for i in range(U.order) if inter >> i & 1]
    return FiniteGroup.from_elements(U.domain_size, members, check=False)


@dataclass(frozen=True)
class NongenVerdict:
    consistent: bool
    product_is_whole: bool
    h_is_whole: bool
    product: tuple
    frattini: tuple

    @property
    def label(self):
        return "CONSISTENT" if self.consistent else "VIOLATED"


def frattini(U):
    """Phi(U) by the fastest applicable route."""
    try:
        return frattini_pgroup(U)
    except NotPGroup:
        return frattini_bruteforce(U)


def nongenerator_check(U, H, phi=None):
    """Check that ``H Phi(U) = U`` forces ``H = U`` for this pair."""
    if not is_subgroup(H, U):
        raise NotSubgroup("H is not a subgroup of U")
    if phi is None:
        phi = frattini(U)
    product = sorted({h * f for h in H for f in phi})
    whole = len(product) == U.order
    h_whole = H.order == U.order
    return NongenVerdict(
        consistent=(not whole) or h_whole,
        product_is_whole=whole,
        h_is_whole=h_whole,
        product=tuple(product),
        frattini=phi.elements,
    )


def commutator_containment_check(U, h):
    """Whether ``h^-1 x`` lies in ``[U, U]`` for every conjugate ``x`` of ``h``."""
    if h not in U:
        raise NotMember(f"{h!r} is not in U")
    D = commutator_subgroup(U)
    hinv = h.inverse()
    return all(hinv * x in D for x in conjugacy_class(U, h))
