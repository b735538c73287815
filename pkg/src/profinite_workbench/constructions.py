"""Explicit example groups as towers.

* Rosendal's group: sequences in ``D6^N`` that are all rotations or all
  reflections. The constant reflection ``beta`` has as conjugacy class the
  whole reflection coset, an index-two (so open, measure 1/2) set.
* Akin-Glasner-Weiss: finite truncations of the groups ``K_n`` of
  permutations preserving a partition beyond its ``n``-th part, with
  explicit topological-transitivity witnesses.
* Stock towers: ``Z/p^i`` and powers of a fixed group.

``D6`` is realized as ``Sym(3)`` with ``r = (0 1 2)`` and ``s = (1 2)``;
coordinate ``i`` of a level acts on points ``3i, 3i+1, 3i+2``.
"""

from dataclasses import dataclass
from math import factorial, prod

from .errors import (
    BadPerm,
    CapExceeded,
    EngineInconsistency,
    NotIncreasing,
    NotMember,
    NotPrime,
    NotSType,
    NoValidK,
    resolve_cap,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    closure,
    concat,
    conjugacy_class,
    cyclic_group,
    is_prime,
    power_product,
    shift_perm,
)
from .perm import Perm
from .tower import Thread, Tower

ROSENDAL_MAX_DEPTH = 7

R = Perm([1, 2, 0])
S = Perm([0, 2, 1])
ID3 = Perm.identity(3)


def _d6_self_test():
    if not (R ** 3 == ID3 and S ** 2 == ID3 and S * R == R.inverse() * S and R != ID3 and S != ID3):
        raise EngineInconsistency("D6 realization violates r^3 = s^2 = 1, sr = r^-1 s")


_d6_self_test()

D6_ROTATIONS = [R ** j for j in range(3)]
D6_REFLECTIONS = [S * R ** j for j in range(3)]


def d6_kind(x):
    """``("r", j)`` if ``x = r^j``, ``("s", j)`` if ``x = s r^j``."""
    if x in D6_ROTATIONS:
        return "r", D6_ROTATIONS.index(x)
    return "s", D6_REFLECTIONS.index(x)


def _restriction_hom(src, tgt, points):
    table = [tgt.index(x.restrict(points)) for x in src]
    return GroupHom(src, tgt, table)


@dataclass
class RosendalLevel:
    n: int
    carrier: FiniteGroup
    rotations: FiniteGroup

    def encode(self, coords):
        if len(coords) != self.n:
            raise BadPerm(f"need {self.n} coordinates")
        return concat(coords)

    def decode(self, p):
        return [Perm([j - 3 * i for j in p.images[3 * i:3 * i + 3]], check=False)
                for i in range(self.n)]

    @property
    def beta(self):
        return concat([S] * self.n)

    def is_s_type(self, p):
        return p in self.carrier and p not in self.rotations


def rosendal_level(n, cap=None):
    cap = resolve_cap(cap)
    if n < 1:
        raise ValueError("Rosendal levels start at n = 1")
    if 2 * 3 ** n > cap:
        raise CapExceeded(f"level order {2 * 3 ** n} exceeds cap {cap}")
    d = 3 * n
    rots = [shift_perm(R, 3 * i, d) for i in range(n)]
    carrier = closure([concat([S] * n)] + rots, d, cap=cap)
    rotations = closure(rots, d, cap=cap)
    if carrier.order != 2 * 3 ** n or rotations.order != 3 ** n:
        raise EngineInconsistency(f"Rosendal level {n} has order {carrier.order}")
    return RosendalLevel(n, carrier, rotations)


def rosendal_levels(depth, cap=None):
    if not 1 <= depth:
        raise ValueError("depth must be at least 1")
    if depth > ROSENDAL_MAX_DEPTH:
        raise CapExceeded(f"Rosendal depth is capped at {ROSENDAL_MAX_DEPTH}")
    return [rosendal_level(n, cap) for n in range(1, depth + 1)]


def rosendal_tower(depth, cap=None):
    """Levels ``n = 1..depth`` with drop-last-coordinate maps, and the beta thread."""
    levels = rosendal_levels(depth, cap)
    groups = [L.carrier for L in levels]
    maps = [_restriction_hom(groups[i + 1], groups[i], 3 * (i + 1)) for i in range(depth - 1)]
    return Tower(groups, maps), Thread(L.beta for L in levels)


def rosendal_conjugator(level, gamma):
    """The rotation sequence ``eta`` with ``eta gamma eta^-1 = beta``.

    Coordinatewise, ``gamma_i = s r^j`` is paired with ``eta_i = 1, r^2, r``
    for ``j = 0, 1, 2``.
    """
    if gamma not in level.carrier:
        raise NotMember(f"{gamma!r} is not in Rosendal level {level.n}")
    if gamma in level.rotations:
        raise NotSType("gamma lies in the rotation subgroup; it is not conjugate to beta")
    choice = {0: ID3, 1: R ** 2, 2: R}
    coords = []
    for x in level.decode(gamma):
        _, j = d6_kind(x)
        coords.append(choice[j])
    eta = level.encode(coords)
    if eta not in level.rotations or eta * gamma * eta.inverse() != level.beta:
        raise EngineInconsistency(f"conjugator for {gamma} failed verification")
    return eta


def rosendal_class_check(level):
    """Whether the class of beta is exactly the reflection coset."""
    coset = [p for p in level.carrier if p not in level.rotations]
    return conjugacy_class(level.carrier, level.beta) == coset


# -- Akin, Glasner, Weiss ---------------------------------------------------

@dataclass
class AGWTruncation:
    """``K_n`` restricted to ``J^m = J_0 u ... u J_m`` (``m = len(sizes) - 1``)."""

    sizes: tuple
    n: int
    carrier: FiniteGroup

    def block(self, i):
        return block_range(self.sizes, i)

    @property
    def prefix_size(self):
        return sum(self.sizes[:self.n + 1])


def block_range(sizes, i):
    start = sum(sizes[:i])
    return range(start, start + sizes[i])


def _check_sizes(sizes, n):
    sizes = tuple(int(s) for s in sizes)
    if not sizes or sizes[0] < 1 or any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise NotIncreasing(f"block sizes must be positive and strictly increasing: {sizes}")
    if not 0 <= n < len(sizes):
        raise ValueError(f"n = {n} is not a block index for {len(sizes)} blocks")
    return sizes


def agw_order(sizes, n):
    head = sum(sizes[:n + 1])
    return factorial(head) * prod(factorial(s) for s in sizes[n + 1:])


def agw_truncation(sizes, n, cap=None):
    """Permutations of ``J^m`` fixing ``J^n`` and each later block setwise."""
    cap = resolve_cap(cap)
    sizes = _check_sizes(sizes, n)
    order = agw_order(sizes, n)
    if order > cap:
        raise CapExceeded(f"K_{n} truncation has order {order} > cap {cap}")
    total = sum(sizes)
    parts = [range(sum(sizes[:n + 1]))] + [block_range(sizes, i) for i in range(n + 1, len(sizes))]
    gens = []
    for part in parts:
        for a in list(part)[:-1]:
            gens.append(Perm.from_cycles(total, (a, a + 1)))
    carrier = closure(gens, total, cap=cap)
    return AGWTruncation(sizes, n, carrier)


def stabilizes_blocks(p, sizes, n):
    """Whether ``p`` maps ``J^n`` and every ``J_i`` with ``i > n`` onto itself."""
    parts = [range(sum(sizes[:n + 1]))] + [block_range(sizes, i) for i in range(n + 1, len(sizes))]
    return all(set(p.images[x] for x in part) == set(part) for part in parts)


@dataclass
class TransitivityWitness:
    sizes: tuple
    n: int
    k: int
    pi: Perm
    xi: Perm
    beta_injection: tuple
    b: Perm
    a: Perm
    result: Perm
    verified: bool = False


def _extend(p, total):
    return Perm(list(p.images) + list(range(p.degree, total)), check=False)


def witness_failures(w):
    """Re-check a witness from scratch; returns the failed conditions."""
    N = sum(w.sizes[:w.n + 1])
    total = sum(w.sizes)
    out = []
    if w.result != w.b.inverse() * w.a * w.b:
        out.append("result != b^-1 a b")
    if list(w.a.images[:N]) != list(w.pi.images):
        out.append("a does not restrict to pi on J^n")
    if not stabilizes_blocks(w.a, w.sizes, w.n):
        out.append("a is not in K_n")
    if list(w.result.images[:N]) != list(w.xi.images):
        out.append("b^-1 a b does not restrict to xi on J^n")
    ab = w.a * w.b
    bxi = w.b * _extend(w.xi, total)
    if any(ab.images[i] != bxi.images[i] for i in range(N)):
        out.append("ab and b xi differ on J^n")
    if not stabilizes_blocks(w.result, w.sizes, w.n):
        out.append("b^-1 a b does not stabilize the blocks")
    return out


def agw_transitivity_witness(sizes, n, pi, xi, beta_injection=None):
    """Conjugate ``G(pi)`` into ``G(xi)`` following the swap construction.

    ``b`` swaps ``J^n`` with ``beta(J^n)`` inside a block ``J_k`` larger than
    ``J^n``; ``a`` is ``pi`` on ``J^n`` and ``beta xi beta^-1`` on
    ``beta(J^n)``. Then ``b^-1 a b`` restricts to ``xi`` on ``J^n``.
    """
    sizes = _check_sizes(sizes, n)
    N = sum(sizes[:n + 1])
    total = sum(sizes)
    pi = pi if isinstance(pi, Perm) else Perm(pi)
    xi = xi if isinstance(xi, Perm) else Perm(xi)
    if pi.degree != N or xi.degree != N:
        raise BadPerm(f"pi and xi must permute the {N} points of J^{n}")
    k = next((j for j in range(n + 1, len(sizes)) if sizes[j] > N), None)
    if k is None:
        raise NoValidK(f"no block after J_{n} has more than {N} points")
    Jk = block_range(sizes, k)
    if beta_injection is None:
        beta = tuple(Jk.start + i for i in range(N))
    else:
        beta = tuple(beta_injection)
        if len(beta) != N or len(set(beta)) != N or any(x not in Jk for x in beta):
            raise BadPerm(f"beta must inject J^{n} into J_{k}")
    b = list(range(total))
    for i in range(N):
        b[i] = beta[i]
        b[beta[i]] = i
    a = list(range(total))
    for i in range(N):
        a[i] = pi.images[i]
        a[beta[i]] = beta[xi.images[i]]
    b, a = Perm(b), Perm(a)
    w = TransitivityWitness(sizes, n, k, pi, xi, beta, b, a, b.inverse() * a * b)
    bad = witness_failures(w)
    if bad:
        raise EngineInconsistency("; ".join(bad))
    w.verified = True
    return w


# -- stock towers -----------------------------------------------------------

def zp_tower(p, depth, cap=None):
    """``Z/p <- Z/p^2 <- ... <- Z/p^depth`` by reduction, with the generator thread."""
    cap = resolve_cap(cap)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if p ** depth > cap:
        raise CapExceeded(f"p^depth = {p ** depth} exceeds cap {cap}")
    # In the regular cyclic group the shift by a sits at index a.
    levels = [cyclic_group(p ** i) for i in range(1, depth + 1)]
    maps = [GroupHom(levels[i + 1], levels[i], [a % p ** (i + 1) for a in range(p ** (i + 2))])
            for i in range(depth - 1)]
    gens = Thread(G.elements[1] for G in levels)
    return Tower(levels, maps), gens


def simple_power_tower(factor, depth, cap=None):
    """Levels ``factor^i`` for ``i = 1..depth``, dropping the last coordinate."""
    cap = resolve_cap(cap)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if factor.order ** depth > cap:
        raise CapExceeded(f"|factor|^depth = {factor.order ** depth} exceeds cap {cap}")
    levels = [power_product(factor, i, cap=cap) for i in range(1, depth + 1)]
    d = factor.domain_size
    maps = [_restriction_hom(levels[i + 1], levels[i], d * (i + 1)) for i in range(depth - 1)]
    return Tower(levels, maps)


def diagonal_thread(tower, x):
    """The thread ``(x), (x, x), ...`` in a :func:`simple_power_tower`."""
    return Thread(concat([x] * (i + 1)) for i in range(tower.depth))
