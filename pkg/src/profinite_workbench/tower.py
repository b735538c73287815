"""Finite prefixes of inverse systems of finite groups.

A :class:`Tower` holds levels ``G_0, ..., G_n`` and connecting maps
``maps[i]: G_{i+1} -> G_i``. It stands in for a profinite group with a
decreasing normal basis ``N_0 > N_1 > ...`` via ``G_i = U / N_i``.
"""

from dataclasses import dataclass, field

from .errors import BadLevel, LengthMismatch, NotMember
from .groups import GroupHom, quotient


@dataclass(eq=True)
class Tower:
    levels: list
    maps: list = field(default_factory=list)

    @property
    def depth(self):
        return len(self.levels)

    @property
    def top(self):
        return self.levels[-1]

    def composite(self, i):
        """The composite map ``G_n -> G_i`` (``None`` when ``i == n``)."""
        n = len(self.levels) - 1
        hom = None
        for j in range(n - 1, i - 1, -1):
            hom = self.maps[j] if hom is None else self.maps[j].compose(hom)
        return hom


@dataclass(frozen=True)
class Thread:
    entries: tuple

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass
class Violation:
    level: int
    message: str

    def __str__(self):
        return f"level {self.level}: {self.message}"


@dataclass
class ValidationReport:
    violations: list

    @property
    def valid(self):
        return not self.violations


def validate_tower(t):
    """Check every connecting map: shape, homomorphism identity, surjectivity, fibers.

    Violations are returned, never raised; ``Violation.level`` is the index
    of the map's source level.
    """
    out = []
    if len(t.maps) != len(t.levels) - 1:
        out.append(Violation(0, f"{len(t.levels)} levels need {len(t.levels) - 1} maps, got {len(t.maps)}"))
        return ValidationReport(out)
    for i, hom in enumerate(t.maps):
        src, tgt = t.levels[i + 1], t.levels[i]
        if not hom.source.same_elements(src) or not hom.target.same_elements(tgt):
            out.append(Violation(i + 1, "map does not run from this level to the one below"))
            continue
        bad = hom.violations(limit=1)
        if bad:
            out.append(Violation(i + 1, f"not a homomorphism: {bad[0]}"))
            continue
        counts = [0] * tgt.order
        for t_idx in hom.table:
            counts[t_idx] += 1
        if min(counts) == 0:
            out.append(Violation(i + 1, "map is not surjective"))
        elif len(set(counts)) != 1 or counts[0] * tgt.order != src.order:
            out.append(Violation(i + 1, f"unequal fiber sizes {sorted(set(counts))}"))
    return ValidationReport(out)


def thread_validate(t, th):
    if len(th) != t.depth:
        raise LengthMismatch(f"thread has {len(th)} entries, tower has {t.depth} levels")
    for g, G in zip(th.entries, t.levels):
        if g not in G:
            return False
    return all(t.maps[i](th[i + 1]) == th[i] for i in range(t.depth - 1))


def thread_from_top(t, g):
    """Push an element of the top level down through every map."""
    entries = [g]
    t.top.index(g)
    for hom in reversed(t.maps):
        entries.append(hom(entries[-1]))
    return Thread(reversed(entries))


def identity_thread(t):
    return Thread(G.identity for G in t.levels)


def fiber(t, level, g):
    """Preimages of ``g in G_level`` under ``G_{level+1} -> G_level``."""
    if not 0 <= level < t.depth - 1:
        raise BadLevel(f"no map above level {level} in a tower of depth {t.depth}")
    G = t.levels[level]
    if g not in G:
        raise NotMember(f"{g!r} is not in level {level}")
    hom = t.maps[level]
    target = G.index(g)
    src = t.levels[level + 1]
    return [src.elements[i] for i, x in enumerate(hom.table) if x == target]


def kernel_chain(t):
    """``|ker(G_n -> G_i)|`` for ``i = n, n-1, ..., 0``."""
    n = t.depth - 1
    chain = [1]
    for i in range(n - 1, -1, -1):
        hom = t.composite(i)
        e = hom.target.identity_index
        chain.append(sum(1 for x in hom.table if x == e))
    return chain


def quotient_chain_tower(U, normals):
    """Tower of ``U/N_0 <- U/N_1 <- ...`` for a decreasing chain of normal subgroups."""
    quotients = [quotient(U, N) for N in normals]
    levels = [Q for Q, _ in quotients]
    maps = []
    for (Qc, pc), (Qf, pf) in zip(quotients, quotients[1:]):
        table = [0] * Qf.order
        for x in range(U.order):
            table[pf.table[x]] = pc.table[x]
        maps.append(GroupHom(Qf, Qc, table))
    return Tower(levels, maps)
