"""Permutations of a finite domain ``{0, ..., d-1}``."""

from math import lcm

from .errors import BadPerm


class Perm:
    """A permutation stored by its image array: ``p[i] == p.images[i]``.

    Products compose as functions, ``(p * q)(i) == p(q(i))``, so ``q`` acts
    first. Ordering is lexicographic on the image arrays, which is the
    canonical element order used throughout the package.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images, check=True):
        images = tuple(images)
        if check:
            d = len(images)
            if sorted(images) != list(range(d)):
                raise BadPerm(f"not a bijection of range({d}): {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, d):
        return cls(range(d), check=False)

    @classmethod
    def from_cycles(cls, d, *cycles):
        """Build from disjoint cycles, e.g. ``Perm.from_cycles(3, (0, 1, 2))``."""
        images = list(range(d))
        seen = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen or not 0 <= x < d:
                    raise BadPerm(f"bad cycle {cyc} on {d} points")
                seen.add(x)
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(images, check=False)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __getitem__(self, i):
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise BadPerm("cannot compose permutations of different degree")
        a = self.images
        return Perm([a[j] for j in other.images], check=False)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv, check=False)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Perm.identity(len(self.images))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate_by(self, a):
        """Return ``a * self * a^-1``."""
        return a * self * a.inverse()

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Non-trivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self):
        return lcm(1, *(len(c) for c in self.cycles()))

    def restrict(self, points):
        """Restriction to an invariant initial segment ``range(points)``."""
        head = self.images[:points]
        if any(j >= points for j in head):
            raise BadPerm(f"range({points}) is not invariant under {self}")
        return Perm(head, check=False)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __le__(self, other):
        return self.images <= other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
