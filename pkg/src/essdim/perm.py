"""Permutations and small permutation groups.

Points are 0-based internally; :meth:`Permutation.cycle_str` renders the
1-based cycle notation used in reports.  Products compose right to left:
``(p * q)(x) == p(q(x))``.

Groups are given by named generators and enumerated lazily by breadth-first
closure.  Enumeration is capped at :data:`ENUMERATION_LIMIT` elements; past
that, anything needing the element list raises :class:`GroupTooLargeError`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

ENUMERATION_LIMIT = 2 ** 20


class GroupTooLargeError(RuntimeError):
    pass


class SubgroupError(ValueError):
    """An operand that must be a subgroup is not contained in the group."""


class Permutation:
    """A bijection of ``{0, ..., n-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-based cycles, e.g. ``from_cycles(4, [(0, 1), (2, 3)])``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < n:
                    raise ValueError(f"bad cycle {cyc}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation._raw(tuple(map(self.images.__getitem__, other.images)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if i != j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_str(self) -> str:
        """1-based cycle notation, ``"()"`` for the identity."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_str()}, n={self.degree})"


GeneratorSpec = Union[Mapping[str, Permutation], Sequence[tuple[str, Permutation]], Sequence[Permutation]]


class PermGroup:
    """A permutation group of a given degree with named generators."""

    def __init__(
        self,
        degree: int,
        generators: GeneratorSpec = (),
        name: str = "",
        family: Optional[str] = None,
        elements: Optional[Iterable[Permutation]] = None,
    ):
        if isinstance(generators, Mapping):
            gens = list(generators.items())
        else:
            gens = [g if isinstance(g, tuple) else (f"g{i}", g) for i, g in enumerate(generators)]
        for label, g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {label} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: list[tuple[str, Permutation]] = gens
        self.name = name
        # "symmetric" or "2-group"; informs the faithfulness witness strategy
        self.family = family
        self.internal_direct_product: Optional[bool] = None
        self._elements: Optional[list[Permutation]] = None
        self._element_set: Optional[frozenset[Permutation]] = None
        if elements is not None:
            self._set_elements(list(elements))

    # -- enumeration --------------------------------------------------
    def _set_elements(self, elements: list[Permutation]) -> None:
        self._elements = elements
        self._element_set = frozenset(elements)

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[Permutation]:
        """All elements, breadth-first from the identity in generator order."""
        if self._elements is None:
            self._set_elements(_closure([g for _, g in self.generators], self.degree, limit, self.name))
        return self._elements

    @property
    def enumerated(self) -> bool:
        return self._elements is not None

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Permutation) -> bool:
        self.elements()
        return p in self._element_set

    def __iter__(self):
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order()

    @property
    def gens(self) -> list[Permutation]:
        return [g for _, g in self.generators]

    def generator(self, label: str) -> Permutation:
        for name, g in self.generators:
            if name == label:
                return g
        raise KeyError(label)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def evaluate_word(self, word: Sequence[int]) -> Permutation:
        """Product ``gens[w0] * gens[w1] * ...``."""
        out = self.identity()
        for w in word:
            out = out * self.generators[w][1]
        return out

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        seen = {point}
        orb = [point]
        queue = deque([point])
        while queue:
            a = queue.popleft()
            for g in self.gens:
                b = g.images[a]
                if b not in seen:
                    seen.add(b)
                    orb.append(b)
                    queue.append(b)
        return orb

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.gens)

    def same_group(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.order() == other.order() and self.is_subgroup_of(other)

    def __repr__(self) -> str:
        size = f", order={len(self._elements)}" if self._elements is not None else ""
        return f"PermGroup({self.name or '?'}, degree={self.degree}, gens={len(self.generators)}{size})"


def _closure(gens: Sequence[Permutation], degree: int, limit: int, name: str = "") -> list[Permutation]:
    ident = tuple(range(degree))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    gimgs = [g.images for g in gens]
    while queue:
        e = queue.popleft()
        for s in gimgs:
            new = tuple(map(s.__getitem__, e))
            if new not in seen:
                seen.add(new)
                order.append(new)
                if len(order) > limit:
                    raise GroupTooLargeError(f"group {name or '?'} exceeds the enumeration limit of {limit} elements")
                queue.append(new)
    return [Permutation._raw(e) for e in order]


def _generators_from_elements(elements: Sequence[Permutation], degree: int) -> list[Permutation]:
    """Greedy generating set: scan in order, keep anything not yet generated."""
    gens: list[Permutation] = []
    span = [tuple(range(degree))]
    span_set = set(span)
    for e in elements:
        if e.images in span_set:
            continue
        gens.append(e)
        # extend the old subgroup H by left cosets y*H until closed
        old = list(span)
        gimgs = [g.images for g in gens]
        queue = deque([span[0]])
        while queue:
            t = queue.popleft()
            for s in gimgs:
                y = tuple(map(s.__getitem__, t))
                if y not in span_set:
                    coset = [tuple(map(y.__getitem__, h)) for h in old]
                    span.extend(coset)
                    span_set.update(coset)
                    queue.append(y)
    return gens


def subgroup_from_elements(degree: int, elements: Iterable[Permutation], name: str = "", family: Optional[str] = None) -> PermGroup:
    """Wrap a known element set (assumed closed) as a group with greedy generators."""
    elements = list(elements)
    gens = _generators_from_elements(elements, degree)
    grp = PermGroup(degree, [(f"{name or 'g'}{i}", g) for i, g in enumerate(gens)], name=name, family=family)
    grp._set_elements(_closure(gens, degree, ENUMERATION_LIMIT))
    if grp._element_set != frozenset(elements):
        raise ValueError(f"element set for {name!r} is not closed under multiplication")
    return grp


# -- standard groups ---------------------------------------------------

def sym(n: int) -> PermGroup:
    """Symmetric group on ``n`` points, generated by ``(0 1)`` and the ``n``-cycle."""
    if n < 1:
        raise ValueError("sym(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens.append(("transposition", Permutation.from_cycles(n, [(0, 1)])))
        gens.append(("cycle", Permutation.from_cycles(n, [tuple(range(n))])))
    return PermGroup(n, gens, name=f"S{n}", family="symmetric")


def _sylow2_generators(m: int) -> list[tuple[str, tuple[int, ...]]]:
    if m == 1:
        return []
    half = m // 2
    sub = _sylow2_generators(half)
    gens = []
    for label, img in sub:
        gens.append(("L." + label, tuple(img) + tuple(range(half, m))))
    for label, img in sub:
        gens.append(("R." + label, tuple(range(half)) + tuple(half + x for x in img)))
    gens.append(("tau_top", tuple(list(range(half, m)) + list(range(half)))))
    return gens


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def sylow2_sym(m: int) -> PermGroup:
    """Sylow 2-subgroup of ``S_m`` as an iterated wreath product, ``m = 2^k >= 2``.

    Generators: the generators of ``P_{m/2}`` on each half (prefixed ``L.``
    and ``R.``) plus the half swap ``tau_top``.
    """
    if m < 2 or not _is_power_of_two(m):
        raise ValueError(f"sylow2_sym needs a power of 2 >= 2, got {m}")
    gens = [(label, Permutation._raw(img)) for label, img in _sylow2_generators(m)]
    return PermGroup(m, gens, name=f"P{m}", family="2-group")


def _block_group(r: int, inner: list[tuple[str, Permutation]], name: str, family: Optional[str]) -> PermGroup:
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    b = 2 ** (r - 2)
    n = 4 * b

    def block_map(f):
        return Permutation._raw(tuple(f(p // b, p % b) for p in range(n)))

    gens = [
        ("tau1", block_map(lambda blk, o: (blk ^ 1) * b + o)),
        ("tau2", block_map(lambda blk, o: (blk ^ 2) * b + o)),
    ]
    for label, s in inner:
        gens.append((label, block_map(lambda blk, o, s=s: blk * b + s.images[o])))
    return PermGroup(n, gens, name=name, family=family)


def h_group(r: int) -> PermGroup:
    """``S_2 x S_2 x P_{2^{r-2}}`` on ``2^r`` points in four blocks.

    ``tau1`` swaps B1<->B2 and B3<->B4, ``tau2`` swaps B1+B2 <-> B3+B4, and
    the generators of ``P_{2^{r-2}}`` act identically on every block; its top
    swap keeps the label ``tau_top``.
    """
    if r < 3:
        raise ValueError(f"h_group needs r >= 3, got {r}")
    return _block_group(r, sylow2_sym(2 ** (r - 2)).generators, f"H{r}", "2-group")


def g_group(r: int) -> PermGroup:
    """Like :func:`h_group` with the diagonal ``P_{2^{r-2}}`` replaced by ``S_{2^{r-2}}``."""
    if r < 3:
        raise ValueError(f"g_group needs r >= 3, got {r}")
    return _block_group(r, sym(2 ** (r - 2)).generators, f"G{r}", None)


# -- subgroup operations -------------------------------------------------

def stabilizer(G: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < G.degree:
        raise ValueError(f"point {point} out of range for degree {G.degree}")
    elems = [g for g in G.elements() if g.images[point] == point]
    return subgroup_from_elements(G.degree, elems, name=f"Stab_{G.name}({point + 1})", family=G.family if G.family == "2-group" else None)


def center(G: PermGroup) -> PermGroup:
    gens = G.gens
    elems = [z for z in G.elements() if all(z * s == s * z for s in gens)]
    return subgroup_from_elements(G.degree, elems, name=f"Z({G.name})", family=G.family if G.family == "2-group" else None)


def conjugate(K: PermGroup, g: Permutation) -> PermGroup:
    """``g K g^-1``."""
    if g.degree != K.degree:
        raise ValueError("degree mismatch")
    ginv = g.inverse()
    grp = PermGroup(K.degree, [(label, g * k * ginv) for label, k in K.generators], name=f"{K.name}^g", family=K.family)
    if K.enumerated:
        grp._set_elements([g * k * ginv for k in K.elements()])
    return grp


def intersect(K1: PermGroup, K2: PermGroup) -> PermGroup:
    if K1.degree != K2.degree:
        raise ValueError("degree mismatch")
    small, big = (K1, K2) if K1.order() <= K2.order() else (K2, K1)
    elems = [k for k in small.elements() if k in big]
    return subgroup_from_elements(K1.degree, elems, name=f"({K1.name} & {K2.name})")


def generated_by(degree: int, perms: GeneratorSpec, name: str = "") -> PermGroup:
    return PermGroup(degree, perms, name=name)


def product(K1: PermGroup, K2: PermGroup, name: str = "") -> PermGroup:
    """Subgroup generated by ``K1`` and ``K2``.

    ``internal_direct_product`` on the result is True when the factors
    commute elementwise and meet trivially.
    """
    if K1.degree != K2.degree:
        raise ValueError("degree mismatch")
    grp = PermGroup(K1.degree, K1.generators + K2.generators, name=name or f"{K1.name}x{K2.name}")
    commute = all(a * b == b * a for a in K1.gens for b in K2.gens)
    trivial_meet = intersect(K1, K2).order() == 1 if commute else False
    grp.internal_direct_product = commute and trivial_meet
    if grp.internal_direct_product:
        grp._set_elements([a * b for a in K1.elements() for b in K2.elements()])
    return grp


def is_internal_direct_product(K: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    """``K = A x B`` internally: commuting factors, trivial intersection, |A||B| = |K|."""
    if not (A.is_subgroup_of(K) and B.is_subgroup_of(K)):
        return False
    if any(a * b != b * a for a in A.gens for b in B.gens):
        return False
    if intersect(A, B).order() != 1:
        return False
    return A.order() * B.order() == K.order()


def support_subgroup(K: PermGroup, points: Iterable[int], name: str = "") -> PermGroup:
    """Elements of ``K`` moving only points in ``points``."""
    allowed = frozenset(points)
    elems = [k for k in K.elements() if k.support() <= allowed]
    return subgroup_from_elements(K.degree, elems, name=name)


# -- cosets --------------------------------------------------------------

@dataclass
class CosetSpace:
    """Left cosets ``rep_i K`` of ``subgroup`` in ``group``.

    Representatives are found breadth-first from the identity in generator
    order.  ``action[label][i] = j`` means ``gen * rep_i K = rep_j K``.
    """

    group: PermGroup
    subgroup: PermGroup
    reps: list[Permutation] = field(default_factory=list)
    action: dict[str, tuple[int, ...]] = field(default_factory=dict)
    _lookup: dict[Permutation, int] = field(default_factory=dict, repr=False)

    @property
    def index(self) -> int:
        return len(self.reps)

    def locate(self, g: Permutation) -> int:
        """Index of the coset containing ``g``."""
        try:
            return self._lookup[g]
        except KeyError:
            raise SubgroupError(f"{g.cycle_str()} is not an element of {self.group.name}") from None

    def act(self, g: Permutation, i: int) -> int:
        return self._lookup[g * self.reps[i]]


def cosets(G: PermGroup, K: PermGroup) -> CosetSpace:
    if G.degree != K.degree:
        raise ValueError("degree mismatch")
    for label, k in K.generators:
        if k not in G:
            raise SubgroupError(f"generator {label} = {k.cycle_str()} of {K.name} is not in {G.name}")
    kel = K.elements()
    space = CosetSpace(group=G, subgroup=K)
    lookup: dict[Permutation, int] = {}

    def add(rep: Permutation) -> int:
        idx = len(space.reps)
        space.reps.append(rep)
        for k in kel:
            lookup[rep * k] = idx
        return idx

    add(G.identity())
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for _, s in G.generators:
            h = s * space.reps[i]
            if h not in lookup:
                queue.append(add(h))
    space._lookup = lookup
    for label, s in G.generators:
        space.action[label] = tuple(lookup[s * rep] for rep in space.reps)
    return space
