"""Permutation modules, G-lattices and equivariant maps.

The verifier :func:`verify_generically_free` checks the two combinatorial
conditions under which a permutation module ``Z[X]`` mapping onto a
character lattice gives a generically free representation of ``T x| H``:

1. the map is surjective onto the target lattice;
2. ``H`` acts faithfully on its kernel.

When both hold the resulting bound is ``rank Z[X] - rank(target)``.  A
verdict only ever asserts that these two conditions hold or fail; it makes
no further geometric claim.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

from .linalg import (
    IntMatrix,
    LatticeMembershipError,
    _Membership,
    kernel_basis,
    lattice_basis,
    rank,
    snf,
)
from .perm import (
    ENUMERATION_LIMIT,
    CosetSpace,
    GroupTooLargeError,
    PermGroup,
    Permutation,
    center,
)

logger = logging.getLogger(__name__)

Label = Hashable
Vector = tuple[int, ...]


class WellDefinednessError(ValueError):
    """A stabilizer element of an orbit representative moves its image."""

    def __init__(self, message: str, element: Permutation, component: int, label: Label):
        super().__init__(message)
        self.element = element
        self.component = component
        self.label = label


class StrategyError(ValueError):
    """The requested faithfulness strategy cannot be applied soundly."""


# -- labels --------------------------------------------------------------

def label_str(label: Label) -> str:
    """1-based rendering of a basis label."""
    if isinstance(label, tuple) and label:
        kind = label[0]
        if kind == "f":
            return f"f{{{label[1] + 1},{label[2] + 1}}}"
        if kind == "g":
            return f"g{label[1] + 1}"
        if kind == "x":
            return f"x{label[1] + 1}"
        if kind == "coset":
            return f"c{label[1] + 1}"
        if isinstance(kind, int) and len(label) == 2:
            return f"[{kind + 1}]{label_str(label[1])}"
    return str(label)


# -- modules --------------------------------------------------------------

class PermModule:
    """A free abelian group on ``labels`` permuted by a group.

    ``perm_fn(g)`` returns ``pi`` with ``g . b_i = b_{pi[i]}``.
    """

    def __init__(self, group: PermGroup, labels: Sequence[Label], perm_fn: Callable[[Permutation], tuple[int, ...]], name: str = ""):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be pairwise distinct")
        self.group = group
        self.labels = labels
        self.name = name
        self._perm_fn = perm_fn
        # set by direct_sum
        self.summands: Optional[list[PermModule]] = None
        self.offsets: Optional[list[int]] = None
        self.generator_actions = [perm_fn(g) for g in group.gens]
        for label, pi in zip(group.generators, self.generator_actions):
            if sorted(pi) != list(range(len(labels))):
                raise ValueError(f"generator {label[0]} does not permute the basis of {name or 'module'}")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def permutation_of(self, g: Permutation) -> tuple[int, ...]:
        return self._perm_fn(g)

    def act_on_vector(self, g: Permutation, v: Sequence[int], pi: Optional[Sequence[int]] = None) -> Vector:
        pi = self._perm_fn(g) if pi is None else pi
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[pi[i]] = x
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def vector(self, coeffs: Mapping[Label, int]) -> Vector:
        """Vector from a ``{label: coefficient}`` mapping."""
        index = {lab: i for i, lab in enumerate(self.labels)}
        v = [0] * self.rank
        for lab, c in coeffs.items():
            v[index[lab]] += c
        return tuple(v)

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(self.rank):
            if start in seen:
                continue
            orb = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                a = queue.popleft()
                for pi in self.generator_actions:
                    b = pi[a]
                    if b not in seen:
                        seen.add(b)
                        orb.append(b)
                        queue.append(b)
            out.append(orb)
        return out

    def reordered(self, order: Sequence[int]) -> "PermModule":
        """Same module with basis ``[labels[order[0]], labels[order[1]], ...]``."""
        order = list(order)
        if sorted(order) != list(range(self.rank)):
            raise ValueError("order must be a permutation of the basis indices")
        pos = {old: new for new, old in enumerate(order)}
        fn = self._perm_fn

        def perm_fn(g):
            pi = fn(g)
            return tuple(pos[pi[old]] for old in order)

        return PermModule(self.group, [self.labels[i] for i in order], perm_fn, name=self.name)

    def __repr__(self) -> str:
        return f"PermModule({self.name or '?'}, rank={self.rank}, group={self.group.name})"


def label_module(group: PermGroup, labels: Sequence[Label], label_action: Callable[[Permutation, Label], Label], name: str = "") -> PermModule:
    """Permutation module on labels moved by ``label_action(g, label)``."""
    labels = list(labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def perm_fn(g):
        try:
            return tuple(index[label_action(g, lab)] for lab in labels)
        except KeyError as exc:
            raise ValueError(f"label set of {name or 'module'} is not invariant: {exc.args[0]!r}") from None

    return PermModule(group, labels, perm_fn, name=name)


def point_module(group: PermGroup, name: str = "") -> PermModule:
    """``Z[X]`` for the natural action on ``X = {0..n-1}``."""
    labels = [("x", i) for i in range(group.degree)]

    def perm_fn(g):
        return g.images

    return PermModule(group, labels, perm_fn, name=name or f"Z[X]_{group.name}")


def coset_module(space: CosetSpace, name: str = "") -> PermModule:
    """``Z[G/K]``; basis index ``i`` is the coset ``reps[i] K``."""
    labels = [("coset", i) for i in range(space.index)]
    reps = space.reps
    lookup = space._lookup

    def perm_fn(g):
        return tuple(lookup[g * rep] for rep in reps)

    return PermModule(space.group, labels, perm_fn, name=name or f"Z[{space.group.name}/{space.subgroup.name}]")


def direct_sum(*modules: PermModule, name: str = "") -> PermModule:
    if not modules:
        raise ValueError("direct sum of nothing")
    group = modules[0].group
    if any(m.group is not group for m in modules):
        raise ValueError("direct summands must share the same group object")
    offsets = []
    labels = []
    for k, m in enumerate(modules):
        offsets.append(len(labels))
        labels.extend((k, lab) for lab in m.labels)

    def perm_fn(g):
        out: list[int] = []
        for off, m in zip(offsets, modules):
            out.extend(off + j for j in m.permutation_of(g))
        return tuple(out)

    mod = PermModule(group, labels, perm_fn, name=name or " + ".join(m.name for m in modules))
    mod.summands = list(modules)
    mod.offsets = offsets
    return mod


# -- lattices --------------------------------------------------------------

@dataclass(frozen=True)
class GLattice:
    """A group-stable sublattice of a permutation module, optionally modulo ``divisor``."""

    ambient: PermModule
    basis: IntMatrix
    divisor: Optional[IntMatrix] = None
    name: str = ""

    @property
    def rank(self) -> int:
        return self.basis.ncols

    @property
    def divisor_rank(self) -> int:
        return 0 if self.divisor is None else rank(self.divisor)

    @property
    def effective_rank(self) -> int:
        return self.rank - self.divisor_rank

    def __contains__(self, v: Sequence[int]) -> bool:
        return v in _Membership(self.basis)


def _check_stable(module: PermModule, basis: IntMatrix, what: str) -> None:
    oracle = _Membership(basis)
    cols = basis.columns()
    for (label, g), pi in zip(module.group.generators, module.generator_actions):
        for j, col in enumerate(cols):
            if module.act_on_vector(g, col, pi) not in oracle:
                raise ValueError(f"{what} is not stable under generator {label}: column {j} leaves the lattice")


def make_lattice(ambient: PermModule, generators: IntMatrix, divisor: Optional[IntMatrix] = None, name: str = "") -> GLattice:
    """Lattice spanned by the columns of ``generators``; checks group stability."""
    if generators.nrows != ambient.rank:
        raise ValueError("generator vectors do not match the ambient rank")
    basis = lattice_basis(generators)
    _check_stable(ambient, basis, name or "lattice")
    if divisor is not None:
        divisor = lattice_basis(divisor)
        _check_stable(ambient, divisor, f"divisor of {name or 'lattice'}")
        oracle = _Membership(basis)
        for j, col in enumerate(divisor.columns()):
            if col not in oracle:
                raise LatticeMembershipError(f"divisor column {j} is not in {name or 'the lattice'}", column=j)
    return GLattice(ambient=ambient, basis=basis, divisor=divisor, name=name)


def augmentation_kernel(module: PermModule, m: int, name: str = "") -> GLattice:
    """``{v in Z[X] : sum(v) = 0 mod m}``, the kernel of augmentation mod ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = module.rank
    gens = []
    for i in range(1, n):
        v = [0] * n
        v[0], v[i] = -1, 1
        gens.append(v)
    if n:
        gens.append([m] + [0] * (n - 1))
    return make_lattice(module, IntMatrix.from_columns(gens, nrows=n), name=name or f"J(m={m})")


def even_sum_sublattice(n: int, m: int = 2, group: Optional[PermGroup] = None) -> GLattice:
    """``{t in Z^n : t_1 + ... + t_n = 0 mod m}`` with the coordinate action of ``group`` (default ``S_n``)."""
    from .perm import sym

    if n < 1:
        raise ValueError("n must be >= 1")
    group = group if group is not None else sym(n)
    if group.degree != n:
        raise ValueError("group degree must equal n")
    return augmentation_kernel(point_module(group), m, name=f"sum=0 mod {m} in Z^{n}")


def quotient_target(L: GLattice, divisor_vector: Sequence[int]) -> GLattice:
    """``L / Z . divisor_vector``; the vector must lie in ``L`` and be fixed up to the lattice it spans."""
    v = tuple(divisor_vector)
    if v not in L:
        raise LatticeMembershipError(f"divisor vector {list(v)} is not in {L.name or 'the lattice'}", column=0)
    return make_lattice(L.ambient, L.basis, divisor=IntMatrix.from_columns([v], nrows=L.ambient.rank), name=f"{L.name} / Z.{list(v)}")


# -- equivariant maps --------------------------------------------------------

@dataclass
class EquivariantMap:
    source: PermModule
    target: GLattice
    rep_images: dict[int, Vector]
    matrix: IntMatrix
    name: str = ""

    def image(self, v: Sequence[int]) -> Vector:
        return self.matrix.apply(v)

    def column(self, i: int) -> Vector:
        return self.matrix.column(i)

    def is_equivariant_for(self, g: Permutation) -> bool:
        """``matrix(g . b) = g . matrix(b)`` for every basis element (mod divisor)."""
        pi_src = self.source.permutation_of(g)
        pi_tgt = self.target.ambient.permutation_of(g)
        cols = self.matrix.columns()
        div = _Membership(self.target.divisor) if self.target.divisor is not None else None
        for b in range(self.source.rank):
            lhs = cols[pi_src[b]]
            rhs = self.target.ambient.act_on_vector(g, cols[b], pi_tgt)
            if lhs != rhs:
                if div is None or tuple(x - y for x, y in zip(lhs, rhs)) not in div:
                    return False
        return True


def build_equivariant_map(
    source: PermModule,
    target: GLattice,
    rep_images: Union[Mapping[int, Sequence[int]], Sequence[Sequence[int]]],
    name: str = "",
) -> EquivariantMap:
    """Extend images of orbit representatives to an equivariant map.

    ``rep_images`` maps one basis index per source orbit to a target vector
    (or lists images in orbit order, with each orbit's first basis index as
    representative).  Raises :class:`WellDefinednessError` if some
    stabilizer element of a representative moves its image.
    """
    if source.group is not target.ambient.group:
        raise ValueError("source and target must carry the same group object")
    orbits = source.orbits()
    if not isinstance(rep_images, Mapping):
        rep_images = list(rep_images)
        if len(rep_images) != len(orbits):
            raise ValueError(f"expected {len(orbits)} images (one per orbit), got {len(rep_images)}")
        rep_images = {orb[0]: img for orb, img in zip(orbits, rep_images)}
    images = {int(k): tuple(v) for k, v in rep_images.items()}

    orbit_of = {}
    for k, orb in enumerate(orbits):
        for b in orb:
            orbit_of[b] = k
    reps_by_orbit: dict[int, int] = {}
    for rep in images:
        k = orbit_of[rep]
        if k in reps_by_orbit:
            raise ValueError(f"two representatives given for orbit of {label_str(source.labels[rep])}")
        reps_by_orbit[k] = rep
    if len(reps_by_orbit) != len(orbits):
        missing = [label_str(source.labels[orb[0]]) for k, orb in enumerate(orbits) if k not in reps_by_orbit]
        raise ValueError(f"no image given for orbits of {missing}")

    amb = target.ambient
    L = _Membership(target.basis)
    for rep, img in images.items():
        if len(img) != amb.rank:
            raise ValueError(f"image of {label_str(source.labels[rep])} has wrong length")
        if img not in L:
            raise LatticeMembershipError(f"image of {label_str(source.labels[rep])} is not in the target lattice")

    gens = source.group.gens
    tgt_pis = amb.generator_actions
    # transversal: basis index -> group element carrying its orbit rep to it
    trans: dict[int, Permutation] = {}
    cols: dict[int, Vector] = {}
    ident = source.group.identity()
    for k in range(len(orbits)):
        rep = reps_by_orbit[k]
        trans[rep] = ident
        cols[rep] = images[rep]
        queue = deque([rep])
        while queue:
            b = queue.popleft()
            for s, pi, tpi in zip(gens, source.generator_actions, tgt_pis):
                c = pi[b]
                if c not in trans:
                    trans[c] = s * trans[b]
                    cols[c] = amb.act_on_vector(s, cols[b], tpi)
                    queue.append(c)

    div = _Membership(target.divisor) if target.divisor is not None else None
    for s, pi, tpi in zip(gens, source.generator_actions, tgt_pis):
        for b in range(source.rank):
            c = pi[b]
            moved = amb.act_on_vector(s, cols[b], tpi)
            if moved == cols[c]:
                continue
            if div is not None and tuple(x - y for x, y in zip(moved, cols[c])) in div:
                continue
            h = trans[c].inverse() * s * trans[b]
            k = orbit_of[b]
            rep = reps_by_orbit[k]
            raise WellDefinednessError(
                f"stabilizer element {h.cycle_str()} of {label_str(source.labels[rep])} "
                f"(orbit {k + 1}) does not fix its image",
                element=h,
                component=k,
                label=source.labels[rep],
            )

    matrix = IntMatrix.from_columns([cols[b] for b in range(source.rank)], nrows=amb.rank)
    return EquivariantMap(source=source, target=target, rep_images=images, matrix=matrix, name=name)


# -- faithfulness --------------------------------------------------------------

SYMMETRIC_ASSUMPTION = (
    "normal subgroups of S_n are known: any nontrivial one contains a 3-cycle, "
    "except for n = 4 (Klein four-group, containing a double transposition) and n = 2"
)
TWO_GROUP_ASSUMPTION = "a nontrivial normal subgroup of a finite 2-group meets its center"


@dataclass
class FaithfulnessResult:
    faithful: bool
    strategy: str
    checked: int
    violations: list[Permutation] = field(default_factory=list)
    # (element, index of a kernel basis column it moves)
    witnesses: list[tuple[Permutation, int]] = field(default_factory=list)
    # (element, explicit kernel vector, moved?)
    vector_witnesses: list[tuple[Permutation, Vector, bool]] = field(default_factory=list)
    assumption: str = ""


def _symmetric_witnesses(n: int) -> list[Permutation]:
    if n <= 1:
        return []
    if n == 2:
        return [Permutation.from_cycles(2, [(0, 1)])]
    out = [Permutation.from_cycles(n, [(0, 1, 2)])]
    if n == 4:
        out.append(Permutation.from_cycles(4, [(0, 1), (2, 3)]))
    return out


def _moved_column(rows: Sequence[tuple[int, ...]], pi: Sequence[int], ncols: int) -> Optional[int]:
    """Index of a kernel column moved by ``pi`` (rows of the kernel matrix), or None."""
    for i, row in enumerate(rows):
        other = rows[pi[i]]
        if other != row:
            for j in range(ncols):
                if other[j] != row[j]:
                    return j
    return None


def _order_if_known(group: PermGroup, limit: int = ENUMERATION_LIMIT) -> Optional[int]:
    if group.family == "symmetric":
        return math.factorial(group.degree)
    try:
        return len(group.elements(limit))
    except GroupTooLargeError:
        return None


def resolve_strategy(group: PermGroup, strategy: str) -> str:
    if strategy != "auto":
        return strategy
    order = _order_if_known(group)
    return "exhaustive" if order is not None and order <= ENUMERATION_LIMIT else "witness"


def _module_sweep(module: PermModule, limit: int = ENUMERATION_LIMIT):
    """Yield ``(g, permutation of g on the module)`` for every nontrivial ``g``.

    Breadth-first over the group, composing generator actions on the module
    so no element is ever pushed through ``perm_fn`` again.
    """
    group = module.group
    steps = [(s, module.permutation_of(s)) for s in group.gens]
    e = group.identity()
    seen = {e.images}
    frontier = [(e, tuple(range(module.rank)))]
    while frontier:
        nxt = []
        for g, pi in frontier:
            for s, sigma in steps:
                h = s * g
                if h.images in seen:
                    continue
                seen.add(h.images)
                if len(seen) > limit:
                    raise StrategyError(f"exhaustive strategy inapplicable: {group.name} has more than {limit} elements")
                rho = tuple(sigma[i] for i in pi)
                yield h, rho
                nxt.append((h, rho))
        frontier = nxt


def faithfulness(
    module: PermModule,
    kernel: IntMatrix,
    strategy: str = "auto",
    witness_vectors: Sequence[tuple[Permutation, Sequence[int]]] = (),
) -> FaithfulnessResult:
    """Decide whether ``module.group`` acts faithfully on the lattice spanned by ``kernel``.

    ``exhaustive`` sweeps every nontrivial element.  ``witness`` checks a
    family of elements whose nontriviality forces faithfulness because the
    kernel of the action is a normal subgroup.  Explicit ``witness_vectors``
    are confirmed to lie in the kernel and to be moved by their element.
    """
    group = module.group
    if kernel.nrows != module.rank:
        raise ValueError("kernel vectors do not live in the module")
    _check_stable(module, kernel, "kernel lattice")
    strategy = resolve_strategy(group, strategy)
    rows = kernel.rows()
    ncols = kernel.ncols
    result = FaithfulnessResult(faithful=True, strategy=strategy, checked=0)

    if strategy == "exhaustive":
        for g, pi in _module_sweep(module):
            result.checked += 1
            if _moved_column(rows, pi, ncols) is None:
                result.faithful = False
                result.violations.append(g)
                break
    elif strategy == "witness":
        if group.family == "symmetric":
            elems = _symmetric_witnesses(group.degree)
            result.assumption = SYMMETRIC_ASSUMPTION
        else:
            order = _order_if_known(group)
            if order is None:
                raise StrategyError(f"witness strategy needs an enumerable 2-group; {group.name} is too large")
            if order & (order - 1):
                raise StrategyError(f"{group.name} has order {order}, not a 2-group; no witness family applies")
            Z = center(group)
            for z in Z.gens:
                if any(z * s != s * z for s in group.gens):
                    raise StrategyError(f"claimed central element {z.cycle_str()} is not central")
            elems = [z for z in Z.elements() if not z.is_identity()]
            result.assumption = TWO_GROUP_ASSUMPTION
        for g in elems:
            result.checked += 1
            j = _moved_column(rows, module.permutation_of(g), ncols)
            if j is None:
                result.faithful = False
                result.violations.append(g)
            else:
                result.witnesses.append((g, j))
    else:
        raise StrategyError(f"unknown strategy {strategy!r}")

    if witness_vectors:
        oracle = _Membership(kernel)
        for g, v in witness_vectors:
            v = tuple(v)
            if v not in oracle:
                raise StrategyError(f"witness vector {list(v)} is not in the kernel")
            result.vector_witnesses.append((g, v, module.act_on_vector(g, v) != v))
    return result


# -- verdicts ----------------------------------------------------------------

@dataclass
class Verdict:
    name: str
    well_defined: bool
    surjective: bool
    faithful_on_kernel: bool
    kernel_rank: int
    source_rank: int
    target_rank: int
    bound: int
    strategy: str = ""
    cokernel_factors: tuple[int, ...] = ()
    failure_witnesses: list[str] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    assumption: str = ""
    faithfulness: Optional[FaithfulnessResult] = field(default=None, repr=False, compare=False)
    kernel: Optional[IntMatrix] = field(default=None, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.well_defined and self.surjective and self.faithful_on_kernel

    def fields(self) -> tuple:
        """The comparable core: flags, ranks and bound."""
        return (self.well_defined, self.surjective, self.faithful_on_kernel, self.kernel_rank, self.source_rank, self.target_rank, self.bound)


def cokernel_factors(emap: EquivariantMap) -> tuple[int, ...]:
    """Invariant factors of ``target / (image + divisor)``; a 0 marks a free summand."""
    tgt = emap.target
    oracle = _Membership(tgt.basis)
    cols = list(emap.matrix.columns())
    if tgt.divisor is not None:
        cols.extend(tgt.divisor.columns())
    coords = []
    for col in cols:
        x = oracle.coords(col)
        if x is None:
            raise LatticeMembershipError("map image leaves the target lattice")
        coords.append(x)
    k = tgt.rank
    if not coords:
        return (0,) * k
    C = lattice_basis(IntMatrix.from_columns(coords, nrows=k))
    factors = snf(C).factors
    return tuple(f for f in factors if f != 1) + (0,) * (k - len(factors))


def map_kernel(emap: EquivariantMap) -> IntMatrix:
    """``{v : map(v) in divisor}`` as a canonical basis in source coordinates."""
    A = emap.matrix
    D = emap.target.divisor
    if D is None:
        return kernel_basis(A)
    K = kernel_basis(A.hstack(D))
    n = emap.source.rank
    proj = [col[:n] for col in K.columns()]
    if not proj:
        return IntMatrix.zeros(n, 0)
    return lattice_basis(IntMatrix.from_columns(proj, nrows=n))


def verify_generically_free(
    emap: EquivariantMap,
    strategy: str = "auto",
    witness_vectors: Sequence[tuple[Permutation, Sequence[int]]] = (),
    name: str = "",
) -> Verdict:
    """Check surjectivity and faithfulness on the kernel; report the bound."""
    src_rank = emap.source.rank
    tgt_rank = emap.target.effective_rank
    factors = cokernel_factors(emap)
    surjective = not factors
    K = map_kernel(emap)
    image_rank = rank(emap.matrix if emap.target.divisor is None else emap.matrix.hstack(emap.target.divisor)) - emap.target.divisor_rank
    if K.ncols != src_rank - image_rank:
        raise ArithmeticError(f"rank-nullity violated: kernel {K.ncols}, source {src_rank}, image {image_rank}")
    fr = faithfulness(emap.source, K, strategy, witness_vectors)
    verdict = Verdict(
        name=name or emap.name,
        well_defined=True,
        surjective=surjective,
        faithful_on_kernel=fr.faithful,
        kernel_rank=K.ncols,
        source_rank=src_rank,
        target_rank=tgt_rank,
        bound=src_rank - tgt_rank,
        strategy=fr.strategy,
        cokernel_factors=factors,
        assumption=fr.assumption,
        faithfulness=fr,
        kernel=K,
    )
    if not surjective:
        verdict.failure_witnesses.append(f"cokernel invariant factors {list(factors)}")
    for g in fr.violations:
        verdict.failure_witnesses.append(f"{g.cycle_str()} acts trivially on the kernel")
    cols = K.columns()
    for g, j in fr.witnesses:
        verdict.witnesses.append({"element": g.cycle_str(), "moves": _render_vector(emap.source, cols[j])})
    for g, v, moved in fr.vector_witnesses:
        verdict.witnesses.append({"element": g.cycle_str(), "moves": _render_vector(emap.source, v), "moved": moved})
        if not moved:
            verdict.failure_witnesses.append(f"{g.cycle_str()} fixes the supplied witness vector")
    return verdict


def _render_vector(module: PermModule, v: Sequence[int]) -> str:
    terms = []
    for lab, c in zip(module.labels, v):
        if c:
            coef = "" if c == 1 else "-" if c == -1 else f"{c}"
            terms.append(f"{coef}{label_str(lab)}")
    return " + ".join(terms).replace("+ -", "- ") or "0"
