"""Builders for the concrete torus-normalizer representations.

Each builder returns a :class:`Construction`: the group, the equivariant map
``Z[X] -> T*`` and the closed-form bound the map should certify, together
with a dictionary of exact side identities that the construction relies on.
:meth:`Construction.verify` runs the generic verifier.

Points are 0-based; ``f(i, j)`` is the vector with 1 at ``i`` and ``j``,
``g(k)`` has -2 at ``k`` and ``e(i, j)`` has 1 at ``i`` and -1 at ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .equivariant import (
    EquivariantMap,
    PermModule,
    Verdict,
    _symmetric_witnesses,
    augmentation_kernel,
    build_equivariant_map,
    coset_module,
    direct_sum,
    even_sum_sublattice,
    label_module,
    point_module,
    quotient_target,
    verify_generically_free,
)
from .linalg import IntMatrix, _Membership, lattice_basis
from .perm import (
    PermGroup,
    Permutation,
    center,
    conjugate,
    cosets,
    h_group,
    intersect,
    is_internal_direct_product,
    product,
    stabilizer,
    support_subgroup,
    sylow2_sym,
    sym,
)

CONSTRUCTIONS = ("lemma32i", "lemma32ii", "lemma33", "section5", "example-r3")
OUT_OF_RANGE_NOTE = "outside the stated parameter range: findings are reported, not asserted"


class ParameterError(ValueError):
    """Parameter outside the range where the construction is defined."""


@dataclass
class Construction:
    name: str
    parameter: int
    group: PermGroup
    map: EquivariantMap
    expected_bound: int
    citation: str
    checks: dict[str, bool] = field(default_factory=dict)
    witness_vectors: list[tuple[Permutation, tuple[int, ...]]] = field(default_factory=list)
    component_ranks: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)

    def verify(self, strategy: str = "auto") -> Verdict:
        return verify_generically_free(self.map, strategy, self.witness_vectors, name=f"{self.name}({self.parameter})")

    def passed(self, verdict: Verdict) -> bool:
        return verdict.passed and verdict.bound == self.expected_bound and all(self.checks.values())


# -- vectors ---------------------------------------------------------------

def _f(n, i, j):
    v = [0] * n
    v[i] += 1
    v[j] += 1
    return tuple(v)


def _g(n, k):
    v = [0] * n
    v[k] = -2
    return tuple(v)


def _e(n, i, j):
    v = [0] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _scale(c, v):
    return tuple(c * x for x in v)


def _label_vector(n, label):
    return _f(n, label[1], label[2]) if label[0] == "f" else _g(n, label[1])


def _pair_action(g: Permutation, label):
    if label[0] == "f":
        a, b = g.images[label[1]], g.images[label[2]]
        return ("f", min(a, b), max(a, b))
    return ("g", g.images[label[1]])


def _self_map(group: PermGroup, module: PermModule, target, name: str) -> EquivariantMap:
    """Map each label to its own vector, given only on orbit representatives."""
    n = group.degree
    reps = {orb[0]: _label_vector(n, module.labels[orb[0]]) for orb in module.orbits()}
    return build_equivariant_map(module, target, reps, name=name)


def _columns_are_labels(emap: EquivariantMap) -> bool:
    n = emap.target.ambient.rank
    return all(emap.column(i) == _label_vector(n, lab) for i, lab in enumerate(emap.source.labels))


def _sym_witness_vectors(n: int) -> list[tuple[Permutation, tuple[int, ...]]]:
    """For each witness element s: 2 f(i0, j0) + g(i0) + g(j0) with s(i0) != i0, j0 not in {i0, s(i0)}."""
    out = []
    for s in _symmetric_witnesses(n):
        i0 = min(s.support())
        j0 = min(set(range(n)) - {i0, s.images[i0]})
        out.append((s, (i0, j0)))
    return out


# -- pairs and singletons under S_n -------------------------------------------

def lemma32i(n: int, include_singletons: bool = True, group: Optional[PermGroup] = None) -> Construction:
    """``X = {f(i, j)} u {g(k)}`` mapping onto the even-sum lattice of ``Z^n`` under ``S_n``.

    ``include_singletons=False`` drops the ``g(k)`` (a negative control).
    """
    if n < 3:
        raise ParameterError(f"lemma32i is stated for n >= 3, got n = {n}")
    G = group if group is not None else sym(n)
    labels = [("f", i, j) for i, j in itertools.combinations(range(n), 2)]
    if include_singletons:
        labels += [("g", k) for k in range(n)]
    module = label_module(G, labels, _pair_action, name=f"Z[X] (n={n})")
    target = even_sum_sublattice(n, 2, G)
    emap = _self_map(G, module, target, name="nu")
    c = Construction(
        name="lemma32i" if include_singletons else "lemma32i-no-g",
        parameter=n,
        group=G,
        map=emap,
        expected_bound=(n * n - n) // 2,
        citation="T_{n,2} x| S_n: |X| = (n^2-n)/2 + n, bound (n^2-n)/2",
    )
    c.checks["images are the labels themselves"] = _columns_are_labels(emap)
    if include_singletons:
        c.checks["e(i,j) = f(i,j) + g(j)"] = all(
            _add(_f(n, i, j), _g(n, j)) == _e(n, i, j) for i in range(n) for j in range(n) if i != j
        )
        c.witness_vectors = [
            (s, module.vector({("f", min(i0, j0), max(i0, j0)): 2, ("g", i0): 1, ("g", j0): 1}))
            for s, (i0, j0) in _sym_witness_vectors(n)
        ]
    return c


def lemma32ii(n: int, range_guard: bool = True) -> Construction:
    """Pairs ``X' = {f(i, j)}`` onto ``(sum = 0 mod 2) / Z(1,...,1)`` under ``S_n``."""
    if n % 2:
        raise ParameterError(
            f"lemma32ii needs even n (got {n}): the all-ones vector has odd coordinate sum, "
            "so it does not lie in the even-sum lattice and the quotient is not defined"
        )
    if n < 6 and range_guard:
        raise ParameterError(f"lemma32ii is stated for even n >= 6, got n = {n}")
    if n < 4:
        raise ParameterError(f"lemma32ii needs n >= 4, got n = {n}")
    G = sym(n)
    labels = [("f", i, j) for i, j in itertools.combinations(range(n), 2)]
    module = label_module(G, labels, _pair_action, name=f"Z[X'] (n={n})")
    base = even_sum_sublattice(n, 2, G)
    target = quotient_target(base, (1,) * n)
    emap = _self_map(G, module, target, name="nu'")
    c = Construction(
        name="lemma32ii",
        parameter=n,
        group=G,
        map=emap,
        expected_bound=(n * n - 3 * n + 2) // 2,
        citation="T'_{n,2} x| S_n: |X'| = (n^2-n)/2, bound (n^2-3n+2)/2",
    )
    if n < 6:
        c.notes.append(OUT_OF_RANGE_NOTE)
    c.checks["images are the labels themselves"] = _columns_are_labels(emap)
    span = _Membership(emap.matrix.hstack(target.divisor))
    c.checks["every e(i,j) lies in image + Z(1,...,1)"] = all(
        _e(n, i, j) in span for i in range(n) for j in range(n) if i != j
    )
    return c


# -- cross pairs under the Sylow 2-subgroup ------------------------------------

def lemma33(r: int) -> Construction:
    """Cross pairs plus singletons under the Sylow 2-subgroup of ``S_{2^r}``."""
    if r < 2:
        raise ParameterError(f"lemma33 is stated for r >= 2, got r = {r}")
    n = 2 ** r
    half = n // 2
    P = sylow2_sym(n)
    labels = [("f", i, j) for i in range(half) for j in range(half, n)]
    labels += [("g", k) for k in range(n)]
    module = label_module(P, labels, _pair_action, name=f"Z[X] (r={r})")
    target = even_sum_sublattice(n, 2, P)
    emap = _self_map(P, module, target, name="nu")
    c = Construction(
        name="lemma33",
        parameter=r,
        group=P,
        map=emap,
        expected_bound=2 ** (2 * r - 2),
        citation="T_{2^r,2} x| P_{2^r}: |X| = 2^(2r-2) + 2^r, bound 2^(2r-2)",
    )
    side = [0] * half + [1] * half
    c.checks["generators preserve cross pairs"] = all(
        side[g.images[i]] != side[g.images[j]] for g in P.gens for i in range(half) for j in range(half, n)
    )
    c.checks["images are the labels themselves"] = _columns_are_labels(emap)
    same_side = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)
                 if i != j and side[i] == side[j] and side[k] != side[i]]
    c.checks["f(i,j) = f(i,k) + f(j,k) + g(k) within a half"] = all(
        _f(n, i, j) == _add(_f(n, i, k), _f(n, j, k), _g(n, k)) for i, j, k in same_side
    )
    c.checks["e(i,j) = f(i,j) + g(j) across halves"] = all(
        _e(n, i, j) == _add(_f(n, i, j), _g(n, j)) for i in range(n) for j in range(n) if side[i] != side[j]
    )
    c.checks["e(i,j) = f(i,k) + f(j,k) + g(j) + g(k) within a half"] = all(
        _e(n, i, j) == _add(_f(n, i, k), _f(n, j, k), _g(n, j), _g(n, k)) for i, j, k in same_side
    )
    sigma = Permutation.from_cycles(n, [(2 * t, 2 * t + 1) for t in range(half)])
    Z = center(P)
    c.checks["center is generated by (1 2)(3 4)..."] = sorted(Z.elements(), key=lambda p: p.images) == sorted(
        [P.identity(), sigma], key=lambda p: p.images
    )
    c.witness_vectors = [(sigma, module.vector({("f", 0, half): 2, ("g", 0): 1, ("g", half): 1}))]
    return c


# -- coset modules onto J_r ---------------------------------------------------

@dataclass
class Section5Data:
    H: PermGroup
    x: int
    Hx: PermGroup
    tau1: Permutation
    tau2: Permutation
    tau_top: Permutation
    subgroups: list[PermGroup]


def section5_groups(r: int, x: int = 0) -> Section5Data:
    if r < 3:
        raise ParameterError(f"section5 is stated for r >= 3, got r = {r}")
    H = h_group(r)
    if not 0 <= x < H.degree:
        raise ParameterError(f"base point {x + 1} out of range")
    t1, t2, tt = H.generator("tau1"), H.generator("tau2"), H.generator("tau_top")
    Hx = stabilizer(H, x)
    n = H.degree

    def cyc(label, p):
        return PermGroup(n, [(label, p)], name=f"<{label}>")

    K1 = product(cyc("tau1", t1), Hx, name="<tau1> x H_x")
    K2 = product(cyc("tau2", t2), Hx, name="<tau2> x H_x")
    K3 = product(cyc("tau1tau2", t1 * t2), Hx, name="<tau1 tau2> x H_x")
    inter = intersect(conjugate(Hx, tt), Hx)
    K4 = product(inter, cyc("tau_top", tt), name="(tau H_x tau & H_x) x| <tau_top>")
    return Section5Data(H=H, x=x, Hx=Hx, tau1=t1, tau2=t2, tau_top=tt, subgroups=[K1, K2, K3, K4])


def _coset_sum(H: PermGroup, subgroups: Sequence[PermGroup]) -> PermModule:
    return direct_sum(*(coset_module(cosets(H, K)) for K in subgroups), name="Lambda")


def section5(r: int, x: int = 0, corrupt_first_image: bool = False) -> Construction:
    """Four coset modules mapping onto ``J_r``; base cosets go to ``h x + x``.

    ``corrupt_first_image`` replaces the first image by ``tau1 x - x`` (a
    negative control; the build then fails well-definedness).
    """
    d = section5_groups(r, x)
    H = d.H
    n = H.degree
    source = _coset_sum(H, d.subgroups)
    J = augmentation_kernel(point_module(H), 2, name=f"J_{r}")

    def plus(h):
        v = [0] * n
        v[x] += 1
        v[h.images[x]] += 1
        return tuple(v)

    images = [plus(d.tau1), plus(d.tau2), plus(d.tau1 * d.tau2), plus(d.tau_top)]
    if corrupt_first_image:
        v = [0] * n
        v[d.tau1.images[x]] += 1
        v[x] -= 1
        images[0] = tuple(v)
    reps = {off: img for off, img in zip(source.offsets, images)}
    emap = build_equivariant_map(source, J, reps, name="rho")
    c = Construction(
        name="section5",
        parameter=r,
        group=H,
        map=emap,
        expected_bound=2 ** (r - 1) + 2 ** (2 * r - 4),
        citation="T_r x| H_r with Lambda_r -> J_r, bound 2^(r-1) + 2^(2r-4)",
        component_ranks=tuple(m.rank for m in source.summands),
    )
    c.checks["component ranks (2^(r-1), 2^(r-1), 2^(r-1), 2^(2r-4))"] = c.component_ranks == (
        2 ** (r - 1), 2 ** (r - 1), 2 ** (r - 1), 2 ** (2 * r - 4))
    c.checks["rank(Lambda) - rank(J) = 3*2^(r-1) + 2^(2r-4) - 2^r"] = (
        source.rank - J.rank == 3 * 2 ** (r - 1) + 2 ** (2 * r - 4) - 2 ** r)
    xv = tuple(1 if i == x else 0 for i in range(n))
    t1_of = point_module(H).act_on_vector(d.tau1, images[1])
    c.checks["2x = (t1t2 x + x) - t1(t2 x + x) + (t1 x + x)"] = _scale(2, xv) == _add(
        images[2], _scale(-1, t1_of), images[0])
    return c


def example_r3() -> Construction:
    """``r = 3`` with ``X_3`` identified with ``H_3`` (regular action).

    Components are the cosets of ``<t1>, <t2>, <t3>, <t1 t2>`` and each base
    coset maps to ``(t + 1) . 1`` in ``Z[H_3]``.
    """
    H = h_group(3)
    n = H.degree
    t1, t2, t3 = H.generator("tau1"), H.generator("tau2"), H.generator("tau_top")
    trivial = PermGroup(n, [], name="1")
    regular = coset_module(cosets(H, trivial), name="Z[H_3]")
    reg_space = cosets(H, trivial)
    J = augmentation_kernel(regular, 2, name="J_3")

    def cyc(label, p):
        return PermGroup(n, [(label, p)], name=f"<{label}>")

    subgroups = [cyc("tau1", t1), cyc("tau2", t2), cyc("tau3", t3), cyc("tau1tau2", t1 * t2)]
    source = _coset_sum(H, subgroups)

    def plus(h):
        v = [0] * n
        v[0] += 1
        v[reg_space.locate(h)] += 1
        return tuple(v)

    images = [plus(t1), plus(t2), plus(t3), plus(t1 * t2)]
    emap = build_equivariant_map(source, J, dict(zip(source.offsets, images)), name="rho")
    c = Construction(
        name="example-r3",
        parameter=3,
        group=H,
        map=emap,
        expected_bound=8,
        citation="r = 3: 4 + 4 + 4 + 4 - 2^3 = 8",
        component_ranks=tuple(m.rank for m in source.summands),
    )
    c.checks["H_3 acts simply transitively on X_3"] = H.order() == 8 and H.is_transitive()
    c.checks["component ranks (4, 4, 4, 4)"] = c.component_ranks == (4, 4, 4, 4)
    one = tuple(1 if i == 0 else 0 for i in range(n))
    t1_of = regular.act_on_vector(t1, images[1])
    c.checks["2 = (t1t2 + 1) - t1(t2 + 1) + (t1 + 1)"] = _scale(2, one) == _add(images[3], _scale(-1, t1_of), images[0])
    gens = [_scale(2, one)] + [_add(plus(t), _scale(-2, one)) for t in (t1, t2, t3)]
    c.checks["J_3 is generated by 2 and t_i - 1"] = orbit_span(regular, gens) == J.basis
    return c


# -- claims about H_r ------------------------------------------------------------

def orbit_span(module: PermModule, vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical basis of the ``Z[G]``-submodule generated by ``vectors``.

    Applies the generators repeatedly, re-canonicalizing after each round,
    until the lattice stops growing.
    """
    basis = lattice_basis(IntMatrix.from_columns([tuple(v) for v in vectors], nrows=module.rank))
    while True:
        cols = basis.columns()
        for g, pi in zip(module.group.gens, module.generator_actions):
            cols.extend(module.act_on_vector(g, c, pi) for c in basis.columns())
        new = lattice_basis(IntMatrix.from_columns(cols, nrows=module.rank))
        if new == basis:
            return basis
        basis = new


def _h_stab_order(r: int) -> int:
    """``|H_{r,x}|`` (independent of x by transitivity); ``H_2`` is regular on four points."""
    if r == 2:
        return 1
    return stabilizer(h_group(r), 0).order()


def _sylow_order(m: int) -> int:
    return 1 if m == 1 else sylow2_sym(m).order()


@dataclass
class Claim:
    passed: bool
    details: dict


@dataclass
class UsssReport:
    r: int
    x: int
    claims: dict[str, Claim]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims.values())


def verify_usss(r: int, x: int = 0) -> UsssReport:
    """Machine-check the four structural claims about ``H_r`` and ``J_r``."""
    d = section5_groups(r, x)
    H, Hx, tt = d.H, d.Hx, d.tau_top
    b = 2 ** (r - 2)
    half = b // 2
    x_side = (x % b) >= half
    near = [p for p in range(H.degree) if ((p % b) >= half) == x_side]
    far = [p for p in range(H.degree) if ((p % b) >= half) != x_side]
    prev = _h_stab_order(r - 1)
    p_small = _sylow_order(2 ** (r - 3))
    claims: dict[str, Claim] = {}

    A, B = support_subgroup(Hx, near, "A"), support_subgroup(Hx, far, "B")
    claims["i"] = Claim(
        passed=Hx.order() == prev * p_small and A.order() == prev and B.order() == p_small
        and is_internal_direct_product(Hx, A, B),
        details={"|H_r,x|": Hx.order(), "|H_r-1,x|": prev, "|P_2^(r-3)|": p_small, "factors": [A.order(), B.order()]},
    )

    gen = PermGroup(H.degree, [("tau1", d.tau1), ("tau2", d.tau2), ("tau_top", tt)] + Hx.generators, name="closure")
    claims["ii"] = Claim(passed=gen.same_group(H), details={"|closure|": gen.order(), "|H_r|": H.order()})

    pm = point_module(H)
    n = H.degree
    xv = tuple(1 if i == x else 0 for i in range(n))

    def minus(h):
        return _add(pm.act_on_vector(h, xv), _scale(-1, xv))

    span = orbit_span(pm, [_scale(2, xv), minus(d.tau1), minus(d.tau2), minus(tt)])
    J = augmentation_kernel(pm, 2)
    claims["iii"] = Claim(passed=span == J.basis, details={"rank": span.ncols, "hnf_equal": span == J.basis})

    inter = intersect(conjugate(Hx, tt), Hx)
    A2, B2 = support_subgroup(inter, near, "A"), support_subgroup(inter, far, "B")
    fourth_index = H.order() // d.subgroups[3].order()
    claims["iv"] = Claim(
        passed=inter.order() == prev * prev and A2.order() == prev and B2.order() == prev
        and is_internal_direct_product(inter, A2, B2) and fourth_index == 2 ** (2 * r - 4),
        details={"|intersection|": inter.order(), "|H_r-1,x|^2": prev * prev, "factors": [A2.order(), B2.order()],
                 "fourth coset index": fourth_index},
    )
    return UsssReport(r=r, x=x, claims=claims)


def build(name: str, parameter: int, range_guard: bool = True, x: int = 0) -> Construction:
    """Dispatch by construction name."""
    if name == "lemma32i":
        if parameter < 3:
            raise ParameterError(f"lemma32i is stated for n >= 3, got n = {parameter}")
        return lemma32i(parameter)
    if name == "lemma32ii":
        return lemma32ii(parameter, range_guard=range_guard)
    if name == "lemma33":
        return lemma33(parameter)
    if name == "section5":
        return section5(parameter, x=x)
    if name == "example-r3":
        if parameter != 3:
            raise ParameterError("example-r3 only exists for r = 3")
        return example_r3()
    raise ParameterError(f"unknown construction {name!r}")
