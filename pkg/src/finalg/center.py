"""Central elements and the Boolean center of a finite algebra.

A central element is a k-tuple that some direct decomposition sends to
[0⃗,1⃗]; concretely it is recovered from an ordered complementary factor pair
(θ,δ) as the unique tuple congruent to 0⃗ mod θ and to 1⃗ mod δ.  The tuples
carry Boolean structure (complement, meet, join) defined through congruence
systems, and that structure is what the sheaf construction is built over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import FiniteAlgebra, Homomorphism, find_isomorphism, product, quotient
from .congruence import (
    Congruence,
    DEFAULT_SIZE_CAP,
    congruence_join,
    congruence_meet,
    factor_pairs,
    principal_pair_congruence,
    solve_system,
)
from .errors import BooleanStructureError, DegenerateConstantsError, DPViolationError
from .report import CheckRecord


@dataclass(frozen=True, eq=False)
class CentralElement:
    """A central tuple with its determining factor-congruence pair.

    ``theta0`` relates the tuple to 0⃗ componentwise, ``theta1`` to 1⃗, and
    the two form a complementary factor pair.
    """

    algebra: FiniteAlgebra
    tuple: tuple[int, ...]
    theta0: Congruence
    theta1: Congruence

    def __post_init__(self):
        zero, one = self.algebra.zero_tuple, self.algebra.one_tuple
        if not self.theta0.relates_tuples(self.tuple, zero):
            raise DPViolationError("central tuple is not congruent to the zero tuple")
        if not self.theta1.relates_tuples(self.tuple, one):
            raise DPViolationError("central tuple is not congruent to the one tuple")

    def __repr__(self) -> str:
        return f"<central {self.tuple}>"


def _require_distinct_constants(algebra: FiniteAlgebra) -> None:
    if algebra.zero_tuple == algebra.one_tuple:
        raise DegenerateConstantsError(
            "zero and one tuples coincide; center analysis is refused"
        )


def central_elements(
    algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP
) -> list[CentralElement]:
    """One central tuple per ordered complementary factor pair, sorted by tuple.

    Each pair must determine exactly one tuple and distinct pairs must give
    distinct tuples; either failure is a determining-property violation and
    raises with the offending pair.
    """
    _require_distinct_constants(algebra)
    zero, one = algebra.zero_tuple, algebra.one_tuple
    by_tuple: dict[tuple[int, ...], CentralElement] = {}
    for theta, delta_ in factor_pairs(algebra, max_size):
        components = []
        for i in range(algebra.signature.tuple_length):
            sols = solve_system(algebra, [(theta, zero[i]), (delta_, one[i])])
            if len(sols) != 1:
                raise DPViolationError(
                    f"factor pair determines {len(sols)} values at component {i}",
                    witness=(theta.format_blocks(), delta_.format_blocks()),
                )
            components.append(sols[0])
        e = tuple(components)
        if e in by_tuple:
            prev = by_tuple[e]
            raise DPViolationError(
                f"two distinct factor pairs determine the same tuple {e}",
                witness=(
                    (prev.theta0.format_blocks(), prev.theta1.format_blocks()),
                    (theta.format_blocks(), delta_.format_blocks()),
                ),
            )
        by_tuple[e] = CentralElement(algebra, e, theta, delta_)
    elements = [by_tuple[t] for t in sorted(by_tuple)]
    if zero not in by_tuple or one not in by_tuple:
        raise DPViolationError("zero or one tuple missing from the center")
    return elements


@dataclass(frozen=True, eq=False)
class CenterAlgebra:
    """The Boolean algebra of central tuples.

    Tables hold indices into ``elements``; ``bottom`` is the index of 0⃗ and
    ``top`` of 1⃗.  The order is the one induced by inclusion of the
    0-side congruences.
    """

    algebra: FiniteAlgebra
    elements: tuple[CentralElement, ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    complement_table: tuple[int, ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def tuples(self) -> list[tuple[int, ...]]:
        return [e.tuple for e in self.elements]

    def index_of(self, central_tuple: Sequence[int]) -> int:
        key = tuple(central_tuple)
        for i, e in enumerate(self.elements):
            if e.tuple == key:
                return i
        raise KeyError(f"{key} is not a central tuple")

    def is_central(self, candidate: Sequence[int]) -> bool:
        key = tuple(candidate)
        return any(e.tuple == key for e in self.elements)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def complement(self, i: int) -> int:
        return self.complement_table[i]

    def leq(self, i: int, j: int) -> bool:
        return self.meet_table[i][j] == i

    def atoms(self) -> list[int]:
        return [
            i
            for i in range(self.size)
            if i != self.bottom
            and all(
                j == self.bottom or j == i or not self.leq(j, i)
                for j in range(self.size)
            )
        ]

    def hasse_edges(self) -> list[tuple[int, int]]:
        edges = []
        for i in range(self.size):
            for j in range(self.size):
                if i == j or not self.leq(i, j):
                    continue
                if any(
                    k != i and k != j and self.leq(i, k) and self.leq(k, j)
                    for k in range(self.size)
                ):
                    continue
                edges.append((i, j))
        return edges

    def are_complementary(self, i: int, j: int) -> bool:
        """The two tuples split the algebra with swapped factor pairs."""
        e, f = self.elements[i], self.elements[j]
        return e.theta0 == f.theta1 and e.theta1 == f.theta0

    def validate_boolean_laws(self) -> list[str]:
        """Names of violated Boolean identities (empty on a genuine center)."""
        failures = []
        rng = range(self.size)
        m, j, c = self.meet, self.join, self.complement
        for x in rng:
            if m(x, x) != x or j(x, x) != x:
                failures.append(f"idempotence at {x}")
            if m(x, self.bottom) != self.bottom or j(x, self.top) != self.top:
                failures.append(f"bounds at {x}")
            if m(x, self.top) != x or j(x, self.bottom) != x:
                failures.append(f"units at {x}")
            if m(x, c(x)) != self.bottom or j(x, c(x)) != self.top:
                failures.append(f"complementation at {x}")
        for x in rng:
            for y in rng:
                if m(x, y) != m(y, x) or j(x, y) != j(y, x):
                    failures.append(f"commutativity at ({x},{y})")
                if m(x, j(x, y)) != x or j(x, m(x, y)) != x:
                    failures.append(f"absorption at ({x},{y})")
                for z in rng:
                    if m(x, m(y, z)) != m(m(x, y), z) or j(x, j(y, z)) != j(j(x, y), z):
                        failures.append(f"associativity at ({x},{y},{z})")
                    if m(x, j(y, z)) != j(m(x, y), m(x, z)):
                        failures.append(f"distributivity at ({x},{y},{z})")
        return failures


def center_algebra(algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP) -> CenterAlgebra:
    """Assemble the Boolean center: tables come from congruence systems.

    complement(e): the unique z with z ≡ 1⃗ (θ0(e)) and z ≡ 0⃗ (θ1(e));
    meet(e,f): z ≡ 0⃗ (θ0(e)∩θ0(f)) and z ≡ 1⃗ (θ1(e)∨θ1(f)); join dually.
    Non-unique solutions mean the factor congruences are not Boolean and
    raise immediately.
    """
    elements = central_elements(algebra, max_size)
    zero, one = algebra.zero_tuple, algebra.one_tuple
    index = {e.tuple: i for i, e in enumerate(elements)}
    k = algebra.signature.tuple_length

    def solve_unique(eq0: tuple[Congruence, tuple[int, ...]], eq1) -> tuple[int, ...]:
        out = []
        for i in range(k):
            sols = solve_system(algebra, [(eq0[0], eq0[1][i]), (eq1[0], eq1[1][i])])
            if len(sols) != 1:
                raise BooleanStructureError(
                    f"center operation has {len(sols)} solutions at component {i}"
                )
            out.append(sols[0])
        return tuple(out)

    def lookup(t: tuple[int, ...]) -> int:
        if t not in index:
            raise BooleanStructureError(f"center operation left the center at {t}")
        return index[t]

    compl = []
    for e in elements:
        compl.append(lookup(solve_unique((e.theta0, one), (e.theta1, zero))))
    meet_rows, join_rows = [], []
    for e in elements:
        meets, joins = [], []
        for f in elements:
            meet0 = congruence_meet(e.theta0, f.theta0)
            meet1 = congruence_join(e.theta1, f.theta1)
            meets.append(lookup(solve_unique((meet0, zero), (meet1, one))))
            join0 = congruence_join(e.theta0, f.theta0)
            join1 = congruence_meet(e.theta1, f.theta1)
            joins.append(lookup(solve_unique((join0, zero), (join1, one))))
        meet_rows.append(tuple(meets))
        join_rows.append(tuple(joins))
    center = CenterAlgebra(
        algebra=algebra,
        elements=tuple(elements),
        meet_table=tuple(meet_rows),
        join_table=tuple(join_rows),
        complement_table=tuple(compl),
        bottom=index[zero],
        top=index[one],
    )
    laws = center.validate_boolean_laws()
    if laws:
        raise BooleanStructureError("center tables break Boolean laws: " + "; ".join(laws[:3]))
    return center


# ---------------------------------------------------------------------------
# per-instance axiom checks


def check_center_axioms(algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP) -> list[CheckRecord]:
    """Instance checks tying the center to principal congruences.

    Per central e: θ1(e) = θ(1⃗,e⃗) and θ0(e) = θ(0⃗,e⃗).  Per pair (e,f):
    θ(1⃗,e∧f) = θ(1⃗,e)∨θ(1⃗,f), θ(1⃗,e∨f) = θ(1⃗,e)∩θ(1⃗,f), and the
    membership characterizations of meet and join.  Plus uniqueness of the
    pair-to-tuple assignment.
    """
    center = center_algebra(algebra, max_size)
    records = []
    zero, one = algebra.zero_tuple, algebra.one_tuple
    principal1 = {}
    principal0 = {}
    for i, e in enumerate(center.elements):
        principal1[i] = principal_pair_congruence(algebra, one, e.tuple)
        principal0[i] = principal_pair_congruence(algebra, zero, e.tuple)
        records.append(
            CheckRecord(
                f"theta1_is_principal[{e.tuple}]",
                e.theta1 == principal1[i],
                witness=f"theta1={e.theta1.format_blocks()} theta(1,e)={principal1[i].format_blocks()}",
            )
        )
        records.append(
            CheckRecord(
                f"theta0_is_principal[{e.tuple}]",
                e.theta0 == principal0[i],
                witness=f"theta0={e.theta0.format_blocks()} theta(0,e)={principal0[i].format_blocks()}",
            )
        )
    k = algebra.signature.tuple_length
    all_tuples = list(itertools.product(range(algebra.size), repeat=k))
    for i, e in enumerate(center.elements):
        for j, f in enumerate(center.elements):
            em, ej = center.meet(i, j), center.join(i, j)
            meet_tuple = center.elements[em].tuple
            join_tuple = center.elements[ej].tuple
            lhs = principal_pair_congruence(algebra, one, meet_tuple)
            rhs = congruence_join(principal1[i], principal1[j])
            records.append(
                CheckRecord(
                    f"principal_of_meet_is_join[{e.tuple},{f.tuple}]",
                    lhs == rhs,
                    witness=f"theta(1,e^f)={lhs.format_blocks()}",
                )
            )
            lhs2 = principal_pair_congruence(algebra, one, join_tuple)
            rhs2 = congruence_meet(principal1[i], principal1[j])
            records.append(
                CheckRecord(
                    f"principal_of_join_is_meet[{e.tuple},{f.tuple}]",
                    lhs2 == rhs2,
                    witness=f"theta(1,evf)={lhs2.format_blocks()}",
                )
            )
            # meet characterization: a = e∧f iff a≡0 (θ0(e)) and a≡f (θ1(e))
            ok_meet = True
            ok_join = True
            for cand in all_tuples:
                is_meet = cand == meet_tuple
                holds_meet = e.theta0.relates_tuples(zero, cand) and e.theta1.relates_tuples(
                    cand, f.tuple
                )
                if is_meet != holds_meet:
                    ok_meet = False
                is_join = cand == join_tuple
                holds_join = e.theta1.relates_tuples(one, cand) and e.theta0.relates_tuples(
                    cand, f.tuple
                )
                if is_join != holds_join:
                    ok_join = False
            records.append(
                CheckRecord(f"meet_characterization[{e.tuple},{f.tuple}]", ok_meet)
            )
            records.append(
                CheckRecord(f"join_characterization[{e.tuple},{f.tuple}]", ok_join)
            )
    by_pair = {}
    unique = True
    for e in center.elements:
        key = (e.theta0.partition.rep, e.theta1.partition.rep)
        if key in by_pair:
            unique = False
        by_pair[key] = e.tuple
    records.append(
        CheckRecord("pair_determines_unique_tuple", unique and len(by_pair) == center.size)
    )
    return records


# ---------------------------------------------------------------------------
# homomorphisms and the center


@dataclass(frozen=True)
class HomCenterReport:
    """Center preservation data for one homomorphism.

    ``sc``: every central tuple maps to a central tuple (stable center);
    ``csc``: additionally complementary pairs map to complementary pairs;
    ``boolean_hom``: the restriction preserves meet, join, complement, and
    bounds — only evaluated when ``sc`` holds.
    """

    sc: bool
    csc: bool
    boolean_hom: Optional[bool]
    sc_witness: Optional[tuple[int, ...]] = None
    csc_witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None


def hom_center_check(
    f: Homomorphism, max_size: int = DEFAULT_SIZE_CAP
) -> HomCenterReport:
    source_center = center_algebra(f.source, max_size)
    target_center = center_algebra(f.target, max_size)
    sc = True
    sc_witness = None
    for e in source_center.elements:
        if not target_center.is_central(f.image_tuple(e.tuple)):
            sc = False
            sc_witness = e.tuple
            break
    csc = sc
    csc_witness = None
    if sc:
        for i in range(source_center.size):
            ci = source_center.complement(i)
            img = target_center.index_of(f.image_tuple(source_center.elements[i].tuple))
            img_c = target_center.index_of(f.image_tuple(source_center.elements[ci].tuple))
            if not target_center.are_complementary(img, img_c):
                csc = False
                csc_witness = (
                    source_center.elements[i].tuple,
                    source_center.elements[ci].tuple,
                )
                break
    boolean_hom: Optional[bool] = None
    if sc:
        boolean_hom = True
        img = [
            target_center.index_of(f.image_tuple(e.tuple)) for e in source_center.elements
        ]
        if img[source_center.bottom] != target_center.bottom:
            boolean_hom = False
        if img[source_center.top] != target_center.top:
            boolean_hom = False
        for i in range(source_center.size):
            if target_center.complement(img[i]) != img[source_center.complement(i)]:
                boolean_hom = False
            for j in range(source_center.size):
                if target_center.meet(img[i], img[j]) != img[source_center.meet(i, j)]:
                    boolean_hom = False
                if target_center.join(img[i], img[j]) != img[source_center.join(i, j)]:
                    boolean_hom = False
    return HomCenterReport(sc, csc, boolean_hom, sc_witness, csc_witness)


def lift_central(
    algebra: FiniteAlgebra,
    theta: Congruence,
    z: Sequence[int],
    max_size: int = DEFAULT_SIZE_CAP,
) -> CentralElement:
    """Lift a central tuple of A/θ along the canonical map, for θ a factor congruence.

    The lift e satisfies e ≡ z (θ) and e ≡ 1⃗ (δ) for the factor complement δ
    of θ, and is verified central in A.
    """
    complements = [d for t, d in factor_pairs(algebra, max_size) if t == theta]
    if not complements:
        raise DPViolationError("congruence has no factor complement")
    delta_ = complements[0]
    quot = quotient(algebra, theta)
    z = tuple(z)
    z_class = tuple(quot.canonical(v) for v in z)
    if quot.algebra.size > 1:  # the unique class of a trivial quotient is central
        quotient_center = central_elements(quot.algebra, max_size)
        if not any(e.tuple == z_class for e in quotient_center):
            raise DPViolationError(f"class {z_class} is not central in the quotient")
    lifted = []
    for i in range(algebra.signature.tuple_length):
        sols = solve_system(algebra, [(theta, z[i]), (delta_, algebra.one_tuple[i])])
        if len(sols) != 1:
            raise DPViolationError(f"lift is not unique at component {i}")
        lifted.append(sols[0])
    e = tuple(lifted)
    center = central_elements(algebra, max_size)
    for ce in center:
        if ce.tuple == e:
            return ce
    raise DPViolationError(f"lifted tuple {e} is not central")


# ---------------------------------------------------------------------------
# codisjointness and product stability


def check_codisjoint(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """The pushout of the two product projections must be the trivial algebra.

    For quotient spans this pushout is A×B modulo the join of the projection
    kernels, so the check is that this join is the universal congruence.
    """
    prod = product(a, b)
    k1 = Congruence(prod.algebra, prod.left.kernel())
    k2 = Congruence(prod.algebra, prod.right.kernel())
    joined = congruence_join(k1, k2)
    return quotient(prod.algebra, joined).algebra.size == 1


@dataclass(frozen=True)
class ProductStabilityReport:
    holds: bool
    part_sizes: tuple[int, int]
    iso_found: bool


def check_product_stability(
    f: Homomorphism,
    e: CentralElement,
    max_size: int = DEFAULT_SIZE_CAP,
    iso_cap: Optional[int] = None,
) -> ProductStabilityReport:
    """Push the decomposition A ≅ A/θ(1,g) × A/θ(1,e) along f and test that
    B is still the product of the two pushed quotients."""
    from .algebra import pushout_of_quotients

    center = center_algebra(f.source, max_size)
    i = center.index_of(e.tuple)
    g = center.elements[center.complement(i)]
    one = f.source.one_tuple
    p1 = pushout_of_quotients(f, list(zip(one, g.tuple)))
    p2 = pushout_of_quotients(f, list(zip(one, e.tuple)))
    candidate = product(p1.algebra, p2.algebra)
    iso = find_isomorphism(f.target, candidate.algebra, max_size=iso_cap)
    return ProductStabilityReport(
        holds=iso is not None,
        part_sizes=(p1.algebra.size, p2.algebra.size),
        iso_found=iso is not None,
    )


def are_complementary_centrals(
    algebra: FiniteAlgebra,
    e: Sequence[int],
    f: Sequence[int],
    max_size: int = DEFAULT_SIZE_CAP,
) -> bool:
    """Ground-truth complementarity: both tuples central with swapped factor pairs."""
    try:
        center = center_algebra(algebra, max_size)
    except DegenerateConstantsError:
        return False
    e, f = tuple(e), tuple(f)
    if not (center.is_central(e) and center.is_central(f)):
        return False
    return center.are_complementary(center.index_of(e), center.index_of(f))
