"""Sheaf-style decomposition of a finite algebra over its Boolean center.

The section over a central tuple e⃗ is the quotient A/θ(1⃗,e⃗); restriction
along f⃗ ≤ e⃗ is the induced quotient map.  With a finite Boolean base the
Stone space is discrete, so ultrafilters are atom upsets and stalks are the
quotients at the atoms; the decomposition into directly indecomposable
factors reads off the atom row.

The second half of the module is finite sheaf machinery over an arbitrary
bounded distributive lattice: set-valued sheaves, binary coproducts, the
partition object, and the connectedness conditions for algebra-valued
sheaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Quotient,
    pair_index,
    product,
    quotient,
    structurally_equal,
)
from .center import CenterAlgebra, center_algebra, central_elements
from .congruence import (
    Congruence,
    DEFAULT_SIZE_CAP,
    congruence_join,
    principal_pair_congruence,
)
from .errors import (
    DegenerateConstantsError,
    LatticeError,
    PrincipalityError,
    SheafError,
    SignatureMismatchError,
)
from .report import CheckRecord


# ---------------------------------------------------------------------------
# the sheaf of an algebra over its center


@dataclass(frozen=True, eq=False)
class PierceSheaf:
    center: CenterAlgebra
    sections: dict[tuple[int, ...], Quotient]
    restrictions: dict[tuple[tuple[int, ...], tuple[int, ...]], Homomorphism]

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.center.algebra

    def section(self, e: Sequence[int]) -> FiniteAlgebra:
        return self.sections[tuple(e)].algebra

    def canonical(self, e: Sequence[int]) -> Homomorphism:
        return self.sections[tuple(e)].canonical

    def restriction(self, above: Sequence[int], below: Sequence[int]) -> Homomorphism:
        return self.restrictions[(tuple(above), tuple(below))]


def build_pierce(algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP) -> PierceSheaf:
    """Sections A/θ(1⃗,e⃗) with induced restrictions, functoriality verified.

    Requires every 1-side factor congruence to be the principal congruence
    θ(1⃗,e⃗); without that the induced restriction maps are unavailable.
    """
    center = center_algebra(algebra, max_size)
    one = algebra.one_tuple
    principal = {}
    for e in center.elements:
        p = principal_pair_congruence(algebra, one, e.tuple)
        if p != e.theta1:
            raise PrincipalityError(
                f"factor congruence at {e.tuple} is not the principal congruence "
                f"theta(1,e); the sheaf construction is unavailable"
            )
        principal[e.tuple] = p
    sections = {e.tuple: quotient(algebra, principal[e.tuple]) for e in center.elements}
    restrictions = {}
    for i, e in enumerate(center.elements):
        for j, f in enumerate(center.elements):
            if not center.leq(j, i):
                continue
            upper, lower = sections[e.tuple], sections[f.tuple]
            if not principal[e.tuple].partition.refines(lower.partition):
                raise SheafError(
                    f"restriction {e.tuple} -> {f.tuple} is not well-defined"
                )
            mapping = [0] * upper.algebra.size
            for x in range(algebra.size):
                mapping[upper.canonical(x)] = lower.canonical(x)
            restrictions[(e.tuple, f.tuple)] = Homomorphism(
                upper.algebra, lower.algebra, tuple(mapping)
            )
    sheaf = PierceSheaf(center, sections, restrictions)
    _validate_functoriality(sheaf)
    top = center.elements[center.top].tuple
    if not sheaf.sections[top].canonical.is_bijective:
        raise SheafError("section at the top is not a copy of the algebra")
    return sheaf


def _validate_functoriality(sheaf: PierceSheaf) -> None:
    center = sheaf.center
    for i, e in enumerate(center.elements):
        ident = sheaf.restrictions[(e.tuple, e.tuple)]
        if ident.mapping != tuple(range(ident.source.size)):
            raise SheafError("restriction along equality is not the identity")
        for j, f in enumerate(center.elements):
            if not center.leq(j, i):
                continue
            for l, g in enumerate(center.elements):
                if not center.leq(l, j):
                    continue
                left = sheaf.restrictions[(f.tuple, g.tuple)].compose(
                    sheaf.restrictions[(e.tuple, f.tuple)]
                )
                if left.mapping != sheaf.restrictions[(e.tuple, g.tuple)].mapping:
                    raise SheafError("restrictions do not compose functorially")


def check_sheaf_condition(
    sheaf: PierceSheaf,
    e: Sequence[int],
    f: Sequence[int],
    d: Optional[Sequence[int]] = None,
) -> bool:
    """Unique amalgamation over the binary cover {e,f} of d = e∨f.

    Every pair of sections over e and f agreeing on e∧f must glue to exactly
    one section over d.
    """
    center = sheaf.center
    i, j = center.index_of(e), center.index_of(f)
    join_idx = center.join(i, j)
    if d is None:
        d_idx = join_idx
    else:
        d_idx = center.index_of(d)
        if d_idx != join_idx:
            raise SheafError("the two elements do not cover the claimed join")
    meet_idx = center.meet(i, j)
    et, ft = center.elements[i].tuple, center.elements[j].tuple
    dt, mt = center.elements[d_idx].tuple, center.elements[meet_idx].tuple
    alg_e, alg_f, alg_d = sheaf.section(et), sheaf.section(ft), sheaf.section(dt)
    to_m_e = sheaf.restriction(et, mt)
    to_m_f = sheaf.restriction(ft, mt)
    to_e = sheaf.restriction(dt, et)
    to_f = sheaf.restriction(dt, ft)
    for x in range(alg_e.size):
        for y in range(alg_f.size):
            if to_m_e(x) != to_m_f(y):
                continue
            amalgams = [
                z for z in range(alg_d.size) if to_e(z) == x and to_f(z) == y
            ]
            if len(amalgams) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# ultrafilters, stalks, decomposition


@dataclass(frozen=True)
class Ultrafilter:
    """Upward closure of an atom of the finite Boolean center."""

    atom: tuple[int, ...]
    members: frozenset[tuple[int, ...]]


def ultrafilters(center: CenterAlgebra) -> list[Ultrafilter]:
    out = []
    for a in center.atoms():
        members = frozenset(
            center.elements[i].tuple for i in range(center.size) if center.leq(a, i)
        )
        out.append(Ultrafilter(center.elements[a].tuple, members))
    return sorted(out, key=lambda u: u.atom)


def validate_ultrafilter(center: CenterAlgebra, u: Ultrafilter) -> None:
    idx = {center.elements[i].tuple: i for i in range(center.size)}
    if u.atom not in idx or idx[u.atom] not in center.atoms():
        raise SheafError("ultrafilter is not generated by an atom")
    member_idx = {idx[m] for m in u.members}
    bottom_t = center.elements[center.bottom].tuple
    if bottom_t in u.members:
        raise SheafError("ultrafilter is not proper")
    for i in member_idx:
        for j in range(center.size):
            if center.leq(i, j) and j not in member_idx:
                raise SheafError("ultrafilter is not upward closed")
        for j in member_idx:
            if center.meet(i, j) not in member_idx:
                raise SheafError("ultrafilter is not closed under meets")
    for i in range(center.size):
        if (i in member_idx) == (center.complement(i) in member_idx):
            raise SheafError("ultrafilter misses the complement dichotomy")


@dataclass(frozen=True, eq=False)
class Stalk:
    algebra: FiniteAlgebra
    canonical: Homomorphism
    theta: Congruence


def stalk(algebra: FiniteAlgebra, u: Ultrafilter, max_size: int = DEFAULT_SIZE_CAP) -> Stalk:
    """Quotient by θ(U) = ⋁ θ(1⃗,e⃗) over e⃗ ∈ U.

    Cross-checked against the finite collapse θ(U) = θ(1⃗, atom), and each
    section-to-stalk square is verified to commute with the canonical maps.
    """
    center = center_algebra(algebra, max_size)
    validate_ultrafilter(center, u)
    one = algebra.one_tuple
    theta_u = None
    section_thetas = {}
    for member in sorted(u.members):
        t = principal_pair_congruence(algebra, one, member)
        section_thetas[member] = t
        theta_u = t if theta_u is None else congruence_join(theta_u, t)
    via_atom = principal_pair_congruence(algebra, one, u.atom)
    if theta_u != via_atom:
        raise SheafError("join over the ultrafilter disagrees with the atom congruence")
    quot = quotient(algebra, theta_u)
    for member, t in section_thetas.items():
        sec = quotient(algebra, t)
        mapping = [0] * sec.algebra.size
        for x in range(algebra.size):
            mapping[sec.canonical(x)] = quot.canonical(x)
        rho = Homomorphism(sec.algebra, quot.algebra, tuple(mapping))
        for x in range(algebra.size):
            if rho(sec.canonical(x)) != quot.canonical(x):
                raise SheafError("section-to-stalk square does not commute")
    return Stalk(quot.algebra, quot.canonical, theta_u)


def is_connected(algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP) -> bool:
    """Directly indecomposable: distinct constants and only the two trivial
    central tuples."""
    if algebra.zero_tuple == algebra.one_tuple:
        return False
    tuples = {e.tuple for e in central_elements(algebra, max_size)}
    return tuples == {algebra.zero_tuple, algebra.one_tuple}


@dataclass(frozen=True, eq=False)
class Decomposition:
    sheaf: PierceSheaf
    atoms: tuple[tuple[int, ...], ...]
    stalks: tuple[FiniteAlgebra, ...]
    product_algebra: FiniteAlgebra
    canonical: Homomorphism
    is_isomorphism: bool
    subdirect: bool
    stalks_connected: tuple[bool, ...]
    diagnostics: tuple[str, ...]


def decompose(algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP) -> Decomposition:
    """Split the algebra into its stalks over the atoms of the center.

    The canonical map into the product of the stalks is checked bijective
    (finite Boolean base: global sections = the product over the atoms) and
    surjective onto every factor.  A stalk that fails connectedness is
    reported as a diagnostic, not an error: complement preservation is a
    variety-level assumption no single instance can certify.
    """
    sheaf = build_pierce(algebra, max_size)
    center = sheaf.center
    ufs = ultrafilters(center)
    atoms = tuple(u.atom for u in ufs)
    stalks = tuple(stalk(algebra, u, max_size) for u in ufs)
    prod_alg = stalks[0].algebra
    combined = list(stalks[0].canonical.mapping)
    for s in stalks[1:]:
        pr = product(prod_alg, s.algebra)
        combined = [
            pair_index(combined[x], s.canonical(x), s.algebra.size)
            for x in range(algebra.size)
        ]
        prod_alg = pr.algebra
    canonical = Homomorphism(algebra, prod_alg, tuple(combined))
    bijective = canonical.is_bijective
    subdirect = all(
        set(s.canonical.mapping) == set(range(s.algebra.size)) for s in stalks
    )
    connected_flags = tuple(is_connected(s.algebra, max_size) for s in stalks)
    diagnostics = tuple(
        f"complement-preservation instance failure: stalk over atom {atoms[i]} "
        f"is not directly indecomposable"
        for i, ok in enumerate(connected_flags)
        if not ok
    )
    return Decomposition(
        sheaf=sheaf,
        atoms=atoms,
        stalks=tuple(s.algebra for s in stalks),
        product_algebra=prod_alg,
        canonical=canonical,
        is_isomorphism=bijective,
        subdirect=bijective and subdirect,
        stalks_connected=connected_flags,
        diagnostics=diagnostics,
    )


def global_sections_recover(algebra: FiniteAlgebra, sheaf: PierceSheaf) -> bool:
    """The section at the top is a bijective copy of the algebra."""
    top = sheaf.center.elements[sheaf.center.top].tuple
    return sheaf.sections[top].canonical.is_bijective


# ---------------------------------------------------------------------------
# finite lattice sites and set-valued sheaves


@dataclass(frozen=True, eq=False)
class FiniteLatticeSite:
    """A finite bounded distributive lattice given by meet and join tables."""

    size: int
    meet_table: tuple[int, ...]
    join_table: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n = self.size
        if len(self.meet_table) != n * n or len(self.join_table) != n * n:
            raise LatticeError("meet/join tables must have n^2 entries")
        for v in self.meet_table + self.join_table:
            if not (0 <= v < n):
                raise LatticeError("table entry outside the lattice")
        m, j = self.meet, self.join
        for a in range(n):
            if m(a, a) != a or j(a, a) != a:
                raise LatticeError("idempotence fails")
            for b in range(n):
                if m(a, b) != m(b, a) or j(a, b) != j(b, a):
                    raise LatticeError("commutativity fails")
                if m(a, j(a, b)) != a or j(a, m(a, b)) != a:
                    raise LatticeError("absorption fails")
                for c in range(n):
                    if m(a, m(b, c)) != m(m(a, b), c) or j(a, j(b, c)) != j(j(a, b), c):
                        raise LatticeError("associativity fails")
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)):
                        raise LatticeError("distributivity fails")
        bottoms = [a for a in range(n) if all(m(a, b) == a for b in range(n))]
        tops = [a for a in range(n) if all(j(a, b) == a for b in range(n))]
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must be bounded")
        object.__setattr__(self, "_bottom", bottoms[0])
        object.__setattr__(self, "_top", tops[0])

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a * self.size + b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a * self.size + b]

    def leq(self, a: int, b: int) -> bool:
        return self.meet(a, b) == a

    @property
    def bottom(self) -> int:
        return self._bottom  # type: ignore[attr-defined]

    @property
    def top(self) -> int:
        return self._top  # type: ignore[attr-defined]

    def down_set(self, d: int) -> list[int]:
        return [a for a in range(self.size) if self.leq(a, d)]

    def complemented_below(self, d: int) -> list[int]:
        """Elements of ↓d with a complement relative to the interval [⊥, d].

        In a distributive lattice these are exactly the central elements of
        the bounded lattice ↓d.
        """
        out = []
        for a in self.down_set(d):
            if any(
                self.meet(a, b) == self.bottom and self.join(a, b) == d
                for b in self.down_set(d)
            ):
                out.append(a)
        return out

    @staticmethod
    def from_algebra(lattice: FiniteAlgebra, name: str = "") -> "FiniteLatticeSite":
        return FiniteLatticeSite(
            lattice.size,
            lattice.tables["meet"],
            lattice.tables["join"],
            name=name or lattice.name,
        )

    @staticmethod
    def from_center(center: CenterAlgebra, name: str = "") -> "FiniteLatticeSite":
        n = center.size
        meet = tuple(center.meet(i, j) for i in range(n) for j in range(n))
        join = tuple(center.join(i, j) for i in range(n) for j in range(n))
        return FiniteLatticeSite(n, meet, join, name=name)


@dataclass(frozen=True, eq=False)
class SetSheaf:
    """Finite sections per lattice element with restriction maps for c ≤ d."""

    site: FiniteLatticeSite
    sections: tuple[tuple, ...]
    restrictions: dict[tuple[int, int], dict]

    def section(self, d: int) -> tuple:
        return self.sections[d]

    def restrict(self, d: int, c: int, x):
        return self.restrictions[(d, c)][x]

    def validate_presheaf(self) -> None:
        site = self.site
        for d in range(site.size):
            for c in range(site.size):
                if site.leq(c, d):
                    if (d, c) not in self.restrictions:
                        raise SheafError(f"missing restriction {d} -> {c}")
                    rmap = self.restrictions[(d, c)]
                    for x in self.sections[d]:
                        if x not in rmap or rmap[x] not in self.sections[c]:
                            raise SheafError(f"restriction {d} -> {c} is not total")
            ident = self.restrictions[(d, d)]
            for x in self.sections[d]:
                if ident[x] != x:
                    raise SheafError("restriction along equality is not the identity")
        for d in range(site.size):
            for c in range(site.size):
                if not site.leq(c, d):
                    continue
                for b in range(site.size):
                    if not site.leq(b, c):
                        continue
                    for x in self.sections[d]:
                        if self.restrict(c, b, self.restrict(d, c, x)) != self.restrict(d, b, x):
                            raise SheafError("restrictions do not compose functorially")

    def gluing_failure(self) -> Optional[tuple[int, int]]:
        """First binary cover (a,b) without unique amalgamation, else None."""
        site = self.site
        for a in range(site.size):
            for b in range(site.size):
                d = site.join(a, b)
                m = site.meet(a, b)
                for x in self.sections[a]:
                    for y in self.sections[b]:
                        if self.restrict(a, m, x) != self.restrict(b, m, y):
                            continue
                        glue = [
                            z
                            for z in self.sections[d]
                            if self.restrict(d, a, z) == x and self.restrict(d, b, z) == y
                        ]
                        if len(glue) != 1:
                            return (a, b)
        return None

    def is_sheaf(self) -> bool:
        self.validate_presheaf()
        return self.gluing_failure() is None


def terminal_sheaf(site: FiniteLatticeSite) -> SetSheaf:
    sections = tuple(("*",) for _ in range(site.size))
    restrictions = {
        (d, c): {"*": "*"}
        for d in range(site.size)
        for c in range(site.size)
        if site.leq(c, d)
    }
    return SetSheaf(site, sections, restrictions)


def sheaf_coproduct(site: FiniteLatticeSite, x: SetSheaf, y: SetSheaf) -> SetSheaf:
    """Binary coproduct: sections over d are (a, b, s, t) with a∨b = d,
    a∧b = ⊥, s over a and t over b; restriction meets both tags down."""
    for s in (x, y):
        if s.site is not site and s.site.meet_table != site.meet_table:
            raise SheafError("sheaves live on a different site")
        if not s.is_sheaf():
            raise SheafError("coproduct inputs must be sheaves")
    sections = []
    for d in range(site.size):
        rows = []
        for a in range(site.size):
            for b in range(site.size):
                if site.join(a, b) != d or site.meet(a, b) != site.bottom:
                    continue
                for s in x.section(a):
                    for t in y.section(b):
                        rows.append((a, b, s, t))
        sections.append(tuple(rows))
    restrictions = {}
    for d in range(site.size):
        for c in range(site.size):
            if not site.leq(c, d):
                continue
            rmap = {}
            for (a, b, s, t) in sections[d]:
                ac, bc = site.meet(a, c), site.meet(b, c)
                rmap[(a, b, s, t)] = (ac, bc, x.restrict(a, ac, s), y.restrict(b, bc, t))
            restrictions[(d, c)] = rmap
    out = SetSheaf(site, tuple(sections), restrictions)
    if not out.is_sheaf():
        raise SheafError("coproduct construction produced a non-sheaf")
    return out


def partition_object(site: FiniteLatticeSite) -> SetSheaf:
    """The coproduct 1+1: sections over d are the binary partitions of d."""
    one = terminal_sheaf(site)
    cop = sheaf_coproduct(site, one, one)
    sections = tuple(
        tuple((a, b) for (a, b, _, _) in cop.section(d)) for d in range(site.size)
    )
    restrictions = {
        key: {(a, b): (rmap[(a, b, "*", "*")][0], rmap[(a, b, "*", "*")][1]) for (a, b, _, _) in cop.section(key[0])}
        for key, rmap in cop.restrictions.items()
    }
    return SetSheaf(site, sections, restrictions)


# ---------------------------------------------------------------------------
# algebra-valued sheaves and the representation conditions


@dataclass(frozen=True, eq=False)
class AlgebraSheaf:
    """A lattice-indexed family of algebras with homomorphic restrictions."""

    site: FiniteLatticeSite
    sections: tuple[FiniteAlgebra, ...]
    restrictions: dict[tuple[int, int], Homomorphism]

    def __post_init__(self):
        sig = self.sections[0].signature
        for alg in self.sections:
            if alg.signature != sig:
                raise SignatureMismatchError("sections must share a signature")
        for d in range(self.site.size):
            for c in range(self.site.size):
                if self.site.leq(c, d) and (d, c) not in self.restrictions:
                    raise SheafError(f"missing restriction {d} -> {c}")
        for (d, c), hom in self.restrictions.items():
            if hom.source is not self.sections[d] or hom.target is not self.sections[c]:
                raise SheafError("restriction endpoints do not match the sections")
        for d in range(self.site.size):
            ident = self.restrictions[(d, d)]
            if ident.mapping != tuple(range(self.sections[d].size)):
                raise SheafError("restriction along equality is not the identity")
            for c in range(self.site.size):
                if not self.site.leq(c, d):
                    continue
                for b in range(self.site.size):
                    if not self.site.leq(b, c):
                        continue
                    left = self.restrictions[(c, b)].compose(self.restrictions[(d, c)])
                    if left.mapping != self.restrictions[(d, b)].mapping:
                        raise SheafError("restrictions do not compose functorially")


@dataclass(frozen=True)
class RepresentationCheck:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_representation(
    sheaf: AlgebraSheaf, max_size: int = DEFAULT_SIZE_CAP
) -> RepresentationCheck:
    """Connectedness conditions for an algebra-valued sheaf on a lattice site.

    (1) only the bottom section may be trivial; (2) for each d the central
    tuples of the section match the complemented elements of ↓d bijectively
    (matching a central tuple to the complemented element whose restriction
    kernel equals its 1-side factor congruence), naturally in d.
    """
    site = sheaf.site
    failures: list[str] = []
    for d in range(site.size):
        if sheaf.sections[d].size == 1 and d != site.bottom:
            failures.append(f"trivial section above bottom at {d}")
    if failures:
        return RepresentationCheck(False, tuple(failures))

    alphas: dict[int, dict[tuple[int, ...], int]] = {}
    for d in range(site.size):
        section = sheaf.sections[d]
        complemented = site.complemented_below(d)
        if section.size == 1:
            alphas[d] = {(0,) * section.signature.tuple_length: site.bottom}
            if complemented != [site.bottom]:
                failures.append(f"trivial section at {d} but interval is not trivial")
            continue
        try:
            centrals = central_elements(section, max_size)
        except DegenerateConstantsError:
            failures.append(f"section at {d} has degenerate constants")
            continue
        alpha: dict[tuple[int, ...], int] = {}
        used = set()
        for e in centrals:
            matches = [
                a
                for a in complemented
                if sheaf.restrictions[(d, a)].kernel() == e.theta1.partition
            ]
            if len(matches) != 1:
                failures.append(
                    f"central {e.tuple} at {d} matches {len(matches)} complemented elements"
                )
                continue
            alpha[e.tuple] = matches[0]
            used.add(matches[0])
        if len(alpha) != len(centrals) or used != set(complemented):
            failures.append(
                f"center of section {d} does not biject with complemented elements of its interval"
            )
        alphas[d] = alpha
    if failures:
        return RepresentationCheck(False, tuple(failures))

    for d in range(site.size):
        for c in range(site.size):
            if not site.leq(c, d) or c == d:
                continue
            res = sheaf.restrictions[(d, c)]
            for e_tuple, a in alphas[d].items():
                image = res.image_tuple(e_tuple)
                if image not in alphas[c]:
                    failures.append(
                        f"restriction {d}->{c} sends central {e_tuple} outside the center"
                    )
                    continue
                if alphas[c][image] != site.meet(a, c):
                    failures.append(
                        f"center square {d}->{c} does not commute at {e_tuple}"
                    )
    return RepresentationCheck(not failures, tuple(failures))


def pierce_representation(sheaf: PierceSheaf) -> AlgebraSheaf:
    """Repackage a center-based sheaf as an algebra-valued sheaf on its site."""
    center = sheaf.center
    site = FiniteLatticeSite.from_center(center, name="Z(A)")
    sections = tuple(sheaf.section(e.tuple) for e in center.elements)
    restrictions = {}
    for i, e in enumerate(center.elements):
        for j, f in enumerate(center.elements):
            if site.leq(j, i):
                restrictions[(i, j)] = sheaf.restriction(e.tuple, f.tuple)
    return AlgebraSheaf(site, sections, restrictions)


def constant_representation(site: FiniteLatticeSite, algebra: FiniteAlgebra) -> AlgebraSheaf:
    """The constant family at an algebra, with a trivial bottom section.

    Useful as a representation candidate: it satisfies the triviality
    condition by construction but matches the base lattice only when the
    algebra's center has exactly the right shape.
    """
    bottom_quot = quotient(algebra, Congruence(algebra, _universal_partition(algebra)))
    sections = []
    for d in range(site.size):
        sections.append(bottom_quot.algebra if d == site.bottom else algebra)
    restrictions = {}
    for d in range(site.size):
        for c in range(site.size):
            if not site.leq(c, d):
                continue
            if c == site.bottom and d != site.bottom:
                restrictions[(d, c)] = Homomorphism(
                    algebra, bottom_quot.algebra, bottom_quot.canonical.mapping
                )
            elif d == c:
                restrictions[(d, c)] = Homomorphism.identity(sections[d])
            else:
                restrictions[(d, c)] = Homomorphism.identity(algebra)
    return AlgebraSheaf(site, tuple(sections), restrictions)


def _universal_partition(algebra: FiniteAlgebra):
    from .partition import Partition

    return Partition.universal(algebra.size)
