"""Classical mechanics instantiation: partitions of a finite outcome space.

Observables are normalized to the partition of the outcome space they
generate.  A closed family of partitions becomes a context poset whose
informativeness order is reverse refinement (finer = more informative);
cells of a partition are the atoms of its local algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import DomainError, StructureError
from .poset import ContextPoset, LocalAlgebra
from .sections import BOTTOM, ElementaryProposition, Frame

Cell = frozenset
Partition = frozenset  # of Cells


@dataclass(frozen=True)
class OutcomeSpace:
    points: frozenset

    def __post_init__(self):
        if not self.points:
            raise DomainError("outcome space must be non-empty")


@dataclass(frozen=True)
class ClassicalObservable:
    """A named map from outcome-space points to outcome values."""

    name: str
    value_map: tuple[tuple[str, Hashable], ...]

    @staticmethod
    def from_dict(name: str, values: Mapping[str, Hashable]) -> "ClassicalObservable":
        return ClassicalObservable(name, tuple(sorted(values.items())))

    def values(self) -> dict[str, Hashable]:
        return dict(self.value_map)

    def range(self) -> set:
        return set(v for _, v in self.value_map)


def partition_of_observable(obs: ClassicalObservable, omega: OutcomeSpace) -> Partition:
    """Partition into the non-empty fibers of the observable's value map."""
    vm = obs.values()
    if set(vm) != set(omega.points):
        raise DomainError(f"observable {obs.name!r} is not total on the outcome space")
    fibers: dict = {}
    for point, value in vm.items():
        fibers.setdefault(value, set()).add(point)
    return frozenset(frozenset(cell) for cell in fibers.values())


def refines(p1: Partition, p2: Partition) -> bool:
    """True iff every cell of p1 lies inside a cell of p2 (p1 finer)."""
    return all(any(c1 <= c2 for c2 in p2) for c1 in p1)


def partition_meet(p1: Partition, p2: Partition) -> Partition:
    """Common refinement: non-empty pairwise cell intersections."""
    return frozenset(
        c1 & c2 for c1 in p1 for c2 in p2 if c1 & c2
    )


def partition_join(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening (connected components of overlapping cells)."""
    cells = list(p1 | p2)
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if cells[i] & cells[j]:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i, cell in enumerate(cells):
        groups.setdefault(find(i), set()).update(cell)
    return frozenset(frozenset(g) for g in groups.values())


def partition_join_in(family: Iterable[Partition], p1: Partition, p2: Partition) -> Partition:
    """Meet of all common upper bounds (coarsenings) within the family."""
    uppers = [p for p in family if refines(p1, p) and refines(p2, p)]
    if not uppers:
        raise StructureError("family contains no common coarsening")
    out = uppers[0]
    for p in uppers[1:]:
        out = partition_meet(out, p)
    return out


def close_partition_family(
    partitions: Iterable[Partition], omega: OutcomeSpace
) -> frozenset:
    """Smallest family containing the inputs and {Omega}, closed under
    pairwise meet and finest-common-coarsening join."""
    family = set(partitions)
    family.add(frozenset({frozenset(omega.points)}))
    changed = True
    while changed:
        changed = False
        for p1 in list(family):
            for p2 in list(family):
                for q in (partition_meet(p1, p2), partition_join(p1, p2)):
                    if q not in family:
                        family.add(q)
                        changed = True
    return frozenset(family)


# -- context poset construction ------------------------------------------


def cell_id(cell: Cell) -> str:
    return "{" + ",".join(sorted(str(x) for x in cell)) + "}"


def partition_id(p: Partition) -> str:
    return "/".join(sorted(cell_id(c) for c in p))


def build_classical_frame(family: Iterable[Partition]) -> tuple[ContextPoset, dict]:
    """Context poset of a closed partition family.

    Returns the poset and a mapping context id -> partition.  The order is
    reverse refinement: a finer partition is the more informative context.
    """
    parts = {partition_id(p): p for p in family}
    # closure check
    for p1 in parts.values():
        for p2 in parts.values():
            if partition_id(partition_meet(p1, p2)) not in parts:
                raise StructureError("family not closed under meets")
            if partition_id(partition_join(p1, p2)) not in parts:
                raise StructureError("family not closed under joins")
    contexts = {
        cid: LocalAlgebra(tuple(sorted(cell_id(c) for c in p)))
        for cid, p in parts.items()
    }
    order = []
    embeddings = {}
    for c1, p1 in parts.items():
        for c2, p2 in parts.items():
            if c1 == c2 or not refines(p2, p1):
                continue
            # p2 finer: context c2 is more informative
            order.append((c1, c2))
            embeddings[(c1, c2)] = {
                cell_id(coarse): frozenset(
                    cell_id(fine) for fine in p2 if fine <= coarse
                )
                for coarse in p1
            }
    return ContextPoset(contexts, order, embeddings), parts


@dataclass
class ClassicalModel:
    """A finite outcome space with observables, its closed partition family,
    and the section frame built on top."""

    omega: OutcomeSpace
    observables: dict[str, ClassicalObservable]
    family: frozenset = field(init=False)
    poset: ContextPoset = field(init=False)
    frame: Frame = field(init=False)
    partitions: dict = field(init=False)

    def __post_init__(self):
        base = [
            partition_of_observable(obs, self.omega)
            for obs in self.observables.values()
        ]
        self.family = close_partition_family(base, self.omega)
        self.poset, self.partitions = build_classical_frame(self.family)
        self.frame = Frame(self.poset)

    def elementary(self, name: str, delta_values: Iterable) -> ElementaryProposition:
        """The proposition that a measurement of the named observable gave a
        value in delta_values."""
        if name not in self.observables:
            raise DomainError(f"unknown observable {name!r}")
        obs = self.observables[name]
        rng = obs.range()
        delta = set(delta_values)
        bad = delta - rng
        if bad:
            raise DomainError(
                f"values {sorted(map(str, bad))} not in the range of {name!r}"
            )
        if not delta:
            return BOTTOM
        preimage = {pt for pt, v in obs.value_map if v in delta}
        partition = partition_of_observable(obs, self.omega)
        ctx = partition_id(partition)
        value = frozenset(cell_id(c) for c in partition if c <= preimage)
        return ElementaryProposition(ctx, value)
