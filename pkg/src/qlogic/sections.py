"""Heyting algebra of monotone sections over a context poset.

A section assigns to every context an element of its local algebra,
monotonically along the informativeness order.  Meets and joins are
pointwise; the relative pseudo-complement is computed by the pointwise
up-set atom rule, with a brute-force enumeration kept as an oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, ResourceLimitError
from .poset import ContextPoset, Element

DEFAULT_ENUM_GUARD = 10**6
ENUM_GUARD_ENV = "QLOGIC_ENUM_GUARD"


@dataclass(frozen=True)
class Section:
    """Monotone assignment of local elements, one per context."""

    items: tuple[tuple[str, Element], ...]

    @staticmethod
    def from_dict(values: Mapping[str, Iterable[str]]) -> "Section":
        return Section(
            tuple(sorted((c, frozenset(v)) for c, v in values.items()))
        )

    def as_dict(self) -> dict[str, Element]:
        return dict(self.items)

    def value(self, c: str) -> Element:
        for ctx, v in self.items:
            if ctx == c:
                return v
        raise KeyError(c)

    def __repr__(self):
        parts = ", ".join(
            f"{c}:{{{','.join(sorted(v))}}}" for c, v in self.items if v
        )
        return f"Section({parts or 'BOT'})"


@dataclass(frozen=True)
class ElementaryProposition:
    """A single-context proposition: (context, non-bottom local element).

    The distinguished contradiction is represented with ``context=None``
    and an empty value; use :data:`BOTTOM`.
    """

    context: str | None
    value: Element

    @property
    def is_bottom(self) -> bool:
        return self.context is None

    def __post_init__(self):
        if self.context is None:
            if self.value:
                raise DomainError("the bottom proposition carries no value")
        elif not self.value:
            raise DomainError("empty values must use the distinguished Bottom")


BOTTOM = ElementaryProposition(None, frozenset())


def _enum_guard(limit: int | None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get(ENUM_GUARD_ENV)
    return int(env) if env else DEFAULT_ENUM_GUARD


class Frame:
    """Section frame (Heyting algebra) over a context poset."""

    def __init__(self, poset: ContextPoset):
        self.poset = poset
        self._ids = poset.context_ids

    # -- construction ---------------------------------------------------

    def section(self, values: Mapping[str, Iterable[str]]) -> Section:
        """Build and validate a section from a context -> element mapping."""
        d = {c: frozenset(values[c]) for c in self._ids}
        missing = set(self._ids) - set(values)
        if missing:
            raise DomainError(f"section misses contexts {sorted(missing)}")
        for c in self._ids:
            if not self.poset.algebra(c).contains(d[c]):
                raise DomainError(f"value at {c!r} is not in its local algebra")
        s = Section.from_dict(d)
        if not self.is_monotone(s):
            raise DomainError("section violates monotonicity")
        return s

    def is_monotone(self, s: Section) -> bool:
        d = s.as_dict()
        for c1 in self._ids:
            for c2 in self._ids:
                if c1 != c2 and self.poset.leq(c1, c2):
                    if not self.poset.embed(c1, c2, d[c1]) <= d[c2]:
                        return False
        return True

    def top(self) -> Section:
        return Section.from_dict(
            {c: self.poset.algebra(c).top for c in self._ids}
        )

    def bottom(self) -> Section:
        return Section.from_dict({c: frozenset() for c in self._ids})

    # -- elementary propositions -----------------------------------------

    def embed_elementary(self, e: ElementaryProposition) -> Section:
        if e.is_bottom:
            return self.bottom()
        alg = self.poset.algebra(e.context)
        if not alg.contains(e.value):
            raise DomainError(f"value not in local algebra of {e.context!r}")
        d = {}
        for c in self._ids:
            if self.poset.leq(e.context, c):
                d[c] = self.poset.embed(e.context, c, e.value)
            else:
                d[c] = frozenset()
        return Section.from_dict(d)

    def elementary_leq(self, e1: ElementaryProposition, e2: ElementaryProposition) -> bool:
        if e1.is_bottom:
            return True
        if e2.is_bottom:
            return False
        if not self.poset.leq(e2.context, e1.context):
            return False
        return self.poset.embed(e2.context, e1.context, e2.value) >= e1.value

    def elementary_meet(
        self, e1: ElementaryProposition, e2: ElementaryProposition
    ) -> ElementaryProposition:
        if e1.is_bottom or e2.is_bottom:
            return BOTTOM
        c = self.poset.try_join_contexts(e1.context, e2.context)
        if c is None:
            return BOTTOM
        v = self.poset.embed(e1.context, c, e1.value) & self.poset.embed(
            e2.context, c, e2.value
        )
        if not v:
            return BOTTOM
        return ElementaryProposition(c, v)

    def decompose_to_elementary(self, s: Section) -> list[ElementaryProposition]:
        """Bohrified pieces: the non-bottom local values of the section."""
        return [
            ElementaryProposition(c, v) for c, v in s.items if v
        ]

    # -- lattice operations ------------------------------------------------

    def meet(self, sections: Iterable[Section]) -> Section:
        ss = list(sections)
        if not ss:
            return self.top()
        d = ss[0].as_dict()
        for s in ss[1:]:
            for c, v in s.items:
                d[c] = d[c] & v
        return Section.from_dict(d)

    def join(self, sections: Iterable[Section]) -> Section:
        ss = list(sections)
        if not ss:
            return self.bottom()
        d = ss[0].as_dict()
        for s in ss[1:]:
            for c, v in s.items:
                d[c] = d[c] | v
        return Section.from_dict(d)

    def leq(self, s1: Section, s2: Section) -> bool:
        d2 = s2.as_dict()
        return all(v <= d2[c] for c, v in s1.items)

    def implies(self, s1: Section, s2: Section) -> Section:
        """Relative pseudo-complement via the pointwise up-set atom rule."""
        d1, d2 = s1.as_dict(), s2.as_dict()
        out = {}
        for c in self._ids:
            ups = self.poset.upset(c)
            good = []
            for a in self.poset.algebra(c).atoms:
                atom = frozenset({a})
                if all(
                    self.poset.embed(c, c2, atom) & d1[c2] <= d2[c2] for c2 in ups
                ):
                    good.append(a)
            out[c] = frozenset(good)
        return Section.from_dict(out)

    def neg(self, s: Section) -> Section:
        return self.implies(s, self.bottom())

    # -- quotients -------------------------------------------------------

    def evaluate_at(self, s: Section, c: str) -> Element:
        """Image of the section under the coarse quotient at context c."""
        self.poset.algebra(c)
        return s.value(c)

    def restrict_upset(self, c: str) -> "Frame":
        """The refined conditional logic: the frame over the up-set of c."""
        ups = self.poset.upset(c)
        contexts = {d: self.poset.algebra(d) for d in ups}
        order = [
            (a, b)
            for a in ups
            for b in ups
            if a != b and self.poset.leq(a, b)
        ]
        embeddings = {
            (a, b): {
                atom: self.poset.embed(a, b, frozenset({atom}))
                for atom in contexts[a].atoms
            }
            for a, b in order
        }
        return Frame(ContextPoset(contexts, order, embeddings))

    def restrict_section(self, s: Section, sub: "Frame") -> Section:
        keep = set(sub.poset.context_ids)
        return Section(tuple(item for item in s.items if item[0] in keep))

    # -- enumeration and oracles ------------------------------------------

    def enumeration_bound(self) -> int:
        bound = 1
        for c in self._ids:
            bound *= 1 << len(self.poset.algebra(c).atoms)
        return bound

    def enumerate_sections(self, limit: int | None = None) -> list[Section]:
        """All monotone sections, each exactly once (guarded)."""
        guard = _enum_guard(limit)
        if self.enumeration_bound() > guard:
            raise ResourceLimitError(
                f"enumeration bound {self.enumeration_bound()} exceeds guard {guard}"
            )
        # process contexts along a linear extension so monotonicity can be
        # checked against already-assigned predecessors only
        ids = sorted(self._ids, key=lambda c: (len(self.poset.downset(c)), c))
        below = {
            c: [d for d in ids if d != c and self.poset.leq(d, c)] for c in ids
        }
        out: list[Section] = []

        def extend(i: int, partial: dict[str, Element]):
            if i == len(ids):
                out.append(Section.from_dict(partial))
                return
            c = ids[i]
            for v in self.poset.algebra(c).elements():
                if all(
                    self.poset.embed(d, c, partial[d]) <= v for d in below[c]
                ):
                    partial[c] = v
                    extend(i + 1, partial)
                    del partial[c]

        extend(0, {})
        return out

    def brute_force_implies(
        self, s1: Section, s2: Section, limit: int | None = None
    ) -> Section:
        """Definitional oracle: join of every S with S.meet(s1) <= s2."""
        witnesses = [
            s
            for s in self.enumerate_sections(limit)
            if self.leq(self.meet([s, s1]), s2)
        ]
        return self.join(witnesses)

    def decidable_elements(self, limit: int | None = None) -> list[Section]:
        top = self.top()
        return [
            s
            for s in self.enumerate_sections(limit)
            if self.join([s, self.neg(s)]) == top
        ]

    def check_distributive(
        self, exhaustive: bool = True, sample: Iterable[tuple[Section, Section, Section]] = (),
        limit: int | None = None,
    ) -> list[str]:
        """Verify S1 /\\ (S2 \\/ S3) == (S1 /\\ S2) \\/ (S1 /\\ S3)."""
        if exhaustive:
            ss = self.enumerate_sections(limit)
            triples: Iterator = (
                (a, b, c) for a in ss for b in ss for c in ss
            )
        else:
            triples = iter(sample)
        issues = []
        for s1, s2, s3 in triples:
            lhs = self.meet([s1, self.join([s2, s3])])
            rhs = self.join([self.meet([s1, s2]), self.meet([s1, s3])])
            if lhs != rhs:
                issues.append(f"distributivity fails on {s1!r}, {s2!r}, {s3!r}")
        return issues
