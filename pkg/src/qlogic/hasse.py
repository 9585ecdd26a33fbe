"""Hasse-diagram export of a section frame as Graphviz DOT text."""

from __future__ import annotations

import hashlib

from .sections import Frame, Section

LABEL_LIMIT = 60


def section_label(frame: Frame, s: Section) -> str:
    """Readable label: the join of the section's elementary pieces."""
    pieces = frame.decompose_to_elementary(s)
    if not pieces:
        return "BOT"
    if s == frame.top():
        return "TOP"
    text = " v ".join(
        f"({e.context}: {'|'.join(sorted(e.value))})" for e in pieces
    )
    if len(text) > LABEL_LIMIT:
        digest = hashlib.sha1(text.encode()).hexdigest()[:8]
        text = text[: LABEL_LIMIT - 9] + "~" + digest
    return text


def _sort_key(s: Section):
    return tuple((c, tuple(sorted(v))) for c, v in s.items)


def hasse_edges(frame: Frame, sections: list[Section]) -> list[tuple[int, int]]:
    """Transitive reduction of the section order (indices into sections)."""
    n = len(sections)
    below = [
        [j for j in range(n) if i != j and frame.leq(sections[i], sections[j])]
        for i in range(n)
    ]
    edges = []
    for i in range(n):
        for j in below[i]:
            if not any(j in below[k] for k in below[i] if k != j):
                edges.append((i, j))
    return edges


def export_dot(frame: Frame, name: str = "sections", limit: int | None = None) -> str:
    """Deterministic DOT digraph of the frame's Hasse diagram."""
    sections = sorted(frame.enumerate_sections(limit), key=_sort_key)
    edges = hasse_edges(frame, sections)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, s in enumerate(sections):
        label = section_label(frame, s).replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in sorted(edges):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
