"""Quantum instantiation: abelian contexts from finite Hermitian matrices.

An observable generates a context whose atoms are its spectral
projections.  A set of observables generates a context poset closed
under pairwise meets (intersection of algebras) and commuting joins
(products of atoms); the order is algebra inclusion, i.e. atom
refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, StructureError
from .poset import ContextPoset, LocalAlgebra
from .sections import BOTTOM, ElementaryProposition, Frame, Section

TAU_HERM = 1e-8
TAU_PROJ = 1e-8
TAU_EIG = 1e-6

TRIVIAL_ID = "1"
TRIVIAL_ATOM = "1"


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float = TAU_HERM) -> bool:
    return m.shape[0] == m.shape[1] and _maxabs(m - m.conj().T) <= tol


def is_projection(m: np.ndarray, tol: float = TAU_PROJ) -> bool:
    return is_hermitian(m, tol) and _maxabs(m @ m - m) <= tol


@dataclass(frozen=True)
class SpectralData:
    """Clustered eigenvalues with matching spectral projections."""

    eigenvalues: tuple[float, ...]
    projections: tuple[np.ndarray, ...]


def spectral_decompose(
    h: np.ndarray, tau_herm: float = TAU_HERM, tau_eig: float = TAU_EIG
) -> SpectralData:
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, tau_herm):
        raise DomainError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(h)
    scale = max(1.0, float(np.max(np.abs(w))))
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[clusters[-1][-1]] > tau_eig * scale:
            clusters.append([i])
        else:
            clusters[-1].append(i)
    eigenvalues = []
    projections = []
    for idx in clusters:
        cols = v[:, idx]
        eigenvalues.append(float(np.mean(w[idx])))
        projections.append(cols @ cols.conj().T)
    return SpectralData(tuple(eigenvalues), tuple(projections))


def spectral_projection(
    h: np.ndarray,
    delta: Iterable[float],
    tau_herm: float = TAU_HERM,
    tau_eig: float = TAU_EIG,
) -> np.ndarray:
    """Spectral projection onto the eigenvalue clusters matching delta."""
    sd = spectral_decompose(h, tau_herm, tau_eig)
    dim = sd.projections[0].shape[0]
    scale = max(1.0, max(abs(e) for e in sd.eigenvalues))
    out = np.zeros((dim, dim), dtype=complex)
    for x in delta:
        matches = [
            i
            for i, e in enumerate(sd.eigenvalues)
            if abs(e - float(x)) <= tau_eig * scale
        ]
        if not matches:
            raise DomainError(f"value {x} matches no eigenvalue cluster")
        out = out + sd.projections[matches[0]]
    return out


# -- contexts ---------------------------------------------------------------


def _atom_sort_key(p: np.ndarray) -> tuple:
    rank = int(round(float(np.real(np.trace(p)))))
    pos = np.arange(p.shape[0])
    moment = float(np.real(np.sum(np.diag(p) * pos)))
    flat = np.round(p, 6)
    return (rank, round(moment, 6), tuple(flat.real.ravel()), tuple(flat.imag.ravel()))


def same_atoms(
    atoms1: Sequence[np.ndarray], atoms2: Sequence[np.ndarray], tol: float = TAU_PROJ
) -> bool:
    """Greedy matching of two resolutions of identity within tolerance."""
    if len(atoms1) != len(atoms2):
        return False
    remaining = list(atoms2)
    for p in atoms1:
        for i, q in enumerate(remaining):
            if _maxabs(p - q) <= tol:
                del remaining[i]
                break
        else:
            return False
    return True


def validate_resolution(atoms: Sequence[np.ndarray], tol: float = TAU_PROJ) -> list[str]:
    issues = []
    dim = atoms[0].shape[0]
    total = np.zeros((dim, dim), dtype=complex)
    for i, p in enumerate(atoms):
        if not is_projection(p, tol):
            issues.append(f"atom {i} is not a projection")
        if _maxabs(p) <= tol:
            issues.append(f"atom {i} is zero")
        total = total + p
        for j in range(i + 1, len(atoms)):
            if _maxabs(p @ atoms[j]) > tol:
                issues.append(f"atoms {i},{j} are not orthogonal")
    if _maxabs(total - np.eye(dim)) > tol:
        issues.append("atoms do not sum to the identity")
    return issues


@dataclass(frozen=True)
class QuantumContext:
    """An abelian context: named atomic projections resolving the identity."""

    atom_names: tuple[str, ...]
    atoms: tuple[np.ndarray, ...]

    def atom(self, name: str) -> np.ndarray:
        return self.atoms[self.atom_names.index(name)]

    def projection_of(self, element: frozenset) -> np.ndarray:
        dim = self.atoms[0].shape[0]
        out = np.zeros((dim, dim), dtype=complex)
        for name in element:
            out = out + self.atom(name)
        return out


def generated_context(
    h: np.ndarray,
    name: str = "A",
    tau_herm: float = TAU_HERM,
    tau_eig: float = TAU_EIG,
) -> QuantumContext:
    """The context generated by one observable: its spectral projections,
    named after the clustered eigenvalues."""
    sd = spectral_decompose(h, tau_herm, tau_eig)
    if len(sd.projections) == 1:
        return QuantumContext((TRIVIAL_ATOM,), (np.eye(h.shape[0], dtype=complex),))
    names = tuple(f"{name}={e:g}" for e in sd.eigenvalues)
    return QuantumContext(names, sd.projections)


def _context_leq(c1: QuantumContext, c2: QuantumContext, tol: float = TAU_PROJ) -> bool:
    """True iff the algebra of c1 is contained in that of c2, i.e. every
    atom of c1 is a sum of atoms of c2."""
    for p in c1.atoms:
        below = [q for q in c2.atoms if _maxabs(p @ q - q) <= tol]
        if _maxabs(sum(below) - p) > tol:
            return False
    return True


def _meet_atoms(
    c1: QuantumContext, c2: QuantumContext, tol: float = TAU_PROJ
) -> list[np.ndarray]:
    """Atoms of the intersection algebra: minimal non-zero projections that
    are sums of atoms of both contexts (exhaustive over subsets)."""
    n = len(c1.atoms)
    dim = c1.atoms[0].shape[0]
    common: list[np.ndarray] = []
    for mask in range(1, 1 << n):
        p = np.zeros((dim, dim), dtype=complex)
        for i in range(n):
            if mask >> i & 1:
                p = p + c1.atoms[i]
        below = [q for q in c2.atoms if _maxabs(p @ q - q) <= tol]
        if _maxabs(sum(below) - p) <= tol:
            common.append(p)
    minimal = []
    for p in common:
        if any(
            _maxabs(q @ p - q) <= tol and _maxabs(p - q) > tol for q in common
        ):
            continue
        minimal.append(p)
    return minimal


def contexts_commute(
    c1: QuantumContext, c2: QuantumContext, tol: float = TAU_PROJ
) -> bool:
    return all(
        _maxabs(p @ q - q @ p) <= tol for p in c1.atoms for q in c2.atoms
    )


def _join_atoms(
    c1: QuantumContext, c2: QuantumContext, tol: float = TAU_PROJ
) -> list[tuple[str, np.ndarray]]:
    out = []
    for n1, p in zip(c1.atom_names, c1.atoms):
        for n2, q in zip(c2.atom_names, c2.atoms):
            prod = p @ q
            if _maxabs(prod) > tol:
                out.append((f"{n1}.{n2}", prod))
    return out


@dataclass
class QuantumModel:
    """Observables, their generated context poset, and the section frame."""

    observables: dict[str, np.ndarray]
    tau_herm: float = TAU_HERM
    tau_proj: float = TAU_PROJ
    tau_eig: float = TAU_EIG
    dim: int = field(init=False)
    contexts: dict[str, QuantumContext] = field(init=False)
    obs_context: dict[str, str] = field(init=False)
    spectra: dict[str, SpectralData] = field(init=False)
    poset: ContextPoset = field(init=False)
    frame: Frame = field(init=False)

    def __post_init__(self):
        mats = {k: np.asarray(v, dtype=complex) for k, v in self.observables.items()}
        dims = {m.shape for m in mats.values()}
        if len(dims) > 1:
            raise DomainError("observables have mismatched dimensions")
        if not mats:
            raise DomainError("at least one observable is required")
        self.dim = next(iter(mats.values())).shape[0]
        self.observables = mats
        self.spectra = {
            k: spectral_decompose(m, self.tau_herm, self.tau_eig)
            for k, m in mats.items()
        }
        self._build()

    # -- poset construction ------------------------------------------------

    def _find_equal(self, ctx: QuantumContext) -> str | None:
        for cid, existing in self.contexts.items():
            if same_atoms(ctx.atoms, existing.atoms, self.tau_proj):
                return cid
        return None

    def _add(self, cid: str, ctx: QuantumContext) -> str:
        found = self._find_equal(ctx)
        if found is not None:
            return found
        for issue in validate_resolution(ctx.atoms, self.tau_proj):
            raise StructureError(f"context {cid!r}: {issue}")
        self.contexts[cid] = ctx
        return cid

    def _build(self):
        self.contexts = {}
        self.obs_context = {}
        trivial = QuantumContext(
            (TRIVIAL_ATOM,), (np.eye(self.dim, dtype=complex),)
        )
        self._add(TRIVIAL_ID, trivial)
        for name in sorted(self.observables):
            ctx = generated_context(
                self.observables[name], name, self.tau_herm, self.tau_eig
            )
            self.obs_context[name] = self._add(name, ctx)
        # close under pairwise meets and commuting joins
        changed = True
        while changed:
            changed = False
            ids = sorted(self.contexts)
            for i, a in enumerate(ids):
                for b in ids[i + 1 :]:
                    ca, cb = self.contexts[a], self.contexts[b]
                    meet = _meet_atoms(ca, cb, self.tau_proj)
                    matched = sorted(meet, key=_atom_sort_key)
                    mctx = QuantumContext(
                        tuple(f"m{k}" for k in range(len(matched))), tuple(matched)
                    )
                    if self._find_equal(mctx) is None:
                        self._add(f"({a}^{b})", mctx)
                        changed = True
                    if contexts_commute(ca, cb, self.tau_proj):
                        joined = _join_atoms(ca, cb, self.tau_proj)
                        jctx = QuantumContext(
                            tuple(n for n, _ in joined),
                            tuple(m for _, m in joined),
                        )
                        if self._find_equal(jctx) is None:
                            self._add(f"{a}*{b}", jctx)
                            changed = True
        # order and embeddings by atom refinement
        contexts = {
            cid: LocalAlgebra(ctx.atom_names) for cid, ctx in self.contexts.items()
        }
        order = []
        embeddings = {}
        for a, ca in self.contexts.items():
            for b, cb in self.contexts.items():
                if a == b or not _context_leq(ca, cb, self.tau_proj):
                    continue
                order.append((a, b))
                embeddings[(a, b)] = {
                    n: frozenset(
                        m
                        for m, q in zip(cb.atom_names, cb.atoms)
                        if _maxabs(p @ q - q) <= self.tau_proj
                    )
                    for n, p in zip(ca.atom_names, ca.atoms)
                }
        self.poset = ContextPoset(contexts, order, embeddings)
        self.frame = Frame(self.poset)

    # -- propositions -------------------------------------------------------

    def elementary(self, name: str, delta: Iterable[float]) -> ElementaryProposition:
        """(generated context, atom subset) for 'measured name, result in delta'."""
        if name not in self.observables:
            raise DomainError(f"unknown observable {name!r}")
        sd = self.spectra[name]
        cid = self.obs_context[name]
        ctx = self.contexts[cid]
        delta = list(delta)
        if not delta:
            return BOTTOM
        scale = max(1.0, max(abs(e) for e in sd.eigenvalues))
        proj = np.zeros((self.dim, self.dim), dtype=complex)
        for x in delta:
            matches = [
                i
                for i, e in enumerate(sd.eigenvalues)
                if abs(e - float(x)) <= self.tau_eig * scale
            ]
            if not matches:
                raise DomainError(f"value {x} not in the spectrum of {name!r}")
            proj = proj + sd.projections[matches[0]]
        atoms = frozenset(
            n
            for n, q in zip(ctx.atom_names, ctx.atoms)
            if _maxabs(proj @ q - q) <= self.tau_proj
        )
        if _maxabs(ctx.projection_of(atoms) - proj) > self.tau_proj:
            raise StructureError(
                f"projection for {name!r} does not decompose into context atoms"
            )
        return ElementaryProposition(cid, atoms)

    def projection_of(self, cid: str, element: frozenset) -> np.ndarray:
        return self.contexts[cid].projection_of(element)


# -- classical/commutative bridge -------------------------------------------


@dataclass(frozen=True)
class BridgeReport:
    context_map: dict
    section_count_classical: int
    section_count_quantum: int
    isomorphic: bool
    detail: str


def classical_bridge(model, limit: int | None = None) -> tuple[QuantumModel, BridgeReport]:
    """Build the diagonal (commutative) quantum model of a classical model
    and check that the two section frames are order-isomorphic.

    Coordinates are indexed by the cells of the finest partition; every
    partition becomes a diagonal observable constant on its cells.
    """
    from .classical import cell_id, partition_id, partition_meet

    finest = None
    for p in model.family:
        finest = p if finest is None else partition_meet(finest, p)
    coords = sorted(cell_id(c) for c in finest)
    index = {c: i for i, c in enumerate(coords)}
    dim = len(coords)

    obs = {}
    names = {}
    for k, (cid, p) in enumerate(sorted(model.partitions.items())):
        diag = np.zeros(dim)
        for v, cell in enumerate(sorted(p, key=cell_id)):
            for fine in finest:
                if fine <= cell:
                    diag[index[cell_id(fine)]] = v
        name = f"D{k}"
        obs[name] = np.diag(diag).astype(complex)
        names[cid] = name

    qmodel = QuantumModel(obs)

    # canonical context map: classical partition -> generated diagonal context
    ctx_map = {cid: qmodel.obs_context[names[cid]] for cid in model.partitions}
    # atom map per context: a cell corresponds to the diagonal atom with the
    # same coordinate support
    atom_maps: dict[str, dict[str, str]] = {}
    for cid, p in model.partitions.items():
        qctx = qmodel.contexts[ctx_map[cid]]
        amap = {}
        for cell in p:
            support = {index[cell_id(f)] for f in finest if f <= cell}
            for n, q in zip(qctx.atom_names, qctx.atoms):
                qsupport = {
                    i for i in range(dim) if abs(q[i, i]) > 0.5
                }
                if qsupport == support:
                    amap[cell_id(cell)] = n
                    break
            else:
                return qmodel, BridgeReport(
                    ctx_map, -1, -1, False, f"no atom match for cell in {cid!r}"
                )
        atom_maps[cid] = amap

    if len(set(ctx_map.values())) != len(ctx_map) or set(ctx_map.values()) != set(
        qmodel.contexts
    ):
        return qmodel, BridgeReport(
            ctx_map, -1, -1, False, "context sets do not biject"
        )
    # order preserved both ways
    for a in ctx_map:
        for b in ctx_map:
            if model.poset.leq(a, b) != qmodel.poset.leq(ctx_map[a], ctx_map[b]):
                return qmodel, BridgeReport(
                    ctx_map, -1, -1, False, f"order differs at ({a!r}, {b!r})"
                )

    def map_section(s: Section) -> Section:
        return Section.from_dict(
            {
                ctx_map[c]: frozenset(atom_maps[c][a] for a in v)
                for c, v in s.items
            }
        )

    classical_sections = model.frame.enumerate_sections(limit)
    quantum_sections = qmodel.frame.enumerate_sections(limit)
    mapped = [map_section(s) for s in classical_sections]
    ok = (
        len(set(mapped)) == len(classical_sections)
        and set(mapped) == set(quantum_sections)
    )
    if ok:
        for s1, m1 in zip(classical_sections, mapped):
            for s2, m2 in zip(classical_sections, mapped):
                if model.frame.leq(s1, s2) != qmodel.frame.leq(m1, m2):
                    ok = False
                    break
            if not ok:
                break
    detail = "order isomorphism verified exhaustively" if ok else "section order mismatch"
    return qmodel, BridgeReport(
        ctx_map, len(classical_sections), len(quantum_sections), ok, detail
    )
