"""Finite line-incidence structures and the perp operator.

A structure is a finite set of lines carrying a reflexive, symmetric
incidence relation and nothing else.  Every further notion in this package
(sigma sets, derived points and planes, the axiom and theorem checkers) is
built from one primitive: ``perp(S)``, the set of lines incident to every
member of S.

Structures are immutable after construction.  All operations here are pure
functions of their inputs, so structures can be shared freely between
workers; results do not depend on evaluation order.  Line sets are exposed
as ``frozenset`` values; whenever iteration order matters (witness
selection, serialization) members are visited in ascending index order.

Internally each line carries a bitmask of its incident lines, which makes
the AND-folds behind ``perp`` cheap even for the brute-force checkers.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_MAX_LINES = 4096
MAX_LINES_ENV = "LINESPACE_MAX_LINES"


class LinespaceError(Exception):
    """Base class for every error this package raises deliberately."""


class StructureError(LinespaceError):
    """Bad structure data: malformed adjacency, unknown index, bad labels."""


class CapacityError(StructureError):
    """Line count exceeds the supported maximum."""


class PreconditionError(LinespaceError):
    """An operation was invoked outside its stated contract."""


def line_cap() -> int:
    """Maximum supported line count; LINESPACE_MAX_LINES overrides the default."""
    raw = os.environ.get(MAX_LINES_ENV)
    if raw is None:
        return DEFAULT_MAX_LINES
    try:
        cap = int(raw)
    except ValueError:
        raise CapacityError(f"{MAX_LINES_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise CapacityError(f"{MAX_LINES_ENV} must be positive, got {cap}")
    return cap


def lines_of_mask(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of_lines(lines: Iterable[int]) -> int:
    mask = 0
    for l in lines:
        mask |= 1 << l
    return mask


class IncidenceStructure:
    """A finite set of lines with a reflexive symmetric incidence relation.

    ``adjacency`` must be a square boolean matrix, symmetric with an
    all-true diagonal; both properties are enforced at construction and the
    matrix is frozen afterwards.  ``labels`` default to ``L0, L1, ...`` and
    must be unique, one per line.
    """

    __slots__ = ("name", "_adj", "_labels", "_index", "_masks", "_hash", "_cache")

    def __init__(self, adjacency, labels: Optional[Sequence[str]] = None, name: str = ""):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise StructureError(f"adjacency must be square, got shape {adj.shape}")
        n = adj.shape[0]
        cap = line_cap()
        if n > cap:
            raise CapacityError(f"structure has {n} lines, cap is {cap}")
        if not np.array_equal(adj, adj.T):
            i, j = map(int, np.argwhere(adj != adj.T)[0])
            raise StructureError(f"adjacency is not symmetric at ({i}, {j})")
        if n and not bool(adj.diagonal().all()):
            i = int(np.flatnonzero(~adj.diagonal())[0])
            raise StructureError(f"line {i} is marked non-incident to itself")
        if labels is None:
            labels = tuple(f"L{i}" for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise StructureError(f"{len(labels)} labels for {n} lines")
            if len(set(labels)) != n:
                raise StructureError("labels must be unique")
        adj.setflags(write=False)
        self.name = name
        self._adj = adj
        self._labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._masks: Optional[tuple[int, ...]] = None
        self._hash: Optional[int] = None
        self._cache: dict = {}

    @classmethod
    def from_skew_pairs(
        cls,
        line_count: int,
        skew_pairs: Iterable[tuple[int, int]] = (),
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> "IncidenceStructure":
        """Build a structure in which every pair NOT listed is incident.

        Listing a pair twice (in either order) is accepted; a pair with
        equal endpoints is rejected, since reflexive incidence is built in.
        """
        if line_count < 0:
            raise StructureError("line_count must be >= 0")
        adj = np.ones((line_count, line_count), dtype=bool)
        for i, j in skew_pairs:
            i, j = int(i), int(j)
            if not (0 <= i < line_count and 0 <= j < line_count):
                raise StructureError(f"skew pair ({i}, {j}) out of range")
            if i == j:
                raise StructureError(f"line {i} cannot be skew to itself")
            adj[i, j] = adj[j, i] = False
        return cls(adj, labels=labels, name=name)

    @property
    def line_count(self) -> int:
        return self._adj.shape[0]

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only view of the incidence matrix."""
        return self._adj

    @property
    def masks(self) -> tuple[int, ...]:
        """Per-line bitmask of incident lines (bit j set iff line j is incident)."""
        if self._masks is None:
            rows = []
            for i in range(self.line_count):
                mask = 0
                for j in np.flatnonzero(self._adj[i]):
                    mask |= 1 << int(j)
                rows.append(mask)
            self._masks = tuple(rows)
        return self._masks

    @property
    def full_mask(self) -> int:
        return (1 << self.line_count) - 1

    def label(self, i: int) -> str:
        self.check_index(i)
        return self._labels[i]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructureError(f"unknown line label {label!r}") from None

    def check_index(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
            raise StructureError(f"line index must be an integer, got {i!r}")
        if not 0 <= i < self.line_count:
            raise StructureError(f"line index {i} out of range [0, {self.line_count})")
        return int(i)

    def skew_pairs(self) -> list[tuple[int, int]]:
        """All non-incident unordered pairs, sorted."""
        out = []
        for i in range(self.line_count):
            for j in np.flatnonzero(~self._adj[i, i + 1 :]):
                out.append((i, i + 1 + int(j)))
        return out

    def cached(self, key, builder):
        """Package-internal memo table; safe because structures are immutable."""
        try:
            return self._cache[key]
        except KeyError:
            value = builder()
            self._cache[key] = value
            return value

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return self._labels == other._labels and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._labels, self._adj.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<IncidenceStructure{name} lines={self.line_count}>"


def is_incident(s: IncidenceStructure, a: int, b: int) -> bool:
    """True iff lines ``a`` and ``b`` are incident (always true for a == b)."""
    a = s.check_index(a)
    b = s.check_index(b)
    return bool(s.adjacency[a, b])


def _validated_lines(s: IncidenceStructure, lines: Iterable[int]) -> list[int]:
    return sorted({s.check_index(l) for l in lines})


def perp(s: IncidenceStructure, lines: Iterable[int]) -> frozenset[int]:
    """The set of lines incident to every member of ``lines``.

    The empty set perps to the full line set (vacuous quantifier).
    """
    members = _validated_lines(s, lines)
    mask = s.full_mask
    for l in members:
        mask &= s.masks[l]
    return frozenset(lines_of_mask(mask))


def perp_mask(s: IncidenceStructure, mask: int) -> int:
    """Mask-level perp; operand and result are line bitmasks."""
    out = s.full_mask
    masks = s.masks
    while mask:
        low = mask & -mask
        out &= masks[low.bit_length() - 1]
        mask ^= low
    return out


def bracket(s: IncidenceStructure, *lines: int) -> frozenset[int]:
    """Perp of the listed lines; duplicates are harmless, no lines means all."""
    return perp(s, lines)


def find_skew_pair(s: IncidenceStructure, lines: Iterable[int]) -> Optional[tuple[int, int]]:
    """Lexicographically least skew pair within ``lines``, or None."""
    members = _validated_lines(s, lines)
    mset = mask_of_lines(members)
    masks = s.masks
    for x in members:
        cand = mset & ~masks[x]
        cand &= ~((1 << (x + 1)) - 1)  # only partners above x
        if cand:
            y = (cand & -cand).bit_length() - 1
            return (x, y)
    return None


def find_skew_triple(
    s: IncidenceStructure, lines: Iterable[int]
) -> Optional[tuple[int, int, int]]:
    """Lexicographically least pairwise-skew triple within ``lines``, or None."""
    members = _validated_lines(s, lines)
    mset = mask_of_lines(members)
    masks = s.masks
    for x in members:
        sx = mset & ~masks[x] & ~((1 << (x + 1)) - 1)
        rest = sx
        while rest:
            low = rest & -rest
            y = low.bit_length() - 1
            rest ^= low
            sxy = sx & ~masks[y] & ~((1 << (y + 1)) - 1)
            if sxy:
                z = (sxy & -sxy).bit_length() - 1
                return (x, y, z)
    return None


def incident_pairs(s: IncidenceStructure) -> tuple[tuple[int, int], ...]:
    """All incident distinct unordered pairs, sorted; cached per structure."""

    def build():
        out = []
        adj = s.adjacency
        for i in range(s.line_count):
            for j in np.flatnonzero(adj[i, i + 1 :]):
                out.append((i, i + 1 + int(j)))
        return tuple(out)

    return s.cached("incident_pairs", build)


def labels_of(s: IncidenceStructure, lines: Iterable[int]) -> list[str]:
    """Labels of the given lines in ascending index order."""
    return [s.labels[i] for i in sorted(set(lines))]
