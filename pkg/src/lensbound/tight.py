"""Tight contact structures on lens spaces as signed minimal Farey paths.

Every edge of the minimal path from -p/q to 0 except the first and the last
carries a sign.  Interior edges turning about a common pivot form a block;
signs may be permuted freely inside a block, so a structure is determined by
the number of ``+`` signs per block.  In path order the block sizes are
``|a_n| - 2, ..., |a_1| - 2`` for the negative continued fraction
``[a_1, ..., a_n]`` of -p/q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import prod

from lensbound.errors import InputError, InvariantError
from lensbound.farey import (
    ZERO,
    ccw_key,
    interior_runs,
    is_farey_edge,
    minimal_path,
    neighbors_in_arc,
    start_slope,
)
from lensbound.rational import LensSpace, Slope, neg_cf


@dataclass(frozen=True)
class TightStructure:
    lens: LensSpace
    path: tuple[Slope, ...]
    blocks: tuple[int, ...]
    signs: str

    def __post_init__(self):
        if sum(self.blocks) != len(self.signs) or len(self.signs) != len(self.path) - 3:
            raise InputError(
                f"{len(self.signs)} signs do not fit {len(self.path) - 1} edges with blocks {self.blocks}"
            )
        if set(self.signs) - {"+", "-"}:
            raise InputError(f"signs must be '+' or '-', got {self.signs!r}")
        if canonical_signs(self.signs, self.blocks) != self.signs:
            raise InputError(f"signs {self.signs!r} are not in canonical block order")

    @property
    def plus_counts(self) -> tuple[int, ...]:
        return tuple(chunk.count("+") for chunk in split_blocks(self.signs, self.blocks))

    @property
    def interior_edges(self) -> list[tuple[Slope, Slope]]:
        return list(zip(self.path[1:-2], self.path[2:-1]))

    def summary(self) -> str:
        kind = "universally tight" if is_universally_tight(self) else "virtually overtwisted"
        signs = self.signs or "(none)"
        return f"{self.lens} signs={signs} blocks={list(self.blocks)} {kind}"

    def to_json(self) -> dict:
        return {
            "p": str(self.lens.p),
            "q": str(self.lens.q),
            "path": [str(s) for s in self.path],
            "signs": self.signs,
            "blocks": [str(b) for b in self.blocks],
        }


@dataclass(frozen=True)
class MixedVertex:
    """Interior path vertex r2 whose two incident edges carry opposite signs."""

    index: int
    r1: Slope
    r2: Slope
    r3: Slope

    def to_json(self) -> dict:
        return {"index": str(self.index), "r1": str(self.r1), "r2": str(self.r2), "r3": str(self.r3)}


def split_blocks(signs: str, blocks) -> list[str]:
    out, i = [], 0
    for b in blocks:
        out.append(signs[i : i + b])
        i += b
    return out


def canonical_signs(signs: str, blocks) -> str:
    return "".join("+" * c.count("+") + "-" * c.count("-") for c in split_blocks(signs, blocks))


def path_blocks(lens: LensSpace, path=None) -> tuple[int, ...]:
    """Block sizes along the path, checked against the pivot runs of the path itself."""
    path = minimal_path(lens) if path is None else path
    blocks = tuple(-a - 2 for a in reversed(neg_cf(lens.p, lens.q)))
    if [b for b in blocks if b] != interior_runs(path):
        raise InvariantError(f"block sizes {blocks} disagree with pivot runs of the path for {lens}")
    return blocks


def from_signs(lens: LensSpace, signs: str) -> TightStructure:
    """The structure whose sign arrangement along the path is ``signs`` (any order within blocks)."""
    path = tuple(minimal_path(lens))
    blocks = path_blocks(lens, path)
    if len(signs) != sum(blocks):
        raise InputError(f"{lens} has {sum(blocks)} signed edges, got {len(signs)} signs")
    if set(signs) - {"+", "-"}:
        raise InputError(f"signs must be '+' or '-', got {signs!r}")
    return TightStructure(lens, path, blocks, canonical_signs(signs, blocks))


def enumerate_tight(lens: LensSpace) -> list[TightStructure]:
    """All tight structures, ordered lexicographically by per-block plus counts."""
    start_slope(lens)
    path = tuple(minimal_path(lens))
    blocks = path_blocks(lens, path)
    out = []
    for counts in product(*(range(b + 1) for b in blocks)):
        signs = "".join("+" * k + "-" * (b - k) for k, b in zip(counts, blocks))
        out.append(TightStructure(lens, path, blocks, signs))
    return out


def count_tight_formula(lens: LensSpace) -> int:
    start_slope(lens)
    return prod(abs(a + 1) for a in neg_cf(lens.p, lens.q))


def is_universally_tight(t: TightStructure) -> bool:
    return len(set(t.signs)) <= 1


def universally_tight(lens: LensSpace, oriented: bool = True) -> list[TightStructure]:
    """The uniform-sign structures; ``oriented=False`` identifies all-plus with all-minus."""
    found = [t for t in enumerate_tight(lens) if is_universally_tight(t)]
    return found if oriented else found[:1]


def arrangements(t: TightStructure):
    """Every distinct ordering of the signs within each block (exponential; small cases)."""
    per_block = []
    for b, k in zip(t.blocks, t.plus_counts):
        per_block.append(
            ["".join("+" if i in pos else "-" for i in range(b)) for pos in map(set, combinations(range(b), k))]
        )
    for combo in product(*per_block):
        yield "".join(combo)


def possible_mixed_vertices(t: TightStructure) -> list[MixedVertex]:
    """Vertices that are mixed in at least one within-block arrangement of ``t``."""
    owner = [i for i, b in enumerate(t.blocks) for _ in range(b)]
    counts = t.plus_counts
    path = t.path
    out = []
    for j in range(2, len(path) - 2):
        left, right = owner[j - 2], owner[j - 1]
        if left == right:
            ok = 0 < counts[left] < t.blocks[left]
        else:
            signs = {s for i in (left, right) for s in "+-" if (counts[i] if s == "+" else t.blocks[i] - counts[i])}
            ok = len(signs) == 2
        if ok:
            out.append(MixedVertex(j, path[j - 1], path[j], path[j + 1]))
    return out


def mixed_vertices(t: TightStructure, signs: str | None = None) -> list[MixedVertex]:
    """Sign changes along the path; ``signs`` overrides the canonical arrangement."""
    if signs is None:
        signs = t.signs
    elif canonical_signs(signs, t.blocks) != t.signs:
        raise InputError(f"{signs!r} is not an arrangement of {t.signs!r} within blocks {t.blocks}")
    path = t.path
    out = []
    # path[j] sits between signed edges j-2 and j-1
    for j in range(2, len(path) - 2):
        if signs[j - 2] != signs[j - 1]:
            out.append(MixedVertex(j, path[j - 1], path[j], path[j + 1]))
    return out


@lru_cache(maxsize=65536)
def _candidates(r1: Slope, r2: Slope, r3: Slope) -> tuple[Slope, ...]:
    return tuple(neighbors_in_arc(r2, r3, r1))


def menke_candidates(t: TightStructure, v: MixedVertex, signs: str | None = None) -> list[Slope]:
    """Meridional slopes for the solid tori glued in when splitting along the mixed torus at v."""
    if v not in mixed_vertices(t, signs):
        raise InputError(f"{v.r2} is not a mixed vertex of {t.summary()}")
    return list(_candidates(v.r1, v.r2, v.r3))


def menke_slopes(t: TightStructure, exhaustive: bool = False) -> dict[Slope, list[Slope]]:
    """Candidates keyed by r2; ``exhaustive`` covers every within-block arrangement."""
    vertices = possible_mixed_vertices(t) if exhaustive else mixed_vertices(t)
    return {v.r2: list(_candidates(v.r1, v.r2, v.r3)) for v in vertices}


def sphere_factor_witnesses(lens: LensSpace, exhaustive: bool = False) -> list[dict]:
    """Mixed vertices whose candidate list is empty or hits 0 or -p/q."""
    forbidden = {ZERO, start_slope(lens)}
    witnesses = []
    for t in enumerate_tight(lens):
        if is_universally_tight(t):
            continue
        vertices = possible_mixed_vertices(t) if exhaustive else mixed_vertices(t)
        if not vertices:
            raise InvariantError(f"{t.summary()} has no mixed vertex")
        for v in vertices:
            cands = _candidates(v.r1, v.r2, v.r3)
            bad = [c for c in cands if c in forbidden]
            if bad or not cands:
                witnesses.append({"signs": t.signs, "r2": str(v.r2), "hits": [str(c) for c in bad]})
            for c in cands:
                if not is_farey_edge(c, v.r2):
                    raise InvariantError(f"candidate {c} is not adjacent to {v.r2}")
    return witnesses


def verify_no_sphere_factor(lens: LensSpace, exhaustive: bool = False) -> bool:
    return not sphere_factor_witnesses(lens, exhaustive)
