"""
Checkers that tie the objects together: Schubert polynomials from both kinds of
pipe dreams, weight-multiset comparison of TSSCPP and ASM for each permutation,
droop/slide poset correspondences, and the enumeration table.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import bpd as _bpd
from . import pd as _pd
from .asm import count_asm, enumerate_asm
from .bpd import Bpd, blank_row_counts, blank_weight, droop_poset, enumerate_bpd_red, rothe_bpd
from .pd import (
    PipeDream, bottom_pd, cross_row_counts, cross_weight, enumerate_pd, enumerate_pd_red,
    is_pseudo_yamanouchi, simple_slides, slide_poset, top_pd,
)
from .perm import (
    Block, BlockDecomposition, Perm, all_perms, avoids, block_decomposition, check_perm,
    descents, format_perm, is_grassmannian, is_inverse_grassmannian,
)
from .poly import WeightPolynomial
from .poset import Poset, dual, is_isomorphic, is_isomorphism, product
from .tsscpp import (
    enumerate_triangles, is_permutation_triangle, triangle_to_pd, tsscpp_red, weight as triangle_weight,
)

__all__ = [
    "VerificationError", "Correspondence", "BlockCorrespondence", "Table1Row", "TABLE1_HEADER",
    "schubert_from_pd", "schubert_from_bpd", "verify_theorem_main", "inv_grass_correspondence",
    "grass_correspondence", "block_correspondence", "table1", "table1_row", "format_table1", "THEOREMS",
    "run_check",
]

P1432 = (1, 4, 3, 2)
P2143 = (2, 1, 4, 3)


class VerificationError(RuntimeError):
    pass


def schubert_from_pd(pi: Perm) -> WeightPolynomial:
    return WeightPolynomial.from_monomials(cross_weight(D) for D in enumerate_pd_red(pi))


def schubert_from_bpd(pi: Perm) -> WeightPolynomial:
    return WeightPolynomial.from_monomials(blank_weight(D) for D in enumerate_bpd_red(pi))


def _report(pi: Perm, ok: bool, details: dict) -> dict:
    return {"pi": format_perm(pi), "status": "ok" if ok else "fail", "details": details}


def verify_theorem_main(pi: Perm) -> dict:
    """Compare weights of reduced TSSCPP and reduced BPDs of pi.

    The TSSCPP multiset must sit inside the BPD multiset, and the two must agree
    when pi avoids 1432.
    """
    pi = check_perm(pi)
    if len(pi) > 6:
        raise ValueError("verify_theorem_main is limited to n <= 6")
    left = WeightPolynomial.from_monomials(triangle_weight(T) for T in tsscpp_red(pi))
    right = schubert_from_bpd(pi)
    avoiding = avoids(pi, P1432)
    dominated = left.dominated_by(right)
    equal = left == right
    ok = dominated and (equal or not avoiding)
    return _report(pi, ok, {
        "avoids_1432": avoiding,
        "tsscpp_count": left.total(),
        "bpd_count": right.total(),
        "dominated": dominated,
        "equal": equal,
        "tsscpp_weights": str(left),
        "bpd_weights": str(right),
    })


@dataclass(frozen=True)
class Correspondence:
    """An explicit bijection between droop(pi) and a slide poset (or its dual)."""

    pi: Perm
    droop: Poset
    slide: Poset           # slide(pi), or its dual for Grassmannian pi
    mapping: dict          # droop index -> slide index

    @property
    def pairs(self) -> list[tuple[Bpd, PipeDream]]:
        return [(self.droop.elements[a], self.slide.elements[b]) for a, b in sorted(self.mapping.items())]

    def image(self, D: Bpd) -> PipeDream:
        return self.slide.elements[self.mapping[self.droop.index(D)]]


def _correspond(pi: Perm, droop_labels: Callable[[Bpd], tuple], seed: PipeDream, flip: bool) -> Correspondence:
    D = droop_poset(pi).relabel(droop_labels)
    S = slide_poset(pi).relabel(cross_row_counts)
    if flip:
        S = dual(S)
    fixed = {D.index(rothe_bpd(pi)): S.index(seed)}
    mapping = is_isomorphic(D, S, respect_labels=True, fixed=fixed)
    if mapping is None or not is_isomorphism(D, S, mapping, respect_labels=True):
        kind = "dual slide" if flip else "slide"
        raise VerificationError(f"no label-preserving isomorphism droop -> {kind} for {format_perm(pi)}")
    return Correspondence(pi, D, S, mapping)


def inv_grass_correspondence(pi: Perm) -> Correspondence:
    """Rothe BPD <-> bottom pipe dream, extended to a poset isomorphism that
    keeps the number of blanks (resp. crosses) in every row."""
    pi = check_perm(pi)
    if not is_inverse_grassmannian(pi):
        raise ValueError(f"{format_perm(pi)} is not inverse-Grassmannian")
    return _correspond(pi, blank_row_counts, bottom_pd(pi), flip=False)


def _reversed_rows(d: int) -> Callable[[Bpd], tuple]:
    def label(D: Bpd) -> tuple:
        counts = blank_row_counts(D)
        out = [0] * D.n
        for k in range(1, d + 1):
            out[k - 1] = counts[d - k]
        if any(counts[d:]):
            raise VerificationError("blank tile below the descent row")
        return tuple(out)
    return label


def grass_correspondence(pi: Perm) -> Correspondence:
    """Rothe BPD <-> top pipe dream, extended to an isomorphism droop -> dual slide.

    Blanks in row k correspond to crosses in row d + 1 - k, where d is the
    descent of pi.
    """
    pi = check_perm(pi)
    if not is_grassmannian(pi):
        raise ValueError(f"{format_perm(pi)} is not Grassmannian")
    d = (descents(pi) or [0])[0]
    return _correspond(pi, _reversed_rows(d), top_pd(pi), flip=True)


@dataclass(frozen=True)
class BlockCorrespondence:
    pi: Perm
    decomposition: BlockDecomposition
    droop: Poset
    product: Poset
    mapping: dict                  # droop index -> product index
    factors: tuple                 # per droop element: one local Bpd per block
    slide_size: int

    @property
    def slide_matches(self) -> bool:
        return self.slide_size == len(self.droop)


def _restrict(D: Bpd, block: Block) -> tuple[tuple[int, ...], ...]:
    rows = []
    for i in block.rows:
        rows.append(tuple(D[(i, j)] for j in block.cols))
    return tuple(rows)


def block_correspondence(pi: Perm) -> BlockCorrespondence:
    """Factor droop(pi) over the blocks of pi and map it onto the product of the
    blocks' slide posets (dual slide for Grassmannian blocks)."""
    pi = check_perm(pi)
    dec = block_decomposition(pi)
    blocks = dec.blocks
    droop = droop_poset(pi)
    rothe = rothe_bpd(pi)

    inner, lookups, posets = [], [], []
    for b in blocks:
        corr = grass_correspondence(b.perm) if b.grassmannian else inv_grass_correspondence(b.perm)
        inner.append(corr)
        h, w = len(b.rows), len(b.cols)
        table = {}
        for k, E in enumerate(corr.droop.elements):
            table[tuple(row[:w] for row in E.tiles[:h])] = k
        if len(table) != len(corr.droop):
            raise VerificationError(f"block {format_perm(b.perm)} of {format_perm(pi)} is not determined by its window")
        lookups.append(table)
        posets.append(corr.slide)

    in_blocks = {cell for b in blocks for cell, _ in b.cells()}
    outside = [c for c in rothe.cells() if c not in in_blocks]
    prod = product(*posets)
    radices = [len(P) for P in posets]

    mapping, factors = {}, []
    for k, E in enumerate(droop.elements):
        if any(E[c] != rothe[c] for c in outside):
            raise VerificationError(f"a droop of {format_perm(pi)} changes a tile outside every block")
        idx = 0
        local = []
        for b, table, corr, radix in zip(blocks, lookups, inner, radices):
            window = _restrict(E, b)
            if window not in table:
                raise VerificationError(f"window of block {format_perm(b.perm)} is not a droop of the block")
            a = table[window]
            local.append(corr.droop.elements[a])
            idx = idx * radix + corr.mapping[a]
        mapping[k] = idx
        factors.append(tuple(local))

    if not is_isomorphism(droop, prod, mapping):
        raise VerificationError(f"block factorization of {format_perm(pi)} does not preserve covers")
    if is_isomorphic(droop, prod) is None:
        raise VerificationError(f"isomorphism search disagrees for {format_perm(pi)}")
    return BlockCorrespondence(pi, dec, droop, prod, mapping, tuple(factors), len(slide_poset(pi)))


# -- enumeration table -------------------------------------------------------

TABLE1_HEADER = ("Size", "Perm bijection", "(1432,2143)-av bijection", "1432-av bijection",
                 "Matched in injection", "Total num of ASM")


@dataclass(frozen=True)
class Table1Row:
    n: int
    perm: int
    both_avoiding: int
    avoiding_1432: int
    matched: int
    total: int
    tsscpp_both_avoiding: int = field(default=0, compare=False)
    tsscpp_avoiding_1432: int = field(default=0, compare=False)

    @property
    def values(self) -> tuple[int, ...]:
        return (self.n, self.perm, self.both_avoiding, self.avoiding_1432, self.matched, self.total)

    @property
    def consistent(self) -> bool:
        """ASM side and TSSCPP side agree on the two avoidance columns."""
        return (self.both_avoiding, self.avoiding_1432) == (self.tsscpp_both_avoiding, self.tsscpp_avoiding_1432)


def _classify(words: Iterable[Perm]) -> tuple[int, int, int]:
    seen = Counter(words)
    both = sum(c for w, c in seen.items() if avoids(w, P1432, P2143))
    one = sum(c for w, c in seen.items() if avoids(w, P1432))
    return both, one, sum(seen.values())


def table1_row(n: int) -> Table1Row:
    reduced_bpd = []
    total = 0
    for A in enumerate_asm(n):
        total += 1
        w = _bpd.reduced_permutation(_bpd.tiles_from_matrix(A.rows))
        if w is not None:
            reduced_bpd.append(w)
    both, one, _ = _classify(reduced_bpd)

    perm = 0
    reduced_tri = []
    for T in enumerate_triangles(n):
        perm += is_permutation_triangle(T)
        w = _pd.reduced_permutation(triangle_to_pd(T))
        if w is not None:
            reduced_tri.append(w)
    t_both, t_one, matched = _classify(reduced_tri)
    if total != count_asm(n):
        raise VerificationError(f"ASM enumeration and count disagree at n={n}")
    return Table1Row(n, perm, both, one, matched, total, t_both, t_one)


def table1(max_n: int, jobs: int = 1) -> list[Table1Row]:
    if not 1 <= max_n <= 7:
        raise ValueError(f"max_n must lie in 1..7, got {max_n}")
    sizes = range(1, max_n + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(table1_row, sizes))
    return [table1_row(n) for n in sizes]


def format_table1(rows: list[Table1Row], tsv: bool = False) -> str:
    lines = [TABLE1_HEADER] + [tuple(str(v) for v in r.values) for r in rows]
    if tsv:
        return "".join("\t".join(line) + "\n" for line in lines)
    widths = [max(len(line[k]) for line in lines) for k in range(len(TABLE1_HEADER))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in lines)


# -- lemma checkers ----------------------------------------------------------
# Each checker returns a list of reports; the CLI exits 1 if any is "fail".


def _perms(n: int | None, pi: Perm | None, keep: Callable[[Perm], bool]) -> list[Perm]:
    if pi is not None:
        return [check_perm(pi)]
    return [p for p in all_perms(n) if keep(p)]


def _check_main(n, pi):
    return [verify_theorem_main(p) for p in _perms(n, pi, lambda p: True)]


def _check_tsscpp_yam(n, pi):
    if n is None:
        raise ValueError("tsscpp-yam needs --n")
    image = {}
    for T in enumerate_triangles(n):
        image[triangle_to_pd(T)] = triangle_weight(T)
    py = {D for D in enumerate_pd(n) if is_pseudo_yamanouchi(D)}
    weights_ok = all(cross_weight(D) == w for D, w in image.items())
    ok = set(image) == py and weights_ok
    return [{"pi": None, "status": "ok" if ok else "fail",
             "details": {"n": n, "triangles": len(image), "pseudo_yamanouchi": len(py), "weights_match": weights_ok}}]


def _check_bottom_yam(n, pi):
    return [_report(p, is_pseudo_yamanouchi(bottom_pd(p)), {}) for p in _perms(n, pi, lambda p: True)]


def _check_slides_py(n, pi):
    if n is None:
        raise ValueError("slide-preserves-py needs --n")
    bad = 0
    checked = 0
    for D in enumerate_pd(n):
        if is_pseudo_yamanouchi(D):
            for E in simple_slides(D):
                checked += 1
                bad += not is_pseudo_yamanouchi(E)
    return [{"pi": None, "status": "ok" if bad == 0 else "fail",
             "details": {"n": n, "slides_checked": checked, "violations": bad}}]


def _guarded(p: Perm, fn: Callable[[Perm], Any], summary: Callable[[Any], dict]) -> dict:
    try:
        return _report(p, True, summary(fn(p)))
    except VerificationError as exc:
        return _report(p, False, {"error": str(exc)})


def _check_inv_grass(n, pi):
    return [_guarded(p, inv_grass_correspondence, lambda c: {"size": len(c.droop)})
            for p in _perms(n, pi, is_inverse_grassmannian)]


def _check_grass(n, pi):
    def summary(c):
        plain = is_isomorphic(c.droop, dual(c.slide)) is not None
        return {"size": len(c.droop), "slide_self_dual": is_isomorphic(c.slide, dual(c.slide)) is not None,
                "droop_isomorphic_to_slide": plain}
    return [_guarded(p, grass_correspondence, summary) for p in _perms(n, pi, is_grassmannian)]


def _check_blocks(n, pi):
    def summary(c):
        return {"size": len(c.droop), "blocks": [format_perm(b.perm) for b in c.decomposition.blocks],
                "slide_size": c.slide_size}
    return [_guarded(p, block_correspondence, summary)
            for p in _perms(n, pi, lambda p: avoids(p, P1432, P2143))]


def _check_droop_covers(n, pi):
    """For 2143-avoiding pi: no non-reduced BPD has Demazure permutation pi, and
    droop(pi) is exactly the set of reduced BPDs of pi."""
    perms = _perms(n, pi, lambda p: avoids(p, P2143))
    size = len(perms[0]) if perms else n
    nonreduced = Counter()
    for A in enumerate_asm(size):
        D = _bpd.tiles_from_matrix(A.rows)
        if _bpd.reduced_permutation(D) is None:
            nonreduced[_bpd.demazure_permutation(D)] += 1
    out = []
    for p in perms:
        elements = set(droop_poset(p).elements)
        same = elements == set(enumerate_bpd_red(p))
        out.append(_report(p, same and nonreduced[p] == 0,
                           {"droop_size": len(elements), "nonreduced_bpds": nonreduced[p]}))
    return out


THEOREMS: dict[str, Callable] = {
    "main": _check_main,
    "tsscpp-yam": _check_tsscpp_yam,
    "bottom-yam": _check_bottom_yam,
    "slide-preserves-py": _check_slides_py,
    "inv-grass": _check_inv_grass,
    "grass": _check_grass,
    "blocks": _check_blocks,
    "droop-covers": _check_droop_covers,
}


def run_check(theorem: str, n: int | None = None, pi: Perm | None = None) -> list[dict]:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if n is None and pi is None:
        raise ValueError("give a size or a permutation")
    return THEOREMS[theorem](n, pi)
