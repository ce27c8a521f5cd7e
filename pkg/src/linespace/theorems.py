"""Brute-force theorem verifiers and the derived-geometry axiom battery.

Every verifier quantifies exhaustively from the raw definitions, sharing
only the perp/bracket/sigma primitives with the rest of the package, so a
bug in one checker cannot silently satisfy another.  On any structure
where the axiom checks all pass, every verifier here must pass as well;
that cross-validation is the package's main self-test.

Quantifier budgets: a check iterates exhaustively while its obligation
count stays at or below OBLIGATION_CAP (for triple quantifiers this covers
every structure up to roughly 200 lines).  Beyond the cap it evaluates a
seeded sample and records the mode, sample size and seed in the report
stats.  Vacuous hypotheses report a pass with zero cases, never an error.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Optional

from .axioms import DEPENDENCY_UNMET, FAIL, PASS, CheckReport
from .core import (
    IncidenceStructure,
    incident_pairs,
    labels_of,
    lines_of_mask,
    mask_of_lines,
    perp_mask,
)
from .labeling import (
    GeometryModel,
    Kind,
    LabelInconsistencyError,
    MissingElementError,
    coordinate_labels,
    join_plane,
    labeled_sigma_classes,
    meet_point,
)
from .sigma import NotTwoClassesError, sigma_mask, sigma_partition

OBLIGATION_CAP = 2_000_000
SAMPLE_COUNT = 200_000
SAMPLE_SEED = 8191


def _triple_budget(n: int) -> tuple[str, Iterable[tuple[int, int, int]]]:
    """Exhaustive triples up to the obligation cap, else a seeded sample."""
    total = math.comb(n, 3)
    if total <= OBLIGATION_CAP:
        return "exhaustive", itertools.combinations(range(n), 3)
    rng = random.Random(SAMPLE_SEED)

    def sample():
        for _ in range(SAMPLE_COUNT):
            yield tuple(sorted(rng.sample(range(n), 3)))

    return "sampled", sample()


def _budget_stats(mode: str, examined: int, **extra) -> dict:
    stats = {"mode": mode, "cases_examined": examined}
    if mode == "sampled":
        stats["sample_seed"] = SAMPLE_SEED
    stats.update(extra)
    return stats


def _sigma_lookup(s: IncidenceStructure) -> dict[tuple[int, int], int]:
    """Mask of sigma(a, b) for every incident distinct pair; cached."""

    def build():
        return {(a, b): sigma_mask(s, a, b) for a, b in incident_pairs(s)}

    return s.cached("sigma_lookup", build)


def triads(s: IncidenceStructure) -> tuple[tuple[int, int, int], ...]:
    """All unordered triads, sorted; cached.

    A triple counts as a triad when some rotation places its third line in
    the sigma set of the other two; on structures passing the sigma
    equivalence theorem this matches every rotation.
    """

    def build():
        found = set()
        for (a, b), sig in _sigma_lookup(s).items():
            for c in lines_of_mask(sig):
                found.add(tuple(sorted((a, b, c))))
        return tuple(sorted(found))

    return s.cached("triads", build)


def _bracket_mask(s: IncidenceStructure, lines: Iterable[int]) -> int:
    out = s.full_mask
    for l in lines:
        out &= s.masks[l]
    return out


def _labeled_class_masks(m: GeometryModel) -> dict[tuple[int, int], tuple[int, int]]:
    """(point_class_mask, plane_class_mask) per incident pair; cached."""
    s = m.structure

    def build():
        out = {}
        for a, b in incident_pairs(s):
            pc, qc = labeled_sigma_classes(m, a, b)
            out[(a, b)] = (mask_of_lines(pc), mask_of_lines(qc))
        return out

    return s.cached(("labeled_class_masks", m.points, m.planes), build)


def _element_kinds(m: GeometryModel) -> dict[int, Kind]:
    """Element bitmask to kind, for the model's families."""
    kinds = {}
    for e in m.points:
        kinds[mask_of_lines(e)] = Kind.POINT
    for e in m.planes:
        kinds[mask_of_lines(e)] = Kind.PLANE
    return kinds


def _dependency(name: str, exc: Exception) -> CheckReport:
    witness = getattr(exc, "witness", None)
    ce = {"issue": "labeling_unavailable", "detail": str(exc)}
    if isinstance(witness, dict):
        ce.update(witness)
    return CheckReport(name, DEPENDENCY_UNMET, counterexample=ce)


# ---------------------------------------------------------------------------
# Structure-level theorems


def thm_sigma_equivalence(s: IncidenceStructure) -> CheckReport:
    """The three sigma memberships of any triple agree (all hold or none)."""
    name = "thm_sigma_equivalence"
    sig = _sigma_lookup(s)

    def member(x, y, z):
        if x > y:
            x, y = y, x
        mask = sig.get((x, y))
        return bool(mask and (mask >> z) & 1)

    mode, it = _triple_budget(s.line_count)
    examined = 0
    for a, b, c in it:
        examined += 1
        m1 = member(b, c, a)
        m2 = member(c, a, b)
        m3 = member(a, b, c)
        if not (m1 == m2 == m3):
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "triple": labels_of(s, (a, b, c)),
                    "a_in_sigma_bc": m1,
                    "b_in_sigma_ca": m2,
                    "c_in_sigma_ab": m3,
                },
                stats=_budget_stats(mode, examined),
            )
    return CheckReport(name, PASS, stats=_budget_stats(mode, examined))


def thm_two_classes(s: IncidenceStructure) -> CheckReport:
    """Incidence on every sigma(a, b) splits into exactly two classes."""
    name = "thm_two_classes"
    pairs = incident_pairs(s)
    sizes = set()
    for a, b in pairs:
        try:
            part = sigma_partition(s, a, b)
        except NotTwoClassesError as e:
            return CheckReport(
                name,
                FAIL,
                counterexample=dict(e.witness),
                stats={"pairs_examined": len(pairs)},
            )
        sizes.add((len(part.class_0), len(part.class_1)))
    stats = {"pairs_examined": len(pairs)}
    if sizes:
        stats["class_size_pairs"] = sorted(sizes)
    return CheckReport(name, PASS, stats=stats)


def thm_bracket_welldefined(s: IncidenceStructure) -> CheckReport:
    """Incident members of one sigma set give equal brackets over the pair."""
    name = "thm_bracket_welldefined"
    masks = s.masks
    adj = s.adjacency
    cases = 0
    for (a, b), sig in _sigma_lookup(s).items():
        base = masks[a] & masks[b]
        members = lines_of_mask(sig)
        for i, c1 in enumerate(members):
            for c2 in members[i + 1 :]:
                if not adj[c1, c2]:
                    continue
                cases += 1
                if base & masks[c1] != base & masks[c2]:
                    delta = (base & masks[c1]) ^ (base & masks[c2])
                    return CheckReport(
                        name,
                        FAIL,
                        counterexample={
                            "pair": labels_of(s, (a, b)),
                            "c1": s.labels[c1],
                            "c2": s.labels[c2],
                            "differs_on": labels_of(s, lines_of_mask(delta)),
                        },
                        stats={"cases_examined": cases},
                    )
    return CheckReport(name, PASS, stats={"cases_examined": cases})


def thm_line_selfperp(s: IncidenceStructure) -> CheckReport:
    """The double perp of a single line is that line alone."""
    name = "thm_line_selfperp"
    for l in range(s.line_count):
        dd = perp_mask(s, s.masks[l])
        if dd != 1 << l:
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "line": s.labels[l],
                    "double_perp": labels_of(s, lines_of_mask(dd)),
                },
                stats={"lines_examined": l + 1},
            )
    return CheckReport(name, PASS, stats={"lines_examined": s.line_count})


def thm_regulus_skew(s: IncidenceStructure) -> CheckReport:
    """The bracket of a pairwise-skew triple is itself pairwise skew."""
    name = "thm_regulus_skew"
    n = s.line_count
    masks = s.masks
    full = s.full_mask
    total = math.comb(n, 3)
    examined = 0

    def check(u, v, w):
        B = masks[u] & masks[v] & masks[w]
        for l in lines_of_mask(B):
            other = B & masks[l] & ~(1 << l)
            if other:
                m2 = (other & -other).bit_length() - 1
                return (min(l, m2), max(l, m2))
        return None

    if total <= OBLIGATION_CAP:
        mode = "exhaustive"
        for u in range(n):
            su = full & ~masks[u] & ~((1 << (u + 1)) - 1)
            for v in lines_of_mask(su):
                suv = su & ~masks[v] & ~((1 << (v + 1)) - 1)
                for w in lines_of_mask(suv):
                    examined += 1
                    bad = check(u, v, w)
                    if bad:
                        return CheckReport(
                            name,
                            FAIL,
                            counterexample={
                                "triple": labels_of(s, (u, v, w)),
                                "m": s.labels[bad[0]],
                                "n": s.labels[bad[1]],
                            },
                            stats=_budget_stats(mode, examined),
                        )
    else:
        mode = "sampled"
        rng = random.Random(SAMPLE_SEED)
        adj = s.adjacency
        for _ in range(SAMPLE_COUNT):
            u, v, w = sorted(rng.sample(range(n), 3))
            if adj[u, v] or adj[u, w] or adj[v, w]:
                continue
            examined += 1
            bad = check(u, v, w)
            if bad:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "triple": labels_of(s, (u, v, w)),
                        "m": s.labels[bad[0]],
                        "n": s.labels[bad[1]],
                    },
                    stats=_budget_stats(mode, examined),
                )
    return CheckReport(name, PASS, stats=_budget_stats(mode, examined))


def thm_bracket_closed(s: IncidenceStructure) -> CheckReport:
    """Every triad's bracket equals its own perp."""
    name = "thm_bracket_closed"
    examined = 0
    for t in triads(s):
        examined += 1
        B = _bracket_mask(s, t)
        if perp_mask(s, B) != B:
            delta = perp_mask(s, B) ^ B
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "triad": labels_of(s, t),
                    "differs_on": labels_of(s, lines_of_mask(delta)),
                },
                stats={"triads_examined": examined},
            )
    return CheckReport(name, PASS, stats={"triads_examined": examined})


def thm_coherence(s: IncidenceStructure) -> CheckReport:
    """A triple whose bracket equals a triad's bracket is itself a triad."""
    name = "thm_coherence"
    masks = s.masks
    tri = triads(s)
    tri_set = set(tri)
    by_bracket: dict[int, tuple[int, int, int]] = {}
    for t in tri:
        by_bracket.setdefault(_bracket_mask(s, t), t)
    mode, it = _triple_budget(s.line_count)
    examined = 0
    for p, q, r in it:
        examined += 1
        B = masks[p] & masks[q] & masks[r]
        rep = by_bracket.get(B)
        if rep is not None and (p, q, r) not in tri_set:
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "triple": labels_of(s, (p, q, r)),
                    "triad_with_equal_bracket": labels_of(s, rep),
                },
                stats=_budget_stats(mode, examined),
            )
    return CheckReport(name, PASS, stats=_budget_stats(mode, examined, triads=len(tri)))


def thm_mutual_membership(s: IncidenceStructure) -> CheckReport:
    """Containment between two triads is symmetric and forces equal brackets.

    Every pair with one triad inside the other's bracket is checked
    exhaustively (organized per distinct element); the symmetric statement
    over unrelated pairs is exhausted while the pair count fits the
    obligation cap and sampled otherwise.
    """
    name = "thm_mutual_membership"
    tri = triads(s)
    n_t = len(tri)
    tmask = [mask_of_lines(t) for t in tri]
    bmask = [_bracket_mask(s, t) for t in tri]

    by_bracket: dict[int, list[int]] = {}
    for idx, bm in enumerate(bmask):
        by_bracket.setdefault(bm, []).append(idx)
    element_masks = sorted(by_bracket)
    contains: dict[int, list[int]] = {
        em: [ti for ti in range(n_t) if not (tmask[ti] & ~em)] for em in element_masks
    }

    def violation(i, j):
        inside_ij = not (tmask[j] & ~bmask[i])  # lines of tri[j] inside bracket of tri[i]
        inside_ji = not (tmask[i] & ~bmask[j])
        if inside_ij != inside_ji:
            return {
                "triad_a": labels_of(s, tri[i]),
                "triad_b": labels_of(s, tri[j]),
                "issue": "membership_not_symmetric",
            }
        if inside_ij and bmask[i] != bmask[j]:
            return {
                "triad_a": labels_of(s, tri[i]),
                "triad_b": labels_of(s, tri[j]),
                "issue": "contained_but_brackets_differ",
            }
        return None

    positive = 0
    for em in element_masks:
        for i in by_bracket[em]:
            for j in contains[em]:
                if i == j:
                    continue
                positive += 1
                bad = violation(i, j)
                if bad:
                    return CheckReport(
                        name, FAIL, counterexample=bad, stats={"positive_pairs": positive}
                    )

    total_pairs = n_t * (n_t - 1) // 2
    examined = 0
    if total_pairs <= OBLIGATION_CAP:
        mode = "exhaustive"
        pair_iter = itertools.combinations(range(n_t), 2)
    else:
        mode = "sampled"
        rng = random.Random(SAMPLE_SEED)
        pair_iter = (
            tuple(sorted(rng.sample(range(n_t), 2))) for _ in range(SAMPLE_COUNT)
        )
    for i, j in pair_iter:
        examined += 1
        bad = violation(i, j)
        if bad:
            return CheckReport(
                name,
                FAIL,
                counterexample=bad,
                stats=_budget_stats(mode, examined, positive_pairs=positive),
            )
    return CheckReport(
        name,
        PASS,
        stats=_budget_stats(mode, examined, positive_pairs=positive, triads=n_t),
    )


# ---------------------------------------------------------------------------
# Model-level theorems


def thm_triad_typing(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Each triad sits uniformly on the point side or the plane side."""
    name = "thm_triad_typing"
    try:
        classes = _labeled_class_masks(m)
    except (NotTwoClassesError, MissingElementError, LabelInconsistencyError) as e:
        return _dependency(name, e)

    def side(x, y, third):
        key = (x, y) if x < y else (y, x)
        got = classes.get(key)
        if got is None:
            return None
        pc, qc = got
        if (pc >> third) & 1:
            return Kind.POINT
        if (qc >> third) & 1:
            return Kind.PLANE
        return None

    examined = 0
    for a, b, c in triads(s):
        examined += 1
        sides = (side(b, c, a), side(c, a, b), side(a, b, c))
        if sides[0] is None or sides[0] != sides[1] or sides[1] != sides[2]:
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "triad": labels_of(s, (a, b, c)),
                    "sides": [x.value if x else None for x in sides],
                },
                stats={"triads_examined": examined},
            )
    return CheckReport(name, PASS, stats={"triads_examined": examined})


def thm_point_ne_plane(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """No line set is both a point and a plane of the model."""
    name = "thm_point_ne_plane"
    overlap = set(m.points) & set(m.planes)
    stats = {"points": len(m.points), "planes": len(m.planes)}
    if overlap:
        worst = min(overlap)
        return CheckReport(
            name,
            FAIL,
            counterexample={"element": labels_of(s, worst)},
            stats=stats,
        )
    return CheckReport(name, PASS, stats=stats)


def thm_pencil_intersection(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """meet and join of a pair intersect in the pair's double perp.

    Also checks the companion identities: the point class of sigma(a, b)
    is the meet minus the double perp, and dually for the plane class.
    """
    name = "thm_pencil_intersection"
    try:
        classes = _labeled_class_masks(m)
    except (NotTwoClassesError, MissingElementError, LabelInconsistencyError) as e:
        return _dependency(name, e)
    masks = s.masks
    pairs = incident_pairs(s)
    examined = 0
    for a, b in pairs:
        examined += 1
        try:
            pt = mask_of_lines(meet_point(m, a, b).lines)
            pl = mask_of_lines(join_plane(m, a, b).lines)
        except MissingElementError as e:
            return CheckReport(
                name,
                FAIL,
                counterexample={"pair": labels_of(s, (a, b)), "issue": str(e)},
                stats={"pairs_examined": examined},
            )
        dd = perp_mask(s, masks[a] & masks[b])
        pc, qc = classes[(a, b)]
        checks = (
            ("meet_join_intersection", pt & pl, dd),
            ("point_class_identity", pc, pt & ~dd),
            ("plane_class_identity", qc, pl & ~dd),
        )
        for label, got, want in checks:
            if got != want:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "pair": labels_of(s, (a, b)),
                        "identity": label,
                        "got": labels_of(s, lines_of_mask(got)),
                        "expected": labels_of(s, lines_of_mask(want)),
                    },
                    stats={"pairs_examined": examined},
                )
    return CheckReport(name, PASS, stats={"pairs_examined": examined})


def thm_exchange(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Distinct lines of a triad's bracket have one of the triad in their sigma.

    Refined by kind: when the bracket is a plane of the model, the plane
    class of sigma(x, y) already contains one of the triad, and dually.
    """
    name = "thm_exchange"
    try:
        classes = _labeled_class_masks(m)
    except (NotTwoClassesError, MissingElementError, LabelInconsistencyError) as e:
        return _dependency(name, e)
    kinds = _element_kinds(m)
    adj = s.adjacency
    sig = _sigma_lookup(s)
    examined = 0
    for t in triads(s):
        B = _bracket_mask(s, t)
        t_mask = mask_of_lines(t)
        kind = kinds.get(B)
        if kind is None:
            return CheckReport(
                name,
                FAIL,
                counterexample={"triad": labels_of(s, t), "issue": "bracket_not_an_element"},
                stats={"cases_examined": examined},
            )
        members = lines_of_mask(B)
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                examined += 1
                if not adj[x, y]:
                    return CheckReport(
                        name,
                        FAIL,
                        counterexample={
                            "triad": labels_of(s, t),
                            "x": s.labels[x],
                            "y": s.labels[y],
                            "issue": "skew_pair_in_bracket",
                        },
                        stats={"cases_examined": examined},
                    )
                if not (sig[(x, y)] & t_mask):
                    return CheckReport(
                        name,
                        FAIL,
                        counterexample={
                            "triad": labels_of(s, t),
                            "x": s.labels[x],
                            "y": s.labels[y],
                            "issue": "sigma_misses_triad",
                        },
                        stats={"cases_examined": examined},
                    )
                pc, qc = classes[(x, y)]
                refined = pc if kind is Kind.POINT else qc
                if not (refined & t_mask):
                    return CheckReport(
                        name,
                        FAIL,
                        counterexample={
                            "triad": labels_of(s, t),
                            "x": s.labels[x],
                            "y": s.labels[y],
                            "kind": kind.value,
                            "issue": "refined_class_misses_triad",
                        },
                        stats={"cases_examined": examined},
                    )
    return CheckReport(name, PASS, stats={"cases_examined": examined})


def thm_not_singleton(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """A point and a plane never share exactly one line."""
    name = "thm_not_singleton"
    pmasks = [mask_of_lines(e) for e in m.points]
    lmasks = [mask_of_lines(e) for e in m.planes]
    examined = 0
    for i, pm in enumerate(pmasks):
        for j, lm in enumerate(lmasks):
            examined += 1
            if (pm & lm).bit_count() == 1:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "point": labels_of(s, m.points[i]),
                        "plane": labels_of(s, m.planes[j]),
                        "common": labels_of(s, lines_of_mask(pm & lm)),
                    },
                    stats={"pairs_examined": examined},
                )
    return CheckReport(name, PASS, stats={"pairs_examined": examined})


def thm_uniqueness(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Two distinct same-kind elements share at most one line (both kinds)."""
    name = "thm_uniqueness"
    examined = 0
    for family, kind in ((m.points, "point"), (m.planes, "plane")):
        fmasks = [mask_of_lines(e) for e in family]
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                examined += 1
                common = fmasks[i] & fmasks[j]
                if common.bit_count() > 1:
                    return CheckReport(
                        name,
                        FAIL,
                        counterexample={
                            "kind": kind,
                            "element_a": labels_of(s, family[i]),
                            "element_b": labels_of(s, family[j]),
                            "common": labels_of(s, lines_of_mask(common)),
                        },
                        stats={"pairs_examined": examined},
                    )
    return CheckReport(name, PASS, stats={"pairs_examined": examined})


def thm_line_in_plane(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Two points on a plane have their common line in that plane; and dually."""
    name = "thm_line_in_plane"
    pmasks = [mask_of_lines(e) for e in m.points]
    lmasks = [mask_of_lines(e) for e in m.planes]
    examined = 0
    for pi, plane in enumerate(m.planes):
        on_plane = [i for i, pm in enumerate(pmasks) if pm & lmasks[pi]]
        for i, j in itertools.combinations(on_plane, 2):
            examined += 1
            common = pmasks[i] & pmasks[j]
            if common.bit_count() != 1:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "point_a": labels_of(s, m.points[i]),
                        "point_b": labels_of(s, m.points[j]),
                        "issue": "points_without_unique_common_line",
                    },
                    stats={"cases_examined": examined},
                )
            if not (common & lmasks[pi]):
                l = common.bit_length() - 1
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "point_a": labels_of(s, m.points[i]),
                        "point_b": labels_of(s, m.points[j]),
                        "plane": labels_of(s, plane),
                        "line": s.labels[l],
                        "issue": "common_line_not_in_plane",
                    },
                    stats={"cases_examined": examined},
                )
    for pi, point in enumerate(m.points):
        through = [i for i, lm in enumerate(lmasks) if lm & pmasks[pi]]
        for i, j in itertools.combinations(through, 2):
            examined += 1
            common = lmasks[i] & lmasks[j]
            if common.bit_count() != 1:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "plane_a": labels_of(s, m.planes[i]),
                        "plane_b": labels_of(s, m.planes[j]),
                        "issue": "planes_without_unique_common_line",
                    },
                    stats={"cases_examined": examined},
                )
            if not (common & pmasks[pi]):
                l = common.bit_length() - 1
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "plane_a": labels_of(s, m.planes[i]),
                        "plane_b": labels_of(s, m.planes[j]),
                        "point": labels_of(s, point),
                        "line": s.labels[l],
                        "issue": "common_line_not_through_point",
                    },
                    stats={"cases_examined": examined},
                )
    return CheckReport(name, PASS, stats={"cases_examined": examined})


def _noncollinear_point_triples(m: GeometryModel, pmasks: list[int]):
    for i, j, k in itertools.combinations(range(len(pmasks)), 3):
        if not (pmasks[i] & pmasks[j] & pmasks[k]):
            yield i, j, k


def thm_triangle(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Three non-collinear points form a triangle with a unique common plane."""
    name = "thm_triangle"
    try:
        classes = _labeled_class_masks(m)
    except (NotTwoClassesError, MissingElementError, LabelInconsistencyError) as e:
        return _dependency(name, e)
    masks = s.masks
    adj = s.adjacency
    pmasks = [mask_of_lines(e) for e in m.points]
    lmasks = [mask_of_lines(e) for e in m.planes]
    plane_index = {lm: idx for idx, lm in enumerate(lmasks)}
    examined = 0

    def fail(i, j, k, issue, **extra):
        ce = {
            "points": [
                labels_of(s, m.points[i]),
                labels_of(s, m.points[j]),
                labels_of(s, m.points[k]),
            ],
            "issue": issue,
        }
        ce.update(extra)
        return CheckReport(name, FAIL, counterexample=ce, stats={"cases_examined": examined})

    for i, j, k in _noncollinear_point_triples(m, pmasks):
        examined += 1
        sides = []
        for u, v in ((j, k), (k, i), (i, j)):
            common = pmasks[u] & pmasks[v]
            if common.bit_count() != 1:
                return fail(i, j, k, "points_without_unique_common_line")
            sides.append(common.bit_length() - 1)
        a, b, c = sides
        if len({a, b, c}) != 3:
            return fail(i, j, k, "side_lines_not_distinct")
        if not (adj[a, b] and adj[b, c] and adj[a, c]):
            return fail(i, j, k, "side_lines_not_pairwise_incident")
        for third, (u, v) in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
            key = (u, v) if u < v else (v, u)
            if not ((classes[key][1] >> third) & 1):
                return fail(
                    i,
                    j,
                    k,
                    "side_not_in_plane_class",
                    line=s.labels[third],
                    of_pair=labels_of(s, key),
                )
        pi_mask = masks[a] & masks[b] & masks[c]
        if pi_mask not in plane_index:
            return fail(i, j, k, "bracket_not_a_plane")
        through = [
            idx
            for idx, lm in enumerate(lmasks)
            if lm & pmasks[i] and lm & pmasks[j] and lm & pmasks[k]
        ]
        if through != [plane_index[pi_mask]]:
            return fail(
                i, j, k, "common_plane_not_unique", planes_through=len(through)
            )
    return CheckReport(name, PASS, stats={"cases_examined": examined})


def thm_tetrahedron(s: IncidenceStructure, m: GeometryModel) -> CheckReport:
    """Every triangle extends to a four-vertex figure with the six-line pattern.

    For each non-collinear point triple there must be a point off its
    plane whose three connecting edges complete six distinct lines,
    pairwise incident except the three opposite pairs.
    """
    name = "thm_tetrahedron"
    masks = s.masks
    adj = s.adjacency
    pmasks = [mask_of_lines(e) for e in m.points]
    examined = 0
    witness = None
    for i, j, k in _noncollinear_point_triples(m, pmasks):
        examined += 1
        sides = []
        for u, v in ((j, k), (k, i), (i, j)):
            common = pmasks[u] & pmasks[v]
            if common.bit_count() != 1:
                return CheckReport(
                    name,
                    FAIL,
                    counterexample={
                        "points": [labels_of(s, m.points[x]) for x in (i, j, k)],
                        "issue": "points_without_unique_common_line",
                    },
                    stats={"cases_examined": examined},
                )
            sides.append(common.bit_length() - 1)
        a, b, c = sides
        pi_mask = masks[a] & masks[b] & masks[c]
        completed = None
        for o, om in enumerate(pmasks):
            if om & pi_mask:
                continue  # vertex must avoid the base plane
            edges = []
            for v in (i, j, k):
                common = om & pmasks[v]
                if common.bit_count() != 1:
                    edges = None
                    break
                edges.append(common.bit_length() - 1)
            if edges is None:
                continue
            ah, bh, ch = edges
            six = (a, b, c, ah, bh, ch)
            if len(set(six)) != 6:
                continue
            skew_expected = {(0, 3), (1, 4), (2, 5)}
            ok = True
            for x, y in itertools.combinations(range(6), 2):
                incident = bool(adj[six[x], six[y]])
                if ((x, y) in skew_expected) == incident:
                    ok = False
                    break
            if ok:
                completed = (o, six)
                break
        if completed is None:
            return CheckReport(
                name,
                FAIL,
                counterexample={
                    "points": [labels_of(s, m.points[x]) for x in (i, j, k)],
                    "issue": "no_completing_vertex",
                },
                stats={"cases_examined": examined},
            )
        if witness is None:
            witness = {
                "base_points": [labels_of(s, m.points[x]) for x in (i, j, k)],
                "vertex": labels_of(s, m.points[completed[0]]),
                "six_lines": [s.labels[x] for x in completed[1]],
            }
    return CheckReport(
        name, PASS, witness_sample=witness, stats={"cases_examined": examined}
    )


STRUCTURE_THEOREMS = (
    thm_sigma_equivalence,
    thm_two_classes,
    thm_bracket_welldefined,
    thm_line_selfperp,
    thm_regulus_skew,
    thm_bracket_closed,
    thm_coherence,
    thm_mutual_membership,
)

MODEL_THEOREMS = (
    thm_triad_typing,
    thm_point_ne_plane,
    thm_pencil_intersection,
    thm_exchange,
    thm_not_singleton,
    thm_uniqueness,
    thm_line_in_plane,
    thm_triangle,
    thm_tetrahedron,
)


def run_theorem_suite(
    s: IncidenceStructure, m: Optional[GeometryModel] = None
) -> list[CheckReport]:
    """Run every theorem verifier; model-level ones derive a labeling if needed."""
    reports = [f(s) for f in STRUCTURE_THEOREMS]
    if m is None:
        try:
            m = coordinate_labels(s)
        except (NotTwoClassesError, LabelInconsistencyError) as e:
            reports.extend(_dependency(f.__name__, e) for f in MODEL_THEOREMS)
            return reports
    reports.extend(f(s, m) for f in MODEL_THEOREMS)
    return reports


# ---------------------------------------------------------------------------
# Derived-geometry battery (extension and alignment axioms over the model)


def vy_axioms(s: IncidenceStructure, m: GeometryModel) -> list[CheckReport]:
    """Eight extension/alignment checks over the model's points and planes.

    "Point P is on line l" means l is a member of P; a point and a plane
    are incident when they share a line.
    """
    pmasks = [mask_of_lines(e) for e in m.points]
    lmasks = [mask_of_lines(e) for e in m.planes]
    reports = []

    # E0: at least three points on every line.
    counts = [sum(1 for pm in pmasks if (pm >> l) & 1) for l in range(s.line_count)]
    bad = next((l for l, c in enumerate(counts) if c < 3), None)
    if bad is not None:
        reports.append(
            CheckReport(
                "vy_e0",
                FAIL,
                counterexample={"line": s.labels[bad], "points_on_line": counts[bad]},
                stats={"lines_examined": s.line_count},
            )
        )
    else:
        stats = {"lines_examined": s.line_count}
        if counts:
            stats["min_points_on_line"] = min(counts)
            stats["max_points_on_line"] = max(counts)
        reports.append(CheckReport("vy_e0", PASS, stats=stats))

    # E1: at least one line exists.
    if s.line_count >= 1:
        reports.append(CheckReport("vy_e1", PASS, stats={"lines": s.line_count}))
    else:
        reports.append(
            CheckReport("vy_e1", FAIL, counterexample={"reason": "no lines"}, stats={})
        )

    # E2: not all points on one line.
    if not pmasks:
        reports.append(
            CheckReport(
                "vy_e2", FAIL, counterexample={"reason": "no points"}, stats={}
            )
        )
    else:
        bad = None
        for l in range(s.line_count):
            if all((pm >> l) & 1 for pm in pmasks):
                bad = l
                break
        if bad is not None:
            reports.append(
                CheckReport(
                    "vy_e2",
                    FAIL,
                    counterexample={"line": s.labels[bad]},
                    stats={"points": len(pmasks)},
                )
            )
        else:
            reports.append(CheckReport("vy_e2", PASS, stats={"points": len(pmasks)}))

    # E3: for every plane, some point off it.  A plane with no points off it
    # includes the degenerate case of an empty point family.
    bad = None
    for j, lm in enumerate(lmasks):
        if all(pm & lm for pm in pmasks):
            bad = j
            break
    if bad is not None:
        reports.append(
            CheckReport(
                "vy_e3",
                FAIL,
                counterexample={"plane": labels_of(s, m.planes[bad])},
                stats={"planes": len(lmasks)},
            )
        )
    else:
        reports.append(CheckReport("vy_e3", PASS, stats={"planes": len(lmasks)}))

    # E3': two distinct planes share a line.
    bad = None
    for i, j in itertools.combinations(range(len(lmasks)), 2):
        if not (lmasks[i] & lmasks[j]):
            bad = (i, j)
            break
    if bad:
        reports.append(
            CheckReport(
                "vy_e3p",
                FAIL,
                counterexample={
                    "plane_a": labels_of(s, m.planes[bad[0]]),
                    "plane_b": labels_of(s, m.planes[bad[1]]),
                },
                stats={"planes": len(lmasks)},
            )
        )
    else:
        reports.append(CheckReport("vy_e3p", PASS, stats={"planes": len(lmasks)}))

    # A1 and A2: distinct points share exactly one line.
    a1_bad = a2_bad = None
    for i, j in itertools.combinations(range(len(pmasks)), 2):
        c = (pmasks[i] & pmasks[j]).bit_count()
        if c == 0 and a1_bad is None:
            a1_bad = (i, j)
        if c > 1 and a2_bad is None:
            a2_bad = (i, j)
        if a1_bad and a2_bad:
            break
    if a1_bad:
        reports.append(
            CheckReport(
                "vy_a1",
                FAIL,
                counterexample={
                    "point_a": labels_of(s, m.points[a1_bad[0]]),
                    "point_b": labels_of(s, m.points[a1_bad[1]]),
                },
                stats={"points": len(pmasks)},
            )
        )
    else:
        reports.append(CheckReport("vy_a1", PASS, stats={"points": len(pmasks)}))
    if a2_bad:
        reports.append(
            CheckReport(
                "vy_a2",
                FAIL,
                counterexample={
                    "point_a": labels_of(s, m.points[a2_bad[0]]),
                    "point_b": labels_of(s, m.points[a2_bad[1]]),
                },
                stats={"points": len(pmasks)},
            )
        )
    else:
        reports.append(CheckReport("vy_a2", PASS, stats={"points": len(pmasks)}))

    # A3: the line joining D on BC and E on CA meets AB.
    adj = s.adjacency
    examined = 0
    a3_report = None
    for i, j, k in _noncollinear_point_triples(m, pmasks):
        if a3_report:
            break
        sides = []
        for u, v in ((j, k), (k, i), (i, j)):
            common = pmasks[u] & pmasks[v]
            if common.bit_count() != 1:
                a3_report = CheckReport(
                    "vy_a3",
                    FAIL,
                    counterexample={
                        "points": [labels_of(s, m.points[x]) for x in (i, j, k)],
                        "issue": "points_without_unique_common_line",
                    },
                    stats={"cases_examined": examined},
                )
                break
            sides.append(common.bit_length() - 1)
        if a3_report:
            break
        a, b, c = sides
        on_a = [d for d, pm in enumerate(pmasks) if (pm >> a) & 1]
        on_b = [e for e, pm in enumerate(pmasks) if (pm >> b) & 1]
        for d in on_a:
            if a3_report:
                break
            for e in on_b:
                if d == e:
                    continue
                examined += 1
                common = pmasks[d] & pmasks[e]
                if common.bit_count() != 1:
                    a3_report = CheckReport(
                        "vy_a3",
                        FAIL,
                        counterexample={
                            "point_d": labels_of(s, m.points[d]),
                            "point_e": labels_of(s, m.points[e]),
                            "issue": "joining_line_not_unique",
                        },
                        stats={"cases_examined": examined},
                    )
                    break
                f = common.bit_length() - 1
                if f != c and not adj[f, c]:
                    a3_report = CheckReport(
                        "vy_a3",
                        FAIL,
                        counterexample={
                            "points": [labels_of(s, m.points[x]) for x in (i, j, k)],
                            "point_d": labels_of(s, m.points[d]),
                            "point_e": labels_of(s, m.points[e]),
                            "joining_line": s.labels[f],
                            "ab_line": s.labels[c],
                        },
                        stats={"cases_examined": examined},
                    )
                    break
    if a3_report is None:
        a3_report = CheckReport("vy_a3", PASS, stats={"cases_examined": examined})
    reports.append(a3_report)
    return reports


VY_NAMES = ("vy_e0", "vy_e1", "vy_e2", "vy_e3", "vy_e3p", "vy_a1", "vy_a2", "vy_a3")


def run_vy_battery(
    s: IncidenceStructure, m: Optional[GeometryModel] = None
) -> list[CheckReport]:
    """Run the eight derived-geometry checks, deriving a labeling if needed."""
    if m is None:
        try:
            m = coordinate_labels(s)
        except (NotTwoClassesError, LabelInconsistencyError) as e:
            return [_dependency(name, e) for name in VY_NAMES]
    return vy_axioms(s, m)


# ---------------------------------------------------------------------------
# Counterexample replay


def replay_theorem_counterexample(
    s: IncidenceStructure, report: CheckReport, m: Optional[GeometryModel] = None
) -> bool:
    """Re-evaluate a failing theorem report directly against the structure.

    Model-level reports need the same model they were produced against.
    """
    ce = report.counterexample
    if ce is None:
        raise ValueError(f"report {report.check_name} has no counterexample")
    name = report.check_name
    masks = s.masks
    adj = s.adjacency

    def idx(label):
        return s.index(label)

    def idxs(labels):
        return [s.index(x) for x in labels]

    def member(x, y, z):
        if x == y or not adj[x, y]:
            return False
        return bool(sigma_mask(s, x, y) & (1 << z))

    if name == "thm_sigma_equivalence":
        a, b, c = idxs(ce["triple"])
        vals = (member(b, c, a), member(c, a, b), member(a, b, c))
        return not (vals[0] == vals[1] == vals[2])
    if name == "thm_two_classes":
        from .axioms import _replay_not_two_classes

        return _replay_not_two_classes(s, ce)
    if name == "thm_bracket_welldefined":
        a, b = idxs(ce["pair"])
        c1, c2 = idx(ce["c1"]), idx(ce["c2"])
        sig = sigma_mask(s, a, b)
        inside = bool((sig >> c1) & 1 and (sig >> c2) & 1 and adj[c1, c2])
        base = masks[a] & masks[b]
        return inside and (base & masks[c1]) != (base & masks[c2])
    if name == "thm_line_selfperp":
        l = idx(ce["line"])
        return perp_mask(s, masks[l]) != 1 << l
    if name == "thm_regulus_skew":
        u, v, w = idxs(ce["triple"])
        x, y = idx(ce["m"]), idx(ce["n"])
        skew_triple = not (adj[u, v] or adj[v, w] or adj[u, w])
        B = masks[u] & masks[v] & masks[w]
        inside = bool((B >> x) & 1 and (B >> y) & 1)
        return skew_triple and inside and x != y and bool(adj[x, y])
    if name == "thm_bracket_closed":
        t = idxs(ce["triad"])
        B = _bracket_mask(s, t)
        return perp_mask(s, B) != B
    if name == "thm_coherence":
        p, q, r = idxs(ce["triple"])
        rep = idxs(ce["triad_with_equal_bracket"])
        same = _bracket_mask(s, (p, q, r)) == _bracket_mask(s, rep)
        rep_is_triad = any(
            member(*rot) for rot in ((rep[1], rep[2], rep[0]), (rep[2], rep[0], rep[1]), (rep[0], rep[1], rep[2]))
        )
        triple_is_triad = any(
            member(*rot) for rot in ((q, r, p), (p, r, q), (p, q, r))
        )
        return same and rep_is_triad and not triple_is_triad
    if name == "thm_mutual_membership":
        ta = idxs(ce["triad_a"])
        tb = idxs(ce["triad_b"])
        ba, bb = _bracket_mask(s, ta), _bracket_mask(s, tb)
        ma, mb = mask_of_lines(ta), mask_of_lines(tb)
        inside_ab = not (mb & ~ba)
        inside_ba = not (ma & ~bb)
        if ce["issue"] == "membership_not_symmetric":
            return inside_ab != inside_ba
        return inside_ab and inside_ba and ba != bb
    if m is None:
        raise ValueError(f"replay of {name} needs the model it was checked against")
    kinds = _element_kinds(m)
    pmask_by_lines = {e: mask_of_lines(e) for e in m.points + m.planes}
    if name == "thm_point_ne_plane":
        e = tuple(sorted(idxs(ce["element"])))
        return e in set(m.points) and e in set(m.planes)
    if name == "thm_not_singleton":
        p = tuple(sorted(idxs(ce["point"])))
        q = tuple(sorted(idxs(ce["plane"])))
        if p not in set(m.points) or q not in set(m.planes):
            return False
        return (pmask_by_lines[p] & pmask_by_lines[q]).bit_count() == 1
    if name == "thm_uniqueness":
        family = m.points if ce["kind"] == "point" else m.planes
        ea = tuple(sorted(idxs(ce["element_a"])))
        eb = tuple(sorted(idxs(ce["element_b"])))
        if ea == eb or ea not in set(family) or eb not in set(family):
            return False
        return (mask_of_lines(ea) & mask_of_lines(eb)).bit_count() > 1
    if name == "thm_line_in_plane":
        issue = ce["issue"]
        if issue == "common_line_not_in_plane":
            pa = mask_of_lines(idxs(ce["point_a"]))
            pb = mask_of_lines(idxs(ce["point_b"]))
            pl = mask_of_lines(idxs(ce["plane"]))
            l = idx(ce["line"])
            on_plane = bool(pa & pl) and bool(pb & pl)
            return on_plane and (pa & pb) == 1 << l and not ((pl >> l) & 1)
        if issue == "common_line_not_through_point":
            la = mask_of_lines(idxs(ce["plane_a"]))
            lb = mask_of_lines(idxs(ce["plane_b"]))
            pt = mask_of_lines(idxs(ce["point"]))
            l = idx(ce["line"])
            through = bool(la & pt) and bool(lb & pt)
            return through and (la & lb) == 1 << l and not ((pt >> l) & 1)
        pa = mask_of_lines(idxs(ce["point_a" if "point_a" in ce else "plane_a"]))
        pb = mask_of_lines(idxs(ce["point_b" if "point_b" in ce else "plane_b"]))
        return (pa & pb).bit_count() != 1
    if name == "thm_exchange":
        t = idxs(ce["triad"])
        issue = ce["issue"]
        if issue == "bracket_not_an_element":
            return _bracket_mask(s, t) not in kinds
        x, y = idx(ce["x"]), idx(ce["y"])
        B = _bracket_mask(s, t)
        inside = bool((B >> x) & 1 and (B >> y) & 1)
        if issue == "skew_pair_in_bracket":
            return inside and not adj[x, y]
        t_mask = mask_of_lines(t)
        if issue == "sigma_misses_triad":
            return inside and not (sigma_mask(s, x, y) & t_mask)
        pc, qc = _labeled_class_masks(m)[(min(x, y), max(x, y))]
        refined = pc if ce["kind"] == "point" else qc
        return inside and not (refined & t_mask)
    if name == "thm_triad_typing":
        t = idxs(ce["triad"])
        classes = _labeled_class_masks(m)

        def side(x, y, third):
            key = (x, y) if x < y else (y, x)
            got = classes.get(key)
            if got is None:
                return None
            if (got[0] >> third) & 1:
                return "point"
            if (got[1] >> third) & 1:
                return "plane"
            return None

        a, b, c = t
        sides = (side(b, c, a), side(c, a, b), side(a, b, c))
        return sides[0] is None or len(set(sides)) != 1
    if name == "thm_pencil_intersection":
        a, b = idxs(ce["pair"])
        dd = perp_mask(s, masks[a] & masks[b])
        pt = mask_of_lines(meet_point(m, a, b).lines)
        pl = mask_of_lines(join_plane(m, a, b).lines)
        pc, qc = _labeled_class_masks(m)[(min(a, b), max(a, b))]
        return (pt & pl) != dd or pc != (pt & ~dd) or qc != (pl & ~dd)
    raise ValueError(f"no replay registered for check {name!r}")
