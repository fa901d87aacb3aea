"""Self-verification suites over the enumerated mutation tree.

Every suite re-checks exact identities; there are no tolerances anywhere.
Per-triple work is independent, so the driver can fan out over a process
pool; results are merged in canonical triple order regardless of
scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .hull import boundary_hull, edge_affine_lengths
from .lattice import equivalent, normal_form
from .markov import (
    MarkovTriple,
    enumerate_triples,
    markov_partner_identity,
    mutate,
    reduce_to_root,
)
from .diagram import mutate_diagram, transfer_cut, rational_blowdown_diagram
from .polytope import build_polytope

__all__ = ["SuiteResult", "run_all", "default_workers"]

MUTATION_SUITE_BOUND = 1000


def default_workers() -> int:
    env = os.environ.get("ATF_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    checked: int
    detail: str = ""


def _check_markov(t: MarkovTriple) -> list[str]:
    bad = []
    if not t.coprime():
        bad.append(f"{t}: entries not pairwise coprime")
    for slot in range(3):
        if mutate(mutate(t, slot), slot) != t:
            bad.append(f"{t}: mutation not an involution at slot {slot}")
        if not markov_partner_identity(t, slot):
            bad.append(f"{t}: partner identity fails at slot {slot}")
    if not reduce_to_root(t).end().is_root():
        bad.append(f"{t}: descent does not reach the root")
    return bad


def _check_polytope(t: MarkovTriple) -> list[str]:
    report = build_polytope(t).verify()
    return [f"{t}: {k}" for k, ok in report.items() if k != "all" and not ok]


def _check_hull(t: MarkovTriple) -> list[str]:
    bad = []
    h = boundary_hull(t)
    if edge_affine_lengths(h) != t.sorted().entries():
        bad.append(f"{t}: hull edge lengths differ from the triple")
    report = h.verify()
    bad.extend(f"{t}: hull {k}" for k, ok in report.items() if k != "all" and not ok)
    return bad


def _check_mutation(t: MarkovTriple) -> list[str]:
    bad = []
    for slot in range(3):
        try:
            mutate_diagram(t, slot)
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            bad.append(f"{t}: mutate_diagram slot {slot}: {exc}")
    # round trip: transfer then transfer back is the identity up to equivalence
    d = rational_blowdown_diagram(t)
    d1 = transfer_cut(d, 0, "left")
    back = transfer_cut(d1, _flipped_node(d1, d, 0), "right")
    ok, _ = equivalent(back.polygon, d.polygon)
    if not ok:
        bad.append(f"{t}: transfer round trip is not the identity")
    return bad


def _flipped_node(d1, d0, which: int) -> int:
    # the transferred node: eigen reversed, anchor still on the eigenline
    e = d0.nodes[which].eigen
    base = d0.anchor_point(which)
    for i in range(len(d1.nodes)):
        n = d1.nodes[i]
        if n.eigen == -e and e.cross(d1.anchor_point(i) - base) == 0:
            return i
    raise AssertionError("transferred node not found")


def _check_one(args) -> tuple[str, list[str]]:
    t, with_mutation = args
    bad = []
    bad += _check_markov(t)
    bad += _check_polytope(t)
    bad += _check_hull(t)
    if with_mutation:
        bad += _check_mutation(t)
    return str(t), bad


def _pairwise_distinct(triples) -> list[str]:
    forms = {}
    for t in triples:
        h = boundary_hull(t)
        nf = normal_form(h.hull)
        key = tuple(v.as_tuple() for v in nf.vertices)
        if key in forms:
            return [f"hulls of {forms[key]} and {t} are equivalent"]
        forms[key] = t
    return []


def run_all(max_entry: int, workers: int | None = None) -> list[SuiteResult]:
    """Run every per-triple suite over enumerate(max_entry)."""
    if workers is None:
        workers = default_workers()
    triples = enumerate_triples(max_entry)
    jobs = [(t, t.c <= MUTATION_SUITE_BOUND) for t in triples]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_triple = list(pool.map(_check_one, jobs))
    else:
        per_triple = [_check_one(j) for j in jobs]
    failures = [msg for _, msgs in per_triple for msg in msgs]

    results = [
        SuiteResult(
            suite="per_triple_invariants",
            passed=not failures,
            checked=len(triples),
            detail="; ".join(failures[:5]),
        )
    ]
    small = [t for t in triples if t.c <= MUTATION_SUITE_BOUND]
    distinct_fail = _pairwise_distinct(small)
    results.append(
        SuiteResult(
            suite="pairwise_hull_distinctness",
            passed=not distinct_fail,
            checked=len(small),
            detail="; ".join(distinct_fail),
        )
    )
    return results
