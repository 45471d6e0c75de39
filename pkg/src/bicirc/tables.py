"""Re-derivation of the published quotient tables and lemma suites.

Each row of the cubic and pentavalent tables names a graph, its expected
automorphism group order, the quotient graph it reduces to, and the order
of the normal subgroup producing that quotient.  A row passes when the
computed reduction report contains a candidate with the listed subgroup
order whose quotient is isomorphic to the listed graph, and the report's
verdict holds (every maximal quotient is a basic catalog graph).

Two rows carry published automorphism groups that disagree with the
computed ones (the point/hyperplane graphs admit a duality on top of the
collineations); those orders are recorded and flagged, never asserted.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .autgrp import are_isomorphic, automorphism_group, is_arc_transitive
from .classify import (
    BicirculantWitness,
    census,
    is_bicirculant,
    is_circulant,
    reduce_graph,
)
from .families import (
    build_spec,
    gamma_nk_valid_r,
    gen_cay_pe,
    gen_g2p,
    singer_witness,
)
from .graphs import basic_props, complement, quotient_graph, standard_double_cover
from .perm import Partition


@dataclass(frozen=True)
class TableRow:
    label: str
    spec: str
    quotient_spec: str
    n_order: int
    aut_order: int | None = None  # asserted when set
    recorded_value: str | None = None  # published value that is only recorded
    singer: tuple | None = None  # (d, q) for a projective witness


CUBIC_ROWS = (
    TableRow("K4", "K(4)", "K(4)", 1, aut_order=24),
    TableRow("K33", "Knn(3)", "Knn(3)", 1, aut_order=72),
    TableRow("K44-4K2", "KnnMinus(4)", "KnnMinus(4)", 1, aut_order=48),
    TableRow(
        "Heawood",
        "BPG(3,2)",
        "BPG(3,2)",
        1,
        recorded_value="PGL(3,2) of order 168",
        singer=(3, 2),
    ),
    TableRow("GP(5,2)", "GP(5,2)", "Petersen", 1, aut_order=120),
    TableRow("GP(8,3)", "GP(8,3)", "KnnMinus(4)", 2, aut_order=96),
    TableRow("GP(10,2)", "GP(10,2)", "Petersen", 2, aut_order=120),
    TableRow("GP(10,3)", "GP(10,3)", "Petersen", 2, aut_order=240),
    TableRow("GP(12,5)", "GP(12,5)", "KnnMinus(4)", 3, aut_order=144),
    TableRow("GP(24,5)", "GP(24,5)", "KnnMinus(4)", 6, aut_order=288),
    TableRow("Gamma(13,3)", "Gamma(13,3,3)", "G2p(13,3)", 1, aut_order=78),
)

PENTAVALENT_ROWS = (
    TableRow("K6", "K(6)", "K(6)", 1, aut_order=720),
    TableRow("K66-6K2", "KnnMinus(6)", "KnnMinus(6)", 1, aut_order=1440),
    TableRow(
        "B(PG(2,4))",
        "BPG(3,4)",
        "BPG(3,4)",
        1,
        recorded_value="printed as PGammaL(3,2):S2",
        singer=(3, 4),
    ),
    TableRow("Clebsch", "Clebsch", "Clebsch", 1, aut_order=1920),
    TableRow("icosahedral BC6", "BC(6;[1,5];[0,1,5];[2,4])", "K(6)", 2, aut_order=120),
    TableRow("BC12", "BC(12;;0,1,2,4,9;)", "KnnMinus(6)", 2, aut_order=480),
    TableRow("BC24", "BC(24;;0,1,3,11,20;)", "KnnMinus(6)", 4, aut_order=960),
    TableRow("Gamma(11,5)", "Gamma(11,5,3)", "G2p(11,5)", 1),
)

# extra dihedral samples: composite n, quotient by the subgroup of order n/p
CUBIC_DIHEDRAL_EXTRA = TableRow(
    "Gamma(21,3)", "Gamma(21,3,4)", "G2p(7,3)", 3, aut_order=126
)
PENTAVALENT_DIHEDRAL_EXTRA = TableRow("Gamma(55,5)", "Gamma(55,5,16)", "G2p(11,5)", 5)


def check_row(row, cfg):
    """Return (ok, message) for one table row."""
    graph, witness = build_spec(row.spec)
    if row.singer is not None:
        bw = BicirculantWitness.from_perm(singer_witness(*row.singer))
    elif witness is not None and witness.cycle_type == (graph.n // 2, graph.n // 2):
        bw = BicirculantWitness.from_perm(witness.perm)
    else:
        bw = None
    report = reduce_graph(graph, witness=bw, cap=cfg.cap, node_budget=cfg.budget)
    notes = []
    ok = True
    if row.aut_order is not None:
        if report.aut_order != row.aut_order:
            ok = False
            notes.append(f"aut order {report.aut_order} != {row.aut_order}")
    elif row.recorded_value is not None:
        notes.append(
            f"computed |Aut| = {report.aut_order}, published {row.recorded_value}"
            " (recorded, not asserted)"
        )
    else:
        notes.append(f"computed |Aut| = {report.aut_order} (no published value)")
    expected_quotient, _ = build_spec(row.quotient_spec)
    hits = [
        c
        for c in report.candidates
        if c.subgroup_order == row.n_order
        and c.quotient.n == expected_quotient.n
        and are_isomorphic(c.quotient, expected_quotient)
    ]
    if not hits:
        ok = False
        notes.append(
            f"no candidate with |N| = {row.n_order} and quotient {row.quotient_spec};"
            f" saw {[(c.subgroup_order, c.identified) for c in report.candidates]}"
        )
    else:
        cand = hits[0]
        if not cand.cover_ok:
            ok = False
            notes.append("candidate is not a multiplicity-r cover")
        else:
            notes.append(f"r = {cand.r}")
    if not report.verdict:
        ok = False
        notes.append("reduction verdict failed")
    return ok, "; ".join(notes)


def _run_rows(title, rows, cfg, out):
    all_ok = True
    for row in rows:
        ok, message = check_row(row, cfg)
        all_ok = all_ok and ok
        status = "pass" if ok else "FAIL"
        print(f"[{status}] {title} {row.label}: {message}", file=out)
    return all_ok


def verify_table_cubic(cfg, out=sys.stdout):
    rows = CUBIC_ROWS + (CUBIC_DIHEDRAL_EXTRA,)
    return _run_rows("table-cubic", rows, cfg, out)


def verify_table_pentavalent(cfg, out=sys.stdout):
    ok = _run_rows(
        "table-pentavalent",
        PENTAVALENT_ROWS + (PENTAVALENT_DIHEDRAL_EXTRA,),
        cfg,
        out,
    )
    # no dihedral instance exists at n = 25: no unit satisfies the congruence,
    # consistent with the requirement of a prime divisor p with 5 | p - 1
    empty = gamma_nk_valid_r(25, 5) == []
    status = "pass" if empty else "FAIL"
    print(
        f"[{status}] table-pentavalent Gamma(25,5): no valid parameter exists"
        " (vacuous row)",
        file=out,
    )
    return ok and empty


def _check(out, all_ok, label, condition, detail=""):
    status = "pass" if condition else "FAIL"
    suffix = f": {detail}" if detail else ""
    print(f"[{status}] {label}{suffix}", file=out)
    return all_ok and condition


def verify_lemmas(cfg, out=sys.stdout):
    ok = True

    # two-orbit graphs over odd primes: circulant exactly for even subgroup order
    for p in (5, 7, 11, 13):
        divisors = [r for r in range(2, p) if (p - 1) % r == 0]
        got = {}
        for r in divisors:
            graph, witness = gen_g2p(p, r)
            cyc = is_circulant(graph, node_budget=cfg.budget)
            bic = is_bicirculant(graph, node_budget=cfg.budget)
            got[r] = (cyc is not None, bic is not None)
        expect = {r: (r % 2 == 0, True) for r in divisors}
        ok = _check(
            out,
            ok,
            f"lemma G(2*{p},r) circulant iff r even, always bicirculant",
            got == expect,
            str(got),
        )

    # complete bipartite minus a matching: circulant exactly for odd n
    for n, want in ((4, False), (5, True), (6, False)):
        found = is_circulant(build_spec(f"KnnMinus({n})")[0], node_budget=cfg.budget)
        ok = _check(
            out, ok, f"lemma KnnMinus({n}) circulant == {want}", (found is not None) == want
        )

    # sporadics are not circulants; complements inherit both predicates
    for name in ("H(2,4)", "BH11prime", "Clebsch", "Petersen"):
        graph, _ = build_spec(name)
        direct = is_circulant(graph, node_budget=cfg.budget)
        ok = _check(out, ok, f"lemma {name} is not a circulant", direct is None)
    for name in ("Petersen", "Clebsch", "KnnMinus(5)", "K(6)"):
        graph, _ = build_spec(name)
        co = complement(graph)
        same_circ = (is_circulant(graph, node_budget=cfg.budget) is None) == (
            is_circulant(co, node_budget=cfg.budget) is None
        )
        same_bic = (is_bicirculant(graph, node_budget=cfg.budget) is None) == (
            is_bicirculant(co, node_budget=cfg.budget) is None
        )
        ok = _check(out, ok, f"lemma complement closure for {name}", same_circ and same_bic)

    # odd-order graphs are never bicirculants
    for name in ("K(7)", "CayPE(13,4)"):
        graph, _ = build_spec(name)
        ok = _check(
            out,
            ok,
            f"lemma {name} has odd order, not a bicirculant",
            is_bicirculant(graph, node_budget=cfg.budget) is None,
        )

    # the 16-vertex sporadics are bicirculants through order-8 elements
    for name in ("Clebsch", "H(2,4)"):
        graph, _ = build_spec(name)
        bw = is_bicirculant(graph, node_budget=cfg.budget)
        ok = _check(
            out,
            ok,
            f"lemma {name} is a bicirculant via an order-8 element",
            bw is not None and bw.perm.order() == 8,
        )

    # doubling a circulant gives a bicirculant; quotienting the double of a
    # non-bipartite circulant by its fibre pairs returns the graph, r = 1
    for spec in ("CayCyc(5;[1,4])", "K(5)", "CayPE(13,4)"):
        graph, _ = build_spec(spec)
        double = standard_double_cover(graph)
        bw = is_bicirculant(double, node_budget=cfg.budget)
        ok = _check(out, ok, f"lemma double cover of {spec} is a bicirculant", bw is not None)
        pairs = Partition.from_blocks(
            [[x, graph.n + x] for x in range(graph.n)], double.n
        )
        quot, cover = quotient_graph(double, pairs)
        ok = _check(
            out,
            ok,
            f"lemma double cover of {spec} quotients back, r = 1",
            cover.is_r_cover and cover.r == 1 and are_isomorphic(quot, graph),
        )

    # the double cover of the Petersen graph is GP(10,3)
    pet, _ = build_spec("Petersen")
    gp103, _ = build_spec("GP(10,3)")
    ok = _check(
        out,
        ok,
        "lemma double cover of Petersen is GP(10,3)",
        are_isomorphic(standard_double_cover(pet), gp103),
    )
    return ok


CUBIC_CENSUS_SPECS = (
    "K(4)",
    "Knn(3)",
    "GP(4,1)",
    "GP(5,2)",
    "GP(8,3)",
    "GP(10,2)",
    "GP(10,3)",
    "GP(12,5)",
    "BPG(3,2)",
)


def verify_census(cfg, out=sys.stdout):
    """Cubic census on up to 24 vertices must match the classification list
    restricted to that size, and every member must reduce with r = 1."""
    ok = True
    entries = census(12, 3, jobs=cfg.jobs, node_budget=cfg.budget)
    cubic = [e for e in entries if basic_props(e.graph).valency == 3]
    matched = []
    for entry in cubic:
        for spec in CUBIC_CENSUS_SPECS:
            expected, _ = build_spec(spec)
            if entry.graph.n == expected.n and are_isomorphic(entry.graph, expected):
                matched.append(spec)
                break
        else:
            matched.append(f"UNEXPECTED {entry.frame}")
    ok = _check(
        out,
        ok,
        "census cubic <= 24 vertices matches the classification",
        sorted(matched) == sorted(CUBIC_CENSUS_SPECS),
        f"found {sorted(matched)}",
    )
    for entry, name in zip(cubic, matched):
        report = reduce_graph(entry.graph, cap=cfg.cap, node_budget=cfg.budget)
        good = report.verdict and all(
            c.r == 1 for c in report.candidates if c.maximal
        )
        ok = _check(out, ok, f"census {name} reduces with r = 1", good)
    return ok
