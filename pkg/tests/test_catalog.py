"""Catalog entries: construction facts, chart combinatorics, restriction,
basis-change invariance, and the documented mutation controls."""

import random
from fractions import Fraction

import pytest

from diagres.catalog import (build_affine_line, build_cycle, build_nodal_conic,
                             build_nodal_conic_product, documented_mutations,
                             mutation_flips, restrict_complex, verify_chart_jobs,
                             verify_entry)
from diagres.catalog.entries import classify_chart
from diagres.complexes import (ChainComplex, DiagonalSpec, InputDataError,
                               check_differential, verify_diagonal_qiso)
from diagres.matrices import identity_matrix, mat_mul
from diagres.polyring import RingMap, ring
from diagres.witness import verify_witness


def test_affine_entry_matches_expected_matrices():
    from diagres.matrices import mat_to_strings
    entry = build_affine_line()
    cx = entry.complex
    assert {i: cx.rank(i) for i in cx.degrees()} == {-1: 1, 0: 4, 1: 4, 2: 1}
    assert mat_to_strings(cx.diff(2)) == [["0"], ["x2"], ["-x1"], ["1"]]
    assert mat_to_strings(cx.diff(1)) == [
        ["0", "x1", "x2", "0"],
        ["x1 - x2", "0", "0", "0"],
        ["-1", "1", "0", "-x2"],
        ["1", "0", "1", "x1"],
    ]
    assert mat_to_strings(cx.diff(0)) == [["1", "-1", "-x1", "-x2"]]


def test_conic_entry_block_structure():
    """The bottom differential carries the two connecting units and the
    projection/section rows of the two ideal-sheaf summands."""
    from diagres.matrices import mat_to_strings
    entry = build_nodal_conic()
    assert mat_to_strings(entry.complex.diff(0)) == [
        ["1", "-1", "-x1", "-y1", "-x2", "-y2", "0", "0", "0", "0", "0"],
        ["1", "0", "0", "0", "0", "0", "-1", "-x1", "-y1", "-x2", "-y2"],
    ]


def test_adjacent_chart_section_block():
    """Degree-0 block of the adjacent-chart map: [[1, -u], [-y, 1]]."""
    from diagres.matrices import mat_to_strings
    cat = build_cycle(3)
    adj = next(j for j in cat.chart_jobs if j.kind == "adjacent")
    d1 = adj.complex.diff(1)
    block = [row[:2] for row in mat_to_strings(d1)[:2]]
    assert block == [["1", "-u"], ["-y", "1"]]
    # torus diagonal as frozen data
    assert [str(p) for p in adj.diagonal.ideal] == ["x", "v", "y*u - 1"]


def test_catalog_complexes_pass_check_differential():
    for entry in (build_affine_line(), build_nodal_conic(),
                  build_nodal_conic_product()):
        assert check_differential(entry.complex), entry.name
    cat = build_cycle(3)
    seen = set()
    for job in cat.chart_jobs:
        if id(job.complex) in seen:
            continue
        seen.add(id(job.complex))
        assert check_differential(job.complex)


def test_entries_verify():
    for entry in (build_affine_line(), build_nodal_conic(),
                  build_nodal_conic_product()):
        rep = verify_entry(entry)
        assert rep.passed, (entry.name, rep.first_failure())


def test_minimized_and_raw_verdicts_agree():
    entry = build_nodal_conic()
    a = verify_diagonal_qiso(entry.complex, entry.diagonal, pre_minimize=True)
    b = verify_diagonal_qiso(entry.complex, entry.diagonal, pre_minimize=False)
    assert a.passed and b.passed


def test_chart_classification_counts():
    for n in (3, 4, 5, 7):
        counts = {"diagonal": 0, "adjacent": 0, "distant": 0}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                counts[classify_chart(i, j, n)] += 1
        assert counts == {"diagonal": n, "adjacent": 2 * n,
                          "distant": n * n - 3 * n}


def test_build_cycle_structure():
    cat = build_cycle(4)
    assert len(cat.chart_jobs) == 16
    kinds = [j.kind for j in cat.chart_jobs]
    assert kinds.count("diagonal") == 4
    assert kinds.count("adjacent") == 8
    assert kinds.count("distant") == 4
    distant = [j for j in cat.chart_jobs if j.kind == "distant"]
    assert all(j.complex.is_zero() for j in distant)
    assert all(j.expectation == "exact_everywhere" for j in distant)
    with pytest.raises(InputDataError):
        build_cycle(2)


def test_cycle_charts_verify_and_witness_emits_bound():
    cat = build_cycle(3)
    reports = verify_chart_jobs(cat.chart_jobs)
    assert len(reports) == 9
    assert all(r.passed for r in reports)
    wrep = verify_witness(cat.witness, chart_suite_passed=True)
    assert wrep.passed
    assert any("Rdim(D^bCoh(I_3)) <= 1" in m for m in wrep.messages)


def test_restrict_identity():
    entry = build_affine_line()
    rng = entry.ring
    ident = RingMap(rng, rng, [rng.var(v) for v in rng.names])
    assert restrict_complex(entry.complex, ident) == entry.complex


def test_restrict_conic_to_affine_chart():
    """Setting y1 = y2 = 0 recovers the affine-line diagonal at degree 0.

    Entrywise substitution of a complex of frees computes the derived
    restriction along the chart inclusion; since the chart is a closed
    non-flat piece, periodic torsion terms appear in odd positive degrees.
    The affine-line content survives exactly: the restricted augmentation
    still identifies degree-0 homology with the affine diagonal, and
    nothing sits below it.
    """
    entry = build_nodal_conic()
    target = ring(["x1", "x2"], field=entry.ring.field)
    rmap = RingMap(entry.ring, target,
                   [target.var("x1"), target.zero(),
                    target.var("x2"), target.zero()])
    restricted = restrict_complex(entry.complex, rmap)
    aug = [rmap.apply(p) for p in entry.diagonal.augmentation]
    spec = DiagonalSpec(ideal=[target.parse("x1-x2")], degree=0,
                        augmentation=aug, window=(-1, 0))
    assert verify_diagonal_qiso(restricted, spec).passed
    # the derived correction terms are really there (degree 1)
    from diagres.complexes import homology_is_zero_at
    assert not homology_is_zero_at(restricted, 1)


def test_restrict_rejects_incompatible_substitution():
    entry = build_nodal_conic()
    rng = entry.ring
    bad = RingMap(rng, rng, [rng.var("x1"), rng.var("x1"),
                             rng.var("x2"), rng.var("y2")])
    with pytest.raises(InputDataError):
        restrict_complex(entry.complex, bad)  # x1*y1 -> x1^2 is not in J


def test_verdict_invariant_under_scalar_conjugation():
    """Conjugating differentials by random invertible scalar matrices (and
    transporting the augmentation row) does not change the verdict.

    The random basis changes are products of elementary operations, which
    keeps the conjugated matrices sparse enough to verify quickly without
    weakening the statement.
    """
    entry = build_nodal_conic()
    cx, dspec = entry.complex, entry.diagonal
    rng = entry.ring
    rand = random.Random(31)

    def random_invertible(n):
        """(Q, Q^-1) as a product of a few elementary matrices."""
        from diagres.bimodcalc import invert_matrix, mat_mul_scalar, _identity
        from diagres.scalars import QQ
        q = _identity(QQ, n)
        for _ in range(min(6, n)):
            kind = rand.choice(("add", "scale", "swap"))
            e = _identity(QQ, n)
            i, j = rand.randrange(n), rand.randrange(n)
            if kind == "add" and i != j:
                e[i][j] = Fraction(rand.choice((-2, -1, 1, 2)))
            elif kind == "scale":
                e[i][i] = Fraction(rand.choice((-1, 2, -2)))
            elif kind == "swap" and i != j:
                e[i][i] = e[j][j] = QQ.zero
                e[i][j] = e[j][i] = QQ.one
            q = mat_mul_scalar(QQ, e, q)
        return q, invert_matrix(QQ, q)

    for _ in range(10):
        qs, qinvs = {}, {}
        for i in cx.degrees():
            qs[i], qinvs[i] = random_invertible(cx.rank(i))

        def to_poly(m):
            return [[rng.const(x) for x in row] for row in m]

        diffs = {}
        for i in cx.degrees():
            if not cx.rank(i) or not cx.rank(i - 1):
                continue
            diffs[i] = mat_mul(mat_mul(to_poly(qs[i - 1]), cx.diff(i), rng),
                               to_poly(qinvs[i]), rng)
        conj = ChainComplex(rng, dict(cx.ranks), diffs, check=False)
        aug = [sum((a * b for a, b in zip(dspec.augmentation, col)), rng.zero())
               for col in zip(*to_poly(qinvs[dspec.degree]))]
        spec = DiagonalSpec(list(dspec.ideal), dspec.degree, aug, dspec.window)
        assert verify_diagonal_qiso(conj, spec).passed


def test_catalog_builds_are_reproducible():
    """Two independent builds agree matrix for matrix."""
    a = build_nodal_conic()
    b = build_nodal_conic()
    assert a.complex == b.complex
    assert [str(p) for p in a.diagonal.augmentation] == \
        [str(p) for p in b.diagonal.augmentation]


def test_exported_entry_reverifies_from_job_document():
    """Catalog -> job file -> parse -> verify round trip."""
    import json
    from diagres.jobio import emit_job, job_document, parse_job
    entry = build_nodal_conic()
    doc = parse_job(json.loads(emit_job(
        job_document(entry.name, entry.ring, entry.complex, entry.diagonal))))
    assert verify_diagonal_qiso(doc.complexes["total"], doc.diagonal).passed


def test_cone_of_identity_exact_for_catalog_complexes():
    """cone(id) collapses to nothing for every catalog complex."""
    from diagres.complexes import ChainMap, cone, minimize
    complexes = [build_affine_line().complex, build_nodal_conic().complex,
                 build_nodal_conic_product().complex]
    cat = build_cycle(3)
    seen = set()
    for job in cat.chart_jobs:
        if id(job.complex) not in seen and not job.complex.is_zero():
            seen.add(id(job.complex))
            complexes.append(job.complex)
    for cx in complexes:
        ident = ChainMap(cx, cx, {i: identity_matrix(cx.ring, cx.rank(i))
                                  for i in cx.degrees()}, check=False)
        collapsed, _ = minimize(cone(ident))
        assert collapsed.is_zero()


def test_documented_mutations_flip():
    cases = []
    affine = build_affine_line()
    cases += [("affine-line", affine.complex, affine.diagonal)]
    conic = build_nodal_conic()
    cases += [("nodal-conic", conic.complex, conic.diagonal)]
    product = build_nodal_conic_product()
    cases += [("nodal-conic-product", product.complex, product.diagonal)]
    cat = build_cycle(3)
    diag = next(j for j in cat.chart_jobs if j.kind == "diagonal")
    adj = next(j for j in cat.chart_jobs if j.kind == "adjacent")
    cases += [("cycle-diagonal-chart", diag.complex, diag.diagonal),
              ("cycle-adjacent-chart", adj.complex, adj.diagonal)]
    for name, cx, dspec in cases:
        muts = documented_mutations(name)
        assert len(muts) == 5, name
        for m in muts:
            assert mutation_flips(cx, dspec, m), (name, m.name)
