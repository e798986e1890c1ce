"""Catalog entries: affine line, nodal conic, cycle of projective lines.

Every complex is generated by the fixed conventions (iterated-syzygy
models, cone = [[-d,0],[f,d]], shift sign (-1)^s), so the matrices are
reproducible byte for byte.  Augmentation rows are frozen data: they were
derived once by solving the well-definedness constraints over the exact
field and are locked in the test suite.

Truncation: over the singular rings all resolutions are infinite and
periodic; target models carry TARGET_LEN degrees and source models one
less, which confines truncation junk to degrees >= 4.  Every verdict over
these rings is claimed only inside the recorded window [-1, 3].
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Optional

from ..complexes import (ChainComplex, DiagonalSpec, InputDataError,
                         block_map, check_differential, cone, cone_inclusion,
                         direct_sum, exact_everywhere, map_sub, shift,
                         verify_diagonal_qiso, zero_complex)
from ..groebner import Submodule, member
from ..matrices import mat_map
from ..polyring import QuotientRing, RingMap, ring
from ..report import VerificationReport, report_from_qiso
from ..resolutions import lift_module_map, resolve_cyclic, totalize_chain, truncate
from ..scalars import QQ, Field, field_spec_str
from ..witness import (ConeCertificate, DeclaredSummand, GenerationWitness,
                       GeneratorDecl, WitnessStep)
from .builders import (SOURCE_LEN, TARGET_LEN, WINDOW_HI, adjacent_chart_ring,
                       conic_ring, ideal_sheaf_model, inclusion_of_truncation,
                       negate_map, parse_row, section_into_ideal_sheaf,
                       skyscraper_connecting_map, skyscraper_projection)

# Frozen augmentation rows (derived over the rationals; coefficients are
# field-independent integers, so the same strings serve every field).
AFFINE_AUG = ("0", "1", "0", "0")
CONIC_AUG = ("0", "0", "-x1", "0", "-x1", "0", "1", "x1", "0", "x1", "0")
PRODUCT_AUG = ("0", "-1", "x1", "0", "x1", "0")
ADJACENT_AUG = ("y", "1")
DIAG_CHART_AUG = ("0", "0", "-x1", "0", "-x1", "0", "x1", "y1", "1", "x1", "0", "x1", "0")

SINGULAR_WINDOW = (-1, WINDOW_HI)


@dataclass
class CatalogEntry:
    name: str
    ring: QuotientRing
    complex: ChainComplex
    diagonal: DiagonalSpec
    witness: Optional[GenerationWitness]
    notes: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not check_differential(self.complex):
            raise InputDataError(f"{self.name}: d*d != 0 at load time")


@dataclass
class ChartJob:
    chart: tuple
    kind: str                  # 'diagonal' | 'adjacent' | 'distant'
    ring: QuotientRing
    complex: ChainComplex
    expectation: str           # 'qiso_to_diagonal' | 'exact_everywhere'
    diagonal: Optional[DiagonalSpec]
    window: tuple
    notes: list = dc_field(default_factory=list)


@dataclass
class CycleCatalog:
    n: int
    chart_jobs: list
    witness: GenerationWitness
    notes: list = dc_field(default_factory=list)


def classify_chart(i: int, j: int, n: int) -> str:
    if i == j:
        return "diagonal"
    if (i - j) % n in (1, n - 1):
        return "adjacent"
    return "distant"


# ---------------------------------------------------------------------------
# affine line


def build_affine_line(field: Field = QQ) -> CatalogEntry:
    """Two-object generation of the affine diagonal; everything is finite."""
    rng = ring(("x1", "x2"), field=field)
    x1, x2 = rng.var("x1"), rng.var("x2")
    plane = resolve_cyclic(rng, [], TARGET_LEN)
    origin = resolve_cyclic(rng, [x1, x2], TARGET_LEN)
    proj = lift_module_map(plane, origin, [[rng.one()]])
    ideal_sheaf = ideal_sheaf_model(proj)
    sec1 = section_into_ideal_sheaf(plane, proj, x1)
    sec2 = section_into_ideal_sheaf(plane, proj, x2)
    origin_shifted = shift(origin, -1)
    connecting = skyscraper_connecting_map(proj, origin_shifted)
    psi = block_map([plane, origin_shifted], [ideal_sheaf],
                    {(0, 0): map_sub(sec1, sec2), (0, 1): connecting},
                    check=False)
    total = cone(psi)
    dspec = DiagonalSpec(
        ideal=[rng.parse("x1-x2")], degree=0,
        augmentation=parse_row(rng, AFFINE_AUG))
    witness = GenerationWitness(
        generators=[
            GeneratorDecl("O_plane", "product"),
            GeneratorDecl("O_origin", "product"),
            GeneratorDecl("ideal_origin", "weakly_product",
                          ConeCertificate("O_plane", "O_origin", -1)),
        ],
        steps=[
            WitnessStep(None, ideal_sheaf,
                        [DeclaredSummand("ideal_origin", 0, 1, ideal_sheaf)]),
            WitnessStep(cone_inclusion(psi), total,
                        [DeclaredSummand("O_plane", 1, 1, plane),
                         DeclaredSummand("O_origin", 0, 1, origin)]),
        ],
        claimed_time=1,
        final_complex=total,
        final_diagonal=dspec,
        conclusion="Rouquier dimension of the affine line category <= 1",
    )
    notes = [
        "matrices generated from the Koszul model and the fixed cone/shift "
        "conventions; two differentials carry the opposite global sign from "
        "the hand-drawn presentation (the shifted cone negates its source), "
        "namely d_0 = (1,-1,-x1,-x2) and the column (0,-x2,x1)",
        "augmentation row projects onto the structure-sheaf slot of the "
        "ideal-sheaf model",
    ]
    return CatalogEntry("affine-line", rng, total, dspec, witness, notes)


# ---------------------------------------------------------------------------
# nodal conic


def _conic_models(rng: QuotientRing):
    x1, y1, x2, y2 = (rng.var(v) for v in rng.names)
    kx = resolve_cyclic(rng, [y1, y2], TARGET_LEN)
    ky = resolve_cyclic(rng, [x1, x2], TARGET_LEN)
    k0 = resolve_cyclic(rng, [x1, y1, x2, y2], TARGET_LEN)
    return kx, ky, k0


def build_nodal_conic(field: Field = QQ) -> CatalogEntry:
    """Length-1 generation of the conic diagonal by weakly product objects."""
    rng = conic_ring(field)
    x1, y1, x2, y2 = (rng.var(v) for v in rng.names)
    kx, ky, k0 = _conic_models(rng)
    px = skyscraper_projection(kx, k0)
    py = skyscraper_projection(ky, k0)
    ix, iy = ideal_sheaf_model(px), ideal_sheaf_model(py)
    sx1 = section_into_ideal_sheaf(kx, px, x1)
    sx2 = section_into_ideal_sheaf(kx, px, x2)
    sy1 = section_into_ideal_sheaf(ky, py, y1)
    sy2 = section_into_ideal_sheaf(ky, py, y2)
    k0m = shift(truncate(k0, SOURCE_LEN), -1)
    dx = skyscraper_connecting_map(px, k0m)
    dy = skyscraper_connecting_map(py, k0m)
    psi = block_map([sx1.src, k0m, sy1.src], [ix, iy], {
        (0, 0): map_sub(sx1, sx2), (0, 1): dx,
        (1, 1): dy, (1, 2): map_sub(sy1, sy2),
    }, check=False)
    total = cone(psi)
    dspec = DiagonalSpec(
        ideal=[rng.parse("x1-x2"), rng.parse("y1-y2")], degree=0,
        augmentation=parse_row(rng, CONIC_AUG), window=SINGULAR_WINDOW)
    kxs, k0s, kys = sx1.src, truncate(k0, SOURCE_LEN), sy1.src
    witness = GenerationWitness(
        generators=[
            GeneratorDecl("O_xplane", "product"),
            GeneratorDecl("O_yplane", "product"),
            GeneratorDecl("O_origin", "product"),
            GeneratorDecl("ideal_origin_x", "weakly_product",
                          ConeCertificate("O_xplane", "O_origin", -1)),
            GeneratorDecl("ideal_origin_y", "weakly_product",
                          ConeCertificate("O_yplane", "O_origin", -1)),
        ],
        steps=[
            WitnessStep(None, direct_sum(ix, iy),
                        [DeclaredSummand("ideal_origin_x", 0, 1, ix),
                         DeclaredSummand("ideal_origin_y", 0, 1, iy)]),
            WitnessStep(cone_inclusion(psi), total,
                        [DeclaredSummand("O_xplane", 1, 1, kxs),
                         DeclaredSummand("O_origin", 0, 1, k0s),
                         DeclaredSummand("O_yplane", 1, 1, kys)]),
        ],
        claimed_time=1,
        final_complex=total,
        final_diagonal=dspec,
        conclusion="Rouquier dimension of the nodal conic category <= 1",
    )
    notes = [
        f"truncated periodic models: targets to degree {TARGET_LEN}, sources "
        f"to degree {SOURCE_LEN}; verdict claimed in window {SINGULAR_WINDOW}",
        "augmentation row frozen from the exact-linear-algebra derivation",
    ]
    return CatalogEntry("nodal-conic", rng, total, dspec, witness, notes)


def build_nodal_conic_product(field: Field = QQ) -> CatalogEntry:
    """The longer resolution by honest product objects (no witness)."""
    rng = conic_ring(field)
    x1, y1, x2, y2 = (rng.var(v) for v in rng.names)
    kx_t, ky_t, k0 = _conic_models(rng)
    kx = truncate(kx_t, SOURCE_LEN + 1)
    ky = truncate(ky_t, SOURCE_LEN + 1)
    kxs, kys = truncate(kx, SOURCE_LEN), truncate(ky, SOURCE_LEN)
    px = lift_module_map(kx, k0, [[rng.one()]])
    py = lift_module_map(ky, k0, [[rng.one()]])
    collapse = block_map([kx, ky], [k0], {(0, 0): px, (0, 1): py}, check=False)
    gx = lift_module_map(kxs, kx, [[x1 - x2]])
    gy = lift_module_map(kys, ky, [[y1 - y2]])
    separate = block_map([kxs, kys], [kx, ky],
                         {(0, 0): gx, (1, 1): gy}, check=False)
    total = totalize_chain(
        {-1: k0, 0: collapse.src, 1: separate.src},
        {0: collapse.mats, 1: separate.mats})
    dspec = DiagonalSpec(
        ideal=[rng.parse("x1-x2"), rng.parse("y1-y2")], degree=0,
        augmentation=parse_row(rng, PRODUCT_AUG), window=SINGULAR_WINDOW)
    notes = [
        "three-object totalization with engine-computed correction homotopy",
        f"verdict claimed in window {SINGULAR_WINDOW}",
    ]
    return CatalogEntry("nodal-conic-product", rng, total, dspec, None, notes)


# ---------------------------------------------------------------------------
# cycle of projective lines


def _build_diagonal_chart_complex(field: Field):
    """Restriction of the global resolution to a chart around one node.

    Surviving blocks: the two ideal-sheaf objects through the node, the two
    plain plane objects (their partner points fall outside the chart), four
    twisted-line-bundle columns entering through chart trivializations
    (sections restrict to multiplication by the matching affine coordinate,
    or by 1 when their vanishing point is off-chart), and one skyscraper
    column.
    """
    rng = conic_ring(field)
    x1, y1, x2, y2 = (rng.var(v) for v in rng.names)
    kx, ky, k0 = _conic_models(rng)
    px = skyscraper_projection(kx, k0)
    py = skyscraper_projection(ky, k0)
    ix, iy = ideal_sheaf_model(px), ideal_sheaf_model(py)
    sx1 = section_into_ideal_sheaf(kx, px, x1)
    sx2 = section_into_ideal_sheaf(kx, px, x2)
    sy1 = section_into_ideal_sheaf(ky, py, y1)
    sy2 = section_into_ideal_sheaf(ky, py, y2)
    inc_x_a, inc_x_b = inclusion_of_truncation(kx), inclusion_of_truncation(kx)
    inc_y_a, inc_y_b = inclusion_of_truncation(ky), inclusion_of_truncation(ky)
    k0m = shift(truncate(k0, SOURCE_LEN), -1)
    dx = skyscraper_connecting_map(px, k0m)
    dy = skyscraper_connecting_map(py, k0m)
    psi = block_map(
        [inc_x_a.src, inc_x_b.src, inc_y_a.src, inc_y_b.src, k0m],
        [ix, kx, ky, iy],
        {
            (0, 0): sx1, (0, 1): negate_map(sx2), (0, 4): dx,
            (1, 0): negate_map(inc_x_a), (1, 1): inc_x_b,
            (2, 2): inc_y_a, (2, 3): negate_map(inc_y_b),
            (3, 2): negate_map(sy1), (3, 3): sy2, (3, 4): dy,
        }, check=False)
    total = cone(psi)
    dspec = DiagonalSpec(
        ideal=[rng.parse("x1-x2"), rng.parse("y1-y2")], degree=0,
        augmentation=parse_row(rng, DIAG_CHART_AUG), window=SINGULAR_WINDOW)
    return rng, total, dspec


def _build_adjacent_chart_complex(field: Field):
    """Torus chart: two line-bundle columns against two surviving objects.

    In chart coordinates the four sections restrict to (1, u; y, 1) with the
    displayed signs, and the diagonal becomes the graph of inversion
    (x, v, yu-1).
    """
    rng = adjacent_chart_ring(field)
    x, y, u, v = (rng.var(n) for n in rng.names)
    plane = resolve_cyclic(rng, [x, v], TARGET_LEN)
    planes = direct_sum(plane, plane)
    plane_s = truncate(plane, SOURCE_LEN)
    sources = direct_sum(plane_s, plane_s)
    one = rng.one()
    psi = lift_module_map(sources, planes, [[one, -u], [-y, one]])
    total = cone(psi)
    dspec = DiagonalSpec(
        ideal=[rng.parse("x"), rng.parse("v"), rng.parse("y*u-1")], degree=0,
        augmentation=parse_row(rng, ADJACENT_AUG), window=SINGULAR_WINDOW)
    return rng, total, dspec


def _cycle_witness(n: int) -> GenerationWitness:
    generators = []
    steps0 = []
    steps1 = []
    for j in range(1, n + 1):
        jm = ((j - 2) % n) + 1
        generators.extend([
            GeneratorDecl(f"O_square_{j}(-1,-1)", "product"),
            GeneratorDecl(f"O_node_{j}", "product"),
            GeneratorDecl(f"F_{j}", "weakly_product",
                          ConeCertificate(f"O_square_{j}", f"O_node_{j}", -1)),
            GeneratorDecl(f"G_{j}", "weakly_product",
                          ConeCertificate(f"O_square_{j}", f"O_node_{jm}", -1)),
        ])
        steps0.extend([DeclaredSummand(f"F_{j}", 0, 1),
                       DeclaredSummand(f"G_{j}", 0, 1)])
        steps1.extend([DeclaredSummand(f"O_square_{j}(-1,-1)", 1, 2),
                       DeclaredSummand(f"O_node_{j}", 0, 1)])
    return GenerationWitness(
        generators=generators,
        steps=[WitnessStep(None, None, steps0), WitnessStep(None, None, steps1)],
        claimed_time=1,
        auxiliary_products=tuple(f"O_square_{j}" for j in range(1, n + 1)),
        label_level=True,
        conclusion="",  # set per n by build_cycle
    )


def build_cycle(n: int, field: Field = QQ) -> CycleCatalog:
    """n^2 chart jobs plus the generation witness for the n-cycle.

    Chart complexes are identical across charts of the same kind under the
    chart-coordinate convention, so the three representatives are built once
    and shared; the runner may reuse verdicts across identical jobs.
    """
    if n < 3:
        raise InputDataError("cycle catalog supports n >= 3 "
                             "(smaller cycles have self-glued charts)")
    diag_ring, diag_total, diag_spec = _chart_complex_cached(field, "diagonal")
    adj_ring, adj_total, adj_spec = _chart_complex_cached(field, "adjacent")
    dist_ring = adjacent_chart_ring(field)
    dist_total = zero_complex(dist_ring)
    jobs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            kind = classify_chart(i, j, n)
            if kind == "diagonal":
                jobs.append(ChartJob(
                    (i, j), kind, diag_ring, diag_total, "qiso_to_diagonal",
                    diag_spec, SINGULAR_WINDOW,
                    ["restricted blocks around one node; shared complex"]))
            elif kind == "adjacent":
                jobs.append(ChartJob(
                    (i, j), kind, adj_ring, adj_total, "qiso_to_diagonal",
                    adj_spec, SINGULAR_WINDOW,
                    ["torus chart; diagonal is the graph of inversion"]))
            else:
                jobs.append(ChartJob(
                    (i, j), kind, dist_ring, dist_total, "exact_everywhere",
                    None, SINGULAR_WINDOW,
                    ["chart disjoint from the diagonal; zero complex"]))
    witness = _cycle_witness(n)
    witness.conclusion = f"Rdim(D^bCoh(I_{n})) <= 1"
    notes = [
        f"chart classification counts: {n} diagonal, {2 * n} adjacent, "
        f"{n * n - 3 * n} distant",
        "adjacent-chart matrices are derived chart data under the fixed "
        "trivialization convention (coordinates on the two sides of a node "
        "multiply to 1 on the overlap), validated by the verification suite",
    ]
    return CycleCatalog(n, jobs, witness, notes)


_CHART_CACHE: dict = {}


def _chart_complex_cached(field: Field, kind: str):
    """Chart complexes are n-independent; build and d²-check them once per field."""
    key = (field_spec_str(field), kind)
    if key not in _CHART_CACHE:
        builder = (_build_diagonal_chart_complex if kind == "diagonal"
                   else _build_adjacent_chart_complex)
        rng, total, spec = builder(field)
        if not check_differential(total):
            raise InputDataError(f"{kind} chart complex: d*d != 0 at load time")
        _CHART_CACHE[key] = (rng, total, spec)
    return _CHART_CACHE[key]


# ---------------------------------------------------------------------------
# chart restriction


def restrict_complex(cx: ChainComplex, rmap: RingMap) -> ChainComplex:
    """Entrywise substitution along a relation-compatible ring map."""
    if rmap.source != cx.ring:
        raise InputDataError("ring map source differs from the complex's ring")
    target = rmap.target
    rel_ideal = Submodule(target, 1, [(r,) for r in target.relations])
    for rel in rmap.source.relations:
        image = rmap.apply(rel)
        if not member((image,), rel_ideal):
            raise InputDataError(
                f"substitution sends relation {rel} to {image}, "
                "which is outside the target relation ideal")
    diffs = {i: mat_map(m, rmap.apply) for i, m in cx.diffs.items()}
    out = ChainComplex(target, dict(cx.ranks), diffs, check=False)
    if not check_differential(out):
        raise InputDataError("restricted complex fails d*d = 0")
    return out


# ---------------------------------------------------------------------------
# verification drivers


def verify_entry(entry: CatalogEntry, pre_minimize: bool = True) -> VerificationReport:
    t0 = time.time()
    field_name = field_spec_str(entry.ring.field)
    try:
        result = verify_diagonal_qiso(entry.complex, entry.diagonal,
                                      pre_minimize=pre_minimize)
    except InputDataError as exc:
        return VerificationReport(entry.name, "error", field_name,
                                  notes=list(entry.notes), error=str(exc),
                                  timing_seconds=time.time() - t0)
    rep = report_from_qiso(entry.name, field_name, result,
                           notes=_entry_notes(entry, result),
                           timing=time.time() - t0)
    return rep


def _entry_notes(entry: CatalogEntry, result) -> list:
    notes = list(entry.notes)
    if result.truncated:
        notes.append(
            f"truncated free models in play: verdict claimed only in the "
            f"degree window {tuple(result.window)}")
    return notes


def verify_chart_job(job: ChartJob, pre_minimize: bool = True) -> VerificationReport:
    t0 = time.time()
    name = f"chart({job.chart[0]},{job.chart[1]}):{job.kind}"
    field_name = field_spec_str(job.ring.field)
    try:
        if job.expectation == "exact_everywhere":
            result = exact_everywhere(job.complex, window=job.window,
                                      pre_minimize=pre_minimize)
        else:
            result = verify_diagonal_qiso(job.complex, job.diagonal,
                                          pre_minimize=pre_minimize)
    except InputDataError as exc:
        return VerificationReport(name, "error", field_name, notes=list(job.notes),
                                  error=str(exc), timing_seconds=time.time() - t0)
    notes = list(job.notes)
    if job.expectation != "exact_everywhere" and result.truncated:
        notes.append(f"truncation window {tuple(result.window)} in effect")
    return report_from_qiso(name, field_name, result, notes=notes,
                            timing=time.time() - t0)


def verify_chart_jobs(jobs, pre_minimize: bool = True):
    """Verify jobs in (i, j) order, reusing verdicts of shared complexes."""
    cache: dict = {}
    out = []
    for job in jobs:
        key = (id(job.complex), job.expectation,
               id(job.diagonal) if job.diagonal is not None else None)
        if key in cache:
            base = cache[key]
            rep = VerificationReport(
                f"chart({job.chart[0]},{job.chart[1]}):{job.kind}",
                base.verdict, base.field_used, conditions=base.conditions,
                notes=base.notes + [
                    f"verdict shared with {base.name} (identical chart data)"],
                window=base.window, timing_seconds=0.0)
            out.append(rep)
            continue
        rep = verify_chart_job(job, pre_minimize=pre_minimize)
        cache[key] = rep
        out.append(rep)
    return out
