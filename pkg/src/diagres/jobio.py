"""Job files: a single JSON document describing a verification task.

Schema (version 1)::

    {
      "schema": 1,
      "name": "...",                         # optional
      "ring": {
        "variables": ["x1", "y1"],
        "field": "q" | "fp:32003",           # default "q"
        "order": {"kind": "grevlex"|"lex",
                   "priority": [0, 1]},      # optional
        "relations": ["x1*y1"]
      },
      "complexes": [
        {"name": "total",
         "ranks": {"0": 4, "1": 4},          # degree -> rank, string keys
         "differentials": {"1": [["x1"]]}}   # degree -> matrix of strings
      ],
      "diagonal": {                           # required unless expectation
        "complex": "total",                   #   is exact_everywhere
        "ideal": ["x1-x2"],
        "degree": 0,
        "augmentation": ["0", "1"],
        "window": [-1, 3]                     # optional
      },
      "expectation": "qiso_to_diagonal" | "exact_everywhere",
      "witness": { ... }                      # optional, see parse_witness
    }

All polynomial entries are strings in the polynomial grammar.  Parsing
reports the offending JSON path on failure; polynomial parse errors carry
their position in the string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .complexes import ChainComplex, ChainMap, DiagonalSpec, InputDataError
from .matrices import mat_from_strings, mat_to_strings
from .polyring import MonomialOrder, ParseError, QuotientRing, ring
from .scalars import field_from_spec, field_spec_str
from .witness import (ConeCertificate, DeclaredSummand, GenerationWitness,
                      GeneratorDecl, WitnessStep)

SCHEMA = 1


class JobFileError(ValueError):
    """Structurally invalid job file."""


@dataclass
class Job:
    name: str
    ring: QuotientRing
    complexes: dict               # name -> ChainComplex
    expectation: str
    diagonal: Optional[DiagonalSpec]
    diagonal_complex: Optional[str]
    witness: Optional[GenerationWitness] = None
    witness_final: Optional[str] = None
    gb_module: Optional[dict] = None   # {"rank": int, "generators": [...]}


def _need(d: dict, key: str, path: str):
    if key not in d:
        raise JobFileError(f"missing key {key!r} at {path}")
    return d[key]


def parse_ring(d: dict, path: str = "ring") -> QuotientRing:
    variables = _need(d, "variables", path)
    fld = field_from_spec(d.get("field", "q"))
    order = None
    if "order" in d:
        od = d["order"]
        order = MonomialOrder(od.get("kind", "grevlex"),
                              od.get("priority"))
    try:
        return ring(variables, field=fld, order=order,
                    relations=d.get("relations", ()))
    except (ParseError, ValueError) as exc:
        raise JobFileError(f"bad ring at {path}: {exc}") from exc


def parse_complex(d: dict, rng: QuotientRing, path: str) -> ChainComplex:
    ranks_raw = _need(d, "ranks", path)
    try:
        ranks = {int(k): int(v) for k, v in ranks_raw.items()}
    except (TypeError, ValueError) as exc:
        raise JobFileError(f"bad ranks at {path}: {exc}") from exc
    diffs = {}
    for k, rows in d.get("differentials", {}).items():
        try:
            diffs[int(k)] = mat_from_strings(rows, rng)
        except ParseError as exc:
            raise JobFileError(
                f"bad polynomial at {path}.differentials[{k}]: {exc}") from exc
    try:
        return ChainComplex(rng, ranks, diffs, check=True)
    except InputDataError as exc:
        raise JobFileError(f"invalid complex at {path}: {exc}") from exc


def parse_diagonal(d: dict, rng: QuotientRing, path: str = "diagonal") -> DiagonalSpec:
    try:
        ideal = [rng.parse(s) for s in _need(d, "ideal", path)]
        aug = [rng.parse(s) for s in _need(d, "augmentation", path)]
    except ParseError as exc:
        raise JobFileError(f"bad polynomial at {path}: {exc}") from exc
    window = tuple(d["window"]) if "window" in d else None
    return DiagonalSpec(ideal=ideal, degree=int(_need(d, "degree", path)),
                        augmentation=aug, window=window)


def parse_witness(d: dict, rng: QuotientRing, complexes: dict, path: str = "witness"):
    gens = []
    for i, g in enumerate(d.get("generators", [])):
        cert = None
        if "certificate" in g:
            c = g["certificate"]
            cert = ConeCertificate(_need(c, "source", f"{path}.generators[{i}]"),
                                   _need(c, "target", f"{path}.generators[{i}]"),
                                   int(c.get("shift", -1)))
        gens.append(GeneratorDecl(_need(g, "label", f"{path}.generators[{i}]"),
                                  g.get("kind", "plain"), cert))
    steps = []
    for i, s in enumerate(d.get("steps", [])):
        spath = f"{path}.steps[{i}]"
        target = None
        if s.get("target") is not None:
            target = complexes.get(s["target"])
            if target is None:
                raise JobFileError(f"unknown complex {s['target']!r} at {spath}")
        step_map = None
        if s.get("map") is not None:
            m = s["map"]
            src = complexes.get(_need(m, "source", spath))
            tgt = complexes.get(_need(m, "target", spath))
            if src is None or tgt is None:
                raise JobFileError(f"unknown complex in map at {spath}")
            mats = {int(k): mat_from_strings(v, rng)
                    for k, v in m.get("matrices", {}).items()}
            step_map = ChainMap(src, tgt, mats, check=True)
        summands = []
        for q in s.get("summands", []):
            model = None
            if q.get("model"):
                model = complexes.get(q["model"])
                if model is None:
                    raise JobFileError(f"unknown model complex {q['model']!r} at {spath}")
            summands.append(DeclaredSummand(_need(q, "label", spath),
                                            int(q.get("shift", 0)),
                                            int(q.get("multiplicity", 1)),
                                            model))
        steps.append(WitnessStep(step_map, target, summands))
    final = d.get("final", {})
    witness = GenerationWitness(
        generators=gens,
        steps=steps,
        claimed_time=int(_need(d, "claimed_time", path)),
        final_complex=None,
        final_diagonal=None,
        auxiliary_products=tuple(d.get("auxiliary_products", ())),
        label_level=bool(d.get("label_level", False)),
        conclusion=d.get("conclusion", ""),
    )
    return witness, final.get("complex")


def parse_job(doc: dict) -> Job:
    if not isinstance(doc, dict):
        raise JobFileError("job file must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise JobFileError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA}")
    rng = parse_ring(_need(doc, "ring", "$"))
    complexes = {}
    for i, cd in enumerate(doc.get("complexes", [])):
        name = cd.get("name", f"complex{i}")
        complexes[name] = parse_complex(cd, rng, f"complexes[{i}]")
    expectation = doc.get("expectation", "qiso_to_diagonal")
    if expectation not in ("qiso_to_diagonal", "exact_everywhere"):
        raise JobFileError(f"unknown expectation {expectation!r}")
    diagonal = None
    diag_name = None
    if "diagonal" in doc:
        diagonal = parse_diagonal(doc["diagonal"], rng)
        diag_name = doc["diagonal"].get("complex")
    elif expectation == "qiso_to_diagonal" and complexes and "witness" not in doc \
            and "module" not in doc:
        raise JobFileError("qiso_to_diagonal expectation needs a diagonal block")
    witness = wfinal = None
    if "witness" in doc:
        witness, wfinal = parse_witness(doc["witness"], rng, complexes)
    gb_module = None
    if "module" in doc:
        md = doc["module"]
        rank = int(_need(md, "rank", "module"))
        gens = []
        for k, row in enumerate(md.get("generators", [])):
            if len(row) != rank:
                raise JobFileError(f"module.generators[{k}] has length {len(row)}, "
                                   f"want {rank}")
            try:
                gens.append(tuple(rng.parse(s) for s in row))
            except ParseError as exc:
                raise JobFileError(f"bad polynomial at module.generators[{k}]: {exc}")
        gb_module = {"rank": rank, "generators": gens}
    return Job(name=doc.get("name", "job"), ring=rng, complexes=complexes,
               expectation=expectation, diagonal=diagonal,
               diagonal_complex=diag_name, witness=witness,
               witness_final=wfinal, gb_module=gb_module)


def load_job(path: str) -> Job:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise JobFileError(f"not valid JSON: {exc}") from exc
    return parse_job(doc)


# ---------------------------------------------------------------------------
# export (catalog entries -> job documents)


def ring_to_dict(rng: QuotientRing) -> dict:
    d = {"variables": list(rng.names), "field": field_spec_str(rng.field),
         "relations": [str(r) for r in rng.relations]}
    if rng.order.kind != "grevlex" or rng.order.priority is not None:
        od = {"kind": rng.order.kind}
        if rng.order.priority is not None:
            od["priority"] = list(rng.order.priority)
        d["order"] = od
    return d


def complex_to_dict(cx: ChainComplex, name: str) -> dict:
    return {
        "name": name,
        "ranks": {str(i): cx.rank(i) for i in cx.degrees()},
        "differentials": {str(i): mat_to_strings(m) for i, m in sorted(cx.diffs.items())},
    }


def diagonal_to_dict(spec: DiagonalSpec, complex_name: str) -> dict:
    d = {"complex": complex_name,
         "ideal": [str(p) for p in spec.ideal],
         "degree": spec.degree,
         "augmentation": [str(p) for p in spec.augmentation]}
    if spec.window is not None:
        d["window"] = list(spec.window)
    return d


def job_document(name: str, rng: QuotientRing, cx: ChainComplex,
                 diagonal: Optional[DiagonalSpec],
                 expectation: str = "qiso_to_diagonal") -> dict:
    doc = {
        "schema": SCHEMA,
        "name": name,
        "ring": ring_to_dict(rng),
        "complexes": [complex_to_dict(cx, "total")],
        "expectation": expectation,
    }
    if diagonal is not None:
        doc["diagonal"] = diagonal_to_dict(diagonal, "total")
    return doc


def emit_job(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
