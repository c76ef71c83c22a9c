"""Run the task list of a ring-spec file and render the results.

The structured format is canonical JSON (sorted keys, no timing) carrying a
schema tag and a content hash of the result payload, so identical spec runs
are byte-identical.  Wall-clock timings appear only in the text format.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass

from .analysis import (
    IdealBasis,
    Outcome,
    RingIdealWitness,
    Verdict,
    center_basis,
    delta_simplicity_probe,
    ideal_saturate,
    minimal_monic_generator,
    simplicity_verdict,
    _permutation_orbits,
)
from .errors import NaoreError
from .ore import (
    OrePoly,
    associativity_verdict,
    axiom_suite,
    euclid_divide,
    ore_mul,
    to_right_coeffs,
)
from .rings import CapProfile
from .specfile import RingSpecFile, Task
from .textform import render_ore_poly, render_ring_element

SCHEMA = "naore-report/1"


@dataclass(frozen=True)
class TaskResult:
    name: str
    args: tuple[str, ...]
    payload: dict
    wall_ms: float


@dataclass(frozen=True)
class Report:
    schema: str
    caps: CapProfile
    seed: int | None
    results: tuple[TaskResult, ...]
    content_hash: str


def _caps_payload(caps: CapProfile) -> dict:
    return {"x_degree": caps.x_degree, "y_degree": caps.y_degree, "rounds": caps.rounds}


def _witness_payload(witness) -> object:
    if witness is None:
        return None
    if isinstance(witness, OrePoly):
        return render_ore_poly(witness)
    if isinstance(witness, RingIdealWitness):
        return {
            "description": witness.description,
            "rows": [render_ring_element(r) for r in witness.rows],
        }
    if isinstance(witness, IdealBasis):
        return {
            "rows": [render_ore_poly(r) for r in witness.rows],
            "saturated": witness.saturated,
            "overflowed": witness.overflowed,
        }
    if isinstance(witness, tuple):
        return [_witness_payload(w) for w in witness]
    return str(witness)


def _verdict_payload(v: Verdict) -> dict:
    return {
        "outcome": v.outcome.value,
        "criterion": v.criterion,
        "caps": _caps_payload(v.caps),
        "detail": v.detail,
        "cross_checks": list(v.cross_checks),
        "witness": _witness_payload(v.witness),
    }


def _run_task(handle, task: Task, caps: CapProfile, rng) -> dict:
    name = task.name
    if name == "mul":
        return {"product": render_ore_poly(ore_mul(task.args[0], task.args[1]))}
    if name == "divide":
        q, r = euclid_divide(task.args[0], task.args[1])
        return {"quotient": render_ore_poly(q), "remainder": render_ore_poly(r)}
    if name == "right-coeffs":
        coeffs = to_right_coeffs(task.args[0])
        return {"coefficients": [render_ring_element(c) for c in coeffs]}
    if name == "axioms":
        report = axiom_suite(handle, caps, rng)
        return {
            "all_passed": report.all_passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "note": c.note,
                    "certificate": _certificate_payload(c.certificate),
                }
                for c in report.checks
            ],
        }
    if name == "associativity":
        verdict = associativity_verdict(handle, caps)
        return {
            "associative": verdict.associative,
            "within_caps": verdict.within_caps,
            "detail": verdict.detail,
            "certificate": _certificate_payload(verdict.certificate),
        }
    if name == "center":
        rows = center_basis(handle, caps)
        return {
            "basis": [render_ore_poly(r) for r in rows],
            "within_caps": handle.ring.kind == "poly",
            "caps": _caps_payload(caps),
        }
    if name == "ideal":
        basis_obj = ideal_saturate(handle, list(task.args), caps)
        generator = minimal_monic_generator(basis_obj)
        return {
            "basis": [render_ore_poly(r) for r in basis_obj.rows],
            "saturated": basis_obj.saturated,
            "overflowed": basis_obj.overflowed,
            "rounds_used": basis_obj.rounds_used,
            "contains_one": basis_obj.contains_one(),
            "generator": _verdict_payload(generator),
        }
    if name == "delta-simple":
        return _verdict_payload(delta_simplicity_probe(handle, caps))
    if name == "simplicity":
        return _verdict_payload(simplicity_verdict(handle, caps))
    if name == "dynamics-report":
        verdict = simplicity_verdict(handle, caps)
        rows = center_basis(handle, caps)
        perm = handle.delta.alpha.permutation if (
            handle.delta.kind == "kernel_derivation"
            and handle.delta.alpha.kind == "permutation_pullback"
        ) else tuple(range(handle.ring.size))
        orbits = _permutation_orbits(perm)
        minimal = len(orbits) == 1
        discrepancy = minimal and handle.ring.size > 1 and verdict.holds
        note = ""
        if discrepancy:
            note = (
                "this finite discrete minimal system computes as simple, while the "
                "continuous-dynamics criterion would demand a non-discrete topology; "
                "the non-discreteness requirement does not transfer to finite index sets"
            )
        return {
            "verdict": _verdict_payload(verdict),
            "center_basis": [render_ore_poly(r) for r in rows],
            "minimal": minimal,
            "orbit_count": len(orbits),
            "discrete_topology_discrepancy": discrepancy,
            "note": note,
        }
    raise NaoreError(f"unknown task {name!r}")


def _certificate_payload(cert) -> object:
    if cert is None:
        return None
    out = []
    for entry in cert:
        if isinstance(entry, OrePoly):
            out.append(render_ore_poly(entry))
        else:
            out.append(render_ring_element(entry))
    return out


def run(spec: RingSpecFile, caps_override: CapProfile | None = None, seed: int | None = None) -> Report:
    caps = caps_override if caps_override is not None else spec.caps
    handle = spec.handle()
    rng = random.Random(0 if seed is None else seed)
    results = []
    for task in spec.tasks:
        started = time.perf_counter()
        payload = _run_task(handle, task, caps, rng)
        wall_ms = (time.perf_counter() - started) * 1000.0
        results.append(
            TaskResult(task.name, tuple(render_ore_poly(a) for a in task.args), payload, wall_ms)
        )
    body = {
        "schema": SCHEMA,
        "caps": _caps_payload(caps),
        "seed": 0 if seed is None else seed,
        "tasks": [
            {"name": r.name, "args": list(r.args), "result": r.payload} for r in results
        ],
    }
    digest = hashlib.sha256(_canonical_json(body).encode()).hexdigest()
    return Report(SCHEMA, caps, seed, tuple(results), digest)


def _canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def render_structured(report: Report) -> str:
    body = {
        "schema": report.schema,
        "caps": _caps_payload(report.caps),
        "seed": 0 if report.seed is None else report.seed,
        "tasks": [
            {"name": r.name, "args": list(r.args), "result": r.payload} for r in report.results
        ],
        "content_hash": report.content_hash,
    }
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _text_lines(value, indent: str) -> list[str]:
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            sub = value[key]
            if isinstance(sub, (dict, list)):
                lines.append(f"{indent}{key}:")
                lines.extend(_text_lines(sub, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {sub}")
    elif isinstance(value, list):
        for sub in value:
            if isinstance(sub, (dict, list)):
                block = _text_lines(sub, indent + "    ")
                if block:
                    first = block[0].lstrip()
                    block[0] = f"{indent}  - {first}"
                lines.extend(block)
            else:
                lines.append(f"{indent}- {sub}")
    else:
        lines.append(f"{indent}{value}")
    return lines


def render_text(report: Report) -> str:
    lines = [f"report ({report.schema})"]
    lines.append(
        f"caps: X-degree {report.caps.x_degree}, Y-degree {report.caps.y_degree}, rounds {report.caps.rounds}"
    )
    for r in report.results:
        header = f"== task {r.name}"
        if r.args:
            header += " : " + " | ".join(r.args)
        lines.append(header)
        lines.extend(_text_lines(r.payload, "  "))
        outcome = r.payload.get("outcome")
        if outcome == Outcome.INCONCLUSIVE.value:
            lines.append(
                f"  (inconclusive at caps X={report.caps.x_degree}, "
                f"Y={report.caps.y_degree}, rounds={report.caps.rounds})"
            )
        lines.append(f"  wall: {r.wall_ms:.1f} ms")
    lines.append(f"content-hash: {report.content_hash}")
    return "\n".join(lines) + "\n"
