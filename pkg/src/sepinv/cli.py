"""Command line front end.

Subcommands take a manifest (a path, or the name of a bundled model) and
print either a human summary or, with --json, a canonical machine report.
The machine report is deterministic: keys are sorted, timing is omitted,
and identical inputs produce byte-identical documents.

Exit codes: 0 for success, 1 when a verification or audit is negative,
2 for input problems, 3 when a resource cap stops a computation.
"""

import argparse
import json
import math
import sys
import time
from importlib import resources

from . import bundled, config
from .errors import (
    DimensionMismatch,
    EnumerationCapExceeded,
    EquivalenceViolation,
    GroupCapExceeded,
    InternalInconsistency,
    ManifestError,
    MissingModulus,
    NonHomogeneousInput,
    NonPrimeCharacteristic,
    NotGeneratedByFixedPointElements,
    NotInvariant,
    PolynomialSyntaxError,
    ReducibleModulus,
    ResourceCapExceeded,
    RingMismatch,
    UnitIdeal,
    UnknownVariable,
    VarietyNotPreserved,
)
from .field import make_field
from .group import fixed_locus_codim, k_reflections, min_reflection_number
from .manifest import Manifest
from .poly import is_homogeneous
from .resolution import cohen_macaulay_defect, minimal_free_resolution
from .separating import (
    reflection_audit,
    verify_separating_points,
    verify_separating_symbolic,
)
from .sepvar import connected_in_codim, connectivity_equivalence_check

SCHEMA = 1

OK = 0
NEGATIVE = 1
INPUT_ERROR = 2
RESOURCE = 3

_INPUT_ERRORS = (
    ManifestError,
    PolynomialSyntaxError,
    UnknownVariable,
    RingMismatch,
    DimensionMismatch,
    NonPrimeCharacteristic,
    MissingModulus,
    ReducibleModulus,
    UnitIdeal,
    NonHomogeneousInput,
    NotInvariant,
    VarietyNotPreserved,
    ValueError,
)
_RESOURCE_ERRORS = (
    ResourceCapExceeded,
    GroupCapExceeded,
    EnumerationCapExceeded,
)


def _jsonable(value):
    """Replace infinities with the string 'inf' so JSON stays faithful."""
    if value == math.inf:
        return "inf"
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def _load_model(spec):
    """A manifest path, or the name of a bundled manifest."""
    root = resources.files("sepinv").joinpath("data/manifests")
    packaged = root.joinpath(spec + ".json")
    try:
        if packaged.is_file():
            doc = json.loads(packaged.read_text(encoding="utf-8"))
            return Manifest.from_dict(doc).build()
    except OSError:
        pass
    return Manifest.from_path(spec).build()


def bundled_manifest_names():
    root = resources.files("sepinv").joinpath("data/manifests")
    return sorted(p.name[:-len(".json")] for p in root.iterdir()
                  if p.name.endswith(".json"))


def _expected_checks(name):
    path = resources.files("sepinv").joinpath(f"data/expected/{name}.json")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError:
        raise ManifestError(f"no expected-value fixture for {name!r}")
    return doc["checks"]


# -- fact collection ---------------------------------------------------------


def _graded(ideal):
    return all(is_homogeneous(g) is not None for g in ideal.gens)


def model_facts(bm):
    """Every reproducible fact about a built model, as plain JSON data."""
    model, variety, group = bm.model, bm.variety, bm.group
    dim = variety.dimension()
    facts = {
        "group_order": len(group),
        "dimension": dim,
        "generator_fixed_codims": _jsonable(
            [fixed_locus_codim(g, variety) for g in group.generators]
        ),
        "fixed_point_elements": len(k_reflections(group, variety, dim)),
    }
    try:
        facts["min_reflection_number"] = min_reflection_number(group, variety)
    except NotGeneratedByFixedPointElements:
        facts["min_reflection_number"] = None

    from .separating import is_invariant

    facts["invariants_invariant"] = all(
        is_invariant(f, group) for f in bm.invariants.values()
    )
    if bm.relations:
        facts["relations_hold"] = all(
            r.is_zero() for r in bm.relations.values()
        )

    components = model.graph_components()
    radical = model.separating_variety_radical()
    matrix = model.codim_matrix()
    count = len(components)
    facts["sepvar_components"] = count
    facts["sepvar_dimension"] = radical.dimension()
    facts["sepvar_pairwise_disjoint"] = all(
        matrix[i][j] == math.inf
        for i in range(count) for j in range(count) if i != j
    )
    facts["vsep_connected"] = connected_in_codim(model, dim)

    facts["separating_symbolic"] = {
        name: verify_separating_symbolic(cand, model)
        for name, cand in bm.candidates.items()
    }
    facts["separating_points"] = {
        name: verify_separating_points(cand, group, variety)
        for name, cand in bm.candidates.items()
    }

    cmdefs = {}
    if bm.invariants:
        diff = model.invariant_difference_ideal()
        cmdefs["differences"] = (
            cohen_macaulay_defect(diff) if _graded(diff) else None
        )
    cmdefs["radical"] = (
        cohen_macaulay_defect(radical) if _graded(radical) else None
    )
    for name, ideal in bm.ideals.items():
        cmdefs[name] = (
            cohen_macaulay_defect(ideal) if _graded(ideal) else None
        )
    facts["cmdef"] = cmdefs

    if not variety.is_affine_space():
        presented = variety.ideal()
        if _graded(presented):
            facts["cmdef_coordinate_ring"] = cohen_macaulay_defect(presented)

    report = reflection_audit(
        model,
        candidates=list(bm.candidates.values()),
        ideals=list(bm.ideals.items()),
    )
    facts["audit_conclusion"] = report.conclusion
    return facts


def _flatten(facts):
    flat = {}
    for key, value in facts.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                flat[f"{key}.{sub}"] = v
        else:
            flat[key] = value
    return flat


# -- subcommand handlers -----------------------------------------------------


def _cmd_group_analyze(args):
    bm = _load_model(args.manifest)
    variety, group = bm.variety, bm.group
    dim = variety.dimension()
    table = {str(k): len(k_reflections(group, variety, k))
             for k in range(dim + 1)}
    try:
        least = min_reflection_number(group, variety)
        reason = None
    except NotGeneratedByFixedPointElements:
        least = None
        reason = "the group is not generated by elements with a fixed point"
    results = {
        "order": len(group),
        "dimension": dim,
        "generator_fixed_codims": _jsonable(
            [fixed_locus_codim(g, variety) for g in group.generators]
        ),
        "reflection_table": table,
        "min_reflection_number": least,
    }
    if reason:
        results["min_reflection_note"] = reason
    lines = [
        f"group order: {len(group)}",
        f"variety dimension: {dim}",
        "generator fixed-locus codimensions: "
        + ", ".join(str(c) for c in results["generator_fixed_codims"]),
        "k-reflections (identity included):",
    ]
    lines += [f"  k = {k}: {table[str(k)]} element(s)" for k in sorted(
        table, key=int)]
    lines.append(f"min reflection number: {least if least is not None else 'none'}"
                 + (f" ({reason})" if reason else ""))
    return results, True, lines


def _cmd_sepvar_build(args):
    bm = _load_model(args.manifest)
    components = bm.model.graph_components()
    elements = list(bm.group.elements)
    rows = []
    for comp in components:
        rows.append({
            "element": elements.index(comp.sigma),
            "component": comp.component,
            "dimension": comp.dimension,
            "aliases": [list(a) for a in comp.aliases],
        })
    results = {
        "count": len(components),
        "graphs_considered": len(elements) * len(bm.variety.components),
        "components": rows,
    }
    lines = [f"separating variety: {len(components)} irreducible component(s) "
             f"from {results['graphs_considered']} graph(s)"]
    for i, row in enumerate(rows):
        alias = ""
        if len(row["aliases"]) > 1:
            alias = f" (+{len(row['aliases']) - 1} duplicate graph(s))"
        lines.append(
            f"  [{i}] element {row['element']} on component "
            f"{row['component']}, dim {row['dimension']}{alias}"
        )
    return results, True, lines


def _cmd_sepvar_connectivity(args):
    bm = _load_model(args.manifest)
    if args.codim < 0:
        raise ValueError("--codim must be nonnegative")
    report = connectivity_equivalence_check(bm.model, args.codim)
    results = {
        "codim": report.k,
        "sepvar_connected": report.sepvar_connected,
        "variety_connected": report.variety_connected,
        "reflections_generate": report.reflections_generate,
        "equivalence_holds": True,
    }
    k = report.k
    lines = [
        f"separating variety connected in codimension {k}: "
        f"{str(report.sepvar_connected).lower()}",
        f"variety connected in codimension {k}: "
        f"{str(report.variety_connected).lower()}",
        f"group generated by {k}-reflections: "
        f"{str(report.reflections_generate).lower()}",
        "equivalence holds: true",
    ]
    return results, True, lines


def _named_ideal(bm, name):
    if name == "differences":
        return bm.model.invariant_difference_ideal()
    if name == "radical":
        return bm.model.separating_variety_radical()
    if name in bm.ideals:
        return bm.ideals[name]
    known = ["differences", "radical"] + sorted(bm.ideals)
    raise ManifestError(f"unknown ideal {name!r}; known: {', '.join(known)}")


def _cmd_cmdef(args):
    bm = _load_model(args.manifest)
    ideal = _named_ideal(bm, args.ideal)
    res = minimal_free_resolution(ideal)
    nvars = ideal.ring.nvars
    pd = res.length
    depth = nvars - pd
    dim = ideal.dimension()
    graded = res.graded_betti()
    degrees = sorted({d for (_, d) in graded})
    rows = [{"degree": d,
             "counts": [graded.get((k, d), 0) for k in range(pd + 1)]}
            for d in degrees]
    results = {
        "ideal": args.ideal,
        "ring_variables": nvars,
        "dimension": dim,
        "projective_dimension": pd,
        "depth": depth,
        "cmdef": dim - depth,
        "betti_numbers": res.betti_numbers(),
        "betti_rows": rows,
    }
    lines = [
        f"ideal: {args.ideal} ({len(ideal.gens)} generator(s) in "
        f"{nvars} variables)",
        f"dimension: {dim}",
        f"projective dimension: {pd}",
        f"depth: {depth}",
        f"cmdef: {dim - depth}",
        "betti table:",
        res.betti_table(),
    ]
    return results, True, lines


def _field_for_points(bm, spec):
    """Build the field named by --points, e.g. '8' or '2^3'."""
    p = bm.ring.field.p
    text = spec.strip()
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            base, exp = int(base), int(exp)
        else:
            q = int(text)
            base, exp = p, 0
            while q > 1 and q % p == 0:
                q //= p
                exp += 1
            if q != 1 or exp == 0:
                raise ValueError
    except ValueError:
        raise ManifestError(
            f"--points {spec!r} is not a power of the base characteristic {p}"
        )
    if base != p or exp < 1:
        raise ManifestError(
            f"--points {spec!r} is not a power of the base characteristic {p}"
        )
    if exp == 1:
        return make_field(p)
    for packed in range(p ** exp):
        coeffs = []
        left = packed
        for _ in range(exp):
            coeffs.append(left % p)
            left //= p
        try:
            return make_field(p, exp, coeffs + [1])
        except ReducibleModulus:
            continue
    raise InternalInconsistency(f"no irreducible modulus found for {spec}")


def _cmd_verify(args):
    bm = _load_model(args.manifest)
    if args.set not in bm.candidates:
        known = ", ".join(sorted(bm.candidates)) or "none"
        raise ManifestError(f"unknown candidate set {args.set!r}; "
                            f"known: {known}")
    candidate = bm.candidates[args.set]
    symbolic = verify_separating_symbolic(candidate, bm.model)
    results = {
        "candidate": args.set,
        "size": len(candidate),
        "symbolic": symbolic,
    }
    lines = [
        f"candidate {args.set!r} ({len(candidate)} polynomial(s))",
        f"symbolic verification: {str(symbolic).lower()}",
    ]
    verdict = symbolic
    if args.points is not None:
        field = _field_for_points(bm, args.points)
        passed = verify_separating_points(candidate, bm.group, bm.variety,
                                          field)
        results["points"] = {"field_order": field.order, "separates": passed}
        lines.append(
            f"point check over the field with {field.order} elements: "
            f"{str(passed).lower()} (necessary evidence only)"
        )
        verdict = verdict and passed
    return results, verdict, lines


def _cmd_audit(args):
    bm = _load_model(args.manifest)
    report = reflection_audit(
        bm.model,
        candidates=list(bm.candidates.values()),
        ideals=list(bm.ideals.items()),
        cm_asserted=True if args.assert_cm else None,
    )
    results = {
        "dimension": report.dimension,
        "variety_connected": report.variety_connected,
        "cohen_macaulay": report.cohen_macaulay,
        "cohen_macaulay_source": report.cohen_macaulay_source,
        "fixed_point_generated": report.fixed_point_generated,
        "candidates": [list(row) for row in report.candidates],
        "gamma_upper_bound": report.gamma_upper_bound,
        "ideals": [list(row) for row in report.ideals],
        "reflection_bound": report.reflection_bound,
        "min_reflection_number": report.min_reflections,
        "conclusion": report.conclusion,
        "notes": list(report.notes),
    }
    lines = [
        f"variety connected: {str(report.variety_connected).lower()}",
        f"Cohen-Macaulay: {report.cohen_macaulay} "
        f"({report.cohen_macaulay_source})",
        "generated by elements with fixed points: "
        + str(report.fixed_point_generated).lower(),
    ]
    for name, size, good in report.candidates:
        lines.append(f"candidate {name!r} (size {size}): "
                     + ("separating" if good else "not separating"))
    if report.gamma_upper_bound is not None:
        lines.append("smallest verified separating set: "
                     f"{report.gamma_upper_bound} element(s)")
    for name, matches, defect in report.ideals:
        if matches:
            lines.append(f"ideal {name!r}: same radical, cmdef {defect}")
        else:
            lines.append(f"ideal {name!r}: radical differs, ignored")
    if report.min_reflections is not None:
        lines.append(f"min reflection number: {report.min_reflections}")
    lines.append(f"conclusion: {report.conclusion}")
    lines += [f"note: {n}" for n in report.notes]
    return results, report.reflection_bound is not None, lines


def _cmd_reproduce(args):
    if args.name == "additive-p":
        bm = bundled.load(args.name, args.p)
    else:
        bm = bundled.load(args.name)
    expected = _expected_checks(bm.name)
    actual = _flatten(model_facts(bm))
    rows = []
    all_ok = True
    for key in sorted(expected):
        want = expected[key]["value"]
        provenance = expected[key]["provenance"]
        if key not in actual:
            rows.append({"check": key, "provenance": provenance,
                         "expected": want, "actual": None, "ok": False})
            all_ok = False
            continue
        got = actual[key]
        ok = got == want
        all_ok = all_ok and ok
        rows.append({"check": key, "provenance": provenance,
                     "expected": want, "actual": got, "ok": ok})
    results = {"model": bm.name, "checks": rows, "all_ok": all_ok}
    lines = [f"reproducing {bm.name}: {len(rows)} check(s)"]
    for row in rows:
        status = "ok" if row["ok"] else "MISMATCH"
        lines.append(
            f"  {row['check']} [{row['provenance']}]: expected "
            f"{json.dumps(row['expected'])}, actual "
            f"{json.dumps(row['actual'])} -> {status}"
        )
    lines.append("result: " + ("all checks passed" if all_ok
                               else "some checks FAILED"))
    return results, all_ok, lines


# -- dispatch ----------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sepinv",
        description="Separating-variety connectivity, reflection "
                    "classification, and Cohen-Macaulay defects for finite "
                    "group actions.",
    )
    parser.add_argument("--json", action="store_true",
                        help="print a canonical machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    def manifest_arg(p):
        p.add_argument("--manifest", "-m", required=True,
                       help="manifest path, or a bundled name: "
                            + ", ".join(bundled_manifest_names()))

    def json_arg(p):
        p.add_argument("--json", action="store_true",
                       default=argparse.SUPPRESS,
                       help="print a canonical machine-readable report")

    group = sub.add_parser("group", help="group-level analysis")
    gsub = group.add_subparsers(dest="subcommand", required=True)
    analyze = gsub.add_parser("analyze",
                              help="order, reflection table, least k")
    manifest_arg(analyze)
    json_arg(analyze)
    analyze.set_defaults(handler=_cmd_group_analyze)

    sepvar = sub.add_parser("sepvar", help="separating-variety analysis")
    ssub = sepvar.add_subparsers(dest="subcommand", required=True)
    build = ssub.add_parser("build", help="list irreducible components")
    manifest_arg(build)
    json_arg(build)
    build.set_defaults(handler=_cmd_sepvar_build)
    conn = ssub.add_parser("connectivity",
                           help="connectivity in a given codimension, "
                                "with the group-side equivalence")
    manifest_arg(conn)
    conn.add_argument("--codim", type=int, required=True)
    json_arg(conn)
    conn.set_defaults(handler=_cmd_sepvar_connectivity)

    cmdef = sub.add_parser("cmdef", help="Cohen-Macaulay defect of an ideal")
    manifest_arg(cmdef)
    cmdef.add_argument("--ideal", required=True,
                       help="'differences', 'radical', or a manifest name")
    json_arg(cmdef)
    cmdef.set_defaults(handler=_cmd_cmdef)

    verify = sub.add_parser("verify", help="check a candidate separating set")
    manifest_arg(verify)
    verify.add_argument("--set", required=True)
    verify.add_argument("--points", metavar="Q",
                        help="also brute-force check over the field of "
                             "order Q (a power of the base characteristic)")
    json_arg(verify)
    verify.set_defaults(handler=_cmd_verify)

    audit = sub.add_parser("audit", help="reflection-bound hypothesis audit")
    manifest_arg(audit)
    audit.add_argument("--assert-cm", action="store_true",
                       help="assert that X is Cohen-Macaulay instead of "
                            "computing it")
    json_arg(audit)
    audit.set_defaults(handler=_cmd_audit)

    reproduce = sub.add_parser("reproduce",
                               help="run a bundled model against its "
                                    "expected values")
    reproduce.add_argument("name",
                           choices=["id10253", "additive-p", "two-planes"])
    reproduce.add_argument("--p", type=int, default=2,
                           help="characteristic for additive-p (2, 3, or 5)")
    json_arg(reproduce)
    reproduce.set_defaults(handler=_cmd_reproduce)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        results, verdict, lines = args.handler(args)
    except _RESOURCE_ERRORS as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return RESOURCE
    except (EquivalenceViolation, InternalInconsistency) as exc:
        print(f"internal consistency: {exc}", file=sys.stderr)
        return NEGATIVE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR

    command = args.command
    if getattr(args, "subcommand", None):
        command += " " + args.subcommand
    if args.json:
        document = {
            "schema": SCHEMA,
            "command": command,
            "results": results,
            "verdict": "ok" if verdict else "negative",
        }
        print(json.dumps(document, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)
        print(f"verdict: {'ok' if verdict else 'negative'}")
        print(f"elapsed: {time.monotonic() - started:.2f}s")
    return OK if verdict else NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
