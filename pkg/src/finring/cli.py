"""Command-line front end.

Commands::

    finring classify SPEC
    finring ideals SPEC
    finring decompose SPEC
    finring module sgp --ring SPEC --rel MATRIX
    finring resolve --ring SPEC --rel MATRIX --length N
    finring verify-paper [--catalog NAME] [--inject-fault]

Exit codes: 0 success, 1 property violation / negative verification,
2 parse error, 3 guard exceeded.  ``--json`` switches every command to a
stable JSON report (fixed key order, canonical element literals, so equal
inputs give byte-identical output).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import classify
from .errors import (
    GuardExceeded,
    NonLocalRingError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    ValidationError,
)
from .guards import DEFAULT_GUARDS
from .homology import (
    check_complete_resolution,
    free_resolution,
    is_strongly_gorenstein_projective,
    strongly_complete_resolution,
)
from .ideals import enumerate_ideals, idempotent_decomposition, maximal_ideals
from .modules import Module
from .parsing import format_element, parse_presentation, parse_ring_spec
from .rings import build_ring
from .verify import run_verification

SCHEMA_VERSION = 1

EXT_NOTE = (
    "Ext^1 tested against R only: out of a finitely presented module it "
    "commutes with the finite direct sums that reach every projective here"
)


def _emit(args, payload: dict, text_lines: list) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _guards(args):
    return DEFAULT_GUARDS.with_overrides(
        max_ring_order=getattr(args, "max_ring_size", None),
        max_module_raw=getattr(args, "max_module_size", None),
        max_hom_candidates=getattr(args, "max_hom_enumeration", None),
        axiom_seed=getattr(args, "seed", None),
    )


def _fmt(ring, value) -> str:
    return format_element(ring, value)


def _fmt_free_element(free_module, el) -> str:
    ring = free_module.ring
    parts = [_fmt(ring, ring.elements[c]) for c in el]
    return "(" + ",".join(parts) + ")" if len(parts) != 1 else parts[0]


def _ideal_summary(ideal) -> dict:
    return {
        "order": ideal.order,
        "generators": [_fmt(ideal.ring, g) for g in ideal.generators],
    }


# ---------------------------------------------------------------------------
# classify


def _classification_payload(report, radical_literal) -> dict:
    certs = {
        "semisimple": None,
        "quasi_frobenius": None,
        "sg_semisimple": None,
    }
    if report.semisimple_certificate is not None:
        # certificate is a nonzero radical element of the ring itself
        certs["semisimple"] = radical_literal
    if report.qf_certificate is not None:
        certs["quasi_frobenius"] = {"ideal": _ideal_summary(report.qf_certificate)}
    if report.sg_certificate is not None:
        cert = report.sg_certificate
        certs["sg_semisimple"] = {
            "factor": cert.factor_index,
            "ideals": [_ideal_summary(cert.first), _ideal_summary(cert.second)],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "spec": report.spec,
        "order": report.order,
        "local": report.is_local,
        "factors": [
            {
                "order": f.order,
                "ideal_count": f.ideal_count,
                "max_ideal_order": f.max_ideal_order,
            }
            for f in report.factors
        ],
        "semisimple": report.semisimple,
        "quasi_frobenius": report.quasi_frobenius,
        "sg_semisimple": report.sg_semisimple,
        "certificates": certs,
    }


def _run_classify(args) -> int:
    ring = build_ring(parse_ring_spec(args.spec), _guards(args))
    report = classify(ring)
    literal = (
        _fmt(ring, report.semisimple_certificate)
        if report.semisimple_certificate is not None
        else None
    )
    payload = _classification_payload(report, literal)
    lines = [
        f"ring {report.spec} (order {report.order})",
        f"local: {'yes' if report.is_local else 'no'}",
        "factors: "
        + "; ".join(
            f"order {f.order}, ideals {f.ideal_count}, maximal ideal order {f.max_ideal_order}"
            for f in report.factors
        ),
        f"semisimple: {'yes' if report.semisimple else 'no'}"
        + (f" (radical element {literal})" if literal else ""),
        f"quasi-Frobenius: {'yes' if report.quasi_frobenius else 'no'}"
        + (
            f" (ideal ({', '.join(_fmt(ring, g) for g in report.qf_certificate.generators)})"
            f" fails the double-annihilator test)"
            if report.qf_certificate is not None
            else ""
        ),
        f"SG-semisimple: {'yes' if report.sg_semisimple else 'no'}"
        + (
            f" (factor {report.sg_certificate.factor_index} has nonzero proper ideals "
            f"of orders {report.sg_certificate.first.order} and "
            f"{report.sg_certificate.second.order})"
            if report.sg_certificate is not None
            else ""
        ),
    ]
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# ideals / decompose


def _run_ideals(args) -> int:
    ring = build_ring(parse_ring_spec(args.spec), _guards(args))
    lattice = enumerate_ideals(ring)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": ring.describe(),
        "order": ring.order,
        "count": len(lattice),
        "ideals": [
            {
                **_ideal_summary(ideal),
                "elements": [_fmt(ring, v) for v in ideal.sorted_elements()],
            }
            for ideal in lattice
        ],
    }
    lines = [f"ring {ring.describe()} (order {ring.order}): {len(lattice)} ideals"]
    for ideal in lattice:
        gens = ", ".join(_fmt(ring, g) for g in ideal.generators)
        lines.append(f"  order {ideal.order}: ({gens})")
    _emit(args, payload, lines)
    return 0


def _run_decompose(args) -> int:
    ring = build_ring(parse_ring_spec(args.spec), _guards(args))
    dec = idempotent_decomposition(ring)
    factors = []
    for f in dec.factor_rings:
        lattice = enumerate_ideals(f)
        factors.append(
            {
                "order": f.order,
                "ideal_count": len(lattice),
                "max_ideal_order": maximal_ideals(f)[0].order,
            }
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": ring.describe(),
        "order": ring.order,
        "idempotents": [_fmt(ring, e) for e in dec.idempotents],
        "factors": factors,
    }
    lines = [
        f"ring {ring.describe()} (order {ring.order}): "
        f"{len(dec.idempotents)} local factor(s)"
    ]
    for e, f in zip(dec.idempotents, factors):
        lines.append(
            f"  idempotent {_fmt(ring, e)}: factor of order {f['order']}, "
            f"{f['ideal_count']} ideals"
        )
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# module sgp / resolve


def _verdict_payload(verdict, include_resolution=True) -> dict:
    payload = {
        "sgp": verdict.decision,
        "rank": verdict.witness.rank if verdict.witness else None,
        "embedding": None,
        "obstruction": verdict.obstruction.kind if verdict.obstruction else None,
        "obstruction_detail": verdict.obstruction.detail if verdict.obstruction else None,
        "ext1_order": verdict.ext.order if verdict.ext else None,
        "ext1_test_object": "R",
        "ext1_note": EXT_NOTE,
    }
    if verdict.witness is not None:
        ring = verdict.module.ring
        free = verdict.witness.embedding.target
        payload["embedding"] = [
            [_fmt(ring, ring.elements[c]) for c in img]
            for img in verdict.witness.embedding.images
        ]
        if include_resolution:
            res = strongly_complete_resolution(verdict.witness)
            report = check_complete_resolution(res)
            payload["resolution"] = {
                "rank": res.rank,
                "map": [
                    [_fmt(ring, ring.elements[c]) for c in img]
                    for img in res.map.images
                ],
                "forward_exact": report.forward_exact,
                "dual_exact": report.dual_exact,
                "image_order": report.image_order,
                "kernel_order": report.kernel_order,
                "dual_image_order": report.dual_image_order,
                "dual_kernel_order": report.dual_kernel_order,
            }
    if verdict.components is not None:
        payload["factors"] = [
            _verdict_payload(v, include_resolution) for v in verdict.components
        ]
    return payload


def _run_module_sgp(args) -> int:
    ring = build_ring(parse_ring_spec(args.ring), _guards(args))
    module = Module(parse_presentation(ring, args.rel))
    verdict = is_strongly_gorenstein_projective(module)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": ring.describe(),
        "presentation": args.rel,
        **_verdict_payload(verdict),
    }
    lines = [
        f"ring {ring.describe()}, module on {module.k} generator(s), "
        f"{module.cardinality} elements",
        f"strongly Gorenstein projective: {'yes' if verdict.decision else 'no'}",
    ]
    if verdict.witness is not None:
        w = verdict.witness
        images = ", ".join(
            f"g{j} -> {_fmt_free_element(w.embedding.target, img)}"
            for j, img in enumerate(w.embedding.images)
        )
        lines.append(f"witness rank: {w.rank}; embedding {images}")
        lines.append(f"Ext^1(M, R) order: {verdict.ext.order} ({EXT_NOTE})")
        rep = check_complete_resolution(strongly_complete_resolution(w))
        lines.append(
            f"periodic map on R^{w.rank}: image order {rep.image_order} = "
            f"kernel order {rep.kernel_order}; dual exact: "
            f"{'yes' if rep.dual_exact else 'no'}"
        )
    if verdict.obstruction is not None:
        obs = verdict.obstruction
        where = f" (factor {obs.factor})" if obs.factor is not None else ""
        lines.append(f"obstruction{where}: {obs.kind} -- {obs.detail}")
    if verdict.components is not None:
        for fi, sub in enumerate(verdict.components):
            lines.append(
                f"factor {fi}: sgp={'yes' if sub.decision else 'no'}"
                + (f", witness rank {sub.witness.rank}" if sub.witness else "")
            )
    _emit(args, payload, lines)
    return 0


def _run_resolve(args) -> int:
    ring = build_ring(parse_ring_spec(args.ring), _guards(args))
    module = Module(parse_presentation(ring, args.rel))
    res = free_resolution(module, args.length)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": ring.describe(),
        "presentation": args.rel,
        "length": res.length,
        "ranks": list(res.ranks),
        "differentials": [
            [[_fmt(ring, ring.elements[c]) for c in col] for col in d.images]
            for d in res.differentials
        ],
        "exact": True,
    }
    lines = [
        f"ring {ring.describe()}, module with {module.cardinality} elements",
        f"free resolution ranks: {', '.join(map(str, res.ranks))}",
    ]
    for i, d in enumerate(res.differentials, start=1):
        cols = "; ".join(_fmt_free_element(d.target, col) for col in d.images)
        lines.append(f"d{i} columns: {cols}")
    lines.append("exactness verified at every computed stage")
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# verify-paper


def _run_verify(args) -> int:
    results = run_verification(
        catalog=args.catalog, inject_fault=args.inject_fault, guards=_guards(args)
    )
    all_passed = all(r.passed for r in results)
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "catalog": args.catalog,
            "fault_injected": args.inject_fault,
            "all_passed": all_passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} -- {r.detail}")
        print(
            f"{'all checks passed' if all_passed else 'verification FAILED'} "
            f"({sum(r.passed for r in results)}/{len(results)})"
        )
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# argument plumbing


def _add_common(parser):
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--max-ring-size", type=int, metavar="N")
    parser.add_argument("--max-module-size", type=int, metavar="N")
    parser.add_argument("--max-hom-enumeration", type=int, metavar="N")
    parser.add_argument("--seed", type=int, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finring",
        description="finite commutative rings: ideals, witnesses, classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a ring")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(handler=_run_classify)

    p = sub.add_parser("ideals", help="enumerate the ideal lattice")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(handler=_run_ideals)

    p = sub.add_parser("decompose", help="split into local factors")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(handler=_run_decompose)

    p = sub.add_parser("module", help="module-level checks")
    msub = p.add_subparsers(dest="module_command", required=True)
    sgp = msub.add_parser("sgp", help="strongly-Gorenstein-projective decision")
    sgp.add_argument("--ring", required=True)
    sgp.add_argument("--rel", required=True, help="presentation matrix")
    _add_common(sgp)
    sgp.set_defaults(handler=_run_module_sgp)

    p = sub.add_parser("resolve", help="free resolution of a presented module")
    p.add_argument("--ring", required=True)
    p.add_argument("--rel", required=True)
    p.add_argument("--length", type=int, default=3)
    _add_common(p)
    p.set_defaults(handler=_run_resolve)

    p = sub.add_parser("verify-paper", help="run the theorem-verification suite")
    p.add_argument("--catalog", default="default", choices=["default", "quick"])
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="negate one classifier route; the suite must then fail (self-test)",
    )
    _add_common(p)
    p.set_defaults(handler=_run_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, NonLocalRingError, PreconditionError, RingMismatchError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
