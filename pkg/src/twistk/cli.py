"""
Command-line front end.

Every subcommand writes one JSON report to stdout (or ``--out``) and a short
human summary to stderr. Exit codes: 0 success, 1 invalid input, 2 no lift
exists (exhaustive), 3 search budget exceeded, 4 abelianized row not exact.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Optional

from typing_extensions import TypeAlias

from twistk.cohomology.cocycles import are_equivalent, pushforward
from twistk.cohomology.delta import dixmier_douady
from twistk.cohomology.lifting import LiftSearch
from twistk.complexes.cochains import Cocycle1, first_cocycle_failure
from twistk.complexes.complex import validate_complex
from twistk.complexes.h2 import h2_presentation
from twistk.core.errors import ExactnessFailure, FormatError, SearchBudgetExceeded, TwistkError, ValidationError
from twistk.core.settings import Settings
from twistk.cuntz.expr import format_element, parse_element
from twistk.cuntz.words import CuntzElement
from twistk.groups.abelian import AbelianGroup
from twistk.groups.abelianize import abelianize
from twistk.groups.extension import abelianized_row, make_extension
from twistk.groups.table import normalizer_in_ambient
from twistk.io.codecs import element_labels, elements_from_json
from twistk.io.workspace import Workspace, fixture_names, read_fixture
from twistk.repcat.characters import character_table
from twistk.repcat.intertwiners import cross_check, expected_dimension, is_intertwiner
from twistk.tensorcat.embedding import EmbeddingKind, embedding_status
from twistk.tensorcat.ktheory import k0_graph, k0_trivial_inclusion
from twistk.tensorcat.special import delta_of_category

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_INVALID", "EXIT_NO_LIFT", "EXIT_INCONCLUSIVE", "EXIT_NOT_EXACT"]

logger = logging.getLogger("twistk")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_LIFT = 2
EXIT_INCONCLUSIVE = 3
EXIT_NOT_EXACT = 4

Report: TypeAlias = dict[str, Any]
Handler: TypeAlias = Callable[[argparse.Namespace, Workspace], tuple[Report, int]]


def _need(args: argparse.Namespace, name: str) -> Any:
    value = getattr(args, name, None)
    if value is None:
        raise ValidationError(f"--{name.replace('_', '-')} is required for {args.command} {args.action}")
    return value


def _orders(text: str) -> list[int]:
    parts = [x.strip() for x in text.split(",") if x.strip()]
    if not parts or not all(p.isdigit() and int(p) > 0 for p in parts):
        raise FormatError(f"--coeff must be comma-separated positive orders, got {text!r}")
    return [int(p) for p in parts]


# -- group ---------------------------------------------------------------------


def _group(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    if args.action == "normalizer":
        ambient = ws.group(_need(args, "ambient"))
        sub = elements_from_json(ambient, _need(args, "sub"))
        normalizer = normalizer_in_ambient(ambient, sub)
        logger.info("normalizer has order %d in a group of order %d", len(normalizer), ambient.order)
        return {"normalizer": list(normalizer), "labels": element_labels(ambient, normalizer)}, EXIT_OK
    group = ws.group(_need(args, "group"))
    if args.action == "abelianize":
        ab = abelianize(group)
        logger.info("abelianization: %s", ab.group)
        return {
            "group": str(ab.group),
            "invariant_factors": list(ab.group.invariant_factors),
            "commutator_subgroup": list(ab.commutator_subgroup),
            "projection": [list(x) for x in ab.images],
        }, EXIT_OK
    report = group.describe()
    report["characters"] = character_table(group).to_json()
    report["abelianization"] = str(abelianize(group).group)
    logger.info("group of order %d, %d conjugacy classes", group.order, len(group.conjugacy_classes))
    return report, EXIT_OK


# -- extension -------------------------------------------------------------------


def _extension(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    if args.action == "make":
        N = ws.group(_need(args, "N"))
        extension = make_extension(N, elements_from_json(N, _need(args, "G")))
    else:
        extension = ws.extension(_need(args, "extension"))
    report: Report = extension.describe()
    if args.action == "check":
        row = abelianized_row(extension)
        report.update({"exact": True, "Gab": str(row.Gab), "Nab": str(row.Nab), "Qab": str(row.Qab)})
        logger.info("abelianized row %s -> %s -> %s is exact", row.Gab, row.Nab, row.Qab)
    else:
        logger.info("extension of orders %d -> %d -> %d", extension.G.order, extension.N.order, extension.Q.order)
    return report, EXIT_OK


# -- complex ---------------------------------------------------------------------


def _complex(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    complex_ = ws.complex(_need(args, "complex"))
    if args.action == "h2":
        orders = _orders(str(_need(args, "coeff")))
        presentation = h2_presentation(complex_, AbelianGroup.from_orders(orders))
        logger.info("H^2 with coefficients %s is %s", presentation.coefficients, presentation.class_group)
        return {"coefficients": str(presentation.coefficients), "group": str(presentation.class_group)}, EXIT_OK
    report = validate_complex(complex_)
    logger.info("complex ok: f-vector %s, homology %s", list(report.f_vector), [str(h) for h in report.homology])
    return report.to_json(), EXIT_OK


# -- cocycle ---------------------------------------------------------------------


def _cocycle(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    action = args.action
    if action in ("delta", "lift", "push"):
        extension = ws.extension(_need(args, "extension"))
        group = extension.N if action == "push" else extension.Q
        cochain = ws.cochain(_need(args, "cocycle"), group=group)
        if action == "push":
            image = pushforward(extension.p, Cocycle1.of(cochain))
            return {"edges": image.to_json()}, EXIT_OK
        if action == "delta":
            cls = dixmier_douady(extension, Cocycle1.of(cochain))
            logger.info("delta = %s in %s", list(cls.coordinates), cls.group)
            return cls.to_json(), EXIT_OK
        budget = args.budget or ws.settings.search_budget
        outcome = LiftSearch(extension, Cocycle1.of(cochain), budget=budget).run()
        if outcome.lift is None:
            logger.info("no lift exists (%d nodes searched)", outcome.nodes)
            return {"found": False, "exhaustive": True, "nodes": outcome.nodes}, EXIT_NO_LIFT
        logger.info("lift found after %d nodes", outcome.nodes)
        return {"found": True, "nodes": outcome.nodes, "lift": outcome.lift.to_json()}, EXIT_OK

    cochain = ws.cochain(_need(args, "cocycle"))
    if action == "equiv":
        other = ws.cochain(_need(args, "other"), group=cochain.group, complex_=cochain.complex)
        gauge = are_equivalent(Cocycle1.of(cochain), Cocycle1.of(other))
        logger.info("equivalent: %s", gauge is not None)
        return {"equivalent": gauge is not None, "gauge": None if gauge is None else list(gauge)}, EXIT_OK
    failure = first_cocycle_failure(cochain)
    logger.info("cocycle identity %s", "holds" if failure is None else f"fails on {list(failure)}")
    report = {"cocycle": failure is None, "failure": None if failure is None else list(failure)}
    return report, EXIT_OK if failure is None else EXIT_INVALID


# -- rep -------------------------------------------------------------------------


def _rep(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    rep = ws.rep(_need(args, "rep"))
    if args.action == "intertwiners":
        r, s = _need(args, "r"), _need(args, "s")
        basis = cross_check(rep, r, s, settings=ws.settings)
        logger.info("dim (H^%d, H^%d)_G = %d", r, s, basis.dimension)
        return {
            "r": r,
            "s": s,
            "dimension": basis.dimension,
            "character_dimension": expected_dimension(rep, r, s),
            "basis": basis.to_json(),
        }, EXIT_OK
    report = rep.summary()
    report["degrees"] = list(character_table(rep.group).degrees)
    logger.info("%d-dimensional representation of a group of order %d", rep.d, rep.group.order)
    return report, EXIT_OK


# -- cuntz -----------------------------------------------------------------------


def _cuntz(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    d = _need(args, "d")
    element = parse_element(_need(args, "expr"), d)
    report: Report = {"d": d, "normal_form": format_element(element), "element": element.to_json()}
    degrees = element.degrees()
    if len(degrees) == 1 and not element.is_zero():
        r, s = next(iter(degrees))
        matrix = element.to_matrix()
        report.update({"r": r, "s": s, "matrix": matrix.to_json()})
        if args.action == "check-matrix":
            back = CuntzElement.from_matrix(d, matrix, r, s)
            report["round_trip"] = back == element
            if args.rep is not None:
                rep = ws.rep(args.rep)
                report["intertwiner"] = is_intertwiner(rep, matrix, r, s)
    elif args.action == "check-matrix":
        raise ValidationError("check-matrix needs a nonzero element of a single degree")
    logger.info("%s", report["normal_form"])
    return report, EXIT_OK


# -- category --------------------------------------------------------------------


def _category(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    category = ws.category(_need(args, "spec"), rs_bound=args.rs_bound)
    if args.action == "delta":
        cls = delta_of_category(category)
        logger.info("delta(TQ) = %s in %s", list(cls.coordinates), cls.group)
        return cls.to_json(), EXIT_OK
    if args.action == "embed":
        status = embedding_status(category, budget=args.budget)
        logger.info("embedding status: %s", status.kind.value)
        return status.to_json(), EXIT_OK if status.kind is EmbeddingKind.EMBEDDABLE else EXIT_NO_LIFT
    if args.action == "k0":
        result = k0_graph(category, args.rmax)
        inclusion = k0_trivial_inclusion(result)
        report = result.to_json()
        report.update(inclusion.to_json())
        logger.info("K0 = %s, stabilized at %s", result.group, result.stabilized_at)
        return report, EXIT_OK
    logger.info("special category built for (r, s) with r + s <= %d", category.rs_bound)
    return category.to_json(), EXIT_OK


# -- fixtures --------------------------------------------------------------------


_KIND_LOADERS: dict[str, Callable[[Workspace, str], Any]] = {
    "group": lambda ws, name: ws.group(name),
    "extension": lambda ws, name: ws.extension(name),
    "complex": lambda ws, name: validate_complex(ws.complex(name)),
    "cocycle": lambda ws, name: Cocycle1.of(ws.cochain(name)),
    "rep": lambda ws, name: ws.rep(name),
    "category": lambda ws, name: ws.category(name),
}


def _fixtures(args: argparse.Namespace, ws: Workspace) -> tuple[Report, int]:
    names = fixture_names()
    if args.action == "list":
        kinds = {name: json.loads(read_fixture(name)).get("kind") for name in names}
        return {"fixtures": [{"name": n, "kind": kinds[n]} for n in names]}, EXIT_OK
    checked = []
    for name in names:
        kind = json.loads(read_fixture(name)).get("kind")
        if kind not in _KIND_LOADERS:
            raise FormatError(f"Fixture {name} has unknown kind {kind!r}")
        _KIND_LOADERS[kind](ws, name)
        checked.append({"name": name, "kind": kind, "ok": True})
    logger.info("%d fixtures load and validate", len(checked))
    return {"fixtures": checked}, EXIT_OK


_HANDLERS: dict[str, Handler] = {
    "group": _group,
    "extension": _extension,
    "complex": _complex,
    "cocycle": _cocycle,
    "rep": _rep,
    "cuntz": _cuntz,
    "category": _category,
    "fixtures": _fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistk",
        description="Lifting obstructions, intertwiner categories and twisted K-theory for finite structure groups.",
    )
    parser.add_argument("--out", type=Path, help="Write the JSON report here instead of stdout.")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log computation steps to stderr.")
    commands = parser.add_subparsers(dest="command", required=True)

    group = commands.add_parser("group", help="Finite group tables.")
    group.add_argument("action", choices=["info", "abelianize", "normalizer"])
    group.add_argument("--group")
    group.add_argument("--ambient")
    group.add_argument("--sub", help="Subgroup elements as 'i,j,...' (indices or labels).")

    extension = commands.add_parser("extension", help="Extensions 1 -> G -> N -> Q -> 1.")
    extension.add_argument("action", choices=["make", "check"])
    extension.add_argument("--N", dest="N")
    extension.add_argument("--G", dest="G", help="Normal subgroup elements as 'i,j,...'.")
    extension.add_argument("--extension")

    complex_ = commands.add_parser("complex", help="Simplicial complexes.")
    complex_.add_argument("action", choices=["validate", "h2"])
    complex_.add_argument("--complex")
    complex_.add_argument("--coeff", help="Coefficient group as cyclic orders, e.g. '2,4'.")

    cocycle = commands.add_parser("cocycle", help="1-cocycles, their classes and lifts.")
    cocycle.add_argument("action", choices=["validate", "equiv", "push", "delta", "lift"])
    cocycle.add_argument("--cocycle")
    cocycle.add_argument("--other")
    cocycle.add_argument("--extension")
    cocycle.add_argument("--budget", type=int)

    rep = commands.add_parser("rep", help="Unitary representations and intertwiners.")
    rep.add_argument("action", choices=["validate", "intertwiners"])
    rep.add_argument("--rep")
    rep.add_argument("--r", type=int)
    rep.add_argument("--s", type=int)

    cuntz = commands.add_parser("cuntz", help="Cuntz algebra words.")
    cuntz.add_argument("action", choices=["eval", "check-matrix"])
    cuntz.add_argument("--d", type=int)
    cuntz.add_argument("--expr")
    cuntz.add_argument("--rep")

    category = commands.add_parser("category", help="Special categories T(q).")
    category.add_argument("action", choices=["build", "delta", "embed", "k0"])
    category.add_argument("--spec")
    category.add_argument("--rmax", type=int)
    category.add_argument("--rs-bound", dest="rs_bound", type=int)
    category.add_argument("--budget", type=int)

    fixtures = commands.add_parser("fixtures", help="Bundled fixtures.")
    fixtures.add_argument("action", choices=["list", "validate"])
    return parser


def _emit(report: Report, out: Optional[Path]) -> None:
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s" if args.verbose else "%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if args.verbose else logging.INFO)
    try:
        settings = Settings.from_env()
        if getattr(args, "budget", None) is not None:
            settings = replace(settings, search_budget=args.budget)
        workspace = Workspace(settings=settings)
        report, code = _HANDLERS[args.command](args, workspace)
    except ExactnessFailure as exc:
        logger.error("abelianized row is not exact: %s", exc)
        report = {"ok": False, "error": "ExactnessFailure", "diagnosis": exc.diagnosis, "message": str(exc)}
        code = EXIT_NOT_EXACT
    except SearchBudgetExceeded as exc:
        logger.error("inconclusive: %s", exc)
        report = {"ok": False, "error": "SearchBudgetExceeded", "inconclusive": True, "nodes": exc.nodes}
        code = EXIT_INCONCLUSIVE
    except (TwistkError, OSError) as exc:
        logger.error("%s", exc)
        report = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
        code = EXIT_INVALID
    finally:
        logger.removeHandler(handler)
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
