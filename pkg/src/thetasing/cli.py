"""Command line front end.

Every command prints deterministic, byte-stable output (sorted keys, exact
fractions) and exits 0 on success, 2 when a verification command finds a
mismatch.  The `records` format emits one self-describing line per term:

    lambda=<e1,...,eg> word=<tag*tag or 1> num=<int> den=<int> prov=<tag>

which `parse_record_line` reads back.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import boundary, characteristics, pipeline, tautring

DEFAULT_SEED = 20260819
DEFAULT_SAMPLES = 100000

COMMANDS = (
    "open-class",
    "compactified-class",
    "taut-projection",
    "product-taut",
    "ij-taut",
    "verify-identities",
    "verify-counts",
    "ring-info",
)


def _parse_data_overrides(items: list[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in items:
        kind, sep, path = item.partition("=")
        if not sep or kind not in ("identities", "normalizations", "boundary-relations"):
            raise SystemExit(f"bad --data {item!r}; expected kind=path with kind in "
                             "identities|normalizations|boundary-relations")
        out[kind] = path
    return out


def _record(g: int, mono, word, value: Fraction, prov: str) -> str:
    lam = ",".join(str(e) for e in mono)
    w = "*".join(word) or "1"
    return f"lambda={lam} word={w} num={value.numerator} den={value.denominator} prov={prov}"


def parse_record_line(line: str) -> dict:
    fields = dict(part.split("=", 1) for part in line.split())
    word = () if fields["word"] == "1" else tuple(fields["word"].split("*"))
    return {
        "lambda": tuple(int(e) for e in fields["lambda"].split(",")),
        "word": word,
        "value": Fraction(int(fields["num"]), int(fields["den"])),
        "prov": fields["prov"],
    }


def _emit_taut(g: int, elem, pin_key: str, fmt: str, out) -> None:
    pins = pipeline.PUBLISHED_TAUT.get((pin_key, g))
    for mono in sorted(elem):
        value = elem[mono]
        prov = "paper" if pins is not None and pins.get(mono) == value else "derived"
        if fmt == "records":
            out.write(_record(g, mono, (), value, prov) + "\n")
        else:
            out.write(f"{value} * {pipeline._format_lam(mono)}  [{prov}]\n")
    if not elem:
        prov = "paper" if pins == {} else "derived"
        out.write("0" + (f"  [{prov}]\n" if fmt == "text" else f" prov={prov}\n"))


def _emit_mixed(g: int, fmt: str, out) -> int:
    if g in pipeline.PUBLISHED_COMPACTIFIED:
        rows = pipeline.compare_with_published(g)
    else:
        mc = pipeline._raw_compactified(g)
        rows = [
            pipeline.ComparisonRow(k[0], k[1], v, None)
            for k, v in mc.sorted_items()
        ]
    conflicts = 0
    for row in rows:
        value = row.engine if row.engine is not None else Fraction(0)
        status = row.status
        if status == "conflict":
            conflicts += 1
        if fmt == "records":
            out.write(_record(g, row.lam_mono, row.word, value, status) + "\n")
            if status in ("conflict", "paper-only"):
                out.write(
                    f"# published value: {row.published.numerator}/{row.published.denominator}\n"
                )
        else:
            line = (
                f"{value} * {pipeline._format_lam(row.lam_mono)}"
                f"*{pipeline._format_word(row.word)}  [{status}]"
            )
            if status in ("conflict", "paper-only"):
                line += f"  (published: {row.published})"
            out.write(line + "\n")
    if g == 2:
        reduced = pipeline.class_compactified(2)
        out.write(
            "# after the genus-2 word relations the class is "
            + ("0\n" if reduced.is_zero() else "NOT zero\n")
        )
        if not reduced.is_zero():
            return 2
    return 2 if conflicts else 0


def _cmd_verify_identities(args, overrides, out) -> int:
    identities = boundary.load_identities(overrides.get("identities"))
    g = args.genus if args.genus is not None else 3
    if not 1 <= g <= 3:
        raise SystemExit("identities can be checked concretely only for genus 1..3")
    failures = 0
    for ident in identities:
        report = boundary.check_identity(ident, g)
        ok = report.concrete_ok and report.symbolic_ok
        if not ok:
            failures += 1
        status = "ok" if ok else "FAIL"
        out.write(
            f"{status} {ident.name} concrete={report.concrete_ok} "
            f"symbolic={report.symbolic_ok}\n"
        )
        if report.counterexample is not None:
            out.write(f"#   first difference: {report.counterexample}\n")
    out.write(f"# checked {len(identities)} identities at genus {g}\n")
    return 2 if failures else 0


def _cmd_verify_counts(args, out) -> int:
    failures = 0
    genera = [args.genus] if args.genus is not None else [1, 2, 3, 4, 5]
    rng = random.Random(args.seed)
    for g in genera:
        checked = 0
        bad = 0
        if characteristics.count_vanishing(g, ()) != characteristics.brute_force_count(g, ()):
            bad += 1
        checked += 1
        if g <= 3:
            mode = "exhaustive"
            for labels in characteristics.orthogonal_tuples(g, 5):
                expected = characteristics.brute_force_count(g, labels)
                got = characteristics.count_vanishing(g, labels)
                checked += 1
                if got != expected:
                    bad += 1
                    if bad <= 3:
                        out.write(f"# MISMATCH g={g} labels={labels} {got} != {expected}\n")
        else:
            mode = f"sampled({args.samples})"
            for _ in range(args.samples):
                labels = characteristics.random_orthogonal_tuple(rng, g)
                expected = characteristics.brute_force_count(g, labels)
                got = characteristics.count_vanishing(g, labels)
                checked += 1
                if got != expected:
                    bad += 1
                    if bad <= 3:
                        out.write(f"# MISMATCH g={g} labels={labels} {got} != {expected}\n")
        status = "ok" if bad == 0 else "FAIL"
        out.write(f"{status} genus={g} mode={mode} tuples={checked} mismatches={bad}\n")
        failures += bad
    return 2 if failures else 0


def _cmd_ring_info(args, out) -> int:
    g = args.genus
    if g is None:
        raise SystemExit("ring-info needs --genus")
    R = tautring.ring(g, open_variant=args.open)
    dims = ",".join(str(R.dimension(d)) for d in range(R.top + 1))
    out.write(f"genus={g} open={args.open} top={R.top} dims={dims} "
              f"total={R.total_dimension()}\n")
    if not args.open:
        norm, source = tautring.load_normalizations()[g]
        out.write(
            f"top_basis={pipeline._format_lam(R.top_mono)} "
            f"normalization={norm.numerator}/{norm.denominator}\n"
        )
        out.write(f"# normalization source: {source}\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="thetasing",
        description="Exact boundary and tautological computations for the "
        "singular-theta two-torsion locus, genus up to five.",
    )
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--genus", type=int, default=None)
    parser.add_argument("--format", choices=("text", "records"), default="text")
    parser.add_argument("--data", action="append", default=[],
                        metavar="KIND=PATH",
                        help="override a bundled data file "
                        "(identities|normalizations|boundary-relations)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    parser.add_argument("--open", action="store_true",
                        help="use the open-variant ring for ring-info")
    args = parser.parse_args(argv)
    overrides = _parse_data_overrides(args.data)
    if "normalizations" in overrides:
        tautring.set_normalizations_path(overrides["normalizations"])
    if "boundary-relations" in overrides:
        pipeline.set_boundary_relations_path(overrides["boundary-relations"])
    out = sys.stdout

    needs_genus = {
        "open-class", "compactified-class", "taut-projection", "product-taut",
    }
    if args.command in needs_genus and args.genus is None:
        raise SystemExit(f"{args.command} needs --genus")

    if args.command == "open-class":
        _emit_taut(args.genus, pipeline.class_open(args.genus), "open-class",
                   args.format, out)
        return 0
    if args.command == "compactified-class":
        return _emit_mixed(args.genus, args.format, out)
    if args.command == "taut-projection":
        _emit_taut(args.genus, pipeline.taut_projection(args.genus),
                   "taut-projection", args.format, out)
        return 0
    if args.command == "product-taut":
        _emit_taut(args.genus, pipeline.product_locus_taut(args.genus),
                   "product-taut", args.format, out)
        return 0
    if args.command == "ij-taut":
        _emit_taut(5, pipeline.ij_taut(), "ij-taut", args.format, out)
        return 0
    if args.command == "verify-identities":
        return _cmd_verify_identities(args, overrides, out)
    if args.command == "verify-counts":
        return _cmd_verify_counts(args, out)
    if args.command == "ring-info":
        return _cmd_ring_info(args, out)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
