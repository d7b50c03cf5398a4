"""Command-line front end: ``cremona VERB [maps...]``.

Maps are given inline or through ``--input FILE`` in the form ``[p0 : p1 : p2]``.
A word ``f g h`` means f o g o h, with h applied first.
Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Iterable, List

from . import amalgam, square_complex
from .abelianization import Phi_word, generator_letter
from .birational_maps import (
    BirationalMap,
    compose_word,
    is_identity,
    proper_base_points,
)
from .errors import InvariantViolation, SymbolicOnly, ValidationError
from .generators import GeneratorTag, classify, is_in_Jcirc, is_in_Jstar, sigma, sigma_std
from .parsing import parse_maps, parse_orbits
from .sampling import quintic_pool, random_disc_instance, random_translation_vectors
from .sarkisov_links import (
    LinkWord,
    decompose_de_jonquieres,
    hirzebruch_index,
    parity_rule_holds,
    quintic_to_c6_link,
    sigma_link_factorization,
    three_real_quadratic_path,
)

VERBS = ("analyze", "compose", "phi", "classify", "decompose", "verify-disc",
         "amalgam-reduce", "coset-separate", "ball")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

class Report:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def emit(self, record: dict):
        if self.fmt == "json-lines":
            self.out.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
            return
        for k in sorted(record):
            self.out.write(f"{k}: {_human(record[k])}\n")
        self.out.write("\n")


def _human(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_human(v[k])}" for k in sorted(v)) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _need(maps: List[BirationalMap], count: int = None, at_least: int = 1):
    if count is not None and len(maps) != count:
        raise ValidationError(f"expected {count} map(s), got {len(maps)}")
    if len(maps) < at_least:
        raise ValidationError(f"expected at least {at_least} map(s)")


def _base_point_records(f: BirationalMap):
    """Orbit records and whether infinitely near points are needed to account for the degree."""
    if f.degree == 1:
        return [], False
    try:
        data = proper_base_points(f)
    except ValidationError as e:
        return f"unavailable: {e}", None
    total = sum(o.size() * m for o, m in data)
    return [{"orbit": str(o), "multiplicity": m} for o, m in data], total != 3 * (f.degree - 1)


def _phi_or_note(f: BirationalMap):
    try:
        return Phi_word([generator_letter(f)]).to_json()["support"]
    except ValidationError as e:
        return f"unavailable: {e}"


def cmd_analyze(args, maps, report):
    _need(maps, at_least=1)
    for f in maps:
        points, near = _base_point_records(f)
        report.emit({
            "map": str(f),
            "degree": f.degree,
            "base_points": points,
            "infinitely_near": near,
            "tag": str(classify(f)),
            "in_jstar": is_in_Jstar(f) is not None,
            "in_jcirc": is_in_Jcirc(f) is not None,
            "factor_class": amalgam.classify_letter(f).variant,
            "phi": _phi_or_note(f),
        })


def cmd_compose(args, maps, report):
    _need(maps, at_least=1)
    f = compose_word(maps)
    report.emit({"map": str(f), "degree": f.degree, "identity": is_identity(f)})


def cmd_phi(args, maps, report):
    _need(maps, at_least=1)
    report.emit(Phi_word([generator_letter(f) for f in maps]).to_json())


def cmd_classify(args, maps, report):
    _need(maps, at_least=1)
    for f in maps:
        report.emit(dict(amalgam.classify_letter(f).to_record(), tag=str(classify(f)), map=str(f)))


def decompose(f: BirationalMap):
    """Link word for f, chosen by its generator tag."""
    tag = classify(f)
    if tag is GeneratorTag.Sigma:
        return sigma_link_factorization()
    if tag is GeneratorTag.ThreeRealQuadratic:
        return three_real_quadratic_path(f)
    if tag is GeneratorTag.StandardQuintic and is_in_Jcirc(f) is not None:
        return LinkWord((quintic_to_c6_link(f),))
    if is_in_Jstar(f) is not None:
        return decompose_de_jonquieres(f)
    raise ValidationError(f"no decomposition available for a map tagged {tag}")


def cmd_decompose(args, maps, report):
    _need(maps, count=1)
    word = decompose(maps[0])
    report.emit({
        "kinds": list(word.kinds()),
        "links": word.to_records(),
        "hirzebruch_indices": word.hirzebruch_indices(),
        "parity_rule": parity_rule_holds(word),
    })


def cmd_verify_disc(args, maps, report):
    if not args.schema:
        raise ValidationError("verify-disc needs --schema D1..D6")
    sch = square_complex.schema(args.schema)
    if args.points:
        inst = square_complex.instantiate(sch, parse_orbits(args.points))
    else:
        inst = random_disc_instance(sch.id, random.Random(args.seed))
    rec = inst.to_record()
    if all(hirzebruch_index(v) is not None for v in inst.cycle() if v.rank == 1):
        rec["corner_indices"] = square_complex.corner_indices(inst)
    try:
        alpha = square_complex.verify_elementary_relation(inst)
        rec.update(verdict="closes", composite=str(alpha), composite_degree=alpha.degree)
    except SymbolicOnly as e:
        rec.update(verdict="symbolic", note=str(e))
    report.emit(rec)


def cmd_amalgam_reduce(args, maps, report):
    w = amalgam.word_of(maps)
    r = amalgam.reduce(w)
    report.emit({
        "input_length": len(w),
        "reduced_length": len(r),
        "letters": r.to_records(),
        "reduced": amalgam.is_reduced(r),
        "nontrivial": amalgam.nontriviality_certificate(r),
    })


def cmd_coset_separate(args, maps, report):
    if maps:
        vecs = [amalgam.translation_vector(t) for t in maps]
    else:
        vecs = random_translation_vectors(random.Random(args.seed), args.count)
    ts = [amalgam.translation(a, b) for a, b in vecs]
    separated = 0
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            c = amalgam.coset_certificate(ts[i], ts[j])
            separated += c.separated
            report.emit({
                "alpha": [str(x) for x in vecs[i]],
                "beta": [str(x) for x in vecs[j]],
                "separated": c.separated,
                "degree": c.composite.degree,
                "base_points": list(c.base_points),
                "infinitely_near": c.infinitely_near,
            })
    report.emit({"translations": len(ts), "pairs": len(ts) * (len(ts) - 1) // 2, "separated": separated})


def cmd_ball(args, maps, report):
    if maps:
        words = [amalgam.reduce(amalgam.word_of(maps))]
    else:
        q = quintic_pool(1)[0]
        s = sigma_std()
        words = [amalgam.word_of([s, q]), amalgam.word_of([q, s])]
    tree = amalgam.bass_serre_ball(words, args.radius)
    report.emit({
        "radius": args.radius,
        "vertices": len(tree.vertices),
        "edges": len(tree.edges),
        "is_tree": tree.is_tree(),
        "edge_list": tree.to_edge_list(),
        "sigma_fixes": amalgam.fixed_base_vertices(amalgam.word_of([sigma()])),
    })


COMMANDS = {
    "analyze": cmd_analyze,
    "compose": cmd_compose,
    "phi": cmd_phi,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "verify-disc": cmd_verify_disc,
    "amalgam-reduce": cmd_amalgam_reduce,
    "coset-separate": cmd_coset_separate,
    "ball": cmd_ball,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("maps", nargs="*", help="inline maps such as '[x*z : y*z : x^2+y^2]'")
    p.add_argument("--input", metavar="FILE", help="read maps from FILE (appended after inline maps)")
    p.add_argument("--format", choices=("human", "json-lines"), default="human")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled data")
    p.add_argument("--schema", choices=("D1", "D2", "D3", "D4", "D5", "D6"))
    p.add_argument("--points", help="disc point data such as '[1:2:3] [1:i:2]'")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--count", type=int, default=10, help="number of sampled translations")
    return p


def _read_maps(args) -> List[BirationalMap]:
    texts: Iterable[str] = list(args.maps)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            texts = list(texts) + [fh.read()]
    maps = []
    for text in texts:
        for parsed in parse_maps(text):
            for note in parsed.notices:
                print(f"notice: {note}", file=sys.stderr)
            maps.append(parsed.map)
    return maps


def run(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    report = Report(args.format, out)
    try:
        maps = _read_maps(args)
        COMMANDS[args.verb](args, maps, report)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # anything else is a bug, reported as an internal failure
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
