"""JSONL regression vectors: one operation call and its expected result per line.

A record looks like::

    {"op": "mul_c", "args": {"x": "1,2,3", "y": "2,1,1"}, "expect": "1,2,2",
     "provenance": {"tag": "paper", "cite": "product rule, case m > n"}}

``expect`` may be ``{"error": CODE}`` for calls that must raise.  Results
are compared in their text encoding: elements as "k,l,m" / "i,j" /
"C:..." / "B:..." / "0", sets as sorted lists, witness pairs as
``{"u": ..., "v": ...}``, reports as a subset of their JSON form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import algebra, extensions, topology, words
from .elements import BicyclicNF, CanonC, Region
from .errors import CsgkError, VectorIOError, VectorParseError
from .report import Report, encode

PROVENANCE_TAGS = ("paper", "trivial", "derived")


@dataclass(frozen=True)
class VectorRecord:
    op: str
    args: dict[str, Any]
    expect: Any
    provenance: dict[str, str] = field(default_factory=dict)
    line: int = 0


def _c(text: str) -> CanonC:
    return CanonC.parse(text)


def _b(text: str) -> BicyclicNF:
    return BicyclicNF.parse(text)


def _region(text: str) -> Region:
    return Region.parse(text)


def _tau(a: dict) -> topology.TauPParams:
    return topology.TauPParams(int(a["p"]), int(a["alpha"]), int(a["lambda_max"]))


def _corrupted_star(x, y):
    # m = n branch of C ★ B shifted by one: a deliberately broken operation
    if isinstance(x, CanonC) and isinstance(y, BicyclicNF) and x.m == y.i:
        return BicyclicNF(x.k, y.j + 1)
    return extensions.star_mul(x, y)


def _corrupted_hom(x: CanonC) -> BicyclicNF:
    return BicyclicNF(x.k + (x.l % 2), x.m)


NEGATIVE_SYSTEM = words.RewriteSystem("negative", (("ab", "a"), ("ba", "b")))
SYSTEMS = {"C": words.C_SYSTEM, "B": words.B_SYSTEM, "negative": NEGATIVE_SYSTEM}


def _witness(w: algebra.WitnessPair | None) -> dict | None:
    return None if w is None else {"u": w.u, "v": w.v}


def _elements(values) -> list[str]:
    return sorted(str(v) for v in values)


def _ext_elements(values) -> list[str]:
    return sorted(extensions.format_ext(v) for v in values)


def _report(rep: Report) -> dict:
    return rep.to_dict()


def _h_scan(a: dict) -> int:
    elems = list(_region(a["region"]))
    maxlen = int(a["maxlen"])
    return sum(1 for x in elems for y in elems if x != y and algebra.h_related(x, y, maxlen))


def _simple_scan(a: dict) -> int:
    elems = list(_region(a["region"]))
    maxlen = a.get("maxlen")
    missing = 0
    for x in elems:
        for y in elems:
            w = algebra.simple_witness(x, y, None if maxlen is None else int(maxlen))
            if w is None or not algebra.check_witness(w.u, x, w.v, y):
                missing += 1
    return missing


def _zero_continuity(a: dict) -> Report:
    m = nn = pp = None
    if a.get("x"):
        m, nn, pp = _c(a["x"])
    return topology.check_zero_continuity(
        m, nn, pp, int(a["i"]), _region(a["region"]), conditions=tuple(a.get("conditions", ("i", "ii", "iii")))
    )


OPS: dict[str, Callable[[dict], Any]] = {
    "parse_word": lambda a: words.parse_word(a["text"]),
    "reduce_c": lambda a: words.reduce_c(a["w"]),
    "to_normal_c": lambda a: str(words.to_normal_c(a["w"])),
    "from_normal_c": lambda a: words.from_normal_c(_c(a["x"])),
    "to_normal_b": lambda a: str(words.to_normal_b(a["w"])),
    "oracle_mul_c": lambda a: str(words.oracle_mul_c(_c(a["x"]), _c(a["y"]))),
    "critical_pairs_check": lambda a: words.critical_pairs_check(SYSTEMS[a["system"]]).to_dict(),
    "mul_c": lambda a: str(algebra.mul_c(_c(a["x"]), _c(a["y"]))),
    "mul_b": lambda a: str(algebra.mul_b(_b(a["x"]), _b(a["y"]))),
    "pow_c": lambda a: str(algebra.pow_c(_c(a["x"]), int(a["n"]))),
    "hom_h": lambda a: str(algebra.hom_h(_c(a["x"]))),
    "hom_pair": lambda a: {
        "h(xy)": str(algebra.hom_h(algebra.mul_c(_c(a["x"]), _c(a["y"])))),
        "h(x)h(y)": str(algebra.mul_b(algebra.hom_h(_c(a["x"])), algebra.hom_h(_c(a["y"])))),
    },
    "phi": lambda a: str(algebra.phi(int(a["i"]), int(a["j"]), _c(a["x"]))),
    "enumerate_region": lambda a: [str(x) for x in algebra.enumerate_region(_region(a["region"]))],
    "region_size": lambda a: len(algebra.enumerate_region(_region(a["region"]))),
    "solve_equation": lambda a: _elements(
        algebra.solve_equation(algebra.EquationShape.parse(a["shape"]), _c(a["rhs"]), _region(a["region"]))
    ),
    "green_witness": lambda a: _witness(algebra.green_witness(a["side"], _c(a["x"]), _c(a["y"]), int(a["maxlen"]))),
    "h_related": lambda a: algebra.h_related(_c(a["x"]), _c(a["y"]), int(a["maxlen"])),
    "h_scan": _h_scan,
    "simple_witness": lambda a: _witness(algebra.simple_witness(_c(a["x"]), _c(a["y"]), int(a["maxlen"]))),
    "simple_scan": _simple_scan,
    "apply_translation": lambda a: str(algebra.apply_translation(a["side"], _c(a["c"]), _c(a["x"]))),
    "is_fixed": lambda a: algebra.is_fixed(a["side"], _c(a["c"]), _c(a["x"])),
    "is_idempotent": lambda a: algebra.is_idempotent(_c(a["x"])),
    "idempotent_scan": lambda a: sum(1 for x in _region(a["region"]) if algebra.is_idempotent(x)),
    "star_mul": lambda a: extensions.format_ext(
        extensions.star_mul(extensions.parse_ext(a["x"]), extensions.parse_ext(a["y"]))
    ),
    "zero_mul": lambda a: extensions.format_ext(
        extensions.zero_mul(extensions.parse_ext_zero(a["x"]), extensions.parse_ext_zero(a["y"]))
    ),
    "check_star_associativity": lambda a: _report(
        extensions.check_star_associativity(
            _region(a["region"]),
            int(a["bcap"]),
            mul=_corrupted_star if a.get("fixture") == "corrupted" else extensions.star_mul,
        )
    ),
    "check_pi_homomorphism": lambda a: _report(
        extensions.check_pi_homomorphism(
            _region(a["region"]),
            hom=_corrupted_hom if a.get("fixture") == "corrupted" else algebra.hom_h,
        )
    ),
    "nbhd_tau_p": lambda a: _elements(topology.nbhd_tau_p(_c(a["x"]), _tau(a))),
    "metric_tau_p": lambda a: str(topology.metric_tau_p(_c(a["x"]), _c(a["y"]), int(a["p"])).as_fraction()),
    "check_tau_p_product": lambda a: _report(topology.check_tau_p_product(_c(a["x"]), _c(a["y"]), _tau(a))),
    "check_tau_p_metric_base": lambda a: _report(topology.check_tau_p_metric_base(_c(a["x"]), _tau(a))),
    "nbhd_ext": lambda a: _ext_elements(
        topology.nbhd_ext(extensions.parse_ext(a["x"]), int(a["n"]), int(a["kcap"]))
    ),
    "check_ext_continuity": lambda a: _report(
        topology.check_ext_continuity(int(a["case"]), tuple(int(v) for v in a["params"]), int(a["u"]), int(a["kcap"]))  # type: ignore[arg-type]
    ),
    "nbhd_zero": lambda a: _ext_elements(topology.nbhd_zero(int(a["n"]), _region(a["region"]))),
    "in_zero_nbhd": lambda a: topology.in_zero_nbhd(extensions.parse_ext_zero(a["x"]), int(a["n"])),
    "check_zero_continuity": lambda a: _report(_zero_continuity(a)),
    "check_fix_inclusions": lambda a: _report(topology.check_fix_inclusions(int(a["n"]), _region(a["region"]))),
    "check_translation_retract": lambda a: _report(
        topology.check_translation_retract(int(a["k"]), int(a["l"]), _region(a["region"]))
    ),
}


def load_vectors(path: str | Path) -> list[VectorRecord]:
    """Parse a JSONL file; raises :class:`VectorParseError` naming the bad line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise VectorIOError(f"cannot read {path}: {exc}") from exc
    return parse_vectors(text)


def parse_vectors(text: str) -> list[VectorRecord]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise VectorParseError(f"invalid JSON: {exc.msg}", line=lineno) from None
        if not isinstance(obj, dict) or "op" not in obj or "expect" not in obj:
            raise VectorParseError("record needs 'op' and 'expect'", line=lineno)
        if obj["op"] not in OPS:
            raise VectorParseError(f"unknown op {obj['op']!r}", line=lineno)
        args = obj.get("args", {})
        if not isinstance(args, dict):
            raise VectorParseError("'args' must be an object", line=lineno)
        prov = obj.get("provenance", {})
        if prov and prov.get("tag") not in PROVENANCE_TAGS:
            raise VectorParseError(f"provenance tag must be one of {PROVENANCE_TAGS}", line=lineno)
        records.append(VectorRecord(obj["op"], args, obj["expect"], prov, lineno))
    return records


def shipped_vectors() -> list[VectorRecord]:
    return parse_vectors(resources.files("csgk").joinpath("data/vectors.jsonl").read_text(encoding="utf-8"))


def _matches(expect: Any, got: Any) -> bool:
    """Equality, except that an expected object only constrains the keys it names."""
    if isinstance(expect, dict) and isinstance(got, dict):
        return all(k in got and _matches(v, got[k]) for k, v in expect.items())
    if isinstance(expect, list) and isinstance(got, list):
        return len(expect) == len(got) and all(_matches(e, g) for e, g in zip(expect, got))
    return expect == got


def evaluate(record: VectorRecord) -> Any:
    try:
        return encode(OPS[record.op](record.args))
    except CsgkError as exc:
        return {"error": exc.code}


def replay_vectors(records: list[VectorRecord]) -> Report:
    report = Report("replay", params={"records": len(records)})
    for rec in records:
        report.items_tested += 1
        got = evaluate(rec)
        if not _matches(rec.expect, got):
            report.fail({"line": rec.line, "op": rec.op, "args": rec.args, "expected": rec.expect, "got": got})
    if not records:
        report.warnings.append("vacuous: empty corpus")
    return report
