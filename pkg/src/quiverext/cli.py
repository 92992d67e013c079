"""Command line front end.

Problem files are JSON::

    {
      "schema_version": "1",
      "field": "rational",                      # or "prime:101"
      "quiver": {"vertices": ["1", "2"],
                 "arrows": [{"name": "a", "tail": "1", "head": "2"}]},
      "twist": {"a": ["a1", "a2"]},             # optional, or {"a": 2}
      "relations": [[["1", ["b", "a"]]]],       # list of [coefficient, word]
      "representations": {"S": {"dims": {"1": 1}, "maps": {}}},
      "adhm": {"O": {"n": 1, "X": [["0"]], "Y": [["0"]]}},
      "options": {"max_degree": 3, "margin": 0, "seed": 0},
      "queries": [{"V": "S", "W": "S"}]
    }

A word ``["a", "b"]`` is the composite ``a . b``: ``b`` is applied first.
Matrices are row-major lists of scalar strings (``"-3/4"``, or residues
mod p).  Representation maps are keyed by expanded arrow name and have shape
``dims[head] x dims[tail]``.  ``queries`` name the (V, W) pairs used by
``hom``, ``ext``, ``oracle``, ``coresolve``, ``adhm`` and ``serre``; when
absent every ordered pair is used.

Exit codes: 0 success, 1 input error, 2 a mathematical check failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from .adhm import ADHMInstance, check_adhm, euler_char, ext_adhm, serre_check
from .algebra import Quiver, RelationSet, Twist, build_algebra, expand_twist
from .errors import (
    CutoffExceeded,
    InputError,
    NotAdmissible,
    ParseError,
    QuiverExtError,
    SchemaViolation,
    SingularConnectingMap,
)
from .ext import coresolution, ext_dims, verify_coresolution
from .linalg import FieldSpec, Mat
from .oracle import ext_dims_oracle
from .representation import Representation, check_relations, hom_basis, hom_to_blocks

SCHEMA_VERSION = "1"
COMMANDS = ("check", "hom", "ext", "oracle", "coresolve", "adhm", "serre")
DEFAULT_OPTIONS = {"max_degree": 3, "margin": 0, "seed": 0, "nilpotency_bound": 12}

__all__ = [
    "ProblemFile",
    "parse_input",
    "parse_problem",
    "dump_problem",
    "run_command",
    "format_output",
    "main",
]


@dataclass(eq=False)
class ProblemFile:
    field: FieldSpec
    quiver: Quiver
    twist: Twist
    relations: RelationSet
    representations: dict = dc_field(default_factory=dict)
    adhm: dict = dc_field(default_factory=dict)
    options: dict = dc_field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    queries: list = dc_field(default_factory=list)
    _model: object = None

    @property
    def expanded(self) -> Quiver:
        return expand_twist(self.quiver, self.twist)

    def model(self):
        if self._model is None:
            self._model = build_algebra(
                self.quiver, self.twist, self.relations, self.field,
                max_degree=self.options["nilpotency_bound"],
            )
        return self._model

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.field == other.field
            and self.quiver == other.quiver
            and self.twist == other.twist
            and self.relations == other.relations
            and self.representations == other.representations
            and self.adhm == other.adhm
            and self.options == other.options
            and self.queries == other.queries
        )


# ---------------------------------------------------------------------------
# parsing


class _Ctx:
    def __init__(self, text):
        self.text = text

    def line_of(self, key):
        if self.text is None or key is None:
            return None
        m = re.search(r'"%s"' % re.escape(str(key)), self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None

    def fail(self, msg, path, key=None):
        raise SchemaViolation(msg, line=self.line_of(key), field=path)


def _scalar(ctx, field, x, path):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        ctx.fail(f"scalar must be a string or integer, got {x!r}", path)
    try:
        return field(x)
    except (ValueError, ZeroDivisionError) as exc:
        ctx.fail(f"bad scalar {x!r}: {exc}", path)


def _matrix(ctx, field, rows, nrows, ncols, path, key=None):
    if not isinstance(rows, list) or len(rows) != nrows:
        ctx.fail(f"expected {nrows} rows", path, key)
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ncols:
            ctx.fail(f"row {r} must have {ncols} entries", path, key)
        out.append([_scalar(ctx, field, x, f"{path}[{r}]") for x in row])
    return Mat.from_lists(field, out, ncols)


def _want(ctx, obj, key, kind, path, default=None, required=True):
    if key not in obj:
        if required:
            ctx.fail(f"missing key {key!r}", path)
        return default
    val = obj[key]
    if not isinstance(val, kind):
        ctx.fail(f"{key!r} has the wrong type", f"{path}.{key}" if path else key, key)
    return val


def parse_problem(data, text=None, field_override=None) -> ProblemFile:
    """Validate a decoded JSON document."""
    ctx = _Ctx(text)
    if not isinstance(data, dict):
        ctx.fail("top level must be an object", "")
    known = {"schema_version", "field", "quiver", "twist", "relations", "representations",
             "adhm", "options", "queries"}
    extra = set(data) - known
    if extra:
        ctx.fail(f"unknown keys {sorted(extra)}", "", sorted(extra)[0])
    version = _want(ctx, data, "schema_version", str, "", SCHEMA_VERSION, required=False)
    if version != SCHEMA_VERSION:
        ctx.fail(f"unsupported schema_version {version!r}", "schema_version", "schema_version")
    ftext = field_override or _want(ctx, data, "field", str, "", "rational", required=False)
    try:
        field = FieldSpec.parse(ftext)
    except ValueError as exc:
        ctx.fail(str(exc), "field", "field")

    qd = _want(ctx, data, "quiver", dict, "")
    verts = _want(ctx, qd, "vertices", list, "quiver")
    verts = [str(v) for v in verts]
    arrows = []
    for k, a in enumerate(_want(ctx, qd, "arrows", list, "quiver", [], required=False)):
        p = f"quiver.arrows[{k}]"
        if isinstance(a, dict):
            arrows.append((str(_want(ctx, a, "name", str, p)), str(_want(ctx, a, "tail", (str, int), p)),
                           str(_want(ctx, a, "head", (str, int), p))))
        elif isinstance(a, list) and len(a) == 3:
            arrows.append(tuple(str(x) for x in a))
        else:
            ctx.fail("arrow must be {name, tail, head}", p)
    try:
        quiver = Quiver.build(verts, arrows)
    except (InputError, ValueError) as exc:
        ctx.fail(str(exc), "quiver", "quiver")

    td = _want(ctx, data, "twist", dict, "", None, required=False)
    names = {}
    for a in quiver.arrows:
        spec = (td or {}).get(a.name, 1)
        if isinstance(spec, int) and not isinstance(spec, bool):
            if spec < 1:
                ctx.fail("twist rank must be >= 1", f"twist.{a.name}", a.name)
            names[a.name] = (a.name,) if spec == 1 else tuple(f"{a.name}{k}" for k in range(1, spec + 1))
        elif isinstance(spec, list) and spec and all(isinstance(s, str) for s in spec):
            names[a.name] = tuple(spec)
        else:
            ctx.fail("twist entry must be a rank or a list of basis names", f"twist.{a.name}", a.name)
    for name in td or {}:
        if name not in names:
            ctx.fail(f"twist names unknown arrow {name!r}", f"twist.{name}", name)
    twist = Twist(names)
    expanded = expand_twist(quiver, twist)

    gens = []
    for k, rel in enumerate(_want(ctx, data, "relations", list, "", [], required=False)):
        p = f"relations[{k}]"
        if not isinstance(rel, list):
            ctx.fail("relation must be a list of [coefficient, word] terms", p)
        terms = []
        for j, term in enumerate(rel):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
                ctx.fail("term must be [coefficient, word]", f"{p}[{j}]")
            c = term[0]
            if isinstance(c, bool) or not isinstance(c, (str, int)):
                ctx.fail("coefficient must be a string or integer", f"{p}[{j}]")
            try:
                c = Fraction(c)
            except (ValueError, ZeroDivisionError):
                ctx.fail(f"bad coefficient {term[0]!r}", f"{p}[{j}]")
            terms.append((c, tuple(str(x) for x in term[1])))
        gens.append(tuple(terms))
    relations = RelationSet(tuple(gens))
    relations.validate(expanded)

    reps = {}
    for name, rd in _want(ctx, data, "representations", dict, "", {}, required=False).items():
        p = f"representations.{name}"
        if not isinstance(rd, dict):
            ctx.fail("representation must be an object", p, name)
        dims = _want(ctx, rd, "dims", (dict, list), p)
        if isinstance(dims, list):
            if len(dims) != quiver.num_vertices:
                ctx.fail("dims list needs one entry per vertex", f"{p}.dims", name)
            dims = dict(zip(quiver.vertices, dims))
        for v, n in dims.items():
            if str(v) not in quiver.vertices:
                ctx.fail(f"unknown vertex {v!r}", f"{p}.dims", name)
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                ctx.fail("dimensions must be non-negative integers", f"{p}.dims", name)
        dims = {str(v): n for v, n in dims.items()}
        dvec = [dims.get(v, 0) for v in quiver.vertices]
        maps = _want(ctx, rd, "maps", dict, p, {}, required=False)
        for a in maps:
            if a not in {e.name for e in expanded.arrows}:
                ctx.fail(f"unknown expanded arrow {a!r}", f"{p}.maps", a)
        ms = []
        for a in expanded.arrows:
            t, h = expanded.vertex_index(a.tail), expanded.vertex_index(a.head)
            if a.name in maps:
                ms.append(_matrix(ctx, field, maps[a.name], dvec[h], dvec[t], f"{p}.maps.{a.name}", a.name))
            else:
                ms.append(Mat.zeros(field, dvec[h], dvec[t]))
        reps[name] = Representation(expanded, field, tuple(dvec), tuple(ms), relations)

    adhm = {}
    for name, ad in _want(ctx, data, "adhm", dict, "", {}, required=False).items():
        p = f"adhm.{name}"
        if not isinstance(ad, dict):
            ctx.fail("adhm instance must be an object", p, name)
        n = _want(ctx, ad, "n", int, p)
        if n < 0:
            ctx.fail("n must be non-negative", f"{p}.n", name)

        def mats(key):
            raw = _want(ctx, ad, key, list, p)
            single = len(raw) == n and all(
                isinstance(r, list) and all(not isinstance(x, list) for x in r) for r in raw
            )
            group = [raw] if single else raw
            return tuple(_matrix(ctx, field, m, n, n, f"{p}.{key}", name) for m in group)

        adhm[name] = ADHMInstance(n, mats("X"), mats("Y"), field)

    opts = dict(DEFAULT_OPTIONS)
    for k, v in _want(ctx, data, "options", dict, "", {}, required=False).items():
        if k not in DEFAULT_OPTIONS:
            ctx.fail(f"unknown option {k!r}", f"options.{k}", k)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            ctx.fail("options are non-negative integers", f"options.{k}", k)
        opts[k] = v

    queries = []
    for k, qd_ in enumerate(_want(ctx, data, "queries", list, "", [], required=False)):
        p = f"queries[{k}]"
        if not isinstance(qd_, dict):
            ctx.fail("query must be an object", p)
        V = _want(ctx, qd_, "V", str, p)
        W = _want(ctx, qd_, "W", str, p)
        for nm in (V, W):
            if nm not in reps and nm not in adhm:
                ctx.fail(f"query names unknown object {nm!r}", p, nm)
        queries.append({"V": V, "W": W})

    return ProblemFile(field, quiver, twist, relations, reps, adhm, opts, queries)


def parse_input(path, field_override=None) -> ProblemFile:
    """Read and validate a problem file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return parse_problem(data, text, field_override)


# ---------------------------------------------------------------------------
# canonical form


def dump_problem(pf: ProblemFile) -> dict:
    """Canonical JSON-ready dictionary; ``parse_problem(dump_problem(p)) == p``."""
    f = pf.field
    q = pf.quiver
    out = {
        "schema_version": SCHEMA_VERSION,
        "field": str(f),
        "quiver": {
            "vertices": list(q.vertices),
            "arrows": [{"name": a.name, "tail": a.tail, "head": a.head} for a in q.arrows],
        },
        "twist": {a.name: list(pf.twist.basis_names[a.name]) for a in q.arrows},
        "relations": [[[str(c), list(w)] for c, w in rel] for rel in pf.relations.generators],
        "representations": {},
        "adhm": {},
        "options": dict(pf.options),
        "queries": [dict(x) for x in pf.queries],
    }
    for name, rep in pf.representations.items():
        out["representations"][name] = {
            "dims": dict(zip(q.vertices, rep.dims)),
            "maps": {a.name: m.to_strings() for a, m in zip(rep.quiver.arrows, rep.maps)},
        }
    for name, inst in pf.adhm.items():
        out["adhm"][name] = {
            "n": inst.n,
            "X": [m.to_strings() for m in inst.X],
            "Y": [m.to_strings() for m in inst.Y],
        }
    return out


# ---------------------------------------------------------------------------
# commands


def _pairs(pf: ProblemFile, pool: dict):
    if pf.queries:
        pairs = [(q["V"], q["W"]) for q in pf.queries]
        for v, w in pairs:
            if v not in pool or w not in pool:
                raise InputError(f"query ({v}, {w}) does not name objects of the right kind")
        return pairs
    names = sorted(pool)
    return [(v, w) for v in names for w in names]


def run_command(cmd: str, pf: ProblemFile) -> tuple[dict, int]:
    """Run one command; returns ``(report, exit_code)``."""
    if cmd not in COMMANDS:
        raise InputError(f"unknown command {cmd!r}")
    f = pf.field
    P = pf.options["max_degree"]
    margin = pf.options["margin"]
    seed = pf.options["seed"]
    report = {"schema_version": SCHEMA_VERSION, "command": cmd, "field": str(f), "results": []}
    code = 0
    res = report["results"]
    if cmd == "check":
        for name in sorted(pf.representations):
            ok = check_relations(pf.representations[name])
            res.append({"object": name, "kind": "representation", "relations": "satisfied" if ok else "violated"})
            code = code or (0 if ok else 2)
        for name in sorted(pf.adhm):
            ok = check_adhm(pf.adhm[name])
            res.append({"object": name, "kind": "adhm", "relations": "satisfied" if ok else "violated"})
            code = code or (0 if ok else 2)
    elif cmd == "hom":
        for v, w in _pairs(pf, pf.representations):
            V, W = pf.representations[v], pf.representations[w]
            basis = hom_basis(V, W)
            maps = []
            for vec in basis.vectors():
                blocks = hom_to_blocks(vec, V, W)
                maps.append({pf.quiver.vertices[i]: b.to_strings() for i, b in enumerate(blocks)})
            res.append({"V": v, "W": w, "dim": basis.dim, "basis": maps})
    elif cmd in ("ext", "oracle"):
        model = pf.model()
        for v, w in _pairs(pf, pf.representations):
            V, W = pf.representations[v], pf.representations[w]
            item = {"V": v, "W": w, "max_degree": P}
            if cmd == "ext":
                item["dims"] = ext_dims(model, V, W, P, margin).dims
            else:
                item["dims"] = ext_dims(model, V, W, P, margin).dims
                item["oracle"] = ext_dims_oracle(model, V, W, P)
                item["agree"] = item["dims"] == item["oracle"]
                code = code or (0 if item["agree"] else 2)
            res.append(item)
    elif cmd == "coresolve":
        model = pf.model()
        targets = sorted({w for _, w in _pairs(pf, pf.representations)})
        for w in targets:
            seg = coresolution(model, pf.representations[w], P, margin, seed=seed)
            rep = verify_coresolution(seg)
            res.append({"W": w, "term_dims": seg.term_dims(), "ok": rep.ok, "checks": rep.as_dict()})
            code = code or (0 if rep.ok else 2)
    elif cmd == "adhm":
        for v, w in _pairs(pf, pf.adhm):
            h = ext_adhm(pf.adhm[v], pf.adhm[w])
            res.append({"V": v, "W": w, "dims": list(h), "euler": h[0] - h[1] + h[2]})
    elif cmd == "serre":
        for v, w in _pairs(pf, pf.adhm):
            V, W = pf.adhm[v], pf.adhm[w]
            ok = serre_check(V, W)
            res.append({
                "V": v, "W": w, "dims": list(ext_adhm(V, W)), "dual": list(ext_adhm(W, V)),
                "serre": ok, "euler": euler_char(V, W),
            })
            code = code or (0 if ok else 2)
    report["ok"] = code == 0
    return report, code


# ---------------------------------------------------------------------------
# output


def _table(header, rows):
    cells = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    return "\n".join(lines)


def format_output(report: dict, mode: str = "table") -> str:
    """Render a report as an aligned table or as canonical JSON."""
    if mode == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if mode != "table":
        raise InputError(f"unknown output mode {mode!r}")
    if not report:
        return ""
    cmd = report.get("command")
    blocks = []
    for item in report.get("results", []):
        if cmd == "check":
            blocks.append(_table(["object", "kind", "relations"], [[item["object"], item["kind"], item["relations"]]]))
        elif cmd == "hom":
            blocks.append(f"Hom({item['V']}, {item['W']})  dim {item['dim']}")
        elif cmd in ("ext", "oracle"):
            oracle = item.get("oracle")
            rows = []
            for p, d in enumerate(item["dims"]):
                o = oracle[p] if oracle else "-"
                agree = ("yes" if o == d else "NO") if oracle else "-"
                rows.append([p, d, o, agree])
            blocks.append(f"Ext^p({item['V']}, {item['W']})\n" + _table(["p", "dim Ext^p", "oracle", "agree"], rows))
        elif cmd == "coresolve":
            rows = [[k, "pass" if v["ok"] else "FAIL", v["detail"]] for k, v in item["checks"].items()]
            blocks.append(
                f"coresolution of {item['W']}  term dims {item['term_dims']}\n"
                + _table(["check", "status", "detail"], rows)
            )
        elif cmd == "adhm":
            h = item["dims"]
            blocks.append(_table(["V", "W", "h0", "h1", "h2", "euler"], [[item["V"], item["W"], *h, item["euler"]]]))
        elif cmd == "serre":
            blocks.append(
                _table(["V", "W", "Ext(V,W)", "Ext(W,V)", "serre"],
                       [[item["V"], item["W"], tuple(item["dims"]), tuple(item["dual"]), item["serre"]]])
            )
    if not blocks:
        blocks.append("(no results)")
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _parser():
    p = argparse.ArgumentParser(prog="quiverext", description="Hom and Ext of quiver representations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--field", help="rational or prime:P (overrides the file)")
    p.add_argument("--max-degree", type=int, help="top Ext degree P (default 3)")
    p.add_argument("--margin", type=int, help="extra cutoff degrees to verify (default 0)")
    p.add_argument("--seed", type=int, help="seed for randomized checks (default 0)")
    p.add_argument("--output", choices=("table", "json"), default="table")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        pf = parse_input(args.input, args.field)
        for key in ("max_degree", "margin", "seed"):
            val = getattr(args, key)
            if val is not None:
                if val < 0:
                    raise InputError(f"--{key.replace('_', '-')} must be non-negative")
                pf.options[key] = val
        report, code = run_command(args.command, pf)
    except (InputError, NotAdmissible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SingularConnectingMap, CutoffExceeded, QuiverExtError) as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_output(report, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
