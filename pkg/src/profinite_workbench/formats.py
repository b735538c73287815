"""JSON file formats: tower files, matrix files and report envelopes.

Exact rationals and Gaussian rationals travel as strings (``"1/2"``,
``"1/2+3/4i"``) so nothing is rounded in transit. Semantic errors name the
offending JSON path (``maps[1].generator_images[0]``); syntax errors carry
the line and column reported by the JSON decoder.
"""

import hashlib
import json
from fractions import Fraction

from . import __version__
from .classes import ClassReport, LevelRecord, Verdict
from .constructions import TransitivityWitness
from .errors import NotSubgroup, ParseError, WorkbenchError
from .groups import FiniteGroup, GroupHom, closure
from .matrices import CheckedWord, ObstructionReport, RationalMatrix, parse_gaussian
from .perm import Perm
from .tower import Thread, Tower

TOWER_FORMAT = "profinite-workbench/tower"
REPORT_FORMAT = "profinite-workbench/report"
MATRIX_FORMAT = "profinite-workbench/matrices"


class FileFormatError(ParseError):
    """A malformed input file; ``level`` is set when a tower level is at fault."""

    def __init__(self, message, path=None, level=None, line=None):
        self.path = path
        self.level = level
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        if level is not None:
            where.append(f"level {level}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def digest(data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if not isinstance(data, bytes):
        data = json.dumps(data, sort_keys=True).encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def dumps(obj, indent=2):
    """JSON with lists of scalars kept on one line."""

    def scalar(x):
        return not isinstance(x, (list, tuple, dict))

    def go(x, depth):
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {go(v, depth + 1)}" for k, v in x.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(x, (list, tuple)):
            if all(scalar(v) for v in x):
                return "[" + ", ".join(json.dumps(v) for v in x) + "]"
            return "[\n" + ",\n".join(pad + go(v, depth + 1) for v in x) + "\n" + end + "]"
        return json.dumps(x)

    return go(obj, 0) + "\n"


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, line=exc.lineno) from None


# -- towers -----------------------------------------------------------------

def _perm(data, degree, path, level=None):
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
        raise FileFormatError("expected an array of integers", path, level)
    if len(data) != degree:
        raise FileFormatError(f"expected {degree} images, got {len(data)}", path, level)
    try:
        return Perm(data)
    except WorkbenchError as exc:
        raise FileFormatError(str(exc), path, level) from None


def _level(spec, i, cap):
    path = f"levels[{i}]"
    if not isinstance(spec, dict) or not isinstance(spec.get("domain_size"), int):
        raise FileFormatError("level needs an integer domain_size", path, i)
    d = spec["domain_size"]
    if d < 1:
        raise FileFormatError("domain_size must be positive", path, i)
    if "elements" in spec:
        elems = [_perm(p, d, f"{path}.elements[{j}]", i) for j, p in enumerate(spec["elements"])]
        try:
            return FiniteGroup.from_elements(d, elems), None
        except NotSubgroup as exc:
            raise FileFormatError(str(exc), f"{path}.elements", i) from None
    gens = [_perm(p, d, f"{path}.generators[{j}]", i) for j, p in enumerate(spec.get("generators", []))]
    return closure(gens, d, cap=cap), gens


def _map_table(spec, i, source, source_gens, target):
    path = f"maps[{i}]"
    lvl = i + 1
    if not isinstance(spec, dict):
        raise FileFormatError("map must be an object", path, lvl)
    if "table" in spec:
        table = spec["table"]
        if (not isinstance(table, list) or len(table) != source.order
                or not all(isinstance(x, int) and 0 <= x < target.order for x in table)):
            raise FileFormatError(
                f"table must list {source.order} indices below {target.order}", f"{path}.table", lvl)
        return table
    images = spec.get("generator_images")
    if images is None:
        raise FileFormatError("map needs generator_images or table", path, lvl)
    if source_gens is None:
        source_gens = source.generators
    if len(images) != len(source_gens):
        raise FileFormatError(
            f"{len(source_gens)} generators but {len(images)} images", f"{path}.generator_images", lvl)
    imgs = []
    for j, p in enumerate(images):
        q = _perm(p, target.domain_size, f"{path}.generator_images[{j}]", lvl)
        if q not in target:
            raise FileFormatError("image is not an element of the target level",
                                  f"{path}.generator_images[{j}]", lvl)
        imgs.append(q)
    # Walk the Cayley graph; a second arrival with another image means the
    # assignment does not extend to a homomorphism.
    table = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        nxt = []
        for x in frontier:
            y = table[x]
            for j, (g, h) in enumerate(zip(source_gens, imgs)):
                gx, hy = g * x, h * y
                if gx in table:
                    if table[gx] != hy:
                        raise FileFormatError(
                            f"generator images do not define a homomorphism (generator {j} at {gx})",
                            f"{path}.generator_images", lvl)
                else:
                    table[gx] = hy
                    nxt.append(gx)
        frontier = nxt
    return [target.index(table[x]) for x in source]


def parse_tower(text, cap=None):
    """Parse a tower file into ``(Tower, {name: Thread})``.

    The result is not validated; run :func:`validate_tower` on it.
    """
    doc = _loads(text)
    if not isinstance(doc, dict) or doc.get("format") != TOWER_FORMAT:
        raise FileFormatError(f"not a {TOWER_FORMAT} document", "format")
    specs = doc.get("levels")
    if not isinstance(specs, list) or not specs:
        raise FileFormatError("levels must be a non-empty array", "levels")
    built = [_level(s, i, cap) for i, s in enumerate(specs)]
    levels = [g for g, _ in built]
    mspecs = doc.get("maps", [])
    if len(mspecs) != len(levels) - 1:
        raise FileFormatError(f"{len(levels)} levels need {len(levels) - 1} maps", "maps")
    maps = []
    for i, spec in enumerate(mspecs):
        src, src_gens = built[i + 1]
        table = _map_table(spec, i, src, src_gens, levels[i])
        maps.append(GroupHom(src, levels[i], table, check=False))
    threads = {}
    for name, entries in (doc.get("threads") or {}).items():
        path = f"threads.{name}"
        if not isinstance(entries, list) or len(entries) != len(levels):
            raise FileFormatError("thread needs one entry per level", path)
        threads[name] = Thread(_perm(p, G.domain_size, f"{path}[{i}]", i)
                               for i, (p, G) in enumerate(zip(entries, levels)))
    return Tower(levels, maps), threads


def tower_document(t, threads=None):
    doc = {"format": TOWER_FORMAT, "version": 1, "tool_version": __version__}
    doc["levels"] = [{"domain_size": G.domain_size, "order": G.order,
                      "generators": [list(g.images) for g in G.generators]} for G in t.levels]
    doc["maps"] = [{"generator_images": [list(h(g).images) for g in h.source.generators]}
                   for h in t.maps]
    if threads:
        doc["threads"] = {name: [list(p.images) for p in th.entries] for name, th in threads.items()}
    return doc


def dump_tower(t, threads=None):
    return dumps(tower_document(t, threads))


# -- matrices ---------------------------------------------------------------

def parse_matrices(text):
    """Matrix file: ``{"dimension": n, "generators": [[n*n entries row-major], ...]}``."""
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise FileFormatError("matrix file must be an object")
    n = doc.get("dimension")
    if not isinstance(n, int) or n < 1:
        raise FileFormatError("dimension must be a positive integer", "dimension")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        raise FileFormatError("generators must be a non-empty array", "generators")
    out = []
    for k, flat in enumerate(gens):
        path = f"generators[{k}]"
        if not isinstance(flat, list) or len(flat) != n * n:
            raise FileFormatError(f"expected {n * n} row-major entries", path)
        entries = []
        for j, x in enumerate(flat):
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise FileFormatError("entries must be strings like \"a/b+c/di\" or integers",
                                      f"{path}[{j}]")
            try:
                entries.append(parse_gaussian(str(x)))
            except ParseError as exc:
                raise FileFormatError(str(exc), f"{path}[{j}]") from None
        out.append(RationalMatrix.from_flat(n, entries))
    return out


def parse_matrices_approx(text):
    """Decimal variant: entries like ``"0.5"`` or ``"1.5-2e-3i"``, as complex floats."""
    doc = _loads(text)
    n = doc.get("dimension") if isinstance(doc, dict) else None
    if not isinstance(n, int) or n < 1:
        raise FileFormatError("dimension must be a positive integer", "dimension")
    out = []
    for k, flat in enumerate(doc.get("generators") or []):
        path = f"generators[{k}]"
        if not isinstance(flat, list) or len(flat) != n * n:
            raise FileFormatError(f"expected {n * n} row-major entries", path)
        vals = []
        for j, x in enumerate(flat):
            try:
                s = str(x).strip().replace("i", "j")
                vals.append(complex(s) if "/" not in s else complex(float(Fraction(s))))
            except ValueError:
                raise FileFormatError(f"malformed number {x!r}", f"{path}[{j}]") from None
        out.append(tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))
    if not out:
        raise FileFormatError("generators must be a non-empty array", "generators")
    return out


# -- reports ----------------------------------------------------------------

def _class_report_body(r):
    return {
        "levels": [{"level": x.level, "class_size": x.class_size,
                    "centralizer_order": x.centralizer_order, "measure": str(x.measure),
                    "element_order": x.element_order} for x in r.levels],
        "verdict": r.verdict.value,
        "stability_window": r.stability_window,
        "assumed_self_similar": r.assumed_self_similar,
        "notes": list(r.notes),
    }


def _class_report_from(body):
    levels = [LevelRecord(x["level"], x["class_size"], x["centralizer_order"],
                          Fraction(x["measure"]), x["element_order"]) for x in body["levels"]]
    return ClassReport(levels, Verdict(body["verdict"]), body["stability_window"],
                       body.get("assumed_self_similar"), list(body.get("notes", [])))


def _cx(z):
    return [z.real, z.imag]


def _obstruction_body(r):
    if r.approximate:
        mat = lambda m: [_cx(z) for row in m for z in row]  # noqa: E731
        poly = lambda p: [_cx(complex(z)) for z in p]  # noqa: E731
        dim = len(r.generators[0])
    else:
        mat = lambda m: m.flat_strings()  # noqa: E731
        poly = lambda p: [str(z) for z in p]  # noqa: E731
        dim = r.generators[0].n
    return {
        "dimension": dim,
        "approximate": r.approximate,
        "generators": [mat(g) for g in r.generators],
        "word_length": r.word_length,
        "verdict": r.verdict,
        "witness": r.witness,
        "words_checked": r.words_checked,
        "checked": [{"word": c.word, "matrix": mat(c.matrix), "char_poly": poly(c.char_poly),
                     "unipotent": c.unipotent} for c in r.checked],
        "trace_pairs_checked": r.trace_pairs_checked,
        "trace_nonzero": [[i, j, str(v)] for i, j, v in r.trace_nonzero],
    }


def _obstruction_from(body):
    n = body["dimension"]
    if body.get("approximate"):
        def mat(flat):
            vals = [complex(a, b) for a, b in flat]
            return tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))

        def poly(p):
            return [complex(a, b) for a, b in p]
    else:
        def mat(flat):
            return RationalMatrix.from_flat(n, [parse_gaussian(x) for x in flat])

        def poly(p):
            return [parse_gaussian(x) for x in p]
    return ObstructionReport(
        generators=[mat(g) for g in body["generators"]],
        word_length=body["word_length"],
        checked=[CheckedWord(c["word"], mat(c["matrix"]), poly(c["char_poly"]), c["unipotent"])
                 for c in body["checked"]],
        verdict=body["verdict"],
        witness=body["witness"],
        trace_pairs_checked=body["trace_pairs_checked"],
        trace_nonzero=[(i, j, parse_gaussian(v)) for i, j, v in body["trace_nonzero"]],
        approximate=bool(body.get("approximate")),
    )


def _witness_body(w):
    return {
        "sizes": list(w.sizes), "n": w.n, "k": w.k,
        "pi": list(w.pi.images), "xi": list(w.xi.images),
        "beta_injection": list(w.beta_injection),
        "b": list(w.b.images), "a": list(w.a.images), "result": list(w.result.images),
        "verified": w.verified,
    }


def _witness_from(body):
    return TransitivityWitness(
        tuple(body["sizes"]), body["n"], body["k"], Perm(body["pi"]), Perm(body["xi"]),
        tuple(body["beta_injection"]), Perm(body["b"]), Perm(body["a"]), Perm(body["result"]),
        body["verified"],
    )


_KINDS = {
    "class_report": (ClassReport, _class_report_body, _class_report_from),
    "obstruction_report": (ObstructionReport, _obstruction_body, _obstruction_from),
    "transitivity_witness": (TransitivityWitness, _witness_body, _witness_from),
}


def report_kind(report):
    for kind, (cls, _, _) in _KINDS.items():
        if isinstance(report, cls):
            return kind
    raise TypeError(f"no report format for {type(report).__name__}")


def report_document(report, input_digest, extra=None):
    kind = report_kind(report)
    doc = {"format": REPORT_FORMAT, "kind": kind, "tool_version": __version__,
           "input_digest": input_digest, "report": _KINDS[kind][1](report)}
    if extra:
        doc["checks"] = extra
    return doc


def dump_report(report, input_digest, extra=None):
    return dumps(report_document(report, input_digest, extra))


def parse_report(text):
    """Return ``(report, envelope)``; the envelope keeps version, digest and checks."""
    doc = _loads(text)
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise FileFormatError(f"not a {REPORT_FORMAT} document", "format")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise FileFormatError(f"unknown report kind {kind!r}", "kind")
    try:
        report = _KINDS[kind][2](doc["report"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed report body: {exc}", "report") from None
    return report, {k: v for k, v in doc.items() if k != "report"}
