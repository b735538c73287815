"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 validation or parse failure, 3 cap exceeded.
"""

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .classes import DEFAULT_WINDOW, analyze, keylem_bound_check, report_violations, torsion_note
from .constructions import (
    agw_transitivity_witness,
    agw_truncation,
    diagonal_thread,
    rosendal_tower,
    simple_power_tower,
    zp_tower,
)
from .errors import CapExceeded, WindowTooLarge, WorkbenchError, resolve_cap
from .formats import (
    digest,
    dump_report,
    dump_tower,
    dumps,
    parse_matrices,
    parse_matrices_approx,
    parse_tower,
)
from .groups import closure, named_group
from .matrices import approx_dense_class_obstruction, dense_class_obstruction
from .perm import Perm
from .pgroup import (
    all_subgroups,
    detect_prime,
    frattini_bruteforce,
    frattini_pgroup,
    nongenerator_check,
    BRUTEFORCE_CAP,
)
from .tower import Thread, Tower, identity_thread, thread_from_top, validate_tower

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _perm_arg(text):
    text = text.strip()
    vals = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",")]
    return Perm(vals)


# -- tower ------------------------------------------------------------------

def _load_tower(path, cap):
    text = Path(path).read_text(encoding="utf-8")
    tower, threads = parse_tower(text, cap=cap)
    return tower, threads, digest(text)


_WORD = re.compile(r"g(\d+)(\^-?\d+)?")


def _word_element(G, word):
    gens = G.generators
    x = G.identity
    for tok in re.split(r"[\s*]+", word.strip()):
        if not tok:
            continue
        m = _WORD.fullmatch(tok)
        if not m or int(m.group(1)) >= len(gens):
            raise UsageError(f"bad generator token {tok!r} (top level has {len(gens)} generators)")
        k = int(m.group(2)[1:]) if m.group(2) else 1
        x = x * gens[int(m.group(1))] ** k
    return x


def resolve_thread(tower, threads, spec):
    """Turn an ``--element`` spec into a thread.

    Accepted: ``identity``; a thread name stored in the file; ``word:g0 g1^-1``
    in the top level's generators; an image array for the top element; or an
    array of image arrays, one per level.
    """
    spec = spec.strip()
    if spec == "identity":
        return identity_thread(tower)
    if spec in threads:
        return threads[spec]
    if spec.startswith("word:"):
        return thread_from_top(tower, _word_element(tower.top, spec[5:]))
    if spec.startswith("["):
        data = json.loads(spec)
        if data and isinstance(data[0], list):
            return Thread(Perm(p) for p in data)
        return thread_from_top(tower, Perm(data))
    raise UsageError(f"unknown element spec {spec!r}; known threads: {sorted(threads)}")


def _report_checks(report):
    note = torsion_note(report)
    return {"keylem_bound": keylem_bound_check(report),
            "invariant_violations": report_violations(report),
            "torsion_note": note.message}


def cmd_tower(args):
    cap = resolve_cap(args.cap)
    tower, threads, dig = _load_tower(args.path, cap)
    report = validate_tower(tower)
    if args.action == "validate":
        for v in report.violations:
            print(f"INVALID {v}")
        if report.valid:
            print(f"VALID {tower.depth} levels, orders {[G.order for G in tower.levels]}")
        return EXIT_OK if report.valid else EXIT_INVALID
    if not report.valid:
        for v in report.violations:
            print(f"INVALID {v}", file=sys.stderr)
        return EXIT_INVALID
    if args.window > tower.depth:
        raise UsageError(f"--window {args.window} exceeds the tower depth {tower.depth}")
    thread = resolve_thread(tower, threads, args.element)
    result = analyze(tower, thread, args.window, args.assume_self_similar)
    _emit(dump_report(result, dig, _report_checks(result)), args.out)
    print(f"verdict {result.verdict.value}", file=sys.stderr)
    return EXIT_OK


# -- example ----------------------------------------------------------------

def _report_path(out):
    p = Path(out)
    return str(p.with_name(p.name.removesuffix(".json") + ".report.json"))


def _write_example(args, tower, threads, default_thread, params):
    text = dump_tower(tower, threads)
    if not args.analyze:
        _emit(text, args.out)
        return EXIT_OK
    if args.window > tower.depth:
        raise UsageError(f"--window {args.window} exceeds the tower depth {tower.depth}")
    report = analyze(tower, threads[default_thread], args.window, args.assume_self_similar)
    rtext = dump_report(report, digest(params), _report_checks(report))
    if args.out:
        _emit(text, args.out)
        _emit(rtext, _report_path(args.out))
    else:
        _emit(rtext, None)
    print(f"verdict {report.verdict.value}", file=sys.stderr)
    return EXIT_OK


def cmd_example(args):
    cap = resolve_cap(args.cap)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    name = args.name
    if name == "rosendal":
        if args.depth is None:
            raise UsageError("rosendal needs --depth")
        tower, beta = rosendal_tower(args.depth, cap=cap)
        return _write_example(args, tower, {"beta": beta}, "beta", params)
    if name == "zp":
        if args.p is None or args.depth is None:
            raise UsageError("zp needs --p and --depth")
        tower, gen = zp_tower(args.p, args.depth, cap=cap)
        return _write_example(args, tower, {"generator": gen}, "generator", params)
    if name == "simple-power":
        if args.depth is None:
            raise UsageError("simple-power needs --depth")
        factor = named_group(args.factor)
        tower = simple_power_tower(factor, args.depth, cap=cap)
        x = _perm_arg(args.element) if args.element else (factor.generators or [factor.identity])[0]
        return _write_example(args, tower, {"diagonal": diagonal_thread(tower, x)}, "diagonal", params)
    if name == "agw":
        if args.sizes is None or args.n is None:
            raise UsageError("agw needs --sizes and --n")
        sizes = [int(s) for s in args.sizes.split(",")]
        if args.witness:
            pi, xi = (_perm_arg(s) for s in args.witness)
            w = agw_transitivity_witness(sizes, args.n, pi, xi)
            _emit(dump_report(w, digest(params)), args.out)
            print(f"verified {str(w.verified).lower()}", file=sys.stderr)
            return EXIT_OK
        trunc = agw_truncation(sizes, args.n, cap=cap)
        _emit(dump_tower(Tower([trunc.carrier], [])), args.out)
        return EXIT_OK
    raise UsageError(f"unknown example {name!r}")


# -- pgroup -----------------------------------------------------------------

def _load_group(args, cap):
    if args.group:
        return named_group(args.group)
    if not args.path:
        raise UsageError("give a group file or --group NAME")
    text = Path(args.path).read_text(encoding="utf-8")
    doc = json.loads(text)
    if isinstance(doc, dict) and "levels" in doc:
        tower, _ = parse_tower(text, cap=cap)
        return tower.top
    d = doc["domain_size"]
    return closure([Perm(p) for p in doc.get("generators", [])], d, cap=cap)


def _elements(G):
    return [list(p.images) for p in G]


def cmd_pgroup(args):
    cap = resolve_cap(args.cap)
    U = _load_group(args, cap)
    out = {"order": U.order}
    if args.action == "frattini":
        out["prime"] = detect_prime(U)
        phi = frattini_pgroup(U)
        out["frattini_order"] = phi.order
        out["frattini"] = _elements(phi)
        if U.order <= BRUTEFORCE_CAP:
            out["oracle_agrees"] = frattini_bruteforce(U).same_elements(phi)
    elif args.action == "frattini-oracle":
        phi = frattini_bruteforce(U)
        out["frattini_order"] = phi.order
        out["frattini"] = _elements(phi)
        try:
            detect_prime(U)
            out["formula_agrees"] = frattini_pgroup(U).same_elements(phi)
        except WorkbenchError:
            out["formula_agrees"] = None
    else:
        subs = all_subgroups(U)
        phi = frattini_bruteforce(U)
        verdicts = [nongenerator_check(U, H, phi) for H in subs]
        bad = [H.order for H, v in zip(subs, verdicts) if not v.consistent]
        out["subgroups"] = len(subs)
        out["inconsistent"] = bad
        out["summary"] = "all subgroups consistent" if not bad else f"{len(bad)} inconsistent subgroups"
    _emit(dumps(out), args.out)
    return EXIT_OK


# -- matrix -----------------------------------------------------------------

def cmd_matrix(args):
    text = Path(args.path).read_text(encoding="utf-8")
    if args.approximate:
        gens = parse_matrices_approx(text)
        report = approx_dense_class_obstruction(gens, args.word_length)
    else:
        gens = parse_matrices(text)
        report = dense_class_obstruction(gens, args.word_length)
    _emit(dump_report(report, digest(text)), args.out)
    print(f"verdict {report.verdict}", file=sys.stderr)
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser():
    p = _Parser(prog="workbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default $WORKBENCH_CAP or 100000)")
    common.add_argument("--out", help="output file (default stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tower", parents=[common], help="validate or analyze a tower file")
    t.add_argument("action", choices=["validate", "analyze"])
    t.add_argument("path")
    t.add_argument("--element", default="identity",
                   help="thread name, 'identity', 'word:g0 g1^-1', or image array(s)")
    t.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    t.add_argument("--assume-self-similar", type=int, default=None, metavar="PERIOD")
    t.set_defaults(func=cmd_tower)

    e = sub.add_parser("example", parents=[common], help="build an example tower")
    e.add_argument("name", choices=["rosendal", "agw", "zp", "simple-power"])
    e.add_argument("--depth", type=int)
    e.add_argument("--p", type=int)
    e.add_argument("--sizes")
    e.add_argument("--n", type=int)
    e.add_argument("--witness", nargs=2, metavar=("PI", "XI"))
    e.add_argument("--factor", default="A5")
    e.add_argument("--element", help="factor element for simple-power threads")
    e.add_argument("--analyze", action="store_true")
    e.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    e.add_argument("--assume-self-similar", type=int, default=None, metavar="PERIOD")
    e.set_defaults(func=cmd_example)

    g = sub.add_parser("pgroup", parents=[common], help="Frattini subgroup tools")
    g.add_argument("action", choices=["frattini", "frattini-oracle", "nongen-exhaustive"])
    g.add_argument("path", nargs="?")
    g.add_argument("--group", help="stock group name, e.g. Q8, D4, C9, E2^3")
    g.set_defaults(func=cmd_pgroup)

    m = sub.add_parser("matrix", parents=[common], help="dense-class obstruction for matrix groups")
    m.add_argument("action", choices=["obstruct"])
    m.add_argument("path")
    m.add_argument("--word-length", type=int, default=1)
    m.add_argument("--approximate", action="store_true",
                   help="decimal input, float arithmetic with tolerance 1e-9")
    m.set_defaults(func=cmd_matrix)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, WindowTooLarge) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (WorkbenchError, OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        if args.command == "example" and not isinstance(exc, OSError):
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
