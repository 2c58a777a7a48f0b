"""Command-line entry point.

Every command prints one JSON envelope::

    {"command": {...}, "exit_code": 0, "result": {...}, "version": "..."}

with sorted keys, so identical inputs give byte-identical output.  Exit
codes: 0 pass/found, 1 fail/not-found, 2 usage or input error.
``--format table`` prints a human-readable report instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, amd, constructions, corpus, diffcore, families, kernel, search
from .diffcore import SetFamily
from .errors import AmdFamError, InternalConsistencyError, PreconditionError
from .group import as_group, parse_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- input helpers -----------------------------------------------------------


def load_json(arg: str, what: str):
    """Inline JSON, ``-`` for stdin, or a path."""
    if arg is None:
        raise UsageError(f"missing {what}")
    if arg == "-":
        text, origin = sys.stdin.read(), "<stdin>"
    elif arg.lstrip().startswith(("{", "[")):
        text, origin = arg, "<inline>"
    else:
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {what} {arg!r}: {e.strerror}") from None
        origin = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {what} ({origin}) at line {e.lineno} column {e.colno}: {e.msg}") from None


def load_family(arg: str, overlap: bool = False) -> SetFamily:
    obj = load_json(arg, "family")
    if not isinstance(obj, dict) or "group" not in obj or "sets" not in obj:
        raise UsageError('family JSON needs "group" and "sets"')
    G = as_group(parse_group(obj["group"]))
    return SetFamily.of(G, obj["sets"], allow_overlap=overlap)


def load_code(arg: str) -> amd.AmdCode:
    obj = load_json(arg, "code")
    if not isinstance(obj, dict) or "group" not in obj or "sources" not in obj:
        raise UsageError('code JSON needs "group" and "sources"')
    return amd.AmdCode.from_json(obj)


def int_list(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def class_profile(text: str | None):
    """``2x3,1x4`` means two sets of size 3 and one of size 4."""
    if text is None:
        return None
    out = []
    for part in text.replace(" ", "").split(","):
        try:
            c, k = part.lower().split("x")
            out.append((int(c), int(k)))
        except ValueError:
            raise UsageError(f"class profile items look like 2x3 (count x size), got {part!r}") from None
    return out


def element(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"cannot parse element {text!r}") from None


def key_values(items):
    out = {}
    for item in items or []:
        for part in item.split(","):
            if "=" not in part:
                raise UsageError(f"parameters look like key=value, got {part!r}")
            k, v = part.split("=", 1)
            try:
                out[k.strip()] = json.loads(v)
            except json.JSONDecodeError:
                out[k.strip()] = v
    return out


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("AMDFAM_JOBS", "1")))
    except ValueError:
        return 1


# -- commands ----------------------------------------------------------------
# Each returns (result, exit_code, table_text).


def cmd_verify(a):
    t = families.normalize_type(a.type)
    F = load_family(a.family, overlap=t == "DF")
    if t == "DS":
        if F.m != 1:
            raise UsageError("a difference set is given as exactly one set")
        rep = families.verify_ds(F.group, F.sets[0])
    elif t == "BEDF":
        if a.lam is None:
            raise UsageError("BEDF needs --lambda")
        rep = families.verify_bedf(F.group, F, a.lam, require_uniform_k=not a.relax_k)
    else:
        rep = families.verify(t, F.group, F, lam=a.lam, lambdas=int_list(a.lambdas), classes=class_profile(a.classes),
                              require_uniform_k=a.uniform_k or None)
    text = f"{rep.label}: {'pass' if rep else 'fail'}"
    if rep.counterexample is not None:
        text += f"\ncounterexample: {rep.counterexample}"
    return rep.to_json(), EXIT_OK if rep else EXIT_FAIL, text


def cmd_construct(a):
    con = constructions.build(a.recipe, **key_values(a.params))
    lines = [f"{con.recipe}: {con.family}", f"verification: {con.report.label} ({'pass' if con.report else 'fail'})"]
    lines += [f"finding: {f}" for f in con.findings]
    return con.to_json(), EXIT_OK if con.report else EXIT_FAIL, "\n".join(lines)


def cmd_diff(a):
    overlap = a.kind in ("internal", "summed")
    F = load_family(a.family, overlap=overlap)
    G = F.group
    if a.kind == "internal":
        if a.index is None and F.m != 1:
            raise UsageError("internal differences of which set? pass --index")
        fm = diffcore.internal_differences(G, F.sets[(a.index or 1) - 1])
    elif a.kind == "external":
        fm = diffcore.external_difference_multiset(G, F)
    elif a.kind == "outgoing":
        fm = diffcore.outgoing_differences(G, F, a.index or 1)
    elif a.kind == "incoming":
        fm = diffcore.incoming_differences(G, F, a.index or 1)
    elif a.kind == "class":
        fm = diffcore.class_differences(G, F, int_list(a.indices) or [])
    else:
        fm = diffcore.summed_internal_differences(G, F)
    result = {"kind": a.kind, "counts": fm.to_json(), "table": fm.table(), "total": fm.total,
              "uniform": fm.uniform_value()}
    return result, EXIT_OK, fm.format_table()


def _eval_table(ev: amd.GameEvaluation, code: amd.AmdCode, full: bool) -> str:
    G = code.group
    fmt = (lambda d: str(d[0])) if G.rank == 1 else (lambda d: str(list(d)))
    lines = [f"{ev.mode} game: optimum {amd.fraction_str(ev.optimum)}"]
    if ev.mode == "weak":
        lines.append("argmax: " + ", ".join(fmt(d) for d in ev.argmax))
        if full:
            lines += [f"  delta {fmt(d)}: {amd.fraction_str(v)}" for d, v in ev.values.items()]
    else:
        for s, v in ev.source_optima.items():
            lines.append(f"  source {s}: {amd.fraction_str(v)} at " + ", ".join(fmt(d) for d in ev.source_argmax[s]))
            if full:
                lines += [f"    delta {fmt(d)}: {amd.fraction_str(x)}" for d, x in ev.values[s].items()]
    lines += [f"{k}: {v}" for k, v in sorted(ev.bounds.to_json().items())]
    lines += [f"{k}: {v}" for k, v in sorted(ev.flags.items())]
    return "\n".join(lines)


def cmd_eval(a):
    code = load_code(a.code)
    if a.delta is not None:
        d = element(a.delta)
        if a.mode == "weak":
            v = amd.eval_weak_delta(code, d)
            good = amd.good_set(code, d)
        else:
            if a.source is None:
                raise UsageError("strong mode with --delta needs --source")
            v = amd.eval_strong_delta(code, a.source, d)
            good = amd.good_set(code, d, a.source)
        result = {"mode": a.mode, "delta": d, "value": amd.fraction_str(v), "good": [list(g) for g in good]}
        return result, EXIT_OK, f"epsilon = {amd.fraction_str(v)}"
    ev = amd.eval_weak_optimum(code) if a.mode == "weak" else amd.eval_strong_optimum(code)
    result = ev.to_json(full_table=a.full_table)
    result["classification"] = amd.classify(code).to_json()
    return result, EXIT_OK, _eval_table(ev, code, a.full_table)


def cmd_classify(a):
    code = load_code(a.code)
    cl = amd.classify(code)
    sim = amd.check_simultaneous_optimality(code)
    result = cl.to_json()
    result["simultaneous"] = sim.to_json()
    text = "\n".join(f"{k}: {result[k]}" for k in ("weak_R", "weak_G", "strong_R", "strong_G", "weak_optimum", "strong_optimum"))
    return result, EXIT_OK, text


def cmd_to_family(a):
    code = load_code(a.code)
    try:
        F = amd.family_from_code(code, a.type)
    except PreconditionError as e:
        return {"recovered": False, "error": {"type": type(e).__name__, "message": str(e)}}, EXIT_FAIL, f"no family: {e}"
    rep = families.verify(a.type, F.group, F, lam=1, lambdas=[1] * F.m)
    result = {"recovered": True, "family": F.to_json(), "verification": rep.to_json()}
    return result, EXIT_OK, f"{rep.label}: {F}"


def cmd_from_family(a):
    t = families.normalize_type(a.type)
    F = load_family(a.family)
    code = amd.code_from_family(F, t, lam=a.lam, lambdas=int_list(a.lambdas), classes=class_profile(a.classes))
    return code.to_json(), EXIT_OK, json.dumps(code.to_json(), sort_keys=True)


def cmd_search(a):
    if a.sweep_sedf is not None:
        budget = a.budget_nodes if a.budget_nodes is not None else 2_000_000
        rep = search.sweep_sedf_open_problem(a.sweep_sedf, node_budget=budget, jobs=a.jobs,
                                             backend=a.backend)
        return rep.to_json(), EXIT_OK, rep.format_table()
    obj = load_json(a.spec, "search spec")
    if not isinstance(obj, dict):
        raise UsageError("search spec must be a JSON object")
    spec = search.SearchSpec.from_json(
        obj, mode=a.mode, node_budget=a.budget_nodes, time_budget=a.budget_seconds, jobs=a.jobs,
        split_depth=a.split_depth,
    )
    cert = search.certify_nonexistence(spec, a.backend) if a.certify else search.search_family(spec, a.backend)
    lines = [f"{spec.parameters} over {spec.group}: {cert.outcome}",
             f"nodes explored: {cert.nodes}; pruned placements: {cert.pruned}"]
    lines += [f"  node {s.stamp}: {s.family}" for s in cert.solutions]
    return cert.to_json(), EXIT_OK if cert.found else EXIT_FAIL, "\n".join(lines)


def cmd_relate(a):
    if a.descendants:
        out = families.lattice_descendants(a.descendants)
        return {"type": families.normalize_type(a.descendants), "descendants": out}, EXIT_OK, ", ".join(out)
    F = load_family(a.family)
    if a.maximal:
        if a.maximal == "gsedf":
            rep = families.maximal_gsedf_ds_check(F.group, F)
        else:
            rep = families.maximal_pedf_df_check(F.group, F, class_profile(a.classes))
    else:
        if not (a.source and a.target):
            raise UsageError("relate needs --from and --to, --maximal, or --descendants")
        rep = families.implication_check(F.group, F, a.source, a.target, lam=a.lam)
    text = f"{rep.label}: {'pass' if rep else 'fail'}" + "".join(f"\n  {n}" for n in rep.notes)
    return rep.to_json(), EXIT_OK if rep else EXIT_FAIL, text


def cmd_reproduce(a):
    results = corpus.run_corpus(only=a.only)
    items = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f"  ({r.error})" if r.error else "") for r in results]
    result = {"items": items, "passed": sum(r.passed for r in results), "total": len(results)}
    if a.lattice:
        rows = corpus.lattice_soundness()
        result["lattice"] = {"edges_checked": len(rows), "failures": [r for r in rows if not r["passed"]]}
        ok &= all(r["passed"] for r in rows)
        lines.append(f"lattice: {sum(r['passed'] for r in rows)}/{len(rows)} edge checks pass")
    lines.append(f"{result['passed']}/{result['total']} corpus checks pass")
    return result, EXIT_OK if ok else EXIT_FAIL, "\n".join(lines)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amdfam", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"amdfam {__version__}")
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def family_opts(q, required=True):
        q.add_argument("--family", required=required, help="family JSON: path, inline, or - for stdin")

    q = sub.add_parser("verify", help="check a family against a type definition")
    q.add_argument("--type", required=True, type=str.upper, choices=families.FAMILY_TYPES)
    family_opts(q)
    q.add_argument("--lambda", dest="lam", type=int, help="bound for BEDF")
    q.add_argument("--lambdas", help="comma-separated bounds for BGSEDF")
    q.add_argument("--classes", help="PEDF class profile such as 2x3,1x4,3x1")
    q.add_argument("--relax-k", action="store_true", help="BEDF: allow unequal set sizes")
    q.add_argument("--uniform-k", action="store_true", help="DF: require equal block sizes")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("construct", help="run a built-in construction")
    q.add_argument("--recipe", required=True, choices=constructions.RECIPES)
    q.add_argument("--params", action="append", help="key=value[,key=value...]")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("diff", help="difference multisets of a family")
    family_opts(q)
    q.add_argument("--kind", default="external",
                   choices=("internal", "external", "outgoing", "incoming", "class", "summed"))
    q.add_argument("--index", type=int, help="1-based set index")
    q.add_argument("--indices", help="comma-separated 1-based indices for --kind class")
    q.set_defaults(func=cmd_diff)

    q = sub.add_parser("eval", help="evaluate the weak or strong game on a code")
    q.add_argument("--mode", choices=("weak", "strong"), default="weak")
    q.add_argument("--code", required=True)
    q.add_argument("--delta", help="evaluate one offset only (element as JSON)")
    q.add_argument("--source", help="source name for --mode strong --delta")
    q.add_argument("--full-table", action="store_true")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("classify", help="R/G optimality in both games")
    q.add_argument("--code", required=True)
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("to-family", help="recover a family from a code")
    q.add_argument("--type", required=True, type=str.upper, choices=families.FAMILY_TYPES)
    q.add_argument("--code", required=True)
    q.set_defaults(func=cmd_to_family)

    q = sub.add_parser("from-family", help="build the equiprobable code of a family")
    q.add_argument("--type", required=True, type=str.upper, choices=amd.CODE_SOURCE_TYPES)
    family_opts(q)
    q.add_argument("--lambda", dest="lam", type=int)
    q.add_argument("--lambdas")
    q.add_argument("--classes")
    q.set_defaults(func=cmd_from_family)

    q = sub.add_parser("search", help="exhaustive search for a family")
    q.add_argument("--spec", help="search spec JSON")
    q.add_argument("--mode", choices=search.MODES)
    q.add_argument("--budget-nodes", type=int)
    q.add_argument("--budget-seconds", type=float)
    q.add_argument("--jobs", type=int, default=default_jobs())
    q.add_argument("--split-depth", type=int)
    q.add_argument("--certify", action="store_true", help="exhaust the tree unless a solution appears")
    q.add_argument("--backend", choices=sorted(kernel.BACKENDS))
    q.add_argument("--sweep-sedf", type=int, metavar="NMAX", help="SEDF sweep with m > 2, k > 1 up to NMAX")
    q.set_defaults(func=cmd_search)

    q = sub.add_parser("relate", help="implication lattice checks")
    family_opts(q, required=False)
    q.add_argument("--from", dest="source", type=str.upper)
    q.add_argument("--to", dest="target", type=str.upper)
    q.add_argument("--lambda", dest="lam", type=int)
    q.add_argument("--maximal", choices=("gsedf", "pedf"), help="partition characterizations")
    q.add_argument("--classes")
    q.add_argument("--descendants", type=str.upper, metavar="TYPE")
    q.set_defaults(func=cmd_relate)

    q = sub.add_parser("reproduce-paper", help="run the worked-example regression corpus")
    q.add_argument("--only", help="substring filter on fixture names")
    q.add_argument("--lattice", action="store_true", help="also check every implication edge")
    q.set_defaults(func=cmd_reproduce)
    return p


def _echo(a) -> dict:
    skip = {"func", "format"}
    return {"name": a.command, "args": {k: v for k, v in sorted(vars(a).items()) if k not in skip and k != "command"}}


def envelope(a, result, code) -> dict:
    return {"version": __version__, "command": _echo(a), "result": result, "exit_code": code}


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    text = None
    try:
        result, code, text = a.func(a)
    except UsageError as e:
        result, code = {"error": {"type": "UsageError", "message": str(e)}}, EXIT_USAGE
        print(f"amdfam: {e}", file=sys.stderr)
    except (AmdFamError, InternalConsistencyError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        result, code = {"error": {"type": type(e).__name__, "message": str(msg)}}, EXIT_USAGE
        print(f"amdfam: {type(e).__name__}: {msg}", file=sys.stderr)
    if a.format == "table" and text is not None:
        print(text)
    else:
        print(json.dumps(envelope(a, result, code), sort_keys=True, indent=2))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
