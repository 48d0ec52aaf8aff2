"""Command-line entry point: ``itinlab <family> <command> ...``.

Exit status is 0 on success, 2 on a domain error (the error class name goes
to stderr) and 1 on a usage error.  ``--json`` switches any command to a
JSON document tagged with ``"schema": "itinerary-lab/1"``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from . import bruhat, cwcomplex, permgroup, polycurve, spinsign, trilat, words
from .errors import ItinlabError, ParseError

SCHEMA = "itinerary-lab/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- parsing helpers -------------------------------------------------------------

def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _fracs(text: str) -> List[Fraction]:
    return [_frac(v) for v in text.split(",") if v.strip()]


def _matrix(text: str) -> List[List[Fraction]]:
    """Rows separated by ';', entries by ','."""
    rows = [_fracs(r) for r in text.split(";") if r.strip()]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix must be square")
    return rows


def _perm(args, text: str) -> permgroup.Perm:
    return permgroup.parse_perm(text, getattr(args, "n", None))


def _word(args, text: str) -> words.Word:
    return words.parse_word(text, getattr(args, "n", None))


def _lower(text: str) -> trilat.LowerUni:
    return trilat.LowerUni.from_rows(_matrix(text))


def _fmt_matrix(m) -> str:
    return "\n".join(" ".join(str(v) for v in r) for r in m)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ITLAB_THREADS", "1")))
    except ValueError:
        return 1


# Every handler returns (text, json_payload).
Handler = Callable[[argparse.Namespace], Tuple[str, object]]


# --- perm ----------------------------------------------------------------------------

def perm_inv(a):
    s = _perm(a, a.sigma)
    d = permgroup.inv_data(s)
    return f"{d.total} {permgroup.format_mult(d.per_row)}", {"inv": d.total, "per_row": list(d.per_row),
                                                             "pairs": sorted(map(list, d.pairs))}


def perm_mult(a):
    m = permgroup.multiplicity(_perm(a, a.sigma))
    return permgroup.format_mult(m), {"mult": list(m)}


def perm_covers(a):
    cs = sorted(permgroup.covers(_perm(a, a.sigma), a.direction), key=lambda s: s.images)
    return "\n".join(map(str, cs)), {"covers": [str(s) for s in cs]}


def perm_vee(a):
    s = permgroup.vee(_perm(a, a.sigma0), _perm(a, a.sigma1))
    return str(s), {"vee": str(s)}


def perm_leq(a):
    r = permgroup.bruhat_leq(_perm(a, a.sigma0), _perm(a, a.sigma1), a.mode)
    return str(r).lower(), {"leq": r, "mode": a.mode}


def perm_reduced(a):
    w = permgroup.reduced_word(_perm(a, a.sigma))
    return " ".join(f"a{i}" for i in w), {"word": list(w)}


# --- quat ------------------------------------------------------------------------------

def quat_hat(a):
    q = spinsign.hat_perm(_perm(a, a.sigma))
    return str(q), {"sign": q.sign, "eps": list(q.eps)}


def quat_mul(a):
    z = spinsign.group_mul(spinsign.parse_lifted(a.z0, a.n), spinsign.parse_lifted(a.z1, a.n))
    return str(z), z.to_json()


def quat_pi(a):
    m = spinsign.pi_matrix(spinsign.parse_lifted(a.z, a.n))
    return _fmt_matrix(m), {"matrix": m}


def quat_canonical(a):
    """Tokens ``a<i>`` (acute), ``a<i>'`` (its inverse) and ``h<i>`` (hat), multiplied left to right."""
    n = a.n
    dim = n + 1
    factors = []
    for tok in a.tokens:
        try:
            if tok.startswith("h"):
                factors.append(spinsign.cl_hat_gen(dim, int(tok[1:])))
            elif tok.endswith("'"):
                factors.append(spinsign.cl_acute_gen(dim, int(tok[1:-1])).reverse())
            elif tok.startswith("a"):
                factors.append(spinsign.cl_acute_gen(dim, int(tok[1:])))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"bad token {tok!r}") from None
    z = spinsign.canonicalize(spinsign.cl_product(dim, factors))
    return str(z), z.to_json()


# --- tp ----------------------------------------------------------------------------------

def tp_cell(a):
    s = trilat.tnn_cell(_lower(a.matrix))
    return str(s), {"cell": str(s), "word": list(permgroup.reduced_word(s))}


def tp_factor(a):
    L = _lower(a.matrix)
    word = permgroup.parse_generators(a.word) if a.word else permgroup.reduced_word(trilat.tnn_cell(L))
    ts = trilat.factor_along_word(L, word)
    return " ".join(map(str, ts)), {"word": list(word), "params": [str(t) for t in ts]}


def tp_order(a):
    r = trilat.order_cmp(_lower(a.l0), _lower(a.l1))
    return r, {"order": r}


def tp_braid(a):
    ts = trilat.braid_move(_frac(a.t1), _frac(a.t2), _frac(a.t3))
    return " ".join(map(str, ts)), {"params": [str(t) for t in ts]}


def tp_ac(a):
    L, Lx = _lower(a.matrix), _lower(a.ref)
    r = trilat.ac_membership(L, permgroup.parse_perm(a.sigma, L.n), Lx)
    return str(r).lower(), {"member": r}


# --- bruhat ----------------------------------------------------------------------------

def bruhat_cell(a):
    c = bruhat.cell_of_matrix(_matrix(a.matrix))
    return f"{c.sigma} letter={c.letter} mult={permgroup.format_mult(c.mult)}", c.to_json()


def bruhat_chop_adv(a):
    chop, adv = bruhat.chop_adv(spinsign.parse_lifted(a.z, a.n))
    return f"chop: {chop}\nadv: {adv}", {"chop": chop.to_json(), "adv": adv.to_json()}


def bruhat_btable(a):
    w = _word(a, a.word)
    t = bruhat.b_table(w.letters, w.n)
    lines = [f"{p}\t{z}" for p, z in zip(t.positions, t.entries)]
    doc = {"entries": [{"pos": str(p), **z.to_json()} for p, z in zip(t.positions, t.entries)]}
    return "\n".join(lines), doc


# --- section ---------------------------------------------------------------------------

def _sigma(a) -> permgroup.Perm:
    return permgroup.parse_perm(a.sigma, a.n)


def section_family(a):
    s = _sigma(a)
    q = spinsign.parse_quat(a.q, s.n) if a.q else None
    M = polycurve.transversal_family(s, q)
    return "\n".join("  ".join(str(e) for e in r) for r in M.entries), {
        "params": [str(x) for x in M.xs], "matrix": M.to_json()}


def section_minors(a):
    s = _sigma(a)
    minors, xs = polycurve.family_minors(s)
    if a.x is not None:
        minors = polycurve.specialize(minors, xs, _fracs(a.x))
    txt = [str(m) for m in minors]
    return "\n".join(f"m{j} = {m}" for j, m in enumerate(txt, 1)), {"minors": txt}


def section_itinerary(a):
    pts = polycurve.itinerary_at(_sigma(a), _fracs(a.x))
    word = polycurve.word_string(polycurve.itinerary_letters(pts)) if pts else "()"
    doc = {"itinerary": word, "points": [
        {"t": str(p.root), "approx": round(p.root.approx(), 12), "mult": list(p.mult), "letter": str(p.letter)}
        for p in pts]}
    return word, doc


def section_boundaries(a):
    curves = polycurve.boundary_curves(_sigma(a))
    lines = [f"m{i},m{j}: {e} = 0" for (i, j), e in sorted(curves.items())]
    return "\n".join(lines), {"curves": [{"minors": [i, j], "expr": str(e)} for (i, j), e in sorted(curves.items())]}


def _window(a):
    x1, x2 = _fracs(a.x1), _fracs(a.x2)
    if len(x1) != 2 or len(x2) != 2:
        raise UsageError("windows are given as lo,hi")
    return tuple(x1), tuple(x2), (a.res, a.res)


def section_regions(a):
    x1, x2, res = _window(a)
    rows = polycurve.region_map(_sigma(a), x1, x2, res, _threads())
    return polycurve.region_tsv(rows).rstrip("\n"), {
        "grid": [{"x1": str(p), "x2": str(q), "itinerary": lab} for p, q, lab in rows]}


def section_svg(a):
    x1, x2, res = _window(a)
    svg = polycurve.region_svg(_sigma(a), x1, x2, res, a.size, _threads())
    return svg.rstrip("\n"), {"svg": svg}


# --- word ---------------------------------------------------------------------------------

def word_stats(a):
    st = words.word_stats(_word(a, a.word))
    txt = (f"dim={st.dim} len={st.length} mult={permgroup.format_mult(st.mult)} "
           f"hat={st.hat} xdim={words.xdim_str(_word(a, a.word))}")
    return txt, {"dim": st.dim, "length": st.length, "mult": list(st.mult), "hat": str(st.hat),
                 "xdim": list(st.xdim)}


def word_normal_form(a):
    w = words.normal_form(_word(a, a.word))
    return str(w) or "()", {"normal_form": str(w)}


def word_edge(a):
    lo, hi = words.edge_endpoints(_word(a, a.word))
    return f"{lo} -> {hi}", {"minus": str(lo), "plus": str(hi)}


def _chain_doc(c: words.Chain):
    return {"chain": [{"coef": v, "word": str(w)} for w, v in sorted(c.items(), key=lambda kv: words.ord_key(kv[0]))]}


def word_boundary(a):
    c = words.boundary(_word(a, a.word))
    return words.chain_str(c), _chain_doc(c)


def word_lower_set(a):
    s = permgroup.parse_perm(a.sigma, a.n)
    ws = sorted(words.lower_set_full(s) if a.full else words.lower_set(s), key=words.ord_key)
    return "\n".join(map(str, ws)), {"lower_set": [str(w) for w in ws]}


def word_precedes(a):
    w0 = _word(a, a.w0)
    r = words.precedes(w0, words.parse_word(a.w1, w0.n))
    txt = "unknown" if r is None else str(r).lower()
    return txt, {"precedes": r}


# --- complex ------------------------------------------------------------------------------

def complex_build(a):
    c = cwcomplex.build_skeleton(a.n, a.max_len)
    if a.format == "text":
        return cwcomplex.to_text(c).rstrip("\n"), json.loads(cwcomplex.to_json(c))
    doc = json.loads(cwcomplex.to_json(c))
    return json.dumps(doc, sort_keys=True), doc


def complex_ddcheck(a):
    c = cwcomplex.build_skeleton(a.n, a.max_len)
    ok = cwcomplex.dd_is_zero(c)
    v, e, f = c.sizes()
    return f"{'ok' if ok else 'FAIL'} vertices={v} edges={e} faces={f}", {
        "dd_zero": ok, "sizes": [v, e, f]}


def complex_components(a):
    if a.stable:
        count, hist = cwcomplex.stable_component_count(a.n, a.core_len or 4)
        return str(count), {"count": count, "history": hist}
    c = cwcomplex.build_skeleton(a.n, a.max_len)
    comp = cwcomplex.components(c, a.core_len)
    reps = [str(w) or "()" for w in comp.representatives]
    return f"{comp.count}\n" + "\n".join(reps), {"count": comp.count, "core_len": comp.core_len,
                                                  "representatives": reps}


# --- parser --------------------------------------------------------------------------------

COMMANDS: Dict[Tuple[str, str], Handler] = {}


def _cmd(sub, family: str, name: str, fn: Handler, *arguments):
    p = sub.add_parser(name, help=(fn.__doc__ or "").split("\n")[0] or None)
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p.add_argument("--n", type=int, default=None, help="rank (generators a1..an)")
    for names, kw in arguments:
        p.add_argument(*names, **kw)
    p.set_defaults(handler=fn)
    COMMANDS[(family, name)] = fn
    return p


def _a(*names, **kw):
    return names, kw


def build_parser() -> argparse.ArgumentParser:
    COMMANDS.clear()
    top = _Parser(prog="itinlab", description="Itineraries of locally convex curves: exact combinatorics.")
    fams = top.add_subparsers(dest="family", required=True, parser_class=_Parser)

    def family(name, help_):
        return fams.add_parser(name, help=help_).add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = family("perm", "permutations")
    _cmd(f, "perm", "inv", perm_inv, _a("sigma"))
    _cmd(f, "perm", "mult", perm_mult, _a("sigma"))
    _cmd(f, "perm", "covers", perm_covers, _a("sigma"), _a("--direction", choices=["pred", "succ"], default="pred"))
    _cmd(f, "perm", "vee", perm_vee, _a("sigma0"), _a("sigma1"))
    _cmd(f, "perm", "leq", perm_leq, _a("sigma0"), _a("sigma1"),
         _a("--mode", choices=["strong", "weak_left", "weak_right"], default="strong"))
    _cmd(f, "perm", "reduced", perm_reduced, _a("sigma"))

    f = family("quat", "the Clifford group and its lift of signed permutations")
    _cmd(f, "quat", "hat", quat_hat, _a("sigma"))
    _cmd(f, "quat", "mul", quat_mul, _a("z0"), _a("z1"))
    _cmd(f, "quat", "pi", quat_pi, _a("z"))
    _cmd(f, "quat", "canonical", quat_canonical, _a("tokens", nargs="+"))

    f = family("tp", "totally nonnegative lower unitriangular matrices")
    _cmd(f, "tp", "cell", tp_cell, _a("matrix"))
    _cmd(f, "tp", "factor", tp_factor, _a("matrix"), _a("--word", default=None))
    _cmd(f, "tp", "order", tp_order, _a("l0"), _a("l1"))
    _cmd(f, "tp", "braid", tp_braid, _a("t1"), _a("t2"), _a("t3"))
    _cmd(f, "tp", "ac", tp_ac, _a("matrix"), _a("--sigma", required=True), _a("--ref", required=True))

    f = family("bruhat", "Bruhat cells")
    _cmd(f, "bruhat", "cell", bruhat_cell, _a("matrix"))
    _cmd(f, "bruhat", "chop-adv", bruhat_chop_adv, _a("z"))
    _cmd(f, "bruhat", "btable", bruhat_btable, _a("word"))

    f = family("section", "transversal sections of a letter")
    _cmd(f, "section", "family", section_family, _a("--sigma", required=True), _a("--q", default=None))
    _cmd(f, "section", "minors", section_minors, _a("--sigma", required=True), _a("--x", default=None))
    _cmd(f, "section", "itinerary", section_itinerary, _a("--sigma", required=True), _a("--x", required=True))
    _cmd(f, "section", "boundaries", section_boundaries, _a("--sigma", required=True))
    win = (_a("--x1", default="-1,1"), _a("--x2", default="-1,1"), _a("--res", type=int, default=40))
    _cmd(f, "section", "regions", section_regions, _a("--sigma", required=True), *win)
    _cmd(f, "section", "svg", section_svg, _a("--sigma", required=True), *win, _a("--size", type=int, default=480))

    f = family("word", "words and chains")
    _cmd(f, "word", "stats", word_stats, _a("word"))
    _cmd(f, "word", "normal-form", word_normal_form, _a("word"))
    _cmd(f, "word", "edge", word_edge, _a("word"))
    _cmd(f, "word", "boundary", word_boundary, _a("word"))
    _cmd(f, "word", "lower-set", word_lower_set, _a("sigma"), _a("--full", action="store_true"))
    _cmd(f, "word", "precedes", word_precedes, _a("w0"), _a("w1"))

    f = family("complex", "truncated skeletons")
    size = (_a("--max-len", type=int, default=6),)
    _cmd(f, "complex", "build", complex_build, *size, _a("--format", choices=["json", "text"], default="json"))
    _cmd(f, "complex", "ddcheck", complex_ddcheck, *size)
    _cmd(f, "complex", "components", complex_components, *size, _a("--core-len", type=int, default=None),
         _a("--stable", action="store_true"))
    return top


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.family == "complex" and args.n is None:
            raise UsageError("complex commands need --n")
        text, doc = args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except ItinlabError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, KeyError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    if args.json:
        payload = doc if isinstance(doc, dict) else {"result": doc}
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, default=str))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
