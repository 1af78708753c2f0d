"""Command line front end: word parsing, family construction and the
batch commands.  Exit codes: 0 ok, 1 usage error, 2 inconclusive,
3 internal invariant violated."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

from . import abelian, cosets, cycpres, loggraph, smallcanc
from .conjsolver import SemidirectElement, semidirect_conjugate
from .errors import Exhausted, ParseError, TadlogError
from .hatfree import hat_conjugate, hat_rewrite
from .word import TwoGenWord, Word, cyclic_equivalent, cyclically_reduce

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_INVARIANT = 0, 1, 2, 3

_TERM = re.compile(r"([xyac])(\d*)(?:\^(-?\d+))?")


def parse_word(text: str, n: int | None = None):
    """Parse ``x1 x4 x2^-1``, ``y3^2 y1^-1`` or ``a c^2 a^-1``.

    Exponents expand to runs of letters; no reduction is done.  ``1`` is
    the empty word.  x/y words need ``n``.
    """
    s = text.strip()
    if s == "1":
        if n is None:
            return TwoGenWord((), None)
        return Word.identity(n)
    if not s:
        raise ParseError("empty word", 0)
    letters = []
    kinds = set()
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TERM.match(text, pos)
        if not m or (m.end() < len(text) and not text[m.end()].isspace()):
            bad = m.end() if m else pos
            raise ParseError(f"unexpected character {text[bad]!r}" if bad < len(text) else "bad term", bad)
        gen, idx, exp = m.group(1), m.group(2), m.group(3)
        e = int(exp) if exp is not None else 1
        if gen in "xy":
            if not idx:
                raise ParseError(f"{gen} needs an index", m.start())
            if n is None:
                raise ParseError("indexed generators need n", m.start())
            i = int(idx)
            if not 1 <= i <= n:
                raise ParseError(f"index {i} out of range 1..{n}", m.start(2))
            kinds.add(gen)
            g = i - 1
        else:
            if idx:
                raise ParseError(f"{gen} takes no index", m.start(2))
            kinds.add("ac")
            g = gen
        if len(kinds) > 1:
            raise ParseError("mixed generator kinds", m.start())
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        pos = m.end()
    kind = kinds.pop()
    if kind == "ac":
        return TwoGenWord(tuple(letters), n)
    return Word(n, tuple(letters), kind)


def format_word(w) -> str:
    return str(w)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _ints(s: str) -> tuple:
    return tuple(int(x) for x in s.replace(",", " ").split())


def _add_source(p, word=True):
    p.add_argument("--family", choices=["hnk", "sv", "ln", "G1", "H1", "G", "S"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=_ints, help="comma separated p_0..p_{r-1}")
    p.add_argument("--q", type=_ints, help="comma separated q_1..q_r")
    p.add_argument("--eps", type=_ints, help="comma separated eps_0..eps_r")
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--form", choices=["A", "B"], default="A")
    if word:
        p.add_argument("--word", help="defining word, e.g. 'x1 x4 x2^-1'")


def _need(args, *names):
    missing = [f"--{x}" for x in names if getattr(args, x, None) is None]
    if missing:
        raise TadlogError(f"missing {', '.join(missing)}")


def _notice_mod(args, *names):
    for x in names:
        v = getattr(args, x, None)
        if v is not None and not 1 <= v <= args.n:
            print(f"notice: --{x} {v} taken mod {args.n}", file=sys.stderr)


def _source(args) -> cycpres.CyclicWord:
    _need(args, "n")
    if getattr(args, "word", None):
        w = parse_word(args.word, args.n)
        if not isinstance(w, Word):
            raise TadlogError("expected an x-word")
        return cycpres.CyclicWord(args.n, w)
    fam = args.family or "hnk"
    if fam == "hnk":
        _need(args, "m", "k")
        _notice_mod(args, "m", "k")
        return cycpres.hnk(args.n, args.m, args.k)
    if fam == "sv":
        _need(args, "k", "q", "eps")
        return cycpres.family_sv(cycpres.SVParams(args.n, args.k, args.q, args.eps))
    if fam == "ln":
        _need(args, "p")
        return cycpres.family_ln(cycpres.LnParams(args.n, args.p))
    if fam == "G":
        _need(args, "l")
        return cycpres.family_catalog("G", args.n, args.form, l=args.l)
    if fam == "S":
        _need(args, "r")
        return cycpres.family_catalog("S", args.n, args.form, r=args.r)
    return cycpres.family_catalog(fam, args.n, args.form)


def _emit(args, data, text: str):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, default=_json_default))
    elif args.format == "csv":
        raise TadlogError("csv output is only available for survey")
    else:
        print(text)


def _json_default(o):
    if isinstance(o, float) and math.isinf(o):
        return "inf"
    return str(o)


def _num(x):
    return "inf" if x == math.inf else x


# -- commands

def cmd_family(args):
    cw = _source(args)
    _emit(args, {"n": cw.n, "word": str(cw.w)}, str(cw.w))


def cmd_pres(args):
    cw = _source(args)
    p = cycpres.cyclic_presentation(cw)
    _emit(args, {"n": cw.n, "relators": [str(r) for r in p.relators]}, str(p))


def cmd_hnn(args):
    cw = _source(args)
    W = cycpres.hnn_two_generator(cw)
    _emit(args, {"n": cw.n, "relator": str(W), "commutator": f"a c^{cw.n} a^-1 c^-{cw.n}"},
          f"< a, c | {W}, a c^{cw.n} a^-1 c^-{cw.n} >")


def cmd_derive(args):
    W = parse_word(args.relator, args.n)
    if not isinstance(W, TwoGenWord):
        raise TadlogError("derive expects a word in a and c")
    if W.asum == -1:
        W = W.inverse()
    U, gamma = cycpres.normalize_c_sum(W)
    cw = cycpres.derive_cyclic_word(U, args.n)
    _emit(args, {"normalized": str(U), "gamma": gamma, "word": str(cw.w), "n": args.n},
          f"{cw.w}\n# normalized: {U} (a -> a c^{gamma})")


def cmd_ytrans(args):
    fam = args.family or "sv"
    if fam == "sv":
        _need(args, "n", "k", "q", "eps")
        cw = cycpres.sv_to_y(cycpres.SVParams(args.n, args.k, args.q, args.eps))
    elif fam == "ln":
        _need(args, "n", "p")
        cw = cycpres.ln_to_y(cycpres.LnParams(args.n, args.p))
    else:
        raise TadlogError("ytrans takes --family sv or ln")
    _emit(args, {"n": cw.n, "word": str(cw.w)}, str(cw.w))


def cmd_log_collapse(args):
    with open(args.file) as fh:
        data = json.load(fh)
    if "tail" in data:
        t = loggraph.TadpoleLOG.from_json(data)
        U, n = loggraph.collapse_tadpole(t)
        tail_rel, _ = loggraph.symbolic_collapse(t)
        out = {"n": n, "U": str(U), "symbolic": str(tail_rel),
               "symbolic_agrees": loggraph.symbolic_matches_collapse(t)}
        lines = [f"< a, c | {U}, a c^{n} a^-1 c^-{n} >",
                 f"# symbolic elimination: {tail_rel}, conjugated by a "
                 f"{'equals' if out['symbolic_agrees'] else 'DIFFERS FROM'} the relator"]
        if t.positive:
            R, _ = loggraph.two_gen_positive(t)
            lp = t.ln_params()
            W = cycpres.hnn_two_generator(cycpres.family_ln(lp))
            wit = hat_conjugate(hat_rewrite(W, n), hat_rewrite(R, n),
                                witness=loggraph.cor32_witness(lp), inverted=True)
            out.update({"positive_relator": str(R), "ln_word": str(cycpres.family_ln(lp).w),
                        "witness_verified": wit is not None})
            lines.append(f"# positive relator: {R}")
            lines.append(f"# L_n word: {cycpres.family_ln(lp).w}; "
                         f"conjugacy witness {'verified' if wit is not None else 'FAILED'}")
        if not out["symbolic_agrees"] or out.get("witness_verified") is False:
            _emit(args, out, "\n".join(lines))
            return EXIT_INVARIANT
        _emit(args, out, "\n".join(lines))
    else:
        g = loggraph.GeneralLOG.from_json(data)
        p = loggraph.log_presentation(g)
        ab = abelian.abelianization(p)
        _emit(args, {"relators": [str(r) for r in p.relators], "abelianization": str(ab)},
              f"{p}\n# abelianization: {ab}")


def _graph_json(g):
    return [{"u": smallcanc.vertex_label(u), "v": smallcanc.vertex_label(v), "type": t} for u, v, t in g.edges]


def _star(args):
    if args.typed:
        _need(args, "n", "m", "k")
        return smallcanc.star_hnk(args.n, args.m, args.k)
    cw = _source(args)
    return smallcanc.star_graph(cycpres.cyclic_presentation(cw).cyclically_reduced())


def cmd_star(args):
    g = _star(args)
    lines = [f"{smallcanc.vertex_label(u)} -- {smallcanc.vertex_label(v)}" + (f" [{t}]" if t else "")
             for u, v, t in g.edges]
    _emit(args, {"vertices": len(g.vertices), "edges": _graph_json(g)},
          f"# {len(g.vertices)} vertices, {len(g.edges)} edges\n" + "\n".join(lines))


def cmd_girth(args):
    g = _star(args)
    gi, counts, cycles = smallcanc.girth_and_spectrum(g, args.lmax)
    data = {"girth": _num(gi), "counts": {str(k): v for k, v in sorted(counts.items())},
            "cycles": [{"length": c.length, "types": c.types,
                        "vertices": [smallcanc.vertex_label(v) for v in c.vertices]} for c in cycles]}
    lines = [f"girth {_num(gi)}"] + [f"length {k}: {v}" for k, v in sorted(counts.items())]
    if args.list:
        lines += [f"{c.length} {c.types} " + " - ".join(smallcanc.vertex_label(v) for v in c.vertices)
                  for c in cycles]
    _emit(args, data, "\n".join(lines))


def _classify_text(c, o):
    if c.c3t7:
        head, gtxt = "C(3)-T(7)", "girth>=7"
    elif c.c3t6:
        head, gtxt = "C(3)-T(6)", f"girth {_num(o.girth)}"
    else:
        head, gtxt = "not C(3)-T(6)", f"girth {_num(o.girth)}"
    agree = c.c3t6 == o.c3t6 and c.c3t7 == o.c3t7
    return f"{head}; {gtxt}; {'oracle agrees' if agree else 'ORACLE DISAGREES'}", agree


def cmd_classify(args):
    _need(args, "n", "m", "k")
    c = smallcanc.thm61_classify(args.n, args.m, args.k)
    o = smallcanc.hnk_oracle(args.n, args.m, args.k)
    text, agree = _classify_text(c, o)
    data = {"n": c.n, "m": c.m, "k": c.k, "A": c.A, "B": c.B, "c3t6": c.c3t6, "c3t7": c.c3t7,
            "oracle_c3t6": o.c3t6, "oracle_c3t7": o.c3t7, "girth": _num(o.girth),
            "special": o.special, "excluded_case": c.excluded_case, "failed": list(c.failed),
            "annotations": list(c.annotations), "oracle_agrees": agree}
    lines = [text]
    if c.failed:
        lines.append("# failed: " + ", ".join(c.failed))
    if c.excluded_case:
        ex = smallcanc.identify_excluded_case(c.n, c.m, c.k)
        lines.append(f"# excluded case: {ex.description}")
    lines += [f"# {a}" for a in c.annotations]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if agree else EXIT_INVARIANT


def cmd_special(args):
    g = _star(args)
    s = smallcanc.is_special_c3t6(g)
    _emit(args, {"special": s}, "special" if s else "not special")


def cmd_taxonomy(args):
    r = smallcanc.h_n3_taxonomy(args.n)
    data = {"n": r.n, "girth": _num(r.girth), "counts": {str(k): v for k, v in sorted(r.counts.items())},
            "by_type": {f"{L}:{t}": v for (L, t), v in sorted(r.by_type.items())},
            "forms": r.form_matches, "unmatched": {str(k): v for k, v in r.unmatched.items()},
            "checks": r.checks, "ok": r.ok}
    lines = [f"H({r.n},3): shortest cycle {_num(r.girth)}"]
    lines += [f"length {L} {t}: {v}" for (L, t), v in sorted(r.by_type.items())]
    lines += [f"form ({k}): {v}" for k, v in r.form_matches.items()]
    lines += [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in r.checks.items()]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if r.ok else EXIT_INVARIANT


def cmd_abelian(args):
    cw = _source(args)
    ab = abelian.abelianization(cycpres.cyclic_presentation(cw))
    res = abelian.ab_order_circulant(cw)
    agree = ab.order == res
    data = {"torsion": list(ab.torsion), "free_rank": ab.free_rank, "order": _num(ab.order),
            "resultant_order": _num(res), "agree": agree}
    _emit(args, data, f"{ab}\norder {_num(ab.order)} (resultant {_num(res)})")
    return EXIT_OK if agree else EXIT_INVARIANT


def cmd_order(args):
    cw = _source(args)
    t = cosets.todd_coxeter(cycpres.cyclic_presentation(cw), (), args.max_cosets)
    _emit(args, {"order": t.index}, str(t.index))
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(t.dump() + "\n")


def _element(G, w: Word) -> int:
    e = 0
    for g, s in w.letters:
        x = G.gens[g] if s == 1 else G.inv[G.gens[g]]
        e = G.mul[e][x]
    return e


def cmd_conj(args):
    cw = _source(args)
    t = cosets.todd_coxeter(cycpres.cyclic_presentation(cw), (), args.max_cosets)
    G = cosets.regular_representation(t, cw.n)
    u = _element(G, parse_word(args.u, cw.n))
    v = _element(G, parse_word(args.v, cw.n))
    ok, wit = semidirect_conjugate(G, SemidirectElement(u, args.pexp), SemidirectElement(v, args.qexp))
    data = {"conjugate": ok, "order": G.order}
    text = "conjugate" if ok else "not conjugate"
    if ok:
        data["witness"] = {"g": " ".join(f"x{x // 2 + 1}" + ("^-1" if x % 2 else "") for x in G.words[wit.g]) or "1",
                           "m": wit.m}
        text += f"; witness g = {data['witness']['g']}, m = {wit.m}"
    _emit(args, data, text)


def cmd_survey(args):
    triples = smallcanc.survey_triples(args.nmin, args.nmax, args.primes)
    rows = smallcanc.survey(triples, args.workers)
    if args.format == "json":
        text = json.dumps(rows, sort_keys=True)
    else:
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=smallcanc.SURVEY_COLUMNS, lineterminator="\n")
        wr.writeheader()
        for r in rows:
            wr.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in r.items()})
        text = buf.getvalue().rstrip("\n")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        flagged = sum(1 for r in rows if r["discrepancy_flags"])
        print(f"{len(rows)} rows, {flagged} flagged -> {args.out}", file=sys.stderr)
    else:
        print(text)
    bad = [r for r in rows if "oracle" in r["discrepancy_flags"] and "cor63" not in r["discrepancy_flags"]]
    return EXIT_INVARIANT if bad else EXIT_OK


def verify_suite(n: int, m: int, k: int) -> list[tuple[str, bool]]:
    """Cross-module identities for H_n(m,k)."""
    checks = []
    cw = cycpres.hnk(n, m, k)
    try:
        back = cycpres.round_trip(cw)
        checks.append(("round trip", cyclic_equivalent(back.w, cw.w) is not None))
    except TadlogError:
        checks.append(("round trip (word not reducible to length >= 1)", len(cw.w) == 0))
    c = smallcanc.thm61_classify(n, m, k)
    o = smallcanc.hnk_oracle(n, m, k)
    checks.append(("congruences vs girth oracle, T(6)", c.c3t6 == o.c3t6))
    checks.append(("congruences vs girth oracle, T(7)", c.c3t7 == o.c3t7))
    pres = cycpres.cyclic_presentation(cw).cyclically_reduced()
    if len(pres.relators[0]) == 3:
        checks.append(("star graph conventions isomorphic",
                       smallcanc.is_isomorphic_under_inversion(smallcanc.star_graph(pres),
                                                               smallcanc.star_hnk(n, m, k))))
    ab = abelian.abelianization(cycpres.cyclic_presentation(cw))
    checks.append(("SNF order equals resultant", ab.order == abelian.ab_order_circulant(cw)))
    lp = cycpres.cor34_params(n, m, k)
    y = cycpres.ln_to_y(lp)
    yw = cyclically_reduce(Word(n, y.w.letters))[0]
    checks.append(("L_n y-rewrite equivalent to H_n(m,k)",
                   cyclic_equivalent(yw, cyclically_reduce(cw.w)[0]) is not None))
    checks.append(("L_n and H_n(m,k) abelianizations agree",
                   abelian.abelianization(cycpres.cyclic_presentation(cycpres.family_ln(lp))) == ab))
    t = loggraph.tadpole_hnk(cycpres.HnkParams(n, m, k))
    checks.append(("tadpole collapse equals symbolic elimination", loggraph.symbolic_matches_collapse(t)))
    return checks


def cmd_verify(args):
    _need(args, "n", "m", "k")
    checks = verify_suite(args.n, args.m, args.k)
    ok = all(v for _, v in checks)
    _emit(args, {"checks": {k: v for k, v in checks}, "ok": ok},
          "\n".join(f"{'pass' if v else 'FAIL'}  {k}" for k, v in checks))
    return EXIT_OK if ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tadlog", description="Cyclic presentations, tadpole LOGs and H_n(m,k).")
    ap.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, source=True, **kw):
        p = sub.add_parser(name, **kw)
        if source:
            _add_source(p)
        p.set_defaults(func=fn)
        return p

    add("family", cmd_family, help="print a family's defining word")
    add("pres", cmd_pres, help="expand the cyclic presentation")
    add("hnn", cmd_hnn, help="two-generator presentation of the natural HNN extension")
    p = add("derive", cmd_derive, source=False, help="cyclic word from a two-generator relator")
    p.add_argument("relator")
    p.add_argument("--n", type=int, required=True)
    add("ytrans", cmd_ytrans, help="y-generator rewrite of an SV or L_n word")
    p = add("log-collapse", cmd_log_collapse, source=False, help="collapse a LOG read from JSON")
    p.add_argument("file")
    for name, fn in (("star", cmd_star), ("girth", cmd_girth), ("special", cmd_special)):
        p = add(name, fn)
        p.add_argument("--typed", action="store_true", help="use the X/Y/Z construction for H_n(m,k)")
        if name == "girth":
            p.add_argument("--lmax", type=int, default=8)
            p.add_argument("--list", action="store_true")
    add("classify", cmd_classify, help="congruence classification with girth oracle")
    p = add("taxonomy", cmd_taxonomy, source=False, help="cycle taxonomy of H(n,3)")
    p.add_argument("--n", type=int, required=True)
    add("abelian", cmd_abelian, help="abelianization by SNF and resultant")
    p = add("order", cmd_order, help="group order by coset enumeration")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--dump", help="write the coset table to this file")
    p = add("conj", cmd_conj, help="conjugacy in G x| Z over a finite quotient")
    p.add_argument("--u", required=True)
    p.add_argument("--pexp", type=int, default=0, help="t-exponent of the first element")
    p.add_argument("--v", required=True)
    p.add_argument("--qexp", type=int, default=0, help="t-exponent of the second element")
    p.add_argument("--max-cosets", type=int, default=None)
    p = add("survey", cmd_survey, source=False, help="classification grid as CSV")
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--nmax", type=int, default=40)
    p.add_argument("--primes", action="store_true", help="only m = 1 and prime n")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    add("verify", cmd_verify, help="run the identity suite for H_n(m,k)")
    return ap


def run_command(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.format == "csv" and args.command != "survey":
        print("error: csv output is only available for survey", file=sys.stderr)
        return EXIT_USAGE
    try:
        rc = args.func(args)
    except Exhausted as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (TadlogError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK if rc is None else rc


def main():
    try:
        code = run_command()
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
