"""``qvir`` command-line entry point.

Exit status: 0 when every check passes, 1 when a check fails, 2 on a usage
or configuration error.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from ..agt import (CheckRecord, nekrasov_F, norm_residue_relation, recursion_F, verify_triangle)
from ..exact import SYMBOLIC, RatFunc, SeriesError, to_json_value
from ..partitions import DEGENERACY, Partition, classify_weights, counting, partitions_of
from .cache import GramCache
from .config import ConfigError, RunConfig, load_config, merge_flags
from .report import Report, emit

COMMANDS = ("gram", "kac", "singular", "macdonald", "jack", "nekrasov", "recursion", "verify-agt",
            "normalization", "rprime", "degeneration", "classify", "counting")

DEFAULT_BOUNDS = {"gram": 3, "kac": 3, "nekrasov": 3, "recursion": 3, "verify-agt": 3,
                  "normalization": 4, "rprime": 4, "degeneration": 3}


class UsageError(ValueError):
    pass


def _jv(x):
    return to_json_value(x)


def _bound(args, cfg: RunConfig, name: str, attr: str = "n") -> int:
    value = getattr(args, attr, None)
    if value is None:
        value = cfg.bounds.get(name, DEFAULT_BOUNDS[name])
    if value < 0:
        raise UsageError(f"--{attr} must be nonnegative")
    return value


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _domain(args):
    if getattr(args, "perturb_f1", None) is not None:
        return SYMBOLIC.with_options(perturb_f1=Fraction(args.perturb_f1))
    return SYMBOLIC


def _rectangles(bound: int):
    return [(r, s) for r in range(1, bound + 1) for s in range(1, bound // r + 1)]


def _record(name, tag, ok, **detail):
    return CheckRecord(name, tag, "pass" if ok else "fail", detail)


# -- commands -------------------------------------------------------------------------

def cmd_gram(args, cfg, report):
    from ..verma import gram

    n = _bound(args, cfg, "gram")
    cache_dir = None if args.no_cache else cfg.resolved_cache_dir()
    dom = _domain(args)
    for level in range(n + 1):
        def compute(level=level):
            return gram(level, args.engine, dom).entries
        if cache_dir is not None and dom is SYMBOLIC:
            entries, hit = GramCache(cache_dir).get_or_compute(level, "h", args.engine, compute)
        else:
            entries = compute()
        sym = all(entries[i][j] == entries[j][i] for i in range(len(entries)) for j in range(i))
        report.records.append(_record(f"K_{level} symmetric", "shapovalov", sym, level=level))
        if level == n:
            report.data["partitions"] = [str(p) for p in partitions_of(level)]
            report.data["entries"] = [[str(x) for x in row] for row in entries]


def cmd_kac(args, cfg, report):
    from ..verma import KacMismatch, kac_check

    n = _bound(args, cfg, "kac")
    for level in range(1, n + 1):
        try:
            C = kac_check(level, args.engine, _domain(args))
            report.records.append(_record(f"Kac determinant n={level}", "Kac", True, C=_jv(C)))
        except KacMismatch as exc:
            report.records.append(_record(f"Kac determinant n={level}", "Kac", False, error=str(exc)[:2000]))


def cmd_singular(args, cfg, report):
    from ..verma import act, hrs_domain, singular_vector

    v = singular_vector(args.r, args.s, args.bound)
    dom = hrs_domain(args.r, args.s)
    killed = True
    for k in (1, 2):
        img = {}
        for lam, c in v.vector.terms.items():
            for mu, x in act(k, lam, dom).items():
                img[mu] = img.get(mu, RatFunc(0)) + c * x
        killed &= all(x == 0 for x in img.values())
    report.records.append(_record(f"T_1, T_2 annihilate v_{{{args.r},{args.s}}}", "sing", killed))
    report.data["vector"] = [{"partition": str(lam), "coeff": str(c)}
                             for lam, c in sorted(v.vector.terms.items())]


def _symfunc_data(f):
    return [{"partition": str(lam), "coeff": str(c)}
            for lam, c in sorted(f.terms.items(), reverse=True)]


def cmd_macdonald(args, cfg, report):
    from ..symfunc import basis_convert, macdonald

    lam = _partition(args.lam)
    f = macdonald(lam, args.form)
    if args.basis != "p":
        f = basis_convert(f, "p", args.basis)
    report.data["basis"] = args.basis
    report.data["function"] = _symfunc_data(f)


def cmd_jack(args, cfg, report):
    from ..symfunc import basis_convert, jack

    lam = _partition(args.lam)
    beta = None
    if args.beta is not None:
        try:
            beta = RatFunc(Fraction(args.beta))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--beta must be a rational number: {exc}") from exc
        if beta == 0:
            raise UsageError("--beta must be nonzero")
    f = jack(lam, args.form, beta=beta)
    if args.basis != "p":
        f = basis_convert(f, "p", args.basis)
    report.data["basis"] = args.basis
    report.data["function"] = _symfunc_data(f)


def cmd_nekrasov(args, cfg, report):
    n = _bound(args, cfg, "nekrasov")
    report.data["F"] = {str(k): str(nekrasov_F(k)) for k in range(n + 1)}


def cmd_recursion(args, cfg, report):
    n = _bound(args, cfg, "recursion")
    report.data["F"] = {str(k): str(recursion_F(k)) for k in range(n + 1)}


def cmd_verify_agt(args, cfg, report):
    n = _bound(args, cfg, "verify-agt")
    report.records.extend(verify_triangle(n, cfg.mode, n_min=args.n_min, points=cfg.points,
                                          seed=cfg.seed, prime=cfg.prime, bridge=args.bridge))


def cmd_normalization(args, cfg, report):
    from ..fock import NormalizationError, TwoPathMismatch, q1_meT_corner, q1_transition, \
        verify_singular_normalization

    bound = _bound(args, cfg, "normalization", "max_rs")
    for r, s in _rectangles(bound):
        try:
            verify_singular_normalization(r, s, bound)
            report.records.append(_record(f"iota(v_{{{r},{s}}}) / J", "sing:norm", True))
        except NormalizationError as exc:
            report.records.append(_record(f"iota(v_{{{r},{s}}}) / J", "sing:norm", False, error=str(exc)))
    literal = {}
    for r, s in _rectangles(bound):
        try:
            q1_meT_corner(r, s, bound, "conjugate")
            report.records.append(_record(f"M(e,T) corner ({r},{s}), row (r^s)", "M(e,T)", True))
        except NormalizationError as exc:
            report.records.append(_record(f"M(e,T) corner ({r},{s}), row (r^s)", "M(e,T)", False,
                                          error=str(exc)))
        try:
            q1_meT_corner(r, s, bound, "literal")
            literal[f"{r},{s}"] = "pass"
        except NormalizationError:
            literal[f"{r},{s}"] = "fail"
    report.data["M(e,T) corner, row (s^r)"] = literal
    failures = []
    for r in range(1, 4):
        for k in range(1, args.two_path_degree + 1):
            for lam in partitions_of(k):
                try:
                    q1_transition(lam, r)
                except TwoPathMismatch as exc:
                    failures.append({"partition": str(lam), "r": r, "error": str(exc)})
    report.records.append(_record(f"q=1 two-path |lam| <= {args.two_path_degree}, r <= 3", "q=1 algebra",
                                  not failures, **({"failures": failures} if failures else {})))


def cmd_rprime(args, cfg, report):
    from ..classical import ClassicalMismatch, jack_normalization, kac_prime_check, r_prime

    bound = _bound(args, cfg, "rprime", "max_rs")
    for n in range(1, bound + 1):
        try:
            kac_prime_check(n)
            report.records.append(_record(f"classical Kac determinant n={n}", "Kac'", True))
        except ClassicalMismatch as exc:
            report.records.append(_record(f"classical Kac determinant n={n}", "Kac'", False, error=str(exc)))
    for r, s in _rectangles(bound):
        for name, tag, fn in ((f"R'_{{{r},{s}}} ({args.labels} labels)", "R'rs",
                               lambda: r_prime(r, s, bound, args.labels)),
                              (f"iota'(v'_{{{r},{s}}}) = B' J", "sing:jack", lambda: jack_normalization(r, s))):
            try:
                value = fn()
                report.records.append(_record(name, tag, True, value=str(value)))
            except ClassicalMismatch as exc:
                report.records.append(_record(name, tag, False, error=str(exc)))
    if args.deformed:
        from ..verma import ResidueMismatch, r_extract

        for r, s in _rectangles(bound):
            try:
                r_extract(r, s, bound)
                report.records.append(_record(f"R_{{{r},{s}}} literal", "Rrs", True))
            except ResidueMismatch as exc:
                report.records.append(_record(f"R_{{{r},{s}}} literal", "Rrs", False,
                                              computed=str(exc.computed), displayed=str(exc.displayed)))
            try:
                norm_residue_relation(r, s)
                report.records.append(_record(f"A_{{{r},{s}}} dN/dQ = (q/t)^{r * s}", "Rrs", True))
            except ArithmeticError as exc:
                report.records.append(_record(f"A_{{{r},{s}}} dN/dQ = (q/t)^{r * s}", "Rrs", False,
                                              error=str(exc)))


def cmd_degeneration(args, cfg, report):
    from ..classical import degeneration_suite

    levels = _bound(args, cfg, "degeneration", "levels")
    try:
        report.records.extend(degeneration_suite(args.order, gram_levels=levels))
    except SeriesError as exc:
        report.records.append(_record("degeneration", "expand", False, error=str(exc)))


def cmd_classify(args, cfg, report):
    try:
        ks, labels = classify_weights(args.P, args.Q, args.sign)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report.data["pairs"] = [{"r": r, "s": s, "case": labels[(r, s)],
                             "degeneracy": DEGENERACY.get(labels[(r, s)])} for r, s in ks]


def cmd_counting(args, cfg, report):
    try:
        values = [counting(args.kind, *args.params, n) for n in range(args.n + 1)]
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    report.data["kind"] = args.kind
    report.data["params"] = list(args.params)
    report.data["values"] = values


HANDLERS = {"gram": cmd_gram, "kac": cmd_kac, "singular": cmd_singular, "macdonald": cmd_macdonald,
            "jack": cmd_jack, "nekrasov": cmd_nekrasov, "recursion": cmd_recursion,
            "verify-agt": cmd_verify_agt, "normalization": cmd_normalization, "rprime": cmd_rprime,
            "degeneration": cmd_degeneration, "classify": cmd_classify, "counting": cmd_counting}


# -- parser ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with run configuration defaults")
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--mode", choices=("symbolic", "modular"))
    common.add_argument("--prime", type=int)
    common.add_argument("--points", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--cache-dir", dest="cache_dir")

    parser = _Parser(prog="qvir", description="Exact checks for the deformed Virasoro algebra "
                                              "and the 5d AGT relation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("gram", "Shapovalov matrices up to level n")
    p.add_argument("--n", type=int)
    p.add_argument("--engine", choices=("fock", "abstract"), default="abstract")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--perturb-f1", dest="perturb_f1")

    p = add("kac", "Kac determinant ratio for levels 1..n")
    p.add_argument("--n", type=int)
    p.add_argument("--engine", choices=("fock", "abstract"), default="abstract")
    p.add_argument("--perturb-f1", dest="perturb_f1",
                   help="add a rational constant to f_1 (a deliberately broken algebra)")

    p = add("singular", "singular vector at h_{r,s}")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--bound", type=int, default=6)

    for name in ("macdonald", "jack"):
        p = add(name, f"{name.capitalize()} function of a partition")
        p.add_argument("--lam", required=True, help="partition such as 2,1")
        p.add_argument("--form", choices=("P", "J"), default="P")
        p.add_argument("--basis", choices=("p", "m", "e"), default="p")
        if name == "jack":
            p.add_argument("--beta", help="rational value; symbolic b if omitted")

    for name, help_ in (("nekrasov", "instanton sum F_0..F_n"), ("recursion", "recursion F_0..F_n")):
        p = add(name, help_)
        p.add_argument("--n", type=int)

    p = add("verify-agt", "nekrasov = recursion = gram for n_min..n")
    p.add_argument("--n", type=int)
    p.add_argument("--n-min", dest="n_min", type=int, default=1)
    p.add_argument("--bridge", choices=("A", "B"), default="B")

    p = add("normalization", "singular-vector normalizations and the q=1 algebra")
    p.add_argument("--max-rs", dest="max_rs", type=int)
    p.add_argument("--two-path-degree", dest="two_path_degree", type=int, default=5)

    p = add("rprime", "classical Kac determinant, R'_{r,s} and the Jack normalization")
    p.add_argument("--max-rs", dest="max_rs", type=int)
    p.add_argument("--labels", choices=("literal", "transposed"), default="literal")
    p.add_argument("--deformed", action="store_true", help="also read R_{r,s} off the deformed norm")

    p = add("degeneration", "hbar -> 0 checks")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--levels", type=int, help="Gram levels to degenerate")

    p = add("classify", "degenerate weights K_{P,Q}")
    p.add_argument("--P", type=int, required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--sign", choices=("+", "-"), required=True)

    p = add("counting", "generating-function counts for n = 0..N")
    p.add_argument("--kind", choices=("p", "p_N", "q_N"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("params", nargs="*", type=int, help="N for p_N; N r s for q_N")
    return parser


def run(argv=None):
    """Parse argv and run the command.

    Returns (exit status, Report or None, rendered text, output path or None).
    """
    try:
        args = build_parser().parse_args(argv)
        cfg = merge_flags(load_config(args.config), args)
    except (UsageError, ConfigError) as exc:
        return 2, None, f"qvir: error: {exc}\n", None
    report = Report(args.command, cfg.snapshot())
    start = time.perf_counter()
    try:
        HANDLERS[args.command](args, cfg, report)
    except (UsageError, ValueError) as exc:
        return 2, None, f"qvir: error: {exc}\n", None
    report.elapsed = time.perf_counter() - start
    return (0 if report.ok else 1), report, emit(report, cfg.format), args.output


def main(argv=None) -> int:
    status, report, text, output = run(argv)
    if report is None:
        sys.stderr.write(text)
    elif output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
