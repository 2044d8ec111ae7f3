"""Command line entry point: ``sl2charvar {cheb,components,integrality,verify}``.

Every subcommand builds a JSON-ready dict first; ``--json`` prints it with
sorted keys, otherwise a short table is rendered from the same dict.
Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .groebner import ResourceLimitExceeded
from .oracle import OracleError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(ValueError):
    pass


# cheb


def cmd_cheb(args) -> tuple[dict, int]:
    from .chebyshev import cheb_compose, cheb_gcd, cheb_pair, cheb_product, determinant_check, gcd_check
    from math import gcd

    ns = [args.n] if args.m is None else [args.n, args.m]
    out = {"pairs": [], "checks": []}
    checks = []
    for n in ns:
        pr = cheb_pair(n)
        out["pairs"].append({"n": n, "c": str(pr.c), "d": str(pr.d), "c_coeffs": pr.c.to_text(), "d_coeffs": pr.d.to_text()})
        checks.append(determinant_check(n))
    if args.m is not None:
        checks += [cheb_product(args.n, args.m), cheb_compose(args.n, args.m)]
    if args.gcd:
        if args.m is None:
            raise InputError("--gcd needs two indices")
        if args.n == 0 and args.m == 0:
            raise InputError("gcd(c_0, c_0) is undefined")
        out["gcd"] = {"index": gcd(args.n, args.m), "poly": str(cheb_gcd(args.n, args.m))}
        checks.append(gcd_check(args.n, args.m))
    out["checks"] = [c.to_json() for c in checks]
    out["passed"] = all(c.passed for c in checks)
    return out, EXIT_OK if out["passed"] else EXIT_FAIL


def render_cheb(out: dict) -> str:
    lines = [f"c_{p['n']} = {p['c']}, d_{p['n']} = {p['d']}" for p in out["pairs"]]
    if "gcd" in out:
        g = out["gcd"]
        lines.append(f"gcd = c_{g['index']} = {g['poly']}")
    for c in out["checks"]:
        lines.append(f"  {c['name']}: {'ok' if c['passed'] else 'FAILED'}")
    return "\n".join(lines)


# components


def _presentation(exps):
    from .trace_algebra import GroupPresentation

    try:
        return GroupPresentation(*exps)
    except ValueError as e:
        raise InputError(str(e)) from None


def components_report(p, max_order: int | None = None, check_oracle: bool = False) -> tuple[dict, int]:
    from .classifier import classify_all, compare_with_oracle, intersection_graph

    reports = classify_all(p)
    graph = intersection_graph(p, reports)
    out = {
        "presentation": p.to_json(),
        "components": [r.to_json() for r in reports],
        "graph": graph.to_json(),
    }
    code = EXIT_OK
    if check_oracle:
        bad = compare_with_oracle(p, max_order, reports)
        out["oracle"] = {"max_order": max_order, "discrepancies": [list(map(str, b)) for b in bad]}
        code = EXIT_FAIL if bad else EXIT_OK
    return out, code


def cmd_components(args) -> tuple[dict, int]:
    return components_report(_presentation(args.exponents), args.max_order, args.oracle)


def render_components(out: dict) -> str:
    pr = out["presentation"]
    lines = [f"<a,b | a^{pr['n1']} b^{pr['m1']} a^{pr['n2']} b^{pr['m2']}>  s={pr['s']} t={pr['t']}"]
    lines.append(f"{'comp':>4} {'dim':>6} {'formula':>8} {'gen.irr':>8} {'orbits':>6} {'points':>6}")
    for r in out["components"]:
        gi = r["gen_irr_dim"] if r["gen_irr"] else "-"
        flag = "" if r["formula_agrees"] else "  (formula differs)"
        lines.append(f"{'M' + str(r['id']):>4} {r['dim']:>6} {r['formula_dim']:>8} {gi:>8} {r['orbit_count']:>6} {r['point_count']:>6}{flag}")
    g = out["graph"]
    lines.append("nodes: " + (" ".join(map(str, g["nodes"])) or "none"))
    lines.append("edges: " + (" ".join(f"{a}-{b}" for a, b in g["edges"]) or "none"))
    if "oracle" in out:
        d = out["oracle"]["discrepancies"]
        lines.append("oracle: agrees" if not d else f"oracle: {len(d)} discrepancies")
    return "\n".join(lines)


# integrality


def cmd_integrality(args) -> tuple[dict, int]:
    from .classifier import classify_all
    from .integrality import gamma_presentation, gamma_valuations, m9_points, m10_points, orbit_representatives, weak_integrality

    out = {}
    if args.gamma is not None:
        ell, k = args.gamma
        try:
            p = gamma_presentation(ell, k)
        except ValueError as e:
            raise InputError(str(e)) from None
        conductor = 2 * ell ** (2 * k)
        if args.max_order is not None and conductor > args.max_order:
            raise ResourceLimitExceeded(f"field conductor {conductor} exceeds --max-order {args.max_order}")
        gam = gamma_valuations(ell, k)
        out["gamma"] = {"ell": ell, "k": k, "field_conductor": conductor}
        out["valuations"] = [r.to_json() for r in gam.rows]
        out["orbit_count"] = gam.orbit_count
        out["expected_orbit_count"] = gam.expected_orbit_count
        pts = orbit_representatives(m9_points(p) + m10_points(p))
        out["points"] = [q.to_json() for q in pts if not q.red().is_zero()]
    else:
        if args.exponents is None or len(args.exponents) != 4:
            raise InputError("give n1 m1 n2 m2 or --gamma l k")
        p = _presentation(args.exponents)
    reports = classify_all(p)
    verdict = weak_integrality(p, reports)
    out["presentation"] = p.to_json()
    out["components"] = [
        {"id": r.id, "dim": r.to_json()["dim"], "gen_irr": r.gen_irr, "gen_irr_dim": r.to_json()["gen_irr_dim"]}
        for r in reports
    ]
    if "points" not in out:
        out["points"] = [dict(q.to_json(), component=r.id) for r in reports for q in r.points if q.gen_irr]
    out["verdict"] = verdict.to_json()
    return out, EXIT_OK


def render_integrality(out: dict) -> str:
    v = out["verdict"]
    pr = out["presentation"]
    lines = [f"<a,b | a^{pr['n1']} b^{pr['m1']} a^{pr['n2']} b^{pr['m2']}>"]
    nonempty = [str(c["id"]) for c in out["components"] if c["gen_irr"]]
    lines.append("gen.irr components: " + (" ".join(nonempty) or "none"))
    if "valuations" in out:
        lines.append(f"{'comp':>4} {'order':>6} {'i':>3} {'y':>4} {'slope':>8} {'closed':>8} ok")
        for r in out["valuations"]:
            slope = ",".join(r["newton_slopes"])
            y = ",".join(r["y"]["coeffs"]) if r["y"]["conductor"] == 1 else "alg"
            lines.append(
                f"{'M' + str(r['component']):>4} {r['order_rho_a']:>6} {r['i']:>3} {y:>4} {slope:>8} {r['closed_form']:>8} {'yes' if r['ok'] else 'NO'}"
            )
        lines.append(f"orbits: {out['orbit_count']} (expected {out['expected_orbit_count']})")
    if v["all_primes_fail"]:
        lines.append("weakly integral at no prime: " + v["reason"])
    else:
        fp = v["failing_primes"]
        lines.append("failing primes: {" + ", ".join(map(str, fp)) + "}" if fp else "failing primes: none")
        lines.append("reason: " + v["reason"])
    for u in v["undetermined"]:
        lines.append("undetermined: " + u)
    return "\n".join(lines)


# verify


def cmd_verify(args) -> tuple[dict, int]:
    out = {"seed": args.seed, "suites": {}}
    ran = False
    if args.ideals:
        from .components import verify_decomposition, verify_square_difference_corrected

        rep = verify_decomposition(max_steps=args.max_gb_steps)
        cor = verify_square_difference_corrected()
        out["suites"]["ideals"] = {
            "passed": rep.passed,
            "checks": len(rep.checks),
            "failures": [c.to_json() for c in rep.failures()],
            "corrected_combination": cor.passed,
        }
        ran = True
    if args.cheb is not None:
        from .chebyshev import identity_suite

        res = identity_suite(args.cheb)
        bad = [r for r in res if not r.passed]
        out["suites"]["cheb"] = {"bound": args.cheb, "passed": not bad, "checks": len(res), "failures": [r.name for r in bad]}
        ran = True
    if args.oracle is not None:
        from .oracle import trace_algebra_equivalence

        rep = trace_algebra_equivalence(args.oracle, args.seed)
        out["suites"]["oracle"] = rep.to_json()
        ran = True
    if not ran:
        raise InputError("choose at least one of --ideals, --cheb N, --oracle N")
    out["passed"] = all(s["passed"] for s in out["suites"].values())
    return out, EXIT_OK if out["passed"] else EXIT_FAIL


def render_verify(out: dict) -> str:
    lines = []
    for name, s in sorted(out["suites"].items()):
        n = s.get("checks", s.get("count"))
        lines.append(f"{name}: {'passed' if s['passed'] else 'FAILED'} ({n} checks)")
        for f in s.get("failures", []):
            lines.append(f"  failed: {f['name'] if isinstance(f, dict) and 'name' in f else f}")
        if name == "ideals":
            lines.append(f"  corrected square-difference combination: {'ok' if s['corrected_combination'] else 'FAILED'}")
    lines.append(f"seed {out['seed']}")
    return "\n".join(lines)


# wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--max-order", type=int, default=None, help="bound on root of unity orders")
    common.add_argument("--max-gb-steps", type=int, default=None, help="bound on Buchberger reductions")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    ap = argparse.ArgumentParser(prog="sl2charvar", description="SL2 character varieties of <a,b | a^n1 b^m1 a^n2 b^m2>")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cheb", parents=[common], help="c_n, d_n and their identities")
    c.add_argument("n", type=int)
    c.add_argument("m", type=int, nargs="?")
    c.add_argument("--gcd", action="store_true")
    c.set_defaults(run=cmd_cheb, render=render_cheb)

    c = sub.add_parser("components", parents=[common], help="component report and intersection graph")
    c.add_argument("exponents", type=int, nargs=4, metavar="E")
    c.add_argument("--oracle", action="store_true", help="cross-check against brute-force enumeration")
    c.set_defaults(run=cmd_components, render=render_components)

    c = sub.add_parser("integrality", parents=[common], help="(2,1)-weak integrality verdict")
    c.add_argument("exponents", type=int, nargs="*", metavar="E")
    c.add_argument("--gamma", type=int, nargs=2, metavar=("L", "K"))
    c.set_defaults(run=cmd_integrality, render=render_integrality)

    c = sub.add_parser("verify", parents=[common], help="certificate and identity suites")
    c.add_argument("--ideals", action="store_true")
    c.add_argument("--cheb", type=int, metavar="N")
    c.add_argument("--oracle", type=int, metavar="N")
    c.set_defaults(run=cmd_verify, render=render_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "integrality" and args.gamma is not None and args.exponents:
            raise InputError("give either exponents or --gamma, not both")
        out, code = args.run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimitExceeded, OracleError) as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    if args.json:
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(args.render(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
