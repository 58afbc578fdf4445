"""``chl`` command line: compute objects and run verification suites.

Exit codes: 0 all cases pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from chl import __version__
from chl.coeff import T, RatCoeff
from chl.partitions import Partition, to_text

SUITES = ("methods-agree", "fermion", "gamma-action", "rll", "rtt-abcd", "b-equals-h", "psi", "psi-tilde", "hperp-h", "conifold", "cross-commutation", "triangularity")
OBJECTS = ("coupled-q", "hl-q", "hl-p", "structure-constants", "conifold", "triangularity", "jmath", "hamiltonian")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    target: str
    lam: Partition = Partition()
    mu: Partition = Partition()
    kappa: Partition = Partition()
    theta: Partition = Partition()
    t_numeric: Fraction | None = None
    degree_cap: int | None = None
    m1: int = 1
    m2: int = 1
    n: int = 1
    nmax: int = 2
    order: int = 8
    max_size: int = 6
    index_range: int = 3
    relation: str = "both"
    json: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("m1", "m2", "nmax", "order", "max_size", "index_range"):
            if getattr(self, name) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
        if self.degree_cap is not None and self.degree_cap <= 0:
            raise UsageError("--degree-cap must be positive")
        if self.n < 0:
            raise UsageError("--n must be non-negative")


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"invalid partition {text!r}: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chl", description="Coupled Hall-Littlewood functions and the q-boson lattice.")
    p.add_argument("--version", action="version", version=f"chl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", type=_partition, default=Partition(), help="partition, e.g. 2,1 ('-' for empty)")
        sp.add_argument("--mu", type=_partition, default=Partition())
        sp.add_argument("--kappa", type=_partition, default=Partition())
        sp.add_argument("--theta", type=_partition, default=Partition())
        sp.add_argument("--t-numeric", type=_fraction, default=None, help="evaluate coefficients at s = value (t = s^2)")
        sp.add_argument("--degree-cap", type=int, default=None)
        sp.add_argument("--m1", type=int, default=1)
        sp.add_argument("--m2", type=int, default=1)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--nmax", type=int, default=2)
        sp.add_argument("--order", type=int, default=8)
        sp.add_argument("--max-size", type=int, default=6)
        sp.add_argument("--index-range", type=int, default=3)
        sp.add_argument("--relation", choices=("both", "printed", "derived"), default="both", help="fermion suite: which mixed X+/X- relation to check")
        sp.add_argument("--json", action="store_true")

    c = sub.add_parser("compute", help="compute an object")
    c.add_argument("target", choices=OBJECTS)
    common(c)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=SUITES)
    common(v)
    return p


def _coeff_text(c: RatCoeff, cfg: RunConfig) -> str:
    if cfg.t_numeric is not None:
        return str(c.evaluate(cfg.t_numeric))
    return c.short()


def _elem_payload(elem, cfg: RunConfig):
    if cfg.t_numeric is None:
        text = str(elem)
    else:
        text = " + ".join(f"{_coeff_text(c, cfg)} * [{to_text(k[0])}|{to_text(k[1])}]" for k, c in elem.sorted_terms()) or "0"
    terms = [{"lambda": to_text(k[0]), "mu": to_text(k[1]), "coeff": _coeff_text(c, cfg)} for k, c in elem.sorted_terms()]
    return text, {"basis": elem.basis, "terms": terms, "text": text}


def cmd_compute(cfg: RunConfig) -> tuple[int, str]:
    from chl import coupled, hl

    if cfg.degree_cap is not None:
        import os

        os.environ["CHL_DEGREE_CAP"] = str(cfg.degree_cap)
    t = cfg.target
    if t == "coupled-q":
        text, payload = _elem_payload(coupled.coupled_Q(cfg.lam, cfg.mu), cfg)
    elif t == "hl-q":
        text, payload = _elem_payload(hl.hl_Q(cfg.lam), cfg)
    elif t == "hl-p":
        text, payload = _elem_payload(hl.hl_P(cfg.lam), cfg)
    elif t == "structure-constants":
        sc = coupled.structure_constants(cfg.kappa, cfg.theta, cfg.lam, cfg.mu)
        rows = [{"lambda": to_text(k[0]), "mu": to_text(k[1]), "coeff": _coeff_text(c, cfg)} for k, c in sorted(sc.items())]
        payload = {"terms": rows}
        text = "\n".join(f"[{r['lambda']}|{r['mu']}]: {r['coeff']}" for r in rows)
    elif t == "conifold":
        from chl.conifold import conifold_product

        series = conifold_product(cfg.order, T * T)
        payload = {"series": [{"power": k, "coeff": _coeff_text(c, cfg)} for k, c in enumerate(series.coeffs)]}
        text = "\n".join(f"z^{r['power']}: {r['coeff']}" for r in payload["series"])
    elif t == "triangularity":
        rep = coupled.triangularity_report(cfg.lam, cfg.mu)
        payload = {"leading_one": rep.leading_one, "support_ok": rep.support_ok, "integral": rep.integral, "violations": rep.violations}
        text = json.dumps(payload, sort_keys=True)
    elif t == "jmath":
        from chl.qboson import jmath_matrix

        payload = {"rows": jmath_matrix(cfg.m1, cfg.m2, cfg.n, cfg.n)}
        text = "\n".join(f"{r['occupancy_1']} {r['occupancy_2']} -> [{r['lambda']}|{r['mu']}]" for r in payload["rows"])
    elif t == "hamiltonian":
        from chl.qboson import hamiltonian_block

        states, mat = hamiltonian_block(cfg.m1, cfg.n)
        payload = {"states": [list(s) for s in states], "matrix": [[_coeff_text(c, cfg) for c in row] for row in mat]}
        text = "\n".join(" ".join(_coeff_text(c, cfg) for c in row) for row in mat)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown object {t}")
    if cfg.json:
        doc = {"tool_version": __version__, "object": t, "params": _params(cfg), **payload}
        return 0, json.dumps(doc, sort_keys=True)
    return 0, text


def _params(cfg: RunConfig) -> dict:
    out = {
        "lambda": to_text(cfg.lam), "mu": to_text(cfg.mu), "m1": cfg.m1, "m2": cfg.m2, "n": cfg.n,
        "nmax": cfg.nmax, "order": cfg.order, "max_size": cfg.max_size, "index_range": cfg.index_range,
    }
    if cfg.degree_cap is not None:
        out["degree_cap"] = cfg.degree_cap
    if cfg.target == "fermion":
        out["relation"] = cfg.relation
    return out


def _case(key, ok: bool, witness=None) -> dict:
    out = {"key": key if isinstance(key, str) else " ".join(map(str, key)), "status": "pass" if ok else "fail"}
    if witness is not None and not ok:
        out["witness"] = witness if isinstance(witness, (str, dict, list)) else str(witness)
    return out


def _from_coupled(report) -> list:
    return [_case(k, ok, w) for k, ok, w in report.cases]


def _from_qboson(report) -> list:
    return [dict(c) for c in report.cases]


def run_suite(cfg: RunConfig) -> list:
    from chl import conifold, coupled, qboson

    s = cfg.target
    if s == "methods-agree":
        return _from_coupled(coupled.methods_agree_check(cfg.max_size))
    if s == "fermion":
        rep = coupled.fermion_relations_check(cfg.index_range, cfg.degree_cap or 4, include_printed=cfg.relation != "derived")
        cases = _from_coupled(rep)
        if cfg.relation == "printed":
            cases = [c for c in cases if not c["key"].startswith("mixed ")]
        return cases
    if s == "gamma-action":
        return _from_coupled(coupled.gamma_action_check(min(cfg.max_size, 4), min(cfg.max_size, 4), min(cfg.order, 4)))
    if s == "cross-commutation":
        return _from_coupled(coupled.cross_commutation_check(3, 4, cfg.degree_cap or 4))
    if s == "triangularity":
        return [_case(f"{to_text(l)}|{to_text(m)}", coupled.triangularity_report(l, m).passed) for l, m in coupled.pairs_up_to(cfg.max_size)]
    if s == "rll":
        return _from_qboson(qboson.verify_RLL(cfg.nmax))
    if s == "rtt-abcd":
        cases = []
        for M2 in (None, 0, cfg.m2) if cfg.m2 else (None, 0):
            for c in qboson.verify_RTT_and_ABCD(cfg.m1, M2, cfg.nmax).cases:
                cases.append({**c, "key": f"M2={M2} {c['key']}"})
        return cases
    if s == "b-equals-h":
        cases = []
        for N1 in range(cfg.n + 1):
            for N2 in range(cfg.n + 1):
                for c in qboson.verify_B_equals_H(cfg.m1, cfg.m2, N1, N2).cases:
                    cases.append({**c, "key": f"N=({N1},{N2}) {c['key']}"})
        return cases
    if s == "psi-tilde":
        return [{**c, "key": f"N={N} {c['key']}"} for N in range(cfg.n + 1) for c in qboson.psi_tilde_expansion(N, cfg.m1, cfg.m2).cases]
    if s == "psi":
        cases = []
        for N in range(1, cfg.n + 1):
            cases += [{**c, "key": f"N={N} {c['key']}"} for c in qboson.psi_expansion(N, cfg.m1, cfg.m2).cases]
        cases += qboson.exchange_relation_check(cfg.m1, cfg.nmax).cases
        return cases
    if s == "hperp-h":
        return [{**c, "key": f"M={cfg.m1} {c['key']}"} for c in qboson.verify_Hperp_H_commutation(cfg.m1, cfg.degree_cap or 3).cases]
    if s == "conifold":
        res = conifold.conifold_check(cfg.order)
        return [
            _case("full correlator = Z(z, t^2)", res["full_equals_product"]),
            _case("Gamma^- correlator = lemma product", res["lemma"]),
            _case("t=0 MacMahon", res["macmahon_matches"], res["macmahon"]),
        ]
    raise UsageError(f"unknown suite {s}")  # pragma: no cover


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    cases = sorted(run_suite(cfg), key=lambda c: c["key"])
    ok = all(c["status"] == "pass" for c in cases)
    doc = {"tool_version": __version__, "check": cfg.target, "params": _params(cfg), "status": "pass" if ok else "fail", "cases": cases}
    if cfg.json:
        return (0 if ok else 1), json.dumps(doc, sort_keys=True)
    failed = [c for c in cases if c["status"] == "fail"]
    lines = [f"{cfg.target}: {'pass' if ok else 'FAIL'} ({len(cases) - len(failed)}/{len(cases)} cases)"]
    for c in failed[:10]:
        lines.append(f"  fail {c['key']}: {json.dumps(c.get('witness'), sort_keys=True)}")
    if len(failed) > 10:
        lines.append(f"  ... {len(failed) - 10} more")
    return (0 if ok else 1), "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = RunConfig(
            command=args.command, target=args.target, lam=args.lam, mu=args.mu, kappa=args.kappa, theta=args.theta,
            t_numeric=args.t_numeric, degree_cap=args.degree_cap, m1=args.m1, m2=args.m2, n=args.n, nmax=args.nmax,
            order=args.order, max_size=args.max_size, index_range=args.index_range, relation=args.relation, json=args.json,
        )
        code, out = (cmd_compute if cfg.command == "compute" else cmd_verify)(cfg)
    except UsageError as exc:
        print(f"chl: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:  # cap exceeded, poles at --t-numeric
        print(f"chl: error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
