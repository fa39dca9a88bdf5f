"""Command-line harness: identity registry, verification drivers, report
emission (text or JSON lines), polynomial dumps, and the operator-relation
suites.

Reports are deterministic: identical invocations produce byte-identical JSON.
Exit code 0 means every requested check matched.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from qmm import fourier as fo
from qmm import jackson as ja
from qmm import measures as me
from qmm import mehta as mh
from qmm.hecke import YOps, apply_T
from qmm.laurent import XRing
from qmm.macdonald import (MacdonaldSession, e_via_gram_schmidt,
                           p_via_gram_schmidt)
from qmm.rootsys import build_root_system

F = Fraction

# Every identity id maps to one statement of record (the equation it checks).
REGISTRY: dict[str, str] = {
    "mehta.delta": "<gamma~^-1 Delta> equals |W| prod_{alpha>0, j>=0} (1-q_a^{(r_k,a)+j})/(1-t_a q_a^{(r_k,a)+j})",
    "mehta.mu": "<gamma~^-1 mu> equals prod_{alpha>0, j>=1} (1-q_a^{(r_k,a)+j})/(1-t_a q_a^{(r_k,a)+j})",
    "mehta.mutilde": "<gamma~^-1 mu~> equals q^{(r_k,r_k)} prod_{alpha>0, 1<=j<=k_a} (q_a^{((r_k,a)+1)/2} - q_a^{(1-(r_k,a))/2-j})",
    "consterm": "<mu> equals prod_{alpha>0, i>=1} (1-q_a^{(r_k,a)+i})^2 / ((1-t_a q_a^{(r_k,a)+i})(1-t_a^{-1} q_a^{(r_k,a)+i}))",
    "planch": "<p_b p_c gamma~^-1 Delta> equals q^{(b,b)/2+(c,c)/2-(b+c,r_k)} p_c(q^{b-r_k}) p_b(q^{r_k}) <gamma~^-1 Delta>",
    "planjack": "<p_b(x) p_c(1/x) gamma Delta-circ>_xi equals q^{-(b,b)/2-(c,c)/2+(b+c,r_k)} p_c(q^{b-r_k}) p_b(q^{r_k}) <gamma Delta-circ>_xi",
    "mehjack": "<gamma Delta-circ>_xi equals <gamma>_xi prod_{alpha>0, j>=1} (1-t_a^{-1}q_a^{-(r_k,a)+j})/(1-q_a^{-(r_k,a)+j})",
    "epep": "<eps_b eps_c gamma~^-1 mu> equals q^{(b#,b#)/2+(c#,c#)/2-(r_k,r_k)} eps_c(q^{b#}) <gamma~^-1 mu>",
    "epeps": "<eps_b eps_c* gamma~^-1 mu> equals q^{(b#,b#)/2+(c#,c#)/2-(r_k,r_k)} eps_c*(q^{b#}) <gamma~^-1 mu>",
    "epepl": "<eps_b eps_c* gamma~ mu*> equals q^{-(b#,b#)/2-(c#,c#)/2+(r_k,r_k)} eps_c(q^{b#}) <gamma~ mu*>",
    "epy": "eps_b(Y^-1)(gamma~) equals q^{(b#,b#)/2-(r_k,r_k)/2} eps_b gamma~",
    "epys": "eps_b^iota(Y)(gamma~) equals q^{(b#,b#)/2-(r_k,r_k)/2} eps_b* gamma~",
    "epyl": "eps_b^iota(Y)(gamma~^-1) equals q^{-(b#,b#)/2+(r_k,r_k)/2} eps_b gamma~^-1",
    "gausseq": "b_j(gamma~^{+-1}) equals q^{-+(b_j,b_j)/2} x_j^{+-1} gamma~^{+-1}",
    "kernel.sym": "the kernel sums eps_a (x) eps_a* and eps_a* (x) eps_a agree (symmetry of E_q)",
    "kernel.yelet": "Y^x_b(E) = lambda_b^{-1} E and T_i^x(E) = T_i^lambda(E) on the assembled kernel",
    "kernel.spec": "P(x, q^{c-r_k}) <gamma>_{r_k} reproduces p_c(x)/p_c(q^{r_k}) times the hatmu product",
    "gp.shift": "G_v(p_b^{(k)}) = g_v^{(k)}(b) p_{b+r_v}^{(k+v)} when t_nu = 1 off v",
    "keylemma": "<p'* mu~' gamma~> = q^{(r_k,r_k)/2-(r_{k+v},r_{k+v})/2} (d_{k+v}/d_k) prod (q_a^{(b-r_k,a)/2} - q_a^{(r_k-b,a)/2+k_a}) <p* mu~ gamma~>",
    "eejack": "<eps_b eps_c* gamma mu-circ>_xi equals q^{-(b#,b#)/2-(c#,c#)/2+(r_k,r_k)} eps_c(q^{b#}) <gamma mu-circ>_xi",
    "memujack": "<gamma mu-circ>_xi equals |W|^{-1} <gamma>_xi prod_{alpha>0, j>=0} (1-t_a^{-1}q_a^{-(r_k,a)+j})/(1-q_a^{-(r_k,a)+j})",
    "hatjack": "<eps_b eps_c* gamma mu^>_{-r_k} equals q^{-(b#,b#)/2-(c#,c#)/2+(r_k,r_k)} eps_c(q^{b#}) <gamma mu^>_{-r_k}",
    "hatmu": "<gamma mu^>_{-r_k} equals |W|^{-1} <gamma>_{-r_k} prod_{alpha>0, j>=1} (1-q_a^{(r_k,a)+j})/(1-t_a^{-1}q_a^{(r_k,a)+j})",
    "ebc": "E_q(q^{b#}, q^{c#}) <gamma>_{r_k}^2 equals eps_c(q^{b#}) |W| <gamma mu^>_{-r_k}",
    "hatmux": "E_q(x, q^{c#}) <gamma>_{r_k} equals eps_c(x) times the hatmu product",
    "norm.muhat": "mu^(q^{b#}) equals <eps_b, eps_b>_1^{-1}",
    "duality": "eps_b(q^{c#}) equals eps_c(q^{b#})",
    "value": "p_b(q^{r_k}) equals q^{(r_k,b)} prod_{alpha>0} prod_{j=1}^{-(alpha,b)} (1-t_a q_a^{(r_k,a)+j-1})/(1-q_a^{(r_k,a)+j-1})",
}


class _Ctx:
    """Lazily built per-invocation sessions."""

    def __init__(self, args) -> None:
        self.args = args
        self.rs = build_root_system(args.type, args.rank)
        self.xr = XRing(self.rs)
        self.ms = MacdonaldSession(self.xr)
        self._msz = None
        if args.k is not None:
            self.kmap = [int(x) for x in str(args.k).split(",")]
            if len(self.kmap) != len(self.rs.nus_present):
                raise SystemExit(
                    f"--k needs {len(self.rs.nus_present)} comma-separated values "
                    f"(per root length, long first)")
        else:
            self.kmap = None
        self.N = F(args.order)
        self.R = F(args.window) if args.window is not None else self.N

    @property
    def msz(self) -> MacdonaldSession:
        if self._msz is None:
            self._msz = MacdonaldSession(XRing(self.rs, nz=self.rs.n))
        return self._msz

    def require_k(self) -> list[int]:
        if self.kmap is None:
            raise SystemExit("this identity needs --k (integer parameters)")
        return self.kmap

    def small_antidominant(self, max_norm: int = 2) -> list:
        return [b for b in self.rs.ball(max_norm) if all(x <= 0 for x in b)]

    def small_ball(self, max_norm: int = 2) -> list:
        return self.rs.ball(max_norm)


def _report(ctx: _Ctx, identity: str, res: dict, t0: float, **extra) -> dict:
    out = {
        "identity": identity,
        "type": ctx.args.type,
        "rank": ctx.args.rank,
        "mode": ("generic-t" if ctx.kmap is None else f"k={','.join(map(str, ctx.kmap))}"),
        "order": str(ctx.N),
        "window": str(ctx.R),
        "match": bool(res.get("match")),
        "lhs": str(res.get("lhs", ""))[:400],
        "rhs": str(res.get("rhs", ""))[:400],
        "first_mismatch": str(res.get("first_mismatch", "None")),
        "wall_time": round(time.time() - t0, 3),
    }
    out.update({k: str(v) for k, v in extra.items()})
    return out


# -- runners ------------------------------------------------------------------------


def run_mehta(ctx: _Ctx, which: str) -> list[dict]:
    t0 = time.time()
    xr = ctx.xr
    out = []
    if which == "mutilde":
        kmap = ctx.require_k()
        lhs = me.mu_tilde(xr, kmap).gauss_pair(+1)
        rhs = me.product_closed_int(xr, "tmuga", kmap)
        res = {"match": lhs == rhs, "lhs": lhs, "rhs": rhs}
        out.append(_report(ctx, "mehta.mutilde", res, t0))
        t0 = time.time()
        chain = mh.chain_check(ctx.ms, kmap)
        out.append(_report(ctx, "mehta.mutilde/chain", chain, t0))
        return out
    if ctx.kmap is not None:
        kmap = ctx.kmap
        poly = me.mu_poly(xr, kmap) if which == "mu" else me.delta_poly(xr, kmap)
        lhs = poly.gauss_pair(+1)
        rhs = me.product_closed_int(xr, "mehtamu" if which == "mu" else "mehta", kmap)
        res = {"match": lhs == rhs, "lhs": lhs, "rhs": rhs}
    else:
        if which == "mu":
            lhs = me.pair_gauss_mu(xr, xr.one, ctx.N)
            rhs = me.product_series(xr, "mehtamu", ctx.N)
        else:
            lhs = me.pair_gauss_delta(xr, xr.one, ctx.N)
            rhs = me.product_series(xr, "mehta", ctx.N)
        res = {"match": lhs.first_mismatch(rhs) is None, "lhs": lhs, "rhs": rhs,
               "first_mismatch": lhs.first_mismatch(rhs)}
    out.append(_report(ctx, f"mehta.{which}", res, t0))
    t0 = time.time()
    lim = me.mehta_limit_k0(xr, "mehta" if which == "delta" else "mehtamu")
    limval = lim if which == "delta" else lim
    res2 = {"match": limval == xr.sc.one, "lhs": limval, "rhs": xr.sc.one}
    out.append(_report(ctx, f"mehta.{which}/limit-k0", res2, t0))
    return out


def run_consterm(ctx: _Ctx) -> list[dict]:
    t0 = time.time()
    lhs = me.mu_const_term(ctx.xr, ctx.N)
    rhs = me.product_series(ctx.xr, "consterm", ctx.N)
    m = lhs.first_mismatch(rhs)
    return [_report(ctx, "consterm",
                    {"match": m is None, "lhs": lhs, "rhs": rhs, "first_mismatch": m}, t0)]


def run_planch(ctx: _Ctx) -> list[dict]:
    out = []
    for b in ctx.small_antidominant():
        for c in ctx.small_antidominant():
            t0 = time.time()
            res = fo.verify_planch(ctx.ms, b, c, ctx.N)
            out.append(_report(ctx, "planch", res, t0, b=list(b), c=list(c)))
    return out


def run_epep(ctx: _Ctx, variant: str) -> list[dict]:
    out = []
    for b in ctx.small_ball():
        for c in ctx.small_ball():
            t0 = time.time()
            res = fo.verify_epep(ctx.ms, variant, b, c, ctx.N)
            out.append(_report(ctx, variant, res, t0, b=list(b), c=list(c)))
    return out


def run_epy(ctx: _Ctx, variant: str) -> list[dict]:
    out = []
    for b in ctx.small_ball():
        t0 = time.time()
        res = fo.verify_epy_exact(ctx.ms, variant, b)
        out.append(_report(ctx, f"{variant}/exact", res, t0, b=list(b)))
        t0 = time.time()
        res = fo.verify_epy_windowed(ctx.ms, variant, b, ctx.N)
        out.append(_report(ctx, f"{variant}/windowed", res, t0, b=list(b),
                           window=res.get("window")))
    return out


def run_gausseq(ctx: _Ctx) -> list[dict]:
    t0 = time.time()
    res = fo.verify_gausseq(ctx.xr, ctx.R)
    return [_report(ctx, "gausseq", res, t0)]


def run_kernel(ctx: _Ctx, which: str) -> list[dict]:
    out = []
    if which == "sym":
        t0 = time.time()
        res = fo.verify_kernel_symmetry(ctx.ms, min(ctx.R, 2))
        out.append(_report(ctx, "kernel.sym", res, t0))
    elif which == "yelet":
        for b in [ctx.rs.fundamental_coweight(i) for i in range(ctx.rs.n)]:
            t0 = time.time()
            res = fo.verify_kernel_yelet(ctx.ms, b, min(ctx.N, 4))
            out.append(_report(ctx, "kernel.yelet", res, t0, b=list(b)))
    elif which == "spec":
        for c in ctx.small_antidominant(1):
            t0 = time.time()
            res = fo.verify_sym_kernel_spec(ctx.ms, c, min(ctx.N, 6))
            out.append(_report(ctx, "kernel.spec", res, t0, c=list(c)))
        t0 = time.time()
        res = fo.verify_sym_kernel(ctx.ms, 2, min(ctx.N, 3))
        out.append(_report(ctx, "kernel.spec/invariance", res, t0))
    return out


def run_gp(ctx: _Ctx) -> list[dict]:
    kmap = ctx.kmap if ctx.kmap is not None else [1] * len(ctx.rs.nus_present)
    out = []
    full = list(ctx.rs.nus_present)
    for b in ctx.small_antidominant(4):
        t0 = time.time()
        res = mh.gp_check(ctx.ms, full, kmap, b)
        out.append(_report(ctx, "gp.shift", res, t0, b=list(b)))
    return out


def run_keylemma(ctx: _Ctx) -> list[dict]:
    kmap = ctx.kmap if ctx.kmap is not None else [1] * len(ctx.rs.nus_present)
    out = []
    full = list(ctx.rs.nus_present)
    rv = mh.r_v(ctx.xr, full)
    for b in ctx.small_antidominant(4):
        tgt = tuple(a + c for a, c in zip(b, rv))
        if any(x > 0 for x in tgt):
            continue
        t0 = time.time()
        res = mh.key_lemma_check(ctx.ms, full, kmap, b)
        out.append(_report(ctx, "keylemma", res, t0, b=list(b)))
    t0 = time.time()
    res = mh.chain_check(ctx.ms, kmap)
    out.append(_report(ctx, "keylemma/chain", res, t0))
    return out


def run_jackson(ctx: _Ctx, which: str) -> list[dict]:
    out = []
    N = ctx.N
    if which == "hatmu":
        t0 = time.time()
        out.append(_report(ctx, "hatmu", ja.verify_hatmu(ctx.ms, N), t0))
    elif which == "hatjack":
        for b in ctx.small_ball(1):
            for c in ctx.small_ball(1):
                t0 = time.time()
                res = ja.verify_hatjack(ctx.ms, b, c, N)
                out.append(_report(ctx, "hatjack", res, t0, b=list(b), c=list(c)))
    elif which == "eejack":
        for b in ctx.small_ball(1):
            for c in ctx.small_ball(1):
                t0 = time.time()
                res = ja.verify_eejack(ctx.msz, b, c, min(N, 8))
                out.append(_report(ctx, "eejack", res, t0, b=list(b), c=list(c)))
    elif which == "memujack":
        t0 = time.time()
        out.append(_report(ctx, "memujack", ja.verify_memujack(ctx.msz, min(N, 8)), t0))
    elif which == "planjack":
        for b in ctx.small_antidominant(1):
            for c in ctx.small_antidominant(1):
                t0 = time.time()
                res = ja.verify_planjack(ctx.msz, b, c, min(N, 8))
                out.append(_report(ctx, "planjack", res, t0, b=list(b), c=list(c)))
    elif which == "mehjack":
        t0 = time.time()
        ctxf = ja.JacksonContext(ctx.msz, "formal")
        lhs = ja.jackson_sum(ctxf, [], "deltacirc", min(N, 8), w_average=False)
        rhs = ja.gamma_series(ctxf, min(N, 8)) * me.product_series(ctx.msz.xr, "mehjack", min(N, 8))
        m = lhs.first_mismatch(rhs)
        out.append(_report(ctx, "mehjack",
                           {"match": m is None, "lhs": lhs, "rhs": rhs,
                            "first_mismatch": m}, t0))
    elif which == "ebc":
        for b in ctx.small_ball(1):
            for c in ctx.small_ball(1):
                t0 = time.time()
                res = ja.verify_ebc(ctx.ms, b, c, min(N, 6))
                out.append(_report(ctx, "ebc", res, t0, b=list(b), c=list(c)))
    elif which == "hatmux":
        for c in ctx.small_ball(1):
            t0 = time.time()
            res = fo.verify_hatmux(ctx.ms, c, min(N, 8))
            out.append(_report(ctx, "hatmux", res, t0, c=list(c)))
    return out


def run_norm(ctx: _Ctx) -> list[dict]:
    out = []
    for b in ctx.rs.ball(4):
        t0 = time.time()
        res = ja.verify_norm_identity(ctx.ms, b, ctx.N)
        out.append(_report(ctx, "norm.muhat", res, t0, b=list(b)))
    return out


def run_duality(ctx: _Ctx) -> list[dict]:
    out = []
    for b in ctx.small_ball(4):
        for c in ctx.small_ball(4):
            t0 = time.time()
            ok, lhs, rhs = ctx.ms.duality_check(b, c)
            out.append(_report(ctx, "duality",
                               {"match": ok, "lhs": lhs, "rhs": rhs}, t0,
                               b=list(b), c=list(c)))
    return out


def run_value(ctx: _Ctx) -> list[dict]:
    out = []
    for b in ctx.small_antidominant(8):
        t0 = time.time()
        lhs = ctx.ms.p_at_rk(b)
        rhs = ctx.ms.evaluation_formula(b)
        out.append(_report(ctx, "value", {"match": lhs == rhs, "lhs": lhs, "rhs": rhs},
                           t0, b=list(b)))
    return out


RUNNERS = {
    "mehta.delta": lambda ctx: run_mehta(ctx, "delta"),
    "mehta.mu": lambda ctx: run_mehta(ctx, "mu"),
    "mehta.mutilde": lambda ctx: run_mehta(ctx, "mutilde"),
    "consterm": run_consterm,
    "planch": run_planch,
    "planjack": lambda ctx: run_jackson(ctx, "planjack"),
    "mehjack": lambda ctx: run_jackson(ctx, "mehjack"),
    "epep": lambda ctx: run_epep(ctx, "epep"),
    "epeps": lambda ctx: run_epep(ctx, "epeps"),
    "epepl": lambda ctx: run_epep(ctx, "epepl"),
    "epy": lambda ctx: run_epy(ctx, "epy"),
    "epys": lambda ctx: run_epy(ctx, "epys"),
    "epyl": lambda ctx: run_epy(ctx, "epyl"),
    "gausseq": run_gausseq,
    "kernel.sym": lambda ctx: run_kernel(ctx, "sym"),
    "kernel.yelet": lambda ctx: run_kernel(ctx, "yelet"),
    "kernel.spec": lambda ctx: run_kernel(ctx, "spec"),
    "gp.shift": run_gp,
    "keylemma": run_keylemma,
    "eejack": lambda ctx: run_jackson(ctx, "eejack"),
    "memujack": lambda ctx: run_jackson(ctx, "memujack"),
    "hatjack": lambda ctx: run_jackson(ctx, "hatjack"),
    "hatmu": lambda ctx: run_jackson(ctx, "hatmu"),
    "ebc": lambda ctx: run_jackson(ctx, "ebc"),
    "hatmux": lambda ctx: run_jackson(ctx, "hatmux"),
    "norm.muhat": run_norm,
    "duality": run_duality,
    "value": run_value,
}

assert set(RUNNERS) == set(REGISTRY)


def _emit(reports: list[dict], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        for r in reports:
            stream.write(json.dumps(r, sort_keys=True) + "\n")
    else:
        for r in reports:
            flag = "ok " if r["match"] else "FAIL"
            extras = " ".join(f"{k}={r[k]}" for k in ("b", "c") if k in r)
            stream.write(f"[{flag}] {r['identity']:22s} {r['type']}{r['rank']} "
                         f"{r['mode']:12s} N={r['order']:><4s} {extras} "
                         f"({r['wall_time']}s)\n")


def _apply_config(args, parser) -> None:
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, val = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if hasattr(args, key) and parser.get_default(key) == getattr(args, key):
                cast = type(parser.get_default(key))
                setattr(args, key, val if parser.get_default(key) is None else cast(val))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", default="A", choices=list("ABCDEFG"))
        sp.add_argument("--rank", type=int, default=1)
        sp.add_argument("--k", default=None,
                        help="comma map of integer k per root length (long first)")
        sp.add_argument("--generic-t", action="store_true", dest="generic_t")
        sp.add_argument("--order", type=int, default=8, metavar="N")
        sp.add_argument("--window", type=int, default=None, metavar="R")
        sp.add_argument("--xi", default="formal", choices=["formal", "minus-rk"])
        sp.add_argument("--format", default="text", choices=["text", "json"])
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--config", default=None)

    v = sub.add_parser("verify", help="verify one identity or 'all'")
    v.add_argument("identity")
    common(v)

    pol = sub.add_parser("poly", help="print e/eps/p for a given index")
    pol.add_argument("flavor", choices=["e", "eps", "p"])
    pol.add_argument("--b", required=True, help="comma-separated coordinates in the b-basis")
    common(pol)

    op = sub.add_parser("op-check", help="operator relation suites")
    op.add_argument("suite", choices=["braid", "commute", "cross"])
    op.add_argument("--ball", type=int, default=8)
    common(op)

    ker = sub.add_parser("kernel", help="kernel construction and checks")
    ker.add_argument("--base", default="q", choices=["q", "qinv"])
    ker.add_argument("--shells", type=int, default=2)
    ker.add_argument("--check", default="sym", choices=["sym", "yelet", "spec", "dump"])
    common(ker)

    rsd = sub.add_parser("root-system", help="dump root-system data as JSON")
    common(rsd)

    return p


def cmd_verify(args) -> int:
    if args.identity != "all" and args.identity not in REGISTRY:
        sys.stderr.write(f"unknown identity {args.identity!r}; known: "
                         f"{', '.join(sorted(REGISTRY))}\n")
        return 2
    if args.k is None and not args.generic_t:
        args.k = ",".join(["1"] * len(build_root_system(args.type, args.rank).nus_present))
    if args.generic_t:
        args.k = None
    ids = sorted(REGISTRY) if args.identity == "all" else [args.identity]
    needs_int_k = {"mehta.mutilde", "gp.shift", "keylemma"}
    reports: list[dict] = []

    def run_one(name: str) -> list[dict]:
        ctx = _Ctx(args)
        if name in needs_int_k and ctx.kmap is None:
            ctx.kmap = [1] * len(ctx.rs.nus_present)
        return RUNNERS[name](ctx)

    if args.jobs > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            for res in ex.map(run_one, ids):
                reports.extend(res)
    else:
        for name in ids:
            reports.extend(run_one(name))
    _emit(reports, args.format)
    return 0 if all(r["match"] for r in reports) else 1


def cmd_poly(args) -> int:
    ctx = _Ctx(args)
    b = tuple(int(x) for x in args.b.split(","))
    if args.flavor == "e":
        poly = ctx.ms.e_poly(b)
    elif args.flavor == "eps":
        poly = ctx.ms.epsilon_poly(b)
    else:
        poly = ctx.ms.p_poly(b)
    doc = {"flavor": args.flavor, "b": list(b), "terms": poly.to_json()}
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"{args.flavor}_{list(b)} over {args.type}{args.rank}:")
        print(" ", poly)
    return 0


def cmd_opcheck(args) -> int:
    ctx = _Ctx(args)
    xr = ctx.xr
    rs = ctx.rs
    ball = [xr.x(w) for w in rs.ball(args.ball)]
    ok = True
    if args.suite == "braid":
        for i in range(rs.n + 1):
            for j in range(i + 1, rs.n + 1):
                m = _coxeter_entry(rs, i, j)
                if m is None:
                    continue
                seq1 = ([i, j] * m)[:m]
                seq2 = ([j, i] * m)[:m]
                for f in ball:
                    g1, g2 = f, f
                    for s in reversed(seq1):
                        g1 = apply_T(xr, s, g1)
                    for s in reversed(seq2):
                        g2 = apply_T(xr, s, g2)
                    if g1 != g2:
                        ok = False
    elif args.suite == "commute":
        Y = ctx.ms.Y
        for f in ball:
            for i in range(rs.n):
                for j in range(i + 1, rs.n):
                    if Y.apply_Yi(i, Y.apply_Yi(j, f)) != Y.apply_Yi(j, Y.apply_Yi(i, f)):
                        ok = False
    else:
        Y = ctx.ms.Y
        for f in ball:
            for i in range(1, rs.n + 1):
                for b in rs.ball(2):
                    pair = rs.simple_roots[i - 1].pair_weight(b)
                    if pair == 0:
                        lhs = apply_T(xr, i, Y.apply_Y(b, f))
                        rhs = Y.apply_Y(b, apply_T(xr, i, f))
                        if lhs != rhs:
                            ok = False
                    elif pair == 1:
                        lhs = apply_T(xr, i, Y.apply_Y(b, apply_T(xr, i, f, inverse=True)),
                                      inverse=True)
                        ai = rs.simple_roots[i - 1].a
                        rhs = Y.apply_Y(tuple(x - y for x, y in zip(b, ai)), f)
                        if lhs != rhs:
                            ok = False
    print(f"[{'ok ' if ok else 'FAIL'}] op-check {args.suite} on {args.type}{args.rank}, "
          f"ball {args.ball}")
    return 0 if ok else 1


def _coxeter_entry(rs, i: int, j: int) -> int | None:
    """Coxeter matrix entry for affine nodes from 4 cos^2(pi/m); None = infinity."""
    ri = rs.simple_aff_root(i)[0]
    rj = rs.simple_aff_root(j)[0]
    s = ri.nu * rj.nu / 4 * rs.pair_wt_wt(ri.a, rj.a)
    prod = 4 * s * s / (ri.nu * rj.nu)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(int(prod) if prod.denominator == 1 else -1, None)


def cmd_kernel(args) -> int:
    ctx = _Ctx(args)
    if args.check == "dump":
        ker = fo.KernelSeries(ctx.ms, args.base == "qinv", "symmetric", args.shells)
        doc = [{"x": list(cx), "lambda": list(dl), "coeff": str(v)}
               for (cx, dl), v in sorted(ker.assemble().items())]
        print(json.dumps(doc, sort_keys=True))
        return 0
    reports = run_kernel(ctx, args.check)
    _emit(reports, args.format)
    return 0 if all(r["match"] for r in reports) else 1


def cmd_root_system(args) -> int:
    rs = build_root_system(args.type, args.rank)
    print(json.dumps(rs.describe(), sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, parser)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "poly":
        return cmd_poly(args)
    if args.command == "op-check":
        return cmd_opcheck(args)
    if args.command == "kernel":
        return cmd_kernel(args)
    if args.command == "root-system":
        return cmd_root_system(args)
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
