"""Named verification suites and the model factory shared with the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from .cartan import GCM, ParamFamily, builtin_gcm
from .arith.poly import PolyRing
from .core import closure, conjugation, crosscheck, decomposition, forms, relations
from .core.generators import edge_generators, symbolic_vertex_params, vertex_generators
from .core.reports import ERROR, VerificationReport
from .kacmoody.engine import KMModel
from .lie import BudgetExceeded
from .matrices import affine_chevalley, chevalley

HEIGHT_ENV = "ELECTRICAL_LIE_HEIGHT"
MATRIX_FAMILIES = ("A", "B", "C", "D")


def default_height() -> int:
    return int(os.environ.get(HEIGHT_ENV, "12"))


def resolve_backend(family: str | None, backend: str = "auto") -> str:
    """``auto`` is the matrix model for A/B/C/D and affine A, the KM engine otherwise."""
    if backend != "auto":
        return backend
    if family and family.upper() in MATRIX_FAMILIES + ("AFFINE_A",):
        return "matrix"
    return "km"


def make_model(family: str | None = None, rank: int | None = None, gcm: GCM | None = None, backend: str = "auto", height: int | None = None, p=None, q=None):
    """A Lie model for a named family or an explicit GCM."""
    be = resolve_backend(family if gcm is None else None, backend)
    if be == "matrix":
        if family is None:
            raise ValueError("the matrix backend needs a named family")
        fam = family.upper()
        if fam == "AFFINE_A":
            return affine_chevalley(rank).model
        return chevalley(fam, rank).model
    if be != "km":
        raise ValueError(f"unknown backend {backend!r}")
    if gcm is None:
        gcm = builtin_gcm(family, rank, p=p, q=q)
    return KMModel(gcm, height or default_height())


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    height: int | None = None


@dataclass(frozen=True)
class Suite:
    name: str
    ref: str  # quote anchor of the identity the suite exercises
    description: str
    runner: Callable[[SuiteConfig], list]


def _guard(title: str, fn, retitle: bool = False) -> VerificationReport:
    """Run ``fn``; an exhausted budget or refused input becomes an error record."""
    try:
        report = fn()
        if retitle:
            report.title = title
        return report
    except (BudgetExceeded, ValueError) as exc:
        r = VerificationReport(title)
        r.add(title, "budget / input", ERROR, None, message=f"{type(exc).__name__}: {exc}")
        return r


def _vertex(model):
    ring, a = symbolic_vertex_params(model.gcm)
    return vertex_generators(model, a, ring)


VERTEX_SERRE_CASES = (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4),
    ("G", 2), ("RANK2", (1, 2)), ("RANK2", (1, 3)), ("RANK2", (2, 2)),
)


def _case_model(family, rank, cfg: SuiteConfig):
    if family == "RANK2":
        p, q = rank
        return make_model("RANK2", gcm=builtin_gcm("RANK2", p=p, q=q), height=cfg.height or 10)
    return make_model(family, rank, height=cfg.height)


def run_thm1_2(cfg: SuiteConfig) -> list:
    out = []
    for family, rank in VERTEX_SERRE_CASES:
        def go(family=family, rank=rank):
            fam = _vertex(_case_model(family, rank, cfg))
            r = relations.verify_vertex_serre(fam)
            r.extend(relations.top_component_check(fam), prefix="top ")
            return r
        out.append(_guard(f"vertex relations {family}{rank}", go))
    return out


FLAT_VERTEX = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4), ("G", 2))


def _degenerate_chain(k: int):
    """``sl_5`` chain with ``b = (b_1, 0, b_3)``, rooted at ``k``."""
    model = chevalley("A", 4).model
    ring = PolyRing(["b1", "b3"])
    b = ParamFamily("edge", {(1, 2): ring.gen("b1"), (2, 3): 0, (3, 4): ring.gen("b3")})
    return edge_generators("TYPE_A_ROOT", model, b, ring, k=k)


def run_thm1_3(cfg: SuiteConfig) -> list:
    out = []
    for family, rank in FLAT_VERTEX:
        out.append(_guard(f"vertex flatness {family}{rank}", lambda f=family, r=rank: closure.flatness_check(_vertex(_case_model(f, r, cfg)), seed=cfg.seed)))
    for n in range(2, 6):
        model = chevalley("A", n - 1).model
        for k in model.gcm.labels:
            out.append(_guard(f"edge flatness TYPE_A_ROOT sl{n} k={k}", lambda m=model, k=k: closure.flatness_check(edge_generators("TYPE_A_ROOT", m, k=k), seed=cfg.seed)))
    for kind, family, rank in (("B_CHAIN", "B", 2), ("B_CHAIN", "B", 3), ("C_CHAIN", "C", 2), ("C_CHAIN", "C", 3), ("D_BRANCH", "D", 4)):
        out.append(_guard(f"edge flatness {kind} {family}{rank}", lambda kd=kind, f=family, r=rank: closure.flatness_check(edge_generators(kd, chevalley(f, r).model), seed=cfg.seed)))
    out.append(_guard("edge flatness AFFINE_A n=3", lambda: closure.flatness_check(edge_generators("AFFINE_A", affine_chevalley(3).model), seed=cfg.seed)))
    for k in (1, 2, 3, 4):
        out.append(_guard(f"edge flatness degenerate (b1,0,b3) k={k}", lambda k=k: closure.flatness_check(_degenerate_chain(k), seed=cfg.seed), retitle=True))
    return out


def run_thm1_4(cfg: SuiteConfig) -> list:
    out = [_guard(f"chain conjugation sl{n}", lambda n=n: conjugation.conjugation_check("THM_1_4", n)) for n in range(2, 6)]
    out += [_guard(f"vertex/edge bridge sl{n}", lambda n=n: conjugation.vertex_edge_bridge(n)) for n in range(2, 5)]
    return out


def run_thm1_5(cfg: SuiteConfig) -> list:
    out = []
    for n in range(3, 6):
        model = chevalley("A", n - 1).model
        for k in model.gcm.labels:
            out.append(_guard(f"TYPE_A_ROOT sl{n} k={k}", lambda m=model, k=k: relations.verify_edge_relations(edge_generators("TYPE_A_ROOT", m, k=k))))
    for k in (1, 2, 3, 4):
        out.append(_guard(f"degenerate (b1,0,b3) k={k}", lambda k=k: relations.verify_edge_relations(_degenerate_chain(k)), retitle=True))
    return out


def omega6_display_check() -> VerificationReport:
    """Entry-by-entry comparison of the ``n = 6`` Gram matrix with its displayed form."""
    ring = forms.chain_ring(6)
    b1, b2, b3, b4 = (ring.gen(f"b{i}") for i in range(1, 5))
    one = ring.const(1)
    upper = {(0, 1): b1 * b2 * b3 * b4, (1, 2): -(b2 * b3 * b4), (2, 3): b3 * b4, (3, 4): -b4, (4, 5): one}
    shown = [[0] * 6 for _ in range(6)]
    for (r, c), v in upper.items():
        shown[r][c] = v
        shown[c][r] = -v
    omega = forms.omega_form(6, ring=ring)
    report = VerificationReport("displayed Gram matrix for n=6")
    report.budgets["omega"] = [[str(x) for x in row] for row in omega.rows()]
    report.check_equal("Omega_6", "displayed Gram matrix Omega_6", omega, omega.model.matrix(shown))
    return report


def run_thm1_6(cfg: SuiteConfig) -> list:
    out = [_guard("Omega_6 display", omega6_display_check)]
    out += [_guard(f"form invariance n={n}", lambda n=n: forms.form_invariance_check(n)) for n in range(2, 7)]
    out += [_guard(f"sp identification n={n}", lambda n=n: forms.sp_identification_check(n, seed=cfg.seed)) for n in (2, 4, 6)]
    return out


def _edge_case(kind, family, rank, **opts):
    return lambda: relations.verify_edge_relations(edge_generators(kind, chevalley(family, rank).model, **opts))


def run_thm1_7a(cfg: SuiteConfig) -> list:
    return [_guard(f"B_CHAIN B{n}", _edge_case("B_CHAIN", "B", n)) for n in (2, 3, 4)]


def run_thm1_7b(cfg: SuiteConfig) -> list:
    return [_guard(f"C_CHAIN C{n}", _edge_case("C_CHAIN", "C", n)) for n in (2, 3, 4)]


RANK2_EDGE_CASES = ((1, 2), (1, 3), (2, 2), (2, 3), (1, 4))


def run_thm1_8a(cfg: SuiteConfig) -> list:
    out = []
    for p, q in RANK2_EDGE_CASES:
        def go(p=p, q=q):
            model = KMModel(builtin_gcm("RANK2", p=p, q=q), cfg.height or 10)
            return relations.verify_edge_relations(edge_generators("RANK2", model))
        out.append(_guard(f"RANK2({p},{q})", go))
    return out


def run_thm1_8b(cfg: SuiteConfig) -> list:
    return [_guard(f"D_BRANCH D{n}", _edge_case("D_BRANCH", "D", n)) for n in (4, 5)]


def run_thm1_8c(cfg: SuiteConfig) -> list:
    out = []
    for n in (3, 4):
        out.append(_guard(f"AFFINE_A n={n}", lambda n=n: relations.verify_edge_relations(edge_generators("AFFINE_A", affine_chevalley(n).model))))
    return out


def run_thm1_9(cfg: SuiteConfig) -> list:
    out = [_guard(f"sp_{2 * n} splitting", lambda n=n: decomposition.sp_decomposition_check(n, seed=cfg.seed)) for n in (2, 3, 4)]
    out.append(_guard("sp_6 worked example", decomposition.sp6_example_check))
    return out


def run_ex1_10(cfg: SuiteConfig) -> list:
    return [
        _guard("g' conjugation", lambda: conjugation.conjugation_check("EX_1_10_PRIME")),
        _guard("g'' conjugation", lambda: conjugation.conjugation_check("EX_1_10_DPRIME")),
    ]


def _km(family, rank, cfg):
    return KMModel(builtin_gcm(family, rank), cfg.height or default_height())


def run_sec2_conical(cfg: SuiteConfig) -> list:
    cases = (("D", 4, 2), ("A", 4, 2), ("A", 4, 3))
    return [_guard(f"conical {f}{r} root {root}", lambda f=f, r=r, root=root: conjugation.conjugation_check("CONICAL", model=_km(f, r, cfg), root=root)) for f, r, root in cases]


def run_sec2_star(cfg: SuiteConfig) -> list:
    return [_guard("star D4 root 2", lambda: conjugation.conjugation_check("STAR", model=_km("D", 4, cfg), root=2))]


def run_sec2_peacock(cfg: SuiteConfig) -> list:
    cases = (("C", 3, 2, (3,)), ("D", 4, 2, (4,)), ("D", 4, 2, (3, 4)))
    return [
        _guard(f"peacock {f}{r} root {root} J+={list(J)}", lambda f=f, r=r, root=root, J=J: conjugation.conjugation_check("PEACOCK", model=_km(f, r, cfg), root=root, J_plus=J))
        for f, r, root, J in cases
    ]


STAR3 = GCM.from_rows([[2, -1, -1], [-1, 2, 0], [-1, 0, 2]], name="fan r=1 d=2")


def run_sec2_min_cartan(cfg: SuiteConfig) -> list:
    cases = (
        ("B2 chain", builtin_gcm("RANK2", p=1, q=2), 2, False),
        ("A3 chain", builtin_gcm("A", 3), 3, False),
        ("A4 chain", builtin_gcm("A", 4), 4, False),
        ("fan r=1 d=2", STAR3, 1, False),
        ("D4 fan r=2 d=2", builtin_gcm("D", 4), 2, False),
        ("A3 chain, injective", builtin_gcm("A", 3), 3, True),
        ("B2 chain, injective", builtin_gcm("RANK2", p=1, q=2), 2, True),
    )
    return [_guard(f"min-rule {name}", lambda g=g, r=r, inj=inj: relations.min_cartan_check(g, r, injective=inj, seed=cfg.seed), retitle=True) for name, g, r, inj in cases]


def run_prop3_1(cfg: SuiteConfig) -> list:
    out = []
    for family in ("A", "B", "G"):
        out.append(_guard(f"iterated recursion {family}2", lambda f=family: relations.verify_iterated_recursion(_vertex(_km(f, 2, cfg)))))
    return out


def run_prop3_6(cfg: SuiteConfig) -> list:
    return [_guard(f"local relations {f}{r}", lambda f=f, r=r: relations.local_relations_check(builtin_gcm(f, r))) for f, r in (("A", 4), ("A", 3), ("B", 3), ("C", 3))]


def run_cross_oracle(cfg: SuiteConfig) -> list:
    return [
        _guard("KM vs matrix brackets", lambda: crosscheck.bracket_agreement(3, 100, cfg.seed)),
        _guard("KM vs matrix suites", lambda: crosscheck.suite_agreement(3, cfg.seed)),
    ]


SUITES = {
    s.name: s
    for s in (
        Suite("thm1_2", "(ad u_i)^(1-a_ij)(u_j) = -2 delta(a_ij,-1) a_ji a_i a_j u_i", "deformed Serre relations of vertex generators", run_thm1_2),
        Suite("thm1_3", "flat deformation of the nilpotent part", "per-degree closure dimensions equal the undeformed ones", run_thm1_3),
        Suite("thm1_4", "g_a := e^{a_{n-1}f_{n-1}} ... e^{a_1 f_1}", "type-A conjugation to the chain model", run_thm1_4),
        Suite("thm1_5", "[u_i,[u_i,u_j]] = -2 b_min(i,j) u_i", "type-A edge models rooted at every k", run_thm1_5),
        Suite("thm1_6", "omega_b := sum_k (prod_{i=k}^{n-2} (-b_i)) v*_k ^ v*_{k+1}", "invariant antisymmetric form and the sp identification", run_thm1_6),
        Suite("thm1_7a", "u_i -> e_i + b_{i-1,i} f_{i-1}", "B_n chain edge model", run_thm1_7a),
        Suite("thm1_7b", "- delta_{i,n} 1/2 b_{n,n-1}^2 [f_{n-1},[f_{n-1},f_n]]", "C_n chain edge model", run_thm1_7b),
        Suite("thm1_8a", "u_1 -> e_1, u_2 -> e_2 + b_12 f_1", "rank-2 edge model with a_21 <= -2", run_thm1_8a),
        Suite("thm1_8b", "e_i + b_{n-2,i} f_{n-2}", "D_n branch edge model", run_thm1_8b),
        Suite("thm1_8c", "u_i -> e_i + b_{i-1,i} f_{i-1}, i-1 modulo n", "affine-A edge model in the loop algebra", run_thm1_8c),
        Suite("thm1_9", "sp_2n^(b) = sl_n^(b_1..b_{n-2}) x| J", "splitting of the sp_2n chain model", run_thm1_9),
        Suite("ex1_10", "g'_a = e^{a_2 f_2} e^{a_1 f_1} e^{a_3 f_3}", "two sl_4 conjugations", run_ex1_10),
        Suite("sec2_conical", "g_a = e^{a_0 f_0} prod_{i != 0} e^{a_i f_i}", "conical tree conjugation", run_sec2_conical),
        Suite("sec2_star", "the only possible branch is at the root", "star-shaped conical conjugation", run_sec2_star),
        Suite("sec2_peacock", "g_a = e^{f_+} e^{a_0 f_0} prod ...", "peacock conjugation, images checked against the relations", run_sec2_peacock),
        Suite("sec2_min_cartan", "a'_ij = min(a_{i-1,j-1}, a_ij)", "chain-plus-fan models with the min-rule matrix", run_sec2_min_cartan),
        Suite("prop3_1", "[u_i, u_{i^r j}] = (r+1) u_{i^{r+1} j}", "iterated-u recursion", run_prop3_1),
        Suite("prop3_6", "(ad u_1)^k(u_2) = (ad e_1)^k(e_2) - 2 delta_{k,2} b_1 u_1", "local relations in chain models", run_prop3_6),
        Suite("cross_oracle", "KM engine and matrix model agree", "bracket and suite agreement between backends on A_3", run_cross_oracle),
    )
}


def list_suites() -> dict:
    return {name: {"ref": s.ref, "description": s.description} for name, s in SUITES.items()}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> list:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    return SUITES[name].runner(cfg or SuiteConfig())


__all__ = ["SUITES", "Suite", "SuiteConfig", "list_suites", "run_suite", "make_model", "resolve_backend", "default_height", "omega6_display_check"]
