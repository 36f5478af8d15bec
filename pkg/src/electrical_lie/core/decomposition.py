"""Semidirect splitting of the ``sp_2n`` chain model into an ``sl_n`` part and an ideal."""

from __future__ import annotations

import random
from fractions import Fraction

from ..arith.linalg import NonGenericSpecialization, random_assignment
from ..arith.poly import Poly
from ..cartan import builtin_gcm
from ..matrices import chevalley
from .closure import ideal_closure, subalgebra_closure
from .generators import GeneratorFamily, edge_generators
from .relations import verify_relations
from .reports import FAIL, GENERIC_PASS, PASS, VerificationReport


class DegenerateParameters(ValueError):
    pass


def b_prime(n: int, b: dict) -> dict:
    """``b'_k = -2^(2(n-k)+1) prod_{i=k}^{n-1} b_i^2`` for ``k = 1..n-1``."""
    out = {}
    for k in range(1, n):
        p = Fraction(-(2 ** (2 * (n - k) + 1)))
        for i in range(k, n):
            p = p * b[i] * b[i]
        out[k] = p
    return out


def primed_elements(fam: GeneratorFamily, n: int) -> dict:
    """``u'_n = u_n`` and ``u'_{n-k} = (ad u_{n-k})^2 (u'_{n-k+1})``."""
    m = fam.model
    up = {n: fam.u[n]}
    for k in range(1, n):
        up[n - k] = m.ad_pow(fam.u[n - k], 2, up[n - k + 1])
    return up


def double_primed(fam: GeneratorFamily, n: int, b: dict, up: dict) -> dict:
    """``u''_{n-k} = u'_{n-k} + (-2)^(k+1) (prod_{i=1}^k b_{n-i}) u_{n-k}``."""
    out = {}
    for k in range(1, n):
        p = (-2) ** (k + 1)
        for i in range(1, k + 1):
            p = p * b[n - i]
        out[n - k] = up[n - k] + fam.u[n - k] * p
    return out


def _dim_check(report, name, ref, got, expected, status):
    if got == expected:
        report.add(name, ref, status, None, got=got)
    else:
        report.add(name, ref, FAIL, {"got": got, "expected": expected})


def sp_decomposition_check(n: int = 3, b=None, seed: int = 0, samples: int = 3) -> VerificationReport:
    """Splitting checks in the ``sp_2n`` chain model.

    ``b`` maps ``i`` (or ``"b{i}"``) to a value for ``i = 1..n-1``;
    omitted means symbolic.  Every ``b_i`` must be nonzero, since the
    ideal is identified with a type-A chain model only then.
    """
    if n < 2:
        raise ValueError("the splitting needs n >= 2")
    model = chevalley("C", n).model
    fam = edge_generators("C_CHAIN", model)
    sym = {i: fam.params[(i, i + 1)] for i in range(1, n)}
    if b is not None:
        vals = {i: Fraction(b.get(i, b.get(f"b{i}", 0))) for i in range(1, n)}
        zero = [i for i, v in vals.items() if v == 0]
        if zero:
            raise DegenerateParameters(f"b_{zero[0]} = 0: the identification of the ideal with a chain model needs all b_i != 0")
        fam = fam.specialize({f"b{i}": v for i, v in vals.items()})
        bv = vals
    else:
        bv = sym
    m = model
    report = VerificationReport(f"sp_{2 * n} splitting")
    report.budgets["n"] = n
    report.budgets["seed"] = seed

    # (i) the first n-1 generators satisfy the sl_n chain relations
    a_n1 = builtin_gcm("A", n - 1)
    sl_rel = {}
    for i in range(1, n - 1):
        sl_rel[(i, i + 1)] = sl_rel[(i + 1, i)] = bv[i]
    sl_part = GeneratorFamily(m, {i: fam.u[i] for i in range(1, n)}, fam.params, "sl_n part", a_n1, fam.ring, sl_rel)
    report.extend(verify_relations(sl_part, title="sl_n part"), prefix="sl_n part ")

    # (ii) dimensions at generic points
    names = fam.parameter_names()
    rng = random.Random(seed)
    points = [random_assignment(names, rng) for _ in range(samples)] if names else [{}]
    dims = []
    for p in points:
        F = fam.specialize(p) if names else fam
        gens = [F.u[i] for i in F.labels]
        sl_gens = gens[:-1]
        ideal = ideal_closure(m, [F.u[n]], gens)
        seeds = [m.bracket(x, F.u[n]) for x in sl_gens]
        variant = ideal_closure(m, [s for s in seeds if not s.is_zero()], sl_gens)
        sl_dim = subalgebra_closure(sl_part.specialize(p) if names else sl_part, samples=1).total
        total = subalgebra_closure(F, samples=1).total
        dims.append((len(ideal), len(variant), sl_dim, total))
    if len(set(dims)) != 1:
        raise NonGenericSpecialization(f"dimensions {dims} at {points}")
    dim_j, dim_var, dim_sl, dim_total = dims[0]
    status = GENERIC_PASS if names else PASS
    _dim_check(report, "dim J", "ideal generated by u_n is S^2 V", dim_j, n * (n + 1) // 2, status)
    _dim_check(report, "dim sl_n part", "u_1..u_{n-1} generate sl_n^(b)", dim_sl, n * (n - 1) // 2, status)
    _dim_check(report, "dim J + dim sl_n part", "semidirect sum is the whole algebra", dim_j + dim_sl, dim_total, status)
    report.diagnose("span from [sl_n part, u_n] under sl_n part", "J generated by [sl_n^(b), u_n]", None, dim=dim_var)

    # (iii) primed elements satisfy the sl_{n+1} chain relations with b'
    bp = b_prime(n, bv)
    report.budgets["b_prime"] = {str(k): str(v) for k, v in bp.items()}
    up = primed_elements(fam, n)
    rel = {}
    for k in range(1, n):
        rel[(k, k + 1)] = rel[(k + 1, k)] = bp[k]
    primed = GeneratorFamily(m, up, fam.params, "primed", builtin_gcm("A", n), fam.ring, rel)
    report.extend(verify_relations(primed, title="primed"), prefix="primed ")

    # (iv) shifted elements commute with the neighbouring primed ones
    upp = double_primed(fam, n, bv, up)
    for k in range(1, n):
        for nb in (n - k - 1, n - k + 1):
            if 1 <= nb <= n:
                report.check_zero(
                    f"[u''_{n - k}, u'_{nb}]",
                    "[u'_{n-k} + (-2)^(k+1) (prod b_{n-i}) u_{n-k}, u'_{n-k+-1}] = 0",
                    m.bracket(upp[n - k], up[nb]),
                )
    # the shifted copy against every primed element, beyond the neighbours
    for a in sorted(upp):
        for c in sorted(up):
            if abs(a - c) != 1:
                report.diagnose(f"[u''_{a}, u'_{c}]", "shifted copy commutes with the primed copy", m.bracket(upp[a], up[c]))
    return report


def sp6_example_check(b=None) -> VerificationReport:
    """Worked ``sp_6`` numbers: ``b'`` and the commuting ``v``/``w`` copies."""
    model = chevalley("C", 3).model
    fam = edge_generators("C_CHAIN", model)
    if b is not None:
        fam = fam.specialize({f"b{i}": Fraction(b.get(i, b.get(f"b{i}", 0))) for i in (1, 2)})
        b1, b2 = (Fraction(b.get(i, b.get(f"b{i}", 0))) for i in (1, 2))
    else:
        b1, b2 = fam.params[(1, 2)], fam.params[(2, 3)]
    m = model
    u = fam.u
    report = VerificationReport("sp_6 worked example")
    bp = b_prime(3, {1: b1, 2: b2})
    report.check_value("b'_1", "b' = {-32 b_1^2 b_2^2, -8 b_2^2}", bp[1], b1 * b1 * b2 * b2 * -32)
    report.check_value("b'_2", "b' = {-32 b_1^2 b_2^2, -8 b_2^2}", bp[2], b2 * b2 * -8)
    w3 = u[3]
    w2 = m.ad_pow(u[2], 2, u[3])
    w1 = m.ad_pow(u[1], 2, w2)
    up = primed_elements(fam, 3)
    for k, w in ((1, w1), (2, w2), (3, w3)):
        report.check_equal(f"w_{k} = u'_{k}", "w_3 = u_3, w_2 = [u_2,[u_2,u_3]], w_1 = [u_1,[u_1,w_2]]", w, up[k])
    v1 = w1 - u[1] * (8 * b1 * b2)
    v2 = w2 + u[2] * (4 * b2)
    for a, v in ((1, v1), (2, v2)):
        for c, w in ((1, w1), (2, w2), (3, w3)):
            report.check_zero(f"[v_{a}, w_{c}]", "v_1 = -8 b_1 b_2 u_1 + w_1, v_2 = 4 b_2 u_2 + w_2 commute with the w copy", m.bracket(v, w))
    # the v copy: record how [v_i,[v_i,v_j]] compares with v_i
    for i, j, vi, vj in ((1, 2, v1, v2), (2, 1, v2, v1)):
        x = m.ad_pow(vi, 2, vj)
        report.diagnose(f"[v_{i},[v_{i},v_{j}]]", "the v copy is a chain model after localization", None, value=repr(x))
    return report
