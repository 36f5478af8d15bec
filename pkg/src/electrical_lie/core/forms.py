"""The antisymmetric form preserved by the type-A chain model and the ``sp`` identification."""

from __future__ import annotations

import random
from fractions import Fraction

from ..arith.linalg import ff_kernel, rank_rational, random_assignment
from ..arith.poly import Poly, PolyRing
from ..cartan import ParamFamily
from ..matrices import MatrixAlgebra, sl_model, std_rep_action
from .closure import subalgebra_closure
from .generators import edge_generators
from .reports import FAIL, GENERIC_PASS, PASS, VerificationReport


def chain_ring(n: int) -> PolyRing:
    return PolyRing([f"b{i}" for i in range(1, n - 1)])


def _b_values(n: int, b=None, ring=None) -> dict:
    """``{i: b_i}`` for ``i = 1..n-2``; symbolic when ``b`` is None."""
    if b is None:
        ring = ring or chain_ring(n)
        return {i: ring.gen(f"b{i}") for i in range(1, n - 1)}
    if isinstance(b, dict):
        return {i: b.get(i, b.get(f"b{i}", 0)) for i in range(1, n - 1)}
    return {i: b[i - 1] for i in range(1, n - 1)}


def omega_form(n: int, b=None, ring=None, model=None):
    """Gram matrix with entry ``(k, k+1) = prod_{i=k}^{n-2} (-b_i)`` and its negative below."""
    if n < 2:
        raise ValueError("the form needs n >= 2")
    bv = _b_values(n, b, ring)
    model = model or MatrixAlgebra(n)
    rows = [[0] * n for _ in range(n)]
    for k in range(1, n):
        p = 1
        for i in range(k, n - 1):
            p = p * (-bv[i])
        rows[k - 1][k] = p
        rows[k][k - 1] = -p
    return model.matrix(rows)


def v_one(n: int, b=None, ring=None) -> list:
    """``v^1 = v_1 - b_1 v_3 + b_1 b_3 v_5 - ...`` (coordinates, 0-based list)."""
    bv = _b_values(n, b, ring)
    v = [0] * n
    coeff = 1
    for pos in range(0, n, 2):
        v[pos] = coeff
        if pos + 1 < n - 1:
            coeff = coeff * (-bv[pos + 1])
    return v


def chain_family(n: int, b=None, ring=None):
    """``u_i = e_i + b_{i-1} f_{i-1}`` in the defining representation of ``sl_n``."""
    model = sl_model(n).model
    bv = _b_values(n, b, ring)
    if b is None:
        ring = ring or next((x.ring for x in bv.values() if isinstance(x, Poly)), None)
    params = ParamFamily("edge", {(i, i + 1): bv[i] for i in range(1, n - 1)})
    return edge_generators("TYPE_A_ROOT", model, params, ring, k=n - 1)


def form_invariance_check(n: int, b=None) -> VerificationReport:
    ring = chain_ring(n) if b is None else None
    fam = chain_family(n, b, ring)
    m = fam.model
    omega = omega_form(n, b, ring, model=m)
    report = VerificationReport(f"form invariance for n={n}")
    report.budgets["omega"] = [[str(x) for x in row] for row in omega.rows()]
    for i in fam.labels:
        u = fam.u[i]
        report.check_zero(f"u_{i}^T Omega + Omega u_{i}", "u^T Omega + Omega u = 0", u.transpose() @ omega + omega @ u)
    if n % 2 == 0:
        v = v_one(n, b, ring)
        report.budgets["v1"] = [str(x) for x in v]
        for i in fam.labels:
            w = std_rep_action(fam.u[i], v)
            report.check_zero(f"u_{i} v1", "u_i(v^1) = 0", _column(m, w))
    else:
        kernel = ff_kernel(omega.rows())
        report.check_value("dim ker Omega", "one-dimensional kernel for odd n", len(kernel), 1)
        if len(kernel) == 1:
            k = kernel[0]
            report.budgets["kernel"] = [str(x) for x in k]
            for i in fam.labels:
                w = std_rep_action(fam.u[i], k)
                # w is proportional to k iff every 2x2 minor of [k | w] vanishes
                minors = {}
                for r in range(n):
                    for s in range(r + 1, n):
                        d = w[r] * k[s] - w[s] * k[r]
                        if d != 0:
                            minors[(r, s)] = d
                report.check_zero(f"u_{i} preserves ker Omega", "kernel is invariant", m.element_class.from_pairs(m, minors.items()))
    return report


def _column(model, w):
    """A vector as the first column of a matrix, so it can serve as a witness."""
    return model.element_class.from_pairs(model, (((r, 0), x) for r, x in enumerate(w)))


def _solution_dim(n: int, omega_rows, v) -> int:
    """Dimension of ``{X in gl_n : X^T Omega + Omega X = 0, X v = 0}``."""
    eqs = []
    idx = lambda r, c: r * n + c  # noqa: E731
    for p in range(n):
        for q in range(p, n):
            # (X^T O + O X)_{pq} = sum_r X_{rp} O_{rq} + sum_r O_{pr} X_{rq}
            row = [Fraction(0)] * (n * n)
            for r in range(n):
                row[idx(r, p)] += omega_rows[r][q]
                row[idx(r, q)] += omega_rows[p][r]
            eqs.append(row)
    for p in range(n):
        row = [Fraction(0)] * (n * n)
        for c in range(n):
            row[idx(p, c)] += v[c]
        eqs.append(row)
    return n * n - rank_rational(eqs)


def sp_identification_check(n: int, b=None, seed: int = 0) -> VerificationReport:
    """Closure dimension equals the stabilizer of ``v^1`` in ``sp_n`` at generic nonzero ``b``."""
    if n % 2:
        raise ValueError("the identification needs even n")
    report = VerificationReport(f"sp identification for n={n}")
    target = n * (n + 1) // 2 - n
    if b is None:
        rng = random.Random(seed)
        pt = random_assignment([f"b{i}" for i in range(1, n - 1)], rng)
        while any(x == 0 for x in pt.values()):
            pt = random_assignment(pt, rng)
        b = {i: pt[f"b{i}"] for i in range(1, n - 1)}
        status = GENERIC_PASS
    else:
        status = PASS
    b = _b_values(n, b)
    if any(x == 0 for x in b.values()):
        raise ValueError("the identification needs every b_i nonzero")
    report.budgets["b"] = {str(k): str(v) for k, v in b.items()}
    fam = chain_family(n, b)
    omega = omega_form(n, b, model=fam.model)
    v = v_one(n, b)
    closure = subalgebra_closure(fam, seed=seed, samples=1)
    basis = [x for _, level in closure.basis for x in level]
    dim = len(basis)
    report.add("closure dim", "dim = n(n+1)/2 - n", status if dim == target else FAIL, None if dim == target else {"got": dim, "expected": target}, dims=closure.dims)
    bad = [k for k, x in enumerate(basis) if not (x.transpose() @ omega + omega @ x).is_zero() or any(c != 0 for c in std_rep_action(x, v))]
    report.add("closure inside stabilizer", "X^T Omega + Omega X = 0 and X v^1 = 0", status if not bad else FAIL, None if not bad else {"element": bad[0]})
    sol = _solution_dim(n, omega.rows(), v)
    report.add("linear system dim", "stabilizer of v^1 in sp_omega", status if sol == target else FAIL, None if sol == target else {"got": sol, "expected": target})
    return report
