"""Filtered closure of a generator family and the flatness comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..arith.linalg import EchelonSpan, NonGenericSpecialization, random_assignment
from ..lie import BudgetExceeded
from .generators import GeneratorFamily
from .reports import ERROR, FAIL, GENERIC_PASS, PASS, VerificationReport

DEFAULT_MAX_DEGREE = 200
AFFINE_DEGREE_BOUND = 6


class ClosureDidNotStabilize(BudgetExceeded):
    pass


@dataclass
class ClosureResult:
    dims: list  # dims[d-1] = new dimensions at bracket length d
    basis: list = field(default_factory=list)  # (d, [elements]) at the first sample point
    stabilized: bool = True
    points: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.dims)


def is_affine(model) -> bool:
    from ..matrices import LoopAlgebra

    if isinstance(model, LoopAlgebra):
        return True
    return getattr(model, "top_height", 0) is None


def _close(model, gens, max_degree: int, truncate: bool):
    span = EchelonSpan()
    dims, basis = [], []
    level = []
    for x in gens:
        if span.add(x.terms):
            level.append(x)
    dims.append(len(level))
    basis.append((1, level))
    d = 1
    while level:
        if d >= max_degree:
            if truncate:
                return dims, basis, False
            raise ClosureDidNotStabilize(f"closure still growing at bracket length {d}")
        d += 1
        nxt = []
        for g in gens:
            for y in level:
                z = model.bracket(g, y)
                if not z.is_zero() and span.add(z.terms):
                    nxt.append(z)
        if nxt:
            dims.append(len(nxt))
            basis.append((d, nxt))
        level = nxt
    return dims, basis, True


def subalgebra_closure(
    fam: GeneratorFamily,
    seed: int = 0,
    samples: int = 3,
    max_degree: int | None = None,
) -> ClosureResult:
    """Close ``span{u_i}`` under brackets, grouped by bracket length.

    Symbolic parameters are specialized at ``samples`` seeded random points;
    disagreement between points raises :class:`NonGenericSpecialization`.
    Growth stops at the first length that adds nothing: the span is then
    stable under every ``ad u_i`` and is the generated subalgebra.  Affine
    models are infinite, so they are truncated at ``max_degree``
    (default 6) and reported as not stabilized.
    """
    affine = is_affine(fam.model)
    bound = max_degree or (AFFINE_DEGREE_BOUND if affine else DEFAULT_MAX_DEGREE)
    names = fam.parameter_names()
    rng = random.Random(seed)
    points = [random_assignment(names, rng) for _ in range(samples)] if names else [{}]
    results = []
    for p in points:
        F = fam.specialize(p) if names else fam
        gens = [F.u[i] for i in F.labels]
        results.append(_close(F.model, gens, bound, truncate=affine))
    first = results[0]
    for other, p in zip(results[1:], points[1:]):
        if other[0] != first[0]:
            raise NonGenericSpecialization(f"per-degree dims {first[0]} vs {other[0]} at {p}")
    return ClosureResult(first[0], first[1], first[2], points)


def zero_family(fam: GeneratorFamily) -> GeneratorFamily:
    """The same family with every parameter set to 0 (so ``u_i = e_i``)."""
    assignment = {n: 0 for n in fam.parameter_names()}
    return fam.specialize(assignment) if assignment else fam


def flatness_check(fam: GeneratorFamily, seed: int = 0, samples: int = 3, max_degree: int | None = None) -> VerificationReport:
    """Per-degree dimensions of the closure equal those at zero parameters."""
    report = VerificationReport(f"flatness {fam.provenance} on {fam.gcm.name or 'GCM'}")
    ref = "generic closure is filtered-isomorphic to the nilpotent part"
    try:
        gen = subalgebra_closure(fam, seed, samples, max_degree)
        zero = subalgebra_closure(zero_family(fam), seed, 1, max_degree)
    except NonGenericSpecialization as exc:
        report.add("flatness", ref, ERROR, None, message=f"non-generic specialization: {exc}")
        return report
    except BudgetExceeded as exc:
        report.add("flatness", ref, ERROR, None, message=str(exc))
        return report
    report.budgets["max_degree"] = max_degree or (AFFINE_DEGREE_BOUND if is_affine(fam.model) else DEFAULT_MAX_DEGREE)
    report.budgets["seed"] = seed
    n = max(len(gen.dims), len(zero.dims))
    a = gen.dims + [0] * (n - len(gen.dims))
    b = zero.dims + [0] * (n - len(zero.dims))
    status = GENERIC_PASS if fam.parameter_names() else PASS
    if a == b:
        report.add("per-degree dims", ref, status, None, dims=a, stabilized=gen.stabilized)
    else:
        d = next(k for k in range(n) if a[k] != b[k])
        report.add("per-degree dims", ref, FAIL, {"degree": d + 1, "generic": a[d], "zero": b[d]}, dims=a, zero_dims=b)
    return report


def ideal_closure(model, seeds, gens) -> list:
    """Basis of the smallest span containing ``seeds`` and stable under ``ad g`` for ``g`` in ``gens``.

    Coefficients must be exact rationals (specialize first).
    """
    span = EchelonSpan()
    basis = []
    frontier = []
    for x in seeds:
        if span.add(x.terms):
            basis.append(x)
            frontier.append(x)
    while frontier:
        nxt = []
        for g in gens:
            for y in frontier:
                z = model.bracket(g, y)
                if not z.is_zero() and span.add(z.terms):
                    basis.append(z)
                    nxt.append(z)
        frontier = nxt
    return basis
