"""Agreement between the Kac-Moody engine and the matrix model of ``sl_n``."""

from __future__ import annotations

import random
from fractions import Fraction

from ..cartan import builtin_gcm
from ..kacmoody.engine import KMModel
from ..kacmoody.lyndon import standard_factorization
from ..matrices import sl_model
from .closure import flatness_check
from .generators import edge_generators, symbolic_vertex_params, vertex_generators
from .relations import local_relations_check, verify_edge_relations, verify_vertex_serre
from .reports import FAIL, PASS, VerificationReport


class KMToMatrix:
    """Linear map from KM basis keys to matrices, by evaluating basis brackets."""

    def __init__(self, km: KMModel, mat):
        self.km = km
        self.mat = mat
        self.labels = km.gcm.labels
        self._cache: dict = {}

    def _word(self, w: tuple, gen):
        if len(w) == 1:
            return gen(self.labels[w[0]])
        left, right = standard_factorization(w)
        return self.mat.bracket(self._word(left, gen), self._word(right, gen))

    def basis_image(self, key):
        if key not in self._cache:
            root, idx = key
            if not any(root):
                i = self.labels[idx]
                img = self.mat.bracket(self.mat.e(i), self.mat.f(i))
            else:
                w = self.km.basis_words(root)[idx]
                img = self._word(tuple(w), self.mat.e if sum(root) > 0 else self.mat.f)
            self._cache[key] = img
        return self._cache[key]

    def __call__(self, x):
        out = self.mat.element({})
        for key, c in x.terms.items():
            out = out + self.basis_image(key) * c
        return out


def km_basis_keys(km: KMModel) -> list:
    keys = [(km.zero_root, p) for p in range(km.gcm.rank)]
    for root, mult in km.positive_roots().items():
        for idx in range(mult):
            keys.append((root, idx))
            keys.append((tuple(-x for x in root), idx))
    return sorted(keys, key=km.key_sort)


def bracket_agreement(n: int = 3, pairs: int = 100, seed: int = 0) -> VerificationReport:
    """``phi([x,y]) = [phi x, phi y]`` for random ``x, y`` in the KM model of ``A_n``."""
    gcm = builtin_gcm("A", n)
    km = KMModel(gcm, n + 2)
    mat = sl_model(n + 1).model
    phi = KMToMatrix(km, mat)
    keys = km_basis_keys(km)
    rng = random.Random(seed)
    report = VerificationReport(f"KM vs matrix brackets on A{n}")
    report.budgets["pairs"] = pairs
    report.budgets["seed"] = seed
    report.budgets["basis"] = len(keys)

    def rand_elt():
        support = rng.sample(keys, rng.randint(1, min(4, len(keys))))
        return km.element({k: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for k in support})

    bad = None
    for t in range(pairs):
        x, y = rand_elt(), rand_elt()
        diff = phi(km.bracket(x, y)) - mat.bracket(phi(x), phi(y))
        if not diff.is_zero() and bad is None:
            key, coeff = diff.first_nonzero()
            bad = {"pair": t, "component": key, "coefficient": coeff}
    report.add("random bracket pairs", "KM structure constants agree with matrix brackets", PASS if bad is None else FAIL, bad)
    # the basis itself is mapped injectively
    from ..arith.linalg import EchelonSpan

    span = EchelonSpan()
    rank = sum(1 for k in keys if span.add(phi.basis_image(k).terms))
    report.check_value("image rank", "basis maps to a basis of sl_n", rank, len(keys))
    return report


def _outcomes(report: VerificationReport) -> list:
    return [(c.name, c.status) for c in report.checks]


def suite_agreement(n: int = 3, seed: int = 0) -> VerificationReport:
    """Identical per-check outcomes on the suites both backends can run."""
    gcm = builtin_gcm("A", n)
    backends = {"matrix": sl_model(n + 1).model, "km": KMModel(gcm, n + 2)}
    runs: dict = {}
    for name, model in backends.items():
        out = {}
        ring, a = symbolic_vertex_params(gcm)
        vfam = vertex_generators(model, a, ring)
        out["vertex relations"] = verify_vertex_serre(vfam)
        out["vertex flatness"] = flatness_check(vfam, seed=seed)
        for k in gcm.labels:
            efam = edge_generators("TYPE_A_ROOT", model, k=k)
            out[f"edge relations k={k}"] = verify_edge_relations(efam)
            out[f"edge flatness k={k}"] = flatness_check(efam, seed=seed)
        out["local relations"] = local_relations_check(gcm, model=model)
        runs[name] = out
    report = VerificationReport(f"KM vs matrix suite outcomes on A{n}")
    for suite in runs["matrix"]:
        m, k = runs["matrix"][suite], runs["km"][suite]
        same = _outcomes(m) == _outcomes(k)
        report.add(
            suite,
            "identical pass/fail outcomes on both backends",
            PASS if same else FAIL,
            None if same else {"matrix": _outcomes(m), "km": _outcomes(k)},
            outcome=m.counts(),
        )
    return report
