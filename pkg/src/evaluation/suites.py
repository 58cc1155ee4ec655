"""
Verification suites: exact identity checks over parameter grids and seeded random inputs.

Each suite returns a SuiteResult that counts checks per identity and keeps the
first counterexample of every failing identity.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from src.algebra.forms import QForm, all_multi_indices
from src.algebra.polynomial import Bidegree, Poly, format_gaussian, iter_bidegrees
from src.analysis.hermite import (hermite_degree, hermite_expand, hermite_inner,
                                  hermite_product, hermite_reconstruct, real_inner, to_complex, to_real)
from src.analysis.inner_product import form_inner, poly_inner
from src.data.random_forms import RandomFormGenerator
from src.operators.dbar_complex import box, box_coord, dbar, dbar_star, dirichlet_form
from src.operators.witten import (WittenRep, levi_action, pauli, scalar_laplacian_on_components, witten_coord,
                                  witten_D, witten_Dstar, witten_laplacian, witten_Z, witten_Zstar)
from src.spectrum.eigenfunctions import (EigenFunction, eigenbasis_up_to,
                                         expand_monomial, reconstruct, span_rank, u_coefficients,
                                         u_coefficients_by_recurrence, u_fn, v_coefficients,
                                         v_coefficients_by_recurrence, v_fn, verify_eigen)
from src.spectrum.galerkin import SpectralReport, full_spectrum, worker_count

logger = logging.getLogger(__name__)

CHECK_COLUMNS = ["check", "count", "failed"]

# (check name, passed, counterexample text)
Outcome = Tuple[str, bool, str]


@dataclass
class Failure:
    check: str
    counterexample: str


@dataclass
class SuiteResult:
    """Tally of one suite run"""
    suite: str
    counts: Dict[str, int] = field(default_factory=dict)
    failed: Dict[str, int] = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def record(self, check: str, ok: bool, counterexample: str = "") -> None:
        self.counts[check] = self.counts.get(check, 0) + 1
        if not ok:
            self.failed[check] = self.failed.get(check, 0) + 1
            if self.failed[check] == 1:
                logger.warning(f"{self.suite}: {check} failed on {counterexample}")
                self.failures.append(Failure(check, counterexample))

    def extend(self, outcomes: Iterable[Outcome]) -> None:
        for check, ok, counterexample in outcomes:
            self.record(check, ok, counterexample)

    def to_frame(self) -> pd.DataFrame:
        rows = [{"check": check, "count": count, "failed": self.failed.get(check, 0)}
                for check, count in self.counts.items()]
        return pd.DataFrame(rows, columns=CHECK_COLUMNS)


def _run_items(items: Sequence[Callable[[], List[Outcome]]], threads: Optional[int], progress: bool,
               desc: str) -> List[Outcome]:
    """Evaluate work items on a thread pool; outcomes come back in item order"""
    with ThreadPoolExecutor(max_workers=worker_count(threads)) as executor:
        results = list(tqdm(executor.map(lambda item: item(), items), total=len(items),
                            desc=desc, disable=not progress))
    return [outcome for result in results for outcome in result]


# closed-form eigenfunctions


def _eigen_item(f: EigenFunction) -> Callable[[], List[Outcome]]:
    def run() -> List[Outcome]:
        check = verify_eigen(f)
        outcomes = [("eigen_equation", check.holds, f"{f.label()}: residual {check.residual.to_text()}")]
        if f.kind in ("u", "v") and f.n == 1:
            k, m = f.params[0]
            if f.kind == "u":
                closed, recurrence = u_coefficients(k, m), u_coefficients_by_recurrence(k, m)
            else:
                closed, recurrence = v_coefficients(k, m), v_coefficients_by_recurrence(k, m)
            outcomes.append(("recurrence", list(recurrence) == closed, f"{f.label()}: {closed} vs {recurrence}"))
        return outcomes
    return run


def verify_eigen_suite(kmax: int, mmax: int, n: int = 1, samples: int = 200, seed: int = 0,
                       threads: Optional[int] = None, progress: bool = False) -> SuiteResult:
    """
    Exact eigen-equations for u_(k,m), 0 <= k <= kmax, 1 <= m <= mmax and v_(k,m), 1 <= k <= kmax,
    0 <= m <= mmax; for n > 1 also `samples` random tensor eigenforms over all degrees q
    """
    functions = [u_fn(k, m) for k in range(kmax + 1) for m in range(1, mmax + 1)]
    functions += [v_fn(k, m) for k in range(1, kmax + 1) for m in range(mmax + 1)]
    if n > 1:
        generator = RandomFormGenerator(n=n, max_degree=6, seed=seed)
        functions += [generator.random_tensor(i % (n + 1)) for i in range(samples)]
    result = SuiteResult("verify-eigen", details={"kmax": kmax, "mmax": mmax, "n": n, "seed": seed})
    result.extend(_run_items([_eigen_item(f) for f in functions], threads, progress, "eigenfunctions"))
    result.details["verifications"] = result.counts.get("eigen_equation", 0)
    return result


# dbar-complex identities


def _text(f: QForm) -> str:
    return f"n={f.n}, q={f.q}: {f.to_text()}"


def _operator_item(f: QForm, g: QForm, h: Optional[QForm]) -> Callable[[], List[Outcome]]:
    """f, g of degree q; h of degree q+1 (None when q = n)"""
    def run() -> List[Outcome]:
        n, q = f.n, f.q
        box_f = box(f)
        outcomes = [("box_coord", box_f == box_coord(f), _text(f)),
                    ("self_adjoint", form_inner(box_f, g) == form_inner(f, box(g)), f"{_text(f)} | {_text(g)}")]
        energy = dirichlet_form(f, f)
        outcomes.append(("dirichlet_form", energy == form_inner(box_f, f), _text(f)))
        outcomes.append(("positivity", energy.is_nonnegative(), f"{_text(f)}: Q = {energy.to_text()}"))
        if q <= n - 2:
            outcomes.append(("dbar_squared", dbar(dbar(f)).is_zero, _text(f)))
        if q >= 2:
            outcomes.append(("dbar_star_squared", dbar_star(dbar_star(f)).is_zero, _text(f)))
        if h is not None:
            outcomes.append(("adjoint", form_inner(dbar(f), h) == form_inner(f, dbar_star(h)),
                             f"{_text(f)} | {_text(h)}"))
            outcomes.append(("commutation", dbar(box_f) == box(dbar(f)), _text(f)))
        if q >= 1:
            outcomes.append(("commutation", dbar_star(box_f) == box(dbar_star(f)), _text(f)))
        return outcomes
    return run


def _charge_degree_item(n: int, q: int, key: Bidegree) -> Callable[[], List[Outcome]]:
    def run() -> List[Outcome]:
        outcomes = []
        for J in all_multi_indices(n, q):
            image = box(QForm.basis(n, J, Poly(n, {key: 1})))
            ok = all(term.charge == key.charge and term.degree <= key.degree
                     for _, poly in image.components() for term in poly.terms)
            outcomes.append(("charge_degree", ok, f"z^{key.alpha} zbar^{key.beta} dzbar{J}"))
        return outcomes
    return run


def operator_suite(n: int, samples: int = 200, seed: int = 0, degree: int = 4, threads: Optional[int] = None,
                   progress: bool = False) -> SuiteResult:
    """
    Identities of the weighted dbar-complex on `samples` random forms for every q = 0..n,
    plus charge preservation and degree monotonicity of box on every monomial of degree <= degree
    """
    generator = RandomFormGenerator(n=n, max_degree=degree, seed=seed)
    items = []
    for q in range(n + 1):
        for _ in range(samples):
            f, g = generator.random_form(q), generator.random_form(q)
            h = generator.random_form(q + 1) if q < n else None
            items.append(_operator_item(f, g, h))
        if n <= 2:
            items += [_charge_degree_item(n, q, key) for key in iter_bidegrees(n, degree)]
    result = SuiteResult("operator-check", details={"n": n, "samples": samples, "seed": seed, "degree": degree})
    result.extend(_run_items(items, threads, progress, "operator identities"))
    return result


# Witten complex


def _rep(h: WittenRep) -> str:
    return f"n={h.n}, q={h.q}: {h.to_text()}"


def _witten_item(f: QForm) -> Callable[[], List[Outcome]]:
    def run() -> List[Outcome]:
        h = WittenRep(f)
        n, q = h.n, h.q
        laplacian = witten_laplacian(h)
        outcomes = [("conjugation", laplacian.form == box(f), _rep(h)),
                    ("coordinate", witten_coord(h) == laplacian, _rep(h))]
        if q == 0:
            ladder = WittenRep(QForm.zero(n, 0))
            for k in range(1, n + 1):
                ladder = ladder + witten_Zstar(witten_Z(h, k), k)
            outcomes.append(("ladder_sum", ladder == laplacian, _rep(h)))
        if q <= n - 2:
            outcomes.append(("D_squared", witten_D(witten_D(h)).form.is_zero, _rep(h)))
        if q >= 2:
            outcomes.append(("Dstar_squared", witten_Dstar(witten_Dstar(h)).form.is_zero, _rep(h)))
        if q < n:
            outcomes.append(("commutation", witten_D(laplacian) == witten_laplacian(witten_D(h)), _rep(h)))
        if q >= 1:
            outcomes.append(("commutation", witten_Dstar(laplacian) == witten_laplacian(witten_Dstar(h)), _rep(h)))
        if q == 1:
            decomposed = scalar_laplacian_on_components(h) + levi_action(h)
            outcomes.append(("levi_decomposition", decomposed == laplacian, _rep(h)))
        if n == 1 and q == 0:
            outcomes.append(("pauli_minus", pauli(h, "-").form == box(f), _rep(h)))
            as_one_form = QForm.basis(1, (1,), f.scalar)
            outcomes.append(("pauli_plus", pauli(h, "+").scalar == box(as_one_form).coefficient((1,)), _rep(h)))
        return outcomes
    return run


def _same_spectrum(first: SpectralReport, second: SpectralReport) -> bool:
    return ([(c.eigenvalue, c.multiplicity) for c in first.clusters]
            == [(c.eigenvalue, c.multiplicity) for c in second.clusters])


def _spectrum_outcomes(n: int, q: int, degree: int, operator: str, threads: Optional[int]) -> List[Outcome]:
    reference = full_spectrum(n, q, degree, operator="box", threads=threads)
    other = full_spectrum(n, q, degree, operator=operator, threads=threads)
    summary = (f"n={n}, q={q}, D={degree}: box {[(c.eigenvalue, c.multiplicity) for c in reference.clusters]} "
               f"vs {operator} {[(c.eigenvalue, c.multiplicity) for c in other.clusters]}")
    return [(f"{operator}_spectrum", _same_spectrum(reference, other), summary)]


def witten_suite(n: int, q: int, degree: int = 5, samples: int = 100, seed: int = 0,
                 threads: Optional[int] = None, progress: bool = False) -> SuiteResult:
    """
    Conjugation, coordinate formula, complex and commutation identities of the Witten complex on
    `samples` random forms of degree q; identical spectral reports for n <= 2 and degree <= 6;
    for n = 1 also the Pauli operators against box at q = 0 and q = 1
    """
    generator = RandomFormGenerator(n=n, max_degree=degree, seed=seed)
    items = [_witten_item(generator.random_form(q)) for _ in range(samples)]
    if n == 1 and q == 1:
        # Pauli checks act on scalar representatives
        items += [_witten_item(generator.random_form(0)) for _ in range(samples)]
    result = SuiteResult("witten-check", details={"n": n, "q": q, "degree": degree, "samples": samples,
                                                  "seed": seed})
    result.extend(_run_items(items, threads, progress, "witten identities"))
    if n <= 2 and degree <= 6:
        result.extend(_spectrum_outcomes(n, q, degree, "witten", threads))
    if n == 1:
        result.extend(_spectrum_outcomes(1, q, degree, "pauli", threads))
    return result


# Hermite cross-checks


def hermite_suite(degree: int = 8, samples: int = 50, seed: int = 0, progress: bool = False) -> SuiteResult:
    """
    n = 1: round trip of every monomial of degree <= degree through the Hermite products, span equality,
    real coefficients for real inputs, agreement of the two inner products, Hermite orthogonality and
    the Hermite expansions of u/v eigenfunctions with k + m <= 6
    """
    result = SuiteResult("hermite-check", details={"degree": degree, "samples": samples, "seed": seed})
    monomials = list(iter_bidegrees(1, degree))
    for key in tqdm(monomials, desc="hermite round trip", disable=not progress):
        p = Poly(1, {key: 1})
        expansion = hermite_expand(p)
        ok = to_complex(hermite_reconstruct(expansion, 1)) == p and hermite_degree(expansion) <= key.degree
        result.record("round_trip", ok, p.to_text())

    products = [to_complex(hermite_product(((i,), (j,))))
                for i in range(degree + 1) for j in range(degree + 1 - i)]
    result.record("products_in_degree", all(p.degree <= degree for p in products), f"D={degree}")
    result.record("span_equality", span_rank(products) == len(monomials),
                  f"D={degree}: rank {span_rank(products)} vs {len(monomials)} monomials")

    for i in range(degree + 1):
        for j in range(i + 1, degree + 1):
            result.record("orthogonality", hermite_inner(i, j).is_zero, f"H_{i}, H_{j}")

    generator = RandomFormGenerator(n=1, max_degree=min(degree, 6), seed=seed)
    for _ in range(samples):
        p = generator.random_poly()
        real_p = p + p.conjugate()
        coeffs = hermite_expand(real_p).values()
        result.record("real_coefficients", all(not c.y for c in coeffs), real_p.to_text())
        s = generator.random_poly()
        agree = real_inner(to_real(p), to_real(s)).to_exact() == poly_inner(p, s)
        result.record("inner_products", agree, f"{p.to_text()} | {s.to_text()}")

    for total in range(1, 7):
        for m in range(1, total + 1):
            f = u_fn(total - m, m)
            ok = hermite_degree(hermite_expand(f.poly)) <= (total - m) + 2 * m
            result.record("eigenfunction_coverage", ok, f.label())
        for k in range(1, total + 1):
            f = v_fn(k, total - k)
            ok = hermite_degree(hermite_expand(f.poly)) <= 2 * k + (total - k)
            result.record("eigenfunction_coverage", ok, f.label())
    return result


# eigenbasis expansion


def describe_expansion(key: Bidegree) -> List[Dict[str, Any]]:
    """The expansion of one monomial as serializable rows"""
    return [{"eigenfunction": f.label(), "eigenvalue": f.eigenvalue, "coefficient": format_gaussian(c),
             "polynomial": f.poly.to_text()}
            for f, c in expand_monomial(key)]


def expansion_suite(n: int = 1, degree: int = 8, monomial: Optional[Bidegree] = None,
                    progress: bool = False) -> SuiteResult:
    """
    Reconstruct monomials from their eigenbasis expansions; for a full run also check the span
    dimension, orthogonality across eigenvalues (n = 1, degree <= 6) and the u_(0,m) = v_(m,0) coincidence
    """
    if monomial is not None:
        result = SuiteResult("expand", details={"n": monomial.n, "monomial": Poly(monomial.n, {monomial: 1}).to_text(),
                                                "expansion": describe_expansion(monomial)})
        p = Poly(monomial.n, {monomial: 1})
        result.record("reconstruction", reconstruct(expand_monomial(monomial)) == p, p.to_text())
        return result

    result = SuiteResult("expand", details={"n": n, "degree": degree})
    monomials = list(iter_bidegrees(n, degree))
    for key in tqdm(monomials, desc="expansions", disable=not progress):
        p = Poly(n, {key: 1})
        result.record("reconstruction", reconstruct(expand_monomial(key)) == p, p.to_text())

    basis = eigenbasis_up_to(n, degree)
    rank = span_rank([f.poly for f in basis])
    result.record("span_dimension", rank == len(monomials), f"D={degree}: rank {rank} vs {len(monomials)}")

    if n == 1:
        small = eigenbasis_up_to(1, min(degree, 6))
        for i, f in enumerate(small):
            for g in small[i + 1:]:
                if f.eigenvalue != g.eigenvalue:
                    result.record("orthogonality", poly_inner(f.poly, g.poly).is_zero, f"{f.label()} | {g.label()}")
        for m in range(1, degree // 2 + 1):
            result.record("u_v_coincidence", u_fn(0, m).poly == v_fn(m, 0).poly, f"m={m}")
    return result
