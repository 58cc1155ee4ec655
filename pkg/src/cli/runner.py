import logging
import sys
from dataclasses import asdict
from typing import Any, Dict, Optional, TextIO, Tuple

import pandas as pd

from src.algebra.errors import SingularGramError, SpectrumError
from src.cli.config import RunConfig
from src.cli.serialization import SCHEMA_VERSION, render
from src.evaluation.suites import (CHECK_COLUMNS, SuiteResult, expansion_suite, hermite_suite, operator_suite,
                                   verify_eigen_suite, witten_suite)
from src.spectrum.galerkin import SPECTRUM_COLUMNS, full_spectrum, multiplicity_growth

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

MULTIPLICITY_COLUMNS = ["mu", "degree", "multiplicity"]

Report = Tuple[Dict[str, Any], Optional[pd.DataFrame]]


def _header(config: RunConfig, passed: bool) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "status": "pass" if passed else "fail",
        "exit_code": EXIT_OK if passed else EXIT_FAILED,
        "config": config.to_dict(),
        "counterexample": None,
    }


def _spectrum_kwargs(config: RunConfig) -> Dict[str, Any]:
    return {"tolerance": config.tolerance, "operator": config.operator, "method": config.method,
            "threads": config.threads, "allow_large_degree": config.allow_large_degree}


def run_spectrum(config: RunConfig) -> Report:
    report = full_spectrum(config.n, config.q, config.degree, **_spectrum_kwargs(config))
    payload = _header(config, True)
    payload["report"] = report.to_dict()
    payload["basis_dimension"] = report.basis_dimension
    payload["eigenvalue_count"] = len(report.clusters)
    return payload, report.to_frame()


def run_multiplicity(config: RunConfig) -> Report:
    mus = [config.mu] if config.mu is not None else list(range(config.q, config.q + 5))
    degrees = sorted(config.degrees)
    rows, growth = [], []
    for mu in mus:
        counts = multiplicity_growth(config.n, config.q, mu, degrees, **_spectrum_kwargs(config))
        increasing = all(a < b for a, b in zip(counts, counts[1:]))
        growth.append({"mu": mu, "degrees": degrees, "multiplicities": counts, "strictly_increasing": increasing})
        rows += [{"mu": mu, "degree": d, "multiplicity": c} for d, c in zip(degrees, counts)]
    passed = all(entry["strictly_increasing"] for entry in growth)
    payload = _header(config, passed)
    payload["growth"] = growth
    if not passed:
        first = next(entry for entry in growth if not entry["strictly_increasing"])
        payload["counterexample"] = {"check": "multiplicity_growth",
                                     "counterexample": f"mu={first['mu']}: {first['multiplicities']}"}
    return payload, pd.DataFrame(rows, columns=MULTIPLICITY_COLUMNS)


def _run_suite(config: RunConfig) -> SuiteResult:
    if config.command == "verify-eigen":
        return verify_eigen_suite(config.kmax, config.mmax, n=config.n, samples=config.samples, seed=config.seed,
                                  threads=config.threads, progress=config.progress)
    if config.command == "operator-check":
        return operator_suite(config.n, samples=config.samples, seed=config.seed, degree=config.degree,
                              threads=config.threads, progress=config.progress)
    if config.command == "witten-check":
        return witten_suite(config.n, config.q, degree=config.degree, samples=config.samples, seed=config.seed,
                            threads=config.threads, progress=config.progress)
    if config.command == "hermite-check":
        return hermite_suite(degree=config.degree, samples=config.samples, seed=config.seed,
                             progress=config.progress)
    return expansion_suite(n=config.n, degree=config.degree, monomial=config.monomial_bidegree(),
                           progress=config.progress)


def run_suite(config: RunConfig) -> Report:
    result = _run_suite(config)
    payload = _header(config, result.passed)
    payload["suite"] = result.suite
    payload["total_checks"] = result.total
    payload["checks"] = result.to_frame().to_dict(orient="records")
    payload["details"] = result.details
    payload["failures"] = [asdict(f) for f in result.failures]
    if result.failures:
        payload["counterexample"] = asdict(result.failures[0])
    if config.monomial is not None and config.command == "expand":
        return payload, pd.DataFrame(result.details["expansion"])
    return payload, result.to_frame()


def _empty_table(command: str) -> pd.DataFrame:
    if command == "spectrum":
        return pd.DataFrame(columns=SPECTRUM_COLUMNS)
    if command == "multiplicity":
        return pd.DataFrame(columns=MULTIPLICITY_COLUMNS)
    return pd.DataFrame(columns=CHECK_COLUMNS)


def build_report(config: RunConfig) -> Report:
    """Run the configured command; numeric failures become a failed report with an empty table"""
    config.validate()
    logger.info(f"Running {config.command}")
    try:
        if config.command == "spectrum":
            return run_spectrum(config)
        if config.command == "multiplicity":
            return run_multiplicity(config)
        return run_suite(config)
    except (SpectrumError, SingularGramError) as exc:
        logger.error(f"{config.command} failed: {exc}")
        payload = _header(config, False)
        payload["counterexample"] = {"check": type(exc).__name__, "counterexample": str(exc)}
        return payload, _empty_table(config.command)


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """
    Execute one command and write its report

    Parameters:
    - config: run configuration (validated here; ConfigError propagates to the caller)
    - stream: output stream, standard output by default

    Returns:
    - exit status: 0 when every check passed, 1 otherwise
    """
    stream = stream or sys.stdout
    payload, frame = build_report(config)
    if config.format == "csv" and payload["counterexample"] is not None and frame.empty:
        logger.warning(f"{config.command} failed before producing rows; "
                       f"the counterexample is only in the json and text reports")
    stream.write(render(payload, frame, config.format))
    return payload["exit_code"]
