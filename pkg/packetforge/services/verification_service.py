# File: packetforge/packetforge/services/verification_service.py
# This file defines the VerificationService, which runs family grids, duality grids,
# endpoint identities, catalog cases and appendix points, optionally on a worker pool.

from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence
import logging

from packetforge.classical import BaseCusp
from packetforge.config import settings
from packetforge.critical import CaseReport, appendix_lemma, appendix_points, catalog, verify_case
from packetforge.core import HalfInt
from packetforge.errors import ConfigError
from packetforge.families import (
    CheckResult,
    check_duality_case,
    check_family_case,
    corollary_endpoints,
    default_grid,
    family_cases,
    kind_for,
)

# Configure logging
logger = logging.getLogger(__name__)


class VerificationService:
    """Service for running verification suites; --jobs N parallelizes grid and catalog points."""
    def __init__(self, jobs: Optional[int] = None, executor: str = "process"):
        self.jobs = max(1, jobs if jobs is not None else settings.DEFAULT_JOBS)
        if executor not in ("process", "thread"):
            raise ConfigError(f"Unknown executor {executor!r}")
        self.executor = executor

    def _pool(self) -> Executor:
        if self.executor == "thread":
            return ThreadPoolExecutor(max_workers=self.jobs)
        return ProcessPoolExecutor(max_workers=self.jobs)

    def map(self, fn: Callable[[Any], Any], items: Iterable[Any]) -> List[Any]:
        """Ordered map; results come back in input order whatever the pool size."""
        items = list(items)
        if self.jobs == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with self._pool() as pool:
            return list(pool.map(fn, items))

    def run_family(self, base: BaseCusp, size: int, signs: Sequence[int] = (1, -1)) -> List[CheckResult]:
        kind = kind_for(base.main_line)
        ms, ns = default_grid(kind, size)
        results = self.map(partial(check_family_case, base=base), family_cases(kind, ms, ns, signs))
        logger.info(f"family suite: {sum(r.equal for r in results)}/{len(results)} agree at α={base.main_line.alpha}")
        return results

    def run_duality(self, base: BaseCusp, size: int, signs: Sequence[int] = (1, -1)) -> List[CheckResult]:
        kind = kind_for(base.main_line)
        ms, ns = default_grid(kind, size)
        cases = [c for c in family_cases(kind, ms, ns, signs) if c.m != c.n]
        results = self.map(partial(check_duality_case, base=base), cases)
        logger.info(f"duality suite: {sum(r.equal for r in results)}/{len(results)} agree")
        return results

    def run_endpoints(self, base: BaseCusp, size: int) -> List[CheckResult]:
        return corollary_endpoints(base, list(range(-1, size + 1)))

    def run_catalog(self, base: BaseCusp, keys: Optional[Sequence[str]] = None, strict: Optional[bool] = None) -> List[CaseReport]:
        cases = catalog(base.main_line, keys)
        if keys:
            found = {c.key for c in cases}
            missing = [k for k in keys if k not in found]
            if missing:
                raise ConfigError(f"Case(s) {', '.join(missing)} do not apply at α={base.main_line.alpha}")
        reports = self.map(partial(verify_case, base=base, strict=strict), cases)
        logger.info(f"catalog suite: {sum(r.passed for r in reports)}/{len(reports)} cases pass")
        return reports

    def run_appendix(self, base: BaseCusp, xs: Optional[Sequence[HalfInt]] = None, strict: Optional[bool] = None) -> List[CheckResult]:
        points = list(xs) if xs else appendix_points(base.main_line)
        results = self.map(partial(appendix_lemma, base=base, strict=strict), points)
        logger.info(f"appendix suite: {sum(r.equal for r in results)}/{len(results)} points certified")
        return results

    def run_all(self, base: BaseCusp, size: int, strict: Optional[bool] = None) -> List[Dict[str, Any]]:
        """Every suite that applies at the base's α, as suite summaries."""
        twice = base.main_line.alpha.twice
        suites: List[Dict[str, Any]] = []

        def record(name: str, results: List[Any], ok: Callable[[Any], bool]) -> None:
            failures = [r.to_json() for r in results if not ok(r)]
            suites.append(
                {"name": name, "total": len(results), "passed": len(results) - len(failures), "pass": not failures, "failures": failures}
            )

        record("family", self.run_family(base, size), lambda r: r.equal)
        record("duality", self.run_duality(base, size), lambda r: r.equal)
        if twice >= 3:
            record("endpoints", self.run_endpoints(base, size), lambda r: r.equal)
        record("critical", self.run_catalog(base, strict=strict), lambda r: r.passed)
        if twice >= 2:
            record("appendix", self.run_appendix(base, strict=strict), lambda r: r.equal)
        return suites
