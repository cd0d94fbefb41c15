"""
Suite Orchestration Engine

Runs verification suites over their seeded instances in parallel and writes the
aggregated report.
"""

import asyncio
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, List, Optional

import pandas as pd
from loguru import logger

from .errors import ConfigError, LabError
from .report import LabSummary, SuiteSummary, VerificationReport
from .run_config import ALL_SUITES, ReportFormat, RunConfig
from .suite import SuiteInstance, VerificationSuite, get_suite_registry

CSV_COLUMNS = ["suite", "instance_id", "name", "lhs", "rhs", "margin", "pass", "diagnostic"]


def serialize_for_json(obj: Any) -> Any:
    """Recursively serialize objects for JSON output; non-finite floats become strings"""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "NaN" if math.isnan(obj) else ("Infinity" if obj > 0 else "-Infinity")
    elif isinstance(obj, Path):
        return str(obj)
    elif isinstance(obj, dict):
        return {k: serialize_for_json(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [serialize_for_json(item) for item in obj]
    else:
        return obj


class SuiteOrchestrator:
    """
    Orchestrates verification across suites.

    Usage:
        orchestrator = SuiteOrchestrator()
        summary = await orchestrator.run(config)
    """

    def __init__(self) -> None:
        self.suite_registry = get_suite_registry()

    def resolve(self, name: str) -> List[VerificationSuite]:
        """Suites named by a config; 'all' means every registered suite"""
        if name == ALL_SUITES:
            return self.suite_registry.list_all()
        suite = self.suite_registry.get(name)
        if suite is None:
            known = ", ".join(self.suite_registry.names())
            raise ConfigError(f"unknown suite '{name}' (known: {known}, {ALL_SUITES})")
        return [suite]

    async def run_suite(
        self,
        suite: VerificationSuite,
        config: RunConfig,
        executor: Optional[ThreadPoolExecutor] = None,
    ) -> SuiteSummary:
        """
        Run every instance of one suite.

        Args:
            suite: suite to run
            config: run configuration
            executor: worker pool; a private one sized by config.threads when None

        Returns:
            SuiteSummary with reports sorted by instance id

        Raises:
            LabError: an instance failed a precondition or a solver certificate
        """
        own_executor = executor is None
        executor = executor or ThreadPoolExecutor(max_workers=config.threads)
        name = suite.metadata.name
        started = time.perf_counter()
        try:
            instances = suite.build_instances(config)
            logger.info(f"Running {name}: {len(instances)} instances")
            loop = asyncio.get_running_loop()
            tasks = [
                loop.run_in_executor(executor, self._run_instance_safe, suite, instance, config)
                for instance in instances
            ]
            results = await asyncio.gather(*tasks)
        finally:
            if own_executor:
                executor.shutdown(wait=True)

        ordered = sorted(zip(instances, results), key=lambda pair: pair[0].instance_id)
        reports = [report for _, batch in ordered for report in batch]
        wall_time = time.perf_counter() - started
        summary = SuiteSummary.from_reports(
            name, len(instances), reports, wall_time if config.timings else None
        )
        if summary.failures:
            logger.warning(f"✗ {name}: {summary.failures} failing reports")
        else:
            logger.info(f"✓ {name}: {len(reports)} reports, all pass ({wall_time:.2f}s)")
        return summary

    def _run_instance_safe(
        self, suite: VerificationSuite, instance: SuiteInstance, config: RunConfig
    ) -> List[VerificationReport]:
        """
        Run one instance, logging failures with their instance id.

        LabErrors propagate; inequality violations are reports, not errors.
        """
        try:
            return suite.run_instance(instance, config)
        except LabError as e:
            logger.error(f"✗ {suite.metadata.name}/{instance.instance_id} failed: {e}")
            raise

    async def run(self, config: RunConfig) -> LabSummary:
        """Run the configured suite (or all suites) with one shared worker pool"""
        suites = self.resolve(config.suite)
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            summaries = [await self.run_suite(s, config, executor) for s in suites]
        summary = LabSummary(seed=config.seed, suites=summaries)
        logger.info(
            f"✓ Run complete: {summary.instances} instances, {summary.failures} failures"
            if not summary.failures
            else f"✗ Run complete: {summary.instances} instances, {summary.failures} failures"
        )
        return summary


def render_json(summary: LabSummary) -> str:
    """Schema-1 JSON document; key order and float repr are stable"""
    payload = summary.model_dump(by_alias=True, exclude_none=False)
    if all(s.wall_time is None for s in summary.suites):
        for suite in payload["suites"]:
            suite.pop("wall_time", None)
    return json.dumps(serialize_for_json(payload), indent=2) + "\n"


def render_csv(summary: LabSummary) -> str:
    """Flat projection: one row per report"""
    rows = [
        {
            "suite": suite.suite,
            "instance_id": report.instance_id,
            "name": report.name,
            "lhs": report.lhs,
            "rhs": report.rhs,
            "margin": report.margin,
            "pass": report.passed,
            "diagnostic": report.diagnostic,
        }
        for suite in summary.suites
        for report in suite.reports
    ]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return frame.to_csv(index=False, float_format="%.17g")


def write_summary(summary: LabSummary, config: RunConfig) -> None:
    """
    Write the summary to config.out (or stdout) in the configured format.

    Raises:
        ConfigError: the output path cannot be written
    """
    text = render_json(summary) if config.format is ReportFormat.JSON else render_csv(summary)
    if config.out is None:
        sys.stdout.write(text)
        return
    try:
        Path(config.out).write_text(text)
    except OSError as e:
        raise ConfigError(f"cannot write report to {config.out}: {e}") from e
    logger.info(f"Report written to {config.out}")


def run_lab(config: RunConfig) -> LabSummary:
    """Convenience wrapper: run synchronously"""
    return asyncio.run(SuiteOrchestrator().run(config))
