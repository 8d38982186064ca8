"""
TRANSDUCTIONS - Phase Reporting Utilities
=========================================

Console and file reporting shared by the verification phases. Every
phase collects one row per checked instance, prints a banner per step
and finally writes a CSV of the rows and a JSON summary.

Functions:
    - print_banner: the "=" * 70 framed title
    - print_step: a numbered STEP header
    - CheckLog: collects instance rows and counts failures
    - save_phase_report: CSV + JSON summary for one phase
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

WIDTH = 70


def print_banner(title: str, using_config: bool = True) -> None:
    print("=" * WIDTH)
    print(f"TRANSDUCTIONS - {title.upper()}")
    print("=" * WIDTH)
    if using_config:
        print("(Using centralized config)")


def print_step(number: int, title: str) -> None:
    print("\n" + "=" * WIDTH)
    print(f"STEP {number}: {title.upper()}")
    print("=" * WIDTH)


@dataclass
class CheckLog:
    """
    Rows of checked instances for one phase.

    Each row carries at least a `check` name, an `instance` label and a
    boolean `passed`; extra keyword arguments become extra CSV columns.
    """

    phase: str
    rows: List[Dict[str, Any]] = field(default_factory=list)
    started: float = field(default_factory=time.time)

    def record(self, check: str, instance: str, passed: bool, detail: str = "", **extra: Any) -> bool:
        row = {"check": check, "instance": instance, "passed": bool(passed), "detail": detail}
        row.update(extra)
        self.rows.append(row)
        if not passed:
            print(f"  [FAIL] {check}: {instance} {detail}".rstrip())
        return bool(passed)

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [row for row in self.rows if not row["passed"]]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def summary(self) -> Dict[str, Any]:
        df = self.frame()
        per_check: Dict[str, Dict[str, int]] = {}
        if not df.empty:
            grouped = df.groupby("check")["passed"].agg(["count", "sum"])
            per_check = {
                name: {"instances": int(row["count"]), "passed": int(row["sum"])}
                for name, row in grouped.iterrows()
            }
        return {
            "phase": self.phase,
            "instances": len(self.rows),
            "failures": len(self.failures),
            "passed": not self.failures,
            "duration_seconds": round(time.time() - self.started, 2),
            "checks": per_check,
        }

    def print_check_table(self) -> None:
        summary = self.summary()
        print(f"\n{'Check':<40} {'Instances':>10} {'Passed':>10}")
        print("-" * 62)
        for name, stats in summary["checks"].items():
            print(f"{name:<40} {stats['instances']:>10,} {stats['passed']:>10,}")


def save_phase_report(log: CheckLog, results_path: Path, summary_path: Path,
                      extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Write the rows as CSV and the summary as JSON; returns the summary."""
    results_path.parent.mkdir(parents=True, exist_ok=True)
    log.frame().to_csv(results_path, index=False)
    print(f"[OK] Saved: {results_path.name}")

    summary = log.summary()
    if extra:
        summary.update(extra)
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2, sort_keys=False)
    print(f"[OK] Saved: {summary_path.name}")
    return summary


def print_verdict(log: CheckLog) -> bool:
    """Final PASSED / FAILED block; returns whether every instance passed."""
    failures = log.failures
    print("\n" + "=" * WIDTH)
    if failures:
        print(f"[FAIL] {len(failures)} of {len(log.rows)} instances failed")
        for row in failures[:10]:
            print(f"  - {row['check']}: {row['instance']} {row['detail']}".rstrip())
    else:
        print(f"[OK] All {len(log.rows):,} instances passed")
    print("=" * WIDTH)
    return not failures
