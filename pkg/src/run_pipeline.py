#!/usr/bin/env python3
"""
TRANSDUCTIONS - Verification Orchestrator
=========================================

Runs the verification phases (one per acceptance criterion) with
pre-flight checks, a progress bar and a timestamped log file.

USAGE:
------
# Run every verification phase (01-10)
python src/run_pipeline.py --all

# Run one phase
python src/run_pipeline.py --phase 03

# Skip phases whose reports already exist
python src/run_pipeline.py --all --skip-completed

# Tighter search budget for every phase
python src/run_pipeline.py --all --budget 100000

FEATURES:
---------
- Sequential execution, stop at the first failing phase
- Log file in outputs/logs/ with each phase's captured output
- Pre-flight checks: Python version, packages, free memory, disk space
- Progress tracking with tqdm
- Summary at completion

Version: 1.0.0
"""

import sys
import subprocess
import argparse
from pathlib import Path
from datetime import datetime
import time
import os
import platform

try:
    from tqdm import tqdm

    HAS_TQDM = True
except ImportError:
    HAS_TQDM = False
    print("WARNING: tqdm not installed. Progress bars disabled.")
    print("Install with: pip install tqdm")

try:
    import psutil

    HAS_PSUTIL = True
except ImportError:
    HAS_PSUTIL = False
    print("WARNING: psutil not installed. Memory and disk checks disabled.")
    print("Install with: pip install psutil")

try:
    sys.path.insert(0, str(Path(__file__).parent))
    from config import (
        PROJECT_ROOT, OUTPUT_DIR, LOGS_DIR, OUTPUT_FILES,
        PHASE_METADATA, BUDGET_ENV_VAR,
        ensure_output_dirs, get_phase_script_path, get_phase_defaults
    )
except ImportError:
    print("ERROR: Could not import config.py")
    print("Make sure config.py exists in src/ directory")
    sys.exit(1)

REQUIRED_PYTHON = (3, 9)
MIN_FREE_MEMORY_MB = 512


# ============================================================================
# LOGGING SETUP
# ============================================================================

class PipelineLogger:
    """Writes a timestamped log file and mirrors selected lines to the console."""

    def __init__(self, log_file: Path):
        self.log_file = log_file
        self.log_file.parent.mkdir(parents=True, exist_ok=True)
        self.start_time = datetime.now()

        with open(self.log_file, 'w', encoding='utf-8') as f:
            f.write("=" * 80 + "\n")
            f.write("TRANSDUCTIONS - VERIFICATION RUN\n")
            f.write("=" * 80 + "\n")
            f.write(f"Run ID: {self.log_file.stem}\n")
            f.write(f"Started: {self.start_time.strftime('%Y-%m-%d %H:%M:%S')}\n")
            f.write(f"Host: {platform.node()}\n")
            f.write(f"Python: {platform.python_version()}\n")
            f.write(f"Platform: {platform.system()} {platform.release()}\n")
            f.write(f"Project Root: {PROJECT_ROOT}\n")
            f.write(f"Search budget: {os.environ.get(BUDGET_ENV_VAR, 'default')}\n")
            f.write("=" * 80 + "\n\n")

    def log(self, message: str, level: str = "INFO", console: bool = True):
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        with open(self.log_file, 'a', encoding='utf-8') as f:
            f.write(f"[{timestamp}] [{level}] {message}\n")

        if console:
            if level == "INFO":
                print(message)
            else:
                print(f"{level}: {message}")

    def section(self, title: str):
        separator = "=" * 80
        self.log("\n" + separator, console=False)
        self.log(title, console=True)
        self.log(separator, console=False)

    def phase_start(self, phase_num: str, phase_name: str):
        self.section(f"Phase {phase_num}: {phase_name}")
        self.log("Status: RUNNING", console=False)

    def phase_success(self, phase_num: str, duration: float, outputs: list):
        self.log("Status: SUCCESS", level="SUCCESS")
        self.log(f"Duration: {duration:.1f}s", console=False)
        for output in outputs:
            self.log(f"  - {output}", console=False)

    def phase_error(self, phase_num: str, error_msg: str):
        self.log("Status: FAILED", level="ERROR")
        self.log(f"Error: {error_msg}", level="ERROR")

    def finalize(self, success: bool, phases_run: int, total_duration: float):
        self.section("VERIFICATION SUMMARY")
        self.log(f"Completed: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
        self.log(f"Total Duration: {total_duration:.1f}s ({total_duration / 60:.1f}m)")
        self.log(f"Phases Executed: {phases_run}")
        if success:
            self.log("Verification Status: ALL PHASES PASSED", level="SUCCESS")
        else:
            self.log("Verification Status: FAILED", level="ERROR")
        self.log("=" * 80)
        self.log(f"\nLog saved to: {self.log_file}")


# ============================================================================
# PRE-FLIGHT CHECKS
# ============================================================================

def check_python_version(logger: PipelineLogger) -> bool:
    version = sys.version_info
    if version >= REQUIRED_PYTHON:
        logger.log(f"Python version: {version.major}.{version.minor}.{version.micro} (OK)", console=False)
        return True
    logger.log(f"Python version: {version.major}.{version.minor}.{version.micro} "
               f"(requires >= {REQUIRED_PYTHON[0]}.{REQUIRED_PYTHON[1]})", level="ERROR")
    return False


def check_required_packages(logger: PipelineLogger) -> bool:
    required_packages = {
        'networkx': 'networkx',
        'numpy': 'numpy',
        'pandas': 'pandas',
        'lark': 'lark',
    }

    missing = []
    for display_name, import_name in required_packages.items():
        try:
            __import__(import_name)
            logger.log(f"Package {display_name}: OK", console=False)
        except ImportError:
            missing.append(display_name)
            logger.log(f"Package {display_name}: MISSING", level="WARNING", console=False)

    if missing:
        logger.log(f"Missing packages: {', '.join(missing)}", level="ERROR")
        logger.log("Install with: pip install " + " ".join(missing), level="ERROR")
        return False
    return True


def check_memory(logger: PipelineLogger, required_mb: int = MIN_FREE_MEMORY_MB) -> bool:
    """Exhaustive searches hold memo tables in RAM; refuse to start when memory is short."""
    if not HAS_PSUTIL:
        logger.log("Memory check skipped (psutil not installed)", level="WARNING", console=False)
        return True
    available_mb = psutil.virtual_memory().available / (1024 * 1024)
    if available_mb < required_mb:
        logger.log(f"Insufficient memory: {available_mb:.0f} MB available "
                   f"(requires >= {required_mb} MB)", level="ERROR")
        return False
    logger.log(f"Memory: {available_mb:.0f} MB available (OK)", console=False)
    return True


def check_disk_space(logger: PipelineLogger, required_mb: int = 50) -> bool:
    if not HAS_PSUTIL:
        logger.log("Disk space check skipped (psutil not installed)", level="WARNING", console=False)
        return True
    try:
        free_mb = psutil.disk_usage(str(OUTPUT_DIR.parent)).free / (1024 * 1024)
    except OSError as e:
        logger.log(f"Disk space check failed: {e}", level="WARNING", console=False)
        return True
    if free_mb < required_mb:
        logger.log(f"Insufficient disk space: {free_mb:.1f} MB free "
                   f"(requires >= {required_mb} MB)", level="ERROR")
        return False
    logger.log(f"Disk space: {free_mb:.1f} MB free (OK)", console=False)
    return True


def check_phase_completed(phase_num: str) -> bool:
    """A phase is complete when every report it lists exists."""
    outputs = PHASE_METADATA[phase_num]['outputs']
    return bool(outputs) and all(OUTPUT_FILES[key].exists() for key in outputs)


def run_preflight_checks(logger: PipelineLogger) -> bool:
    logger.section("PRE-FLIGHT CHECKS")

    checks = [
        ("Python version", check_python_version),
        ("Required packages", check_required_packages),
        ("Memory", check_memory),
        ("Disk space", check_disk_space),
    ]

    all_passed = True
    for check_name, check_func in checks:
        logger.log(f"Checking {check_name}...", console=False)
        if check_func(logger):
            logger.log(f"  [{check_name}] OK")
        else:
            logger.log(f"  [{check_name}] FAILED", level="ERROR")
            all_passed = False
    return all_passed


# ============================================================================
# PHASE EXECUTION
# ============================================================================

def build_phase_command(phase_num: str) -> list:
    """Phase script plus its default options from PIPELINE_DEFAULTS."""
    cmd = [sys.executable, str(get_phase_script_path(phase_num))]
    for key, value in get_phase_defaults(phase_num).items():
        if value is None:
            continue
        arg_name = f"--{key.replace('_', '-')}"
        if isinstance(value, bool):
            if value:
                cmd.append(arg_name)
        else:
            cmd.extend([arg_name, str(value)])
    return cmd


def _log_streams(logger: PipelineLogger, stdout: bytes, stderr: bytes) -> str:
    stdout_text = stdout.decode('utf-8', errors='replace') if stdout else ''
    stderr_text = stderr.decode('utf-8', errors='replace') if stderr else ''
    if stdout_text:
        logger.log("STDOUT:", console=False)
        logger.log(stdout_text, console=False)
    if stderr_text:
        logger.log("STDERR:", console=False)
        logger.log(stderr_text, console=False)
    return stderr_text


def execute_phase(phase_num: str, logger: PipelineLogger, skip_completed: bool = False,
                  budget: int = None) -> bool:
    metadata = PHASE_METADATA[phase_num]
    logger.phase_start(phase_num, metadata['name'])

    if skip_completed and check_phase_completed(phase_num):
        logger.log(f"Phase {phase_num} reports already exist - SKIPPING")
        return True

    cmd = build_phase_command(phase_num)
    logger.log(f"Command: {' '.join(cmd)}", console=False)

    env = os.environ.copy()
    env['PYTHONIOENCODING'] = 'utf-8'
    if budget is not None:
        env[BUDGET_ENV_VAR] = str(budget)

    start_time = time.time()
    try:
        result = subprocess.run(cmd, capture_output=True, check=True, cwd=PROJECT_ROOT, env=env)
    except subprocess.CalledProcessError as e:
        duration = time.time() - start_time
        stderr_text = _log_streams(logger, e.stdout, e.stderr)
        error_msg = f"Exit code {e.returncode}"
        if stderr_text:
            error_msg += f" | {stderr_text[:200]}"
        logger.phase_error(phase_num, error_msg)
        print(f"  Phase {phase_num} FAILED after {duration:.1f}s")
        return False
    except OSError as e:
        logger.phase_error(phase_num, str(e))
        return False

    duration = time.time() - start_time
    _log_streams(logger, result.stdout, result.stderr)
    outputs = [
        str(OUTPUT_FILES[key].relative_to(PROJECT_ROOT))
        for key in metadata['outputs'] if OUTPUT_FILES[key].exists()
    ]
    logger.phase_success(phase_num, duration, outputs)
    print(f"  Phase {phase_num} completed in {duration:.1f}s")
    return True


def execute_pipeline(phases: list, logger: PipelineLogger, skip_completed: bool = False,
                     budget: int = None) -> tuple:
    logger.section("VERIFICATION")

    phases_run = 0
    phase_iterator = tqdm(phases, desc="Verification", unit="phase") if HAS_TQDM else phases

    for phase_num in phase_iterator:
        if HAS_TQDM:
            phase_iterator.set_description(f"Phase {phase_num}: {PHASE_METADATA[phase_num]['name']}")

        success = execute_phase(phase_num, logger, skip_completed=skip_completed, budget=budget)
        phases_run += 1

        if not success:
            logger.log(f"\nVerification stopped at Phase {phase_num}", level="ERROR")
            logger.log(f"  Inspect the failing instances in {OUTPUT_FILES[PHASE_METADATA[phase_num]['outputs'][0]]}")
            logger.log(f"  Re-run alone: python {get_phase_script_path(phase_num)}")
            return False, phases_run

    return True, phases_run


# ============================================================================
# MAIN
# ============================================================================

def get_phases_to_run(args: argparse.Namespace) -> list:
    if args.phase:
        phase_num = args.phase.zfill(2)
        if phase_num not in PHASE_METADATA:
            print(f"ERROR: Unknown phase: {args.phase}")
            print(f"Valid phases: {', '.join(sorted(PHASE_METADATA))}")
            sys.exit(1)
        return [phase_num]
    return sorted(PHASE_METADATA)


def main():
    parser = argparse.ArgumentParser(
        description="TRANSDUCTIONS - Verification Orchestrator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python src/run_pipeline.py --all
  python src/run_pipeline.py --all --skip-completed
  python src/run_pipeline.py --phase 07

Logs are saved to: outputs/logs/verification_run_YYYYMMDD_HHMMSS.log
        """
    )
    parser.add_argument('--all', action='store_true', help='Run every verification phase (01-10)')
    parser.add_argument('--phase', type=str, help='Run one phase only (e.g., 03)')
    parser.add_argument('--skip-completed', action='store_true', help='Skip phases whose reports exist')
    parser.add_argument('--budget', type=int, help=f'Search budget for every phase (sets {BUDGET_ENV_VAR})')
    args = parser.parse_args()

    if not args.all and not args.phase:
        parser.print_help()
        sys.exit(1)

    ensure_output_dirs()

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_file = LOGS_DIR / f"verification_run_{timestamp}.log"
    logger = PipelineLogger(log_file)

    print("=" * 80)
    print("TRANSDUCTIONS - VERIFICATION RUN")
    print("=" * 80)
    print(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print(f"Log file: {log_file}")
    if args.skip_completed:
        print("Mode: Skip completed phases")
    print("=" * 80)

    if not run_preflight_checks(logger):
        logger.log("\nPre-flight checks failed. Aborting.", level="ERROR")
        logger.finalize(False, 0, 0)
        sys.exit(1)

    phases = get_phases_to_run(args)
    logger.section("EXECUTION PLAN")
    for phase_num in phases:
        metadata = PHASE_METADATA[phase_num]
        logger.log(f"  Phase {phase_num}: {metadata['name']} - {metadata['description']}")

    start_time = time.time()
    success, phases_run = execute_pipeline(phases, logger, args.skip_completed, args.budget)
    total_duration = time.time() - start_time
    logger.finalize(success, phases_run, total_duration)

    print("\n" + "=" * 80)
    print("Status: ALL PHASES PASSED" if success else "Status: FAILED")
    print("=" * 80)
    print(f"Reports: {OUTPUT_DIR}")
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
