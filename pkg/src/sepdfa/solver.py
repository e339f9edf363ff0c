"""Bridge to an external DIMACS SAT solver subprocess.

The solver is a black box: it gets CNF text through stdin or a temporary
file and must answer with SAT-competition output, an "s" status line plus
"v" value lines, and exit status 10 for satisfiable or 20 for
unsatisfiable.  Both channels are cross-checked, and satisfying models
are validated against the formula before anyone gets to rely on them.
"""

from __future__ import annotations

import os
import re
import shlex
import shutil
import signal
import subprocess
import tempfile
import time
from dataclasses import dataclass
from typing import Sequence

from .encoding import CnfFormula, emit_dimacs

DEFAULT_SOLVER_COMMAND = "cadical"

# Formulas above this size go through a temporary file even when stdin
# delivery was requested; huge pipe writes risk blocking against solvers
# that do not drain their input promptly.
STDIN_SIZE_LIMIT = 64 * 1024 * 1024

_ANSI_RE = re.compile(r"\x1b\[[0-9;?]*[A-Za-z]|\x1b.|[\r\x07]")
_STATUS_RE = re.compile(r"^s\s+(SATISFIABLE|UNSATISFIABLE)\b")


class SolverError(RuntimeError):
    """The solver failed, lied, or spoke an unknown dialect."""


class SolverTimeoutError(SolverError):
    """The solver exceeded its wall-clock budget and was killed."""


@dataclass(frozen=True)
class SolverVerdict:
    outcome: str  # "sat" or "unsat"
    model: dict[int, bool] | None
    wall_time: float


def parse_solver_output(text: str) -> tuple[str, dict[int, bool]]:
    """Extract the status and variable assignment from solver stdout.

    Comment lines are skipped, status and value lines may come in any
    order, terminal escape noise is stripped, and decorated status lines
    ("s SATISFIABLE: file.cnf") still count.  Several status lines must
    agree.
    """
    outcome: str | None = None
    assignment: dict[int, bool] = {}
    done_values = False
    for raw in _ANSI_RE.sub("", text).splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        status = _STATUS_RE.match(line)
        if status is not None:
            found = "sat" if status.group(1) == "SATISFIABLE" else "unsat"
            if outcome is not None and outcome != found:
                raise SolverError("solver printed conflicting status lines")
            outcome = found
            continue
        if line.startswith("v"):
            if done_values:
                continue
            for token in line.split()[1:]:
                try:
                    lit = int(token)
                except ValueError:
                    raise SolverError(
                        f"malformed literal in value line: {token!r}") from None
                if lit == 0:
                    done_values = True
                    break
                assignment[abs(lit)] = lit > 0
    if outcome is None:
        raise SolverError("no status line in solver output")
    return outcome, assignment


def _kill_process_tree(proc: subprocess.Popen) -> None:
    try:
        os.killpg(os.getpgid(proc.pid), signal.SIGKILL)
    except (ProcessLookupError, PermissionError, OSError):
        proc.kill()


def solve(formula: CnfFormula, solver_command: str | Sequence[str] = DEFAULT_SOLVER_COMMAND,
          timeout: float | None = None, use_stdin: bool = False,
          stdin_size_limit: int = STDIN_SIZE_LIMIT) -> SolverVerdict:
    """Run the solver on the formula and return its checked verdict.

    The DIMACS file lands in a temporary file whose path is appended to
    the command line; with use_stdin the text is piped instead, unless it
    exceeds stdin_size_limit.  On timeout the whole solver process group
    is killed and SolverTimeoutError is raised.
    """
    if isinstance(solver_command, str):
        command = shlex.split(solver_command)
    else:
        command = list(solver_command)
    if not command:
        raise SolverError("empty solver command")
    text = emit_dimacs(formula)
    via_stdin = use_stdin and len(text) <= stdin_size_limit
    temp_path: str | None = None
    try:
        if via_stdin:
            argv = command
        else:
            fd, temp_path = tempfile.mkstemp(prefix="sepdfa-", suffix=".cnf")
            with os.fdopen(fd, "w") as handle:
                handle.write(text)
            argv = command + [temp_path]
        started = time.monotonic()
        try:
            proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE if via_stdin else subprocess.DEVNULL,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                text=True,
                start_new_session=True,
            )
        except FileNotFoundError:
            raise SolverError(f"solver command not found: {command[0]}") from None
        try:
            stdout, stderr = proc.communicate(
                input=text if via_stdin else None, timeout=timeout)
        except subprocess.TimeoutExpired:
            _kill_process_tree(proc)
            proc.communicate()
            raise SolverTimeoutError(
                f"solver exceeded {timeout} seconds") from None
        wall_time = time.monotonic() - started
    finally:
        if temp_path is not None:
            try:
                os.unlink(temp_path)
            except OSError:
                pass

    if proc.returncode == 10:
        outcome = "sat"
    elif proc.returncode == 20:
        outcome = "unsat"
    else:
        detail = (stderr or stdout or "").strip().splitlines()
        tail = detail[-1] if detail else "no output"
        raise SolverError(
            f"solver exited with status {proc.returncode}: {tail}")
    printed, assignment = parse_solver_output(stdout)
    if printed != outcome:
        raise SolverError(
            f"status line says {printed} but exit code says {outcome}")
    if outcome == "unsat":
        return SolverVerdict("unsat", None, wall_time)
    for var in range(1, formula.variable_count + 1):
        if var not in assignment:
            raise SolverError(f"model leaves variable {var} unassigned")
    for var in assignment:
        if var > formula.variable_count:
            raise SolverError(f"model assigns unknown variable {var}")
    for clause in formula.clauses:
        if not any(assignment[abs(lit)] == (lit > 0) for lit in clause):
            raise SolverError("model does not satisfy the formula")
    return SolverVerdict("sat", assignment, wall_time)


_PROBE_CANDIDATES: tuple[tuple[str, ...], ...] = (
    ("cadical",),
    ("kissat",),
    ("cryptominisat5",),
    ("glucose", "-model"),
    ("splr", "-C", "-q", "-r", "-"),
)


def find_solver(candidates: Sequence[Sequence[str]] | None = None) -> list[str] | None:
    """First working solver command, or None.

    The SEPDFA_SOLVER environment variable, when set, is tried first.
    Each candidate must solve a one-variable probe formula correctly.
    """
    probes: list[list[str]] = []
    env = os.environ.get("SEPDFA_SOLVER")
    if env:
        probes.append(shlex.split(env))
    if candidates is None:
        probes.extend(list(c) for c in _PROBE_CANDIDATES)
    else:
        probes.extend(list(c) for c in candidates)
    probe_formula = CnfFormula(1, ((1,),))
    for command in probes:
        if not command or shutil.which(command[0]) is None:
            continue
        try:
            verdict = solve(probe_formula, command, timeout=10)
        except SolverError:
            continue
        if verdict.outcome == "sat" and verdict.model == {1: True}:
            return command
    return None
