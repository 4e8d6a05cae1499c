"""
Check-suite orchestrator

State Contract:
- Input: config (RunConfig), command (required), options (command-specific)
- Output: reports (ordered list of CheckReport), errors, dumps

Supported Commands:
- "relations": Hecke, duplex and Matsumoto relation audits (options: family)
- "omega": omega transport for one (I, J) pair or all pairs (options: I, J, literal)
- "qaction": one generator (options: gen, dump) or the quantum sanity suite
- "schur": q-Schur checks on V_n^{(x)m} (options: ambient)
- "duality": double centralizer (options: side, omit)
- "semisimple": trace-form test for both image algebras
- "report-all": every suite in a fixed sequence

Report order never depends on completion order: the graph ends with
order_reports (see ordering.py).

Run Tests:
    pytest tests/
"""

import time
from functools import partial
from pathlib import Path
from typing import Callable, Optional

from dotenv import load_dotenv
from langgraph.graph import END, StateGraph

from commutant import double_centralizer_check, permutation_module_check, semisimplicity_check
from duplex import check_all_omega, check_duplex_relations, check_omega, duplex_generators
from heckeb import check_hecke_relations, check_matsumoto
from iquantum import (
    check_levi_actions,
    check_projectors,
    check_quantum_relations,
    generator_report,
    levi_generators,
)
from models import CheckReport, RunConfig, SuiteState
from ordering import order_reports
from tensorspace import basis_cap_override, op_dump, space_dimension

# Load environment variables once at the orchestrator level
load_dotenv()

COMMAND_NODES = {
    "relations": "relations_node",
    "omega": "omega_node",
    "qaction": "qaction_node",
    "schur": "schur_node",
    "duality": "duality_node",
    "semisimple": "semisimple_node",
    "report-all": "report_all_node",
}

RELATION_FAMILIES = ("heckeB", "duplex", "matsumoto")

Job = Callable[[], CheckReport]


def _run(label: str, name: str, job: Job) -> tuple[Optional[CheckReport], Optional[str]]:
    """Run one check, time it and print a tagged summary line."""
    start = time.perf_counter()
    try:
        report = job()
    except Exception as e:
        print(f"[{label}] [X] {name} error: {e}")
        return None, f"{label} error in {name}: {str(e)}"
    report = report.model_copy(update={"wall_time": round(time.perf_counter() - start, 3)})
    print(f"[{label}] {report.summary_line()}")
    return report, None


def run_jobs(state: SuiteState, label: str, jobs: list[tuple[str, Job]]) -> SuiteState:
    """
    Helper that runs checks with error handling.
    An exception in one check is recorded in errors; the remaining checks still run.
    The configured cap is the basis guard while the checks run.
    """
    reports = list(state.reports)
    errors = list(state.errors)
    for name, job in jobs:
        with basis_cap_override(state.config.cap):
            report, error = _run(label, name, job)
        if report is not None:
            reports.append(report)
        if error is not None:
            errors.append(error)
    return state.model_copy(update={"reports": reports, "errors": errors})


def validate_config(state: SuiteState) -> SuiteState:
    """
    Reject unknown commands and turn an oversized basis into a skipped report.
    """
    if state.command not in COMMAND_NODES:
        errors = state.errors + [f"Unknown command {state.command!r}"]
        return state.model_copy(update={"errors": errors})

    config = state.config
    if not config.within_cap:
        size = space_dimension(config.r, config.m)
        reason = f"basis size (2r+4)^m = {size} exceeds cap {config.cap}"
        print(f"[Config] [!] {state.command} skipped: {reason}")
        report = CheckReport.skipped(state.command, state.command, config.params(), reason)
        return state.model_copy(update={"reports": state.reports + [report]})
    return state


def route_command(state: SuiteState) -> str:
    """
    Route to the suite node for the command.
    Invalid or skipped runs go straight to ordering.
    """
    if state.errors or not state.config.within_cap:
        return "order_reports"
    return COMMAND_NODES[state.command]


def _relation_jobs(config: RunConfig, family: Optional[str]) -> list[tuple[str, Job]]:
    r, m = config.r, config.m
    jobs = {
        "heckeB": ("hecke_relations", partial(check_hecke_relations, r, m)),
        "duplex": ("duplex_relations", partial(check_duplex_relations, r, m, seed=config.seed)),
        "matsumoto": ("matsumoto", partial(check_matsumoto, r, m)),
    }
    if family is None:
        return [jobs[name] for name in RELATION_FAMILIES]
    if family not in jobs:
        raise ValueError(f"Unknown relation family {family!r}")
    return [jobs[family]]


def relations_node(state: SuiteState) -> SuiteState:
    """Run the relation audits for the requested family (all families by default)."""
    try:
        jobs = _relation_jobs(state.config, state.options.get("family"))
    except ValueError as e:
        return state.model_copy(update={"errors": state.errors + [str(e)]})
    return run_jobs(state, "Relations", jobs)


def omega_node(state: SuiteState) -> SuiteState:
    """Omega transport for one (I, J) pair, or exhaustively when no pair is given."""
    config, options = state.config, state.options
    literal = bool(options.get("literal", False))
    if "I" in options or "J" in options:
        I, J = options.get("I", []), options.get("J", [])
        job = partial(check_omega, I, J, config.r, config.m, literal=literal)
        return run_jobs(state, "Omega", [("omega_transport", job)])
    job = partial(check_all_omega, config.r, config.m, literal=literal)
    return run_jobs(state, "Omega", [("omega_transport_all", job)])


def _generator_job(config: RunConfig, label: str, dump_dir: Optional[str], dumps: list[str]) -> Job:
    """Report on one generator; the sparse dump path (if any) is appended to dumps."""

    def job() -> CheckReport:
        report, op = generator_report(label, config.r, config.m)
        if dump_dir:
            target = Path(dump_dir)
            target.mkdir(parents=True, exist_ok=True)
            path = target / f"{label}_r{config.r}_m{config.m}.txt"
            path.write_text(op_dump(op))
            dumps.append(str(path))
            report = report.model_copy(update={"notes": report.notes + [f"dump: {path}"]})
        return report

    return job


def qaction_node(state: SuiteState) -> SuiteState:
    """
    Single generator (with optional sparse dump), or the quantum sanity suite:
    quantum relations, Levi level audit and the projectors G_l.
    """
    config = state.config
    label = state.options.get("gen")
    if label:
        dumps = list(state.dumps)
        job = _generator_job(config, label, state.options.get("dump"), dumps)
        state = run_jobs(state, "QAction", [("generator_action", job)])
        return state.model_copy(update={"dumps": dumps})
    jobs = [
        ("quantum_relations", partial(check_quantum_relations, config.r, config.m)),
        ("levi_actions", partial(check_levi_actions, config.r, config.m)),
        ("projectors", partial(check_projectors, config.r, config.m)),
    ]
    return run_jobs(state, "QAction", jobs)


def _schur_jobs(config: RunConfig, ambients: list[int]) -> list[tuple[str, Job]]:
    return [
        ("q_schur", partial(permutation_module_check, config.r, config.m, n, mode=config.mode, seed=config.seed))
        for n in ambients
    ]


def schur_node(state: SuiteState) -> SuiteState:
    """q-Schur checks on V_n^{(x)m}; n defaults to the full enhanced dimension 2r+4."""
    config = state.config
    n = int(state.options.get("ambient") or 2 * config.r + 4)
    return run_jobs(state, "Schur", _schur_jobs(config, [n]))


def _duality_job(config: RunConfig, side: str, omit: list[str], spot_check: Optional[bool] = None) -> tuple[str, Job]:
    job = partial(
        double_centralizer_check,
        config.r,
        config.m,
        side=side,
        mode=config.mode,
        seed=config.seed,
        omit=omit,
        spot_check=config.spot_check if spot_check is None else spot_check,
    )
    return f"double_centralizer_{side}", job


def duality_node(state: SuiteState) -> SuiteState:
    """Double centralizer for the Levi or the full side."""
    side = state.options.get("side") or "levi"
    omit = list(state.options.get("omit") or [])
    return run_jobs(state, "Duality", [_duality_job(state.config, side, omit)])


def _semisimple_jobs(config: RunConfig) -> list[tuple[str, Job]]:
    r, m = config.r, config.m

    def duplex_image() -> CheckReport:
        ops = [op for _, op in duplex_generators(r, m)]
        return semisimplicity_check(ops, config.mode, config.seed, name="duplex", r=r, m=m)

    def levi_image() -> CheckReport:
        ops = [op for _, op in levi_generators(r, m)]
        return semisimplicity_check(ops, config.mode, config.seed, name="levi", r=r, m=m)

    return [("semisimple_duplex", duplex_image), ("semisimple_levi", levi_image)]


def semisimple_node(state: SuiteState) -> SuiteState:
    """Trace-form semisimplicity of Xi(duplex) and of the Levi image."""
    return run_jobs(state, "Semisimple", _semisimple_jobs(state.config))


def report_all_node(state: SuiteState) -> SuiteState:
    """
    Run every suite in a fixed sequence:
    relations -> omega -> qaction sanity -> schur -> duality levi -> duality full -> semisimple.
    """
    config = state.config
    print("=" * 60)
    print(f"Full report r={config.r} m={config.m} mode={config.mode} seed={config.seed}")
    print("=" * 60)

    current = run_jobs(state, "Relations", _relation_jobs(config, None))
    current = run_jobs(
        current, "Omega", [("omega_transport_all", partial(check_all_omega, config.r, config.m))]
    )
    current = qaction_node(current.model_copy(update={"options": {}}))
    current = run_jobs(current, "Schur", _schur_jobs(config, [2 * config.r + 2, 2 * config.r + 4]))
    # evaluated duality ranks are always confirmed exactly in a full report
    current = run_jobs(
        current,
        "Duality",
        [_duality_job(config, "levi", [], spot_check=True), _duality_job(config, "full", [], spot_check=True)],
    )
    current = run_jobs(current, "Semisimple", _semisimple_jobs(config))

    failed = sum(1 for rep in current.reports if rep.status == "fail")
    total = sum(rep.wall_time or 0.0 for rep in current.reports)
    print("=" * 60)
    print(f"{len(current.reports)} reports, {failed} failed, {len(current.errors)} errors, {total:.2f}s total")
    print("=" * 60)
    return current.model_copy(update={"options": state.options})


def order_reports_node(state: SuiteState) -> SuiteState:
    """
    Order reports by suite, check name and parameters.
    """
    return state.model_copy(update={"reports": order_reports(state.reports)})


def build_graph() -> StateGraph:
    workflow = StateGraph(SuiteState)

    workflow.add_node("validate_config", validate_config)
    for node_name, node in (
        ("relations_node", relations_node),
        ("omega_node", omega_node),
        ("qaction_node", qaction_node),
        ("schur_node", schur_node),
        ("duality_node", duality_node),
        ("semisimple_node", semisimple_node),
        ("report_all_node", report_all_node),
    ):
        workflow.add_node(node_name, node)
        workflow.add_edge(node_name, "order_reports")
    workflow.add_node("order_reports", order_reports_node)

    workflow.set_entry_point("validate_config")
    workflow.add_conditional_edges(
        "validate_config",
        route_command,
        {**{name: name for name in COMMAND_NODES.values()}, "order_reports": "order_reports"},
    )
    workflow.add_edge("order_reports", END)
    return workflow


# Compile the graph
SUITE = build_graph().compile()


def run_suite(command: str, config: Optional[RunConfig] = None, options: Optional[dict] = None) -> SuiteState:
    """
    Invoke the compiled suite graph.

    Args:
        command: one of COMMAND_NODES
        config: run configuration (environment defaults when omitted)
        options: command-specific options

    Returns:
        Final SuiteState with ordered reports
    """
    state = SuiteState(config=config or RunConfig(), command=command, options=options or {})
    result = SUITE.invoke(state)
    # Convert dict result back to SuiteState if needed
    if isinstance(result, dict):
        return SuiteState(**result)
    return result


def report_all(config: Optional[RunConfig] = None) -> list[CheckReport]:
    """Every suite for one configuration, in report order."""
    state = run_suite("report-all", config)
    for error in state.errors:
        print(f"[X] {error}")
    return state.reports
