"""Deterministic ordering of check reports."""

import json

from models import CheckReport

# Suite priority order in a combined run
SUITE_ORDER: dict[str, int] = {
    "relations": 0,
    "omega": 1,
    "qaction": 2,
    "schur": 3,
    "duality": 4,
    "semisimple": 5,
}

# Checks inside a suite keep the order their jobs are listed in
CHECK_ORDER: dict[str, int] = {
    name: rank
    for rank, name in enumerate([
        "hecke_relations",
        "duplex_relations",
        "matsumoto",
        "omega_transport",
        "omega_transport_all",
        "quantum_relations",
        "levi_actions",
        "projectors",
        "generator_action",
        "q_schur",
        "double_centralizer_levi",
        "double_centralizer_full",
        "semisimple_duplex",
        "semisimple_levi",
    ])
}


def _parameter_key(parameters: dict) -> tuple:
    """Numbers compare numerically, everything else by canonical JSON."""
    key = []
    for name, value in sorted(parameters.items()):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            key.append((name, 0, value, ""))
        else:
            key.append((name, 1, 0, json.dumps(value, sort_keys=True)))
    return tuple(key)


def order_reports(reports: list[CheckReport]) -> list[CheckReport]:
    """
    Order reports by suite priority, then by job position inside the suite,
    then by parameters.

    Args:
        reports: List of reports in completion order

    Returns:
        Sorted list of reports
    """
    if not reports:
        return []

    return sorted(
        reports,
        key=lambda rep: (
            SUITE_ORDER.get(rep.suite, len(SUITE_ORDER)),
            CHECK_ORDER.get(rep.check, len(CHECK_ORDER)),
            rep.check,
            _parameter_key(rep.parameters),
        ),
    )
