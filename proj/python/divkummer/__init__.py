"""Exact computations with division in modules, (J,T)-extensions and
effective Kummer bounds.

The heavy lifting happens in the C++ extension; every operation is reached
through :func:`run`, which takes a command name and a JSON-style document
(the same schema the ``divkummer`` command-line tool reads).  A few common
operations have direct wrappers.
"""

import json as _json

try:
    from ._divkummer import commands, run as _raw_run
except ImportError:  # running against a build tree
    from _divkummer import commands, run as _raw_run

__all__ = [
    "commands",
    "run",
    "snf",
    "invariant_factors",
    "divide",
    "torsion",
    "hull",
    "kummer_bound",
    "subring_index",
    "h1",
    "RefusalError",
    "InputError",
]


class RefusalError(RuntimeError):
    """The mathematics refused the request (NotPure, NotNormal, ...)."""

    def __init__(self, report):
        super().__init__(report["error"].get("message", "refused"))
        self.report = report


class InputError(ValueError):
    def __init__(self, report):
        super().__init__(report["error"].get("message", "bad input"))
        self.report = report


def run(command, document=None, **kwargs):
    """Run a command; returns the full report. Raises on errors."""
    doc = dict(document or {})
    doc.update(kwargs)
    code, report = _raw_run(command, _json.dumps(doc))
    if code == 1:
        raise RefusalError(report)
    if code == 2:
        raise InputError(report)
    return report


def run_raw(command, document=None, **kwargs):
    """Like run(), but returns (exit_code, report) without raising."""
    doc = dict(document or {})
    doc.update(kwargs)
    return _raw_run(command, _json.dumps(doc))


def _mat(rows):
    return [[str(x) for x in row] for row in rows]


def snf(matrix):
    """Smith normal form; returns the report with u, s, v and the diagonal."""
    return run("snf", {"matrix": _mat(matrix)})["result"]


def _module(generators, relations, action=None):
    m = {"generators": generators, "relations": _mat(relations or [])}
    if action is not None:
        m["action"] = _mat(action)
    return m


def invariant_factors(generators, relations):
    """(rank, [d1, d2, ...]) of the cokernel of the relation rows."""
    inv = run("info", {"module": _module(generators, relations)})["result"]["invariants"]
    return inv["rank"], [int(d) for d in inv["factors"]]


def divide(generators, relations, submodule, filter):
    """J-division of the submodule inside the module; returns the result block."""
    doc = {
        "module": _module(generators, relations),
        "submodule": _mat(submodule),
        "filter": filter,
    }
    return run("divide", doc)["result"]["result"]


def torsion(generators, relations, filter):
    return run("torsion", {"module": _module(generators, relations), "filter": filter})[
        "result"
    ]["result"]


def hull(generators, relations, filter):
    return run("hull", {"module": _module(generators, relations), "filter": filter})[
        "result"
    ]["hull"]


def kummer_bound(d, n, m, rank, s, level, torsion=None):
    bound = {"d": str(d), "n": str(n), "m": str(m), "rank": rank, "s": s, "level": str(level)}
    if torsion:
        bound["torsion"] = [str(t) for t in torsion]
    return run("kummer-bound", {"bound": bound})["result"]


def subring_index(generators, level):
    doc = {"level": str(level), "generators": [_mat(g) for g in generators]}
    return int(run("subring-index", doc)["result"]["m"])


def h1(generators, relations, group):
    doc = {"module": _module(generators, relations), "group": [_mat(g) for g in group]}
    inv = run("h1", doc)["result"]["h1"]
    return [int(d) for d in inv["factors"]]
