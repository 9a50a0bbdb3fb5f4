import json

import pytest

from ncdef.artin import end_algebra
from ncdef.problems import FIXTURE_NAMES, load_problem, parse_problem
from ncdef.tower import run_tower

TERMINATING = ("fx_loop2", "fx_cyc2", "fx_aba", "fx_fat3")


@pytest.fixture(scope="session")
def problems():
    return {name: load_problem(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def towers(problems):
    out = {}
    for name in TERMINATING:
        out[name] = run_tower(problems[name].collection())
    out["fx_st"] = run_tower(problems["fx_st"].collection(), max_steps=10)
    return out


@pytest.fixture(scope="session")
def algebras(problems, towers):
    return {name: end_algebra(towers[name], problems[name].collection())
            for name in TERMINATING}


@pytest.fixture(scope="session")
def f2_problems():
    """The fixture problems reinterpreted over F_2."""
    from importlib import resources
    out = {}
    for name in ("fx_a2", "fx_cyc2", "fx_aba"):
        data = json.loads(resources.files("ncdef.fixtures")
                          .joinpath(name + ".json").read_text())
        data["field"] = {"Fp": 2}
        out[name] = parse_problem(data)
    return out
