from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tightlab import zoo
from tightlab.algebra import StructureConstantAlgebra
from tightlab.extension import ExtensionPresentation
from tightlab.scalars import FieldSpec

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Q = FieldSpec.rationals()
GF3 = FieldSpec.prime(3)

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-9, max_value=9)


def coords(n, elements=small_fractions):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def ground(field=Q, name="k"):
    return StructureConstantAlgebra(field, ["1"], [[[1]]], name=name)


@pytest.fixture(scope="session")
def sqrt2_ext():
    return ExtensionPresentation.from_generators(zoo.sqrt2(), [], name="sqrt2")


@pytest.fixture(scope="session")
def cbrt2_ext():
    return ExtensionPresentation.from_generators(zoo.cbrt2(), [], name="cbrt2")


@pytest.fixture(scope="session")
def f9_ext():
    return ExtensionPresentation.from_generators(zoo.f9(), [], name="f9")


@pytest.fixture(scope="session")
def quat_ext():
    H = zoo.quaternions()
    return ExtensionPresentation.from_generators(H, [H.gen("i")], name="quat")


def frac(text):
    return Fraction(text)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    ok = _criteria.get(number, (title, True))[1] and not rep.failed
    if rep.when == "call" or rep.failed:
        _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
