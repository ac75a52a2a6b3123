import pytest

from cubic import selftest
from cubic.errors import InvalidInputError


@pytest.fixture
def scratch_check():
    names = []

    def add(name, func):
        selftest.register(name, func)
        names.append(name)

    yield add
    for name in names:
        selftest.unregister(name)


def test_builtin_checks_are_registered():
    names = selftest.get_checks()
    for expected in ("small-tables", "example-63601", "reciprocity", "rules-consistency", "oracle-closure"):
        assert expected in names


def test_crashing_check_does_not_stop_others(scratch_check):
    def boom(scale):
        raise RuntimeError("nope")

    scratch_check("scratch-boom", boom)
    scratch_check("scratch-ok", lambda scale: (3, []))
    results = selftest.run_all("quick", only=["scratch-boom", "scratch-ok"])
    by_name = {r.name: r for r in results}
    assert by_name["scratch-boom"].error == "RuntimeError: nope"
    assert not by_name["scratch-boom"].ok
    assert by_name["scratch-ok"].ok
    assert by_name["scratch-ok"].checked == 3


def test_failures_are_collected(scratch_check):
    scratch_check("scratch-fail", lambda scale: (2, [f"{scale.name}: broken"]))
    [result] = selftest.run_all(selftest.FULL, only=["scratch-fail"])
    assert result.failures == ["full: broken"]
    assert not result.ok


def test_register_requires_callable():
    with pytest.raises(TypeError):
        selftest.register("scratch-bad", 42)


def test_unknown_level_and_check():
    with pytest.raises(InvalidInputError):
        selftest.run_all("medium")
    with pytest.raises(InvalidInputError):
        selftest.run_all("quick", only=["no-such-check"])


@pytest.mark.parametrize(
    "name",
    [
        "example-63601",
        "example-large-prime",
        "cubic-t3-7t-7",
        "euler-criterion",
        "value-census",
        "partition",
        "rules-consistency",
    ],
)
def test_fast_checks_pass(name):
    [result] = selftest.run_all("quick", only=[name])
    assert result.ok, (result.error, result.failures[:5])
