import pytest

import entwitness as ew

_RUN_CACHE: dict[str, tuple] = {}


@pytest.fixture(scope="session")
def preset_run():
    """Run a named preset once per session and cache (trajectory, report)."""

    def run(preset_id: str):
        if preset_id not in _RUN_CACHE:
            _RUN_CACHE[preset_id] = ew.run_scenario(ew.PRESETS[preset_id])
        return _RUN_CACHE[preset_id]

    return run
