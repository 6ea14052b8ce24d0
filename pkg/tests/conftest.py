import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="also run the long checks (size-11 solve, size-7 grid enumeration)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="opt in with --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True, scope="session")
def _isolated_ground_cache(tmp_path_factory):
    # Keep the on-disk eigenvector cache out of the user's home directory.
    from fploops import groundstate

    groundstate.set_cache_dir(tmp_path_factory.mktemp("ground-cache"))
    yield
    groundstate.set_cache_dir(None)
