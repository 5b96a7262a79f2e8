import pytest


@pytest.fixture(scope="session")
def verify_artifacts(tmp_path_factory):
    """Run the figure checkpoint suite once; share report and artifacts."""
    from drivenwell.checkpoints import run_figures_suite
    out_dir = tmp_path_factory.mktemp("verify")
    report = run_figures_suite(out_dir)
    return out_dir, report
