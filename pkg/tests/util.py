import numpy as np

from nsclab.configuration import Configuration


def assert_calls(mock_obj, calls):
    assert mock_obj.call_count == len(
        calls
    ), f"Expected {len(calls)} calls, got {mock_obj.call_count}"
    for i, expected_call in enumerate(calls):
        actual_call = mock_obj.call_args_list[i]
        assert (
            actual_call == expected_call
        ), f"Call {i} is different than expected. {actual_call} != {expected_call}"


def relative_difference(actual, expected):
    scale = max(np.abs(expected).max(), 1e-300)
    return float(np.abs(actual - expected).max() / scale)


def run_config(tmp_path=None, **sections):
    """Defaults overridden section by section, e.g. ``grid=dict(nx=16)``."""
    merged = Configuration.merge(sections)
    if tmp_path is not None:
        merged["output"]["output_dir"] = str(tmp_path)
    return Configuration.build_run_config(merged)
