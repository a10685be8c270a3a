from unittest.mock import Mock, call

from pytest_cases import THIS_MODULE, parametrize_with_cases

from nsclab.print_util import print_boxed
from tests.util import assert_calls


def case_empty_text():
    title = ""
    calls = [call("####"), call("#  #"), call("####")]
    kwargs = dict()

    return title, calls, kwargs


def case_one_char_text():
    title = "a"
    calls = [call("#####"), call("# a #"), call("#####")]
    kwargs = dict()

    return title, calls, kwargs


def case_two_words_text():
    title = "Kernel Bound"
    calls = [
        call("################"),
        call("# Kernel Bound #"),
        call("################"),
    ]
    kwargs = dict()

    return title, calls, kwargs


def case_different_border():
    title = "Simulate"
    calls = [call("************"), call("* Simulate *"), call("************")]
    kwargs = dict(border="*")

    return title, calls, kwargs


def case_minimal_width():
    title = "ab"
    calls = [call("############"), call("#    ab    #"), call("############")]
    kwargs = dict(width=12)

    return title, calls, kwargs


def case_width_smaller_than_title():
    title = "ab"
    calls = [call("######"), call("# ab #"), call("######")]
    kwargs = dict(width=3)

    return title, calls, kwargs


@parametrize_with_cases(argnames=["title", "calls", "kwargs"], cases=THIS_MODULE)
def test_print_boxed(title, calls, kwargs):
    print_mock = Mock()
    print_boxed(title, print_method=print_mock, **kwargs)
    assert_calls(print_mock, calls)
