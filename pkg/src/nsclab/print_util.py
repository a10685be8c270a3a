"""Print related methods."""
from typing import Any, Callable, Mapping


def experiment_title(name: str) -> str:
    """``oseen-convergence`` as ``Oseen Convergence``."""
    return name.replace("-", " ").replace("_", " ").title()


def print_title(
    title: str,
    underline: str = "=",
    print_method: Callable[[Any], None] = print,
) -> None:
    """
    Print a title with a title line under it.

    :param title: The title to print
    :param underline: Character to use as underline to the title
    :param print_method: print method, can be either ``print`` or ``click.echo``
    """
    print_method(title)
    print_method(underline * len(title))


def print_boxed(
    title: str,
    border: str = "#",
    width: int = 0,
    print_method: Callable[[Any], None] = print,
) -> None:
    """
    Print a title centered in a box.

    :param title: The title to print
    :param border: Character to use as border to the text
    :param width: Minimal box width, widened to fit the title
    :param print_method: print method, can be either ``print`` or ``click.echo``
    """
    width = max(width, len(title) + 4)
    print_method(border * width)
    print_method(f"{border}{title.center(width - 2)}{border}")
    print_method(border * width)


def format_value(value: Any) -> str:
    """Booleans as ``yes``/``no``, floats with seven significant digits."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.7g}"
    return str(value)


def print_summary(
    summary: Mapping[str, Any],
    indent: int = 0,
    print_method: Callable[[Any], None] = print,
) -> None:
    """
    Print an experiment summary, one ``key: value`` per line.

    Nested mappings are printed under their key, indented by two spaces.

    :param summary: summary mapping
    :param indent: indentation of the first level
    :param print_method: print method, can be either ``print`` or ``click.echo``
    """
    prefix = " " * indent
    for key, value in summary.items():
        if isinstance(value, Mapping):
            print_method(f"{prefix}{key}:")
            print_summary(value, indent=indent + 2, print_method=print_method)
        else:
            print_method(f"{prefix}{key}: {format_value(value)}")
