"""Main of nsclab."""
from nsclab.cli import nsclab

if __name__ == "__main__":
    nsclab()  # pylint: disable=E1120
