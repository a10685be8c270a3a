#!/usr/bin/env python
from setuptools import setup

version = "0.1.0"
setup(version=version)
