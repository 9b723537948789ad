# -*- coding: utf-8 -*-
"""Setup script for freshrec"""

from setuptools import setup, find_packages

setup(
    name="freshrec",
    version="0.1.0",
    packages=find_packages(include=["freshrec*"]),
    python_requires=">=3.10",
)
