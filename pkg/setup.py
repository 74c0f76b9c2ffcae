# -*- coding: utf-8 -*-
import re

from setuptools import setup

with open("hardy_certify/__init__.py", "r", encoding="utf-8") as f:
    version = re.search(r'^__version__ = "([^"]+)"', f.read(), re.M).group(1)

with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="hardy-certify",
    version=version,
    description="certify weight characterizations of iterated hardy inequalities against brute-force best constants",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT License",
    license_files=[],
    packages=["hardy_certify", "hardy_certify.scripts"],
    install_requires=["numpy>=1.22"],
    extras_require={"test": ["pytest", "pytest-cov", "hypothesis"]},
    entry_points={"console_scripts": ["hardy-certify = hardy_certify.cli:main"]},
    python_requires=">=3.8",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
