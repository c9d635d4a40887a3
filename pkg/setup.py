"""Setup script for the grammar-compressed fingerprint toolkit."""

from pathlib import Path

from setuptools import find_packages, setup

readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

setup(
    name="grammar-fingerprints",
    version="1.0.0",
    description=(
        "Karp-Rabin fingerprints, random access and longest common extensions "
        "on grammar-compressed strings"
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["cli"],
    python_requires=">=3.8",
    install_requires=[],
    extras_require={
        "dev": ["pre-commit>=3.5.0", "ruff>=0.1.8", "pytest>=7.0.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "gcfp=cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Topic :: System :: Archiving :: Compression",
    ],
    keywords="slp grammar-compression karp-rabin fingerprint lce lz78",
)
