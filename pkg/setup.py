import os

from setuptools import setup

yaml_deps = ["pyyaml"]
toml_deps = ['tomli ; python_version < "3.11"', "tomli_w"]
test_deps = ["pytest", *yaml_deps, *toml_deps]
dev_deps = ["pre-commit", "coverage", *test_deps]

extras_require = {
    "yaml": yaml_deps,
    "toml": toml_deps,
    "test": test_deps,
    "dev": dev_deps,
}

setup(
    name="bearingcap",
    version="0.1.0",
    description=(
        "Capacitance of unloaded rolling element contacts by closed-form, "
        "semi-analytic, analytic and finite element models."
    ),
    keywords="rolling bearing capacitance electrostatics finite elements quadrature",
    classifiers=[
        "License :: OSI Approved :: BSD License",
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
    ],
    install_requires=["msgspec>=0.18", "numpy>=1.22", "scipy>=1.12", "tomli_w"],
    extras_require=extras_require,
    license="BSD",
    packages=["bearingcap"],
    entry_points={"console_scripts": ["bearingcap = bearingcap.cli:main"]},
    long_description=(
        open("README.md", encoding="utf-8").read()
        if os.path.exists("README.md")
        else ""
    ),
    long_description_content_type="text/markdown",
    python_requires=">=3.9",
    zip_safe=False,
)
