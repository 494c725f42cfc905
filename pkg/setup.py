import os
from setuptools import find_packages, setup

with open("README.md", "r") as readme:
    long_description = readme.read()

with open(os.path.join(os.path.dirname(__file__), "requirements.txt")) as f:
    install_requires = [line.strip() for line in f if line.strip()]

setup(
    name="relaxlab",
    version="0.1.0",
    author="John Stanco",
    description="Lower-bound instances and experiments for non-adaptive Bellman-Ford relaxation schedules",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("tests",)),
    python_requires=">=3.8",
    install_requires=install_requires,
    entry_points={"console_scripts": ["relaxlab=relaxlab.cli:main"]},
)
