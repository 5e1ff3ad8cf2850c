from setuptools import setup, find_packages

setup(
    name="sublinear-tsp-estimation",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.21.0",
        "scipy>=1.7.0",
        "pandas>=1.3.0",
        "networkx>=2.6",
        "pyyaml>=5.4.0",
        "tqdm>=4.61.0",
    ],
    extras_require={"test": ["pytest>=6.2.0"]},
    entry_points={"console_scripts": ["sublinear-tsp=src.cli:main"]},
    description="MST and TSP cost estimation in streaming and distance-query models",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    python_requires=">=3.9",
)
