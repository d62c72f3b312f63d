from setuptools import find_packages, setup

setup(
    name="aptdefense",
    version="0.1.1",
    packages=find_packages(),
    python_requires=">=3.10.0",
    entry_points={
        "console_scripts": [
            "aptdefense=aptdefense.cli.cli:cli",
        ],
    },
    description="Optimal APT defense strategies for networked organizations: forward-backward sweep solver, static baselines and parameter sweeps.",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    include_package_data=True,
    install_requires=[
        "python-dotenv==1.0.0",
        "wasabi==1.1.2",
        "click==8.1.7",
        "tqdm>=4.66",
        "pydantic>=2.5,<3",
        "numpy>=1.24",
        "scipy>=1.11",
        "networkx>=3.1",
        "pandas>=2.0",
    ],
    extras_require={
        "dev": ["pytest", "wheel", "twine", "black>=23.7.0", "setuptools"],
    },
)
