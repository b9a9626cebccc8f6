import setuptools
import os

with open("README.md", "r") as f:
    long_description = f.read()

setuptools.setup(
    name="cheegerlab",
    version=os.environ.get("VERSION", "0.0.0"),
    description=(
        "Exact expansion, normalized spectra and checked spectral bounds "
        "for small graphs"
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    python_requires=">=3.7",
    install_requires=["marshmallow>=3.13.0,<4", "numpy"],
    extras_require={"test": ["pytest", "networkx"]},
    include_package_data=True,
    package_data={"cheegerlab": ["defaults.json", "examples/*"]},
    entry_points={"console_scripts": ["cheegerlab=cheegerlab.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
