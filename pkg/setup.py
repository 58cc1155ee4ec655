from setuptools import setup, find_packages

setup(
    name="fockspec",
    version="0.1",
    packages=find_packages(exclude=["tests"]),
    py_modules=["main"],
    install_requires=[
        "numpy>=1.21.0",
        "pandas>=1.5.0",
        "scipy>=1.8.0",
        "sympy>=1.12",
        "tqdm>=4.60.0"
    ],
    extras_require={
        "test": ["hypothesis>=6.0.0"]
    },
    entry_points={
        "console_scripts": ["fockspec=main:main"]
    },
    description="Exact spectral verification of the weighted dbar-Neumann and Witten Laplacians on Gaussian-weighted C^n",
    keywords="dbar-Neumann, Witten Laplacian, Fock space, spectrum, exact arithmetic",
    python_requires=">=3.8",
)
