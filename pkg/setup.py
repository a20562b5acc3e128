# pylint: disable = C0111
from setuptools import find_packages, setup

with open("README.md", "r") as f:
    DESCRIPTION = f.read()

setup(name="steinbasis",
      version="1.0.0",
      description="Certified plurisubharmonic defining functions near flat hyperbolic complex points",
      long_description=DESCRIPTION,
      long_description_content_type="text/markdown",
      license="MIT License: http://opensource.org/licenses/MIT",
      packages=find_packages(where="src/python/"),
      package_dir={"": "src/python/"},
      package_data={"steinbasis": ["schemas/*.json"]},
      keywords="python complex-analysis plurisubharmonic certified-computation",
      python_requires=">=3.6",
      entry_points={
          "console_scripts": [
              "steinbasis = steinbasis.execute:main",
          ],
      },
      install_requires=[
          "mpmath>=1.1.0",
          "numpy>=1.17.4",
          "sympy>=1.5",
          "tqdm>=4.40.2"
      ],
      extras_require={
          "test": [
              "jsonschema>=3.2.0",
              "pytest>=5.3.2"
          ]
      },
      classifiers=[
          "License :: OSI Approved :: MIT License",
          "Operating System :: OS Independent",
          "Programming Language :: Python :: 3",
          "Topic :: Scientific/Engineering :: Mathematics",
          "Topic :: Utilities"
      ])
