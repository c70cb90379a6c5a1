#-----------------------------------------------------------------------------
# setup.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This file defines the python install package to be built for the
# 'ringcut' package
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
import setuptools
from codecs import open  # To use a consistent encoding
from os import path
import sys

# sub folder for our resource files
_RESOURCE_DIRECTORY = "ringcut/resource"

def resource_path(relative_path):
    base_path = getattr(sys, '_MEIPASS', path.dirname(path.abspath(__file__)))
    return path.join(base_path, _RESOURCE_DIRECTORY, relative_path)

def get_version(rel_path: str) -> str:
    try:
        with open(resource_path(rel_path), encoding='utf-8') as fp:
            for line in fp.read().splitlines():
                if line.startswith("__version__"):
                    delim = '"' if '"' in line else "'"
                    return line.split(delim)[1]
    except OSError as error:
        raise RuntimeError("Unable to find _version.py.") from error
    raise RuntimeError("Unable to find version string.")

_APP_VERSION = get_version("_version.py")

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'DESCRIPTION.md'), encoding='utf-8') as f:
    long_description = f.read()

install_deps = ['numpy', 'scipy', 'networkx>=3.1']

setuptools.setup(
    name='ringcut',

    version=_APP_VERSION,

    description='Noisy simulation and transpilation study of QAOA max-cut on ring graphs',
    long_description=long_description,
    long_description_content_type='text/markdown',

    author='ringcut developers',

    license='MIT',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 4 - Beta',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',

        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],

    keywords='QAOA maxcut quantum noise transpiler simulation',

    packages=["ringcut", "ringcut/tp", "ringcut/resource"],

    python_requires='>=3.8',
    install_requires=install_deps,
    extras_require={
        'test': ['pytest'],
    },

    package_data={
        'ringcut/resource': ['*.json'],
    },

    entry_points={
        'console_scripts': ['ringcut=ringcut:startRingcut',
                            'ringcut-tp=ringcut.tp.tp:main',
        ],
    },
)
