#!/usr/bin/env python3

from setuptools import setup, find_packages


setup(
    name = 'dea_frames',
    description = 'Frame and boundary identification for large-scale DEA (BuildHull and EHD)',
    version = '1.0',
    license = 'ISC',

    install_requires = [
        'ConfigArgParse',
        'numpy',
        'pandas',
        'prometheus_client',
        'scipy',
    ],
    extras_require = {
        'dev': [
            'bandit',
            'mkdocs',
            'pycodestyle',
            'pylint',
            'pytest',
            'pytest-cov',
            'tox'
        ]
    },

    package_dir = {'': 'src'},
    packages = find_packages('src'),
    scripts = [
        'scripts/dea-bench'
    ]
)
