#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    'numpy>=1.13',
    'scipy>=1.0',
    'mpmath>=1.0',
    'matplotlib>=2.1',
]

test_requirements = [
    'pytest>=3.0',
    'pytest-cov>=2.5',
]

setup_requirements = [
    'pytest-runner',
]

setup(
    name='sqrtlat',
    version='0.1.0',
    description="Fourier interpolation basis for square roots of integers",
    long_description=readme + '\n\n' + history,
    author="Michael Housh",
    author_email='mhoush@houshhomeenergy.com',
    packages=find_packages(exclude=['tests']),
    package_dir={'sqrtlat':
                 'sqrtlat'},
    include_package_data=True,
    install_requires=requirements,
    setup_requires=setup_requirements,
    entry_points={
        'console_scripts': [
            'sqrtlat=sqrtlat.cli:main',
        ],
    },
    license="MIT license",
    zip_safe=False,
    keywords='sqrtlat fourier interpolation modular forms',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    test_suite='tests',
    tests_require=test_requirements
)
