""" PyPI setup.cfg """

from setuptools import find_packages, setup

setup(
    name='kgsa',
    packages=find_packages(exclude=['tests', 'tests.*']),
    version='0.1.0',
    description='Kernel-embedding global sensitivity analysis from a '
                'single data set',
    author='Sassoo',
    author_email='noreply@devnull.seriously',
    license='MIT',
    keywords=['sensitivity analysis', 'kernel', 'rkhs', 'sobol', 'shapley',
              'uncertainty quantification'],
    classifiers=[
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
    ],
    install_requires=[
        'blinker',
        'numpy',
        'schematics',
        'scipy',
    ],
    extras_require={
        'tests': ['pytest'],
    },
    entry_points={
        'console_scripts': ['kgsa=kgsa.cli:main'],
    },
)
