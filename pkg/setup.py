from setuptools import setup

setup(
    name='anonlab',
    version='0.1',
    description='Simulation and verification laboratory for anonymous predictors '
                'over exact time-indexed scenarios and smooth time warps',
    license='GPL3',
    packages=[
        'anonlab',
        'anonlab.scenarios',
        'anonlab.warps',
        'anonlab.smooth',
        'anonlab.fpath',
        'anonlab.prediction',
        'anonlab.harness',
        'anonlab.runners',
        'anonlab.utils',
        'anonlab.tests',
              ],
    py_modules=['run'],
    install_requires=[
        'matplotlib',
        'mpmath',
        'numpy',
        'pandas',
        'pip',
        'pycodestyle',
        'Sphinx',
        'sphinx-rtd-theme',
        'tqdm',
        'wheel',
        'pytest',
        'hypothesis',
        'joblib',
                      ],
    entry_points={
        'console_scripts': ['anonlab=run:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: GPL 3 License',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
    ],
)
