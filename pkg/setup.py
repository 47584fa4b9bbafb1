# Copyright 2024 The wyckoff_detector Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Setup module for the Wyckoff phase detector.
"""

from os import path
from setuptools import setup, find_packages

PWD = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(PWD, 'README.md'), encoding='utf-8') as f:
    README = f.read()

setup(
    name='wyckoff_detector',
    version='0.1.0',
    description='Detect Wyckoff accumulation phases with a from-scratch LSTM.',
    long_description=README,
    long_description_content_type='text/markdown',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Financial and Insurance Industry',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
    keywords='wyckoff accumulation trading range lstm pattern recognition',
    packages=find_packages(exclude=["tests"]),
    python_requires='>=3.8, <4',
    install_requires=[
        'click>=7.0',
        'numpy>=1.20',
        'pandas>=1.5',
        'matplotlib>=3.5',
    ],
    extras_require={
        'test': ['pytest>=7'],
    },
    entry_points={
        'console_scripts': [
            'wyckoff = wyckoff_detector:run',
        ],
    },
)
