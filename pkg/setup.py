# -*- coding: utf-8 -*-
#
# Copyright 2023 The MomentForge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import io
import os

import setuptools


name = "momentforge"
description = "LLM query reformulation and sliding-window moment localization"
version = "0.1.0"
release_status = "Development Status :: 3 - Alpha"
dependencies = [
    "google-api-core[grpc] >= 1.22.0, < 2.0.0dev",
    "proto-plus >= 1.4.0",
    "google-auth >= 1.21.0",
    "requests >= 2.18.0",
    "numpy >= 1.17",
]


package_root = os.path.abspath(os.path.dirname(__file__))

readme_filename = os.path.join(package_root, "README.rst")
with io.open(readme_filename, encoding="utf-8") as readme_file:
    readme = readme_file.read()

packages = [
    package
    for package in setuptools.find_packages(exclude=("tests", "tests.*"))
    if package.startswith("momentforge")
]


setuptools.setup(
    name=name,
    version=version,
    description=description,
    long_description=readme,
    author="The MomentForge Authors",
    license="Apache 2.0",
    classifiers=[
        release_status,
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
    ],
    platforms="Posix; MacOS X; Windows",
    packages=packages,
    python_requires=">=3.6",
    install_requires=dependencies,
    entry_points={"console_scripts": ["momentforge=momentforge_v1.cli.main:main"]},
    include_package_data=True,
    zip_safe=False,
)
