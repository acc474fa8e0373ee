# Copyright 2026 The pmcleak Authors
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

"""Pointwise maximal cost and leakage for finite and continuous mechanisms."""

import json as _json

from ._pmcleak import *  # noqa: F401,F403
from ._pmcleak import PmcleakError, analyze as _analyze, certify as _certify

__version__ = "0.1.0"


def analyze_report(document, mode="float", unit="nats", seed=0):
    """Leakage report for a mechanism document, decoded from JSON."""
    if not isinstance(document, str):
        document = _json.dumps(document)
    return _json.loads(_analyze(document, mode, unit, seed))


def certify_report(document, y, grid=11, max_u=3, seed=0, mode="float",
                   unit="nats"):
    """Oracle certificate for PMC at outcome y, decoded from JSON."""
    if not isinstance(document, str):
        document = _json.dumps(document)
    return _json.loads(_certify(document, y, grid, max_u, seed, mode, unit))
