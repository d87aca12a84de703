# Copyright 2026 The pauli-lre Authors
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
"""Python bindings for the pauli-lre reconstruction library."""

from ._core import (
    IoError,
    NumericalError,
    Record,
    ValidationError,
    dense_state,
    fidelity,
    hs_squared_distance,
    predicted_infidelity_max_mixed,
    predicted_mse_dense,
    predicted_mse_max_mixed,
    project,
    project_onto_simplex,
    reconstruct,
    reconstruct_exact,
    simulate,
    walsh_hadamard,
)

__all__ = [
    "IoError",
    "NumericalError",
    "Record",
    "ValidationError",
    "dense_state",
    "fidelity",
    "hs_squared_distance",
    "predicted_infidelity_max_mixed",
    "predicted_mse_dense",
    "predicted_mse_max_mixed",
    "project",
    "project_onto_simplex",
    "reconstruct",
    "reconstruct_exact",
    "simulate",
    "walsh_hadamard",
]
