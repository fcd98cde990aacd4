# Copyright 2026 The ksforms Authors
# SPDX-License-Identifier: Apache-2.0
"""Finite element spectra of differential forms on planar domains."""

import json

from ksforms._core import *  # noqa: F401,F403
from ksforms._core import (
    convergence_study_json,
    rellich_ledger_json,
    verify_json,
)


def verify(theorem, mesh, p=0, k=(1,), x0=None, refine=True, order=2):
    """Inequality reports as a list of dicts."""
    return json.loads(verify_json(theorem, mesh, p, list(k), x0, refine, order))["reports"]


def convergence_study(problem, p, shape, h, k=1, order=1):
    return json.loads(convergence_study_json(problem, p, shape, list(h), k, order))


def rellich_ledger(mesh, p=1, degree=3, seed=0, x0=None):
    return json.loads(rellich_ledger_json(mesh, p, degree, seed, x0))
