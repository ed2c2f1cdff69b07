"""Generalized Pell sequences and the multiplicative dependence audit."""
import json

from ._kpell import (
    Mk_crossover,
    audit_json,
    bound1,
    check_identity,
    claim_ids,
    eval_Mk,
    height,
    matveev_constant,
    mul_dep,
    reduce,
    root,
    term,
)


def audit(claims=(), threads=0):
    """Run the audit and return the report as a dict."""
    return json.loads(audit_json(list(claims), threads))
