"""Explicit formulae, Li coefficients and the Weil form."""

import json

from ._efl import (
    EflError,
    LaurentCoefficients,
    TestFunction,
    VonMangoldtTable,
    ZeroSet,
    assoc_laguerre_tf,
    count_estimate,
    derivatives_at,
    exp_tf,
    find_zeros,
    generate_zeros,
    involution,
    laguerre_tf,
    laurent_coefficients,
    li_direct,
    li_eta,
    li_mu,
    load_zeros,
    neg_zeta_log_deriv,
    parse_zeros,
    poly_tf,
    run_cli,
    sieve,
    stieltjes_partial,
    stieltjes_partial_corrected,
    xi,
    zeta,
)
from . import _efl


def psi_analytic(x, zeros):
    return json.loads(_efl.psi_analytic_json(x, zeros))


def general_rhs(g, s, zeros):
    return json.loads(_efl.general_rhs_json(g, s, zeros))


def weil_form(g, zeros, coeffs):
    return json.loads(_efl.weil_form_json(g, zeros, coeffs))


def li_table(n_max, zeros, coeffs):
    return json.loads(_efl.li_table_json(n_max, zeros, coeffs))


def run(*args):
    """Run the efl command line in-process; returns (exit code, stdout, stderr)."""
    return run_cli([str(a) for a in args])
