"""Fourier-domain Hankel matrix completion.

Matrices are complex numpy arrays of shape (d, n); 3D data uses shape
(n, s, d) with frontal slices along the last axis. Masks are boolean arrays
of the same shape.
"""

import json as _json

from ._hankelmc import (
    IoError,
    ParseError,
    antidiag_weights,
    bernoulli_mask,
    bernoulli_mask_3d,
    complete,
    complete_3d,
    g_adjoint,
    g_lift,
    gen_adversarial_row,
    gen_spectral_3d,
    gen_spectral_matrix,
    gen_special,
    gf_norm,
    ghat_adjoint,
    ghat_lift,
    ginf_norm,
    hankel_adjoint,
    hankel_blockdiag,
    hankel_lift,
    incoherence,
    relative_error,
    replace_rows,
    rip_deviation,
    special_dual_certificate,
    svt,
    two_level_adjoint,
    two_level_lift,
    two_level_weights,
    unitary_dft,
)
from ._hankelmc import phase_transition as _phase_transition


def phase_transition(config):
    """Run a phase-transition grid. `config` is a dict or JSON string."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_phase_transition(text))


__all__ = [name for name in dir() if not name.startswith("_")]
