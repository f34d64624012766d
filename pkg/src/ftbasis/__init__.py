"""Compilation and verification toolkit for the gate basis {H, T, CNOT}."""

from .errors import UnsupportedPrecisionError, ValidationError
from .su2 import (
    AxisAngle,
    EulerTriple,
    axis_angle_of,
    euler_compose,
    euler_invert,
    pauli_power,
    proj_distance,
    su3_two_level_decompose,
)
from .ring import ExactMatrix, RingElement, exact_gate, exact_mul, gaussian_obstruction
from .cyclotomic import (
    AngleVerdict,
    RationalPolynomial,
    angle_of_root,
    cyclotomic_poly,
    is_cyclotomic,
)
from .words import Gate, GateWord, g, word
from .sim import (
    MeasurementRecord,
    StateVector,
    apply,
    measure_cat_basis,
    measure_z,
    prepare,
    run_word,
)
from .synth import (
    LambdaFrame,
    SynthResult,
    approx_su2,
    lambda_frame,
    phase_ladder,
    rho_basis_forms,
    rho_generators,
)
from .gadgets import (
    GadgetRun,
    prepare_eigenstate,
    t_gadget,
    toffoli_state_run,
    uphi,
    uphi_word,
    verify_identity,
)

__version__ = "0.1.0"
