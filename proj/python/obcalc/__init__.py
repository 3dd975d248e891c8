"""Open book calculus: binding sums, homology oracles, contact certification."""

from _obcalc import (  # noqa: F401
    OpenBook,
    ParseError,
    SurfaceError,
    VerifyError,
    calibrated_sign,
    calibration_log,
    cokernel,
    fibration_oracle_h1,
    open_book,
    run,
    smith_normal_form,
    verify_f1_nontangent,
    verify_framing_homotopy,
    verify_pushoff_contact,
)

__all__ = [
    "OpenBook",
    "ParseError",
    "SurfaceError",
    "VerifyError",
    "calibrated_sign",
    "calibration_log",
    "cokernel",
    "fibration_oracle_h1",
    "open_book",
    "run",
    "smith_normal_form",
    "verify_f1_nontangent",
    "verify_framing_homotopy",
    "verify_pushoff_contact",
]
