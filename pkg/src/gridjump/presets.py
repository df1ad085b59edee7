"""Built-in experiment presets.

Each preset bundles a coefficient layout with the refinement range of
its self-convergence table: rows run over h = 2^-k for k in
``level_min..level_max``, and producing the last row needs one solve at
level ``level_max + 1``.  The source term is the constant 1 throughout.

========  ====  =========================================  ==========
name      m     coefficient                                row levels
========  ====  =========================================  ==========
ex1       2     checkerboard 1e3 / 1e-3                    2..6
ex2       4     checkerboard 10 / 1                        3..6
ex3new    8     checkerboard 10 / 1                        4..7
ex3       4     checkerboard 1e3 / 1e-3                    3..6
ex4       8     checkerboard 1e3 / 1e-3                    4..7
ex5       16    checkerboard 1e3 / 1e-3                    5..8
ex7       4     fixed mixed-magnitude layout               3..6
========  ====  =========================================  ==========
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientField, checkerboard, from_matrix, load_coefficient


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    field: CoefficientField
    level_min: int
    level_max: int
    description: str

    @property
    def m(self) -> int:
        return self.field.m

    def levels(self) -> range:
        """Table row levels; solves additionally need level_max + 1."""
        return range(self.level_min, self.level_max + 1)


# bottom row first, like the stored field
EX7_LAYOUT = np.array(
    [
        [100.0, 0.5, 10.0, 1.0],
        [0.4, 1000.0, 0.35, 10.0],
        [5.0, 0.45, 0.5, 1.0],
        [150.0, 100.0, 1.0, 10.0],
    ]
)

PRESETS: dict[str, ExperimentPreset] = {
    p.name: p
    for p in (
        ExperimentPreset(
            "ex1", checkerboard(2, 1e3, 1e-3), 2, 6, "m=2 checkerboard, contrast 1e6"
        ),
        ExperimentPreset(
            "ex2", checkerboard(4, 10.0, 1.0), 3, 6, "m=4 checkerboard, contrast 10"
        ),
        ExperimentPreset(
            "ex3new", checkerboard(8, 10.0, 1.0), 4, 7, "m=8 checkerboard, contrast 10"
        ),
        ExperimentPreset(
            "ex3", checkerboard(4, 1e3, 1e-3), 3, 6, "m=4 checkerboard, contrast 1e6"
        ),
        ExperimentPreset(
            "ex4", checkerboard(8, 1e3, 1e-3), 4, 7, "m=8 checkerboard, contrast 1e6"
        ),
        ExperimentPreset(
            "ex5", checkerboard(16, 1e3, 1e-3), 5, 8, "m=16 checkerboard, contrast 1e6"
        ),
        ExperimentPreset(
            "ex7", from_matrix(EX7_LAYOUT), 3, 6, "m=4 mixed-magnitude layout"
        ),
    )
}


def get_preset(name: str) -> ExperimentPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None


def parse_coeff_spec(spec: str) -> tuple[CoefficientField, ExperimentPreset | None]:
    """Resolve a ``preset:<name>`` or ``file:<path>`` coefficient argument."""
    if spec.startswith("preset:"):
        preset = get_preset(spec[len("preset:"):])
        return preset.field, preset
    if spec.startswith("file:"):
        return load_coefficient(spec[len("file:"):]), None
    raise ValueError(f"coefficient spec must start with 'preset:' or 'file:', got {spec!r}")
