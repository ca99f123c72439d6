"""Distribution families, samplers and transform inversion."""
from harrisar.laws.cfinv import (
    CFInversionTable,
    GilPelaezQuad,
    InversionError,
    QuadratureError,
    build_cf_table,
    df_from_cf,
    sample_via_cf_inversion,
)
from harrisar.laws.families import (
    DiscreteGenSemiMLLaw,
    GammaMaxSemiStableLaw,
    GenSemiAlphaLaplaceLaw,
    GenSemiMLLaw,
    GenSemiParetoLaw,
    HarrisCompoundLaw,
    MaxSemiStableLaw,
    eval_transform,
    sample_sf_inversion,
)
from harrisar.laws.harris import (
    HarrisLaw,
    harris_compose,
    harris_pgf,
    harris_pmf,
    harris_sample,
    harris_tail_factor,
)
from harrisar.laws.lattice import (
    InvalidPGFError,
    LatticePmf,
    TruncationError,
    pmf_from_pgf,
    sample_lattice,
)
from harrisar.laws.stable import (
    positive_stable,
    sample_linnik,
    sample_ml_positive,
    symmetric_stable,
)

__all__ = [
    "CFInversionTable",
    "DiscreteGenSemiMLLaw",
    "GammaMaxSemiStableLaw",
    "GenSemiAlphaLaplaceLaw",
    "GenSemiMLLaw",
    "GenSemiParetoLaw",
    "GilPelaezQuad",
    "HarrisCompoundLaw",
    "HarrisLaw",
    "InvalidPGFError",
    "InversionError",
    "LatticePmf",
    "MaxSemiStableLaw",
    "QuadratureError",
    "TruncationError",
    "build_cf_table",
    "df_from_cf",
    "eval_transform",
    "harris_compose",
    "harris_pgf",
    "harris_pmf",
    "harris_sample",
    "harris_tail_factor",
    "pmf_from_pgf",
    "positive_stable",
    "sample_lattice",
    "sample_linnik",
    "sample_ml_positive",
    "sample_sf_inversion",
    "sample_via_cf_inversion",
    "symmetric_stable",
]
