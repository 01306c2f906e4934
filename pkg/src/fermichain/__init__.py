"""
Renyi entanglement entropies of gapped free-fermion chains with finite-range
couplings: exact correlation-matrix numerics, Riemann-theta asymptotics, the
SO(1,1) coupling flows that leave them invariant, and XY closed forms.
"""

from .chain import (CRITICAL_GAP, CouplingSet, SymbolData, dispersion, embed, is_critical,
                    make_coupling_set, spectral_gap, symbol, xy_couplings)
from .config import dump_couplings, load_couplings, parse_couplings
from .correlation import (EntropyResult, build_correlation_matrix, entropy_from_correlations,
                          exact_entropy, exact_log_det, f_alpha)
from .errors import (AccuracyError, ConstraintError, CriticalModelError, DomainError,
                     FermichainError, GeometryError, NonGenericCurveError, NumericIntegrityError)
from .moebius import (MoebiusElement, inversion, representation_matrix, so11,
                      transform_couplings)
from .surface import SurfaceGeometry, branch_data, period_matrix, surface, surface_report
from .theta import asymptotic_entropy, asymptotic_log_det, theta, theta_spec
from .xy import (classify, dual_1b, dual_kramers_wannier, elliptic_I, entropy,
                 entropy_closed_form, ising_line_entropy, triality_partner)

__version__ = "0.1.0"
