"""Generalized entropies, conditional Renyi divergences and risk-averse betting."""

from betinfo.betting import (
    BettingGame,
    Strategy,
    decompose_bookmaker,
    decompose_double,
    divergence_order,
    fairness,
    ice,
    isoelastic_utility,
    log_ice,
    max_log_ice,
    optimal_bet_bookmaker,
    optimal_bet_double,
    ratio_bookmaker_vs_gambler,
    ratio_bookmaker_vs_none,
    rra,
)
from betinfo.divergences import (
    blp_crd,
    check_dpi_n1,
    check_n1_le_blp,
    crd_entropy_identities,
    csiszar_crd,
    kl_divergence,
    n1_crd,
    n2_crd,
    renyi_divergence,
    sibson_crd,
)
from betinfo.entropies import (
    arimoto_cond_entropy,
    arimoto_mutual_information,
    check_chain_rule,
    cond_entropy_h1,
    cond_entropy_h2,
    cond_entropy_h4,
    id_cond_entropy,
    id_mutual_information,
    renyi_cond_probability,
    renyi_entropy,
    renyi_probability,
    shannon_entropy,
    sharma_mittal_entropy,
    tsallis_entropy,
)
from betinfo.optimizer import SimplexSearchConfig, maximize_over_condtable, maximize_over_pmf
from betinfo.prob_core import (
    Alphabet,
    CondTable,
    DegenerateOrderError,
    DomainError,
    JointPmf,
    OddsTable,
    Pmf,
    compose,
    condition,
    escort,
    eta_r,
    eta_r_inv,
    exp_q,
    ln_r,
    marginalize,
    parse_order,
    pseudo_add,
    pseudo_sub,
    sgn,
)
from betinfo.prospect import (
    PtAgent,
    decompose_pt_gambler,
    decompose_pt_nosi,
    pt_advantage,
    pt_ce,
    pt_value,
    weight_power,
)
from betinfo.quantum import (
    DensityMatrix,
    KrausChannel,
    Povm,
    QuantumEnsemble,
    induced_conditional,
    is_constant,
    is_uninformative,
    nqsb_identity,
    qsb_identity,
)
from betinfo.wealth_ratio import (
    advantage_side_information,
    advantage_strategies,
    arimoto_prob_via_betting,
    id_mi_operational,
    renyi_prob_via_betting,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
