//! Closed-form predictions: power-law exponents, `K*_t`, `Q_t`, the
//! inner-core threshold, the degree-layer plan, `epsilon_G` and `h_tau`.
//!
//! All logarithms are natural.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ModelParams;
use crate::weights::WeightDistribution;

/// Power-law exponent of the degree distribution: `3 + delta/m` for FPA and
/// `1 + 1/gamma_f` for VPA/GVPA.
pub fn power_law_exponent(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    Ok(match params {
        ModelParams::Fpa { m, delta } => 3.0 + delta / *m as f64,
        other => {
            let gamma = other.rule().expect("variable model").gamma();
            if gamma <= 0.0 {
                return Err(Error::config("attachment rule with zero slope has no power law"));
            }
            1.0 + 1.0 / gamma
        }
    })
}

/// Rejects exponents outside the `(2, 3)` regime.
pub fn require_scale_free(tau: f64) -> Result<()> {
    if tau > 2.0 && tau < 3.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("power-law exponent {tau} outside (2, 3)")))
    }
}

/// `K*_t = floor(2 log log t / |log(tau - 2)|)`.
pub fn k_star(t: u64, tau: f64) -> Result<u32> {
    if t < 3 {
        return Err(Error::domain(format!("k_star needs t >= 3, got {t}")));
    }
    require_scale_free(tau)?;
    Ok((2.0 * (t as f64).ln().ln() / (tau - 2.0).ln().abs()).floor() as u32)
}

/// `sum_{i=1}^k F^{(-1)}(exp(-(tau-2)^{-i/2}))`.
pub fn main_term_sum(k: u32, tau: f64, dist: &WeightDistribution) -> Result<f64> {
    Ok(main_term_partial_sums(k, tau, dist)?[k as usize])
}

/// Partial sums of [`main_term_sum`] for `0..=k`.
pub fn main_term_partial_sums(k: u32, tau: f64, dist: &WeightDistribution) -> Result<Vec<f64>> {
    require_scale_free(tau)?;
    let mut sums = Vec::with_capacity(k as usize + 1);
    let mut acc = 0.0;
    sums.push(acc);
    for i in 1..=k {
        let level = (-(tau - 2.0).powf(-(i as f64) / 2.0)).exp();
        acc += dist.quantile_in_range(level);
        sums.push(acc);
    }
    Ok(sums)
}

/// `Q_t = main_term_sum(K*_t)`.
pub fn q_t(t: u64, tau: f64, dist: &WeightDistribution) -> Result<f64> {
    main_term_sum(k_star(t, tau)?, tau, dist)
}

/// `(alpha t)^{1/(2(tau-1))} log(alpha t)^{-1/2}`, the degree an old vertex
/// needs at time `alpha t` to belong to the inner core.
pub fn inner_core_threshold(t: u64, alpha: f64, tau: f64) -> Result<f64> {
    if !(alpha >= 0.5 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha {alpha} outside [1/2, 1)")));
    }
    let at = alpha * t as f64;
    if at < 3.0 {
        return Err(Error::domain(format!("alpha t = {at} is below 3")));
    }
    require_scale_free(tau)?;
    Ok(at.powf(1.0 / (2.0 * (tau - 1.0))) / at.ln().sqrt())
}

/// Choice of the exponent corrections in the layer recursion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum LayerVariant {
    /// `epsilon_k = (k+2)^{-2}`.
    Tight,
    /// `epsilon_k = eps_g` for every `k`.
    General { eps_g: f64 },
}

impl LayerVariant {
    pub fn epsilon(&self, k: usize) -> f64 {
        match self {
            Self::Tight => 1.0 / ((k + 2) as f64).powi(2),
            Self::General { eps_g } => *eps_g,
        }
    }
}

/// Degree thresholds `s_0 < s_1 < ... < s_{K_t} = cap` of the layers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerPlan {
    pub s: Vec<f64>,
    pub k_t: u32,
    /// `epsilon_0, ..., epsilon_{K_t - 1}`.
    pub epsilons: Vec<f64>,
    pub cap: f64,
    pub variant: LayerVariant,
    pub t: u64,
    pub alpha: f64,
    pub tau: f64,
}

impl LayerPlan {
    /// `K_t = 0`: the starting threshold already reaches the inner core.
    pub fn is_degenerate(&self) -> bool {
        self.k_t == 0
    }
}

const MAX_LAYERS: usize = 10_000;

/// Iterates `s_k = min{s_{k-1}^{(1-eps_{k-1})/(tau-2)}, cap}` until the
/// inner-core threshold `cap` is reached.
pub fn layer_plan(s0: f64, t: u64, alpha: f64, tau: f64, variant: LayerVariant) -> Result<LayerPlan> {
    if !(s0 > 1.0 && s0.is_finite()) {
        return Err(Error::config(format!("layer plan needs s0 > 1, got {s0}")));
    }
    if let LayerVariant::General { eps_g } = variant {
        if !(eps_g > 0.0 && eps_g < 1.0) {
            return Err(Error::config(format!("eps_g {eps_g} outside (0, 1)")));
        }
    }
    let cap = inner_core_threshold(t, alpha, tau)?;
    let mut plan = LayerPlan {
        s: Vec::new(),
        k_t: 0,
        epsilons: Vec::new(),
        cap,
        variant,
        t,
        alpha,
        tau,
    };
    if s0 >= cap {
        plan.s.push(cap);
        return Ok(plan);
    }
    plan.s.push(s0);
    let mut current = s0;
    while current < cap {
        let k = plan.epsilons.len();
        if k >= MAX_LAYERS {
            return Err(Error::config("layer recursion does not reach the cap"));
        }
        let eps = variant.epsilon(k);
        let exponent = (1.0 - eps) / (tau - 2.0);
        let next = current.powf(exponent);
        if next <= current {
            return Err(Error::config(format!(
                "layer recursion stalls at s_{k} = {current}: exponent (1 - {eps})/(tau - 2) = {exponent} <= 1"
            )));
        }
        current = next.min(cap);
        plan.epsilons.push(eps);
        plan.s.push(current);
    }
    plan.k_t = plan.epsilons.len() as u32;
    Ok(plan)
}

/// Closed-form solution of
/// `log(1/(tau-2)) / log((1-eps_G)/(tau-2)) = 1 + eps`, namely
/// `eps_G = 1 - (tau-2)^{eps/(1+eps)}`.
pub fn epsilon_g(tau: f64, eps: f64) -> Result<f64> {
    require_scale_free(tau)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("eps {eps} must be positive")));
    }
    Ok(1.0 - (tau - 2.0).powf(eps / (1.0 + eps)))
}

/// `h_tau(s) = 2 log log s / |log(tau-2)| + c_tau`.
pub fn h_tau(s: f64, tau: f64, c_tau: f64) -> Result<f64> {
    if !(s > std::f64::consts::E) {
        return Err(Error::domain(format!("h_tau needs s > e, got {s}")));
    }
    require_scale_free(tau)?;
    Ok(2.0 * s.ln().ln() / (tau - 2.0).ln().abs() + c_tau)
}

/// Every prediction for one `(model, t, alpha, L)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionBundle {
    pub tau: f64,
    pub t: u64,
    pub alpha: f64,
    pub k_star: u32,
    pub q_t: f64,
    pub inner_threshold: f64,
    /// `main_term_sum(k)` for `k = 0..=k_star`.
    pub main_term: Vec<f64>,
    pub layer_plan: Option<LayerPlan>,
}

/// Builds a [`PredictionBundle`]; the layer plan is included when `s0` is
/// given.
pub fn predict(
    params: &ModelParams,
    t: u64,
    alpha: f64,
    dist: &WeightDistribution,
    s0: Option<f64>,
    variant: LayerVariant,
) -> Result<PredictionBundle> {
    let tau = power_law_exponent(params)?;
    require_scale_free(tau)?;
    dist.validate()?;
    let k_star = k_star(t, tau)?;
    let main_term = main_term_partial_sums(k_star, tau, dist)?;
    let layer_plan = s0.map(|s0| layer_plan(s0, t, alpha, tau, variant)).transpose()?;
    Ok(PredictionBundle {
        tau,
        t,
        alpha,
        k_star,
        q_t: main_term[k_star as usize],
        inner_threshold: inner_core_threshold(t, alpha, tau)?,
        main_term,
        layer_plan,
    })
}
