//! The operational consistency test.
//!
//! The judgements admit an increasing quasi-concave value function iff the
//! cone `E` is pointed, iff the pointedness LP has optimum zero, iff an
//! increasing linear value function separates them. [`consistency_verdict`]
//! evaluates each of these statements by its own route.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::cones::{self, GeneratorCone};
use crate::error::{Error, Result};
use crate::instance::PreferenceInstance;
use crate::linalg::dot;
use crate::lp::{self, PointednessLayout, ZERO_OBJECTIVE_TOL};
use crate::valuefn::ValueFunction;

/// Tolerance when re-checking a weight certificate against `d ≥ e`,
/// `g_j·d ≥ 1`.
pub const CERTIFICATE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSearchConfig {
    pub epsilon0: f64,
    pub beta: f64,
    pub max_iter: usize,
}

impl Default for EpsilonSearchConfig {
    fn default() -> Self {
        Self {
            epsilon0: 1e-2,
            beta: 0.5,
            max_iter: 60,
        }
    }
}

impl EpsilonSearchConfig {
    pub fn check(&self) -> Result<()> {
        if !(self.epsilon0 > 0.0 && self.epsilon0.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon0 must be positive, got {}",
                self.epsilon0
            )));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "beta must lie in (0, 1), got {}",
                self.beta
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointednessTest {
    pub pointed: bool,
    pub z_star: f64,
    /// The `d` block of the LP optimum, present when pointed.
    pub certificate: Option<Vec<f64>>,
}

/// Truth values of the four equivalent characterizations, each computed
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalentStatements {
    pub linear_value_function_exists: bool,
    pub quasi_concave_value_function_exists: bool,
    pub cone_pointed: bool,
    pub lp_optimum_zero: bool,
}

impl EquivalentStatements {
    pub fn agree(&self) -> bool {
        let v = [
            self.linear_value_function_exists,
            self.quasi_concave_value_function_exists,
            self.cone_pointed,
            self.lp_optimum_zero,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub pointed: bool,
    pub z_star: f64,
    pub weight_certificate: Option<Vec<f64>>,
    pub epsilon_bar: Option<f64>,
    pub facet_count: usize,
    pub verdict_text: String,
    #[serde(rename = "paper_statements")]
    pub statements: EquivalentStatements,
}

/// Solves the pointedness LP for the generators `x_j − ε·e − x_k`.
pub fn test_pointedness(inst: &PreferenceInstance, epsilon: f64) -> Result<PointednessTest> {
    inst.validated()?;
    let p = inst.dim();
    let gens = inst.generators(epsilon);
    let lp = lp::build_pointedness_lp(&gens, p)?;
    let sol = lp::solve(&lp)?;
    let z_star = sol.objective_value.max(0.0);
    let pointed = z_star <= ZERO_OBJECTIVE_TOL;
    let layout = PointednessLayout { p, t: gens.len() };
    let certificate = pointed.then(|| (0..p).map(|i| sol.values[layout.d(i)]).collect());
    debug!(
        "pointedness LP at eps={epsilon:e}: z*={z_star:e}, {} pivots",
        sol.pivots
    );
    Ok(PointednessTest {
        pointed,
        z_star,
        certificate,
    })
}

/// Backtracking search for `ε̄ = β^i·ε0` with `E^ε̄` pointed.
pub fn epsilon_search(inst: &PreferenceInstance, cfg: &EpsilonSearchConfig) -> Result<f64> {
    cfg.check()?;
    if !test_pointedness(inst, 0.0)?.pointed {
        return Err(Error::NotPointed);
    }
    let mut epsilon = cfg.epsilon0;
    for i in 0..cfg.max_iter {
        if test_pointedness(inst, epsilon)?.pointed {
            debug!("epsilon search: accepted {epsilon:e} after {} trials", i + 1);
            return Ok(epsilon);
        }
        if i + 1 < cfg.max_iter {
            epsilon *= cfg.beta;
        }
    }
    Err(Error::MaxIterExceeded {
        max_iter: cfg.max_iter,
        last_epsilon: epsilon,
    })
}

/// Weights `d ≥ e` with `(x_j − x_k)·d ≥ 1`, so `d·x_j > d·x_k` for every
/// judgement.
pub fn extract_linear_weights(inst: &PreferenceInstance) -> Result<Vec<f64>> {
    let test = test_pointedness(inst, 0.0)?;
    test.certificate.ok_or(Error::NotPointed)
}

/// Recomputes the certificate conditions `d ≥ e − tol` and
/// `(x_j − ε·e − x_k)·d ≥ 1 − tol` directly from the data.
pub fn verify_certificate(inst: &PreferenceInstance, epsilon: f64, d: &[f64]) -> bool {
    d.len() == inst.dim()
        && d.iter().all(|&v| v >= 1.0 - CERTIFICATE_TOL)
        && inst
            .generators(epsilon)
            .iter()
            .all(|g| dot(g, d) >= 1.0 - CERTIFICATE_TOL)
}

fn strictly_separates(inst: &PreferenceInstance, f: &ValueFunction) -> Result<bool> {
    let at_ref = f.evaluate(inst.reference())?;
    for xj in inst.preferred() {
        if f.evaluate(xj)? <= at_ref {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn consistency_verdict(inst: &PreferenceInstance, cfg: &EpsilonSearchConfig) -> Result<ConsistencyReport> {
    cfg.check()?;
    inst.validated()?;
    let test = test_pointedness(inst, 0.0)?;
    let cone = GeneratorCone::from_instance(inst, 0.0);
    let cone_pointed = cones::is_pointed_geometric(&cones::dual_hrep(&cone), inst.dim())?;
    let facet_count = cone.facets()?.len();

    let mut linear_exists = false;
    let mut quasi_concave_exists = false;
    let mut epsilon_bar = None;
    if let Some(d) = &test.certificate {
        let linear = ValueFunction::linear(inst.reference().to_vec(), d.clone())?;
        linear_exists = d.iter().all(|&w| w > 0.0) && strictly_separates(inst, &linear)?;

        let eps = epsilon_search(inst, cfg)?;
        let vartheta = ValueFunction::vartheta(inst, eps)?;
        quasi_concave_exists = strictly_separates(inst, &vartheta)?;
        epsilon_bar = Some(eps);
    }

    let statements = EquivalentStatements {
        linear_value_function_exists: linear_exists,
        quasi_concave_value_function_exists: quasi_concave_exists,
        cone_pointed,
        lp_optimum_zero: test.pointed,
    };
    let verdict_text = verdict_text(&statements, test.z_star);
    Ok(ConsistencyReport {
        pointed: test.pointed,
        z_star: test.z_star,
        weight_certificate: test.certificate,
        epsilon_bar,
        facet_count,
        verdict_text,
        statements,
    })
}

fn verdict_text(s: &EquivalentStatements, z_star: f64) -> String {
    let summary = match (s.lp_optimum_zero, s.agree()) {
        (true, true) => "preferences consistent with an increasing quasi-concave value function".to_string(),
        (false, true) => "preferences inconsistent with quasi-concavity: no increasing quasi-concave \
                          (equivalently, no increasing linear) value function reproduces them"
            .to_string(),
        (_, false) => "numerical disagreement between equivalent characterizations".to_string(),
    };
    format!(
        "{summary}\n\
         (i) increasing linear value function exists: {}\n\
         (ii) increasing quasi-concave value function exists: {}\n\
         (iii) cone E is pointed: {}\n\
         (iv) pointedness LP optimum is zero (z* = {z_star:e}): {}",
        s.linear_value_function_exists, s.quasi_concave_value_function_exists, s.cone_pointed, s.lp_optimum_zero,
    )
}
