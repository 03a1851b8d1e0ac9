//! Constructed value functions.
//!
//! * `psi(x)      = dist(x − x_k, ℝ^p∖E)  − dist(x − x_k, E)`
//! * `vartheta(x) = dist(x − x_k, ℝ^p∖E^ε̄) − dist(x − x_k, E^ε̄)`
//! * `linear(x)   = d·x`

use serde::{Deserialize, Serialize};

use crate::cones::{self, FacetCone, GeneratorCone, MembershipClass, CLASSIFY_TOL};
use crate::consistency;
use crate::error::{Error, Result};
use crate::instance::PreferenceInstance;
use crate::linalg::{dot, norm, sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueFunctionKind {
    Psi,
    Vartheta,
    Linear,
}

impl std::str::FromStr for ValueFunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi" => Ok(Self::Psi),
            "vartheta" | "theta" => Ok(Self::Vartheta),
            "linear" => Ok(Self::Linear),
            other => Err(Error::InvalidConfig(format!(
                "unknown value function `{other}` (expected psi, vartheta or linear)"
            ))),
        }
    }
}

impl ValueFunctionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Psi => "psi",
            Self::Vartheta => "vartheta",
            Self::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueFunction {
    kind: ValueFunctionKind,
    reference: Vec<f64>,
    gen_cone: Option<GeneratorCone>,
    facet_cone: Option<FacetCone>,
    weights: Option<Vec<f64>>,
}

impl ValueFunction {
    /// Signed distance to `x_k + E`. Defined whenever `E ≠ ℝ^p`, pointed or not.
    pub fn psi(inst: &PreferenceInstance) -> Result<Self> {
        inst.validated()?;
        let cone = GeneratorCone::from_instance(inst, 0.0);
        let facets = cone.facets()?;
        if facets.is_whole_space {
            return Err(Error::WholeSpace);
        }
        Ok(Self::from_parts(
            ValueFunctionKind::Psi,
            inst.reference().to_vec(),
            cone,
            facets,
        ))
    }

    /// Signed distance to `x_k + E^ε̄`; requires `ε̄ > 0` with `E^ε̄` pointed.
    pub fn vartheta(inst: &PreferenceInstance, epsilon_bar: f64) -> Result<Self> {
        if !(epsilon_bar > 0.0 && epsilon_bar.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "vartheta needs a positive epsilon, got {epsilon_bar}"
            )));
        }
        if !consistency::test_pointedness(inst, epsilon_bar)?.pointed {
            return Err(Error::NotPointed);
        }
        let cone = GeneratorCone::from_instance(inst, epsilon_bar);
        let facets = cone.facets()?;
        Ok(Self::from_parts(
            ValueFunctionKind::Vartheta,
            inst.reference().to_vec(),
            cone,
            facets,
        ))
    }

    /// `x ↦ weights·x`; weights must be strictly positive.
    pub fn linear(reference: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != reference.len() {
            return Err(Error::DimensionMismatch {
                expected: reference.len(),
                found: weights.len(),
                context: "linear weights".into(),
            });
        }
        if weights.iter().any(|&w| w.is_nan() || w <= 0.0) {
            return Err(Error::InvalidConfig("linear weights must be strictly positive".into()));
        }
        Ok(Self {
            kind: ValueFunctionKind::Linear,
            reference,
            gen_cone: None,
            facet_cone: None,
            weights: Some(weights),
        })
    }

    /// Linear value function from the LP certificate.
    pub fn linear_from_instance(inst: &PreferenceInstance) -> Result<Self> {
        let d = consistency::extract_linear_weights(inst)?;
        Self::linear(inst.reference().to_vec(), d)
    }

    /// Builds `kind` for the instance, running the ε-search first for
    /// `vartheta`.
    pub fn for_instance(
        inst: &PreferenceInstance,
        kind: ValueFunctionKind,
        cfg: &consistency::EpsilonSearchConfig,
    ) -> Result<Self> {
        match kind {
            ValueFunctionKind::Psi => Self::psi(inst),
            ValueFunctionKind::Vartheta => Self::vartheta(inst, consistency::epsilon_search(inst, cfg)?),
            ValueFunctionKind::Linear => Self::linear_from_instance(inst),
        }
    }

    /// Assembles a signed-distance function without any consistency checks
    /// between the generator and facet descriptions.
    pub fn from_parts(
        kind: ValueFunctionKind,
        reference: Vec<f64>,
        gen_cone: GeneratorCone,
        facet_cone: FacetCone,
    ) -> Self {
        Self {
            kind,
            reference,
            gen_cone: Some(gen_cone),
            facet_cone: Some(facet_cone),
            weights: None,
        }
    }

    pub fn kind(&self) -> ValueFunctionKind {
        self.kind
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    pub fn dim(&self) -> usize {
        self.reference.len()
    }

    pub fn gen_cone(&self) -> Option<&GeneratorCone> {
        self.gen_cone.as_ref()
    }

    pub fn facet_cone(&self) -> Option<&FacetCone> {
        self.facet_cone.as_ref()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.evaluate_classified(x).map(|(v, _)| v)
    }

    /// Value together with the position of `x` relative to the upper level
    /// set through `x_k` (`x_k + E` for the distance functions, the
    /// half-space `{d·(x − x_k) ≥ 0}` for the linear one).
    pub fn evaluate_classified(&self, x: &[f64]) -> Result<(f64, MembershipClass)> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
                context: "evaluation point".into(),
            });
        }
        let y = sub(x, &self.reference);
        if let Some(d) = &self.weights {
            let value = dot(d, x);
            let diff = dot(d, &y);
            let tol = CLASSIFY_TOL * (1.0 + norm(&y)) * norm(d);
            let class = if diff > tol {
                MembershipClass::Interior
            } else if diff < -tol {
                MembershipClass::Exterior
            } else {
                MembershipClass::Boundary
            };
            return Ok((value, class));
        }

        let facets = self.facet_cone.as_ref().expect("distance function without facets");
        let cone = self.gen_cone.as_ref().expect("distance function without generators");
        let class = cones::classify(&y, facets)?;
        let value = match class {
            MembershipClass::Interior => cones::dist_to_complement(&y, facets)?,
            MembershipClass::Boundary => 0.0,
            MembershipClass::Exterior => -cones::dist_to_cone(&y, cone)?,
        };
        Ok((value, class))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> PreferenceInstance {
        PreferenceInstance::new(
            vec![vec![0.0, 2.0], vec![0.0, 1.5], vec![0.0, 3.0], vec![1.0, 1.0]],
            3,
            vec![0, 1, 2],
        )
    }

    fn example3() -> PreferenceInstance {
        PreferenceInstance::new(vec![vec![0.0, 2.0], vec![2.0, 0.0], vec![1.0, 1.0]], 2, vec![0, 1])
    }

    #[test]
    fn example_one_psi_values() {
        let psi = ValueFunction::psi(&example1()).unwrap();
        assert!((psi.evaluate(&[3.0, 3.0]).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(psi.evaluate(&[2.0, 1.0]).unwrap(), 0.0);
        assert!((psi.evaluate(&[-2.0, -2.0]).unwrap() + 9.0 / 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(psi.evaluate(&[1.0, 1.0]).unwrap(), 0.0);
        assert!(psi.evaluate(&[1.0]).is_err());
    }

    #[test]
    fn example_three_psi_is_a_half_plane_distance() {
        // E = {y1 + y2 ≥ 0}: not pointed, but psi is still defined.
        let psi = ValueFunction::psi(&example3()).unwrap();
        let v = psi.evaluate(&[3.0, 3.0]).unwrap();
        assert!((v - 4.0 / 2f64.sqrt()).abs() < 1e-12);
        let v = psi.evaluate(&[0.0, 0.0]).unwrap();
        assert!((v + 2.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            ValueFunction::vartheta(&example3(), 0.01),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn whole_space_psi_is_rejected() {
        let inst = PreferenceInstance::new(vec![vec![0.0], vec![1.0]], 1, vec![0]);
        assert!(matches!(ValueFunction::psi(&inst), Err(Error::WholeSpace)));
    }

    #[test]
    fn unit_step_psi() {
        let inst = PreferenceInstance::new(vec![vec![2.0, 2.0], vec![1.0, 1.0]], 1, vec![0]);
        let psi = ValueFunction::psi(&inst).unwrap();
        assert!((psi.evaluate(&[2.0, 2.0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vartheta_preconditions() {
        assert!(ValueFunction::vartheta(&example1(), 0.0).is_err());
        assert!(ValueFunction::vartheta(&example1(), -1.0).is_err());
        let th = ValueFunction::vartheta(&example1(), 0.01).unwrap();
        assert_eq!(th.kind(), ValueFunctionKind::Vartheta);
        assert_eq!(th.evaluate(&[1.0, 1.0]).unwrap(), 0.0);
        for x in [[0.0, 2.0], [0.0, 1.5], [0.0, 3.0]] {
            assert!(th.evaluate(&x).unwrap() > 1e-9);
        }
    }

    #[test]
    fn vartheta_is_zero_on_shared_orthant_facet() {
        // x_k + (1, 0) lies in x_k + E, yet stays on the facet y2 = 0 of E^ε.
        let th = ValueFunction::vartheta(&example1(), 0.01).unwrap();
        let (v, class) = th.evaluate_classified(&[2.0, 1.0]).unwrap();
        assert_eq!(class, MembershipClass::Boundary);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn linear_handle() {
        let lin = ValueFunction::linear(vec![1.0, 1.0], vec![1.0, 4.0]).unwrap();
        assert_eq!(lin.evaluate(&[0.0, 2.0]).unwrap(), 8.0);
        assert_eq!(lin.evaluate(&[1.0, 1.0]).unwrap(), 5.0);
        assert!(ValueFunction::linear(vec![1.0, 1.0], vec![0.0, 1.0]).is_err());
        assert!(ValueFunction::linear(vec![1.0, 1.0], vec![1.0]).is_err());
        let from_lp = ValueFunction::linear_from_instance(&example1()).unwrap();
        assert!(from_lp.weights().unwrap().iter().all(|&w| w >= 1.0));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("psi".parse::<ValueFunctionKind>().unwrap(), ValueFunctionKind::Psi);
        assert_eq!(
            "VARTHETA".parse::<ValueFunctionKind>().unwrap(),
            ValueFunctionKind::Vartheta
        );
        assert!("phi".parse::<ValueFunctionKind>().is_err());
    }
}
