//! The preference cone `E = cone{x_j − ε·e − x_k} + ℝ^p_+` in both its
//! generator form and its facet form, and the two Euclidean distances that
//! make up the signed-distance value functions.
//!
//! Facets are obtained by duality. The dual cone
//! `E⁺ = {d : d ≥ 0, g_j·d ≥ 0}` has an explicit inequality description, and
//! since `E ⊇ ℝ^p_+` is full-dimensional and closed, `E = (E⁺)⁺`: the extreme
//! rays of `E⁺` are exactly the facet normals of `E`.

pub mod dd;
pub mod nnls;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::PreferenceInstance;
use crate::linalg::{dot, norm, rank, unit};

/// Relative tolerance used by [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Default dimension cap for the double description conversion.
pub const DEFAULT_DIM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCone {
    pub pref_generators: Vec<Vec<f64>>,
    pub axis_generators: Vec<Vec<f64>>,
    pub epsilon: f64,
}

impl GeneratorCone {
    /// Appends the `p` unit axis generators to the given preference generators.
    pub fn new(pref_generators: Vec<Vec<f64>>, dim: usize, epsilon: f64) -> Result<Self> {
        if let Some(g) = pref_generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
                context: "cone generator".into(),
            });
        }
        Ok(Self {
            pref_generators,
            axis_generators: (0..dim).map(|i| unit(i, dim)).collect(),
            epsilon,
        })
    }

    pub fn from_instance(inst: &PreferenceInstance, epsilon: f64) -> Self {
        Self {
            pref_generators: inst.generators(epsilon),
            axis_generators: (0..inst.dim()).map(|i| unit(i, inst.dim())).collect(),
            epsilon,
        }
    }

    pub fn dim(&self) -> usize {
        self.axis_generators.len()
    }

    pub fn all_generators(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.pref_generators.iter().chain(&self.axis_generators)
    }

    pub fn nnls_iteration_cap(&self) -> usize {
        let p = self.dim();
        (3 * (self.pref_generators.len() + p) * p).max(1)
    }

    /// Facet description, via the extreme rays of the dual cone.
    pub fn facets(&self) -> Result<FacetCone> {
        extreme_rays(&dual_hrep(self), self.dim())
    }
}

/// Homogeneous half-space description `{y : a_i·y ≥ 0}` of a cone. An empty
/// list of normals describes the whole space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetCone {
    #[serde(rename = "normals")]
    pub facet_normals: Vec<Vec<f64>>,
    #[serde(skip)]
    pub is_whole_space: bool,
    #[serde(skip)]
    pub dim: usize,
}

impl FacetCone {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("facet serialization cannot fail")
    }

    pub fn len(&self) -> usize {
        self.facet_normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facet_normals.is_empty()
    }

    fn min_slack(&self, y: &[f64]) -> f64 {
        self.facet_normals
            .iter()
            .map(|a| dot(a, y))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipClass {
    Interior,
    Boundary,
    Exterior,
}

impl MembershipClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MembershipClass::Interior => "interior",
            MembershipClass::Boundary => "boundary",
            MembershipClass::Exterior => "exterior",
        }
    }
}

/// Inequality rows of the dual cone: the `p` axis rows, then one row per
/// preference generator in input order.
pub fn dual_hrep(cone: &GeneratorCone) -> Vec<Vec<f64>> {
    cone.axis_generators
        .iter()
        .chain(&cone.pref_generators)
        .cloned()
        .collect()
}

/// Extreme rays of `{d : row·d ≥ 0}` with the default dimension cap.
pub fn extreme_rays(hrep: &[Vec<f64>], dim: usize) -> Result<FacetCone> {
    extreme_rays_capped(hrep, dim, DEFAULT_DIM_CAP)
}

/// Unit, deduplicated extreme rays of `{d : row·d ≥ 0}`. A lineality
/// direction `l` is reported as the pair `±l`, so the result always
/// generates the cone.
pub fn extreme_rays_capped(hrep: &[Vec<f64>], dim: usize, cap: usize) -> Result<FacetCone> {
    if dim > cap {
        return Err(Error::DimensionTooLarge { dim, cap });
    }
    if let Some(r) = hrep.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: r.len(),
            context: "inequality row".into(),
        });
    }
    let dec = dd::convert(hrep, dim);
    let mut normals = dec.rays;
    for l in dec.lineality {
        normals.push(l.iter().map(|v| -v).collect());
        normals.push(l);
    }
    Ok(FacetCone {
        is_whole_space: normals.is_empty(),
        facet_normals: normals,
        dim,
    })
}

pub fn classify(y: &[f64], facets: &FacetCone) -> Result<MembershipClass> {
    if facets.is_whole_space {
        return Err(Error::WholeSpace);
    }
    check_dim(y, facets.dim)?;
    let slack = facets.min_slack(y);
    let tol = CLASSIFY_TOL * (1.0 + norm(y));
    Ok(if slack > tol {
        MembershipClass::Interior
    } else if slack < -tol {
        MembershipClass::Exterior
    } else {
        MembershipClass::Boundary
    })
}

/// Euclidean distance from `y` to the cone, as the NNLS residual.
pub fn dist_to_cone(y: &[f64], cone: &GeneratorCone) -> Result<f64> {
    check_dim(y, cone.dim())?;
    let cols: Vec<Vec<f64>> = cone.all_generators().cloned().collect();
    Ok(nnls::nnls(&cols, y, cone.nnls_iteration_cap())?.residual_norm)
}

/// Distance from `y` to the closure of the complement of the cone: the
/// smallest facet slack for interior points, zero otherwise.
pub fn dist_to_complement(y: &[f64], facets: &FacetCone) -> Result<f64> {
    Ok(match classify(y, facets)? {
        MembershipClass::Interior => facets.min_slack(y),
        _ => 0.0,
    })
}

/// Whether the dual cone described by `hrep` has nonempty interior, i.e.
/// the primal cone is pointed. Decided from the double description output:
/// the rays must span the space and their sum must satisfy every nonzero
/// row strictly.
pub fn is_pointed_geometric(hrep: &[Vec<f64>], dim: usize) -> Result<bool> {
    let dual = extreme_rays(hrep, dim)?;
    if dual.is_whole_space {
        return Ok(false);
    }
    if rank(&dual.facet_normals, dim, 1e-9) < dim {
        return Ok(false);
    }
    let mut center = vec![0.0; dim];
    for r in &dual.facet_normals {
        center.iter_mut().zip(r).for_each(|(c, v)| *c += v);
    }
    Ok(hrep
        .iter()
        .filter(|row| norm(row) > 0.0)
        .all(|row| dot(row, &center) > 1e-9 * norm(row)))
}

fn check_dim(y: &[f64], dim: usize) -> Result<()> {
    if y.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: y.len(),
            context: "point".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1_cone() -> GeneratorCone {
        GeneratorCone::new(vec![vec![-1.0, 1.0], vec![-1.0, 0.5], vec![-1.0, 2.0]], 2, 0.0).unwrap()
    }

    fn ex3_cone() -> GeneratorCone {
        GeneratorCone::new(vec![vec![-1.0, 1.0], vec![1.0, -1.0]], 2, 0.0).unwrap()
    }

    #[test]
    fn example_one_dual_rows() {
        let rows = dual_hrep(&ex1_cone());
        assert_eq!(
            rows,
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![-1.0, 1.0],
                vec![-1.0, 0.5],
                vec![-1.0, 2.0]
            ]
        );
    }

    #[test]
    fn example_three_dual_rows() {
        let rows = dual_hrep(&ex3_cone());
        assert_eq!(
            rows,
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 1.0], vec![1.0, -1.0]]
        );
    }

    #[test]
    fn orthant_only_when_no_judgements() {
        let cone = GeneratorCone::new(vec![], 3, 0.0).unwrap();
        let rows = dual_hrep(&cone);
        assert_eq!(rows, (0..3).map(|i| unit(i, 3)).collect::<Vec<_>>());
        let facets = extreme_rays(&rows, 3).unwrap();
        assert_eq!(facets.len(), 3);
    }

    #[test]
    fn example_one_facets() {
        let facets = ex1_cone().facets().unwrap();
        assert!(!facets.is_whole_space);
        assert_eq!(facets.len(), 2);
        let s5 = 5f64.sqrt();
        let expected = [[0.0, 1.0], [1.0 / s5, 2.0 / s5]];
        for e in expected {
            assert!(
                facets
                    .facet_normals
                    .iter()
                    .any(|a| (a[0] - e[0]).abs() < 1e-12 && (a[1] - e[1]).abs() < 1e-12),
                "{:?}",
                facets.facet_normals
            );
        }
    }

    #[test]
    fn example_three_facets_are_a_half_plane() {
        let facets = ex3_cone().facets().unwrap();
        assert!(!facets.is_whole_space);
        assert_eq!(facets.len(), 1);
        let h = 1.0 / 2f64.sqrt();
        assert!((facets.facet_normals[0][0] - h).abs() < 1e-12);
        assert!((facets.facet_normals[0][1] - h).abs() < 1e-12);
        assert!(!is_pointed_geometric(&dual_hrep(&ex3_cone()), 2).unwrap());
    }

    #[test]
    fn whole_line_in_one_dimension() {
        let cone = GeneratorCone::new(vec![vec![-1.0]], 1, 0.0).unwrap();
        let facets = cone.facets().unwrap();
        assert!(facets.is_whole_space);
        assert!(matches!(classify(&[1.0], &facets), Err(Error::WholeSpace)));
        assert!(matches!(dist_to_complement(&[1.0], &facets), Err(Error::WholeSpace)));
        assert!(!is_pointed_geometric(&dual_hrep(&cone), 1).unwrap());
        assert_eq!(dist_to_cone(&[-5.0], &cone).unwrap(), 0.0);
    }

    #[test]
    fn example_one_pointed() {
        assert!(is_pointed_geometric(&dual_hrep(&ex1_cone()), 2).unwrap());
    }

    #[test]
    fn example_one_classification() {
        let facets = ex1_cone().facets().unwrap();
        assert_eq!(classify(&[2.0, 2.0], &facets).unwrap(), MembershipClass::Interior);
        assert_eq!(classify(&[1.0, 0.0], &facets).unwrap(), MembershipClass::Boundary);
        assert_eq!(classify(&[-3.0, -3.0], &facets).unwrap(), MembershipClass::Exterior);
        assert!(classify(&[1.0], &facets).is_err());
    }

    #[test]
    fn example_one_distances() {
        let cone = ex1_cone();
        let facets = cone.facets().unwrap();
        assert!(dist_to_cone(&[2.0, 2.0], &cone).unwrap() < 1e-12);
        assert!((dist_to_cone(&[-3.0, -3.0], &cone).unwrap() - 9.0 / 5f64.sqrt()).abs() < 1e-12);
        assert!(dist_to_cone(&[0.3, 7.0], &cone).unwrap() < 1e-12);
        assert!((dist_to_complement(&[2.0, 2.0], &facets).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(dist_to_complement(&[1.0, 0.0], &facets).unwrap(), 0.0);
        assert_eq!(dist_to_complement(&[-3.0, -3.0], &facets).unwrap(), 0.0);
    }

    #[test]
    fn dimension_cap() {
        let rows: Vec<Vec<f64>> = (0..13).map(|i| unit(i, 13)).collect();
        assert!(matches!(
            extreme_rays(&rows, 13),
            Err(Error::DimensionTooLarge { dim: 13, cap: 12 })
        ));
        assert!(extreme_rays_capped(&rows, 13, 13).is_ok());
    }

    #[test]
    fn facet_json() {
        let facets = extreme_rays(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap();
        assert_eq!(facets.to_json(), r#"{"normals":[[0.0,1.0],[1.0,0.0]]}"#);
    }
}
