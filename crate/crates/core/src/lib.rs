//! Decide whether pairwise judgements `x_j ≻ x_k` (all against one fixed
//! reference alternative) can come from an increasing quasi-concave value
//! function, and build explicit consistent value functions when they can.
//!
//! ```
//! use prefcone::{consistency_verdict, EpsilonSearchConfig, PreferenceInstance};
//!
//! let inst = PreferenceInstance::from_json(
//!     r#"{"alternatives": [[0,2],[0,1.5],[0,3],[1,1]], "reference_index": 3, "preferred_indices": [0,1,2]}"#,
//! ).unwrap();
//! let report = consistency_verdict(&inst, &EpsilonSearchConfig::default()).unwrap();
//! assert!(report.pointed);
//! ```

pub mod cones;
pub mod consistency;
pub mod error;
pub mod instance;
pub mod lp;
pub mod plot;
pub mod valuefn;

#[cfg(feature = "cli")]
pub mod cli;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

mod linalg;

pub use cones::{FacetCone, GeneratorCone, MembershipClass};
pub use consistency::{
    consistency_verdict, epsilon_search, extract_linear_weights, test_pointedness, ConsistencyReport,
    EpsilonSearchConfig, EquivalentStatements, PointednessTest,
};
pub use error::{Error, Result};
pub use instance::{InstanceFormat, PreferenceInstance, ValidationReport, Violation, ViolationCode};
pub use lp::{LpSolution, LpStatus, StandardLp};
pub use valuefn::{ValueFunction, ValueFunctionKind};
