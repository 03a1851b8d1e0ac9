//! Preference data: a set of alternatives, one reference alternative, and
//! the alternatives judged strictly better than it.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pairwise judgements `x_j ≻ x_k` for every `j` in `preferred_indices`,
/// where `x_k = alternatives[reference_index]`. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceInstance {
    pub alternatives: Vec<Vec<f64>>,
    pub reference_index: usize,
    pub preferred_indices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    EmptyDimension,
    DimensionMismatch,
    NonFiniteValue,
    DuplicateAlternative,
    IndexOutOfRange,
    DuplicatePreferredIndex,
    ReferenceInPreferred,
    NoJudgements,
    TooManyJudgements,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::EmptyDimension => "EMPTY_DIMENSION",
            ViolationCode::DimensionMismatch => "DIMENSION_MISMATCH",
            ViolationCode::NonFiniteValue => "NON_FINITE_VALUE",
            ViolationCode::DuplicateAlternative => "DUPLICATE_ALTERNATIVE",
            ViolationCode::IndexOutOfRange => "INDEX_OUT_OF_RANGE",
            ViolationCode::DuplicatePreferredIndex => "DUPLICATE_PREFERRED_INDEX",
            ViolationCode::ReferenceInPreferred => "REFERENCE_IN_PREFERRED",
            ViolationCode::NoJudgements => "NO_JUDGEMENTS",
            ViolationCode::TooManyJudgements => "TOO_MANY_JUDGEMENTS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.code.as_str(), v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Json,
    Csv,
}

impl InstanceFormat {
    /// Guess from a file name; anything not ending in `.csv` is JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InstanceFormat::Csv,
            _ => InstanceFormat::Json,
        }
    }
}

impl PreferenceInstance {
    pub fn new(alternatives: Vec<Vec<f64>>, reference_index: usize, preferred_indices: Vec<usize>) -> Self {
        Self {
            alternatives,
            reference_index,
            preferred_indices,
        }
    }

    /// Criterion-space dimension `p` (taken from the first alternative).
    pub fn dim(&self) -> usize {
        self.alternatives.first().map_or(0, Vec::len)
    }

    pub fn num_judgements(&self) -> usize {
        self.preferred_indices.len()
    }

    pub fn reference(&self) -> &[f64] {
        &self.alternatives[self.reference_index]
    }

    pub fn preferred(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.preferred_indices.iter().map(|&j| self.alternatives[j].as_slice())
    }

    pub fn parse(text: &str, format: InstanceFormat) -> Result<Self> {
        match format {
            InstanceFormat::Json => Self::from_json(text),
            InstanceFormat::Csv => Self::from_csv(text),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: PreferenceInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        inst.check_shape()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }

    /// One row per alternative, criterion values followed by a `role`
    /// column in `{ref, pref, other}`. An optional header row is skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());

        let mut alternatives = Vec::new();
        let mut reference = None;
        let mut preferred = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse {
                position: e
                    .position()
                    .map_or_else(|| format!("record {}", row + 1), |p| format!("line {}", p.line())),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(row as u64 + 1, |p| p.line());
            if record.len() < 2 {
                return Err(Error::Parse {
                    position: format!("line {line}"),
                    message: "expected at least one criterion value and a role column".into(),
                });
            }
            let role = record[record.len() - 1].to_ascii_lowercase();
            let values: Vec<&str> = record.iter().take(record.len() - 1).collect();
            if row == 0 && role == "role" {
                continue;
            }
            let mut point = Vec::with_capacity(values.len());
            for (col, field) in values.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    position: format!("line {line}, field {}", col + 1),
                    message: format!("`{field}` is not a number"),
                })?;
                point.push(v);
            }
            if let Some(first) = alternatives.first() {
                let first: &Vec<f64> = first;
                if first.len() != point.len() {
                    return Err(Error::DimensionMismatch {
                        expected: first.len(),
                        found: point.len(),
                        context: format!("line {line}"),
                    });
                }
            }
            let idx = alternatives.len();
            match role.as_str() {
                "ref" => {
                    if reference.replace(idx).is_some() {
                        return Err(Error::Parse {
                            position: format!("line {line}"),
                            message: "more than one `ref` row".into(),
                        });
                    }
                }
                "pref" => preferred.push(idx),
                "other" => {}
                other => {
                    return Err(Error::Parse {
                        position: format!("line {line}, field {}", record.len()),
                        message: format!("unknown role `{other}` (expected ref, pref or other)"),
                    })
                }
            }
            alternatives.push(point);
        }
        let reference_index = reference.ok_or_else(|| Error::Parse {
            position: "end of input".into(),
            message: "no `ref` row".into(),
        })?;
        Ok(Self::new(alternatives, reference_index, preferred))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, alt) in self.alternatives.iter().enumerate() {
            let role = if i == self.reference_index {
                "ref"
            } else if self.preferred_indices.contains(&i) {
                "pref"
            } else {
                "other"
            };
            let fields: Vec<String> = alt.iter().map(|v| v.to_string()).collect();
            out.push_str(&fields.join(","));
            out.push(',');
            out.push_str(role);
            out.push('\n');
        }
        out
    }

    fn check_shape(&self) -> Result<()> {
        let p = self.dim();
        for (i, alt) in self.alternatives.iter().enumerate() {
            if alt.len() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: alt.len(),
                    context: format!("alternative {i}"),
                });
            }
        }
        Ok(())
    }

    /// Checks every structural assumption; never fails, collects violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |code, message: String| violations.push(Violation { code, message });
        let m = self.alternatives.len();
        let p = self.dim();

        if p == 0 {
            push(
                ViolationCode::EmptyDimension,
                "alternatives must have at least one criterion".into(),
            );
        }
        for (i, alt) in self.alternatives.iter().enumerate() {
            if alt.len() != p {
                push(
                    ViolationCode::DimensionMismatch,
                    format!("alternative {i} has {} criteria, expected {p}", alt.len()),
                );
            }
            if alt.iter().any(|v| !v.is_finite()) {
                push(
                    ViolationCode::NonFiniteValue,
                    format!("alternative {i} has a non-finite value"),
                );
            }
        }

        // Exact bitwise comparison; -0.0 and 0.0 are the same criterion value.
        let mut seen: std::collections::HashMap<Vec<u64>, usize> = std::collections::HashMap::new();
        for (i, alt) in self.alternatives.iter().enumerate() {
            let key: Vec<u64> = alt.iter().map(|v| (v + 0.0).to_bits()).collect();
            if let Some(&first) = seen.get(&key) {
                push(
                    ViolationCode::DuplicateAlternative,
                    format!("alternatives {first} and {i} are identical"),
                );
            } else {
                seen.insert(key, i);
            }
        }

        if self.reference_index >= m {
            push(
                ViolationCode::IndexOutOfRange,
                format!(
                    "reference_index {} out of range for {m} alternatives",
                    self.reference_index
                ),
            );
        }
        let mut distinct = HashSet::new();
        for &j in &self.preferred_indices {
            if j >= m {
                push(
                    ViolationCode::IndexOutOfRange,
                    format!("preferred index {j} out of range for {m} alternatives"),
                );
            }
            if !distinct.insert(j) {
                push(
                    ViolationCode::DuplicatePreferredIndex,
                    format!("preferred index {j} listed twice"),
                );
            }
            if j == self.reference_index {
                push(
                    ViolationCode::ReferenceInPreferred,
                    format!("reference alternative {j} cannot be preferred to itself"),
                );
            }
        }

        let t = self.preferred_indices.len();
        if t == 0 {
            push(ViolationCode::NoJudgements, "at least one judgement is required".into());
        } else if t >= m {
            push(
                ViolationCode::TooManyJudgements,
                format!("{t} judgements need more than {m} alternatives"),
            );
        }

        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Returns `self` if valid, otherwise the report as an error.
    pub fn validated(&self) -> Result<&Self> {
        let report = self.validate();
        if report.ok {
            Ok(self)
        } else {
            Err(Error::InvalidInstance(report))
        }
    }

    /// Preference generators `x_j − ε·e − x_k`, one per judgement, in input order.
    pub fn generators(&self, epsilon: f64) -> Vec<Vec<f64>> {
        let xk = self.reference();
        self.preferred()
            .map(|xj| xj.iter().zip(xk).map(|(a, b)| a - epsilon - b).collect())
            .collect()
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

    #[test]
    fn parses_example_one_json() {
        let text =
            r#"{"alternatives": [[0,2],[0,1.5],[0,3],[1,1]], "reference_index": 3, "preferred_indices": [0,1,2]}"#;
        let inst = PreferenceInstance::from_json(text).unwrap();
        assert_eq!(inst, example1());
        assert_eq!(inst.dim(), 2);
        assert_eq!(inst.num_judgements(), 3);
        assert!(inst.validate().ok);
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let text = r#"{"alternatives": [[0,2],[0,1.5,1]], "reference_index": 1, "preferred_indices": [0]}"#;
        let err = PreferenceInstance::from_json(text).unwrap_err();
        assert_eq!(err.code(), "DIMENSION_MISMATCH");

        let csv = "0,2,pref\n1,1,1,ref\n";
        assert_eq!(
            PreferenceInstance::from_csv(csv).unwrap_err().code(),
            "DIMENSION_MISMATCH"
        );
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = PreferenceInstance::from_json("{\"alternatives\": [[0,2],\n [0,").unwrap_err();
        match err {
            Error::Parse { position, .. } => assert!(position.contains("line 2"), "{position}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_duplicate_of_reference_parses_then_fails_validation() {
        let csv = "c1,c2,role\n1,1,pref\n1,1,ref\n0,5,other\n";
        let inst = PreferenceInstance::from_csv(csv).unwrap();
        assert_eq!(inst.reference_index, 1);
        assert_eq!(inst.preferred_indices, vec![0]);
        let report = inst.validate();
        assert!(!report.ok);
        assert!(report.has(ViolationCode::DuplicateAlternative));
    }

    #[test]
    fn csv_errors() {
        assert_eq!(
            PreferenceInstance::from_csv("1,2,pref\n").unwrap_err().code(),
            "PARSE_ERROR"
        );
        assert_eq!(
            PreferenceInstance::from_csv("1,2,ref\n3,4,ref\n").unwrap_err().code(),
            "PARSE_ERROR"
        );
        let err = PreferenceInstance::from_csv("1,2,ref\n3,x,pref\n").unwrap_err();
        assert!(err.to_string().contains("line 2, field 2"), "{err}");
        assert!(PreferenceInstance::from_csv("1,2,ref\n3,4,better\n").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let inst = example1();
        assert_eq!(PreferenceInstance::from_csv(&inst.to_csv()).unwrap(), inst);
    }

    #[test]
    fn validation_codes() {
        let mut dup = example1();
        dup.alternatives[1] = dup.alternatives[0].clone();
        assert!(dup.validate().has(ViolationCode::DuplicateAlternative));

        let mut refpref = example1();
        refpref.preferred_indices.push(3);
        let report = refpref.validate();
        assert!(report.has(ViolationCode::ReferenceInPreferred));
        assert!(report.has(ViolationCode::TooManyJudgements));

        let mut empty = example1();
        empty.preferred_indices.clear();
        assert!(empty.validate().has(ViolationCode::NoJudgements));

        let mut oob = example1();
        oob.reference_index = 9;
        assert!(oob.validate().has(ViolationCode::IndexOutOfRange));

        let mut twice = example1();
        twice.preferred_indices = vec![0, 0];
        assert!(twice.validate().has(ViolationCode::DuplicatePreferredIndex));

        let nan = PreferenceInstance::new(vec![vec![f64::NAN], vec![1.0]], 1, vec![0]);
        assert!(nan.validate().has(ViolationCode::NonFiniteValue));

        let zero_dim = PreferenceInstance::new(vec![vec![], vec![]], 1, vec![0]);
        assert!(zero_dim.validate().has(ViolationCode::EmptyDimension));
    }

    #[test]
    fn report_ok_iff_no_violations() {
        let good = example1().validate();
        assert!(good.ok && good.violations.is_empty());
        let mut bad = example1();
        bad.preferred_indices.clear();
        let bad = bad.validate();
        assert!(!bad.ok && !bad.violations.is_empty());
    }

    #[test]
    fn example_one_generators() {
        let inst = example1();
        assert_eq!(
            inst.generators(0.0),
            vec![vec![-1.0, 1.0], vec![-1.0, 0.5], vec![-1.0, 2.0]]
        );
        let g = inst.generators(0.1);
        let expected = [[-1.1, 0.9], [-1.1, 0.4], [-1.1, 1.9]];
        for (row, exp) in g.iter().zip(expected) {
            for (a, b) in row.iter().zip(exp) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn example_three_generators() {
        let inst = PreferenceInstance::new(vec![vec![0.0, 2.0], vec![2.0, 0.0], vec![1.0, 1.0]], 2, vec![0, 1]);
        assert_eq!(inst.generators(0.0), vec![vec![-1.0, 1.0], vec![1.0, -1.0]]);
    }
}
