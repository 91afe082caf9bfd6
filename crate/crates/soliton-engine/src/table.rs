//! The table of soliton notions covered by the α = 0 Einstein-type
//! equation, with their structure constants.

use serde::Serialize;

use crate::error::SolitonError;
use crate::params::LambdaMode;

/// What λ means for an entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LambdaSemantics {
    Constant,
    Unconstrained,
    /// λ = σ_k − ν for a constant ν.
    SigmaKMinusNu { k: usize },
}

impl LambdaSemantics {
    pub fn mode(&self) -> LambdaMode {
        match self {
            LambdaSemantics::Constant => LambdaMode::Constant,
            LambdaSemantics::Unconstrained => LambdaMode::Unconstrained,
            LambdaSemantics::SigmaKMinusNu { .. } => LambdaMode::FunctionOfR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonTypeEntry {
    pub name: String,
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub rho: f64,
    pub lambda: LambdaSemantics,
}

impl SolitonTypeEntry {
    /// Flat key-value record.
    pub fn to_record(&self) -> String {
        let lambda = match &self.lambda {
            LambdaSemantics::Constant => "constant".to_string(),
            LambdaSemantics::Unconstrained => "unconstrained".to_string(),
            LambdaSemantics::SigmaKMinusNu { k } => format!("sigma_{k} - nu"),
        };
        format!(
            "name = {}\nalpha = {}\nbeta = {}\nmu = {}\nrho = {}\nlambda = {}\n",
            self.name, self.alpha, self.beta, self.mu, self.rho, lambda
        )
    }
}

const NAMES: [&str; 5] = [
    "gradient Yamabe soliton",
    "gradient almost Yamabe soliton",
    "gradient k-Yamabe soliton",
    "gradient conformal soliton",
    "gradient quasi-Yamabe soliton",
];

/// The full table, instantiated at dimension `n` (for the k-Yamabe β) and
/// parameter `k` (σ_k index and quasi-Yamabe 1/k).
pub fn soliton_type_table(n: usize, k: f64) -> Result<Vec<SolitonTypeEntry>, SolitonError> {
    NAMES
        .iter()
        .map(|name| lookup(name, Some(n), Some(k)))
        .collect()
}

/// Look up one entry by name. `n` is needed for the k-Yamabe entry and `k`
/// for the k-Yamabe and quasi-Yamabe entries. Short names like
/// "quasi-yamabe" are accepted.
pub fn lookup(name: &str, n: Option<usize>, k: Option<f64>) -> Result<SolitonTypeEntry, SolitonError> {
    let canonical = canonical_name(name)?;
    let need_k = |param: &str| -> Result<f64, SolitonError> {
        k.ok_or_else(|| SolitonError::MissingLookupParameter {
            name: canonical.to_string(),
            param: param.to_string(),
        })
    };
    let entry = match canonical {
        "gradient Yamabe soliton" => SolitonTypeEntry {
            name: canonical.into(),
            alpha: 0.0,
            beta: 1.0,
            mu: 0.0,
            rho: 1.0,
            lambda: LambdaSemantics::Constant,
        },
        "gradient almost Yamabe soliton" => SolitonTypeEntry {
            name: canonical.into(),
            alpha: 0.0,
            beta: 1.0,
            mu: 0.0,
            rho: 1.0,
            lambda: LambdaSemantics::Unconstrained,
        },
        "gradient k-Yamabe soliton" => {
            let n = n.ok_or_else(|| SolitonError::MissingLookupParameter {
                name: canonical.to_string(),
                param: "n".to_string(),
            })?;
            if n < 2 {
                return Err(SolitonError::DimensionTooSmall { n });
            }
            let k_val = need_k("k")?;
            if k_val < 1.0 || k_val.fract() != 0.0 {
                return Err(SolitonError::InvalidParameters(format!(
                    "sigma_k index must be a positive integer, got {k_val}"
                )));
            }
            SolitonTypeEntry {
                name: canonical.into(),
                alpha: 0.0,
                beta: 1.0 / (2.0 * (n as f64 - 1.0)),
                mu: 0.0,
                rho: 0.0,
                lambda: LambdaSemantics::SigmaKMinusNu { k: k_val as usize },
            }
        }
        "gradient conformal soliton" => SolitonTypeEntry {
            name: canonical.into(),
            alpha: 0.0,
            beta: 1.0,
            mu: 0.0,
            rho: 0.0,
            lambda: LambdaSemantics::Unconstrained,
        },
        "gradient quasi-Yamabe soliton" => {
            let k_val = need_k("k")?;
            if k_val == 0.0 {
                return Err(SolitonError::InvalidParameters(
                    "quasi-Yamabe parameter k must be nonzero".into(),
                ));
            }
            SolitonTypeEntry {
                name: canonical.into(),
                alpha: 0.0,
                beta: 1.0,
                mu: -1.0 / k_val,
                rho: 1.0,
                lambda: LambdaSemantics::Constant,
            }
        }
        _ => unreachable!("canonical_name returns table names"),
    };
    Ok(entry)
}

fn canonical_name(name: &str) -> Result<&'static str, SolitonError> {
    let squashed: String = name
        .to_ascii_lowercase()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect();
    for candidate in NAMES {
        let canonical_squashed: String = candidate
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        if squashed == canonical_squashed
            || canonical_squashed == format!("gradient{squashed}soliton")
        {
            return Ok(candidate);
        }
    }
    Err(SolitonError::UnknownSolitonType(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conformal_entry() {
        let e = lookup("gradient conformal soliton", None, None).unwrap();
        assert_eq!((e.alpha, e.beta, e.mu, e.rho), (0.0, 1.0, 0.0, 0.0));
        assert_eq!(e.lambda, LambdaSemantics::Unconstrained);
    }

    #[test]
    fn quasi_yamabe_entry_with_k() {
        let e = lookup("gradient quasi-Yamabe soliton", None, Some(3.0)).unwrap();
        assert_eq!((e.alpha, e.beta, e.rho), (0.0, 1.0, 1.0));
        assert!((e.mu + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(e.lambda, LambdaSemantics::Constant);
    }

    #[test]
    fn k_yamabe_beta_depends_on_n() {
        let e = lookup("k-yamabe", Some(4), Some(2.0)).unwrap();
        assert!((e.beta - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(e.lambda, LambdaSemantics::SigmaKMinusNu { k: 2 });
        assert!(lookup("k-yamabe", None, Some(2.0)).is_err());
    }

    #[test]
    fn yamabe_pair_differ_only_in_lambda() {
        let y = lookup("yamabe", None, None).unwrap();
        let ay = lookup("almost yamabe", None, None).unwrap();
        assert_eq!((y.beta, y.mu, y.rho), (ay.beta, ay.mu, ay.rho));
        assert_eq!(y.lambda, LambdaSemantics::Constant);
        assert_eq!(ay.lambda, LambdaSemantics::Unconstrained);
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(
            lookup("gradient Ricci soliton", None, None),
            Err(SolitonError::UnknownSolitonType(_))
        ));
    }

    #[test]
    fn full_table_has_five_entries() {
        let table = soliton_type_table(4, 2.0).unwrap();
        assert_eq!(table.len(), 5);
    }
}
