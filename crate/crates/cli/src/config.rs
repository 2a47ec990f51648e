use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use cylbuckle_core::critical_load::{CriticalLoadProblem, DEFAULT_MARGIN};
use cylbuckle_core::material::IsotropicElasticity;
use cylbuckle_core::oracle::{RadialDiscretization, DEFAULT_DEGREE};
use cylbuckle_core::spectral_reduction::ShellGeometry;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldFormat {
    Vtk,
    Csv,
}

impl FieldFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FieldFormat::Vtk => "vtk",
            FieldFormat::Csv => "csv",
        }
    }
}

/// Everything a run needs. Read from a JSON file, then overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub nu: f64,
    #[serde(rename = "E")]
    pub young: f64,
    #[serde(rename = "h")]
    pub h_list: Vec<f64>,
    #[serde(rename = "L")]
    pub length: f64,
    pub margin: f64,
    pub degree: usize,
    pub out: PathBuf,
    /// Axial exponent of the buckling mode.
    pub alpha: f64,
    pub format: FieldFormat,
    /// Relative distance from the Koiter circle for `koiter`.
    pub koiter_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nu: 0.3,
            young: 1.0,
            h_list: vec![0.01],
            length: PI,
            margin: DEFAULT_MARGIN,
            degree: DEFAULT_DEGREE,
            out: PathBuf::from("out"),
            alpha: 0.5,
            format: FieldFormat::Vtk,
            koiter_tol: 0.05,
        }
    }
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON file with run configuration
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Poisson ratio
    #[arg(long, global = true)]
    pub nu: Option<f64>,
    /// Young's modulus
    #[arg(long = "young", global = true, value_name = "E")]
    pub young: Option<f64>,
    /// Thickness values, comma separated and strictly decreasing
    #[arg(long = "h", global = true, value_delimiter = ',', num_args = 1..)]
    pub h: Option<Vec<f64>>,
    /// Shell length
    #[arg(long, global = true, value_name = "L")]
    pub length: Option<f64>,
    /// Mode window margin factor
    #[arg(long, global = true)]
    pub margin: Option<f64>,
    /// Radial polynomial degree of the oracle
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Axial exponent of the buckling mode
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Field output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<FieldFormat>,
    /// Relative tolerance around the Koiter circle
    #[arg(long = "koiter-tol", global = true)]
    pub koiter_tol: Option<f64>,
    /// Worker threads (default: logical processors)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))
    }

    pub fn resolve(o: &Overrides) -> Result<Self, CliError> {
        let mut c = match &o.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(v) = o.nu {
            c.nu = v;
        }
        if let Some(v) = o.young {
            c.young = v;
        }
        if let Some(v) = &o.h {
            c.h_list = v.clone();
        }
        if let Some(v) = o.length {
            c.length = v;
        }
        if let Some(v) = o.margin {
            c.margin = v;
        }
        if let Some(v) = o.degree {
            c.degree = v;
        }
        if let Some(v) = &o.out {
            c.out = v.clone();
        }
        if let Some(v) = o.alpha {
            c.alpha = v;
        }
        if let Some(v) = o.format {
            c.format = v;
        }
        if let Some(v) = o.koiter_tol {
            c.koiter_tol = v;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |s: String| Err(CliError::Validation(s));
        self.elastic()?;
        if self.h_list.is_empty() {
            return bad("h-list is empty".into());
        }
        if !self.h_list.windows(2).all(|w| w[1] < w[0]) {
            return bad(format!("h-list {:?} is not strictly decreasing", self.h_list));
        }
        for &h in &self.h_list {
            self.geometry(h)?;
        }
        if !(self.margin.is_finite() && self.margin >= 1.0) {
            return bad(format!("margin {} must be finite and >= 1", self.margin));
        }
        self.discretization()?;
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("alpha {} must lie in (0, 1]", self.alpha));
        }
        if !(self.koiter_tol.is_finite() && self.koiter_tol > 0.0) {
            return bad(format!("koiter tolerance {} must be positive", self.koiter_tol));
        }
        Ok(())
    }

    pub fn elastic(&self) -> Result<IsotropicElasticity, CliError> {
        IsotropicElasticity::new(self.young, self.nu)
            .map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn geometry(&self, h: f64) -> Result<ShellGeometry, CliError> {
        ShellGeometry::new(h, self.length).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn problem(&self, h: f64) -> Result<CriticalLoadProblem, CliError> {
        Ok(CriticalLoadProblem {
            geom: self.geometry(h)?,
            elastic: self.elastic()?,
            margin: self.margin,
        })
    }

    pub fn discretization(&self) -> Result<RadialDiscretization, CliError> {
        RadialDiscretization::new(self.degree).map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"nu": 0.25, "h": [0.1, 0.01], "degree": 8}"#).unwrap();
        let o = Overrides {
            config: Some(path),
            nu: Some(0.3),
            ..Overrides::default()
        };
        let c = RunConfig::resolve(&o).unwrap();
        assert_eq!(c.nu, 0.3);
        assert_eq!(c.h_list, vec![0.1, 0.01]);
        assert_eq!(c.degree, 8);
        assert_eq!(c.length, PI);
    }

    #[test]
    fn rejects_bad_h_lists() {
        for h in [vec![], vec![0.01, 0.1], vec![0.1, 0.1], vec![-0.1]] {
            let o = Overrides {
                h: Some(h.clone()),
                ..Overrides::default()
            };
            assert!(matches!(RunConfig::resolve(&o), Err(CliError::Validation(_))), "{h:?}");
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"nue": 0.3}"#).is_err());
    }
}
