//! Parameter sweeps over `r` and their CSV encoding.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::analyze;
use crate::optimizer::OptimizerConfig;
use crate::rindler::{reduced_state, RindlerPair, UnruhParameter};

pub const CSV_HEADER: &str = "r,pair,mutual_information,classical_correlation,quantum_discord,log_negativity,theta_opt,phi_opt,min_conditional_entropy";

pub const DEFAULT_STEPS: usize = 101;

/// Discord values in `[-DISCORD_CLAMP, 0)` are reported as zero.
const DISCORD_CLAMP: f64 = 1e-9;
const ROUNDOFF_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    One(RindlerPair),
    All,
}

impl PairSelection {
    pub fn pairs(self) -> Vec<RindlerPair> {
        match self {
            PairSelection::One(p) => vec![p],
            PairSelection::All => RindlerPair::ALL.to_vec(),
        }
    }
}

impl FromStr for PairSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ALL" {
            Ok(PairSelection::All)
        } else {
            s.parse().map(PairSelection::One)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub pairs: PairSelection,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            pairs: PairSelection::All,
            r_min: 0.0,
            r_max: FRAC_PI_4,
            steps: DEFAULT_STEPS,
            optimizer: OptimizerConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let ordered = 0.0 <= self.r_min && self.r_min <= self.r_max && self.r_max <= FRAC_PI_4;
        if !ordered {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= r_min <= r_max <= pi/4, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        self.optimizer.validate()
    }
}

/// Inclusive linear grid; the last point is exactly `r_max`.
pub fn r_grid(r_min: f64, r_max: f64, steps: usize) -> Vec<f64> {
    let span = r_max - r_min;
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                r_max
            } else {
                r_min + span * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub r: f64,
    pub pair: RindlerPair,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub quantum_discord: f64,
    pub log_negativity: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
    pub min_conditional_entropy: f64,
}

fn clamp_small_negative(x: f64, tol: f64) -> f64 {
    if (-tol..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}

pub fn evaluate(
    pair: RindlerPair,
    r: UnruhParameter,
    opt: &OptimizerConfig,
) -> Result<CorrelationRecord> {
    let rho = reduced_state(r, pair);
    let res = analyze(&rho, opt).map_err(|e| Error::AtPoint {
        pair: pair.to_string(),
        r: r.value(),
        source: Box::new(e),
    })?;
    Ok(CorrelationRecord {
        r: r.value(),
        pair,
        mutual_information: clamp_small_negative(res.mutual_information, ROUNDOFF_CLAMP),
        classical_correlation: clamp_small_negative(res.classical_correlation, ROUNDOFF_CLAMP),
        quantum_discord: clamp_small_negative(res.quantum_discord, DISCORD_CLAMP),
        log_negativity: clamp_small_negative(res.log_negativity, ROUNDOFF_CLAMP),
        theta_opt: res.optimal_angles.theta(),
        phi_opt: res.optimal_angles.phi(),
        min_conditional_entropy: clamp_small_negative(res.min_conditional_entropy, ROUNDOFF_CLAMP),
    })
}

/// One record per `(pair, r)`, grouped by pair in `AI, AII, III` order and
/// ascending in `r` within each group.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<CorrelationRecord>> {
    cfg.validate()?;
    let grid = r_grid(cfg.r_min, cfg.r_max, cfg.steps);
    let jobs: Vec<(RindlerPair, f64)> = cfg
        .pairs
        .pairs()
        .into_iter()
        .flat_map(|p| grid.iter().map(move |&r| (p, r)))
        .collect();
    jobs.into_par_iter()
        .map(|(pair, r)| evaluate(pair, UnruhParameter::new(r)?, &cfg.optimizer))
        .collect()
}

/// 12 significant digits in fixed notation, scientific below `1e-4`, and a
/// bare `0` for zero.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    if x.abs() < 1e-4 {
        return sci;
    }
    // Exponent after rounding to 12 digits, so 0.99999999999999 counts as 1.
    let exponent: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

impl CorrelationRecord {
    pub fn csv_row(&self) -> String {
        [
            format_value(self.r),
            self.pair.to_string(),
            format_value(self.mutual_information),
            format_value(self.classical_correlation),
            format_value(self.quantum_discord),
            format_value(self.log_negativity),
            format_value(self.theta_opt),
            format_value(self.phi_opt),
            format_value(self.min_conditional_entropy),
        ]
        .join(",")
    }

    pub fn additivity_gap(&self) -> f64 {
        self.mutual_information - self.classical_correlation - self.quantum_discord
    }
}

impl fmt::Display for CorrelationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (left, right) = self.pair.labels();
        writeln!(f, "state: rho_{{{left},{right}}}  (measured mode {left})")?;
        writeln!(f, "r = {}", format_value(self.r))?;
        writeln!(
            f,
            "  mutual information     I   = {}",
            format_value(self.mutual_information)
        )?;
        writeln!(
            f,
            "  classical correlation  C   = {}",
            format_value(self.classical_correlation)
        )?;
        writeln!(
            f,
            "  quantum discord        D   = {}",
            format_value(self.quantum_discord)
        )?;
        writeln!(
            f,
            "  logarithmic negativity E_N = {}",
            format_value(self.log_negativity)
        )?;
        writeln!(
            f,
            "  optimal direction      theta = {}, phi = {}",
            format_value(self.theta_opt),
            format_value(self.phi_opt)
        )?;
        write!(
            f,
            "  min conditional entropy     = {}",
            format_value(self.min_conditional_entropy)
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[CorrelationRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for rec in records {
        writeln!(out, "{}", rec.csv_row())?;
    }
    out.flush()
}
