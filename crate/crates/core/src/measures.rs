//! Bipartite correlation measures for two-qubit states.
//!
//! All measurements are rank-one projectors `Π± = (I ± n·σ)/2 ⊗ I` acting on
//! the first (left) subsystem.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::optimizer::{minimize, OptimizerConfig};
use crate::qmat::{
    eig_hermitian, partial_trace, partial_transpose, von_neumann_entropy, ComplexMatrix,
    DensityMatrix,
};

/// Outcomes with probability at or below this are dropped from averages.
pub const NULL_OUTCOME_PROB: f64 = 1e-12;

/// Partial-transpose eigenvalues in `(-SPECTRUM_ROUNDOFF, 0)` count as zero.
pub const SPECTRUM_ROUNDOFF: f64 = 1e-14;

/// Direction `n = (sinθ cosφ, sinθ sinφ, cosθ)` on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    theta: f64,
    phi: f64,
}

impl MeasurementAngles {
    /// `theta` must lie in `[0, π]`; `phi` is reduced modulo `2π`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "measurement angles ({theta}, {phi}) out of range"
            )));
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Single-qubit projectors `(I ± n·σ)/2`.
    pub fn qubit_projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let [nx, ny, nz] = self.bloch_vector();
        let make = |sign: f64| {
            ComplexMatrix::from_rows(&[
                vec![
                    Complex64::new(0.5 * (1.0 + sign * nz), 0.0),
                    Complex64::new(0.5 * sign * nx, -0.5 * sign * ny),
                ],
                vec![
                    Complex64::new(0.5 * sign * nx, 0.5 * sign * ny),
                    Complex64::new(0.5 * (1.0 - sign * nz), 0.0),
                ],
            ])
            .expect("2x2 literal")
        };
        (make(1.0), make(-1.0))
    }
}

/// One branch of a projective measurement. `post_state` is `None` for a
/// null outcome (probability ≤ [`NULL_OUTCOME_PROB`]).
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    pub post_state: Option<DensityMatrix>,
}

impl MeasurementOutcome {
    pub fn is_null(&self) -> bool {
        self.post_state.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct CorrelationResult {
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub quantum_discord: f64,
    pub log_negativity: f64,
    pub optimal_angles: MeasurementAngles,
    pub min_conditional_entropy: f64,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.subsystem_dims() != [2, 2] {
        return Err(Error::BadSubsystemSpec(format!(
            "expected a two-qubit state, got subsystem dims {:?}",
            rho.subsystem_dims()
        )));
    }
    Ok(())
}

/// `S(ρ_A) + S(ρ_B) − S(ρ_AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let a = partial_trace(rho, &[0])?;
    let b = partial_trace(rho, &[1])?;
    Ok(von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(rho))
}

/// `Π± = (I ± n·σ)/2 ⊗ I` on two qubits.
pub fn projectors(angles: MeasurementAngles) -> (ComplexMatrix, ComplexMatrix) {
    let (plus, minus) = angles.qubit_projectors();
    let id = ComplexMatrix::identity(2);
    (plus.kron(&id), minus.kron(&id))
}

/// Measures the first qubit along `angles` and returns the `+` and `−`
/// branches with the conditional state of the second qubit.
pub fn measure_first(
    rho: &DensityMatrix,
    angles: MeasurementAngles,
) -> Result<(MeasurementOutcome, MeasurementOutcome)> {
    require_two_qubits(rho)?;
    let (plus, minus) = angles.qubit_projectors();
    Ok((branch(rho, &plus)?, branch(rho, &minus)?))
}

// Tr_A((P⊗I) ρ (P⊗I)) = Tr_A((P⊗I) ρ) for a projector P.
fn branch(rho: &DensityMatrix, proj: &ComplexMatrix) -> Result<MeasurementOutcome> {
    let m = rho.matrix();
    let mut post = ComplexMatrix::zeros(2);
    for b in 0..2 {
        for bp in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for ap in 0..2 {
                    acc += proj[(ap, a)] * m[(2 * a + b, 2 * ap + bp)];
                }
            }
            post[(b, bp)] = acc;
        }
    }
    let probability = post.trace().re.clamp(0.0, 1.0);
    if probability <= NULL_OUTCOME_PROB {
        return Ok(MeasurementOutcome {
            probability,
            post_state: None,
        });
    }
    // Symmetrize and renormalize by the computed trace so that roundoff in
    // small branches cannot trip the density-matrix checks.
    let herm = (&post + &post.adjoint()).scale(Complex64::new(0.5 / post.trace().re, 0.0));
    let post_state = DensityMatrix::new(herm, &[2])?;
    Ok(MeasurementOutcome {
        probability,
        post_state: Some(post_state),
    })
}

/// `Σⱼ pⱼ S(ρ_{B|j})` over non-null outcomes.
pub fn measured_conditional_entropy(rho: &DensityMatrix, angles: MeasurementAngles) -> Result<f64> {
    let (plus, minus) = measure_first(rho, angles)?;
    Ok([plus, minus]
        .iter()
        .filter_map(|o| {
            o.post_state
                .as_ref()
                .map(|s| o.probability * von_neumann_entropy(s))
        })
        .sum())
}

/// Minimizes the measured conditional entropy over measurement directions.
/// Returns `(S(ρ_B) − min, minimizer, min)`.
fn optimize(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<(f64, MeasurementAngles, f64)> {
    require_two_qubits(rho)?;
    let b = partial_trace(rho, &[1])?;
    let report = minimize(|angles| measured_conditional_entropy(rho, angles), cfg)?;
    Ok((
        von_neumann_entropy(&b) - report.value,
        report.angles,
        report.value,
    ))
}

/// Classical correlation `S(ρ_B) − min S(B|{Π})` and the optimal direction.
pub fn classical_correlation(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementAngles)> {
    let (c, angles, _) = optimize(rho, cfg)?;
    Ok((c, angles))
}

/// Mutual information minus classical correlation.
pub fn quantum_discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<f64> {
    Ok(analyze(rho, cfg)?.quantum_discord)
}

/// `log₂ ‖ρ^{T_A}‖₁`.
pub fn log_negativity(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let pt = partial_transpose(rho, 0)?;
    // ‖ρ^Γ‖₁ = 1 + 2 Σ|λ₋| for unit trace.
    let negativity = eig_hermitian(&pt)?
        .values
        .iter()
        .filter(|&&l| l <= -SPECTRUM_ROUNDOFF)
        .fold(0.0, |acc, l| acc - l);
    Ok((2.0 * negativity).ln_1p() / LN_2)
}

/// Every measure from a single optimizer run, so that `I = C + D` holds to
/// rounding.
pub fn analyze(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<CorrelationResult> {
    let mutual_information = mutual_information(rho)?;
    let (classical_correlation, optimal_angles, min_conditional_entropy) = optimize(rho, cfg)?;
    Ok(CorrelationResult {
        mutual_information,
        classical_correlation,
        quantum_discord: mutual_information - classical_correlation,
        log_negativity: log_negativity(rho)?,
        optimal_angles,
        min_conditional_entropy,
    })
}
