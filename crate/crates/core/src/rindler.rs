//! The Unruh-degraded Dirac state shared by an inertial observer (mode `A`)
//! and a uniformly accelerated one (Rindler modes `I` and `II`).
//!
//! Natural units throughout; the mode frequency `ω` and the proper
//! acceleration `a` only ever enter through the ratio `2πω/a`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{partial_trace, shannon_entropy, ComplexMatrix, DensityMatrix, StateVector};

/// Acceleration parameter `r ∈ [0, π/4]`, with `cos r = (e^{-2πω/a} + 1)^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnruhParameter(f64);

impl UnruhParameter {
    /// The infinite-acceleration limit.
    pub const MAX: f64 = FRAC_PI_4;

    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=Self::MAX).contains(&r) {
            return Err(Error::InvalidConfig(format!(
                "acceleration parameter r = {r} outside [0, pi/4]"
            )));
        }
        Ok(Self(r))
    }

    pub fn infinite_acceleration() -> Self {
        Self(Self::MAX)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }
}

/// Values of `r` below this are reported as exactly zero.
const R_FLOOR: f64 = 1e-100;

/// Converts a mode frequency and proper acceleration into `r`.
///
/// Uses `tan r = e^{-πω/a}`, which is the same relation as the cosine form
/// but stays accurate when the exponential is tiny.
pub fn acceleration_to_r(omega: f64, a: f64) -> Result<UnruhParameter> {
    check_positive(omega, a)?;
    let r = (-PI * omega / a).exp().atan();
    Ok(UnruhParameter(if r < R_FLOOR {
        0.0
    } else {
        r.min(FRAC_PI_4)
    }))
}

/// Fermi-Dirac occupation `1/(e^{2πω/a} + 1)` seen by the accelerated observer.
pub fn thermal_occupation(omega: f64, a: f64) -> Result<f64> {
    check_positive(omega, a)?;
    Ok(1.0 / ((2.0 * PI * omega / a).exp() + 1.0))
}

fn check_positive(omega: f64, a: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::NonPositiveInput("omega"));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::NonPositiveInput("a"));
    }
    Ok(())
}

/// The three bipartite cuts of the `A ⊗ I ⊗ II` state. The left factor is
/// always the measured one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RindlerPair {
    AI,
    AII,
    III,
}

impl RindlerPair {
    pub const ALL: [RindlerPair; 3] = [RindlerPair::AI, RindlerPair::AII, RindlerPair::III];

    /// Tripartite subsystem indices kept by this reduction.
    pub fn kept_modes(self) -> [usize; 2] {
        match self {
            RindlerPair::AI => [0, 1],
            RindlerPair::AII => [0, 2],
            RindlerPair::III => [1, 2],
        }
    }

    pub fn labels(self) -> (&'static str, &'static str) {
        match self {
            RindlerPair::AI => ("A", "I"),
            RindlerPair::AII => ("A", "II"),
            RindlerPair::III => ("I", "II"),
        }
    }

    pub fn measured_label(self) -> &'static str {
        self.labels().0
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RindlerPair::AI => "AI",
            RindlerPair::AII => "AII",
            RindlerPair::III => "III",
        }
    }
}

impl fmt::Display for RindlerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RindlerPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AI" => Ok(RindlerPair::AI),
            "AII" => Ok(RindlerPair::AII),
            "III" => Ok(RindlerPair::III),
            other => Err(Error::InvalidConfig(format!("unknown pair `{other}`"))),
        }
    }
}

/// `(cos r|000⟩ + sin r|011⟩ + |110⟩)/√2` in the ordering `|A, I, II⟩`.
pub fn tripartite_state(r: UnruhParameter) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(r.cos() * FRAC_1_SQRT_2, 0.0);
    amps[0b011] = Complex64::new(r.sin() * FRAC_1_SQRT_2, 0.0);
    amps[0b110] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(amps).expect("tripartite state is normalized for every r")
}

pub fn tripartite_density(r: UnruhParameter) -> DensityMatrix {
    DensityMatrix::from_pure(&tripartite_state(r), &[2, 2, 2])
        .expect("projector of a unit vector is a density matrix")
}

/// Two-mode reduction obtained by tracing the third mode out of the pure
/// tripartite state.
pub fn reduced_state(r: UnruhParameter, pair: RindlerPair) -> DensityMatrix {
    partial_trace(&tripartite_density(r), &pair.kept_modes())
        .expect("reductions of a valid tripartite state are valid")
}

/// The reductions written out entry by entry in the `|00⟩,|01⟩,|10⟩,|11⟩`
/// basis of the pair.
pub fn reduced_state_explicit(r: UnruhParameter, pair: RindlerPair) -> ComplexMatrix {
    let (c, s) = (r.cos(), r.sin());
    let rows = match pair {
        RindlerPair::AI => vec![
            vec![c * c, 0.0, 0.0, c],
            vec![0.0, s * s, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![c, 0.0, 0.0, 1.0],
        ],
        RindlerPair::AII => vec![
            vec![c * c, 0.0, 0.0, 0.0],
            vec![0.0, s * s, s, 0.0],
            vec![0.0, s, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ],
        RindlerPair::III => vec![
            vec![c * c, 0.0, 0.0, s * c],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![s * c, 0.0, 0.0, s * s],
        ],
    };
    ComplexMatrix::from_real_rows(&rows)
        .expect("4x4 literal")
        .scale(Complex64::new(0.5, 0.0))
}

/// Joint entropy of the reduction in closed form.
///
/// The tripartite state is pure, so each two-mode entropy equals the entropy
/// of the complementary single mode: `S(A,I) = S(II)`, `S(A,II) = S(I)` and
/// `S(I,II) = S(A) = 1`.
pub fn closed_form_entropy(r: UnruhParameter, pair: RindlerPair) -> f64 {
    let c2 = r.cos() * r.cos();
    match pair {
        RindlerPair::AI => shannon_entropy(&[(1.0 + c2) / 2.0, (1.0 - c2) / 2.0]),
        RindlerPair::AII => shannon_entropy(&[c2 / 2.0, 1.0 - c2 / 2.0]),
        RindlerPair::III => 1.0,
    }
}

/// Closed-form entropy of a single mode: `S(A) = 1`,
/// `S(I) = H(cos²r/2)` and `S(II) = H((1 + cos²r)/2)`.
pub fn closed_form_mode_entropy(r: UnruhParameter, mode: usize) -> f64 {
    let c2 = r.cos() * r.cos();
    match mode {
        0 => 1.0,
        1 => shannon_entropy(&[c2 / 2.0, 1.0 - c2 / 2.0]),
        2 => shannon_entropy(&[(1.0 + c2) / 2.0, (1.0 - c2) / 2.0]),
        _ => panic!("mode index {mode} out of range"),
    }
}

/// Spectra of the two conditional states of mode `I` after measuring `A` in
/// the `A ⊗ I` reduction: `[outcome +, outcome −]`, each pair descending.
///
/// `½(1 ± √(1 − sin²2r cos⁴(θ/2)))` for `+` and the same with `sin⁴(θ/2)`
/// for `−`.
pub fn closed_form_conditional_eigenvalues(r: UnruhParameter, theta: f64) -> [[f64; 2]; 2] {
    let s2 = (2.0 * r.value()).sin().powi(2);
    let pair = |w: f64| {
        let root = (1.0 - s2 * w.powi(4)).max(0.0).sqrt();
        [0.5 * (1.0 + root), 0.5 * (1.0 - root)]
    };
    [pair((theta / 2.0).cos()), pair((theta / 2.0).sin())]
}

/// Normalized conditional state of mode `I` for the `A ⊗ I` reduction after
/// outcome `+` (`plus = true`) or `−` along the direction `(θ, φ)`.
pub fn closed_form_conditional_state(
    r: UnruhParameter,
    theta: f64,
    phi: f64,
    plus: bool,
) -> ComplexMatrix {
    let (c, s) = (r.cos(), r.sin());
    let (ct, st) = (theta.cos(), theta.sin());
    let sign = if plus { 1.0 } else { -1.0 };
    let off = Complex64::from_polar(sign * c * st, phi);
    let half = 0.5;
    ComplexMatrix::from_rows(&[
        vec![
            Complex64::new(half * (1.0 + sign * ct) * c * c, 0.0),
            off * half,
        ],
        vec![
            off.conj() * half,
            Complex64::new(half * (1.0 - sign * ct + (1.0 + sign * ct) * s * s), 0.0),
        ],
    ])
    .expect("2x2 literal")
}

/// Outcome probabilities `(p₊, p₋)` when the left mode of `pair` is measured
/// along polar angle `θ`.
pub fn closed_form_probabilities(r: UnruhParameter, pair: RindlerPair, theta: f64) -> (f64, f64) {
    match pair {
        RindlerPair::AI | RindlerPair::AII => (0.5, 0.5),
        RindlerPair::III => {
            let shift = theta.cos() * r.sin() * r.sin();
            (0.5 * (1.0 - shift), 0.5 * (1.0 + shift))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{eig_hermitian, von_neumann_entropy};
    use std::f64::consts::FRAC_PI_6;

    fn r(x: f64) -> UnruhParameter {
        UnruhParameter::new(x).unwrap()
    }

    #[test]
    fn parameter_range() {
        assert!(UnruhParameter::new(-1e-3).is_err());
        assert!(UnruhParameter::new(0.8).is_err());
        assert!(UnruhParameter::new(f64::NAN).is_err());
        assert_eq!(UnruhParameter::new(FRAC_PI_4).unwrap().value(), FRAC_PI_4);
    }

    #[test]
    fn acceleration_conversion() {
        let lim = acceleration_to_r(1.0, 1e9).unwrap();
        assert!((lim.value() - FRAC_PI_4).abs() < 1e-6);

        // 2πω/a = ln 3 gives cos r = √3/2.
        let a = 2.0 * PI / 3f64.ln();
        let sixth = acceleration_to_r(1.0, a).unwrap();
        assert!((sixth.value() - FRAC_PI_6).abs() < 1e-14);
        assert!((thermal_occupation(1.0, a).unwrap() - 0.25).abs() < 1e-15);

        assert_eq!(acceleration_to_r(1.0, 1e-3).unwrap().value(), 0.0);
        assert!((thermal_occupation(1.0, 1e12).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn acceleration_rejects_non_positive() {
        assert_eq!(
            acceleration_to_r(0.0, 1.0),
            Err(Error::NonPositiveInput("omega"))
        );
        assert_eq!(
            acceleration_to_r(1.0, -2.0),
            Err(Error::NonPositiveInput("a"))
        );
        assert_eq!(
            thermal_occupation(1.0, 0.0),
            Err(Error::NonPositiveInput("a"))
        );
    }

    #[test]
    fn conversion_is_increasing_in_acceleration() {
        let mut last = -1.0;
        for k in 1..200 {
            let a = 0.05 * k as f64;
            let now = acceleration_to_r(1.0, a).unwrap().value();
            assert!(now > last);
            last = now;
        }
    }

    #[test]
    fn tripartite_amplitudes() {
        let psi = tripartite_state(r(0.0));
        let nz: Vec<usize> = (0..8)
            .filter(|&i| psi.amplitudes()[i].norm() > 0.0)
            .collect();
        assert_eq!(nz, vec![0, 6]);

        let psi = tripartite_state(r(FRAC_PI_4));
        let amps: Vec<f64> = [0, 3, 6].iter().map(|&i| psi.amplitudes()[i].re).collect();
        assert!((amps[0] - 0.5).abs() < 1e-15);
        assert!((amps[1] - 0.5).abs() < 1e-15);
        assert!((amps[2] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn reductions_at_zero() {
        let bell = ComplexMatrix::from_real_rows(&[
            vec![0.5, 0.0, 0.0, 0.5],
            vec![0.0; 4],
            vec![0.0; 4],
            vec![0.5, 0.0, 0.0, 0.5],
        ])
        .unwrap();
        assert!(
            reduced_state(r(0.0), RindlerPair::AI)
                .matrix()
                .max_abs_diff(&bell)
                < 1e-15
        );
        let aii = ComplexMatrix::diagonal(&[0.5, 0.0, 0.5, 0.0]);
        assert!(
            reduced_state(r(0.0), RindlerPair::AII)
                .matrix()
                .max_abs_diff(&aii)
                < 1e-15
        );
    }

    #[test]
    fn reduction_iii_diagonal_at_pi_over_six() {
        let m = reduced_state(r(FRAC_PI_6), RindlerPair::III);
        let want = [0.375, 0.0, 0.5, 0.125];
        for (k, w) in want.iter().enumerate() {
            assert!((m.matrix()[(k, k)].re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn explicit_reductions_match_partial_traces() {
        for k in 0..=40 {
            let x = r(FRAC_PI_4 * k as f64 / 40.0);
            for pair in RindlerPair::ALL {
                let traced = reduced_state(x, pair);
                assert!(
                    traced
                        .matrix()
                        .max_abs_diff(&reduced_state_explicit(x, pair))
                        <= 1e-14
                );
            }
        }
    }

    #[test]
    fn closed_form_entropy_examples() {
        assert!(closed_form_entropy(r(0.0), RindlerPair::AI).abs() < 1e-15);
        let want = -(0.75f64 * 0.75f64.log2()) - 0.25 * 0.25f64.log2();
        assert!((closed_form_entropy(r(FRAC_PI_4), RindlerPair::AI) - want).abs() < 1e-14);
        assert!((closed_form_entropy(r(0.0), RindlerPair::AII) - 1.0).abs() < 1e-15);
        for pair in RindlerPair::ALL {
            let x = r(0.3);
            let numeric = von_neumann_entropy(&reduced_state(x, pair));
            assert!((numeric - closed_form_entropy(x, pair)).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_state_complementarity() {
        for k in 0..=20 {
            let x = r(FRAC_PI_4 * k as f64 / 20.0);
            let full = tripartite_density(x);
            for (mode, pair) in [
                (2, RindlerPair::AI),
                (1, RindlerPair::AII),
                (0, RindlerPair::III),
            ] {
                let single = partial_trace(&full, &[mode]).unwrap();
                let two = von_neumann_entropy(&reduced_state(x, pair));
                assert!((von_neumann_entropy(&single) - two).abs() < 1e-10);
                assert!((closed_form_mode_entropy(x, mode) - two).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn conditional_eigenvalue_examples() {
        let x = r(0.4);
        let [plus, minus] = closed_form_conditional_eigenvalues(x, 0.0);
        let (c2, s2) = (x.cos().powi(2), x.sin().powi(2));
        assert!((plus[0] - c2.max(s2)).abs() < 1e-14);
        assert!((plus[1] - c2.min(s2)).abs() < 1e-14);
        assert_eq!(minus, [1.0, 0.0]);

        for theta in [0.0, 0.7, 2.0] {
            for pair in closed_form_conditional_eigenvalues(r(0.0), theta) {
                assert!((pair[0] - 1.0).abs() < 1e-15 && pair[1].abs() < 1e-15);
            }
        }

        let want = 0.5 * (1.0 + 3f64.sqrt() / 2.0);
        for pair in closed_form_conditional_eigenvalues(r(FRAC_PI_4), PI / 2.0) {
            assert!((pair[0] - want).abs() < 1e-14);
            assert!((pair[0] + pair[1] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn conditional_states_have_the_closed_form_spectra() {
        for (x, theta, phi) in [(0.2, 0.3, 1.0), (0.7, 2.5, 4.0), (FRAC_PI_4, PI / 2.0, 0.0)] {
            let ev = closed_form_conditional_eigenvalues(r(x), theta);
            for (k, plus) in [true, false].into_iter().enumerate() {
                let m = closed_form_conditional_state(r(x), theta, phi, plus);
                let got = eig_hermitian(&m).unwrap().values;
                assert!((got[0] - ev[k][0]).abs() < 1e-12);
                assert!((got[1] - ev[k][1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pair_parsing() {
        for pair in RindlerPair::ALL {
            assert_eq!(pair.as_str().parse::<RindlerPair>().unwrap(), pair);
        }
        assert!("ALL".parse::<RindlerPair>().is_err());
        assert_eq!(RindlerPair::III.measured_label(), "I");
    }
}
