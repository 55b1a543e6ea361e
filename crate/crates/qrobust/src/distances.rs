//! Distance measures between mixed states: von Neumann entropy (base 2),
//! quantum Jensen-Shannon divergence, and the Hilbert-Schmidt distance.
//!
//! The QJSD production path is the entropy form
//! H((ρ+σ)/2) − H(ρ)/2 − H(σ)/2; the relative-entropy form is also
//! provided for cross-checking on full-rank pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QrError, Result};
use crate::qlinalg::{
    hermitian_eigendecomposition, hermitian_eigenvalues, Complex64, DensityMatrix,
};

/// Eigenvalues below this are treated as exact zeros in entropies.
pub const ENTROPY_EIG_CLIP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Qjsd,
    QjsdSqrt,
    HsSquared,
    HsNorm,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Metric::Qjsd => "qjsd",
            Metric::QjsdSqrt => "qjsd-sqrt",
            Metric::HsSquared => "hs2",
            Metric::HsNorm => "hs",
        };
        f.write_str(s)
    }
}

impl FromStr for Metric {
    type Err = QrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qjsd" => Ok(Metric::Qjsd),
            "qjsd-sqrt" => Ok(Metric::QjsdSqrt),
            "hs2" => Ok(Metric::HsSquared),
            "hs" => Ok(Metric::HsNorm),
            other => Err(QrError::ConfigError(format!(
                "unknown metric '{other}' (expected qjsd|qjsd-sqrt|hs2|hs)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistanceValue {
    pub metric: Metric,
    pub value: f64,
}

/// −Σ λ log₂ λ over the spectrum, with 0·log 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eigs = hermitian_eigenvalues(rho.matrix()).expect("density matrix is Hermitian");
    entropy_of_spectrum(&eigs)
}

fn entropy_of_spectrum(eigs: &[f64]) -> f64 {
    eigs.iter()
        .filter(|&&l| l > ENTROPY_EIG_CLIP)
        .map(|&l| -l * l.log2())
        .sum()
}

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(QrError::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

fn mixture(rho: &DensityMatrix, sigma: &DensityMatrix) -> DensityMatrix {
    let half = Complex64::new(0.5, 0.0);
    DensityMatrix::new_unchecked(
        rho.n_qubits(),
        rho.matrix().scale(half).add(&sigma.matrix().scale(half)),
    )
}

/// QJSD in entropy form, base-2 logs; value in [0, 1].
pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<DistanceValue> {
    check_dims(rho, sigma)?;
    let value = von_neumann_entropy(&mixture(rho, sigma))
        - 0.5 * von_neumann_entropy(rho)
        - 0.5 * von_neumann_entropy(sigma);
    Ok(DistanceValue {
        metric: Metric::Qjsd,
        value: value.max(0.0),
    })
}

/// √QJSD, the variant with (numerically evidenced) metric character.
pub fn qjsd_sqrt(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<DistanceValue> {
    let d = qjsd(rho, sigma)?;
    Ok(DistanceValue {
        metric: Metric::QjsdSqrt,
        value: d.value.sqrt(),
    })
}

/// Tr[(ρ−σ)²].
pub fn hs_distance_squared(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<DistanceValue> {
    check_dims(rho, sigma)?;
    let diff = rho.matrix().sub(sigma.matrix());
    // Tr[A²] for Hermitian A is Σ|a_ij|²
    let value: f64 = diff.entries().iter().map(|z| z.norm_sqr()).sum();
    Ok(DistanceValue {
        metric: Metric::HsSquared,
        value,
    })
}

/// ‖ρ−σ‖_HS, the square root of the squared form. The reported distance
/// tables use this variant.
pub fn hs_norm(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<DistanceValue> {
    let d = hs_distance_squared(rho, sigma)?;
    Ok(DistanceValue {
        metric: Metric::HsNorm,
        value: d.value.sqrt(),
    })
}

/// Dispatch on the metric selector.
pub fn distance(rho: &DensityMatrix, sigma: &DensityMatrix, metric: Metric) -> Result<f64> {
    let v = match metric {
        Metric::Qjsd => qjsd(rho, sigma)?,
        Metric::QjsdSqrt => qjsd_sqrt(rho, sigma)?,
        Metric::HsSquared => hs_distance_squared(rho, sigma)?,
        Metric::HsNorm => hs_norm(rho, sigma)?,
    };
    Ok(v.value)
}

/// Spectral relative entropy S(ρ‖σ) = Tr ρ log₂ ρ − Tr ρ log₂ σ.
///
/// Meaningful only when supp(ρ) ⊆ supp(σ); intended for full-rank σ.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let (rho_vals, rho_vecs) = hermitian_eigendecomposition(rho.matrix())?;
    let (sig_vals, sig_vecs) = hermitian_eigendecomposition(sigma.matrix())?;
    let d = rho.dim();
    let mut value = 0.0;
    for i in 0..d {
        let li = rho_vals[i];
        if li <= ENTROPY_EIG_CLIP {
            continue;
        }
        value += li * li.log2();
        for j in 0..d {
            let mj = sig_vals[j].max(ENTROPY_EIG_CLIP);
            // |⟨v_i^ρ | v_j^σ⟩|²
            let mut overlap = Complex64::new(0.0, 0.0);
            for k in 0..d {
                overlap += rho_vecs.get(k, i).conj() * sig_vecs.get(k, j);
            }
            value -= li * overlap.norm_sqr() * mj.log2();
        }
    }
    Ok(value)
}

/// QJSD in relative-entropy form:
/// ½[S(ρ‖(ρ+σ)/2) + S(σ‖(ρ+σ)/2)]. Cross-check path only.
pub fn qjsd_via_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let mid = mixture(rho, sigma);
    Ok(0.5 * (relative_entropy(rho, &mid)? + relative_entropy(sigma, &mid)?))
}
