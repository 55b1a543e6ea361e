//! Decoherence trajectories through state space: distance curves to
//! reference states, the final-state geometry table, and entanglement
//! sudden death under depolarization.

use serde::Serialize;

use crate::channels::{evolve, final_state, ChannelKind};
use crate::distances::{distance, Metric};
use crate::entanglement::{entanglement, linear_entropy};
use crate::error::{QrError, Result};
use crate::qlinalg::DensityMatrix;

/// Entanglement below this counts as zero when locating sudden death.
pub const SUDDEN_DEATH_E_TOL: f64 = 1e-10;

/// Uniform grid over [start, stop] with the given step, endpoints included.
pub fn p_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0 && stop > start);
    let n = ((stop - start) / step).round() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| start + i as f64 * step).collect();
    if let Some(last) = grid.last_mut() {
        *last = stop;
    }
    grid
}

pub fn default_grid() -> Vec<f64> {
    p_grid(0.0, 1.0, 0.01)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryPoint {
    pub p: f64,
    #[serde(skip)]
    pub state: DensityMatrix,
    pub entanglement: f64,
    pub linear_entropy: f64,
    pub dist_to_initial: f64,
    pub dist_to_final: f64,
    pub dist_to_mm: f64,
}

/// Evolve ρ0 one-shot at each grid p and measure entanglement, mixedness,
/// and distances to the initial, final, and maximally mixed reference
/// states. For depolarizing kinds the final reference is I/d.
pub fn trajectory(
    rho0: &DensityMatrix,
    kind: ChannelKind,
    grid: &[f64],
    metric: Metric,
) -> Result<Vec<TrajectoryPoint>> {
    let mm = DensityMatrix::maximally_mixed(rho0.n_qubits());
    let fin = if kind.is_flip() {
        final_state(rho0, kind)?
    } else {
        mm.clone()
    };
    grid.iter()
        .map(|&p| {
            let state = evolve(rho0, kind, p)?;
            Ok(TrajectoryPoint {
                p,
                entanglement: entanglement(&state)?,
                linear_entropy: linear_entropy(&state),
                dist_to_initial: distance(&state, rho0, metric)?,
                dist_to_final: distance(&state, &fin, metric)?,
                dist_to_mm: distance(&state, &mm, metric)?,
                state,
            })
        })
        .collect()
}

/// Maximum across-kind spread, over the grid, of each trajectory observable.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub kinds: Vec<ChannelKind>,
    pub spread_entanglement: f64,
    pub spread_linear_entropy: f64,
    pub spread_dist_to_initial: f64,
    pub spread_dist_to_final: f64,
    pub spread_dist_to_mm: f64,
}

impl CoincidenceReport {
    pub fn max_spread(&self) -> f64 {
        self.spread_entanglement
            .max(self.spread_linear_entropy)
            .max(self.spread_dist_to_initial)
            .max(self.spread_dist_to_final)
            .max(self.spread_dist_to_mm)
    }
}

pub fn coincidence_check(
    rho0: &DensityMatrix,
    kinds: &[ChannelKind],
    grid: &[f64],
    metric: Metric,
) -> Result<CoincidenceReport> {
    if kinds.len() < 2 {
        return Err(QrError::ConfigError(
            "coincidence check needs at least two channel kinds".into(),
        ));
    }
    let trajectories: Vec<Vec<TrajectoryPoint>> = kinds
        .iter()
        .map(|&k| trajectory(rho0, k, grid, metric))
        .collect::<Result<_>>()?;
    let spread = |f: &dyn Fn(&TrajectoryPoint) -> f64| -> f64 {
        (0..grid.len())
            .map(|i| {
                let vals: Vec<f64> = trajectories.iter().map(|t| f(&t[i])).collect();
                let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max)
    };
    Ok(CoincidenceReport {
        kinds: kinds.to_vec(),
        spread_entanglement: spread(&|t| t.entanglement),
        spread_linear_entropy: spread(&|t| t.linear_entropy),
        spread_dist_to_initial: spread(&|t| t.dist_to_initial),
        spread_dist_to_final: spread(&|t| t.dist_to_final),
        spread_dist_to_mm: spread(&|t| t.dist_to_mm),
    })
}

/// Reference points of the final-state geometry: the initial state, the
/// three flip-channel finals, and the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RefLabel {
    Initial,
    FinalBf,
    FinalPf,
    FinalBpf,
    Mm,
}

pub const REF_LABELS: [RefLabel; 5] = [
    RefLabel::Initial,
    RefLabel::FinalBf,
    RefLabel::FinalPf,
    RefLabel::FinalBpf,
    RefLabel::Mm,
];

/// Pairwise distances among the five reference states, for both the QJSD
/// and the Hilbert-Schmidt norm.
#[derive(Debug, Clone, Serialize)]
pub struct GeometrySummary {
    pub labels: [RefLabel; 5],
    pub qjsd: [[f64; 5]; 5],
    pub hs_norm: [[f64; 5]; 5],
}

impl GeometrySummary {
    fn idx(label: RefLabel) -> usize {
        REF_LABELS.iter().position(|&l| l == label).unwrap()
    }

    pub fn get(&self, metric: Metric, a: RefLabel, b: RefLabel) -> f64 {
        let (i, j) = (Self::idx(a), Self::idx(b));
        match metric {
            Metric::Qjsd => self.qjsd[i][j],
            Metric::HsNorm => self.hs_norm[i][j],
            Metric::QjsdSqrt => self.qjsd[i][j].sqrt(),
            Metric::HsSquared => self.hs_norm[i][j] * self.hs_norm[i][j],
        }
    }

    const FINALS: [RefLabel; 3] = [RefLabel::FinalBf, RefLabel::FinalPf, RefLabel::FinalBpf];

    fn mean<I: Iterator<Item = f64>>(iter: I) -> f64 {
        let vals: Vec<f64> = iter.collect();
        vals.iter().sum::<f64>() / vals.len() as f64
    }

    /// The four canonical rows (initial-final, initial-MM, final-MM,
    /// final-final), averaged over the channel choices they quantify over.
    pub fn table_rows(&self, metric: Metric) -> [(&'static str, f64); 4] {
        let initial_final =
            Self::mean(Self::FINALS.iter().map(|&f| self.get(metric, RefLabel::Initial, f)));
        let initial_mm = self.get(metric, RefLabel::Initial, RefLabel::Mm);
        let final_mm = Self::mean(Self::FINALS.iter().map(|&f| self.get(metric, f, RefLabel::Mm)));
        let final_final = Self::mean(
            [(0usize, 1usize), (0, 2), (1, 2)]
                .iter()
                .map(|&(a, b)| self.get(metric, Self::FINALS[a], Self::FINALS[b])),
        );
        [
            ("initial-final", initial_final),
            ("initial-MM", initial_mm),
            ("final-MM", final_mm),
            ("final-final", final_final),
        ]
    }

    /// Largest disagreement among the three final-final pairs.
    pub fn final_final_spread(&self, metric: Metric) -> f64 {
        let vals: Vec<f64> = [(0usize, 1usize), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| self.get(metric, Self::FINALS[a], Self::FINALS[b]))
            .collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }

    /// Largest disagreement of `initial-final` (or `final-MM`) across channels.
    pub fn channel_spread(&self, metric: Metric, other: RefLabel) -> f64 {
        let vals: Vec<f64> = Self::FINALS
            .iter()
            .map(|&f| self.get(metric, f, other))
            .collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }

    /// Render the four-row table with 4 decimal places.
    pub fn render_table(&self) -> String {
        let qjsd = self.table_rows(Metric::Qjsd);
        let hs = self.table_rows(Metric::HsNorm);
        let mut out = String::from("states          d_JS     d_HS\n");
        for (row_q, row_h) in qjsd.iter().zip(&hs) {
            out.push_str(&format!(
                "{:<15} {:.4}   {:.4}\n",
                row_q.0, row_q.1, row_h.1
            ));
        }
        out
    }
}

/// Build the five reference states from ρ0 and fill both distance tables.
pub fn final_state_geometry(rho0: &DensityMatrix) -> Result<GeometrySummary> {
    let refs: Vec<DensityMatrix> = vec![
        rho0.clone(),
        final_state(rho0, ChannelKind::BitFlip)?,
        final_state(rho0, ChannelKind::PhaseFlip)?,
        final_state(rho0, ChannelKind::BitPhaseFlip)?,
        DensityMatrix::maximally_mixed(rho0.n_qubits()),
    ];
    let mut qjsd = [[0.0; 5]; 5];
    let mut hs = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in (i + 1)..5 {
            let dq = distance(&refs[i], &refs[j], Metric::Qjsd)?;
            let dh = distance(&refs[i], &refs[j], Metric::HsNorm)?;
            qjsd[i][j] = dq;
            qjsd[j][i] = dq;
            hs[i][j] = dh;
            hs[j][i] = dh;
        }
    }
    Ok(GeometrySummary {
        labels: REF_LABELS,
        qjsd,
        hs_norm: hs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SuddenDeathRecord {
    /// Smallest p at which entanglement stays zero onward.
    pub p_star: f64,
    /// Linear entropy of the evolved state at p_star.
    pub s_l_at_death: f64,
}

/// Locate entanglement sudden death for a depolarizing variant by bisection
/// to |Δp| ≤ 1e-8 on the predicate E(p) ≤ `e_tol`.
pub fn sudden_death(
    rho0: &DensityMatrix,
    kind: ChannelKind,
    e_tol: f64,
) -> Result<SuddenDeathRecord> {
    if kind.is_flip() {
        return Err(QrError::WrongChannelKind(kind.to_string()));
    }
    let e_at = |p: f64| -> Result<f64> { entanglement(&evolve(rho0, kind, p)?) };
    let e0 = e_at(0.0)?;
    if e0 <= e_tol {
        return Err(QrError::ConfigError(format!(
            "initial state is separable (E = {e0:.3e})"
        )));
    }
    let e1 = e_at(1.0)?;
    if e1 > e_tol {
        return Err(QrError::NoDeath(e1));
    }
    // coarse scan: verify monotone decay and bracket the crossing
    let grid = default_grid();
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut prev = e0;
    for &p in grid.iter().skip(1) {
        let e = e_at(p)?;
        if e > prev + SUDDEN_DEATH_E_TOL {
            return Err(QrError::ConfigError(format!(
                "entanglement not monotone at p = {p}"
            )));
        }
        if e > e_tol {
            lo = p;
        } else {
            hi = p;
            break;
        }
        prev = e;
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if e_at(mid)? > e_tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_star = hi;
    let s_l_at_death = linear_entropy(&evolve(rho0, kind, p_star)?);
    Ok(SuddenDeathRecord {
        p_star,
        s_l_at_death,
    })
}
