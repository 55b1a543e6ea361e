//! Reproduction CLI: one subcommand per figure/table artifact plus the
//! robust-state search. Every command writes CSV/JSON data, a matplotlib
//! plot script, and a run manifest into the output directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qrobust::channels::ChannelKind;
use qrobust::distances::Metric;
use qrobust::entanglement::entanglement;
use qrobust::geometry::{
    coincidence_check, final_state_geometry, p_grid, sudden_death, trajectory, CoincidenceReport,
    SuddenDeathRecord, SUDDEN_DEATH_E_TOL,
};
use qrobust::qlinalg::{ghz_state, hs_state, w_state, PureState};
use qrobust::search::{anneal_robust_state, lu_orbit, robustness_objective, AnnealConfig};
use qrobust::{QrError, Result};

#[derive(Parser)]
#[command(name = "qrobust", version, about = "Four-qubit decoherence trajectory toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Noise-parameter grid as start:stop:step
    #[arg(long, default_value = "0:1:0.01", value_parser = parse_grid)]
    p_grid: GridSpec,
    /// Distance metric
    #[arg(long, default_value = "qjsd")]
    metric: String,
    /// Random seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Debug, Serialize)]
struct GridSpec {
    start: f64,
    stop: f64,
    step: f64,
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{s}' is not start:stop:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    if !(nums[0] < nums[1] && nums[2] > 0.0) {
        return Err(format!("grid '{s}' must satisfy start < stop, step > 0"));
    }
    Ok(GridSpec {
        start: nums[0],
        stop: nums[1],
        step: nums[2],
    })
}

impl GridSpec {
    fn values(&self) -> Vec<f64> {
        p_grid(self.start, self.stop, self.step)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement decay of |HS>, |GHZ>, |W> under the bit-flip channel
    Fig1 {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Entanglement vs linear entropy per state per flip channel
    Fig2 {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Distances from the decohered |HS> state to the reference states
    Fig3 {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Pairwise distance table among initial, finals, and maximally mixed
    Table {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Depolarizing evolution of a local-unitary orbit of |HS>
    Fig4 {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of orbit samples
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Depolarizing variant
        #[arg(long, default_value = "local")]
        dep: String,
    },
    /// Simulated-annealing search for a robust entangled state
    Search {
        #[command(flatten)]
        common: CommonOpts,
        /// JSON file with an annealing configuration (flags override)
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    config: serde_json::Value,
    seed: u64,
    outputs: Vec<String>,
    duration_ms: u128,
    version: String,
}

/// Format with 10 significant digits.
fn fmt10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let prec = (9 - exp).max(0) as usize;
    format!("{x:.prec$}")
}

struct Emitter {
    out_dir: PathBuf,
    outputs: Vec<String>,
}

impl Emitter {
    fn new(out_dir: &Path) -> Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(Self {
            out_dir: out_dir.to_path_buf(),
            outputs: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.out_dir.join(name);
        fs::write(&path, contents)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, &serde_json::to_string_pretty(value)?)
    }

    fn finish(
        mut self,
        command: &str,
        config: serde_json::Value,
        seed: u64,
        started: Instant,
    ) -> Result<()> {
        let manifest = RunManifest {
            command: command.to_string(),
            config,
            seed,
            outputs: self.outputs.clone(),
            duration_ms: started.elapsed().as_millis(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        self.write(&format!("{command}_manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
        Ok(())
    }
}

fn plot_script(title: &str, csvs: &[(&str, &str, &str, &str)]) -> String {
    // (file, xcol, ycol, label)
    let mut s = String::from(
        "#!/usr/bin/env python3\nimport csv, sys\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\ndef col(path, name):\n    with open(path) as f:\n        rows = list(csv.DictReader(f))\n    return [float(r[name]) for r in rows]\n\n",
    );
    for (file, xcol, ycol, label) in csvs {
        s.push_str(&format!(
            "plt.plot(col(\"{file}\", \"{xcol}\"), col(\"{file}\", \"{ycol}\"), label=\"{label}\")\n"
        ));
    }
    s.push_str(&format!(
        "plt.legend()\nplt.title(\"{title}\")\nplt.savefig(sys.argv[1] if len(sys.argv) > 1 else \"{title}.png\", dpi=150)\n"
    ));
    s
}

fn named_states() -> Vec<(&'static str, PureState)> {
    vec![("hs", hs_state()), ("ghz", ghz_state(4)), ("w", w_state(4))]
}

fn cmd_fig1(common: &CommonOpts) -> Result<()> {
    let started = Instant::now();
    let metric = Metric::from_str(&common.metric)?;
    let grid = common.p_grid.values();
    let mut em = Emitter::new(&common.out)?;
    for (name, state) in named_states() {
        let traj = trajectory(&state.to_density(), ChannelKind::BitFlip, &grid, metric)?;
        let mut csv = String::from("p,E\n");
        for pt in &traj {
            csv.push_str(&format!("{},{}\n", fmt10(pt.p), fmt10(pt.entanglement)));
        }
        em.write(&format!("fig1_{name}.csv"), &csv)?;
    }
    em.write(
        "fig1_plot.py",
        &plot_script(
            "fig1",
            &[
                ("fig1_hs.csv", "p", "E", "HS"),
                ("fig1_ghz.csv", "p", "E", "GHZ"),
                ("fig1_w.csv", "p", "E", "W"),
            ],
        ),
    )?;
    em.finish("fig1", serde_json::to_value(common_config(common)?)?, common.seed, started)
}

fn cmd_fig2(common: &CommonOpts) -> Result<()> {
    let started = Instant::now();
    let metric = Metric::from_str(&common.metric)?;
    let grid = common.p_grid.values();
    let mut em = Emitter::new(&common.out)?;
    let mut plots = Vec::new();
    for (name, state) in named_states() {
        let rho0 = state.to_density();
        for kind in ChannelKind::FLIPS {
            let traj = trajectory(&rho0, kind, &grid, metric)?;
            let mut csv = String::from("S_L,E\n");
            for pt in &traj {
                csv.push_str(&format!(
                    "{},{}\n",
                    fmt10(pt.linear_entropy),
                    fmt10(pt.entanglement)
                ));
            }
            em.write(&format!("fig2_{name}_{kind}.csv"), &csv)?;
            plots.push((format!("fig2_{name}_{kind}.csv"), format!("{name} {kind}")));
        }
    }
    #[derive(Serialize)]
    struct Fig2Coincidence {
        hs_all_flips: CoincidenceReport,
        ghz_bf_bpf: CoincidenceReport,
        ghz_bf_pf: CoincidenceReport,
        w_bf_bpf: CoincidenceReport,
        w_bf_pf: CoincidenceReport,
    }
    let hs = hs_state().to_density();
    let ghz = ghz_state(4).to_density();
    let w = w_state(4).to_density();
    let bf_bpf = [ChannelKind::BitFlip, ChannelKind::BitPhaseFlip];
    let bf_pf = [ChannelKind::BitFlip, ChannelKind::PhaseFlip];
    let report = Fig2Coincidence {
        hs_all_flips: coincidence_check(&hs, &ChannelKind::FLIPS, &grid, metric)?,
        ghz_bf_bpf: coincidence_check(&ghz, &bf_bpf, &grid, metric)?,
        ghz_bf_pf: coincidence_check(&ghz, &bf_pf, &grid, metric)?,
        w_bf_bpf: coincidence_check(&w, &bf_bpf, &grid, metric)?,
        w_bf_pf: coincidence_check(&w, &bf_pf, &grid, metric)?,
    };
    em.write_json("fig2_coincidence.json", &report)?;
    let plot_refs: Vec<(&str, &str, &str, &str)> = plots
        .iter()
        .map(|(f, l)| (f.as_str(), "S_L", "E", l.as_str()))
        .collect();
    em.write("fig2_plot.py", &plot_script("fig2", &plot_refs))?;
    em.finish("fig2", serde_json::to_value(common_config(common)?)?, common.seed, started)
}

fn cmd_fig3(common: &CommonOpts) -> Result<()> {
    let started = Instant::now();
    let metric = Metric::from_str(&common.metric)?;
    let grid = common.p_grid.values();
    let mut em = Emitter::new(&common.out)?;
    let rho0 = hs_state().to_density();
    for kind in ChannelKind::FLIPS {
        let traj = trajectory(&rho0, kind, &grid, metric)?;
        let mut csv = String::from("p,d_init,d_final,d_mm\n");
        for pt in &traj {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt10(pt.p),
                fmt10(pt.dist_to_initial),
                fmt10(pt.dist_to_final),
                fmt10(pt.dist_to_mm)
            ));
        }
        em.write(&format!("fig3_{kind}.csv"), &csv)?;
    }
    let report = coincidence_check(&rho0, &ChannelKind::FLIPS, &grid, metric)?;
    em.write_json("fig3_coincidence.json", &report)?;
    em.write(
        "fig3_plot.py",
        &plot_script(
            "fig3",
            &[
                ("fig3_bf.csv", "p", "d_init", "to initial"),
                ("fig3_bf.csv", "p", "d_final", "to final"),
                ("fig3_bf.csv", "p", "d_mm", "to MM"),
            ],
        ),
    )?;
    em.finish("fig3", serde_json::to_value(common_config(common)?)?, common.seed, started)
}

fn cmd_table(common: &CommonOpts) -> Result<()> {
    let started = Instant::now();
    let mut em = Emitter::new(&common.out)?;
    let summary = final_state_geometry(&hs_state().to_density())?;
    let rendered = summary.render_table();
    print!("{rendered}");
    em.write("table.txt", &rendered)?;
    em.write_json("table.json", &summary)?;
    em.finish("table", serde_json::to_value(common_config(common)?)?, common.seed, started)
}

fn cmd_fig4(common: &CommonOpts, count: usize, dep: &str) -> Result<()> {
    let started = Instant::now();
    let metric = Metric::from_str(&common.metric)?;
    let kind = match dep {
        "local" => ChannelKind::DepolarizingLocal,
        "global" => ChannelKind::DepolarizingGlobal,
        other => {
            return Err(QrError::ConfigError(format!(
                "unknown depolarizing variant '{other}' (expected local|global)"
            )))
        }
    };
    let grid = common.p_grid.values();
    let mut em = Emitter::new(&common.out)?;
    let samples = lu_orbit(&hs_state(), count, common.seed);

    let mut sample_csv = String::from("sample,p,E,S_L\n");
    let mut death_csv = String::from("sample,p_star,s_l_at_death\n");
    let mut curves: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut deaths: Vec<SuddenDeathRecord> = Vec::new();
    for (i, psi) in samples.iter().enumerate() {
        let rho0 = psi.to_density();
        let traj = trajectory(&rho0, kind, &grid, metric)?;
        curves.push(traj.iter().map(|t| (t.entanglement, t.linear_entropy)).collect());
        for pt in &traj {
            sample_csv.push_str(&format!(
                "{i},{},{},{}\n",
                fmt10(pt.p),
                fmt10(pt.entanglement),
                fmt10(pt.linear_entropy)
            ));
        }
        let rec = sudden_death(&rho0, kind, SUDDEN_DEATH_E_TOL)?;
        death_csv.push_str(&format!("{i},{},{}\n", fmt10(rec.p_star), fmt10(rec.s_l_at_death)));
        deaths.push(rec);
    }
    em.write("fig4_samples.csv", &sample_csv)?;
    em.write("fig4_sudden_death.csv", &death_csv)?;

    let spread = |vals: &mut dyn Iterator<Item = f64>| -> f64 {
        let vals: Vec<f64> = vals.collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    let max_e_spread = (0..grid.len())
        .map(|j| spread(&mut curves.iter().map(|c| c[j].0)))
        .fold(0.0, f64::max);
    let max_sl_spread = (0..grid.len())
        .map(|j| spread(&mut curves.iter().map(|c| c[j].1)))
        .fold(0.0, f64::max);
    #[derive(Serialize)]
    struct Fig4Summary {
        variant: String,
        count: usize,
        max_entanglement_spread: f64,
        max_linear_entropy_spread: f64,
        p_star_spread: f64,
        s_l_at_death_spread: f64,
        mean_p_star: f64,
        mean_s_l_at_death: f64,
    }
    let summary = Fig4Summary {
        variant: dep.to_string(),
        count,
        max_entanglement_spread: max_e_spread,
        max_linear_entropy_spread: max_sl_spread,
        p_star_spread: spread(&mut deaths.iter().map(|d| d.p_star)),
        s_l_at_death_spread: spread(&mut deaths.iter().map(|d| d.s_l_at_death)),
        mean_p_star: deaths.iter().map(|d| d.p_star).sum::<f64>() / count as f64,
        mean_s_l_at_death: deaths.iter().map(|d| d.s_l_at_death).sum::<f64>() / count as f64,
    };
    em.write_json("fig4_summary.json", &summary)?;
    em.write(
        "fig4_plot.py",
        &plot_script(
            "fig4",
            &[
                ("fig4_samples.csv", "p", "E", "E"),
                ("fig4_samples.csv", "p", "S_L", "S_L"),
            ],
        ),
    )?;
    let mut config = common_config(common)?;
    config["count"] = serde_json::json!(count);
    config["dep"] = serde_json::json!(dep);
    em.finish("fig4", config, common.seed, started)
}

fn cmd_search(common: &CommonOpts, config_path: Option<&Path>) -> Result<()> {
    let started = Instant::now();
    let mut cfg: AnnealConfig = match config_path {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| QrError::ConfigError(format!("bad config file: {e}")))?,
        None => AnnealConfig::default(),
    };
    cfg.seed = common.seed;
    cfg.validate()?;
    let mut em = Emitter::new(&common.out)?;
    let (found, score) = anneal_robust_state(&cfg)?;
    em.write_json("search_state.json", &found)?;
    em.write_json("search_score.json", &score)?;

    // dominance of the found state over the reference library on the grid
    #[derive(Serialize)]
    struct DominanceRow {
        channel: ChannelKind,
        p: f64,
        e_found: f64,
        e_ghz: f64,
        e_w: f64,
        e_hs: f64,
    }
    let refs = [
        ("found", found.to_density()),
        ("ghz", ghz_state(4).to_density()),
        ("w", w_state(4).to_density()),
        ("hs", hs_state().to_density()),
    ];
    let mut rows = Vec::new();
    for &kind in &cfg.channel_set {
        for &p in &cfg.p_grid_objective {
            let e: Vec<f64> = refs
                .iter()
                .map(|(_, rho)| entanglement(&qrobust::channels::evolve(rho, kind, p)?))
                .collect::<Result<_>>()?;
            rows.push(DominanceRow {
                channel: kind,
                p,
                e_found: e[0],
                e_ghz: e[1],
                e_w: e[2],
                e_hs: e[3],
            });
        }
    }
    #[derive(Serialize)]
    struct DominanceReport {
        dominates_ghz: bool,
        dominates_w: bool,
        objective_found: f64,
        objective_ghz: f64,
        objective_w: f64,
        objective_hs: f64,
        rows: Vec<DominanceRow>,
    }
    let report = DominanceReport {
        dominates_ghz: rows.iter().all(|r| r.e_found >= r.e_ghz - 1e-12),
        dominates_w: rows.iter().all(|r| r.e_found >= r.e_w - 1e-12),
        objective_found: score.objective,
        objective_ghz: robustness_objective(&ghz_state(4), &cfg)?.objective,
        objective_w: robustness_objective(&w_state(4), &cfg)?.objective,
        objective_hs: robustness_objective(&hs_state(), &cfg)?.objective,
        rows,
    };
    em.write_json("search_dominance.json", &report)?;
    println!(
        "objective: found {:.6}, hs {:.6}, ghz {:.6} (dominates ghz: {}, w: {})",
        report.objective_found,
        report.objective_hs,
        report.objective_ghz,
        report.dominates_ghz,
        report.dominates_w
    );
    em.finish("search", serde_json::to_value(&cfg)?, cfg.seed, started)
}

fn common_config(common: &CommonOpts) -> Result<serde_json::Value> {
    Ok(serde_json::json!({
        "out": common.out,
        "p_grid": common.p_grid,
        "metric": common.metric,
        "seed": common.seed,
    }))
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Fig1 { common } => cmd_fig1(common),
        Command::Fig2 { common } => cmd_fig2(common),
        Command::Fig3 { common } => cmd_fig3(common),
        Command::Table { common } => cmd_table(common),
        Command::Fig4 { common, count, dep } => cmd_fig4(common, *count, dep),
        Command::Search { common, config } => cmd_search(common, config.as_deref()),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QROBUST_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ (QrError::ConfigError(_) | QrError::BadParameter { .. })) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
