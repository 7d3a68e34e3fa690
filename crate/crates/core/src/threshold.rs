//! Monte Carlo threshold estimation.
//!
//! Each trial prepares a distance-d planar code in the codespace and runs
//! noisy extraction cycles. After every noisy cycle the decoder state is
//! advanced and a perfect-readout cycle is executed on a scratch copy of the
//! frame; the decoded correction is applied to the copy and a logical error
//! is declared when the parity of residual errors along a logical test line
//! is odd. If nothing failed, the copy is discarded (reverting the perfect
//! readout) and the noisy evolution continues.

use crate::decoder::IncrementalDecoder;
use crate::frame::{
    detection_events, ErrorFrame, FrameSimulator, IdleNoiseMode, SyndromeRecord,
};
use crate::lattice::{build_schedule, ExtractionSchedule, PlanarLattice, SyndKind};
use crate::noise::{sample_memory, NoiseParams, RandomCycleNoise, ZeroNoise};
use crate::pauli::Pauli;
use crate::{Result, SimError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Which logical operator the residual error implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureType {
    /// Residual X chain crossing smooth-to-smooth (flips the logical Z value).
    LogicalX,
    /// Residual Z chain crossing rough-to-rough.
    LogicalZ,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialParams {
    pub noise: NoiseParams,
    pub max_cycles: u64,
    pub t_freeze: u64,
    pub idle: IdleNoiseMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialResult {
    pub d: usize,
    pub p: f64,
    pub seed: u64,
    /// Cycle of first failure, or `max_cycles` when censored.
    pub cycles_to_failure: u64,
    /// None means the trial was censored at `max_cycles` without a failure.
    pub failure: Option<FailureType>,
}

/// splitmix64-based stream derivation, so per-trial seeds are reproducible
/// and independent of scheduling order.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut state = master;
    let mut mix = |v: u64| {
        state = state.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(v);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        state = z ^ (z >> 31);
        state
    };
    let mut out = mix(0);
    for &p in parts {
        out = mix(p);
    }
    out
}

/// Parity of the frame's residual error along the logical test lines;
/// valid on a syndrome-free frame.
fn logical_failure(lattice: &PlanarLattice, x_err: &crate::bits::BitVec, z_err: &crate::bits::BitVec) -> Option<FailureType> {
    let x_fail = lattice.logical_z.iter().filter(|&&q| x_err.get(q)).count() % 2 == 1;
    let z_fail = lattice.logical_x.iter().filter(|&&q| z_err.get(q)).count() % 2 == 1;
    match (x_fail, z_fail) {
        (true, _) => Some(FailureType::LogicalX),
        (false, true) => Some(FailureType::LogicalZ),
        (false, false) => None,
    }
}

/// Run one trial starting from a clean frame.
pub fn run_trial(
    lattice: &PlanarLattice,
    schedule: &ExtractionSchedule,
    params: &TrialParams,
    seed: u64,
) -> Result<TrialResult> {
    run_trial_from(lattice, schedule, params, seed, ErrorFrame::new(lattice))
}

/// Run one trial from a caller-prepared frame (test hook for injected errors).
pub fn run_trial_from(
    lattice: &PlanarLattice,
    schedule: &ExtractionSchedule,
    params: &TrialParams,
    seed: u64,
    mut frame: ErrorFrame,
) -> Result<TrialResult> {
    let d = lattice.distance().ok_or(SimError::BadConfig("trial needs the mixed lattice".into()))?;
    let sim = FrameSimulator::new(lattice, schedule, params.idle);
    let mut noise = RandomCycleNoise::new(params.noise, ChaCha8Rng::seed_from_u64(seed));
    let mut z_dec = IncrementalDecoder::new(lattice, SyndKind::Z, params.t_freeze);
    let mut x_dec = IncrementalDecoder::new(lattice, SyndKind::X, params.t_freeze);
    let mut last = SyndromeRecord::reference(lattice);

    for cycle in 1..=params.max_cycles {
        let rec = sim.run_cycle(&mut frame, &mut noise);
        let events = detection_events(&last, &rec)?;
        z_dec.push_events(&events, lattice);
        x_dec.push_events(&events, lattice);

        // Perfect readout on a scratch copy; the real frame never sees it.
        let mut copy = frame.clone();
        let perfect = sim.run_cycle(&mut copy, &mut ZeroNoise);
        let pevents = detection_events(&rec, &perfect)?;
        let zcorr = z_dec.decode(&pevents, lattice, cycle)?;
        let xcorr = x_dec.decode(&pevents, lattice, cycle)?;
        let mut x_err = copy.x_err.clone();
        x_err.xor_assign(&zcorr);
        let mut z_err = copy.z_err.clone();
        z_err.xor_assign(&xcorr);
        #[cfg(debug_assertions)]
        {
            let zs = crate::oracle::direct_syndrome(lattice, SyndKind::Z, &x_err, &z_err);
            let xs = crate::oracle::direct_syndrome(lattice, SyndKind::X, &x_err, &z_err);
            debug_assert!(zs.iter().all(|&b| !b), "corrected copy not Z-syndrome-free");
            debug_assert!(xs.iter().all(|&b| !b), "corrected copy not X-syndrome-free");
        }
        if let Some(failure) = logical_failure(lattice, &x_err, &z_err) {
            return Ok(TrialResult {
                d,
                p: params.noise.p_g,
                seed,
                cycles_to_failure: cycle,
                failure: Some(failure),
            });
        }
        last = rec;
    }
    Ok(TrialResult {
        d,
        p: params.noise.p_g,
        seed,
        cycles_to_failure: params.max_cycles,
        failure: None,
    })
}

/// Reference series: one unprotected qubit idling through six steps per
/// cycle; any Pauli hit is an immediate logical failure.
pub fn run_baseline_trial(p_m: f64, max_cycles: u64, seed: u64) -> TrialResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for cycle in 1..=max_cycles {
        for _ in 0..6 {
            match sample_memory(p_m, &mut rng) {
                Pauli::I => {}
                Pauli::Z => {
                    return TrialResult {
                        d: 1,
                        p: p_m,
                        seed,
                        cycles_to_failure: cycle,
                        failure: Some(FailureType::LogicalZ),
                    }
                }
                _ => {
                    return TrialResult {
                        d: 1,
                        p: p_m,
                        seed,
                        cycles_to_failure: cycle,
                        failure: Some(FailureType::LogicalX),
                    }
                }
            }
        }
    }
    TrialResult { d: 1, p: p_m, seed, cycles_to_failure: max_cycles, failure: None }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub distances: Vec<usize>,
    pub p_values: Vec<f64>,
    pub trials: u64,
    pub max_cycles: u64,
    pub seed: u64,
    pub t_freeze: u64,
    pub idle: IdleNoiseMode,
    /// Emit the no-correction single-qubit reference series.
    pub baseline: bool,
}

impl SweepConfig {
    pub fn validated(self) -> Result<Self> {
        if self.distances.is_empty() || self.p_values.is_empty() {
            return Err(SimError::BadConfig("need at least one distance and one p".into()));
        }
        if self.distances.iter().any(|&d| d < 2) {
            return Err(SimError::BadConfig("distances must be >= 2".into()));
        }
        if self.trials == 0 || self.max_cycles == 0 {
            return Err(SimError::BadConfig("trials and max_cycles must be positive".into()));
        }
        for &p in &self.p_values {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::BadProbability(p));
            }
        }
        Ok(self)
    }
}

/// Log-spaced grid from `p_min` to `p_max` inclusive.
pub fn log_grid(p_min: f64, p_max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2 && p_min > 0.0 && p_max > p_min);
    let ratio = (p_max / p_min).ln();
    (0..steps)
        .map(|k| p_min * (ratio * k as f64 / (steps - 1) as f64).exp())
        .collect()
}

/// Per-(d, p) aggregate. `d = 1` marks the single-qubit baseline series.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub d: usize,
    pub p: f64,
    pub trials: u64,
    /// Mean cycles to failure; censored trials enter at `max_cycles` as a
    /// lower bound and are counted in `censored`.
    pub mean: f64,
    pub stderr: f64,
    pub censored: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSummary {
    pub cells: Vec<CellSummary>,
}

fn summarize(d: usize, p: f64, lifetimes: &[u64], censored: u64) -> CellSummary {
    let n = lifetimes.len() as f64;
    let mean = lifetimes.iter().map(|&c| c as f64).sum::<f64>() / n;
    let var = lifetimes.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    CellSummary { d, p, trials: lifetimes.len() as u64, mean, stderr: (var / n).sqrt(), censored }
}

/// Run the full sweep. Trials parallelize over rayon; per-trial seeds derive
/// from (master seed, d, p-index, trial-index), so the output is byte-stable
/// under any thread count.
pub fn sweep(config: &SweepConfig) -> Result<SweepSummary> {
    let config = config.clone().validated()?;
    let mut cells = Vec::new();
    for &d in &config.distances {
        let lattice = PlanarLattice::mixed(d)?;
        let schedule = build_schedule(&lattice)?;
        for (pi, &p) in config.p_values.iter().enumerate() {
            let params = TrialParams {
                noise: NoiseParams::uniform(p)?,
                max_cycles: config.max_cycles,
                t_freeze: config.t_freeze,
                idle: config.idle,
            };
            let results: Vec<TrialResult> = (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(config.seed, &[d as u64, pi as u64, t]);
                    run_trial(&lattice, &schedule, &params, seed)
                })
                .collect::<Result<_>>()?;
            let lifetimes: Vec<u64> = results.iter().map(|r| r.cycles_to_failure).collect();
            let censored = results.iter().filter(|r| r.failure.is_none()).count() as u64;
            cells.push(summarize(d, p, &lifetimes, censored));
        }
    }
    if config.baseline {
        for (pi, &p) in config.p_values.iter().enumerate() {
            let results: Vec<TrialResult> = (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(config.seed, &[1, pi as u64, t]);
                    run_baseline_trial(p, config.max_cycles, seed)
                })
                .collect();
            let lifetimes: Vec<u64> = results.iter().map(|r| r.cycles_to_failure).collect();
            let censored = results.iter().filter(|r| r.failure.is_none()).count() as u64;
            cells.push(summarize(1, p, &lifetimes, censored));
        }
    }
    Ok(SweepSummary { cells })
}

/// CSV rows `(d, p, trials, mean, stderr, censored_count)`.
pub fn summary_to_csv(summary: &SweepSummary) -> String {
    let mut out = String::from("d,p,trials,mean_cycles,stderr,censored\n");
    for c in &summary.cells {
        out.push_str(&format!(
            "{},{:.6e},{},{:.6e},{:.6e},{}\n",
            c.d, c.p, c.trials, c.mean, c.stderr, c.censored
        ));
    }
    out
}

/// Parse a CSV produced by [`summary_to_csv`].
pub fn summary_from_csv(text: &str) -> Result<SweepSummary> {
    let mut cells = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(SimError::Parse(format!("bad CSV row: {line}")));
        }
        let parse_f = |s: &str| s.trim().parse::<f64>().map_err(|e| SimError::Parse(e.to_string()));
        let parse_u = |s: &str| s.trim().parse::<u64>().map_err(|e| SimError::Parse(e.to_string()));
        cells.push(CellSummary {
            d: parse_u(f[0])? as usize,
            p: parse_f(f[1])?,
            trials: parse_u(f[2])?,
            mean: parse_f(f[3])?,
            stderr: parse_f(f[4])?,
            censored: parse_u(f[5])?,
        });
    }
    Ok(SweepSummary { cells })
}

/// Gnuplot-ready columns: blocks per distance separated by blank lines,
/// suited to a log-log lifetime-versus-p plot.
pub fn plotdata(summary: &SweepSummary) -> String {
    let mut out = String::from("# average cycles to failure vs physical error rate\n");
    let mut distances: Vec<usize> = summary.cells.iter().map(|c| c.d).collect();
    distances.sort_unstable();
    distances.dedup();
    for d in distances {
        if d == 1 {
            out.push_str("# no error correction (single qubit)\n");
        } else {
            out.push_str(&format!("# d = {d}\n"));
        }
        out.push_str("# p mean stderr\n");
        let mut rows: Vec<&CellSummary> = summary.cells.iter().filter(|c| c.d == d).collect();
        rows.sort_by(|a, b| a.p.partial_cmp(&b.p).unwrap());
        for c in rows {
            out.push_str(&format!("{:.6e} {:.6e} {:.6e}\n", c.p, c.mean, c.stderr));
        }
        out.push_str("\n\n");
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdEstimate {
    pub p_th: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// (d_small, d_large, crossing) for each fitted pair.
    pub pairwise: Vec<(usize, usize, f64)>,
}

fn fit_loglog(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let a = (sy - b * sx) / n;
    (a, b)
}

fn crossings_from_cells(cells: &[CellSummary], p_lo: f64, p_hi: f64) -> Vec<(usize, usize, f64)> {
    let mut distances: Vec<usize> = cells.iter().map(|c| c.d).filter(|&d| d >= 2).collect();
    distances.sort_unstable();
    distances.dedup();
    let fits: Vec<(usize, f64, f64)> = distances
        .iter()
        .map(|&d| {
            let pts: Vec<(f64, f64)> = cells
                .iter()
                .filter(|c| c.d == d && c.mean > 0.0)
                .map(|c| (c.p.ln(), c.mean.ln()))
                .collect();
            let (a, b) = fit_loglog(&pts);
            (d, a, b)
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..fits.len() {
        for j in (i + 1)..fits.len() {
            let (d1, a1, b1) = fits[i];
            let (d2, a2, b2) = fits[j];
            if (b1 - b2).abs() < 1e-9 {
                continue;
            }
            let p = ((a2 - a1) / (b1 - b2)).exp();
            if p.is_finite() && p >= p_lo * 0.5 && p <= p_hi * 2.0 {
                out.push((d1, d2, p));
            }
        }
    }
    out
}

/// Fit log(mean lifetime) against log(p) per distance and return the median
/// pairwise crossing with a parametric-bootstrap confidence interval.
pub fn estimate_threshold(summary: &SweepSummary, seed: u64) -> Result<ThresholdEstimate> {
    let cells: Vec<CellSummary> = summary.cells.iter().filter(|c| c.d >= 2).cloned().collect();
    let mut distances: Vec<usize> = cells.iter().map(|c| c.d).collect();
    distances.sort_unstable();
    distances.dedup();
    if distances.len() < 2 {
        return Err(SimError::BadConfig("need at least 2 distances".into()));
    }
    let mut ps: Vec<f64> = cells.iter().map(|c| c.p).collect();
    ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ps.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    if ps.len() < 4 {
        return Err(SimError::BadConfig("need at least 4 p values".into()));
    }
    let (p_lo, p_hi) = (ps[0], *ps.last().unwrap());

    let point = crossings_from_cells(&cells, p_lo, p_hi);
    if point.is_empty() {
        return Err(SimError::NoCrossing);
    }
    let median = |mut v: Vec<f64>| -> f64 {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = v.len();
        if n % 2 == 1 {
            v[n / 2]
        } else {
            (v[n / 2 - 1] + v[n / 2]) / 2.0
        }
    };
    let p_th = median(point.iter().map(|c| c.2).collect());

    // Parametric bootstrap: jitter each cell's log-mean by its relative error.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boots = Vec::new();
    for _ in 0..200 {
        let jittered: Vec<CellSummary> = cells
            .iter()
            .map(|c| {
                let rel = if c.mean > 0.0 { c.stderr / c.mean } else { 0.0 };
                let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
                let u2: f64 = rng.gen();
                let gauss = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
                let mut c2 = c.clone();
                c2.mean = (c.mean.ln() + gauss * rel).exp();
                c2
            })
            .collect();
        let cr = crossings_from_cells(&jittered, p_lo, p_hi);
        if !cr.is_empty() {
            boots.push(median(cr.iter().map(|c| c.2).collect()));
        }
    }
    let (ci_low, ci_high) = if boots.len() >= 20 {
        boots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let lo = boots[(boots.len() as f64 * 0.025) as usize];
        let hi = boots[((boots.len() as f64 * 0.975) as usize).min(boots.len() - 1)];
        (lo, hi)
    } else {
        (p_th, p_th)
    };
    Ok(ThresholdEstimate { p_th, ci_low, ci_high, pairwise: point })
}
