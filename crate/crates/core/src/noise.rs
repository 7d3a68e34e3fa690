//! The four-parameter circuit-level error model.
//!
//! Initialization error flips a freshly prepared syndrome qubit with
//! probability `p_i`; readout error flips the reported bit (classically) with
//! probability `p_r`; a memory error applies X, Y or Z, each with probability
//! `p_m/3`, to an idle qubit; a two-qubit gate error applies one of the 15
//! nontrivial Pauli pairs, each with probability `p_g/15`, after the perfect
//! gate.

use crate::lattice::{QubitRef, ScheduledCnot, SyndKind};
use crate::pauli::Pauli;
use crate::{Result, SimError};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub p_i: f64,
    pub p_r: f64,
    pub p_m: f64,
    pub p_g: f64,
}

impl NoiseParams {
    /// All four rates set to the same value — the comparability convention.
    pub fn uniform(p: f64) -> Result<Self> {
        NoiseParams { p_i: p, p_r: p, p_m: p, p_g: p }.validated()
    }

    pub fn zero() -> Self {
        NoiseParams { p_i: 0.0, p_r: 0.0, p_m: 0.0, p_g: 0.0 }
    }

    pub fn validated(self) -> Result<Self> {
        for p in [self.p_i, self.p_r, self.p_m, self.p_g] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(SimError::BadProbability(p));
            }
        }
        Ok(self)
    }
}

/// Memory channel: I with probability 1−p, else X/Y/Z uniformly.
pub fn sample_memory(p_m: f64, rng: &mut impl Rng) -> Pauli {
    if p_m > 0.0 && rng.gen::<f64>() < p_m {
        match rng.gen_range(0..3) {
            0 => Pauli::X,
            1 => Pauli::Y,
            _ => Pauli::Z,
        }
    } else {
        Pauli::I
    }
}

/// Two-qubit channel: None (= II) with probability 1−p, else one of the 15
/// nontrivial pairs uniformly.
pub fn sample_two_qubit(p_g: f64, rng: &mut impl Rng) -> Option<(Pauli, Pauli)> {
    if p_g > 0.0 && rng.gen::<f64>() < p_g {
        Some(Pauli::two_qubit_pairs()[rng.gen_range(0..15)])
    } else {
        None
    }
}

/// Bernoulli flip.
pub fn sample_flip(p: f64, rng: &mut impl Rng) -> bool {
    p > 0.0 && rng.gen::<f64>() < p
}

/// Iterator over the hit indices of `count` independent Bernoulli(p) trials,
/// generated by geometric skips so the cost scales with the number of hits
/// rather than the number of candidates.
pub struct GeometricHits<'a, R: Rng> {
    next: usize,
    count: usize,
    p: f64,
    rng: &'a mut R,
}

impl<'a, R: Rng> GeometricHits<'a, R> {
    pub fn new(p: f64, count: usize, rng: &'a mut R) -> Self {
        let mut it = GeometricHits { next: 0, count, p, rng };
        it.advance_from(0);
        it
    }

    fn advance_from(&mut self, start: usize) {
        if self.p <= 0.0 {
            self.next = self.count;
            return;
        }
        if self.p >= 1.0 {
            self.next = start;
            return;
        }
        let u: f64 = self.rng.gen::<f64>().max(f64::MIN_POSITIVE);
        let skip = (u.ln() / (1.0 - self.p).ln()).floor() as usize;
        self.next = start.saturating_add(skip);
    }
}

impl<R: Rng> Iterator for GeometricHits<'_, R> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.next >= self.count {
            return None;
        }
        let hit = self.next;
        self.advance_from(hit + 1);
        Some(hit)
    }
}

/// Error events delivered to one extraction cycle, batched per step.
///
/// Implementations are either genuinely random ([`RandomCycleNoise`]), silent
/// ([`ZeroNoise`]) or scripted fault injections ([`ScriptedNoise`]).
pub trait CycleNoise {
    fn init_flips(&mut self, kind: SyndKind, count: usize, out: &mut Vec<usize>);
    fn readout_flips(&mut self, kind: SyndKind, count: usize, out: &mut Vec<usize>);
    /// Memory errors on the idle qubits of step 0..=5.
    fn memory_errors(&mut self, step: usize, idle: &[QubitRef], out: &mut Vec<(QubitRef, Pauli)>);
    /// Two-qubit errors after the CNOTs of layer 0..=3, as
    /// (index within layer, error on control, error on target).
    fn gate_errors(
        &mut self,
        layer: usize,
        cnots: &[ScheduledCnot],
        out: &mut Vec<(usize, Pauli, Pauli)>,
    );
}

/// Stochastic noise with the four-parameter model.
pub struct RandomCycleNoise<R: Rng> {
    pub params: NoiseParams,
    pub rng: R,
}

impl<R: Rng> RandomCycleNoise<R> {
    pub fn new(params: NoiseParams, rng: R) -> Self {
        RandomCycleNoise { params, rng }
    }
}

impl<R: Rng> CycleNoise for RandomCycleNoise<R> {
    fn init_flips(&mut self, _kind: SyndKind, count: usize, out: &mut Vec<usize>) {
        let p = self.params.p_i;
        out.extend(GeometricHits::new(p, count, &mut self.rng));
    }

    fn readout_flips(&mut self, _kind: SyndKind, count: usize, out: &mut Vec<usize>) {
        let p = self.params.p_r;
        out.extend(GeometricHits::new(p, count, &mut self.rng));
    }

    fn memory_errors(&mut self, _step: usize, idle: &[QubitRef], out: &mut Vec<(QubitRef, Pauli)>) {
        let p = self.params.p_m;
        let hits: Vec<usize> = GeometricHits::new(p, idle.len(), &mut self.rng).collect();
        for i in hits {
            let pauli = match self.rng.gen_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            };
            out.push((idle[i], pauli));
        }
    }

    fn gate_errors(
        &mut self,
        _layer: usize,
        cnots: &[ScheduledCnot],
        out: &mut Vec<(usize, Pauli, Pauli)>,
    ) {
        let p = self.params.p_g;
        let hits: Vec<usize> = GeometricHits::new(p, cnots.len(), &mut self.rng).collect();
        for i in hits {
            let (a, b) = Pauli::two_qubit_pairs()[self.rng.gen_range(0..15)];
            out.push((i, a, b));
        }
    }
}

/// Perfect readout: no errors at all.
pub struct ZeroNoise;

impl CycleNoise for ZeroNoise {
    fn init_flips(&mut self, _: SyndKind, _: usize, _: &mut Vec<usize>) {}
    fn readout_flips(&mut self, _: SyndKind, _: usize, _: &mut Vec<usize>) {}
    fn memory_errors(&mut self, _: usize, _: &[QubitRef], _: &mut Vec<(QubitRef, Pauli)>) {}
    fn gate_errors(&mut self, _: usize, _: &[ScheduledCnot], _: &mut Vec<(usize, Pauli, Pauli)>) {}
}

/// A single deterministic fault location within one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaultSpec {
    SyndInit { kind: SyndKind, synd: usize },
    SyndReadout { kind: SyndKind, synd: usize },
    Memory { step: usize, qubit: QubitRef, pauli: Pauli },
    Gate { layer: usize, index: usize, control_err: Pauli, target_err: Pauli },
}

/// Injects an exact list of faults into the cycle it is used for; everything
/// else is noiseless. Used by the exhaustive single-fault sweeps.
pub struct ScriptedNoise {
    pub faults: Vec<FaultSpec>,
}

impl CycleNoise for ScriptedNoise {
    fn init_flips(&mut self, kind: SyndKind, _count: usize, out: &mut Vec<usize>) {
        for f in &self.faults {
            if let FaultSpec::SyndInit { kind: k, synd } = f {
                if *k == kind {
                    out.push(*synd);
                }
            }
        }
    }

    fn readout_flips(&mut self, kind: SyndKind, _count: usize, out: &mut Vec<usize>) {
        for f in &self.faults {
            if let FaultSpec::SyndReadout { kind: k, synd } = f {
                if *k == kind {
                    out.push(*synd);
                }
            }
        }
    }

    fn memory_errors(&mut self, step: usize, idle: &[QubitRef], out: &mut Vec<(QubitRef, Pauli)>) {
        for f in &self.faults {
            if let FaultSpec::Memory { step: s, qubit, pauli } = f {
                if *s == step {
                    assert!(
                        idle.contains(qubit),
                        "scripted memory fault on non-idle qubit {qubit:?} in step {step}"
                    );
                    out.push((*qubit, *pauli));
                }
            }
        }
    }

    fn gate_errors(
        &mut self,
        layer: usize,
        cnots: &[ScheduledCnot],
        out: &mut Vec<(usize, Pauli, Pauli)>,
    ) {
        for f in &self.faults {
            if let FaultSpec::Gate { layer: l, index, control_err, target_err } = f {
                if *l == layer {
                    assert!(*index < cnots.len());
                    out.push((*index, *control_err, *target_err));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn degenerate_probabilities() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(sample_memory(0.0, &mut rng), Pauli::I);
            assert_ne!(sample_memory(1.0, &mut rng), Pauli::I);
            assert_eq!(sample_two_qubit(0.0, &mut rng), None);
            assert!(sample_two_qubit(1.0, &mut rng).is_some());
            assert!(!sample_flip(0.0, &mut rng));
            assert!(sample_flip(1.0, &mut rng));
        }
    }

    #[test]
    fn memory_distribution_chi_square() {
        let mut rng = StdRng::seed_from_u64(42);
        let n = 1_000_000usize;
        let p = 0.3;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            let k = match sample_memory(p, &mut rng) {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            };
            counts[k] += 1;
        }
        let expected = [0.7 * n as f64, 0.1 * n as f64, 0.1 * n as f64, 0.1 * n as f64];
        let chi2: f64 = counts
            .iter()
            .zip(&expected)
            .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
            .sum();
        // df = 3, alpha = 1e-3 cutoff
        assert!(chi2 < 16.27, "chi2 = {chi2}");
    }

    #[test]
    fn two_qubit_distribution_chi_square() {
        let mut rng = StdRng::seed_from_u64(43);
        let n = 1_000_000usize;
        let p = 0.15;
        let mut counts = std::collections::HashMap::<Option<(Pauli, Pauli)>, usize>::new();
        for _ in 0..n {
            *counts.entry(sample_two_qubit(p, &mut rng)).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 16);
        let mut chi2 = (counts[&None] as f64 - 0.85 * n as f64).powi(2) / (0.85 * n as f64);
        for pair in Pauli::two_qubit_pairs() {
            let e = 0.01 * n as f64;
            let o = *counts.get(&Some(pair)).unwrap_or(&0) as f64;
            chi2 += (o - e).powi(2) / e;
        }
        // df = 15, alpha = 1e-3 cutoff
        assert!(chi2 < 37.70, "chi2 = {chi2}");
        // XY must be among the sampled values
        assert!(counts.contains_key(&Some((Pauli::X, Pauli::Y))));
    }

    #[test]
    fn flip_rate_at_threshold_scale() {
        let mut rng = StdRng::seed_from_u64(44);
        let n = 10_000_000usize;
        let p = 0.006;
        let mut hits = 0usize;
        for _ in 0..n {
            if sample_flip(p, &mut rng) {
                hits += 1;
            }
        }
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((hits as f64 - n as f64 * p).abs() < 3.0 * sigma);
    }

    #[test]
    fn geometric_hits_match_bernoulli_rate() {
        let mut rng = StdRng::seed_from_u64(45);
        let p = 0.01;
        let count = 1000;
        let mut total = 0usize;
        let reps = 2000;
        for _ in 0..reps {
            total += GeometricHits::new(p, count, &mut rng).count();
        }
        let n = (count * reps) as f64;
        let sigma = (n * p * (1.0 - p)).sqrt();
        assert!((total as f64 - n * p).abs() < 4.0 * sigma);
        // all hits in range and strictly increasing
        let hits: Vec<usize> = GeometricHits::new(0.5, 50, &mut rng).collect();
        assert!(hits.windows(2).all(|w| w[0] < w[1]));
        assert!(hits.iter().all(|&h| h < 50));
        assert_eq!(GeometricHits::new(1.0, 7, &mut rng).count(), 7);
        assert_eq!(GeometricHits::new(0.0, 7, &mut rng).count(), 0);
    }

    #[test]
    fn params_validation() {
        assert!(NoiseParams::uniform(0.5).is_ok());
        assert!(NoiseParams::uniform(-0.1).is_err());
        assert!(NoiseParams::uniform(1.5).is_err());
        let p = NoiseParams::uniform(0.006).unwrap();
        assert_eq!(p.p_i, p.p_g);
    }
}
