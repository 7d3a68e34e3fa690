//! Small dense complex-amplitude simulator.
//!
//! Serves as the ground-truth oracle for the stabilizer backend and as the
//! engine for non-stabilizer states (magic-state distillation, injection).
//! Qubit `k` corresponds to bit `k` of the basis-state index.

use crate::pauli::PauliOperator;
use crate::{Result, SimError};
use num_complex::Complex64;
use rand::Rng;

/// Hard cap: 2^20 amplitudes.
pub const MAX_QUBITS: usize = 20;

/// Gates understood by the backend.
///
/// `Rz(theta)` is the phase rotation `diag(1, e^{iθ})` — the gate enacted by a
/// teleported rotation with ancilla `(|0⟩ + e^{iθ}|1⟩)/√2` — and `Rx` is its
/// Hadamard conjugate. `RotZ`/`RotX` are the exponential rotations `e^{-iθZ}`
/// and `e^{-iθX}`; the two families agree up to global phase after doubling
/// the angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    Rz { target: usize, theta: f64 },
    Rx { target: usize, theta: f64 },
    RotZ { target: usize, theta: f64 },
    RotX { target: usize, theta: f64 },
}

/// Dense state vector on `n ≤ 20` qubits.
#[derive(Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl std::fmt::Debug for StateVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StateVector({} qubits)", self.n)
    }
}

impl StateVector {
    /// |0…0⟩.
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(SimError::TooManyQubits(n));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(SimError::TooManyQubits(n));
        }
        if amps.len() != 1 << n {
            return Err(SimError::BadConfig(format!(
                "expected {} amplitudes, got {}",
                1usize << n,
                amps.len()
            )));
        }
        let s = StateVector { n, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(SimError::NotNormalized);
        }
        Ok(s)
    }

    /// Single qubit α|0⟩ + β|1⟩ (normalized by the caller).
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        StateVector::from_amplitudes(1, vec![alpha, beta])
    }

    /// Tensor product `self ⊗ other`; `other`'s qubits come after `self`'s.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(SimError::TooManyQubits(n));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (j, &b) in other.amps.iter().enumerate() {
            if b == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (i, &a) in self.amps.iter().enumerate() {
                amps[(j << self.n) | i] = a * b;
            }
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|² — phase-insensitive agreement measure.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(SimError::IndexOutOfRange { index: k, n: self.n });
        }
        Ok(())
    }

    /// Apply a unitary gate.
    pub fn apply(&mut self, g: Gate) -> Result<()> {
        match g {
            Gate::X(k) => {
                self.check_index(k)?;
                let m = 1usize << k;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        self.amps.swap(i, i | m);
                    }
                }
            }
            Gate::Y(k) => {
                self.check_index(k)?;
                let m = 1usize << k;
                let im = Complex64::new(0.0, 1.0);
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let (a0, a1) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = -im * a1;
                        self.amps[i | m] = im * a0;
                    }
                }
            }
            Gate::Z(k) => {
                self.check_index(k)?;
                let m = 1usize << k;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::H(k) => {
                self.check_index(k)?;
                let m = 1usize << k;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let (a0, a1) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = s * (a0 + a1);
                        self.amps[i | m] = s * (a0 - a1);
                    }
                }
            }
            Gate::S(k) => self.phase_gate(k, Complex64::new(0.0, 1.0))?,
            Gate::Sdg(k) => self.phase_gate(k, Complex64::new(0.0, -1.0))?,
            Gate::Rz { target, theta } => {
                self.phase_gate(target, Complex64::from_polar(1.0, theta))?
            }
            Gate::Rx { target, theta } => {
                self.apply(Gate::H(target))?;
                self.phase_gate(target, Complex64::from_polar(1.0, theta))?;
                self.apply(Gate::H(target))?;
            }
            Gate::RotZ { target, theta } => {
                self.check_index(target)?;
                let m = 1usize << target;
                let (pm, pp) = (
                    Complex64::from_polar(1.0, -theta),
                    Complex64::from_polar(1.0, theta),
                );
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= if i & m == 0 { pm } else { pp };
                }
            }
            Gate::RotX { target, theta } => {
                self.check_index(target)?;
                let m = 1usize << target;
                let c = Complex64::new(theta.cos(), 0.0);
                let s = Complex64::new(0.0, -theta.sin());
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let (a0, a1) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = c * a0 + s * a1;
                        self.amps[i | m] = s * a0 + c * a1;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                self.check_index(control)?;
                self.check_index(target)?;
                if control == target {
                    return Err(SimError::BadConfig("CNOT with control == target".into()));
                }
                let (cm, tm) = (1usize << control, 1usize << target);
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply an arbitrary single-qubit unitary given as [[m00, m01], [m10, m11]].
    pub fn apply_unitary1(&mut self, k: usize, m: [[Complex64; 2]; 2]) -> Result<()> {
        self.check_index(k)?;
        let mask = 1usize << k;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    fn phase_gate(&mut self, k: usize, phase: Complex64) -> Result<()> {
        self.check_index(k)?;
        let m = 1usize << k;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m != 0 {
                *a *= phase;
            }
        }
        Ok(())
    }

    /// `P|ψ⟩` for a signed Pauli `P`.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(SimError::SizeMismatch(p.n(), self.n));
        }
        let (xmask, zmask) = pauli_masks(p);
        let y_count = (xmask & zmask).count_ones();
        let mut global = Complex64::new(if p.sign() < 0 { -1.0 } else { 1.0 }, 0.0);
        global *= Complex64::i().powu(y_count);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let minus = ((b as u64 & zmask as u64).count_ones() % 2) == 1;
            let amp = if minus { -a } else { a };
            out[b ^ xmask] = global * amp;
        }
        self.amps = out;
        Ok(())
    }

    /// ⟨ψ|P|ψ⟩ (real for Hermitian P; the imaginary part is returned for
    /// diagnostics).
    pub fn expectation_pauli(&self, p: &PauliOperator) -> Result<Complex64> {
        if p.n() != self.n {
            return Err(SimError::SizeMismatch(p.n(), self.n));
        }
        let (xmask, zmask) = pauli_masks(p);
        let y_count = (xmask & zmask).count_ones();
        let mut global = Complex64::new(if p.sign() < 0 { -1.0 } else { 1.0 }, 0.0);
        global *= Complex64::i().powu(y_count);
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, &a) in self.amps.iter().enumerate() {
            let minus = ((b as u64 & zmask as u64).count_ones() % 2) == 1;
            let amp = if minus { -a } else { a };
            acc += self.amps[b ^ xmask].conj() * amp;
        }
        Ok(global * acc)
    }

    /// Projective measurement of a signed Pauli with Born-rule statistics.
    ///
    /// `forced` selects the branch (rejected if its probability is ~0).
    pub fn measure_pauli(
        &mut self,
        p: &PauliOperator,
        forced: Option<i8>,
        rng: &mut impl Rng,
    ) -> Result<i8> {
        let expect = self.expectation_pauli(p)?.re;
        let p_plus = ((1.0 + expect) / 2.0).clamp(0.0, 1.0);
        let outcome = match forced {
            Some(o) => {
                let pr = if o == 1 { p_plus } else { 1.0 - p_plus };
                if pr < 1e-12 {
                    return Err(SimError::ZeroNormProjection);
                }
                o
            }
            None => {
                if rng.gen::<f64>() < p_plus {
                    1
                } else {
                    -1
                }
            }
        };
        // ψ ← (1 ± P)ψ / (2√p)
        let mut pψ = self.clone();
        pψ.apply_pauli(p)?;
        let pr = if outcome == 1 { p_plus } else { 1.0 - p_plus };
        let scale = 1.0 / (2.0 * pr.sqrt());
        for (a, b) in self.amps.iter_mut().zip(&pψ.amps) {
            let combined = if outcome == 1 { *a + b } else { *a - b };
            *a = combined * scale;
        }
        Ok(outcome)
    }

    /// Convenience: measure qubit `k` in the Z basis; returns the bit (0 for +1).
    pub fn measure_qubit_z(&mut self, k: usize, forced: Option<i8>, rng: &mut impl Rng) -> Result<u8> {
        let z = PauliOperator::single(self.n, k, crate::pauli::Pauli::Z)?;
        let o = self.measure_pauli(&z, forced, rng)?;
        Ok(if o == 1 { 0 } else { 1 })
    }

    /// Convenience: measure qubit `k` in the X basis; returns the bit (0 for +1).
    pub fn measure_qubit_x(&mut self, k: usize, forced: Option<i8>, rng: &mut impl Rng) -> Result<u8> {
        let x = PauliOperator::single(self.n, k, crate::pauli::Pauli::X)?;
        let o = self.measure_pauli(&x, forced, rng)?;
        Ok(if o == 1 { 0 } else { 1 })
    }

    /// Largest deviation from `other` after removing the global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> f64 {
        let ip = self.inner(other);
        let phase = if ip.norm() < 1e-14 {
            Complex64::new(1.0, 0.0)
        } else {
            ip / ip.norm()
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}

fn pauli_masks(p: &PauliOperator) -> (usize, usize) {
    let mut xm = 0usize;
    let mut zm = 0usize;
    for i in p.x_bits().iter_ones() {
        xm |= 1 << i;
    }
    for i in p.z_bits().iter_ones() {
        zm |= 1 << i;
    }
    (xm, zm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(Gate::H(0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amps[0] - c(r, 0.0)).norm() < 1e-12);
        assert!((s.amps[1] - c(r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn s_on_plus_gives_y_state() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(Gate::H(0)).unwrap();
        s.apply(Gate::S(0)).unwrap();
        // |Y⟩ = (|0⟩ + i|1⟩)/√2 is the +1 eigenstate of Y.
        let y = PauliOperator::single(1, 0, Pauli::Y).unwrap();
        assert!((s.expectation_pauli(&y).unwrap().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rz_quarter_on_plus_gives_a_state() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(Gate::H(0)).unwrap();
        s.apply(Gate::Rz { target: 0, theta: std::f64::consts::FRAC_PI_4 }).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = StateVector::from_amplitudes(
            1,
            vec![c(r, 0.0), Complex64::from_polar(r, std::f64::consts::FRAC_PI_4)],
        )
        .unwrap();
        assert!(s.distance_up_to_phase(&expected) < 1e-12);
    }

    #[test]
    fn bell_stabilizers() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply(Gate::H(0)).unwrap();
        s.apply(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let zz: PauliOperator = "ZZ".parse().unwrap();
        let xx: PauliOperator = "XX".parse().unwrap();
        assert!((s.expectation_pauli(&zz).unwrap().re - 1.0).abs() < 1e-12);
        assert!((s.expectation_pauli(&xx).unwrap().re - 1.0).abs() < 1e-12);
        let mut rng = StdRng::seed_from_u64(2);
        let o = s.measure_pauli(&zz, None, &mut rng).unwrap();
        assert_eq!(o, 1);
    }

    #[test]
    fn measure_x_on_zero_is_uniform() {
        let mut rng = StdRng::seed_from_u64(9);
        let x = PauliOperator::single(1, 0, Pauli::X).unwrap();
        let mut plus = 0;
        for _ in 0..2000 {
            let mut s = StateVector::zero(1).unwrap();
            if s.measure_pauli(&x, None, &mut rng).unwrap() == 1 {
                plus += 1;
            }
        }
        assert!((plus as f64 - 1000.0).abs() < 150.0);
    }

    #[test]
    fn forced_zero_norm_projection_errors() {
        let mut s = StateVector::zero(1).unwrap();
        let z = PauliOperator::single(1, 0, Pauli::Z).unwrap();
        assert_eq!(
            s.measure_pauli(&z, Some(-1), &mut StdRng::seed_from_u64(0)),
            Err(SimError::ZeroNormProjection)
        );
    }

    #[test]
    fn unitarity_over_random_gates() {
        let mut rng = StdRng::seed_from_u64(31);
        let mut s = StateVector::zero(6).unwrap();
        s.apply(Gate::H(0)).unwrap();
        for _ in 0..10_000 {
            let k = rng.gen_range(0..6);
            let g = match rng.gen_range(0..8) {
                0 => Gate::X(k),
                1 => Gate::Z(k),
                2 => Gate::H(k),
                3 => Gate::S(k),
                4 => Gate::Rz { target: k, theta: rng.gen_range(0.0..6.3) },
                5 => Gate::RotX { target: k, theta: rng.gen_range(0.0..6.3) },
                6 => Gate::Y(k),
                _ => {
                    let t = (k + 1 + rng.gen_range(0..5)) % 6;
                    Gate::Cnot { control: k, target: t }
                }
            };
            s.apply(g).unwrap();
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pauli_application_matches_gates() {
        // Y as a PauliOperator equals Gate::Y up to nothing at all.
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..20 {
            let mut s = StateVector::zero(3).unwrap();
            for q in 0..3 {
                s.apply(Gate::H(q)).unwrap();
                s.apply(Gate::Rz { target: q, theta: rng.gen_range(0.0..6.3) }).unwrap();
            }
            let mut a = s.clone();
            let mut b = s.clone();
            let p: PauliOperator = "YXZ".parse().unwrap();
            a.apply_pauli(&p).unwrap();
            b.apply(Gate::Y(0)).unwrap();
            b.apply(Gate::X(1)).unwrap();
            b.apply(Gate::Z(2)).unwrap();
            assert!(a.distance_up_to_phase(&b) < 1e-12);
            // apply_pauli with the same operator twice is the identity.
            a.apply_pauli(&p).unwrap();
            assert!(a.distance_up_to_phase(&s) < 1e-12);
        }
    }

    #[test]
    fn rotation_families_agree_after_angle_doubling() {
        let theta = 0.7313;
        let mut a = StateVector::zero(1).unwrap();
        a.apply(Gate::H(0)).unwrap();
        let mut b = a.clone();
        a.apply(Gate::Rz { target: 0, theta: 2.0 * theta }).unwrap();
        b.apply(Gate::RotZ { target: 0, theta }).unwrap();
        assert!(a.distance_up_to_phase(&b) < 1e-12);
    }

    #[test]
    fn qubit_cap_enforced() {
        assert!(matches!(StateVector::zero(21), Err(SimError::TooManyQubits(21))));
    }
}
