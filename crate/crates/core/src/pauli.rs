//! Signed Pauli-group arithmetic and stabilizer-state manipulation.
//!
//! Operators are stored in binary-symplectic form: one X bit and one Z bit per
//! qubit plus a global sign in {+1, −1}. The single-qubit symbol on qubit `k`
//! is `I` for (0,0), `X` for (1,0), `Z` for (0,1) and `Y` for (1,1), with `Y`
//! the Hermitian Pauli (so every operator squares to the identity and ±1 signs
//! suffice). Products of commuting operators always stay in the ±1 sector;
//! multiplying anticommuting operators would need a ±i phase and is rejected.

use crate::bits::BitVec;
use crate::{Result, SimError};
use rand::Rng;
use std::fmt;

/// Single-qubit Pauli symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// The 15 non-identity two-qubit Pauli pairs, in a fixed order.
    pub fn two_qubit_pairs() -> [(Pauli, Pauli); 15] {
        use Pauli::*;
        [
            (I, X),
            (I, Y),
            (I, Z),
            (X, I),
            (X, X),
            (X, Y),
            (X, Z),
            (Y, I),
            (Y, X),
            (Y, Y),
            (Y, Z),
            (Z, I),
            (Z, X),
            (Z, Y),
            (Z, Z),
        ]
    }
}

/// Signed n-qubit Pauli operator in binary-symplectic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: BitVec,
    z: BitVec,
    neg: bool,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            neg: false,
        }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<Self> {
        if qubit >= n {
            return Err(SimError::IndexOutOfRange { index: qubit, n });
        }
        let mut op = PauliOperator::identity(n);
        let (xb, zb) = p.bits();
        op.x.set(qubit, xb);
        op.z.set(qubit, zb);
        Ok(op)
    }

    /// Same Pauli symbol on every qubit of `support`.
    pub fn from_support(n: usize, p: Pauli, support: &[usize]) -> Result<Self> {
        let mut op = PauliOperator::identity(n);
        let (xb, zb) = p.bits();
        for &q in support {
            if q >= n {
                return Err(SimError::IndexOutOfRange { index: q, n });
            }
            op.x.set(q, xb);
            op.z.set(q, zb);
        }
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// +1 or −1.
    pub fn sign(&self) -> i8 {
        if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn set_sign(&mut self, sign: i8) {
        debug_assert!(sign == 1 || sign == -1);
        self.neg = sign == -1;
    }

    pub fn negate(&mut self) {
        self.neg = !self.neg;
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set(&mut self, qubit: usize, p: Pauli) {
        let (xb, zb) = p.bits();
        self.x.set(qubit, xb);
        self.z.set(qubit, zb);
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// True when the Pauli word (ignoring sign) is the identity.
    pub fn is_identity_word(&self) -> bool {
        !self.x.any() && !self.z.any()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Parity of the symplectic inner product: `true` iff the operators commute.
    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.n, other.n);
        !(self.x.and_parity(&other.z) ^ self.z.and_parity(&other.x))
    }

    /// Signed product `self · other`.
    ///
    /// The phase is tracked as a power of i; a residual ±i (which arises
    /// exactly when the operands anticommute) is rejected.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.n != other.n {
            return Err(SimError::SizeMismatch(self.n, other.n));
        }
        // Per-word tally of the i-exponent contributions of each single-qubit
        // product: XY=iZ, YZ=iX, ZX=iY contribute +1; the reverses contribute −1.
        let mut pos: u64 = 0;
        let mut neg: u64 = 0;
        for i in 0..self.x.words().len() {
            let (x1, z1) = (self.x.words()[i], self.z.words()[i]);
            let (x2, z2) = (other.x.words()[i], other.z.words()[i]);
            let p = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & !z1 & !x2 & z2) | (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2);
            pos += p.count_ones() as u64;
            neg += m.count_ones() as u64;
        }
        let k = (pos as i64 - neg as i64).rem_euclid(4);
        if k % 2 != 0 {
            return Err(SimError::ImaginaryPhase);
        }
        let mut out = self.clone();
        out.x.xor_assign(&other.x);
        out.z.xor_assign(&other.z);
        out.neg = self.neg ^ other.neg ^ (k == 2);
        Ok(out)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.neg { '-' } else { '+' })?;
        for q in 0..self.n {
            let c = match self.get(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for PauliOperator {
    type Err = SimError;

    /// Parse the text form: optional leading '+'/'-' then one of `IXYZ` per qubit.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') | Some('−') => (true, s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i)).1),
            Some(_) => (false, s),
            None => return Err(SimError::Parse("empty Pauli string".into())),
        };
        let mut op = PauliOperator::identity(body.chars().count());
        op.neg = neg;
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' | 'i' => Pauli::I,
                'X' | 'x' => Pauli::X,
                'Y' | 'y' => Pauli::Y,
                'Z' | 'z' => Pauli::Z,
                _ => return Err(SimError::Parse(format!("bad Pauli character '{c}'"))),
            };
            op.set(q, p);
        }
        Ok(op)
    }
}

/// Clifford gates available for conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGate {
    X(usize),
    Z(usize),
    H(usize),
    S(usize),
    Cnot { control: usize, target: usize },
}

impl CliffordGate {
    fn max_index(&self) -> usize {
        match *self {
            CliffordGate::X(k) | CliffordGate::Z(k) | CliffordGate::H(k) | CliffordGate::S(k) => k,
            CliffordGate::Cnot { control, target } => control.max(target),
        }
    }
}

/// Returns `U m U†`.
pub fn conjugate(m: &PauliOperator, u: CliffordGate) -> Result<PauliOperator> {
    let idx = u.max_index();
    if idx >= m.n {
        return Err(SimError::IndexOutOfRange { index: idx, n: m.n });
    }
    let mut out = m.clone();
    match u {
        CliffordGate::X(k) => {
            if out.z.get(k) {
                out.neg = !out.neg;
            }
        }
        CliffordGate::Z(k) => {
            if out.x.get(k) {
                out.neg = !out.neg;
            }
        }
        CliffordGate::H(k) => {
            let (xb, zb) = (out.x.get(k), out.z.get(k));
            if xb && zb {
                out.neg = !out.neg;
            }
            out.x.set(k, zb);
            out.z.set(k, xb);
        }
        CliffordGate::S(k) => {
            let (xb, zb) = (out.x.get(k), out.z.get(k));
            if xb && zb {
                out.neg = !out.neg;
            }
            out.z.set(k, zb ^ xb);
        }
        CliffordGate::Cnot { control, target } => {
            if control == target {
                return Err(SimError::BadConfig("CNOT with control == target".into()));
            }
            let (xc, zc) = (out.x.get(control), out.z.get(control));
            let (xt, zt) = (out.x.get(target), out.z.get(target));
            if xc && zt && !(xt ^ zc) {
                out.neg = !out.neg;
            }
            out.x.set(target, xt ^ xc);
            out.z.set(control, zc ^ zt);
        }
    }
    Ok(out)
}

/// Outcome of a tableau measurement.
pub type MeasureOutcome = (i8, bool); // (±1, deterministic)

/// A stabilizer state given as n independent commuting signed Paulis.
#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    gens: Vec<PauliOperator>,
}

impl StabilizerTableau {
    /// The all-zeros computational state: generators +Z_k.
    pub fn zero_state(n: usize) -> Self {
        let gens = (0..n)
            .map(|k| PauliOperator::single(n, k, Pauli::Z).expect("index in range"))
            .collect();
        StabilizerTableau { n, gens }
    }

    /// Build from explicit generators; validates count, mutual commutation and
    /// independence.
    pub fn from_generators(n: usize, gens: Vec<PauliOperator>) -> Result<Self> {
        if gens.len() != n {
            return Err(SimError::InvalidTableau(format!(
                "need exactly {n} generators, got {}",
                gens.len()
            )));
        }
        for g in &gens {
            if g.n() != n {
                return Err(SimError::SizeMismatch(g.n(), n));
            }
        }
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if !gens[i].commutes_with(&gens[j]) {
                    return Err(SimError::InvalidTableau(format!(
                        "generators {i} and {j} anticommute"
                    )));
                }
            }
        }
        let t = StabilizerTableau { n, gens };
        if t.rank() != n {
            return Err(SimError::InvalidTableau("generators are dependent".into()));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.gens
    }

    /// Symplectic rank of the generator set over GF(2).
    pub fn rank(&self) -> usize {
        symplectic_rank(&self.gens)
    }

    /// Conjugate every generator by a Clifford gate (apply the gate to the state).
    pub fn apply_gate(&mut self, u: CliffordGate) -> Result<()> {
        for g in &mut self.gens {
            *g = conjugate(g, u)?;
        }
        Ok(())
    }

    /// Apply a Pauli unitary: flips the sign of every anticommuting generator.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(SimError::SizeMismatch(p.n(), self.n));
        }
        for g in &mut self.gens {
            if !g.commutes_with(p) {
                g.negate();
            }
        }
        Ok(())
    }

    /// If `op` (up to sign) lies in the stabilizer group, returns the
    /// eigenvalue the state assigns to `op`; otherwise `None`.
    pub fn expectation(&self, op: &PauliOperator) -> Option<i8> {
        let lambda = solve_membership(&self.gens, op)?;
        let mut prod = PauliOperator::identity(self.n);
        for (i, g) in self.gens.iter().enumerate() {
            if lambda[i] {
                prod = prod.multiply(g).expect("generators commute");
            }
        }
        Some(prod.sign() * op.sign())
    }

    /// Measure `op`, implementing the three cases of the stabilizer calculus.
    ///
    /// `forced` fixes the outcome of a random measurement (cases 2 and 3) and
    /// is rejected for deterministic ones.
    pub fn measure(
        &mut self,
        op: &PauliOperator,
        forced: Option<i8>,
        rng: &mut impl Rng,
    ) -> Result<MeasureOutcome> {
        if op.n() != self.n {
            return Err(SimError::SizeMismatch(op.n(), self.n));
        }
        if op.is_identity_word() {
            if forced.is_some() {
                return Err(SimError::ForcedOutcomeDeterministic);
            }
            return Ok((op.sign(), true));
        }
        let anti: Vec<usize> = (0..self.gens.len())
            .filter(|&i| !self.gens[i].commutes_with(op))
            .collect();
        if let Some(&first) = anti.first() {
            // Case 3: fold the later anticommuting generators into the first,
            // then replace the first with the measured operator.
            for &i in &anti[1..] {
                self.gens[i] = self.gens[first]
                    .multiply(&self.gens[i])
                    .expect("commuting generators multiply with real sign");
            }
            let outcome = match forced {
                Some(o) => {
                    debug_assert!(o == 1 || o == -1);
                    o
                }
                None => {
                    if rng.gen::<bool>() {
                        1
                    } else {
                        -1
                    }
                }
            };
            let mut new_gen = op.clone();
            new_gen.set_sign(op.sign() * outcome);
            self.gens[first] = new_gen;
            return Ok((outcome, false));
        }
        // Commutes with everything.
        if let Some(outcome) = self.expectation(op) {
            // Case 1: already an eigenstate.
            if forced.is_some() {
                return Err(SimError::ForcedOutcomeDeterministic);
            }
            return Ok((outcome, true));
        }
        // Case 2: independent and commuting. With a full-rank tableau this is
        // impossible; it is kept for completeness and replaces the first
        // generator expressible through the others.
        let dep = (0..self.gens.len())
            .find(|&i| {
                let others: Vec<PauliOperator> = self
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                solve_membership(&others, &self.gens[i]).is_some()
            })
            .ok_or_else(|| {
                SimError::InvalidTableau(
                    "measurement case 2 reached on an independent tableau".into(),
                )
            })?;
        let outcome = match forced {
            Some(o) => o,
            None => {
                if rng.gen::<bool>() {
                    1
                } else {
                    -1
                }
            }
        };
        let mut new_gen = op.clone();
        new_gen.set_sign(op.sign() * outcome);
        self.gens[dep] = new_gen;
        Ok((outcome, false))
    }

    /// Unique reduced form of the stabilizer group (signs included). Two
    /// tableaus describe the same state iff their canonical forms are equal.
    pub fn canonical_form(&self) -> Vec<PauliOperator> {
        canonicalize(self.gens.clone())
    }

    /// Reduce `op` modulo the stabilizer group: greedily clears leading
    /// symplectic columns using the canonical generators. The result is a
    /// canonical coset representative.
    pub fn reduce_modulo(&self, op: &PauliOperator) -> PauliOperator {
        let canon = self.canonical_form();
        let mut cur = op.clone();
        for g in &canon {
            let p = pivot_column(g).expect("canonical generator is not identity");
            if column_bit(&cur, p) {
                cur = cur.multiply(g).unwrap_or(cur);
            }
        }
        cur
    }

    /// One generator per line in text form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Parse the text serialization (one generator per line, `+ZZII` style).
    pub fn parse_text(n: usize, text: &str) -> Result<Self> {
        let gens = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.parse::<PauliOperator>())
            .collect::<Result<Vec<_>>>()?;
        StabilizerTableau::from_generators(n, gens)
    }
}

/// Column index in the 2n-wide symplectic matrix: x-bits first, then z-bits.
fn column_bit(op: &PauliOperator, col: usize) -> bool {
    let n = op.n();
    if col < n {
        op.x_bits().get(col)
    } else {
        op.z_bits().get(col - n)
    }
}

fn pivot_column(op: &PauliOperator) -> Option<usize> {
    let n = op.n();
    (0..2 * n).find(|&c| column_bit(op, c))
}

/// Gaussian elimination to a unique reduced row-echelon form, multiplying
/// generators together (signs tracked by `multiply`).
fn canonicalize(mut gens: Vec<PauliOperator>) -> Vec<PauliOperator> {
    if gens.is_empty() {
        return gens;
    }
    let n = gens[0].n();
    let mut row = 0;
    for col in 0..2 * n {
        if let Some(r) = (row..gens.len()).find(|&r| column_bit(&gens[r], col)) {
            gens.swap(row, r);
            let pivot = gens[row].clone();
            for (i, g) in gens.iter_mut().enumerate() {
                if i != row && column_bit(g, col) {
                    *g = g.multiply(&pivot).expect("commuting generators");
                }
            }
            row += 1;
            if row == gens.len() {
                break;
            }
        }
    }
    gens.truncate(row); // drop identity rows from dependent inputs
    gens
}

/// Rank of a set of Pauli operators over the binary-symplectic space.
pub fn symplectic_rank(gens: &[PauliOperator]) -> usize {
    canonicalize(gens.to_vec())
        .iter()
        .filter(|g| !g.is_identity_word())
        .count()
}

/// Solve `op = Π gens^λ` over GF(2), ignoring signs. Returns the selector.
fn solve_membership(gens: &[PauliOperator], op: &PauliOperator) -> Option<Vec<bool>> {
    let n = op.n();
    // Augmented elimination: track which original generators make up each row.
    let mut rows: Vec<(PauliOperator, Vec<bool>)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut sel = vec![false; gens.len()];
            sel[i] = true;
            (g.clone(), sel)
        })
        .collect();
    let mut target = op.clone();
    let mut tsel = vec![false; gens.len()];
    let mut row = 0;
    for col in 0..2 * n {
        if let Some(r) = (row..rows.len()).find(|&r| column_bit(&rows[r].0, col)) {
            rows.swap(row, r);
            let (pivot, psel) = rows[row].clone();
            for (i, (g, sel)) in rows.iter_mut().enumerate() {
                if i != row && column_bit(g, col) {
                    *g = g.multiply(&pivot).expect("commuting generators");
                    for (a, b) in sel.iter_mut().zip(&psel) {
                        *a ^= b;
                    }
                }
            }
            if column_bit(&target, col) {
                target = target.multiply(&pivot).ok()?;
                for (a, b) in tsel.iter_mut().zip(&psel) {
                    *a ^= b;
                }
            }
            row += 1;
        } else if column_bit(&target, col) {
            return None; // op has support outside the row space
        }
    }
    if target.is_identity_word() {
        Some(tsel)
    } else {
        None
    }
}

/// Uniform ±1 draw.
pub fn random_sign(rng: &mut impl Rng) -> i8 {
    if rng.gen::<bool>() {
        1
    } else {
        -1
    }
}
