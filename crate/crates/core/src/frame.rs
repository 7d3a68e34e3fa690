//! Pauli-frame Monte Carlo of repeated noisy syndrome extraction.
//!
//! The frame records the accumulated X/Z error relative to the ideal
//! codestate — sufficient because every circuit here is Clifford and every
//! error a Pauli. CNOTs propagate frame bits (X on the control copies to the
//! target, Z on the target copies to the control), so syndrome-qubit errors
//! hook back into data qubits exactly as in the real circuit.

use crate::bits::BitVec;
use crate::lattice::{ExtractionSchedule, PlanarLattice, QubitRef, SyndKind};
use crate::noise::CycleNoise;
use crate::pauli::Pauli;
use crate::{Result, SimError};
use std::io::{Read, Write};

/// Accumulated Pauli error for one simulation timeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorFrame {
    pub x_err: BitVec,
    pub z_err: BitVec,
    /// X/Z components on the Z-syndrome ancillas.
    pub synd_z_x: BitVec,
    pub synd_z_z: BitVec,
    /// X/Z components on the X-syndrome ancillas.
    pub synd_x_x: BitVec,
    pub synd_x_z: BitVec,
    pub cycle: u64,
}

impl ErrorFrame {
    pub fn new(lattice: &PlanarLattice) -> Self {
        ErrorFrame {
            x_err: BitVec::zeros(lattice.n_data),
            z_err: BitVec::zeros(lattice.n_data),
            synd_z_x: BitVec::zeros(lattice.z_stabs.len()),
            synd_z_z: BitVec::zeros(lattice.z_stabs.len()),
            synd_x_x: BitVec::zeros(lattice.x_stabs.len()),
            synd_x_z: BitVec::zeros(lattice.x_stabs.len()),
            cycle: 0,
        }
    }

    fn apply(&mut self, q: QubitRef, p: Pauli) {
        let (xb, zb) = p.bits();
        match q {
            QubitRef::Data(i) => {
                if xb {
                    self.x_err.flip(i);
                }
                if zb {
                    self.z_err.flip(i);
                }
            }
            QubitRef::Synd(SyndKind::Z, s) => {
                if xb {
                    self.synd_z_x.flip(s);
                }
                if zb {
                    self.synd_z_z.flip(s);
                }
            }
            QubitRef::Synd(SyndKind::X, s) => {
                if xb {
                    self.synd_x_x.flip(s);
                }
                if zb {
                    self.synd_x_z.flip(s);
                }
            }
        }
    }
}

/// Inject a Pauli on a data qubit (test hook; XORs the frame bits).
pub fn inject_pauli(frame: &mut ErrorFrame, qubit: usize, p: Pauli) -> Result<()> {
    if qubit >= frame.x_err.len() {
        return Err(SimError::IndexOutOfRange { index: qubit, n: frame.x_err.len() });
    }
    frame.apply(QubitRef::Data(qubit), p);
    Ok(())
}

/// Reported stabilizer signs for one cycle (bit set = −1 reported).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeRecord {
    pub cycle: u64,
    pub z_reports: BitVec,
    pub x_reports: BitVec,
}

impl SyndromeRecord {
    /// The all-+1 reference the first cycle is compared against.
    pub fn reference(lattice: &PlanarLattice) -> Self {
        SyndromeRecord {
            cycle: 0,
            z_reports: BitVec::zeros(lattice.z_stabs.len()),
            x_reports: BitVec::zeros(lattice.x_stabs.len()),
        }
    }
}

/// A space-time location where the reported sign changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DetectionEvent {
    pub kind: SyndKind,
    pub id: usize,
    pub cycle: u64,
}

/// Positions where consecutive reports differ.
pub fn detection_events(prev: &SyndromeRecord, cur: &SyndromeRecord) -> Result<Vec<DetectionEvent>> {
    if cur.cycle != prev.cycle + 1 {
        return Err(SimError::NonConsecutiveRecords(prev.cycle, cur.cycle));
    }
    let mut events = Vec::new();
    for (kind, a, b) in [
        (SyndKind::Z, &prev.z_reports, &cur.z_reports),
        (SyndKind::X, &prev.x_reports, &cur.x_reports),
    ] {
        let mut diff = a.clone();
        diff.xor_assign(b);
        events.extend(diff.iter_ones().map(|id| DetectionEvent { kind, id, cycle: cur.cycle }));
    }
    Ok(events)
}

/// Which idle qubits receive memory noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdleNoiseMode {
    /// Every idle qubit, syndrome ancillas included (strictest reading).
    #[default]
    All,
    /// Idle data qubits only.
    DataOnly,
}

/// Runs six-step extraction cycles on a frame.
pub struct FrameSimulator<'a> {
    pub lattice: &'a PlanarLattice,
    pub schedule: &'a ExtractionSchedule,
    idle_lists: [Vec<QubitRef>; 6],
}

impl<'a> FrameSimulator<'a> {
    pub fn new(
        lattice: &'a PlanarLattice,
        schedule: &'a ExtractionSchedule,
        mode: IdleNoiseMode,
    ) -> Self {
        let mut idle_lists: [Vec<QubitRef>; 6] = Default::default();
        for (step, idle) in schedule.idle.iter().enumerate() {
            idle_lists[step] = match mode {
                IdleNoiseMode::All => idle.clone(),
                IdleNoiseMode::DataOnly => idle
                    .iter()
                    .copied()
                    .filter(|q| matches!(q, QubitRef::Data(_)))
                    .collect(),
            };
        }
        FrameSimulator { lattice, schedule, idle_lists }
    }

    /// One six-step cycle: init, four CNOT layers, readout; noise after each
    /// perfect operation. Returns the reported syndromes.
    pub fn run_cycle<N: CycleNoise>(&self, frame: &mut ErrorFrame, noise: &mut N) -> SyndromeRecord {
        debug_assert_eq!(frame.x_err.len(), self.lattice.n_data);
        let mut scratch_idx: Vec<usize> = Vec::new();
        let mut scratch_mem: Vec<(QubitRef, Pauli)> = Vec::new();
        let mut scratch_gate: Vec<(usize, Pauli, Pauli)> = Vec::new();

        // Step 0: syndrome initialization. Ancillas are reset, so their frame
        // bits clear; an init flip shows up as the error that moves the fresh
        // state off |0⟩ (X) or |+⟩ (Z).
        frame.synd_z_x.clear();
        frame.synd_z_z.clear();
        frame.synd_x_x.clear();
        frame.synd_x_z.clear();
        scratch_idx.clear();
        noise.init_flips(SyndKind::Z, self.lattice.z_stabs.len(), &mut scratch_idx);
        for &s in &scratch_idx {
            frame.synd_z_x.flip(s);
        }
        scratch_idx.clear();
        noise.init_flips(SyndKind::X, self.lattice.x_stabs.len(), &mut scratch_idx);
        for &s in &scratch_idx {
            frame.synd_x_z.flip(s);
        }
        self.apply_memory(frame, 0, noise, &mut scratch_mem);

        // Steps 1-4: CNOT layers.
        for (layer, cnots) in self.schedule.layers.iter().enumerate() {
            for c in cnots {
                match c.kind {
                    SyndKind::Z => {
                        // data (control) → syndrome (target)
                        if frame.x_err.get(c.data) {
                            frame.synd_z_x.flip(c.synd);
                        }
                        if frame.synd_z_z.get(c.synd) {
                            frame.z_err.flip(c.data);
                        }
                    }
                    SyndKind::X => {
                        // syndrome (control) → data (target)
                        if frame.synd_x_x.get(c.synd) {
                            frame.x_err.flip(c.data);
                        }
                        if frame.z_err.get(c.data) {
                            frame.synd_x_z.flip(c.synd);
                        }
                    }
                }
            }
            scratch_gate.clear();
            noise.gate_errors(layer, cnots, &mut scratch_gate);
            for &(idx, pc, pt) in &scratch_gate {
                let c = cnots[idx];
                let (control, target) = match c.kind {
                    SyndKind::Z => (QubitRef::Data(c.data), QubitRef::Synd(SyndKind::Z, c.synd)),
                    SyndKind::X => (QubitRef::Synd(SyndKind::X, c.synd), QubitRef::Data(c.data)),
                };
                frame.apply(control, pc);
                frame.apply(target, pt);
            }
            self.apply_memory(frame, layer + 1, noise, &mut scratch_mem);
        }

        // Step 5: readout. A Z syndrome is read in the Z basis (flipped by the
        // ancilla's X component), an X syndrome in the X basis (flipped by Z).
        let mut z_reports = frame.synd_z_x.clone();
        let mut x_reports = frame.synd_x_z.clone();
        scratch_idx.clear();
        noise.readout_flips(SyndKind::Z, self.lattice.z_stabs.len(), &mut scratch_idx);
        for &s in &scratch_idx {
            z_reports.flip(s);
        }
        scratch_idx.clear();
        noise.readout_flips(SyndKind::X, self.lattice.x_stabs.len(), &mut scratch_idx);
        for &s in &scratch_idx {
            x_reports.flip(s);
        }
        self.apply_memory(frame, 5, noise, &mut scratch_mem);

        frame.cycle += 1;
        SyndromeRecord { cycle: frame.cycle, z_reports, x_reports }
    }

    fn apply_memory<N: CycleNoise>(
        &self,
        frame: &mut ErrorFrame,
        step: usize,
        noise: &mut N,
        scratch: &mut Vec<(QubitRef, Pauli)>,
    ) {
        scratch.clear();
        noise.memory_errors(step, &self.idle_lists[step], scratch);
        for &(q, p) in scratch.iter() {
            frame.apply(q, p);
        }
    }
}

const TRACE_MAGIC: &[u8; 8] = b"SCTRACE1";

/// Writes a binary trace of syndrome records with a versioned header.
pub struct TraceWriter<W: Write> {
    w: W,
    z_len: usize,
    x_len: usize,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(
        mut w: W,
        d: usize,
        params: &crate::noise::NoiseParams,
        seed: u64,
    ) -> Result<Self> {
        w.write_all(TRACE_MAGIC)?;
        w.write_all(&(d as u64).to_le_bytes())?;
        for p in [params.p_i, params.p_r, params.p_m, params.p_g] {
            w.write_all(&p.to_le_bytes())?;
        }
        w.write_all(&seed.to_le_bytes())?;
        let lattice = PlanarLattice::mixed(d)?;
        Ok(TraceWriter { w, z_len: lattice.z_stabs.len(), x_len: lattice.x_stabs.len() })
    }

    pub fn write_record(&mut self, rec: &SyndromeRecord) -> Result<()> {
        debug_assert_eq!(rec.z_reports.len(), self.z_len);
        debug_assert_eq!(rec.x_reports.len(), self.x_len);
        self.w.write_all(&rec.cycle.to_le_bytes())?;
        for word in rec.z_reports.words() {
            self.w.write_all(&word.to_le_bytes())?;
        }
        for word in rec.x_reports.words() {
            self.w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.w.flush()?;
        Ok(())
    }
}

/// Parsed trace header.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceHeader {
    pub d: usize,
    pub params: crate::noise::NoiseParams,
    pub seed: u64,
}

/// Reads traces produced by [`TraceWriter`].
pub struct TraceReader<R: Read> {
    r: R,
    pub header: TraceHeader,
    z_len: usize,
    x_len: usize,
    next_cycle: u64,
}

impl<R: Read> TraceReader<R> {
    pub fn new(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != TRACE_MAGIC {
            return Err(SimError::BadTrace("bad magic".into()));
        }
        let mut buf8 = [0u8; 8];
        r.read_exact(&mut buf8)?;
        let d = u64::from_le_bytes(buf8) as usize;
        let mut ps = [0.0f64; 4];
        for p in &mut ps {
            r.read_exact(&mut buf8)?;
            *p = f64::from_le_bytes(buf8);
        }
        r.read_exact(&mut buf8)?;
        let seed = u64::from_le_bytes(buf8);
        let lattice = PlanarLattice::mixed(d)?;
        Ok(TraceReader {
            r,
            header: TraceHeader {
                d,
                params: crate::noise::NoiseParams { p_i: ps[0], p_r: ps[1], p_m: ps[2], p_g: ps[3] },
                seed,
            },
            z_len: lattice.z_stabs.len(),
            x_len: lattice.x_stabs.len(),
            next_cycle: 1,
        })
    }

    /// Next record, or None at end of stream.
    pub fn read_record(&mut self) -> Result<Option<SyndromeRecord>> {
        let mut buf8 = [0u8; 8];
        match self.r.read_exact(&mut buf8) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => return Ok(None),
            Err(e) => return Err(e.into()),
        }
        let cycle = u64::from_le_bytes(buf8);
        if cycle != self.next_cycle {
            return Err(SimError::BadTrace(format!(
                "expected cycle {}, found {cycle}",
                self.next_cycle
            )));
        }
        self.next_cycle += 1;
        let read_bits = |len: usize, r: &mut R| -> Result<BitVec> {
            let mut v = BitVec::zeros(len);
            let words = len.div_ceil(64);
            let mut raw = vec![0u8; words * 8];
            r.read_exact(&mut raw)?;
            for i in 0..len {
                let w = u64::from_le_bytes(raw[i / 64 * 8..i / 64 * 8 + 8].try_into().unwrap());
                if w >> (i % 64) & 1 != 0 {
                    v.set(i, true);
                }
            }
            Ok(v)
        };
        let z_reports = read_bits(self.z_len, &mut self.r)?;
        let x_reports = read_bits(self.x_len, &mut self.r)?;
        Ok(Some(SyndromeRecord { cycle, z_reports, x_reports }))
    }
}
