//! A small declarative script format for driving the defect laboratory.
//!
//! One operation per line; `#` starts a comment. Coordinates are `row,col`.
//!
//! ```text
//! lattice 7 7 42
//! smooth s 1,1 3,1
//! rough  r 3,3 5,3
//! prepare s X +1
//! braid s r 3,1 3,2 3,3 2,3 2,2 3,2 3,1
//! expect r X +1
//! measure s Z any
//! check
//! ```

use super::{Basis, DefectLattice, QubitId, SitePos};
use crate::{Result, SimError};
use std::collections::HashMap;

#[derive(Debug, Default)]
pub struct RunReport {
    /// (qubit name, basis, outcome) for every `measure` line.
    pub measurements: Vec<(String, Basis, i8)>,
}

fn parse_pos(tok: &str) -> Result<SitePos> {
    let (a, b) = tok
        .split_once(',')
        .ok_or_else(|| SimError::Parse(format!("expected row,col — got '{tok}'")))?;
    Ok((
        a.trim().parse().map_err(|_| SimError::Parse(format!("bad row '{a}'")))?,
        b.trim().parse().map_err(|_| SimError::Parse(format!("bad col '{b}'")))?,
    ))
}

fn parse_basis(tok: &str) -> Result<Basis> {
    match tok {
        "X" | "x" => Ok(Basis::X),
        "Z" | "z" => Ok(Basis::Z),
        _ => Err(SimError::Parse(format!("bad basis '{tok}'"))),
    }
}

fn parse_sign(tok: &str) -> Result<i8> {
    match tok {
        "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(SimError::Parse(format!("bad sign '{tok}'"))),
    }
}

/// Execute a script; returns the measurement log.
pub fn run_script(text: &str) -> Result<RunReport> {
    let mut lattice: Option<DefectLattice> = None;
    let mut names: HashMap<String, QubitId> = HashMap::new();
    let mut report = RunReport::default();

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ctx = |msg: String| SimError::Parse(format!("line {}: {msg}", ln + 1));
        let need = |n: usize| -> Result<()> {
            if toks.len() < n {
                Err(ctx(format!("'{}' needs {} arguments", toks[0], n - 1)))
            } else {
                Ok(())
            }
        };
        fn dl(l: &mut Option<DefectLattice>, ln: usize) -> Result<&mut DefectLattice> {
            l.as_mut()
                .ok_or_else(|| SimError::Parse(format!("line {}: no lattice yet", ln + 1)))
        }
        let lookup = |names: &HashMap<String, QubitId>, name: &str| -> Result<QubitId> {
            names
                .get(name)
                .copied()
                .ok_or_else(|| SimError::Parse(format!("line {}: unknown qubit '{name}'", ln + 1)))
        };
        match toks[0] {
            "lattice" => {
                need(3)?;
                let w: usize = toks[1].parse().map_err(|_| ctx("bad width".into()))?;
                let h: usize = toks[2].parse().map_err(|_| ctx("bad height".into()))?;
                let seed: u64 = toks.get(3).map_or(Ok(0), |t| {
                    t.parse().map_err(|_| ctx("bad seed".into()))
                })?;
                lattice = Some(DefectLattice::new(w, h, seed)?);
            }
            "smooth" | "rough" => {
                need(4)?;
                let name = toks[1].to_string();
                if names.contains_key(&name) {
                    return Err(ctx(format!("qubit '{name}' already exists")));
                }
                let r1 = parse_pos(toks[2])?;
                let r2 = parse_pos(toks[3])?;
                let l = dl(&mut lattice, ln)?;
                let id = if toks[0] == "smooth" {
                    l.create_smooth_qubit(&[r1], &[r2])?
                } else {
                    l.create_rough_qubit(&[r1], &[r2])?
                };
                names.insert(name, id);
            }
            "x" | "z" => {
                need(2)?;
                let id = lookup(&names, toks[1])?;
                let basis = if toks[0] == "x" { Basis::X } else { Basis::Z };
                dl(&mut lattice, ln)?.apply_logical(id, basis)?;
            }
            "prepare" => {
                need(4)?;
                let id = lookup(&names, toks[1])?;
                let basis = parse_basis(toks[2])?;
                let sign = parse_sign(toks[3])?;
                dl(&mut lattice, ln)?.prepare(id, basis, sign)?;
            }
            "move" => {
                need(4)?;
                let id = lookup(&names, toks[1])?;
                let defect: usize = toks[2].parse().map_err(|_| ctx("bad defect index".into()))?;
                let to = parse_pos(toks[3])?;
                dl(&mut lattice, ln)?.move_defect(id, defect, to)?;
            }
            "braid" => {
                need(4)?;
                let s = lookup(&names, toks[1])?;
                let r = lookup(&names, toks[2])?;
                let path: Vec<SitePos> =
                    toks[3..].iter().map(|t| parse_pos(t)).collect::<Result<_>>()?;
                dl(&mut lattice, ln)?.braid_cnot(s, r, &path)?;
            }
            "measure" => {
                need(4)?;
                let id = lookup(&names, toks[1])?;
                let basis = parse_basis(toks[2])?;
                let outcome = dl(&mut lattice, ln)?.measure_logical(id, basis)?;
                if toks[3] != "any" && parse_sign(toks[3])? != outcome {
                    return Err(ctx(format!(
                        "measurement of {} in {:?} gave {outcome:+}, expected {}",
                        toks[1], basis, toks[3]
                    )));
                }
                report.measurements.push((toks[1].to_string(), basis, outcome));
            }
            "expect" => {
                need(4)?;
                let id = lookup(&names, toks[1])?;
                let basis = parse_basis(toks[2])?;
                let want = parse_sign(toks[3])?;
                let got = dl(&mut lattice, ln)?.expectation_logical(id, basis)?;
                if got != Some(want) {
                    return Err(ctx(format!(
                        "expectation of {} in {:?} is {got:?}, expected {want:+}",
                        toks[1], basis
                    )));
                }
            }
            "check" => {
                let l = dl(&mut lattice, ln)?;
                l.check_dof()?;
                l.check_enforced_clean()?;
            }
            other => return Err(ctx(format!("unknown operation '{other}'"))),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_roundtrip() {
        let report = run_script(
            "# smooth qubit life cycle
             lattice 6 6 5
             smooth s 2,1 2,3
             expect s Z +1
             x s
             expect s Z -1
             move s 1 3,3
             expect s Z -1
             measure s Z -1
             check",
        )
        .unwrap();
        assert_eq!(report.measurements.len(), 1);
        assert_eq!(report.measurements[0].2, -1);
    }

    #[test]
    fn script_braid() {
        run_script(
            "lattice 7 7 9
             smooth s 1,1 3,1
             rough  r 3,3 5,3
             prepare s X +1
             braid s r 3,1 3,2 3,3 2,3 2,2 3,2 3,1
             expect r X +1
             check",
        )
        .unwrap();
    }

    #[test]
    fn script_errors() {
        assert!(run_script("bogus").is_err());
        assert!(run_script("smooth s 1,1 2,2").is_err()); // no lattice
        assert!(run_script("lattice 6 6\nmeasure ghost Z any").is_err());
        let err = run_script("lattice 6 6\nsmooth s 2,1 2,3\nexpect s Z -1");
        assert!(err.is_err()); // wrong expectation
    }
}
