//! Certificate-producing reduction of a morphism [n] -> [0] to the ordered
//! fold, by elementary moves. Every move is witnessed by a morphism
//! g: [n] -> [2] whose fold composite is the state before the move and
//! whose twisted-fold composite is the state after it. An independent
//! verifier recomputes both composites for every step.

use crate::category::{CategoryError, Label, LabelledFiberMap};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// One elementary move: fold o witness = before, twisted fold o witness =
/// after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub witness: LabelledFiberMap,
    pub before: LabelledFiberMap,
    pub after: LabelledFiberMap,
}

/// A chain of moves from `start` down to the ordered fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub start: LabelledFiberMap,
    pub steps: Vec<ReductionStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("step {0}: fold composite of the witness differs from `before`")]
    BeforeMismatch(usize),
    #[error("step {0}: twisted-fold composite of the witness differs from `after`")]
    AfterMismatch(usize),
    #[error("step {0}: `before` does not continue the chain")]
    ChainBroken(usize),
    #[error("certificate does not terminate at the ordered fold")]
    WrongTerminal,
    #[error("parse error: {0}")]
    Parse(String),
}

type Entry = (usize, Label);

fn fiber_map(n: i32, fiber: Vec<Entry>) -> LabelledFiberMap {
    LabelledFiberMap::new(n, 0, vec![fiber]).expect("valid fiber")
}

fn witness_map(n: i32, x: Vec<Entry>, y: Vec<Entry>, z: Vec<Entry>) -> LabelledFiberMap {
    LabelledFiberMap::new(n, 2, vec![x, y, z]).expect("valid witness")
}

/// Split the current state into (X, Y, Z), record the move and return the
/// new state Z < twist(Y) < X.
fn apply_move(
    n: i32,
    steps: &mut Vec<ReductionStep>,
    current: &mut Vec<Entry>,
    x: Vec<Entry>,
    y: Vec<Entry>,
    z: Vec<Entry>,
) {
    let mut recombined = x.clone();
    recombined.extend_from_slice(&y);
    recombined.extend_from_slice(&z);
    debug_assert_eq!(&recombined, current, "move does not split the current state");
    let before = fiber_map(n, current.clone());
    let mut next: Vec<Entry> = z.clone();
    next.extend(crate::category::twist(&y));
    next.extend_from_slice(&x);
    let after = fiber_map(n, next.clone());
    steps.push(ReductionStep { witness: witness_map(n, x, y, z), before, after });
    *current = next;
}

/// Rotate one position: the final element moves to the front. Witnessed by
/// Y empty and Z the maximal singleton.
fn rotate_once(n: i32, steps: &mut Vec<ReductionStep>, current: &mut Vec<Entry>) {
    let mut x = current.clone();
    let z = vec![x.pop().expect("nonempty state")];
    apply_move(n, steps, current, x, Vec::new(), z);
}

/// Reduce a morphism [n] -> [0] to the ordered fold. The move schedule
/// follows three phases: clear negative labels front to back, rotate until
/// the maximal element sits last, then repeatedly rotate the unsorted
/// prefix in place while fixing the sorted suffix.
pub fn reduce(f: &LabelledFiberMap) -> ReductionCertificate {
    assert_eq!(f.target_rank(), 0, "reduction targets morphisms into [0]");
    assert!(f.source_rank() >= 0);
    let n = f.source_rank();
    let len = (n + 1) as usize;
    let mut current: Vec<Entry> = f.fiber(0).to_vec();
    let mut steps = Vec::new();

    // clear labels: X is the positive prefix, Y the first negative entry
    while let Some(j) = current.iter().position(|(_, l)| *l == Label::Neg) {
        let x = current[..j].to_vec();
        let y = vec![current[j]];
        let z = current[j + 1..].to_vec();
        apply_move(n, &mut steps, &mut current, x, y, z);
    }

    // rotate until the last position holds the maximal element
    while current[len - 1].0 != len - 1 {
        rotate_once(n, &mut steps, &mut current);
    }

    // block-rotate the unsorted prefix, keeping the sorted suffix fixed
    loop {
        if current.iter().enumerate().all(|(pos, (e, _))| pos == *e) {
            break;
        }
        let j = (0..len).rev().find(|&pos| current[pos].0 != pos).expect("not yet sorted");
        // move the prefix pivot out, twisting it past the fixed suffix
        let x = current[..j].to_vec();
        let y = vec![current[j]];
        let z = current[j + 1..].to_vec();
        apply_move(n, &mut steps, &mut current, x, y, z);
        for _ in 0..=j {
            rotate_once(n, &mut steps, &mut current);
        }
        // clear the twisted pivot at the front
        let y = vec![current[0]];
        let z = current[1..].to_vec();
        apply_move(n, &mut steps, &mut current, Vec::new(), y, z);
        rotate_once(n, &mut steps, &mut current);
    }

    debug_assert_eq!(current, LabelledFiberMap::ordered_fold(n).fiber(0).to_vec());
    ReductionCertificate { start: f.clone(), steps }
}

/// Check a certificate by recomputing both composites of every witness with
/// the composition engine, then checking chain connectivity and the
/// terminal state. Shares no logic with the reducer's move selection.
pub fn verify_certificate(cert: &ReductionCertificate) -> Result<(), CertificateError> {
    let n = cert.start.source_rank();
    let fold2 = LabelledFiberMap::ordered_fold(2);
    let twisted = LabelledFiberMap::twisted_fold();
    let mut expected = cert.start.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        if step.before != expected {
            return Err(CertificateError::ChainBroken(i));
        }
        if LabelledFiberMap::compose(&fold2, &step.witness) != step.before {
            return Err(CertificateError::BeforeMismatch(i));
        }
        if LabelledFiberMap::compose(&twisted, &step.witness) != step.after {
            return Err(CertificateError::AfterMismatch(i));
        }
        expected = step.after.clone();
    }
    if expected != LabelledFiberMap::ordered_fold(n) {
        return Err(CertificateError::WrongTerminal);
    }
    Ok(())
}

/// The difference start - fold as a formal sum of witness columns: each
/// witness g contributes (fold o g) - (twisted fold o g), and the chain
/// telescopes.
#[derive(Debug, Clone)]
pub struct MembershipExpression {
    pub witnesses: Vec<LabelledFiberMap>,
}

pub fn image_membership(f: &LabelledFiberMap) -> MembershipExpression {
    let cert = reduce(f);
    MembershipExpression { witnesses: cert.steps.into_iter().map(|s| s.witness).collect() }
}

/// Exact check of the telescoping identity as a formal sum over the
/// hom-set, without linear algebra: computes the integer coefficient of
/// every morphism on both sides.
pub fn telescoping_holds(f: &LabelledFiberMap, expr: &MembershipExpression) -> bool {
    let n = f.source_rank();
    let fold2 = LabelledFiberMap::ordered_fold(2);
    let twisted = LabelledFiberMap::twisted_fold();
    let mut counts: BTreeMap<LabelledFiberMap, i64> = BTreeMap::new();
    for g in &expr.witnesses {
        *counts.entry(LabelledFiberMap::compose(&fold2, g)).or_default() += 1;
        *counts.entry(LabelledFiberMap::compose(&twisted, g)).or_default() -= 1;
    }
    *counts.entry(f.clone()).or_default() -= 1;
    *counts.entry(LabelledFiberMap::ordered_fold(n)).or_default() += 1;
    counts.values().all(|c| *c == 0)
}

impl fmt::Display for ReductionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "REDUCTION {}", self.start)?;
        for step in &self.steps {
            writeln!(f, "STEP {} ; {} ; {}", step.witness, step.before, step.after)?;
        }
        Ok(())
    }
}

impl ReductionCertificate {
    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut start = None;
        let mut steps = Vec::new();
        let err = |m: String| CertificateError::Parse(m);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("REDUCTION ") {
                let f = LabelledFiberMap::parse(rest).map_err(|e: CategoryError| err(e.to_string()))?;
                start = Some(f);
            } else if let Some(rest) = line.strip_prefix("STEP ") {
                let parts: Vec<&str> = rest.split(';').collect();
                let [w, b, a] = parts[..] else {
                    return Err(err("STEP needs `witness ; before ; after`".to_string()));
                };
                let parse = |s: &str| {
                    LabelledFiberMap::parse(s.trim()).map_err(|e: CategoryError| err(e.to_string()))
                };
                steps.push(ReductionStep { witness: parse(w)?, before: parse(b)?, after: parse(a)? });
            } else {
                return Err(err(format!("unrecognized line `{line}`")));
            }
        }
        let start = start.ok_or_else(|| err("missing REDUCTION line".to_string()))?;
        Ok(ReductionCertificate { start, steps })
    }
}
