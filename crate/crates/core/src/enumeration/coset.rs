//! Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! Two definition strategies are provided and cross-checked against each
//! other:
//!
//! * [`Strategy::DefinitionDriven`] (the default): after every new coset
//!   definition, all relators are rescanned at all live cosets until no new
//!   deduction or coincidence appears, then the first undefined table entry
//!   (lowest coset, lowest column) is filled with a fresh coset.
//! * [`Strategy::RelatorDriven`]: relators are traced coset by coset,
//!   defining new cosets wherever a trace stalls, and each row is completed
//!   before moving on.
//!
//! Coset ids are assigned first-touch sequentially and coincidences always
//! keep the smaller id, so runs are bit-reproducible. Raw table entries may
//! briefly point at dead cosets during coincidence processing; every read
//! goes through union-find `find`, and the table is compressed before the
//! final audits.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::Word;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("live cosets would exceed the cap of {cap} ({cosets_defined} defined so far)")]
    CapExceeded { cap: usize, cosets_defined: usize },
    #[error("completed table failed its audit: {0}")]
    AuditFailed(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    DefinitionDriven,
    RelatorDriven,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::DefinitionDriven => write!(f, "definition-driven"),
            Strategy::RelatorDriven => write!(f, "relator-driven"),
        }
    }
}

/// Result of a completed enumeration: the group order is the number of live
/// cosets of the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcReport {
    pub order: usize,
    pub cosets_defined: usize,
    pub strategy: Strategy,
}

/// The coset table: one row per defined coset, one column per generator and
/// per inverse generator.
pub struct CosetTable {
    ncols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    relators: Vec<Vec<u32>>,
    cap: usize,
}

#[inline]
fn inv_col(col: u32) -> u32 {
    col ^ 1
}

/// Compiles a word into a sequence of column indices; generator g gets
/// column 2g and its inverse column 2g+1.
fn compile(word: &Word) -> Vec<u32> {
    let mut cols = Vec::with_capacity(word.letter_len() as usize);
    for &(g, e) in word.letters() {
        let col = if e > 0 { 2 * g.0 } else { 2 * g.0 + 1 };
        for _ in 0..e.unsigned_abs() {
            cols.push(col);
        }
    }
    cols
}

impl CosetTable {
    fn new(pres: &Presentation, cap: usize) -> Self {
        let ncols = 2 * pres.generator_count();
        let relators: Vec<Vec<u32>> = pres.relators().iter().map(compile).collect();
        let mut table = CosetTable {
            ncols,
            rows: Vec::new(),
            parent: Vec::new(),
            live: 0,
            relators,
            cap,
        };
        table.alloc_coset();
        table
    }

    fn alloc_coset(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.rows.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(id);
        self.live += 1;
        id
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn is_live(&mut self, c: u32) -> bool {
        self.find(c) == c
    }

    #[inline]
    fn raw(&self, c: u32, col: u32) -> u32 {
        self.rows[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set_raw(&mut self, c: u32, col: u32, d: u32) {
        self.rows[c as usize * self.ncols + col as usize] = d;
    }

    /// Resolved table lookup: follows union-find on a defined entry.
    fn get(&mut self, c: u32, col: u32) -> u32 {
        let e = self.raw(c, col);
        if e == UNDEF {
            UNDEF
        } else {
            self.find(e)
        }
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn defined_count(&self) -> usize {
        self.parent.len()
    }

    /// Records `c * col = d` together with the inverse entry, queueing a
    /// coincidence if either slot is already occupied by a different coset.
    fn deduce(&mut self, c: u32, col: u32, d: u32, queue: &mut VecDeque<(u32, u32)>) {
        let cur = self.get(c, col);
        if cur == UNDEF {
            self.set_raw(c, col, d);
        } else if cur != d {
            queue.push_back((cur, d));
        }
        let back = self.get(d, inv_col(col));
        if back == UNDEF {
            self.set_raw(d, inv_col(col), c);
        } else if back != c {
            queue.push_back((back, c));
        }
    }

    /// Merges equivalence classes until the queue drains, transplanting the
    /// table rows of dying cosets onto their survivors.
    fn process_coincidences(&mut self, queue: &mut VecDeque<(u32, u32)>) {
        while let Some((a, b)) = queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.parent[dead as usize] = keep;
            self.live -= 1;
            for col in 0..self.ncols as u32 {
                let e = self.raw(dead, col);
                if e == UNDEF {
                    continue;
                }
                self.set_raw(dead, col, UNDEF);
                let e = self.find(e);
                let k = self.find(keep);
                self.deduce(k, col, e, queue);
            }
        }
    }

    /// Scans one relator at coset `c`. Returns true when a deduction or
    /// coincidence was made. With `fill`, stalled scans define new cosets
    /// (relator-driven style) and the scan always completes.
    fn scan(
        &mut self,
        c: u32,
        rel_idx: usize,
        fill: bool,
        queue: &mut VecDeque<(u32, u32)>,
    ) -> Result<bool, EnumerationError> {
        let len = self.relators[rel_idx].len();
        if len == 0 {
            return Ok(false);
        }
        let mut f = c;
        let mut i = 0;
        loop {
            // Forward pass.
            while i < len {
                let col = self.relators[rel_idx][i];
                let next = self.get(f, col);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == len {
                if f != c {
                    queue.push_back((f, c));
                    self.process_coincidences(queue);
                    return Ok(true);
                }
                return Ok(false);
            }
            // Backward pass.
            let mut b = c;
            let mut j = len;
            while j > i + 1 {
                let col = inv_col(self.relators[rel_idx][j - 1]);
                let next = self.get(b, col);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i + 1 {
                let col = self.relators[rel_idx][i];
                self.deduce(f, col, b, queue);
                self.process_coincidences(queue);
                return Ok(true);
            }
            if !fill {
                return Ok(false);
            }
            // Relator-driven: define a coset at the stall and keep tracing.
            let col = self.relators[rel_idx][i];
            let d = self.define(f, col, queue)?;
            f = d;
            i += 1;
        }
    }

    fn define(
        &mut self,
        c: u32,
        col: u32,
        queue: &mut VecDeque<(u32, u32)>,
    ) -> Result<u32, EnumerationError> {
        if self.live + 1 > self.cap {
            return Err(EnumerationError::CapExceeded {
                cap: self.cap,
                cosets_defined: self.defined_count(),
            });
        }
        let d = self.alloc_coset();
        self.deduce(c, col, d, queue);
        Ok(d)
    }

    /// First undefined `(coset, column)` slot in id order, if any.
    fn first_gap(&mut self) -> Option<(u32, u32)> {
        for c in 0..self.defined_count() as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.ncols as u32 {
                if self.raw(c, col) == UNDEF {
                    return Some((c, col));
                }
            }
        }
        None
    }

    /// Rescans every relator at every live coset until quiescent.
    fn saturate(&mut self, queue: &mut VecDeque<(u32, u32)>) -> Result<(), EnumerationError> {
        loop {
            let mut changed = false;
            let mut c = 0u32;
            while (c as usize) < self.defined_count() {
                if self.is_live(c) {
                    for rel_idx in 0..self.relators.len() {
                        if !self.is_live(c) {
                            break;
                        }
                        if self.scan(c, rel_idx, false, queue)? {
                            changed = true;
                        }
                    }
                }
                c += 1;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn run_definition_driven(&mut self) -> Result<(), EnumerationError> {
        let mut queue = VecDeque::new();
        loop {
            self.saturate(&mut queue)?;
            match self.first_gap() {
                None => return Ok(()),
                Some((c, col)) => {
                    self.define(c, col, &mut queue)?;
                    self.process_coincidences(&mut queue);
                }
            }
        }
    }

    fn run_relator_driven(&mut self) -> Result<(), EnumerationError> {
        let mut queue = VecDeque::new();
        let mut c = 0u32;
        while (c as usize) < self.defined_count() {
            if self.is_live(c) {
                for rel_idx in 0..self.relators.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    self.scan(c, rel_idx, true, &mut queue)?;
                }
                if self.is_live(c) {
                    for col in 0..self.ncols as u32 {
                        if self.raw(c, col) == UNDEF {
                            self.define(c, col, &mut queue)?;
                            self.process_coincidences(&mut queue);
                        }
                        if !self.is_live(c) {
                            break;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Rewrites every live entry to its representative.
    fn compress(&mut self) {
        for c in 0..self.defined_count() as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.ncols as u32 {
                let e = self.raw(c, col);
                if e != UNDEF {
                    let e = self.find(e);
                    self.set_raw(c, col, e);
                }
            }
        }
    }

    /// Post-completion audits: closure, consistency, and relator traces.
    pub fn audit(&mut self) -> Result<(), EnumerationError> {
        self.compress();
        let live: Vec<u32> = (0..self.defined_count() as u32)
            .filter(|&c| self.parent[c as usize] == c)
            .collect();
        for &c in &live {
            for col in 0..self.ncols as u32 {
                let d = self.raw(c, col);
                if d == UNDEF {
                    return Err(EnumerationError::AuditFailed(format!(
                        "entry ({c}, {col}) undefined in a completed table"
                    )));
                }
                if self.raw(d, inv_col(col)) != c {
                    return Err(EnumerationError::AuditFailed(format!(
                        "inconsistent pair at ({c}, {col})"
                    )));
                }
            }
        }
        for &c in &live {
            for rel in &self.relators {
                let mut f = c;
                for &col in rel {
                    f = self.raw(f, col);
                }
                if f != c {
                    return Err(EnumerationError::AuditFailed(format!(
                        "relator does not trace to its start from coset {c}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Enumerates cosets of the trivial subgroup with the default
/// definition-driven strategy. On success the returned order is the group
/// order.
pub fn todd_coxeter(pres: &Presentation, cap: usize) -> Result<TcReport, EnumerationError> {
    todd_coxeter_with(pres, cap, Strategy::DefinitionDriven)
}

pub fn todd_coxeter_with(
    pres: &Presentation,
    cap: usize,
    strategy: Strategy,
) -> Result<TcReport, EnumerationError> {
    let mut table = CosetTable::new(pres, cap);
    match strategy {
        Strategy::DefinitionDriven => table.run_definition_driven()?,
        Strategy::RelatorDriven => table.run_relator_driven()?,
    }
    table.audit()?;
    Ok(TcReport {
        order: table.live_count(),
        cosets_defined: table.defined_count(),
        strategy,
    })
}
