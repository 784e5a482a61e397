//! Smith-invariant triples of block upper-triangular matrices.
//!
//! Over `Z_l`, the Smith invariants `c` of `[[A, X], [0, B]]` can take a
//! given value for some `X` exactly when the trace equality holds and every
//! strict tilde triple inequality
//! `Σ_{I∩M_s} a_i + Σ_{J∩M_t} b_j ≥ Σ_K c_k` holds.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::HornError;
use crate::horn::{HornTable, Inequality, Layout, StMode, REDUCE_LIMIT};
use crate::partition::Partition;

/// The inequality system for block sizes `s` and `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmithSystem {
    pub layout: Layout,
    /// `Σa + Σb = Σc`, rendered.
    pub trace: String,
    /// One entry per distinct form among the strict triples with `p < s + t`.
    pub inequalities: Vec<Inequality>,
}

impl SmithSystem {
    pub fn s(&self) -> usize {
        self.layout.s
    }

    pub fn t(&self) -> usize {
        self.layout.t
    }

    fn check_lengths(&self, a: &Partition, b: &Partition, c: &Partition) -> Result<(), HornError> {
        for (x, want) in [(a, self.layout.s), (b, self.layout.t), (c, self.layout.n)] {
            if x.len() != want {
                return Err(HornError::LengthMismatch { got: x.len(), n: want });
            }
        }
        Ok(())
    }

    /// Trace equality plus every inequality. Lengths must match exactly.
    pub fn feasible(&self, a: &Partition, b: &Partition, c: &Partition) -> Result<bool, HornError> {
        self.check_lengths(a, b, c)?;
        if a.sum() + b.sum() != c.sum() {
            return Ok(false);
        }
        let point = self.layout.point(a, b, c);
        Ok(self.inequalities.iter().all(|i| i.holds_at(&point)))
    }

    /// The first inequality violated by `(a, b, c)`, if any.
    pub fn violation(&self, a: &Partition, b: &Partition, c: &Partition) -> Result<Option<&Inequality>, HornError> {
        self.check_lengths(a, b, c)?;
        let point = self.layout.point(a, b, c);
        Ok(self.inequalities.iter().find(|i| !i.holds_at(&point)))
    }

    /// Every feasible `c`, in descending lexicographic order.
    pub fn enumerate_cokernels(&self, a: &Partition, b: &Partition) -> Result<Vec<Partition>, HornError> {
        if a.len() != self.layout.s || b.len() != self.layout.t {
            return Err(HornError::LengthMismatch { got: a.len() + b.len(), n: self.layout.s + self.layout.t });
        }
        let cap = a.first() + b.first();
        let mut out = Vec::new();
        for c in Partition::all_with_sum(a.sum() + b.sum(), self.layout.n, cap) {
            if self.feasible(a, b, &c)? {
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// Builds the strict inequality system for `(s, t)`.
pub fn inequality_system(table: &HornTable, s: usize, t: usize) -> Result<SmithSystem, HornError> {
    if s == 0 || t == 0 {
        return Err(HornError::EmptyBlock { s, t });
    }
    let n = s + t;
    if n > REDUCE_LIMIT {
        return Err(HornError::DeskScale { n, limit: REDUCE_LIMIT });
    }
    let layout = Layout::smith(s, t);
    let mut triples = Vec::new();
    for p in 1..n {
        triples.extend(table.enumerate_t_st(s, t, p, StMode::Strict)?);
    }
    let inequalities = crate::horn::distinct_forms(&layout, triples.iter());
    let trace = layout.render(&layout.trace(), crate::horn::Relation::Ge).replace(">=", "=");
    Ok(SmithSystem { layout, trace, inequalities })
}

/// Feasibility decided over the whole of `T^{s+t}_p`, `p = 1..=s+t`, with
/// `a` and `b` zero-padded to length `s + t`.
pub fn feasible_full(table: &HornTable, a: &Partition, b: &Partition, c: &Partition) -> Result<bool, HornError> {
    let n = a.len() + b.len();
    if c.len() != n {
        return Err(HornError::LengthMismatch { got: c.len(), n });
    }
    if a.sum() + b.sum() != c.sum() {
        return Ok(false);
    }
    let (ap, bp) = (a.padded(n)?, b.padded(n)?);
    let level = table.level(n)?;
    for t in level.iter().flatten() {
        if !crate::horn::eval_inequality(t, &ap, &bp, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A Horn table plus memoized Smith systems.
#[derive(Debug, Default)]
pub struct SmithEngine {
    table: HornTable,
    systems: Mutex<HashMap<(usize, usize), Arc<SmithSystem>>>,
}

impl SmithEngine {
    pub fn new(table: HornTable) -> Self {
        Self { table, systems: Mutex::new(HashMap::new()) }
    }

    pub fn table(&self) -> &HornTable {
        &self.table
    }

    pub fn system(&self, s: usize, t: usize) -> Result<Arc<SmithSystem>, HornError> {
        if let Some(sys) = self.systems.lock().expect("smith memo poisoned").get(&(s, t)) {
            return Ok(sys.clone());
        }
        let sys = Arc::new(inequality_system(&self.table, s, t)?);
        Ok(self.systems.lock().expect("smith memo poisoned").entry((s, t)).or_insert(sys).clone())
    }

    /// Feasibility of `(a, b, c)`; block sizes are read from the lengths.
    pub fn feasible_triple(&self, a: &Partition, b: &Partition, c: &Partition) -> Result<bool, HornError> {
        self.system(a.len(), b.len())?.feasible(a, b, c)
    }

    pub fn enumerate_cokernels(&self, a: &Partition, b: &Partition) -> Result<Vec<Partition>, HornError> {
        self.system(a.len(), b.len())?.enumerate_cokernels(a, b)
    }
}
