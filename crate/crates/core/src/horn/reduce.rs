use serde::Serialize;

use super::{HornTable, HornTriple, Inequality, Layout, LinearForm, StMode};
use crate::error::HornError;
use crate::lp::form_implied;

/// Largest `s + t` accepted by [`reduce_system`].
pub const REDUCE_LIMIT: usize = 6;

/// Outcome of redundancy elimination.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reduction {
    pub layout: Layout,
    /// Surviving Horn inequalities, canonical order. Domain constraints and
    /// the trace equality are implicit.
    pub kept: Vec<Inequality>,
    /// Inequalities dropped as consequences of the rest, in removal order.
    pub removed: Vec<Inequality>,
}

/// Every member of `candidates` implied by the domain constraints together
/// with all *other* candidates.
pub fn redundant_members(layout: &Layout, candidates: &[Inequality], domain: &[LinearForm]) -> Vec<Inequality> {
    let eqs = [layout.trace()];
    (0..candidates.len())
        .filter(|&idx| {
            let mut others: Vec<LinearForm> = domain.to_vec();
            others.extend(candidates.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, c)| c.form.clone()));
            form_implied(&candidates[idx].form, &others, &eqs).is_some()
        })
        .map(|idx| candidates[idx].clone())
        .collect()
}

/// Greedy elimination: visits `candidates` in order and drops each one that
/// follows from the domain constraints and the candidates still kept.
fn greedy(layout: Layout, candidates: Vec<Inequality>, domain: &[LinearForm]) -> Reduction {
    let eqs = [layout.trace()];
    let mut alive = vec![true; candidates.len()];
    let mut removed = Vec::new();
    for idx in 0..candidates.len() {
        let mut others: Vec<LinearForm> = domain.to_vec();
        others.extend(candidates.iter().enumerate().filter(|(j, _)| *j != idx && alive[*j]).map(|(_, c)| c.form.clone()));
        if form_implied(&candidates[idx].form, &others, &eqs).is_some() {
            alive[idx] = false;
            removed.push(candidates[idx].clone());
        }
    }
    let mut kept: Vec<Inequality> = candidates.into_iter().zip(alive).filter(|(_, a)| *a).map(|(c, _)| c).collect();
    kept.sort_by(|x, y| x.triple.cmp(&y.triple));
    Reduction { layout, kept, removed }
}

/// Horn inequalities `T^n_p`, `1 <= p < n`, on three length-`n` tuples.
pub fn full_list(table: &HornTable, n: usize) -> Result<Vec<Inequality>, HornError> {
    let layout = Layout::full(n);
    let level = table.level(n)?;
    Ok(level[..n - 1].iter().flatten().map(|t| Inequality::new(&layout, t)).collect())
}

/// Redundancy analysis of the Hermitian Horn system for size `n`: the
/// domain is the three orderings plus the trace equality, with no sign
/// constraints.
pub fn reduce_full(table: &HornTable, n: usize) -> Result<Reduction, HornError> {
    let layout = Layout::full(n);
    let candidates = full_list(table, n)?;
    Ok(greedy(layout, candidates, &layout.orderings()))
}

/// Minimal inequality list for Smith invariants of `s x s` and `t x t` blocks.
///
/// Candidates are the distinct forms of the tilde triples `p < s + t`
/// (the `p = s + t` triple is the trace equality). Tilde-only triples are
/// tried for removal before strict ones, so that among equivalent systems
/// the strict members survive. The domain is orderings plus nonnegativity.
pub fn reduce_system(table: &HornTable, s: usize, t: usize) -> Result<Reduction, HornError> {
    if s == 0 || t == 0 {
        return Err(HornError::EmptyBlock { s, t });
    }
    let n = s + t;
    if n > REDUCE_LIMIT {
        return Err(HornError::DeskScale { n, limit: REDUCE_LIMIT });
    }
    let layout = Layout::smith(s, t);
    let mut tilde_only = Vec::new();
    let mut strict = Vec::new();
    for p in 1..n {
        for triple in table.enumerate_t_st(s, t, p, StMode::Tilde)? {
            if StMode::Strict.admits(&triple, s, t) {
                strict.push(triple);
            } else {
                tilde_only.push(triple);
            }
        }
    }
    let candidates = distinct_forms(&layout, tilde_only.iter().chain(&strict));
    let mut domain = layout.orderings();
    domain.extend(layout.nonnegativity());
    Ok(greedy(layout, candidates, &domain))
}

/// Keeps the first triple for each linear form.
pub(crate) fn distinct_forms<'a>(layout: &Layout, triples: impl Iterator<Item = &'a HornTriple>) -> Vec<Inequality> {
    let mut seen = std::collections::HashSet::new();
    triples.map(|t| Inequality::new(layout, t)).filter(|ineq| seen.insert(ineq.form.clone())).collect()
}
