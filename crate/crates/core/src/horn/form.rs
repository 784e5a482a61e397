use std::fmt;

use serde::{Deserialize, Serialize};

use super::HornTriple;
use crate::partition::Partition;

/// Direction of an inequality between the `a, b` side and the `c` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn reversed(self) -> Self {
        match self {
            Relation::Ge => Relation::Le,
            Relation::Le => Relation::Ge,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }
}

/// Variable layout `a_1..a_s, b_1..b_t, c_1..c_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    pub s: usize,
    pub t: usize,
    pub n: usize,
}

impl Layout {
    /// Three tuples of the same length `n`, as for Hermitian eigenvalues.
    pub fn full(n: usize) -> Self {
        Self { s: n, t: n, n }
    }

    /// Block sizes `s`, `t` with `c` of length `s + t`.
    pub fn smith(s: usize, t: usize) -> Self {
        Self { s, t, n: s + t }
    }

    pub fn dim(&self) -> usize {
        self.s + self.t + self.n
    }

    pub fn a(&self, i: usize) -> usize {
        i - 1
    }

    pub fn b(&self, j: usize) -> usize {
        self.s + j - 1
    }

    pub fn c(&self, k: usize) -> usize {
        self.s + self.t + k - 1
    }

    pub fn name(&self, var: usize) -> String {
        if var < self.s {
            format!("a{}", var + 1)
        } else if var < self.s + self.t {
            format!("b{}", var - self.s + 1)
        } else {
            format!("c{}", var - self.s - self.t + 1)
        }
    }

    /// Concatenates `a`, `b`, `c` (zero-padded) into one point of the layout.
    pub fn point(&self, a: &Partition, b: &Partition, c: &Partition) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.dim());
        v.extend((0..self.s).map(|i| a.part(i) as i64));
        v.extend((0..self.t).map(|i| b.part(i) as i64));
        v.extend((0..self.n).map(|i| c.part(i) as i64));
        v
    }

    /// `Σa + Σb - Σc`.
    pub fn trace(&self) -> LinearForm {
        let mut f = LinearForm::zero(self.dim());
        (1..=self.s).for_each(|i| f.coeffs[self.a(i)] = 1);
        (1..=self.t).for_each(|j| f.coeffs[self.b(j)] = 1);
        (1..=self.n).for_each(|k| f.coeffs[self.c(k)] = -1);
        f
    }

    /// `x_i - x_{i+1} >= 0` for each tuple.
    pub fn orderings(&self) -> Vec<LinearForm> {
        let mut out = Vec::new();
        for (len, at) in [(self.s, 0), (self.t, self.s), (self.n, self.s + self.t)] {
            for i in 0..len.saturating_sub(1) {
                let mut f = LinearForm::zero(self.dim());
                f.coeffs[at + i] = 1;
                f.coeffs[at + i + 1] = -1;
                out.push(f);
            }
        }
        out
    }

    /// Last part of each tuple is nonnegative.
    pub fn nonnegativity(&self) -> Vec<LinearForm> {
        [self.s, self.s + self.t, self.dim()]
            .into_iter()
            .map(|end| {
                let mut f = LinearForm::zero(self.dim());
                f.coeffs[end - 1] = 1;
                f
            })
            .collect()
    }

    /// `Σ_{I∩M_s} a + Σ_{J∩M_t} b - Σ_K c`; indices past a block are zero parts.
    pub fn triple_form(&self, t: &HornTriple) -> LinearForm {
        let mut f = LinearForm::zero(self.dim());
        t.i.elems().iter().filter(|&&i| i <= self.s).for_each(|&i| f.coeffs[self.a(i)] += 1);
        t.j.elems().iter().filter(|&&j| j <= self.t).for_each(|&j| f.coeffs[self.b(j)] += 1);
        t.k.elems().iter().for_each(|&k| f.coeffs[self.c(k)] -= 1);
        f
    }

    /// Renders `form >= 0` (or `form <= 0`) with `a, b` terms left and `c` terms right.
    pub fn render(&self, form: &LinearForm, relation: Relation) -> String {
        let side = |want_positive: bool| {
            let terms: Vec<String> = form
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| if want_positive { c > 0 } else { c < 0 })
                .map(|(v, &c)| match c.abs() {
                    1 => self.name(v),
                    m => format!("{m}{}", self.name(v)),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        format!("{} {} {}", side(true), relation.symbol(), side(false))
    }
}

/// Integer linear form on the variables of a [`Layout`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![0; dim] }
    }

    pub fn eval(&self, point: &[i64]) -> i64 {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    pub fn terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

/// A Horn-derived inequality `form >= 0`, with the shorter of its two
/// equivalent (modulo trace) renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub triple: HornTriple,
    pub form: LinearForm,
    /// Whether `text` shows the complementary `<=` form.
    pub complemented: bool,
    pub text: String,
}

impl Inequality {
    pub fn new(layout: &Layout, triple: &HornTriple) -> Self {
        let form = layout.triple_form(triple);
        let comp = layout.trace().sub(&form);
        let has_lhs = comp.coeffs.iter().any(|&c| c > 0);
        let complemented = has_lhs && comp.terms() < form.terms();
        let text = if complemented { layout.render(&comp, Relation::Le) } else { layout.render(&form, Relation::Ge) };
        Self { triple: triple.clone(), form, complemented, text }
    }

    pub fn holds_at(&self, point: &[i64]) -> bool {
        self.form.eval(point) >= 0
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_forms_and_rendering() {
        let l = Layout::smith(4, 2);
        let t = HornTriple::from_vecs(6, vec![1, 5], vec![1, 3], vec![1, 6]).unwrap();
        let ineq = Inequality::new(&l, &t);
        assert_eq!(ineq.text, "a1 + b1 >= c1 + c6");
        let t = HornTriple::from_vecs(6, vec![1, 3, 4, 5, 6], vec![1, 2, 3, 4, 5], vec![1, 3, 4, 5, 6]).unwrap();
        let ineq = Inequality::new(&l, &t);
        assert!(ineq.complemented);
        assert_eq!(ineq.text, "a2 <= c2");
    }

    #[test]
    fn domain_constraints() {
        let l = Layout::smith(1, 1);
        assert_eq!(l.orderings().len(), 1);
        assert_eq!(l.nonnegativity().len(), 3);
        assert_eq!(l.render(&l.trace(), Relation::Ge), "a1 + b1 >= c1 + c2");
        let a = Partition::new(vec![2]).unwrap();
        let b = Partition::new(vec![1]).unwrap();
        let c = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(l.trace().eval(&l.point(&a, &b, &c)), 0);
    }
}
