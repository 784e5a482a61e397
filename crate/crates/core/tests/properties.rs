use proptest::prelude::*;

use weilgroup::classify::classify_all;
use weilgroup::horn::HornTable;
use weilgroup::oracle::{lr_coefficient, matrix_cokernel_oracle, Strategy as Sweep};
use weilgroup::poly::valuation;
use weilgroup::polygon::{hodge_polygon, newton_polygon, np_dominates_hp};
use weilgroup::smith::{feasible_full, SmithEngine};
use weilgroup::weil::{root_valuations, validate};
use weilgroup::{IntPoly, Partition, Rational};

fn partition(len: usize, max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max, len).prop_map(Partition::from_unsorted)
}

fn block_pair(max_len: usize, max: u32) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_len, 1..=max_len).prop_flat_map(move |(s, t)| (partition(s, max), partition(t, max)))
}

/// Monic polynomial of degree 1..=3 with nonzero constant term.
fn monic() -> impl Strategy<Value = IntPoly> {
    (1usize..=3).prop_flat_map(|d| {
        (prop::collection::vec(-30i64..=30, d - 1), (1i64..=40, any::<bool>())).prop_map(|(mid, (c0, neg))| {
            let mut desc = vec![1];
            desc.extend(mid);
            desc.push(if neg { -c0 } else { c0 });
            IntPoly::from_descending(&desc)
        })
    })
}

fn weil_quadratic(q: u64) -> impl Strategy<Value = IntPoly> {
    let bound = (2.0 * (q as f64).sqrt()).ceil() as i64;
    (-bound..=bound).prop_filter("|a| < 2 sqrt q", move |a| a * a < 4 * q as i64).prop_map(move |a| IntPoly::from_descending(&[1, a, q as i64]))
}

fn sextic() -> impl Strategy<Value = (IntPoly, u64)> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 9])
        .prop_flat_map(|q| (weil_quadratic(q), weil_quadratic(q), weil_quadratic(q)).prop_map(move |(x, y, z)| (x.mul(&y).unwrap().mul(&z).unwrap(), q)))
}

fn sorted_desc(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_slopes_of_a_product_merge(f in monic(), g in monic(), l in prop::sample::select(vec![2u64, 3, 5])) {
        let fg = f.mul(&g).unwrap();
        let mut merged = root_valuations(&f, l).unwrap().vals().to_vec();
        merged.extend_from_slice(root_valuations(&g, l).unwrap().vals());
        prop_assert_eq!(root_valuations(&fg, l).unwrap().vals().to_vec(), sorted_desc(merged));
    }

    #[test]
    fn newton_total_is_constant_valuation(f in monic(), l in prop::sample::select(vec![2u64, 3, 5])) {
        let np = newton_polygon::<Rational>(&f, l).unwrap();
        let v = valuation(f.coeff(0), l).unwrap();
        prop_assert_eq!(np.total(), Rational::from_integer(v as i64));
    }

    #[test]
    fn hodge_values_are_smallest_partial_sums(c in (1usize..=6).prop_flat_map(|n| partition(n, 5))) {
        let hp = hodge_polygon::<Rational>(&c, c.len()).unwrap();
        let mut asc = c.parts().to_vec();
        asc.sort();
        for k in 0..=c.len() {
            let want: u32 = asc[..k].iter().sum();
            prop_assert_eq!(hp.value_at(k as u32), Rational::from_integer(want as i64));
        }
    }

    #[test]
    fn lr_is_symmetric((mu, nu) in block_pair(3, 3)) {
        let total = mu.sum() + nu.sum();
        let len = mu.len() + nu.len();
        for lambda in Partition::all_with_sum(total, len, total) {
            prop_assert_eq!(lr_coefficient(&mu, &nu, &lambda), lr_coefficient(&nu, &mu, &lambda));
        }
    }

    #[test]
    fn feasibility_is_symmetric_in_blocks((a, b) in block_pair(3, 4)) {
        let engine = SmithEngine::new(HornTable::new());
        let total = a.sum() + b.sum();
        for c in Partition::all_with_sum(total, a.len() + b.len(), total) {
            prop_assert_eq!(engine.feasible_triple(&a, &b, &c).unwrap(), engine.feasible_triple(&b, &a, &c).unwrap());
        }
    }

    #[test]
    fn direct_sum_is_always_a_cokernel((a, b) in block_pair(3, 4)) {
        let engine = SmithEngine::new(HornTable::new());
        let cs = engine.enumerate_cokernels(&a, &b).unwrap();
        prop_assert!(cs.contains(&a.merge(&b)));
        for c in &cs {
            prop_assert!(lr_coefficient(&a, &b, c) > 0, "c = {} has LR 0", c);
        }
    }

    #[test]
    fn strict_system_matches_full_horn_list((a, b) in block_pair(3, 3).prop_filter("s + t <= 5", |(a, b)| a.len() + b.len() <= 5)) {
        let table = HornTable::new();
        let engine = SmithEngine::new(HornTable::new());
        let total = a.sum() + b.sum();
        for c in Partition::all_with_sum(total, a.len() + b.len(), total) {
            prop_assert_eq!(engine.feasible_triple(&a, &b, &c).unwrap(), feasible_full(&table, &a, &b, &c).unwrap(), "c = {}", c);
        }
    }

    #[test]
    fn reduced_sweep_matches_full_sweep((a, b) in block_pair(2, 1).prop_filter("small sweep", |(a, b)| a.len() * b.len() <= 2), l in prop::sample::select(vec![2u64, 3])) {
        let prec = a.sum() + b.sum() + 1;
        let full = matrix_cokernel_oracle(&a, &b, l, prec, u64::MAX, 0).unwrap();
        let cells: u32 = a.parts().iter().flat_map(|x| b.parts().iter().map(move |y| (*x).min(*y))).sum();
        let reduced = matrix_cokernel_oracle(&a, &b, l, prec, l.pow(cells), 0).unwrap();
        prop_assert_eq!(reduced.strategy, Sweep::ReducedSweep);
        prop_assert_eq!(full.strategy, Sweep::FullSweep);
        prop_assert_eq!(full.cokernels, reduced.cokernels);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factors_multiply_back((f, q) in sextic()) {
        prop_assume!(f.eval(1).unwrap() != 0);
        let w = validate(f.clone(), q).unwrap();
        let back = w.factors().iter().fold(IntPoly::monomial(0), |acc, x| acc.mul(&x.poly.pow(x.mult).unwrap()).unwrap());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn classified_groups_sit_under_newton((f, q) in sextic()) {
        prop_assume!(f.eval(1).unwrap() != 0);
        let w = validate(f.clone(), q).unwrap();
        let engine = SmithEngine::new(HornTable::new());
        let Ok(cls) = classify_all(&engine, &w) else { return Ok(()) };
        let shifted = f.one_minus_t().unwrap();
        for (&l, groups) in &cls.groups {
            prop_assert!(!groups.is_empty());
            let np = newton_polygon::<Rational>(&shifted, l).unwrap();
            let v = valuation(cls.order, l).unwrap();
            for c in groups {
                prop_assert_eq!(c.sum(), v);
                let hp = hodge_polygon::<Rational>(c, 6).unwrap();
                prop_assert!(np_dominates_hp(&np, &hp).unwrap(), "l = {}, c = {}", l, c);
            }
        }
    }
}
