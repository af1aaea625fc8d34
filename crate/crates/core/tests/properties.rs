use std::sync::Arc;

use proptest::prelude::*;

use scattered_core::linset::{linear_set, perp, SesquilinearForm};
use scattered_core::scattered::is_scattered;
use scattered_core::{pow_u128, DesarguesianSpread, Elem, FieldTower, Gf, Spread, Subspace};

fn gf(p: u32, m: usize) -> Arc<Gf> {
    let prime = Gf::prime(p).unwrap();
    Arc::new(if m == 1 { prime } else { Gf::extension_default(&prime, m).unwrap() })
}

fn rows(q: u32, n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<Elem>>> {
    prop::collection::vec(prop::collection::vec(0..q, n), 0..=max_rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_ignores_order_and_repeats(mut vs in rows(4, 5, 6), seed in any::<u64>()) {
        let f = gf(2, 2);
        let a = Subspace::span(f.clone(), 5, &vs).unwrap();
        let shift = if vs.is_empty() { 0 } else { (seed as usize) % vs.len() };
        vs.rotate_left(shift);
        vs.reverse();
        let mut doubled = vs.clone();
        doubled.extend(vs.iter().cloned());
        prop_assert_eq!(&Subspace::span(f.clone(), 5, &doubled).unwrap(), &a);
        let again = Subspace::span(f.clone(), 5, a.basis()).unwrap();
        prop_assert_eq!(again.basis(), a.basis());
    }

    #[test]
    fn dimension_formula_and_modular_law(a in rows(3, 4, 3), b in rows(3, 4, 3), c in rows(3, 4, 2)) {
        let f = gf(3, 1);
        let a = Subspace::span(f.clone(), 4, &a).unwrap();
        let b = Subspace::span(f.clone(), 4, &b).unwrap();
        let c = Subspace::span(f.clone(), 4, &c).unwrap();
        prop_assert_eq!(a.sum(&b).unwrap().dim() + a.intersect(&b).unwrap().dim(), a.dim() + b.dim());
        // modular law with a ⊆ a + c
        let x = a.sum(&c).unwrap();
        let lhs = x.intersect(&a.sum(&b).unwrap()).unwrap();
        let rhs = a.sum(&x.intersect(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scattered_is_hereditary(vs in rows(2, 6, 4)) {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 2, None).unwrap(), 3).unwrap();
        let u = Subspace::span(d.field().clone(), 6, &vs).unwrap();
        let scattered = is_scattered(&u, &d).unwrap();
        for k in 0..u.dim() {
            let sub = u.truncated(k);
            if scattered {
                prop_assert!(is_scattered(&sub, &d).unwrap());
            }
        }
    }

    #[test]
    fn large_subspaces_never_scattered(vs in rows(2, 6, 8)) {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 3, None).unwrap(), 2).unwrap();
        let u = Subspace::span(d.field().clone(), 6, &vs).unwrap();
        if u.dim() > 3 {
            prop_assert!(!is_scattered(&u, &d).unwrap());
        }
    }

    #[test]
    fn field_reduction_is_linear(a in prop::collection::vec(0u32..9, 3), b in prop::collection::vec(0u32..9, 3), lambda in 0u32..3) {
        let tower = FieldTower::new(3, 1, 2, None).unwrap();
        let d = DesarguesianSpread::new(tower.clone(), 3).unwrap();
        let top = tower.top();
        let base = tower.base();
        let phi = |v: &[Elem]| d.reduction().phi(v).unwrap();
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&x, &y)| top.add(x, y)).collect();
        let scaled: Vec<Elem> = a.iter().map(|&x| top.mul(lambda, x)).collect();
        let lhs: Vec<Elem> = phi(&a).iter().zip(phi(&b)).map(|(&x, y)| base.add(x, y)).collect();
        prop_assert_eq!(phi(&sum), lhs);
        prop_assert_eq!(phi(&scaled), phi(&a).iter().map(|&x| base.mul(lambda, x)).collect::<Vec<_>>());
        prop_assert_eq!(d.reduction().phi_inv(&phi(&a)).unwrap(), a);
    }

    #[test]
    fn weight_identity_and_duality(vs in rows(2, 8, 8)) {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 2, None).unwrap(), 4).unwrap();
        let u = Subspace::span(d.field().clone(), 8, &vs).unwrap();
        let l = linear_set(&u, &d).unwrap();
        let total: u128 = l.weighted_points().iter().map(|&(_, w)| pow_u128(2, w as u32) - 1).sum();
        prop_assert_eq!(total, u.vector_count() - 1);
        let form = SesquilinearForm::standard(4);
        let up = perp(&u, &form, &d).unwrap();
        prop_assert_eq!(up.dim(), 8 - u.dim());
        prop_assert_eq!(perp(&up, &form, &d).unwrap(), u);
    }
}
