use std::collections::BTreeSet;

use lehmer_verify::cubic::{beta_from_alpha, collinear, lehmer_roots, match_point_sets, psi, AffineAction};
use lehmer_verify::gf2m::{Field, FieldElement};
use lehmer_verify::poly::{resultant_uni, UniPoly};
use lehmer_verify::report::Report;
use proptest::prelude::*;
use serde_json::json;

fn gf32() -> Field {
    Field::gf32()
}

fn elem() -> impl Strategy<Value = FieldElement> {
    (0u64..32).prop_map(|b| gf32().elem(b))
}

fn unit() -> impl Strategy<Value = FieldElement> {
    (1u64..32).prop_map(|b| gf32().elem(b))
}

fn action() -> impl Strategy<Value = AffineAction> {
    (unit(), elem()).prop_map(|(a, b)| AffineAction::new(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(0u64..32, 0..=max_deg + 1).prop_map(|c| UniPoly::new(gf32(), c))
}

fn report() -> impl Strategy<Value = Report> {
    let leaf = (
        "[a-z ]{1,12}",
        any::<bool>(),
        prop_oneof![
            Just(json!(null)),
            "[a-z0-9^]{0,8}".prop_map(|s| json!(s)),
            any::<i32>().prop_map(|n| json!(n)),
            ("[0-9]{1,6}", "[1-9][0-9]{0,5}").prop_map(|(p, q)| json!([format!("{p}/{q}"), format!("{q}/{p}1")])),
        ],
    )
        .prop_map(|(n, pass, w)| Report::leaf(n, pass, w));
    leaf.prop_recursive(3, 24, 4, |inner| {
        ("[a-z]{1,8}", prop::collection::vec(inner, 1..4)).prop_map(|(n, c)| Report::node(n, c))
    })
}

fn det3(rows: [[FieldElement; 3]; 3]) -> FieldElement {
    let [a, b, c] = rows;
    &(&a[0] * &(&(&b[1] * &c[2]) + &(&b[2] * &c[1])))
        + &(&(&a[1] * &(&(&b[0] * &c[2]) + &(&b[2] * &c[0]))) + &(&a[2] * &(&(&b[0] * &c[1]) + &(&b[1] * &c[0]))))
}

proptest! {
    #[test]
    fn field_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &a, gf32().zero());
        prop_assert_eq!(a.frobenius(5), a.clone());
        prop_assert_eq!(a.sqrt().square(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn affine_action_group_laws(f in action(), g in action(), t in elem()) {
        prop_assert_eq!(f.compose(&g).apply(&t), f.apply(&g.apply(&t)));
        prop_assert_eq!(f.inverse().apply(&f.apply(&t)), t.clone());
        if let Some(p) = f.fixed_point() {
            prop_assert_eq!(f.apply(&p), p);
        }
    }

    #[test]
    fn matching_recovers_affine_images(
        f in action(),
        bits in prop::collection::btree_set(0u64..32, 2..12),
        rot in 0usize..12,
    ) {
        let a: Vec<FieldElement> = bits.iter().map(|&b| gf32().elem(b)).collect();
        let mut b: Vec<FieldElement> = a.iter().map(|t| f.apply(t)).collect();
        let k = rot % b.len();
        b.rotate_left(k);
        let m = match_point_sets(&a, &b).expect("an affine image always matches");
        let got: BTreeSet<u64> = a.iter().map(|t| m.apply(t).bits()).collect();
        let want: BTreeSet<u64> = b.iter().map(FieldElement::bits).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn collinearity_matches_determinant(t1 in elem(), t2 in elem(), t3 in elem()) {
        prop_assume!(t1 != t2 && t2 != t3 && t1 != t3);
        let row = |t: &FieldElement| {
            let c = psi(t).coords();
            [c[0].clone(), c[1].clone(), c[2].clone()]
        };
        let d = det3([row(&t1), row(&t2), row(&t3)]);
        prop_assert_eq!(collinear(&t1, &t2, &t3), d.is_zero());
    }

    #[test]
    fn beta_commutes_with_frobenius(i in 0usize..10, k in 1u32..5) {
        let a = lehmer_roots(&gf32())[i].clone();
        let b = beta_from_alpha(&a).unwrap();
        prop_assert_eq!(beta_from_alpha(&a.frobenius(k)).unwrap(), b.frobenius(k));
    }

    #[test]
    fn division_with_remainder(p in poly(8), d in poly(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(p in poly(5), q in poly(5)) {
        prop_assume!(p.degree().unwrap_or(0) > 0 && q.degree().unwrap_or(0) > 0);
        let res = resultant_uni(&p, &q);
        prop_assert!(res.is_constant());
        prop_assert_eq!(res.is_zero(), !p.gcd(&q).is_constant());
    }

    #[test]
    fn report_json_round_trip(r in report()) {
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        let head = "{\n  \"schema\": 1,";
        prop_assert!(text.starts_with(head));
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.passed(), r.passed());
    }
}
