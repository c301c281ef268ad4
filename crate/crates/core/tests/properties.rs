use proptest::prelude::*;

use fueter::clifford::{Blade, CliffordElement, Paravector};
use fueter::extension::{appell_q, gck_polynomial, SliceExtension};
use fueter::gauss::GaussPoly;
use fueter::laurent::LaurentPoly;
use fueter::poly::OperatorTag;
use fueter::radon::dual_radon_polynomial;
use fueter::scalar::{rat, Rational, C64};

fn element(m: usize) -> impl Strategy<Value = CliffordElement<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 1usize << m).prop_map(move |cs| {
        let mut e = CliffordElement::zero(m);
        for (b, (p, q)) in cs.into_iter().enumerate() {
            e.add_term(Blade(b as u32), rat(p, q));
        }
        e
    })
}

fn laurent_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
    prop::collection::vec((0i32..=6, -4i64..=4), 1..4)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(n, c)| (n, rat(c, 1)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative_and_conjugation_reverses(a in element(3), b in element(3), c in element(3)) {
        let ab = &a * &b;
        prop_assert_eq!(&ab * &c, &a * &(&b * &c));
        prop_assert_eq!(ab.clifford_conjugate(), &b.clifford_conjugate() * &a.clifford_conjugate());
        prop_assert_eq!(ab.reversion(), &b.reversion() * &a.reversion());
    }

    #[test]
    fn paravector_times_conjugate_is_norm(x0 in -5i64..5, xs in prop::collection::vec(-5i64..5, 4)) {
        let x = Paravector::new(rat(x0, 1), xs.iter().map(|v| rat(*v, 2)).collect());
        let p = &x.to_element() * &x.conj().to_element();
        prop_assert_eq!(p, CliffordElement::scalar(4, x.norm_sq()));
    }

    #[test]
    fn gck_is_monogenic_and_radon_maps_slice_to_gck(f in laurent_poly(), m in 1usize..=4) {
        let g = gck_polynomial(&f, m).unwrap().to_polynomial().unwrap();
        prop_assert!(g.apply_operator(OperatorTag::CauchyRiemann).is_zero());
        let s = SliceExtension::new(f.clone(), m).to_polynomial().unwrap();
        prop_assert_eq!(dual_radon_polynomial(&s), g);
    }

    #[test]
    fn appell_sequence_restricts_to_powers(k in 0u32..=7, m in 1usize..=4) {
        let q = appell_q(m, k);
        let g = gck_polynomial(&LaurentPoly::<Rational>::power(k as i32), m).unwrap().to_polynomial().unwrap();
        prop_assert_eq!(q, g);
    }

    #[test]
    fn heat_flow_matches_quadrature(
        a in 0.3f64..1.5,
        br in -0.5f64..0.5,
        bi in -0.5f64..0.5,
        cs in prop::collection::vec(-1.0f64..1.0, 1..6),
        x in -2.0f64..2.0,
    ) {
        let f = GaussPoly::new(a, C64::new(br, bi), cs.into_iter().map(|c| C64::new(c, 0.0)).collect()).unwrap();
        let h = f.heat().evaluate(C64::new(x, 0.0));
        let q = f.heat_by_quadrature(x, 100).unwrap();
        prop_assert!((h - q).norm() < 1e-10, "{h} vs {q}");
    }
}
