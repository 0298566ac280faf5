use hermcm::arith::prime_divisors;
use hermcm::fields::local::hilbert_symbol_int;
use hermcm::fields::{ImagQuadField, Place};
use hermcm::heights::{consistency_residual, hfalt_e_phi_from, hfalt_k_from, omega_degree_from};
use hermcm::lattices::{DiscriminantModule, ThetaTable};
use hermcm::weilrep::{hasse_product, LocalData, WeilRepData};
use hermcm::Rat;
use proptest::prelude::*;

const DS: [u64; 9] = [3, 7, 11, 15, 19, 23, 35, 39, 43];

fn disc() -> impl Strategy<Value = u64> {
    prop::sample::select(DS.to_vec())
}

fn nonzero(r: i128) -> impl Strategy<Value = i128> {
    (-r..=r).prop_filter("nonzero", |x| *x != 0)
}

fn places(a: i128, b: i128) -> Vec<Place> {
    let mut ps: Vec<u64> = prime_divisors((2 * a * b).unsigned_abs() as u64);
    ps.sort_unstable();
    ps.dedup();
    std::iter::once(Place::Infinity).chain(ps.into_iter().map(Place::Prime)).collect()
}

/// Positive definite even binary form [[2a, b], [b, 2c]].
fn even_binary() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1i128..6, -6i128..=6, 1i128..6)
        .prop_filter("positive definite", |(a, b, c)| 4 * a * c - b * b > 0)
        .prop_map(|(a, b, c)| vec![vec![2 * a, b], vec![b, 2 * c]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chi_periodic_and_multiplicative(d in disc(), a in -500i128..500, b in -500i128..500) {
        let k = ImagQuadField::new(d).unwrap();
        prop_assert_eq!(k.chi(a + d as i128), k.chi(a));
        prop_assert_eq!(k.chi(a * b), k.chi(a) * k.chi(b));
        prop_assert_eq!(k.chi(-1), -1);
    }

    #[test]
    fn hilbert_symbol_bimultiplicative(a in nonzero(60), a2 in nonzero(60), b in nonzero(60), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let v = Place::Prime(p);
        prop_assert_eq!(hilbert_symbol_int(a * a2, b, v), hilbert_symbol_int(a, b, v) * hilbert_symbol_int(a2, b, v));
        prop_assert_eq!(hilbert_symbol_int(a, b, v), hilbert_symbol_int(b, a, v));
        prop_assert_eq!(hilbert_symbol_int(a, -a, v), 1);
    }

    #[test]
    fn hilbert_reciprocity(a in nonzero(200), b in nonzero(200)) {
        let prod: i32 = places(a, b).into_iter().map(|v| hilbert_symbol_int(a, b, v)).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hermitian_invariants_multiply_to_one(d in disc(), dim in 1u32..6, num in nonzero(400), den in 1i128..50) {
        let ld = LocalData { d, dim, det: Rat::new(num, den) };
        prop_assert_eq!(hasse_product(&ld), 1);
    }

    #[test]
    fn heights_affine(n in 1usize..6, ld_e in -5.0f64..5.0, ld_k in -5.0f64..5.0, t in -3.0f64..3.0) {
        let h0 = hfalt_e_phi_from(n, ld_e, ld_k);
        let h1 = hfalt_e_phi_from(n, ld_e + t, ld_k);
        prop_assert!((h1 - h0 + 2.0 / n as f64 * t).abs() < 1e-12);
        let w0 = omega_degree_from(n, 1.0, ld_e);
        let w1 = omega_degree_from(n, 1.0, ld_e + t);
        prop_assert!((w1 - w0 + 2.0 / n as f64 * t).abs() < 1e-12);
    }

    #[test]
    fn height_one_collapses(ld in -5.0f64..5.0) {
        prop_assert!((hfalt_e_phi_from(1, ld, ld) - hfalt_k_from(ld)).abs() < 1e-12);
    }

    #[test]
    fn consistency_free_of_ld_k(n in 1usize..6, deg in 0.1f64..4.0, ld_e in -5.0f64..5.0, ld_k in -5.0f64..5.0) {
        let r = consistency_residual(n, deg, ld_e, ld_k);
        prop_assert!(r.abs() < 1e-10, "residual {}", r);
    }

    #[test]
    fn weil_relations(g in even_binary()) {
        let disc = DiscriminantModule::new(&g).unwrap();
        let rep = WeilRepData::new(&disc, (2, 0), false);
        prop_assert!(rep.s4_residual() < 1e-10);
        prop_assert!(rep.braid_residual() < 1e-10);
        prop_assert!(rep.unitarity_residual() < 1e-10);
        prop_assert!(rep.milgram_residual() < 1e-10);
    }

    #[test]
    fn theta_matches_box_count(g in even_binary()) {
        let prec = Rat::from_integer(3);
        let a = ThetaTable::from_gram(&g, prec).unwrap();
        let b = ThetaTable::naive(&g, prec).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn discriminant_form_symmetric(g in even_binary()) {
        let disc = DiscriminantModule::new(&g).unwrap();
        for x in 0..disc.size() {
            prop_assert_eq!(disc.q(disc.neg(x)), disc.q(x));
            for y in 0..disc.size() {
                prop_assert_eq!(disc.pair(x, y), disc.pair(y, x));
            }
        }
    }
}
