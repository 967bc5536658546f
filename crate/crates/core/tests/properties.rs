use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qbgdim_core::affine::{ad_tau, is_spherical, omega_group, parabolic_elements};
use qbgdim_core::{AffineElem, Lattice, NodeSet, RootSystem, WeylElem, Q};

const TYPES: &[&str] = &["A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4", "E6"];

fn systems() -> &'static Vec<Arc<RootSystem>> {
    static CELL: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
    CELL.get_or_init(|| TYPES.iter().map(|t| Arc::new(RootSystem::new(t.parse().unwrap()))).collect())
}

/// A root system together with raw words (letters reduced mod rank on use).
fn system_and_words(k: usize, max_len: usize) -> impl Strategy<Value = (Arc<RootSystem>, Vec<Vec<usize>>)> {
    (0..TYPES.len(), prop::collection::vec(prop::collection::vec(0usize..64, 0..max_len), k))
        .prop_map(|(t, ws)| (systems()[t].clone(), ws))
}

fn finite_word(rs: &RootSystem, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|&i| i % rs.rank() + 1).collect()
}

fn affine_word(rs: &RootSystem, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|&i| i % (rs.rank() + 1)).collect()
}

fn elem(rs: &RootSystem, raw: &[usize]) -> WeylElem {
    WeylElem::from_word(rs, &finite_word(rs, raw)).unwrap()
}

fn coweight(rs: &RootSystem, raw: &[i64]) -> qbgdim_core::CoweightQ {
    let f: Vec<i64> = (0..rs.rank()).map(|i| raw[i % raw.len()]).collect();
    rs.coweight_from_fundamental_int(&f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn length_is_subadditive_with_parity((rs, ws) in system_and_words(2, 30)) {
        let (x, y) = (elem(&rs, &ws[0]), elem(&rs, &ws[1]));
        let xy = x.mul(&y);
        prop_assert!(xy.length() <= x.length() + y.length());
        prop_assert_eq!((xy.length() + x.length() + y.length()) % 2, 0);
        prop_assert_eq!(x.inverse().length(), x.length());
        prop_assert!(x.length() <= finite_word(&rs, &ws[0]).len());
    }

    #[test]
    fn reflection_length_bounded_by_length((rs, ws) in system_and_words(2, 30)) {
        let x = elem(&rs, &ws[0]);
        let lr = x.reflection_length(&rs);
        prop_assert!(lr <= x.length());
        prop_assert!(lr <= rs.rank());
        prop_assert_eq!((x.length() + lr) % 2, 0);
        let y = elem(&rs, &ws[1]);
        let conj = y.mul(&x).mul(&y.inverse());
        prop_assert_eq!(conj.reflection_length(&rs), lr);
    }

    #[test]
    fn reduced_words_round_trip((rs, ws) in system_and_words(1, 40)) {
        let x = elem(&rs, &ws[0]);
        let word = x.reduced_word(&rs);
        prop_assert_eq!(word.len(), x.length());
        prop_assert_eq!(WeylElem::from_word(&rs, &word).unwrap(), x.clone());
        prop_assert_eq!(WeylElem::parse(&rs, &x.to_word_string(&rs)).unwrap(), x);
    }

    #[test]
    fn simple_reflection_permutes_other_positive_roots(t in 0..TYPES.len(), i in 0usize..64) {
        let rs = &systems()[t];
        let i = i % rs.rank() + 1;
        let s = WeylElem::simple(rs, i);
        let mut images: Vec<Vec<i64>> = Vec::new();
        for k in 0..rs.num_positive_roots() {
            let beta = rs.positive_root(k);
            let img = s.act_on(rs, &beta).unwrap();
            if beta == rs.simple_root(i) {
                prop_assert_eq!(img, beta.negate());
            } else {
                prop_assert!(img.is_positive());
                images.push(img.coords().to_vec());
            }
        }
        images.sort();
        let mut others: Vec<Vec<i64>> = (0..rs.num_positive_roots())
            .map(|k| rs.root_coords(k).to_vec())
            .filter(|c| c != rs.simple_root(i).coords())
            .collect();
        others.sort();
        prop_assert_eq!(images, others);
    }

    #[test]
    fn two_rho_pairs_with_coroots_through_height(t in 0..TYPES.len()) {
        let rs = &systems()[t];
        for k in 0..rs.num_positive_roots() {
            let direct = rs.two_rho_pairing(&rs.coroot_as_coweight(k)).unwrap();
            prop_assert_eq!(direct, Q::from_integer(rs.two_rho_on_coroot(k).into()));
            let ht: i64 = rs.coroot_coords(k).iter().sum();
            prop_assert_eq!(rs.two_rho_on_coroot(k), 2 * ht);
        }
    }

    #[test]
    fn dominance_is_a_partial_order(
        t in 0..TYPES.len(),
        a in prop::collection::vec(0i64..4, 1..8),
        b in prop::collection::vec(0i64..4, 1..8),
        c in prop::collection::vec(0i64..4, 1..8),
    ) {
        let rs = &systems()[t];
        let (x, y, z) = (coweight(rs, &a), coweight(rs, &b), coweight(rs, &c));
        let le = |p, q| rs.dominance_le(p, q).unwrap();
        prop_assert!(le(&x, &x));
        if le(&x, &y) && le(&y, &x) {
            prop_assert_eq!(&x, &y);
        }
        if le(&x, &y) && le(&y, &z) {
            prop_assert!(le(&x, &z));
        }
        // adding rho^vee moves up
        let up = x.add(&rs.rho_vee()).unwrap();
        prop_assert!(le(&x, &up));
        prop_assert!(!le(&up, &x));
    }

    #[test]
    fn affine_length_subadditive_with_parity((rs, ws) in system_and_words(2, 16)) {
        let x = AffineElem::from_word(&rs, &affine_word(&rs, &ws[0]));
        let y = AffineElem::from_word(&rs, &affine_word(&rs, &ws[1]));
        let xy = x.mul(&rs, &y);
        let (lx, ly, lxy) = (x.length(&rs), y.length(&rs), xy.length(&rs));
        prop_assert!(lxy <= lx + ly);
        prop_assert_eq!((lxy + lx + ly) % 2, 0);
        prop_assert_eq!(x.inverse(&rs).length(&rs), lx);
        let (word, rest) = x.reduced_word(&rs);
        prop_assert_eq!(word.len(), lx);
        prop_assert_eq!(AffineElem::from_word(&rs, &word).mul(&rs, &rest), x);
    }

    #[test]
    fn normal_form_reconstructs((rs, ws) in system_and_words(1, 20)) {
        let x = AffineElem::from_word(&rs, &affine_word(&rs, &ws[0]));
        let nf = x.normal_form(&rs);
        prop_assert!(nf.lambda.iter().all(|&c| c >= 0));
        prop_assert_eq!(nf.to_elem(&rs), x.clone());
        prop_assert_eq!(x.eta(&rs), nf.v.mul(&nf.u));
    }

    #[test]
    fn omega_conjugation_preserves_levels(t in 0..TYPES.len(), bits in 0u16..512, ws in prop::collection::vec(0usize..64, 0..12)) {
        let rs = &systems()[t];
        let n = rs.rank();
        let j = NodeSet(bits & ((1 << (n + 1)) - 1));
        let x = AffineElem::from_word(rs, &affine_word(rs, &ws));
        for tau in omega_group(rs, Lattice::Adjoint) {
            let image = ad_tau(&tau, j);
            prop_assert_eq!(image.len(), j.len());
            prop_assert_eq!(is_spherical(rs, image), is_spherical(rs, j));
            if is_spherical(rs, j) && j.len() <= 4 {
                let a = parabolic_elements(rs, j).unwrap().len();
                let b = parabolic_elements(rs, image).unwrap().len();
                prop_assert_eq!(a, b);
            }
            let tinv = tau.elem.inverse(rs);
            let moved = tau.elem.mul(rs, &x).mul(rs, &tinv);
            prop_assert_eq!(moved.is_min_in_left_coset(rs, image), x.is_min_in_left_coset(rs, j));
            prop_assert_eq!(moved.length(rs), x.length(rs));
        }
    }
}
