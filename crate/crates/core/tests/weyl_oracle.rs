mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::{Oracle, SMALL_TYPES};
use qbgdim_core::weyl::{conjugacy_orbit, involution_canonical_form, involutions_conjugate, DEFAULT_GROUP_BUDGET};
use qbgdim_core::{NodeSet, RootSystem, WeylElem, WeylGroup};

fn setup(t: &str) -> (Oracle, Arc<RootSystem>, WeylGroup) {
    let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
    let g = WeylGroup::new(rs.clone(), DEFAULT_GROUP_BUDGET).unwrap();
    (Oracle::new(t), rs, g)
}

#[test]
fn orders_roots_and_lengths_match() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "G2", "F4"] {
        let (o, rs, g) = setup(t);
        assert_eq!(g.order(), o.order(), "{t}");
        assert_eq!(rs.num_positive_roots(), o.roots.len(), "{t}");
        let lib_roots: HashSet<Vec<i64>> =
            (0..rs.num_positive_roots()).map(|k| rs.root_coords(k).to_vec()).collect();
        assert_eq!(lib_roots, o.roots.iter().cloned().collect(), "{t}");
        for k in 0..rs.num_positive_roots() {
            let ok = o.roots.iter().position(|r| r == rs.root_coords(k)).unwrap();
            assert_eq!(rs.coroot_coords(k), &o.coroots[ok][..], "{t} coroot {k}");
            assert_eq!(rs.two_rho_on_coroot(k), o.two_rho[ok], "{t} <2rho, coroot {k}>");
        }
        for x in 0..o.order() {
            let w = o.to_lib(&rs, x);
            assert_eq!(w.length(), o.len[x], "{t}");
            assert_eq!(w.reflection_length(&rs), o.reflection_length(x), "{t}");
            assert_eq!(w.reduced_word(&rs).len(), o.len[x]);
        }
        assert_eq!(WeylElem::longest(&rs).length(), o.len[o.longest()]);
    }
}

#[test]
fn bruhat_order_matches_subwords() {
    for t in SMALL_TYPES {
        let (o, rs, _) = setup(t);
        let lib: Vec<WeylElem> = (0..o.order()).map(|x| o.to_lib(&rs, x)).collect();
        for w in 0..o.order() {
            let ideal = o.bruhat_ideal(w);
            for v in 0..o.order() {
                assert_eq!(lib[v].bruhat_le(&rs, &lib[w]).unwrap(), ideal.contains(&v), "{t}");
            }
        }
    }
}

#[test]
fn products_match_and_length_formula_holds() {
    for t in SMALL_TYPES {
        let (o, rs, _) = setup(t);
        let lib: Vec<WeylElem> = (0..o.order()).map(|x| o.to_lib(&rs, x)).collect();
        for x in 0..o.order() {
            let ix = o.inversions(x);
            for y in 0..o.order() {
                let xy = o.mul(x, y);
                assert_eq!(lib[x].mul(&lib[y]), lib[xy], "{t}");
                let inv_y_inv = o.inversions(o.inverse(y));
                let extra = inv_y_inv.difference(&ix).count();
                assert_eq!(o.len[xy] as i64, o.len[x] as i64 - o.len[y] as i64 + 2 * extra as i64, "{t}");
            }
        }
    }
}

#[test]
fn parabolic_reflection_length_is_intrinsic() {
    for t in ["A4", "B3", "C4", "D4", "F4", "G2"] {
        let (o, rs, _) = setup(t);
        let n = rs.rank();
        for bits in 0u16..(1 << n) {
            let j = NodeSet(bits << 1);
            let wj = WeylElem::longest_of(&rs, j);
            assert_eq!(wj, o.to_lib(&rs, o.longest_of(j)), "{t} {j}");
            // rank of w_J - 1 restricted to the span of the roots in J
            let nodes = j.nodes();
            let m = wj.root_matrix(&rs);
            let block: Vec<Vec<i64>> = nodes
                .iter()
                .map(|&r| nodes.iter().map(|&c| m[r - 1][c - 1] - i64::from(r == c)).collect())
                .collect();
            assert_eq!(qbgdim_core::linalg::rank(&block), wj.reflection_length(&rs), "{t} {j}");
        }
    }
}

#[test]
fn minimal_coset_representatives() {
    for t in ["A3", "B3", "G2", "D4"] {
        let (o, rs, g) = setup(t);
        for bits in 0u16..(1 << rs.rank()) {
            let j = NodeSet(bits << 1);
            let reps: HashSet<usize> = g.min_coset_reps(j).into_iter().collect();
            // minimal length in W_J x
            let wj: Vec<usize> = (0..o.order()).filter(|&y| o.words[y].iter().all(|&i| j.contains(i))).collect();
            for x in 0..o.order() {
                let minimal = wj.iter().all(|&y| o.len[o.mul(y, x)] >= o.len[x]);
                assert_eq!(reps.contains(&g.index_of(&o.to_lib(&rs, x))), minimal, "{t} {j}");
            }
        }
    }
}

#[test]
fn canonical_form_agrees_with_orbits() {
    for t in ["A4", "B4", "C3", "D4", "D5", "F4"] {
        let (o, rs, _) = setup(t);
        let n = rs.rank();
        let invs: Vec<usize> = (0..o.order()).filter(|&x| o.mul(x, x) == 0).collect();
        let longest: Vec<WeylElem> = (0u16..(1 << n)).map(|b| WeylElem::longest_of(&rs, NodeSet(b << 1))).collect();
        for &x in invs.iter().step_by(7) {
            let w = o.to_lib(&rs, x);
            let orbit = conjugacy_orbit(&rs, &w);
            let k = involution_canonical_form(&rs, &w).unwrap();
            assert!(orbit.contains(&WeylElem::longest_of(&rs, k).key()), "{t}");
            for v in &longest {
                let fast = involutions_conjugate(&rs, &w, v, 0).unwrap().conjugate;
                assert_eq!(fast, orbit.contains(&v.key()), "{t}");
            }
        }
    }
}
