use presheaf_topos::action::{frame_and_subact_checks, MonoidOnM};
use presheaf_topos::admissible::{enumerate_admissible_classes, j_sub, Mu};
use presheaf_topos::fixtures;
use presheaf_topos::ideals::enumerate_ideals;
use presheaf_topos::omega::{check_weak_topology, closure_from_j, double_negation, is_sieve, Omega};
use presheaf_topos::presheaf::Presheaf;
use presheaf_topos::{Bits, Caps, FinCat};
use proptest::prelude::*;

/// Posets on up to four elements; edges only go up the index order.
fn poset() -> impl Strategy<Value = FinCat> {
    (1usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2))).prop_map(
        |(n, edges)| {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut le = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] {
                        le.push((names[i].clone(), names[j].clone()));
                    }
                    k += 1;
                }
            }
            FinCat::new(&fixtures::poset(&names, &le).unwrap()).unwrap()
        },
    )
}

fn caps() -> Caps {
    Caps::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sieves_are_subpresheaves_of_representables(cat in poset()) {
        let om = Omega::new(&cat, &caps()).unwrap();
        for c in cat.objects() {
            let subs = Presheaf::yoneda(&cat, c).enumerate_subpresheaves(&cat, &caps()).unwrap();
            prop_assert_eq!(subs.len(), om.size(c));
            // brute force over all subsets of arrows into c
            let into = cat.arrows_into(c);
            let mut count = 0;
            for mask in 0u32..(1 << into.len()) {
                let s = Bits::from_indices(
                    cat.num_morphisms(),
                    (0..into.len()).filter(|i| mask >> i & 1 == 1).map(|i| into[i].0),
                );
                if is_sieve(&cat, c, &s) {
                    count += 1;
                }
            }
            prop_assert_eq!(count, om.size(c));
        }
    }

    #[test]
    fn ideal_topologies(cat in poset()) {
        let om = Omega::new(&cat, &caps()).unwrap();
        let nn = double_negation(&om);
        prop_assert!(check_weak_topology(&om, &nn).topology);
        for i in enumerate_ideals(&om, &caps()).unwrap() {
            let j = i.weak_topology(&om);
            let t = check_weak_topology(&om, &j);
            prop_assert!(t.weak && t.productive);
            prop_assert_eq!(t.idempotent, i.is_idempotent(&cat));
            for c in cat.objects() {
                let y = Presheaf::yoneda(&cat, c);
                for g in y.enumerate_subpresheaves(&cat, &caps()).unwrap() {
                    prop_assert_eq!(i.closure(&cat, &y, &g), closure_from_j(&om, &j, &y, &g));
                }
            }
            if i.is_nonempty_everywhere() {
                prop_assert_eq!(i.double_negation(&om), nn.clone());
            }
        }
    }

    #[test]
    fn class_topologies_and_actions(cat in poset()) {
        prop_assume!(cat.is_finitely_complete());
        let om = Omega::new(&cat, &caps()).unwrap();
        let nn = double_negation(&om);
        let js = j_sub(&om).unwrap();
        for class in enumerate_admissible_classes(&cat, &caps()).unwrap() {
            let jm = Mu::new(&om, &class).unwrap().topology(&om);
            prop_assert!(check_weak_topology(&om, &jm).topology);
            prop_assert!(jm.le(&om, &js) && js.le(&om, &nn));
            let mon = MonoidOnM::new(&om, &class).unwrap();
            prop_assert!(mon.laws(&cat).pass());
            prop_assert!(mon.equivariance(&om, &nn).forward);
            let r = frame_and_subact_checks(&om, &class, &[]).unwrap();
            prop_assert!(r.pass(), "{:?}", r);
        }
    }
}
