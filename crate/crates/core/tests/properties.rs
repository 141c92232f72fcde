//! Property tests over random complexes, perversities and modules.

use std::collections::BTreeSet;
use std::sync::Arc;

use perverse_cells::complex::{ParseOptions, SimplicialComplex};
use perverse_cells::module::{check_module, random_module, ModuleBudget};
use perverse_cells::perversity::{enumerate_perversities, Perversity};
use perverse_cells::quiver::Quiver;
use perverse_cells::sheaf::{composite_map, hom_space, poset_leq, restrict, validate_tea, SheafContext};
use perverse_cells::triangulation::{max_vertex, PerverseTriangulation};
use perverse_cells::QuadraticQuiverAlgebra;
use proptest::prelude::*;

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(1u32..(1 << n), 1..5))).prop_filter_map(
        "disconnected",
        |(n, masks)| {
            let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let maximal: Vec<Vec<String>> =
                masks.iter().map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| labels[i].clone()).collect()).collect();
            SimplicialComplex::from_maximal(&labels, &maximal, ParseOptions::default()).ok().map(|(x, _)| x)
        },
    )
}

fn arb_complex_and_perversity() -> impl Strategy<Value = (Arc<SimplicialComplex>, Perversity)> {
    arb_complex().prop_flat_map(|x| {
        let options = enumerate_perversities(x.dimension());
        let x = Arc::new(x);
        (0..options.len()).prop_map(move |i| (x.clone(), options[i].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn face_closure_is_idempotent(x in arb_complex(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let sd = x.subdivision();
        let chosen: BTreeSet<usize> = picks.iter().map(|i| i.index(sd.len())).collect();
        let once = sd.closed_union(&chosen);
        let twice = sd.closed_union(&once.flags);
        prop_assert!(twice.was_closed);
        prop_assert_eq!(&twice.flags, &once.flags);
        prop_assert!(chosen.is_subset(&once.flags));
        prop_assert_eq!(once.was_closed, once.flags == chosen);
    }

    #[test]
    fn perverse_simplices_partition_flags((x, d) in arb_complex_and_perversity()) {
        let t = PerverseTriangulation::new(x.clone(), &d).unwrap();
        let sd = x.subdivision();
        prop_assert!(t.is_partition());
        prop_assert_eq!(t.parts().iter().map(|p| p.flags.len()).sum::<usize>(), sd.len());
        for p in t.parts() {
            prop_assert!(p.flags.contains(&sd.vertex_flag(p.anchor)));
            for &f in &p.flags {
                prop_assert!(sd.flag(f).chain().contains(&p.anchor));
                prop_assert_eq!(max_vertex(&x, sd.flag(f), &d), p.anchor);
            }
        }
        prop_assert_eq!(t.check_components(), Ok(()));
        let mut previous = BTreeSet::new();
        for k in t.levels() {
            let skeleton = t.skeleton(k, false).unwrap();
            prop_assert!(previous.is_subset(&skeleton));
            previous = skeleton;
        }
        prop_assert_eq!(previous.len(), sd.len());
    }

    #[test]
    fn top_perversity_gives_open_simplices(x in arb_complex()) {
        let x = Arc::new(x);
        let t = PerverseTriangulation::new(x.clone(), &Perversity::top(x.dimension())).unwrap();
        let sd = x.subdivision();
        for p in t.parts() {
            let open: BTreeSet<usize> = (0..sd.len()).filter(|&f| sd.flag(f).top() == p.anchor).collect();
            prop_assert_eq!(&p.flags, &open);
        }
    }

    #[test]
    fn quiver_identities((x, d) in arb_complex_and_perversity()) {
        let q = Quiver::of_complex(&x, &d);
        prop_assert_eq!(Quiver::of_complex(&x, &d.negate()), q.opposite());
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
        let dims_a = a.graded_dimensions(2).unwrap();
        let dims_b = b.graded_dimensions(2).unwrap();
        prop_assert_eq!(dims_a[0], x.len());
        prop_assert_eq!(dims_a[1], q.arrows().len());
        prop_assert_eq!(dims_a[2] + dims_b[2], q.paths(2).len());
        for block in b.relations().blocks() {
            prop_assert_eq!(block.rank(), block.paths.len() - 1);
        }
    }

    #[test]
    fn order_lemmas((x, d) in arb_complex_and_perversity()) {
        let ctx = SheafContext::new(x, &d).unwrap();
        prop_assert_eq!(ctx.incidence_order_check(), Ok(()));
        prop_assert_eq!(ctx.anchor_order_check(), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composites_compose(d in 0usize..4, seed in any::<u64>()) {
        let x = Arc::new(SimplicialComplex::full_simplex(2));
        let d = &enumerate_perversities(2)[d];
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, d);
        let m = random_module(&b, seed, &ModuleBudget::default()).unwrap();
        prop_assert_eq!(check_module(&b, &m).unwrap(), None);
        prop_assert_eq!(validate_tea(&m), None);
        let q = b.quiver();
        for s in 0..q.len() {
            for t in 0..q.len() {
                for u in 0..q.len() {
                    if poset_leq(q, s, t) && poset_leq(q, t, u) {
                        let direct = composite_map(&m, s, u).unwrap();
                        let split = &composite_map(&m, t, u).unwrap() * &composite_map(&m, s, t).unwrap();
                        prop_assert_eq!(direct, split);
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_commutes_with_composites(d in 0usize..4, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let x = Arc::new(SimplicialComplex::full_simplex(2));
        let ctx = SheafContext::new(x.clone(), &enumerate_perversities(2)[d]).unwrap();
        let m = random_module(&ctx.equivalence_algebra(), seed, &ModuleBudget::default()).unwrap();
        let full = ctx.phi(&m).unwrap().into_data();
        let sd = x.subdivision();
        let closed = sd.closed_union(&BTreeSet::from([pick.index(sd.len())])).flags;
        let part = restrict(&x, &full, &closed).unwrap();
        let old: Vec<usize> = closed.iter().copied().collect();
        let rq = part.quiver();
        for i in 0..rq.len() {
            for j in 0..rq.len() {
                if poset_leq(rq, i, j) {
                    prop_assert_eq!(composite_map(&part, i, j).unwrap(), composite_map(&full, old[i], old[j]).unwrap());
                }
            }
        }
    }

    #[test]
    fn hom_dimension_survives_phi(d in 0usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = Arc::new(SimplicialComplex::full_simplex(2));
        let ctx = SheafContext::new(x, &enumerate_perversities(2)[d]).unwrap();
        let b = ctx.equivalence_algebra();
        let small = ModuleBudget { max_multiplicity: 1, relations: 2, coefficient_bound: 2 };
        let (m, n) = (random_module(&b, s1, &small).unwrap(), random_module(&b, s2, &small).unwrap());
        let before = hom_space(&m, &n).unwrap();
        let after = hom_space(ctx.phi(&m).unwrap().data(), ctx.phi(&n).unwrap().data()).unwrap();
        prop_assert_eq!(before.dimension(), after.dimension());
        prop_assert!(before.basis.iter().all(|f| f.is_morphism(&m, &n)));
    }
}
