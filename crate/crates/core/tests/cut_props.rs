//! Properties of cut enumeration, the auxiliary graph and expander
//! decomposition.

mod common;

use std::collections::BTreeSet;

use common::{arb_instance, bits, lift, relabel, to_set, Oracle};
use hypersparse::enumerate::enumerate_connected_cuts_traced;
use hypersparse::{
    apply_contraction_to_aux, build_pruned_auxiliary_graph, contract, enumerate_connected_cuts,
    enumerate_cuts_by_boundary, essential_edges_from_aux, expander_decompose, is_useful_partition, EnumerationParams,
};
use num_rational::Ratio;
use proptest::prelude::*;

/// Minimum conductance of `part` under edges restricted to it, as a
/// `(boundary, denominator)` pair compared by cross-multiplication.
fn restricted_conductance_at_least(o: &Oracle, part: u32, phi: Ratio<u64>) -> bool {
    let masks: Vec<u32> = o.masks.iter().map(|&m| m & part).filter(|m| m.count_ones() >= 2).collect();
    let verts = to_set(part);
    for sel in 1..(1u32 << verts.len()) - 1 {
        let s = bits(&verts.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
        let rest = part & !s;
        let bd = masks.iter().filter(|&&m| m & s != 0 && m & rest != 0).count() as u64;
        let inside = masks.iter().filter(|&&m| m & s != 0).count() as u64;
        let outside = masks.iter().filter(|&&m| m & rest != 0).count() as u64;
        let den = inside.min(outside);
        if den > 0 && bd * phi.denom() < *phi.numer() * den {
            return false;
        }
    }
    true
}

fn non_essential(g: &hypersparse::Hypergraph, t: &[usize], c: usize) -> Vec<usize> {
    let ess = Oracle::new(g).essential(t, c);
    (0..g.num_edges()).filter(|e| !ess.contains(e)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn enumeration_is_sound_for_any_budget((g, _, c) in arb_instance(9, 12, 4, false), phi_inv in 1u64..=6) {
        let params = EnumerationParams::new(c, Ratio::from_integer(phi_inv), g.rank()).unwrap();
        let oracle = Oracle::new(&g).connected_cuts(c);
        for cut in enumerate_connected_cuts(&g, &params) {
            prop_assert!(oracle.contains(&cut.side), "unsound cut {:?}", cut.side);
        }
    }

    #[test]
    fn boundary_engine_and_safe_budget_match_oracle((g, _, c) in arb_instance(9, 12, 4, true)) {
        let o = Oracle::new(&g);
        let oracle = o.connected_cuts(c);
        let safe: BTreeSet<Vec<usize>> = enumerate_connected_cuts(&g, &EnumerationParams::safe(&g, c))
            .into_iter().map(|x| x.side).collect();
        prop_assert_eq!(&safe, &oracle);
        let cuts = enumerate_cuts_by_boundary(&g, c).unwrap();
        for x in &cuts {
            prop_assert_eq!(x.value, o.cut(bits(&x.side)));
        }
        let by_boundary: BTreeSet<Vec<usize>> = cuts.into_iter().map(|x| x.side).collect();
        prop_assert_eq!(&by_boundary, &oracle);
    }

    #[test]
    fn recursion_tree_is_bounded((g, _, c) in arb_instance(9, 12, 4, true), phi_inv in 1u64..=4) {
        let params = EnumerationParams::new(c, Ratio::from_integer(phi_inv), g.rank()).unwrap();
        let run = enumerate_connected_cuts_traced(&g, &params);
        let base = (g.rank() * c) as u64 * phi_inv;
        let bound = base.checked_pow((g.rank() * c) as u32).unwrap_or(u64::MAX);
        prop_assert!(run.max_seed_nodes as u64 <= bound.max(1));
        prop_assert!(run.total_nodes >= run.max_seed_nodes);
    }

    #[test]
    fn aux_essential_matches_oracle((g, t, c) in arb_instance(9, 12, 4, true)) {
        let cuts = enumerate_cuts_by_boundary(&g, c).unwrap();
        let aux = build_pruned_auxiliary_graph(&g, &t, &cuts, c).unwrap();
        let got: BTreeSet<usize> = essential_edges_from_aux(&aux).into_iter().collect();
        prop_assert_eq!(got, Oracle::new(&g).essential(&t.to_vec(), c));
    }

    #[test]
    fn usefulness_survives_non_essential_contraction(
        (g, t, c) in arb_instance(9, 12, 4, true),
        pick in any::<prop::sample::Index>(),
    ) {
        let tv = t.to_vec();
        let free = non_essential(&g, &tv, c);
        prop_assume!(!free.is_empty());
        let e = free[pick.index(free.len())];
        let con = contract(&g, &[e], &t).unwrap();
        let o = Oracle::new(&g);
        let oc = Oracle::new(&con.graph);
        for sel in (1u32..(1 << tv.len()) - 1).step_by(2) {
            let (a, b) = common::split(&tv, sel);
            let a_set = to_set(a);
            let before = is_useful_partition(&g, &a_set, &t, c).unwrap().useful;
            prop_assert_eq!(before, o.useful(a, b, c));
            let a_img = con.projection.apply_set(&a_set);
            let b_img = con.projection.apply_set(&to_set(b));
            if a_img.iter().any(|v| b_img.contains(v)) {
                // terminals merged, so λ(a, b) exceeded c and nothing was useful
                prop_assert!(!before);
                continue;
            }
            prop_assert_eq!(oc.useful(bits(&a_img), bits(&b_img), c), before);
        }
        let after: BTreeSet<usize> = oc.essential(&con.terminals.to_vec(), c)
            .into_iter().map(|j| con.edge_origin[j]).collect();
        prop_assert!(o.essential(&tv, c).is_subset(&after));
    }

    #[test]
    fn incremental_aux_matches_rebuild(
        (g, t, c) in arb_instance(9, 12, 4, true),
        pick in any::<prop::sample::Index>(),
    ) {
        let free = non_essential(&g, &t.to_vec(), c);
        prop_assume!(!free.is_empty());
        let e = free[pick.index(free.len())];
        let cuts = enumerate_cuts_by_boundary(&g, c).unwrap();
        let mut aux = build_pruned_auxiliary_graph(&g, &t, &cuts, c).unwrap();
        apply_contraction_to_aux(&mut aux, e).unwrap();
        let con = contract(&g, &[e], &t).unwrap();
        let incremental = relabel(&aux.snapshot(), &con).map_err(TestCaseError::fail)?;
        let rcuts = enumerate_cuts_by_boundary(&con.graph, c).unwrap();
        let rebuilt = build_pruned_auxiliary_graph(&con.graph, &con.terminals, &rcuts, c).unwrap();
        prop_assert_eq!(incremental, lift(rebuilt.snapshot(), &con.edge_origin));
    }

    #[test]
    fn decomposition_is_a_checked_partition((g, _, _) in arb_instance(10, 14, 4, false), den in 1u64..=8) {
        let phi = Ratio::new(1, den);
        let d = expander_decompose(&g, phi).unwrap();
        let mut seen = vec![false; g.num_vertices()];
        for part in &d.parts {
            prop_assert!(!part.is_empty());
            for &v in part {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        prop_assert_eq!(&d.crossing_edges, &hypersparse::expander::crossing_edges(&g, &d.parts));
        let o = Oracle::new(&g);
        for (part, &ok) in d.parts.iter().zip(&d.certified) {
            if ok {
                prop_assert!(restricted_conductance_at_least(&o, bits(part), phi), "part {:?}", part);
            }
        }
    }
}
