use bruhat_core::bruhat::{
    admissible_permutation, buildup_sequence, dual_buildup_sequence, leq_inclusion,
    leq_single_step, to_poset,
};
use bruhat_core::lemma::{bruhat_instance, build_proof_maps, carrier_cone_check, check_conditions};
use bruhat_core::subsets::{complement, internal_gaps, interval_descent};
use bruhat_core::{
    enumerate_bruhat, is_green, map_f, map_i, map_j, BruhatOrderKind, EnumerationLimits,
    EnumerationMethod, Exec, FiniteBoundedPoset, GroundParams,
};

const SMALL: [(u32, u32); 6] = [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3), (6, 4)];
const KINDS: [BruhatOrderKind; 2] = [BruhatOrderKind::SingleStep, BruhatOrderKind::Inclusion];

fn params(n: u32, k: u32) -> GroundParams {
    GroundParams::new(n, k).unwrap()
}

#[test]
fn orders_are_bounded_posets() {
    for (n, k) in SMALL {
        for kind in KINDS {
            let order = enumerate_bruhat(params(n, k), kind, EnumerationMethod::Bfs).unwrap();
            let p = to_poset(&order).unwrap();
            assert!(order.elements()[p.bottom()].is_empty());
            assert_eq!(
                order.elements()[p.top()].len() as u64,
                params(n, k).universe_size()
            );
        }
    }
}

#[test]
fn single_step_implies_inclusion() {
    for (n, k) in SMALL {
        let order = enumerate_bruhat(
            params(n, k),
            BruhatOrderKind::SingleStep,
            EnumerationMethod::Bfs,
        )
        .unwrap();
        let p = to_poset(&order).unwrap();
        for x in 0..order.len() {
            for y in 0..order.len() {
                let (u, v) = (&order.elements()[x], &order.elements()[y]);
                let ss = leq_single_step(u, v, &order).unwrap();
                assert_eq!(ss, p.leq(x, y));
                if ss {
                    assert!(leq_inclusion(u, v).unwrap());
                }
            }
        }
    }
}

#[test]
fn symmetric_group_sizes() {
    let mut fact = 1;
    for n in 2..=6u32 {
        fact *= n as usize;
        let order = enumerate_bruhat(
            params(n, 1),
            BruhatOrderKind::SingleStep,
            EnumerationMethod::Bfs,
        )
        .unwrap();
        assert_eq!(order.len(), fact);
    }
}

#[test]
fn hexagon_from_covers() {
    let order = enumerate_bruhat(
        params(3, 1),
        BruhatOrderKind::SingleStep,
        EnumerationMethod::Bfs,
    )
    .unwrap();
    let p = to_poset(&order).unwrap();
    let covers = p.poset().covers();
    assert_eq!(covers.len(), 6);
    let rebuilt =
        FiniteBoundedPoset::from_covers(p.labels().to_vec(), &covers, p.bottom(), p.top()).unwrap();
    assert_eq!(rebuilt.poset().relation(), p.poset().relation());
}

#[test]
fn maps_and_colours() {
    for (n, k) in SMALL {
        for kind in KINDS {
            let b = bruhat_instance(
                params(n, k),
                kind,
                EnumerationLimits::default(),
                Exec::default(),
            )
            .unwrap();
            assert!(
                check_conditions(&b.instance).all_pass(),
                "B({n},{k}) {kind}"
            );
            assert!(
                check_conditions(&b.instance.dual()).all_pass(),
                "dual B({n},{k}) {kind}"
            );
            for v in b.small.elements() {
                assert_eq!(map_f(&map_i(v).unwrap()).unwrap(), *v);
                assert_eq!(map_f(&map_j(v).unwrap()).unwrap(), *v);
            }
        }
    }
}

#[test]
fn complement_is_a_colour_swapping_order_reversing_involution() {
    for (n, k) in SMALL {
        for kind in KINDS {
            let order = enumerate_bruhat(params(n, k), kind, EnumerationMethod::Bfs).unwrap();
            let p = to_poset(&order).unwrap();
            let image: Vec<usize> = order
                .elements()
                .iter()
                .map(|u| {
                    let c = complement(u).unwrap();
                    assert!(c.is_consistent());
                    assert_eq!(complement(&c).unwrap(), *u);
                    assert_ne!(is_green(u), is_green(&c));
                    order.index_of(&c).unwrap()
                })
                .collect();
            for x in 0..order.len() {
                for y in 0..order.len() {
                    assert_eq!(p.leq(x, y), p.leq(image[y], image[x]));
                }
            }
        }
    }
}

#[test]
fn witnesses_for_every_element() {
    for (n, k) in SMALL {
        let order = enumerate_bruhat(
            params(n, k),
            BruhatOrderKind::SingleStep,
            EnumerationMethod::Bfs,
        )
        .unwrap();
        for u in order.elements() {
            if !u.is_empty() {
                let path = interval_descent(u).unwrap();
                let gaps: Vec<usize> = path
                    .iter()
                    .map(|s| internal_gaps(s, n).unwrap().len())
                    .collect();
                assert!(gaps.windows(2).all(|w| w[1] < w[0]));
                assert_eq!(*gaps.last().unwrap(), 0);
            }
            let up = buildup_sequence(u).unwrap();
            assert!(up.verify());
            assert_eq!(*up.first(), map_i(&map_f(u).unwrap()).unwrap());
            let down = dual_buildup_sequence(u).unwrap();
            assert_eq!(*down.last(), map_j(&map_f(u).unwrap()).unwrap());
            assert!(leq_single_step(up.first(), u, &order).unwrap());
            assert!(leq_single_step(u, down.last(), &order).unwrap());
            let reduced = map_f(u).unwrap();
            assert!(admissible_permutation(&reduced)
                .unwrap()
                .is_admissible_for(&reduced));
        }
    }
}

#[test]
fn proof_skeleton_on_small_instances() {
    for (n, k) in [(3, 1), (4, 1), (4, 2)] {
        for kind in KINDS {
            let inst = bruhat_instance(
                params(n, k),
                kind,
                EnumerationLimits::default(),
                Exec::default(),
            )
            .unwrap()
            .instance;
            assert!(build_proof_maps(&inst).unwrap().all_pass());
            let r = carrier_cone_check(&inst, 100_000, 0).unwrap();
            assert!(r.exhaustive && r.passed());
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for (n, k) in SMALL {
        let seq = bruhat_core::enumerate_bruhat_with(
            params(n, k),
            BruhatOrderKind::Inclusion,
            EnumerationMethod::Bfs,
            EnumerationLimits::default(),
            Exec::Sequential,
        )
        .unwrap();
        let par = bruhat_core::enumerate_bruhat_with(
            params(n, k),
            BruhatOrderKind::Inclusion,
            EnumerationMethod::Bfs,
            EnumerationLimits::default(),
            Exec::Parallel,
        )
        .unwrap();
        assert_eq!(seq.elements(), par.elements());
        assert_eq!(seq.relation(Exec::Sequential), par.relation(Exec::Parallel));
    }
}
