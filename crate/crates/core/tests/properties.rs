use bruhat_core::bitmatrix::BitMatrix;
use bruhat_core::homology::{
    boundary_matrices, is_sphere_homology, reduced_homology, smith_normal_form, suspension,
    IntegerMatrix, SimplicialComplex,
};
use bruhat_core::poset::{
    check_monotone, order_complex, product_with_two_chain, proper_part, MonotoneMap,
};
use bruhat_core::subsets::{enumerate_subsets, is_consistent, packet_of, KSubset};
use bruhat_core::{Exec, FiniteBoundedPoset, FinitePoset, GroundParams};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random order relation on `n` elements: random edges `i -> j` with `i < j`, closed.
fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            FinitePoset::from_covers(labels(n), &edges).unwrap()
        })
    })
}

/// Random poset with a bottom and a top adjoined.
fn arb_bounded(max_inner: usize) -> impl Strategy<Value = FiniteBoundedPoset> {
    arb_poset(max_inner).prop_map(|p| {
        let m = p.len();
        let mut edges = p.covers();
        edges.extend((0..m).map(|x| (m, x)));
        edges.extend((0..m).map(|x| (x, m + 1)));
        if m == 0 {
            edges.push((m, m + 1));
        }
        let mut l = p.labels().to_vec();
        l.push("bottom".into());
        l.push("top".into());
        FiniteBoundedPoset::from_covers(l, &edges, m, m + 1).unwrap()
    })
}

fn arb_complex(max_vertices: u32) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_vertices).prop_flat_map(|nv| {
        proptest::collection::vec(proptest::collection::btree_set(0..nv, 1..=4), 0..8).prop_map(
            move |facets| {
                let facets: Vec<Vec<u32>> = facets
                    .into_iter()
                    .map(|f| f.into_iter().collect())
                    .collect();
                SimplicialComplex::closure(labels(nv as usize), &facets).unwrap()
            },
        )
    })
}

fn same_homology_shifted(x: &SimplicialComplex) -> bool {
    let hx = reduced_homology(x).unwrap();
    let hs = reduced_homology(&suspension(x).unwrap()).unwrap();
    (-1..=hs.dim().max(hx.dim() + 1))
        .all(|d| hs.betti(d) == hx.betti(d - 1) && hs.torsion(d) == hx.torsion(d - 1))
        && hs.betti(-1) == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covers_then_closure_is_identity(p in arb_poset(12)) {
        let q = FinitePoset::from_covers(p.labels().to_vec(), &p.covers()).unwrap();
        prop_assert_eq!(q.relation(), p.relation());
    }

    #[test]
    fn covers_are_not_composites(p in arb_poset(10)) {
        for (x, y) in p.covers() {
            prop_assert!(p.lt(x, y));
            prop_assert!((0..p.len()).all(|z| !(p.lt(x, z) && p.lt(z, y))));
        }
    }

    #[test]
    fn chain_count_matches_f_vector(p in arb_poset(10)) {
        let x = order_complex(&p, 1 << 20, Exec::Sequential).unwrap();
        let total: u64 = x.f_vector()[1..].iter().sum();
        prop_assert_eq!(Some(total as u128), p.chain_count());
        let par = order_complex(&p, 1 << 20, Exec::Parallel).unwrap();
        prop_assert_eq!(x, par);
    }

    #[test]
    fn euler_matches_homology(p in arb_poset(9)) {
        let x = order_complex(&p, 1 << 20, Exec::Sequential).unwrap();
        let r = reduced_homology(&x).unwrap();
        prop_assert_eq!(r.euler_from_betti(), x.reduced_euler_characteristic());
    }

    #[test]
    fn monotone_maps_send_chains_to_chains(p in arb_poset(8), seed in any::<u64>()) {
        // a random self-map, kept only if monotone
        let n = p.len();
        let images: Vec<usize> = (0..n).map(|x| ((seed >> (x % 60)) as usize + x) % n).collect();
        let map = MonotoneMap { source: &p, target: &p, images: &images };
        let check = check_monotone(&map);
        prop_assert_eq!(check.monotone, check.violations.is_empty());
        if check.monotone {
            for c in p.chains(1 << 20, Exec::Sequential).unwrap() {
                let img: Vec<usize> = c.iter().map(|&v| images[v as usize]).collect();
                for w in img.windows(2) {
                    prop_assert!(p.comparable(w[0], w[1]));
                }
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero(x in arb_complex(9)) {
        let b = boundary_matrices(&x).unwrap();
        for w in b.windows(2) {
            prop_assert!(w[0].mul(&w[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn suspension_shifts_homology(x in arb_complex(12)) {
        prop_assert!(same_homology_shifted(&x));
    }

    #[test]
    fn product_with_two_chain_is_suspension(q in arb_bounded(6)) {
        let lhs = order_complex(&proper_part(&product_with_two_chain(&q)).poset, 1 << 20, Exec::Sequential).unwrap();
        let rhs = suspension(&order_complex(&proper_part(&q).poset, 1 << 20, Exec::Sequential).unwrap()).unwrap();
        prop_assert_eq!(reduced_homology(&lhs).unwrap().degrees, reduced_homology(&rhs).unwrap().degrees);
    }

    #[test]
    fn smith_factors_divide_and_preserve_determinant(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
        let m = IntegerMatrix::from_dense(&[vec![a, b], vec![c, d]]).unwrap();
        let s = smith_normal_form(&m);
        let det = BigInt::from(a * d - b * c);
        let g = [a, b, c, d].iter().fold(0i64, |acc, &x| acc.gcd(&x));
        prop_assert_eq!(s.rank, s.invariant_factors.len());
        if s.rank == 2 {
            prop_assert_eq!(&s.invariant_factors[0] * &s.invariant_factors[1], det.abs());
        } else {
            prop_assert!(det.is_zero());
        }
        if s.rank > 0 {
            prop_assert_eq!(&s.invariant_factors[0], &BigInt::from(g));
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn rank_is_a_bijection(n in 1u32..10, r in 0u32..10) {
        prop_assume!(r <= n);
        let all = enumerate_subsets(n, r).unwrap();
        for (i, s) in all.iter().enumerate() {
            prop_assert_eq!(s.rank(), i as u64);
            prop_assert_eq!(&KSubset::from_rank(i as u64, r), s);
        }
    }

    #[test]
    fn random_families_agree_with_segment_definition(n in 3u32..7, k in 0u32..3, mask in any::<u64>()) {
        prop_assume!(k + 2 <= n);
        let params = GroundParams::new(n, k).unwrap();
        let universe = enumerate_subsets(n, k + 1).unwrap();
        let members: Vec<KSubset> = universe.iter().filter(|s| mask >> (s.rank() % 64) & 1 == 1).cloned().collect();
        let by_definition = enumerate_subsets(n, k + 2).unwrap().iter().all(|base| {
            let packet = packet_of(base, k).unwrap();
            let inside: Vec<bool> = packet.members().iter().map(|m| members.contains(m)).collect();
            let t = inside.iter().filter(|&&b| b).count();
            inside[..t].iter().all(|&b| b) || inside[inside.len() - t..].iter().all(|&b| b)
        });
        prop_assert_eq!(is_consistent(&members, params).unwrap(), by_definition);
    }
}

#[test]
fn spheres_from_boolean_lattices() {
    // the proper part of the Boolean lattice on m atoms is a sphere of dimension m - 2
    for m in 1..=5usize {
        let n = 1usize << m;
        let mut leq = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                if x & y == x {
                    leq.set(x, y);
                }
            }
        }
        let b = FiniteBoundedPoset::from_relation(labels(n), leq, 0, n - 1).unwrap();
        let x = order_complex(&proper_part(&b).poset, 1 << 20, Exec::default()).unwrap();
        assert!(is_sphere_homology(
            &reduced_homology(&x).unwrap(),
            m as i64 - 2
        ));
    }
}
