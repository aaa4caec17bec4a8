//! Checks for the hypotheses of the suspension lemma on explicit instances.
//!
//! An instance is a pair of bounded posets `P`, `Q`, a green/red split of `P`
//! and maps `f: P -> Q`, `i, j: Q -> P`. [`check_conditions`] verifies every
//! hypothesis exhaustively. [`build_proof_maps`] and [`carrier_cone_check`]
//! verify the finite pieces of the homotopy argument: the maps `g`, `h` with
//! `g ∘ h = id`, and that each carrier `C(σ)` is a cone. Homotopy equivalence
//! itself is not certified here.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitmatrix::ones;
use crate::bruhat::{
    enumerate_bruhat_with, is_green, map_f, map_i, map_j, to_poset_with, BruhatOrder,
    BruhatOrderKind, EnumerationLimits, EnumerationMethod,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poset::{
    product_with_two_chain, proper_part, FiniteBoundedPoset, MonotoneMap, ProperPart,
};
use crate::subsets::GroundParams;

/// Printed at the top of every report.
pub const CERTIFICATION_NOTE: &str =
    "checks the lemma's hypotheses and the finite skeleton of its proof \
(g, h monotone, g∘h = id, carriers are cones); homotopy equivalence itself is not certified";

/// Printed with sampled carrier checks.
pub const SAMPLING_NOTE: &str = "carrier cones checked on a sample of chains: evidence, not proof";

#[derive(Debug, Clone)]
pub struct DissectionInstance {
    pub p: FiniteBoundedPoset,
    pub q: FiniteBoundedPoset,
    /// `green[x]` for each element of `P`; the rest are red.
    pub green: Vec<bool>,
    pub f: Vec<usize>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl DissectionInstance {
    pub fn new(
        p: FiniteBoundedPoset,
        q: FiniteBoundedPoset,
        green: Vec<bool>,
        f: Vec<usize>,
        i: Vec<usize>,
        j: Vec<usize>,
    ) -> Result<Self> {
        if green.len() != p.len() {
            return Err(Error::Parameter(format!(
                "{} colours for {} elements of P",
                green.len(),
                p.len()
            )));
        }
        if f.len() != p.len() || f.iter().any(|&x| x >= q.len()) {
            return Err(Error::Parameter(
                "f must send every element of P into Q".into(),
            ));
        }
        for (name, m) in [("i", &i), ("j", &j)] {
            if m.len() != q.len() || m.iter().any(|&x| x >= p.len()) {
                return Err(Error::Parameter(format!(
                    "{name} must send every element of Q into P"
                )));
            }
        }
        Ok(DissectionInstance {
            p,
            q,
            green,
            f,
            i,
            j,
        })
    }

    /// Reverse both orders, swap the colours and swap `i` with `j`.
    pub fn dual(&self) -> DissectionInstance {
        DissectionInstance {
            p: self.p.dual(),
            q: self.q.dual(),
            green: self.green.iter().map(|g| !g).collect(),
            f: self.f.clone(),
            i: self.j.clone(),
            j: self.i.clone(),
        }
    }

    fn label_p(&self, x: usize) -> &str {
        self.p.label(x)
    }

    fn label_q(&self, x: usize) -> &str {
        self.q.label(x)
    }
}

/// A Bruhat instance: `P = B(n, k)`, `Q = B(n-1, k)` with the maps that drop,
/// keep, or add every member containing `n`.
#[derive(Debug, Clone)]
pub struct BruhatInstance {
    pub big: BruhatOrder,
    pub small: BruhatOrder,
    pub instance: DissectionInstance,
}

pub fn bruhat_instance(
    params: GroundParams,
    kind: BruhatOrderKind,
    limits: EnumerationLimits,
    exec: Exec,
) -> Result<BruhatInstance> {
    let small_params = params.shrink()?;
    let big = enumerate_bruhat_with(params, kind, EnumerationMethod::Bfs, limits, exec)?;
    let small = enumerate_bruhat_with(small_params, kind, EnumerationMethod::Bfs, limits, exec)?;
    let p = to_poset_with(&big, exec)?;
    let q = to_poset_with(&small, exec)?;
    let locate = |order: &BruhatOrder, set| {
        order.index_of(&set).ok_or_else(|| {
            Error::Invariant(format!("{set} is not an element of B{}", order.params()))
        })
    };
    let green = big.elements().iter().map(is_green).collect();
    let f = big
        .elements()
        .iter()
        .map(|u| locate(&small, map_f(u)?))
        .collect::<Result<Vec<_>>>()?;
    let i = small
        .elements()
        .iter()
        .map(|v| locate(&big, map_i(v)?))
        .collect::<Result<Vec<_>>>()?;
    let j = small
        .elements()
        .iter()
        .map(|v| locate(&big, map_j(v)?))
        .collect::<Result<Vec<_>>>()?;
    let instance = DissectionInstance::new(p, q, green, f, i, j)?;
    Ok(BruhatInstance {
        big,
        small,
        instance,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Human-readable counterexamples; empty when passed.
    pub witnesses: Vec<String>,
}

/// Cap on witnesses recorded per check.
const MAX_WITNESSES: usize = 20;

impl CheckResult {
    fn from_witnesses(name: &'static str, mut witnesses: Vec<String>) -> Self {
        witnesses.truncate(MAX_WITNESSES);
        CheckResult {
            name,
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Bounds of `P` and `Q`, `0_Q != 1_Q`, and monotonicity of `f`, `i`, `j`.
    pub preconditions: Vec<CheckResult>,
    /// Conditions (i) to (v), in order.
    pub conditions: Vec<CheckResult>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.preconditions
            .iter()
            .chain(&self.conditions)
            .all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.preconditions
            .iter()
            .chain(&self.conditions)
            .find(|c| c.name == name)
    }
}

fn bounded_witnesses(p: &FiniteBoundedPoset) -> Vec<String> {
    (0..p.len())
        .filter(|&x| !p.leq(p.bottom(), x) || !p.leq(x, p.top()))
        .map(|x| format!("{} lies outside [bottom, top]", p.label(x)))
        .collect()
}

fn monotone_witnesses(
    name: &str,
    src: &FiniteBoundedPoset,
    dst: &FiniteBoundedPoset,
    images: &[usize],
) -> Vec<String> {
    let check = MonotoneMap {
        source: src.poset(),
        target: dst.poset(),
        images,
    }
    .check_monotone();
    check
        .violations
        .iter()
        .take(MAX_WITNESSES)
        .map(|&(x, y)| {
            format!(
                "{} <= {} but {name}({}) = {} is not <= {name}({}) = {}",
                src.label(x),
                src.label(y),
                src.label(x),
                dst.label(images[x]),
                src.label(y),
                dst.label(images[y])
            )
        })
        .collect()
}

/// Exhaustive check of every hypothesis; failures carry witnesses.
pub fn check_conditions(inst: &DissectionInstance) -> ConditionReport {
    check_conditions_with(inst, Exec::default())
}

pub fn check_conditions_with(inst: &DissectionInstance, exec: Exec) -> ConditionReport {
    let (p, q) = (&inst.p, &inst.q);
    let mut pre = vec![
        CheckResult::from_witnesses("P bounded", bounded_witnesses(p)),
        CheckResult::from_witnesses("Q bounded", bounded_witnesses(q)),
        CheckResult::from_witnesses(
            "0_Q != 1_Q",
            if q.bottom() == q.top() {
                vec![format!("Q has a single element {}", q.label(q.bottom()))]
            } else {
                vec![]
            },
        ),
    ];
    let tasks: Vec<u8> = (0..8).collect();
    let results: Vec<CheckResult> = exec.map(&tasks, |&t| match t {
        0 => CheckResult::from_witnesses("f monotone", monotone_witnesses("f", p, q, &inst.f)),
        1 => CheckResult::from_witnesses("i monotone", monotone_witnesses("i", q, p, &inst.i)),
        2 => CheckResult::from_witnesses("j monotone", monotone_witnesses("j", q, p, &inst.j)),
        3 => condition_order_ideal(inst),
        4 => condition_compositions(inst),
        5 => condition_image_colours(inst),
        6 => condition_interval(inst),
        _ => condition_fibres(inst),
    });
    let mut results = results.into_iter();
    pre.extend(results.by_ref().take(3));
    ConditionReport {
        preconditions: pre,
        conditions: results.collect(),
    }
}

fn condition_order_ideal(inst: &DissectionInstance) -> CheckResult {
    let p = &inst.p;
    let w = p
        .poset()
        .strict_pairs()
        .filter(|&(x, y)| inst.green[y] && !inst.green[x])
        .take(MAX_WITNESSES)
        .map(|(x, y)| {
            format!(
                "{} is red but lies below green {}",
                inst.label_p(x),
                inst.label_p(y)
            )
        })
        .collect();
    CheckResult::from_witnesses("(i) green elements form an order ideal", w)
}

fn condition_compositions(inst: &DissectionInstance) -> CheckResult {
    let mut w = Vec::new();
    for qx in 0..inst.q.len() {
        for (name, m) in [("i", &inst.i), ("j", &inst.j)] {
            let back = inst.f[m[qx]];
            if back != qx {
                w.push(format!(
                    "f({name}({})) = {} instead of {}",
                    inst.label_q(qx),
                    inst.label_q(back),
                    inst.label_q(qx)
                ));
            }
        }
    }
    CheckResult::from_witnesses("(ii) f∘i and f∘j are the identity on Q", w)
}

fn condition_image_colours(inst: &DissectionInstance) -> CheckResult {
    let mut w = Vec::new();
    for qx in 0..inst.q.len() {
        if !inst.green[inst.i[qx]] {
            w.push(format!(
                "i({}) = {} is red",
                inst.label_q(qx),
                inst.label_p(inst.i[qx])
            ));
        }
        if inst.green[inst.j[qx]] {
            w.push(format!(
                "j({}) = {} is green",
                inst.label_q(qx),
                inst.label_p(inst.j[qx])
            ));
        }
    }
    CheckResult::from_witnesses("(iii) image of i is green, image of j is red", w)
}

fn condition_interval(inst: &DissectionInstance) -> CheckResult {
    let mut w = Vec::new();
    for x in 0..inst.p.len() {
        let lo = inst.i[inst.f[x]];
        let hi = inst.j[inst.f[x]];
        if !inst.p.leq(lo, x) {
            w.push(format!(
                "i(f({0})) = {1} is not <= {0}",
                inst.label_p(x),
                inst.label_p(lo)
            ));
        }
        if !inst.p.leq(x, hi) {
            w.push(format!(
                "{0} is not <= j(f({0})) = {1}",
                inst.label_p(x),
                inst.label_p(hi)
            ));
        }
    }
    CheckResult::from_witnesses("(iv) i(f(p)) <= p <= j(f(p))", w)
}

fn condition_fibres(inst: &DissectionInstance) -> CheckResult {
    let (p, q) = (&inst.p, &inst.q);
    let mut w = Vec::new();
    for x in 0..p.len() {
        if inst.f[x] == q.bottom() && x != p.bottom() && inst.green[x] {
            w.push(format!("{} is green and maps to 0_Q", p.label(x)));
        }
        if inst.f[x] == q.top() && x != p.top() && !inst.green[x] {
            w.push(format!("{} is red and maps to 1_Q", p.label(x)));
        }
    }
    CheckResult::from_witnesses(
        "(v) f^-1(0_Q) red except 0_P, f^-1(1_Q) green except 1_P",
        w,
    )
}

/// `g: proper(P) -> proper(Q×2)` and `h: proper(Q×2) -> proper(P)`, indexed
/// by position inside the respective proper parts.
#[derive(Debug, Clone)]
pub struct ProofMaps {
    pub q_times_two: FiniteBoundedPoset,
    pub proper_p: ProperPart,
    pub proper_q2: ProperPart,
    pub g: Vec<usize>,
    pub h: Vec<usize>,
    pub g_monotone: CheckResult,
    pub h_monotone: CheckResult,
    pub g_after_h_identity: CheckResult,
}

impl ProofMaps {
    pub fn all_pass(&self) -> bool {
        self.g_monotone.passed && self.h_monotone.passed && self.g_after_h_identity.passed
    }
}

pub fn build_proof_maps(inst: &DissectionInstance) -> Result<ProofMaps> {
    let q2 = product_with_two_chain(&inst.q);
    let proper_p = proper_part(&inst.p);
    let proper_q2 = proper_part(&q2);

    let g = proper_p
        .elements
        .iter()
        .map(|&x| {
            let target = 2 * inst.f[x] + usize::from(!inst.green[x]);
            proper_q2.position(target).ok_or_else(|| {
                Error::ConditionViolation(format!(
                    "g({}) = {} is a bound of Q×2",
                    inst.p.label(x),
                    q2.label(target)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let h = proper_q2
        .elements
        .iter()
        .map(|&y| {
            let (qx, top_half) = (y / 2, y % 2 == 1);
            let target = if top_half { inst.j[qx] } else { inst.i[qx] };
            proper_p.position(target).ok_or_else(|| {
                Error::ConditionViolation(format!(
                    "h({}) = {} is a bound of P",
                    q2.label(y),
                    inst.p.label(target)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mono = |name: &'static str, src: &ProperPart, dst: &ProperPart, images: &[usize]| {
        let check = MonotoneMap {
            source: &src.poset,
            target: &dst.poset,
            images,
        }
        .check_monotone();
        CheckResult::from_witnesses(
            name,
            check
                .violations
                .iter()
                .take(MAX_WITNESSES)
                .map(|&(a, b)| {
                    format!(
                        "{} <= {} not preserved",
                        src.poset.label(a),
                        src.poset.label(b)
                    )
                })
                .collect(),
        )
    };
    let g_monotone = mono("g monotone", &proper_p, &proper_q2, &g);
    let h_monotone = mono("h monotone", &proper_q2, &proper_p, &h);
    let g_after_h_identity = CheckResult::from_witnesses(
        "g∘h = id on proper(Q×2)",
        (0..proper_q2.poset.len())
            .filter(|&y| g[h[y]] != y)
            .map(|y| {
                format!(
                    "g(h({})) = {}",
                    proper_q2.poset.label(y),
                    proper_q2.poset.label(g[h[y]])
                )
            })
            .collect(),
    );
    Ok(ProofMaps {
        q_times_two: q2,
        proper_p,
        proper_q2,
        g,
        h,
        g_monotone,
        h_monotone,
        g_after_h_identity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierReport {
    /// Number of nonempty chains of `proper(P)`, if it fits in `u128`.
    pub total_chains: Option<u128>,
    pub checked_chains: usize,
    pub exhaustive: bool,
    pub failures: Vec<String>,
}

impl CarrierReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each checked chain `σ` of `proper(P)`: one of `i(f(min σ))`,
/// `j(f(max σ))` is proper, and that element is comparable to every element
/// of `C(σ) = [i(f(min σ)), j(f(max σ))] ∩ proper(P)`. Also checks that `σ`
/// and `h(g(σ))` lie in `C(σ)`.
pub fn carrier_cone_check(
    inst: &DissectionInstance,
    max_chains: usize,
    seed: u64,
) -> Result<CarrierReport> {
    carrier_cone_check_with(inst, max_chains, seed, Exec::default())
}

pub fn carrier_cone_check_with(
    inst: &DissectionInstance,
    max_chains: usize,
    seed: u64,
    exec: Exec,
) -> Result<CarrierReport> {
    let pp = proper_part(&inst.p);
    let total = pp.poset.chain_count();
    let exhaustive = total.is_some_and(|t| t <= max_chains as u128);
    let chains: Vec<Vec<u32>> = if exhaustive {
        pp.poset.chains(max_chains as u64, exec)?
    } else {
        sample_chains(&pp, max_chains, seed)
    };
    let maps = build_proof_maps(inst).ok();
    let relation = inst.p.poset().relation();
    let down = relation.transpose();
    let mut proper_mask = vec![0u64; relation.row(0).len()];
    for &x in &pp.elements {
        proper_mask[x / 64] |= 1 << (x % 64);
    }
    let failures: Vec<Option<String>> = exec.map(&chains, |chain| {
        let parent: Vec<usize> = chain.iter().map(|&c| pp.elements[c as usize]).collect();
        let (lo_el, hi_el) = (parent[0], *parent.last().expect("chains are nonempty"));
        let lo = inst.i[inst.f[lo_el]];
        let hi = inst.j[inst.f[hi_el]];
        let names = || {
            parent
                .iter()
                .map(|&x| inst.p.label(x))
                .collect::<Vec<_>>()
                .join(" < ")
        };
        let apex = if !inst.p.is_bound(lo) {
            lo
        } else if !inst.p.is_bound(hi) {
            hi
        } else {
            return Some(format!(
                "chain {}: neither i(f(min)) nor j(f(max)) is proper",
                names()
            ));
        };
        // C(σ) as a bitset over P
        let carrier: Vec<u64> = relation
            .row(lo)
            .iter()
            .zip(down.row(hi))
            .zip(&proper_mask)
            .map(|((a, b), m)| a & b & m)
            .collect();
        if (carrier[apex / 64] >> (apex % 64)) & 1 == 0 {
            return Some(format!(
                "chain {}: apex {} is not in its carrier",
                names(),
                inst.p.label(apex)
            ));
        }
        if let Some(x) = ones(&carrier).find(|&x| !inst.p.leq(x, apex) && !inst.p.leq(apex, x)) {
            return Some(format!(
                "chain {}: {} in the carrier is incomparable to apex {}",
                names(),
                inst.p.label(x),
                inst.p.label(apex)
            ));
        }
        let inside = |x: usize| (carrier[x / 64] >> (x % 64)) & 1 == 1;
        if let Some(&x) = parent.iter().find(|&&x| !inside(x)) {
            return Some(format!(
                "chain {}: {} is not carried",
                names(),
                inst.p.label(x)
            ));
        }
        if let Some(m) = &maps {
            for &c in chain {
                let image = pp.elements[m.h[m.g[c as usize]]];
                if !inside(image) {
                    return Some(format!(
                        "chain {}: h(g({})) = {} is not carried",
                        names(),
                        pp.poset.label(c as usize),
                        inst.p.label(image)
                    ));
                }
            }
        }
        None
    });
    Ok(CarrierReport {
        total_chains: total,
        checked_chains: chains.len(),
        exhaustive,
        failures: failures.into_iter().flatten().take(MAX_WITNESSES).collect(),
    })
}

/// All singletons, up to `budget` maximal chains, then random chains built by
/// walking up through the order until `budget` chains are collected.
fn sample_chains(pp: &ProperPart, budget: usize, seed: u64) -> Vec<Vec<u32>> {
    let n = pp.poset.len();
    let mut out: Vec<Vec<u32>> = (0..n as u32).map(|x| vec![x]).collect();
    out.extend(pp.poset.maximal_chains(budget));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extension = pp.poset.linear_extension();
    let target = out.len() + budget;
    while out.len() < target && n > 0 {
        let mut chain = vec![*extension.choose(&mut rng).expect("nonempty") as u32];
        loop {
            let last = *chain.last().expect("nonempty") as usize;
            let above: Vec<usize> = (0..n).filter(|&y| pp.poset.lt(last, y)).collect();
            if above.is_empty() || rng.gen_bool(0.3) {
                break;
            }
            chain.push(*above.choose(&mut rng).expect("nonempty") as u32);
        }
        out.push(chain);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(n: u32, k: u32, kind: BruhatOrderKind) -> BruhatInstance {
        bruhat_instance(
            GroundParams::new(n, k).unwrap(),
            kind,
            EnumerationLimits::default(),
            Exec::default(),
        )
        .unwrap()
    }

    #[test]
    fn three_one_passes() {
        for kind in [BruhatOrderKind::SingleStep, BruhatOrderKind::Inclusion] {
            let b = instance(3, 1, kind);
            let report = check_conditions(&b.instance);
            assert!(report.all_pass(), "{report:#?}");
            assert_eq!(report.conditions.len(), 5);
            assert_eq!(report.preconditions.len(), 6);
        }
    }

    #[test]
    fn swapped_colours_fail_order_ideal() {
        let mut inst = instance(3, 1, BruhatOrderKind::SingleStep).instance;
        inst.green.iter_mut().for_each(|g| *g = !*g);
        let report = check_conditions(&inst);
        let ideal = &report.conditions[0];
        assert!(!ideal.passed);
        assert!(!ideal.witnesses.is_empty());
    }

    #[test]
    fn one_element_q_fails_precondition() {
        let p = FiniteBoundedPoset::chain(2).unwrap();
        let q = FiniteBoundedPoset::chain(1).unwrap();
        let inst =
            DissectionInstance::new(p, q, vec![true, false], vec![0, 0], vec![0], vec![1]).unwrap();
        let report = check_conditions(&inst);
        assert!(!report.get("0_Q != 1_Q").unwrap().passed);
        assert!(!report.all_pass());
    }

    #[test]
    fn swapped_i_and_j_fail_image_colours() {
        let mut inst = instance(3, 1, BruhatOrderKind::SingleStep).instance;
        std::mem::swap(&mut inst.i, &mut inst.j);
        let report = check_conditions(&inst);
        assert!(!report.conditions[2].passed);
    }

    #[test]
    fn structural_validation() {
        let p = FiniteBoundedPoset::chain(2).unwrap();
        let q = FiniteBoundedPoset::chain(2).unwrap();
        assert!(DissectionInstance::new(
            p.clone(),
            q.clone(),
            vec![true],
            vec![0, 1],
            vec![0, 1],
            vec![0, 1]
        )
        .is_err());
        assert!(DissectionInstance::new(
            p.clone(),
            q.clone(),
            vec![true, false],
            vec![0, 7],
            vec![0, 1],
            vec![0, 1]
        )
        .is_err());
        assert!(
            DissectionInstance::new(p, q, vec![true, false], vec![0, 1], vec![0], vec![0, 1])
                .is_err()
        );
    }

    #[test]
    fn proof_maps_on_three_one() {
        let inst = instance(3, 1, BruhatOrderKind::SingleStep).instance;
        let maps = build_proof_maps(&inst).unwrap();
        assert_eq!(maps.proper_q2.poset.len(), 2);
        assert!(maps.all_pass());
    }

    #[test]
    fn broken_fibre_condition_breaks_g() {
        // Colour a nonzero element of f^-1(0_Q) green: g sends it to the bottom of Q×2.
        let mut inst = instance(3, 1, BruhatOrderKind::SingleStep).instance;
        let offender = (0..inst.p.len())
            .find(|&x| x != inst.p.bottom() && inst.f[x] == inst.q.bottom())
            .unwrap();
        inst.green[offender] = true;
        assert!(!check_conditions(&inst).conditions[4].passed);
        assert!(matches!(
            build_proof_maps(&inst),
            Err(Error::ConditionViolation(_))
        ));
    }

    #[test]
    fn carriers_on_three_one() {
        let inst = instance(3, 1, BruhatOrderKind::SingleStep).instance;
        let report = carrier_cone_check(&inst, 1000, 0).unwrap();
        assert!(report.exhaustive);
        // four singletons and two edges
        assert_eq!(report.checked_chains, 6);
        assert_eq!(report.total_chains, Some(6));
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn singleton_apex_falls_back_to_j() {
        let b = instance(3, 1, BruhatOrderKind::SingleStep);
        let inst = &b.instance;
        // a green proper element with f(p) = 0_Q: i(f(p)) = 0_P, so the apex is j(f(p)).
        let p = (0..inst.p.len())
            .find(|&x| !inst.p.is_bound(x) && inst.green[x] && inst.f[x] == inst.q.bottom());
        // in B(3,1) the fibre over 0_Q is {∅, {{2,3}}}; {{2,3}} is red, so look at the red one
        assert!(p.is_none());
        let red = (0..inst.p.len())
            .find(|&x| !inst.p.is_bound(x) && inst.f[x] == inst.q.bottom())
            .unwrap();
        assert_eq!(inst.i[inst.f[red]], inst.p.bottom());
        assert!(!inst.p.is_bound(inst.j[inst.f[red]]));
    }

    #[test]
    fn sampling_covers_singletons_and_is_seeded() {
        let inst = instance(4, 1, BruhatOrderKind::SingleStep).instance;
        let a = carrier_cone_check(&inst, 10, 7).unwrap();
        let b = carrier_cone_check(&inst, 10, 7).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, b);
        assert!(a.checked_chains >= 22);
        assert!(a.passed());
    }

    #[test]
    fn dual_instance_passes() {
        for kind in [BruhatOrderKind::SingleStep, BruhatOrderKind::Inclusion] {
            let inst = instance(4, 2, kind).instance;
            assert!(check_conditions(&inst.dual()).all_pass());
        }
    }
}
