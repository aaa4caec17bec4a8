//! The higher Bruhat orders `B(n, k)` and `B_⊆(n, k)`.
//!
//! Both orders share the element set (all consistent subsets of the
//! `(k+1)`-subsets of `[n]`). The single-step order is the reachability
//! relation of the digraph that adds one member at a time while staying
//! consistent; the inclusion order is plain set inclusion.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poset::{FiniteBoundedPoset, FinitePoset};
use crate::subsets::{
    binomial, bits_consistent, complement, enumerate_subsets, packets_through_consistent,
    ConsistentSet, GroundParams, KSubset, MemberBits, MAX_UNIVERSE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BruhatOrderKind {
    SingleStep,
    Inclusion,
}

impl BruhatOrderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BruhatOrderKind::SingleStep => "single_step",
            BruhatOrderKind::Inclusion => "inclusion",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "single_step" => Ok(BruhatOrderKind::SingleStep),
            "inclusion" => Ok(BruhatOrderKind::Inclusion),
            other => Err(Error::Parameter(format!(
                "order must be single_step or inclusion, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for BruhatOrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumerationMethod {
    /// Grow from the empty set by consistent single additions.
    Bfs,
    /// Test every subset of the universe.
    Bruteforce,
}

/// Largest universe `C(n, k+1)` each enumeration method accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub bfs: u64,
    pub bruteforce: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            bfs: 64,
            bruteforce: 24,
        }
    }
}

fn sort_key(bits: MemberBits) -> (u32, u128) {
    (bits.count(), bits.0)
}

/// All `(k+1)`-subsets of `[n]`, indexed by rank.
fn universe(params: GroundParams) -> Vec<KSubset> {
    enumerate_subsets(params.n(), params.member_size()).expect("k+1 <= n by construction")
}

/// Every consistent set, ordered by cardinality and then by bitset value.
pub fn consistent_sets(
    params: GroundParams,
    method: EnumerationMethod,
    limits: EnumerationLimits,
    exec: Exec,
) -> Result<Vec<ConsistentSet>> {
    let size = params.universe_size();
    let limit = match method {
        EnumerationMethod::Bfs => limits.bfs,
        EnumerationMethod::Bruteforce => limits.bruteforce,
    };
    if size > limit.min(MAX_UNIVERSE) {
        return Err(Error::Resource {
            what: "C(n, k+1)",
            count: size,
            limit: limit.min(MAX_UNIVERSE),
        });
    }
    if method == EnumerationMethod::Bruteforce && size > 62 {
        return Err(Error::Resource {
            what: "C(n, k+1) for brute force",
            count: size,
            limit: 62,
        });
    }
    let bits = match method {
        EnumerationMethod::Bruteforce => {
            let mut found = exec.filter_map_range(0..1u64 << size, |b| {
                let bits = MemberBits(b as u128);
                bits_consistent(params, bits).then_some(bits)
            });
            found.sort_unstable_by_key(|&b| sort_key(b));
            found
        }
        EnumerationMethod::Bfs => {
            let members = universe(params);
            let mut all = vec![MemberBits::EMPTY];
            let mut level = vec![MemberBits::EMPTY];
            while !level.is_empty() {
                let mut next = exec.flat_map(&level, |&b| {
                    (0..size)
                        .filter(|&r| !b.contains(r))
                        .map(|r| b.with(r))
                        .filter(|nb| {
                            let added = nb.0 & !b.0;
                            let r = added.trailing_zeros() as usize;
                            packets_through_consistent(params, *nb, members[r].elements())
                        })
                        .collect()
                });
                next.sort_unstable_by_key(|&b| sort_key(b));
                next.dedup();
                all.extend_from_slice(&next);
                level = next;
            }
            all
        }
    };
    Ok(bits
        .into_iter()
        .map(|b| ConsistentSet::from_bits_unchecked(params, b))
        .collect())
}

/// The elements of `B(n, k)` together with the single-addition digraph.
#[derive(Debug, Clone)]
pub struct BruhatOrder {
    params: GroundParams,
    kind: BruhatOrderKind,
    elements: Vec<ConsistentSet>,
    index: HashMap<MemberBits, usize>,
    /// `covers[x]` lists `y` with `elements[y] = elements[x] + one member`, ascending.
    covers: Vec<Vec<usize>>,
}

pub fn enumerate_bruhat(
    params: GroundParams,
    kind: BruhatOrderKind,
    method: EnumerationMethod,
) -> Result<BruhatOrder> {
    enumerate_bruhat_with(
        params,
        kind,
        method,
        EnumerationLimits::default(),
        Exec::default(),
    )
}

pub fn enumerate_bruhat_with(
    params: GroundParams,
    kind: BruhatOrderKind,
    method: EnumerationMethod,
    limits: EnumerationLimits,
    exec: Exec,
) -> Result<BruhatOrder> {
    let elements = consistent_sets(params, method, limits, exec)?;
    let index: HashMap<MemberBits, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.bits(), i))
        .collect();
    let members = universe(params);
    let size = params.universe_size();
    let covers: Vec<Result<Vec<usize>>> = exec.map(&elements, |e| {
        let b = e.bits();
        let mut up = Vec::new();
        for r in (0..size).filter(|&r| !b.contains(r)) {
            let nb = b.with(r);
            if packets_through_consistent(params, nb, members[r as usize].elements()) {
                let y = index.get(&nb).copied().ok_or_else(|| {
                    Error::Invariant(format!(
                        "consistent set {} missing from the enumeration",
                        nb.0
                    ))
                })?;
                up.push(y);
            }
        }
        up.sort_unstable();
        Ok(up)
    });
    let covers = covers.into_iter().collect::<Result<Vec<_>>>()?;
    let order = BruhatOrder {
        params,
        kind,
        elements,
        index,
        covers,
    };
    if order.elements.first().map(|e| e.bits()) != Some(MemberBits::EMPTY)
        || order.elements.last().map(|e| e.bits()) != Some(MemberBits::full(size))
    {
        return Err(Error::Invariant(
            "enumeration lacks the empty or the full set".into(),
        ));
    }
    Ok(order)
}

impl BruhatOrder {
    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn kind(&self) -> BruhatOrderKind {
        self.kind
    }

    pub fn elements(&self) -> &[ConsistentSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, set: &ConsistentSet) -> Option<usize> {
        if set.params() != self.params {
            return None;
        }
        self.index.get(&set.bits()).copied()
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn cover_edge_count(&self) -> usize {
        self.covers.iter().map(|c| c.len()).sum()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// The same elements under the other relation.
    pub fn with_kind(&self, kind: BruhatOrderKind) -> BruhatOrder {
        BruhatOrder {
            kind,
            ..self.clone()
        }
    }

    /// `up[x]` = everything reachable from `x` by single additions.
    fn single_step_closure(&self) -> BitMatrix {
        let n = self.elements.len();
        let mut up = BitMatrix::identity(n);
        // covers point to strictly larger cardinality, hence larger index
        for x in (0..n).rev() {
            for &y in &self.covers[x] {
                up.or_row_into(x, y);
            }
        }
        up
    }

    fn inclusion_relation(&self, exec: Exec) -> BitMatrix {
        let n = self.elements.len();
        let idx: Vec<usize> = (0..n).collect();
        let rows: Vec<Vec<usize>> = exec.map(&idx, |&x| {
            let bx = self.elements[x].bits();
            (x..n)
                .filter(|&y| bx.is_subset_of(self.elements[y].bits()))
                .collect()
        });
        let mut up = BitMatrix::new(n);
        for (x, row) in rows.into_iter().enumerate() {
            for y in row {
                up.set(x, y);
            }
        }
        up
    }

    pub fn relation(&self, exec: Exec) -> BitMatrix {
        match self.kind {
            BruhatOrderKind::SingleStep => self.single_step_closure(),
            BruhatOrderKind::Inclusion => self.inclusion_relation(exec),
        }
    }

    pub fn label(&self, x: usize) -> String {
        self.elements[x].to_string()
    }
}

fn same_params(a: &ConsistentSet, b: &ConsistentSet) -> Result<()> {
    if a.params() != b.params() {
        return Err(Error::Parameter(format!(
            "sets live over different parameters {} and {}",
            a.params(),
            b.params()
        )));
    }
    Ok(())
}

pub fn leq_inclusion(u: &ConsistentSet, v: &ConsistentSet) -> Result<bool> {
    same_params(u, v)?;
    Ok(u.bits().is_subset_of(v.bits()))
}

/// Reachability from `u` to `v` through single consistent additions, searched
/// breadth-first one cardinality layer at a time.
pub fn leq_single_step(u: &ConsistentSet, v: &ConsistentSet, order: &BruhatOrder) -> Result<bool> {
    let missing =
        |s: &ConsistentSet| Error::Parameter(format!("{s} is not an element of the order"));
    let from = order.index_of(u).ok_or_else(|| missing(u))?;
    let to = order.index_of(v).ok_or_else(|| missing(v))?;
    if from == to {
        return Ok(true);
    }
    let target_size = v.len();
    let target_bits = v.bits();
    let mut seen = vec![false; order.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &order.covers[x] {
            if y == to {
                return Ok(true);
            }
            let e = &order.elements[y];
            // every set on a path to v is contained in v
            if !seen[y] && e.len() < target_size && e.bits().is_subset_of(target_bits) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}

/// Mask of ranks `C(n-1, k+1)..C(n, k+1)`: the members that contain `n`.
fn members_containing_n(params: GroundParams) -> MemberBits {
    let below = binomial(params.n() as u64 - 1, params.member_size() as u64);
    MemberBits(MemberBits::full(params.universe_size()).0 & !MemberBits::full(below).0)
}

/// Drops every member containing `n`.
pub fn map_f(u: &ConsistentSet) -> Result<ConsistentSet> {
    let small = u.params().shrink()?;
    let bits = MemberBits(u.bits().0 & !members_containing_n(u.params()).0);
    let out = ConsistentSet::from_bits_unchecked(small, bits);
    if !out.is_consistent() {
        return Err(Error::Invariant(format!(
            "f({u}) is inconsistent over [{}]",
            small.n()
        )));
    }
    Ok(out)
}

fn grow(v: &ConsistentSet) -> Result<GroundParams> {
    GroundParams::new(v.params().n() + 1, v.params().k())
}

/// The same members, viewed over `[n+1]`.
pub fn map_i(v: &ConsistentSet) -> Result<ConsistentSet> {
    let big = grow(v)?;
    big.check_bits_fit()?;
    let out = ConsistentSet::from_bits_unchecked(big, v.bits());
    if !out.is_consistent() {
        return Err(Error::Invariant(format!("i({v}) is inconsistent")));
    }
    Ok(out)
}

/// Adds every `(k+1)`-subset of `[n+1]` containing `n+1`.
pub fn map_j(v: &ConsistentSet) -> Result<ConsistentSet> {
    let big = grow(v)?;
    big.check_bits_fit()?;
    let out = ConsistentSet::from_bits_unchecked(
        big,
        MemberBits(v.bits().0 | members_containing_n(big).0),
    );
    if !out.is_consistent() {
        return Err(Error::Invariant(format!("j({v}) is inconsistent")));
    }
    Ok(out)
}

/// Green iff `{n-k, ..., n}` is not a member.
pub fn is_green(u: &ConsistentSet) -> bool {
    !u.contains(&u.params().top_interval())
}

/// A linear order of the `k`-subsets of `[m]` that is lexicographic on the
/// `k`-subsets of each member of the defining consistent set and
/// reverse-lexicographic on those of every other `(k+1)`-subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePermutation {
    pub m: u32,
    pub k: u32,
    pub order: Vec<KSubset>,
}

impl AdmissiblePermutation {
    /// `position[rank]` of each `k`-subset in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, s) in self.order.iter().enumerate() {
            pos[s.rank() as usize] = p;
        }
        pos
    }

    /// Checks the defining property against `v`.
    pub fn is_admissible_for(&self, v: &ConsistentSet) -> bool {
        let pos = self.positions();
        let Ok(bases) = enumerate_subsets(self.m, self.k + 1) else {
            return false;
        };
        bases.iter().all(|q| {
            let ranks: Vec<usize> = lex_faces(q)
                .iter()
                .map(|f| pos[f.rank() as usize])
                .collect();
            if v.contains(q) {
                ranks.windows(2).all(|w| w[0] < w[1])
            } else {
                ranks.windows(2).all(|w| w[0] > w[1])
            }
        })
    }
}

/// The codimension-one faces of `q`, lexicographically increasing.
fn lex_faces(q: &KSubset) -> Vec<KSubset> {
    q.elements().iter().rev().map(|&x| q.without(x)).collect()
}

/// Topological order of the precedence digraph on `k`-subsets of `[m]`,
/// smallest colex rank first among available subsets.
pub fn admissible_permutation(v: &ConsistentSet) -> Result<AdmissiblePermutation> {
    let (m, k) = (v.params().n(), v.params().k());
    let nodes = binomial(m as u64, k as u64) as usize;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut indegree = vec![0usize; nodes];
    for q in enumerate_subsets(m, k + 1)? {
        let mut chain = lex_faces(&q);
        if !v.contains(&q) {
            chain.reverse();
        }
        for w in chain.windows(2) {
            succ[w[0].rank() as usize].push(w[1].rank() as usize);
            indegree[w[1].rank() as usize] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..nodes)
        .filter(|&x| indegree[x] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(nodes);
    while let Some(Reverse(x)) = ready.pop() {
        order.push(KSubset::from_rank(x as u64, k));
        for &y in &succ[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(Reverse(y));
            }
        }
    }
    if order.len() != nodes {
        return Err(Error::ConsistencyViolation(format!(
            "precedence constraints of {v} are cyclic"
        )));
    }
    Ok(AdmissiblePermutation { m, k, order })
}

/// A chain of consistent sets, each one member larger than the previous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildupSequence {
    pub steps: Vec<ConsistentSet>,
}

impl BuildupSequence {
    pub fn first(&self) -> &ConsistentSet {
        &self.steps[0]
    }

    pub fn last(&self) -> &ConsistentSet {
        self.steps.last().expect("a build-up has at least one step")
    }

    /// Every step consistent, every difference a single member containing `n`.
    pub fn verify(&self) -> bool {
        let Some(first) = self.steps.first() else {
            return false;
        };
        let with_n = members_containing_n(first.params());
        self.steps.iter().all(|s| s.is_consistent())
            && self.steps.windows(2).all(|w| {
                let (a, b) = (w[0].bits(), w[1].bits());
                let diff = MemberBits(b.0 & !a.0);
                a.is_subset_of(b) && diff.count() == 1 && diff.is_subset_of(with_n)
            })
    }
}

/// Adds the members of `u` that contain `n` to `i(f(u))` in the order the
/// admissible permutation of `f(u)` lists their truncations, checking
/// consistency after each addition. Witnesses `i(f(u)) <= u` single-step.
pub fn buildup_sequence(u: &ConsistentSet) -> Result<BuildupSequence> {
    let params = u.params();
    let n = params.n();
    let reduced = map_f(u)?;
    let alpha = admissible_permutation(&reduced)?;
    let pos = alpha.positions();
    let mut additions: Vec<KSubset> = u.members().into_iter().filter(|m| m.contains(n)).collect();
    additions.sort_by_key(|m| pos[m.without(n).rank() as usize]);

    let mut current = map_i(&reduced)?;
    let mut steps = vec![current];
    for member in additions {
        let bits = current.bits().with(member.rank());
        if !bits_consistent(params, bits) {
            return Err(Error::TheoremViolation(format!(
                "adding {member} to {current} breaks consistency"
            )));
        }
        current = ConsistentSet::from_bits_unchecked(params, bits);
        steps.push(current);
    }
    if current != *u {
        return Err(Error::TheoremViolation(format!(
            "build-up ended at {current}, not {u}"
        )));
    }
    Ok(BuildupSequence { steps })
}

/// Ascending chain from `u` to `j(f(u))`, obtained by complementing the
/// build-up of the complement.
pub fn dual_buildup_sequence(u: &ConsistentSet) -> Result<BuildupSequence> {
    let c = complement(u)?;
    let up = buildup_sequence(&c)?;
    let mut steps = up
        .steps
        .iter()
        .map(complement)
        .collect::<Result<Vec<_>>>()?;
    steps.reverse();
    let target = map_j(&map_f(u)?)?;
    if steps.last() != Some(&target) || steps.first() != Some(u) {
        return Err(Error::TheoremViolation(format!(
            "dual build-up of {u} does not end at j(f(u))"
        )));
    }
    Ok(BuildupSequence { steps })
}

/// The order as an explicit bounded poset labelled by member lists.
pub fn to_poset(order: &BruhatOrder) -> Result<FiniteBoundedPoset> {
    to_poset_with(order, Exec::default())
}

pub fn to_poset_with(order: &BruhatOrder, exec: Exec) -> Result<FiniteBoundedPoset> {
    let labels = (0..order.len()).map(|x| order.label(x)).collect();
    FiniteBoundedPoset::from_relation(labels, order.relation(exec), order.bottom(), order.top())
}

/// Pair counts under both relations on one element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComparison {
    pub params: GroundParams,
    pub elements: usize,
    pub single_step_pairs: u64,
    pub inclusion_pairs: u64,
    /// Pairs `U ⊆ U'` with `U'` not reachable from `U` by single steps.
    pub inclusion_only: Vec<(usize, usize)>,
    /// Pairs reachable by single steps but not included; always empty for valid input.
    pub single_step_only: Vec<(usize, usize)>,
    /// Whether every cover of the inclusion order adds exactly one member.
    pub inclusion_graded_by_size: bool,
}

pub fn compare_orders(order: &BruhatOrder, exec: Exec) -> OrderComparison {
    let ss = order.single_step_closure();
    let inc = order.inclusion_relation(exec);
    let n = order.len();
    let mut inclusion_only = Vec::new();
    let mut single_step_only = Vec::new();
    let (mut ss_pairs, mut inc_pairs) = (0, 0);
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (a, b) = (ss.get(x, y), inc.get(x, y));
            ss_pairs += a as u64;
            inc_pairs += b as u64;
            if b && !a {
                inclusion_only.push((x, y));
            }
            if a && !b {
                single_step_only.push((x, y));
            }
        }
    }
    let inclusion_graded_by_size = FinitePoset::from_relation(vec![String::new(); n], inc)
        .map(|p| {
            p.covers()
                .iter()
                .all(|&(x, y)| order.elements[y].len() == order.elements[x].len() + 1)
        })
        .unwrap_or(false);
    OrderComparison {
        params: order.params,
        elements: n,
        single_step_pairs: ss_pairs,
        inclusion_pairs: inc_pairs,
        inclusion_only,
        single_step_only,
        inclusion_graded_by_size,
    }
}
