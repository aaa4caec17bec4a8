//! Finite posets given by an explicit relation table.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::bitmatrix::{ones, BitMatrix};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::homology::SimplicialComplex;

/// A finite poset. `up` row `x` holds every `y` with `x <= y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: BitMatrix,
}

impl FinitePoset {
    /// Builds from a relation table after checking the partial-order axioms.
    pub fn from_relation(labels: Vec<String>, leq: BitMatrix) -> Result<Self> {
        let n = labels.len();
        if leq.size() != n {
            return Err(Error::Parameter(format!(
                "{} labels but a {}x{} relation",
                n,
                leq.size(),
                leq.size()
            )));
        }
        for x in 0..n {
            if !leq.get(x, x) {
                return Err(Error::NotAPoset(format!(
                    "relation is not reflexive at {}",
                    labels[x]
                )));
            }
            for y in leq.row_ones(x) {
                if y != x && leq.get(y, x) {
                    return Err(Error::NotAPoset(format!(
                        "{} and {} are mutually related",
                        labels[x], labels[y]
                    )));
                }
                // transitivity: up(y) must be inside up(x)
                if leq.row(y).iter().zip(leq.row(x)).any(|(a, b)| a & !b != 0) {
                    return Err(Error::NotAPoset(format!(
                        "relation is not transitive through {} <= {}",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        Ok(FinitePoset { labels, up: leq })
    }

    /// Reflexive-transitive closure of a cover digraph.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Parameter(format!(
                    "cover ({a}, {b}) references a missing element"
                )));
            }
            if a == b {
                return Err(Error::NotAPoset(format!("self-cover at {}", labels[a])));
            }
            succ[a].push(b);
            indegree[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(Error::NotAPoset(format!(
                "cover digraph has a cycle through {}",
                labels[stuck]
            )));
        }
        let mut up = BitMatrix::identity(n);
        for &v in topo.iter().rev() {
            for &w in &succ[v] {
                up.or_row_into(v, w);
            }
        }
        Ok(FinitePoset { labels, up })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.up.get(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.up
    }

    /// All `(x, y)` with `x <= y`, `x != y`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| {
            self.up
                .row_ones(x)
                .filter(move |&y| y != x)
                .map(move |y| (x, y))
        })
    }

    pub fn comparable_pair_count(&self) -> u64 {
        (0..self.len())
            .map(|x| self.up.row_count(x) as u64 - 1)
            .sum()
    }

    /// Transitive reduction, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            let mut strict: Vec<u64> = self.up.row(x).to_vec();
            strict[x / 64] &= !(1 << (x % 64));
            let mut reach_past = vec![0u64; strict.len()];
            for z in ones(&strict) {
                let row = self.up.row(z);
                for (i, acc) in reach_past.iter_mut().enumerate() {
                    let mut w = row[i];
                    if i == z / 64 {
                        w &= !(1 << (z % 64));
                    }
                    *acc |= w;
                }
            }
            let cover_words: Vec<u64> = strict
                .iter()
                .zip(&reach_past)
                .map(|(s, r)| s & !r)
                .collect();
            out.extend(ones(&cover_words).map(|y| (x, y)));
        }
        out
    }

    /// A linear extension, ties broken by index: sorted by down-set size.
    pub fn linear_extension(&self) -> Vec<usize> {
        let down = self.up.transpose();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (down.row_count(x), x));
        order
    }

    /// Induced subposet on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> FinitePoset {
        let mut up = BitMatrix::new(keep.len());
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.leq(x, y) {
                    up.set(a, b);
                }
            }
        }
        FinitePoset {
            labels: keep.iter().map(|&x| self.labels[x].clone()).collect(),
            up,
        }
    }

    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            labels: self.labels.clone(),
            up: self.up.transpose(),
        }
    }

    /// Unique minimal and maximal elements, if they exist.
    pub fn find_bounds(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let bottom = (0..n).find(|&x| self.up.row_count(x) == n)?;
        let top = (0..n).find(|&y| (0..n).all(|x| self.leq(x, y)))?;
        Some((bottom, top))
    }

    /// Number of nonempty chains, or `None` if it exceeds `u128`.
    pub fn chain_count(&self) -> Option<u128> {
        let order = self.linear_extension();
        let mut ending_at = vec![0u128; self.len()];
        let mut total: u128 = 0;
        for (pos, &v) in order.iter().enumerate() {
            let mut c: u128 = 1;
            for &u in &order[..pos] {
                if self.lt(u, v) {
                    c = c.checked_add(ending_at[u])?;
                }
            }
            ending_at[v] = c;
            total = total.checked_add(c)?;
        }
        Some(total)
    }

    /// Strict up-sets re-indexed by position in the linear extension.
    fn strict_up_in_extension_order(&self) -> (Vec<usize>, BitMatrix) {
        let order = self.linear_extension();
        let mut pos = vec![0usize; self.len()];
        for (p, &x) in order.iter().enumerate() {
            pos[x] = p;
        }
        let mut strict = BitMatrix::new(self.len());
        for x in 0..self.len() {
            for y in self.up.row_ones(x) {
                if y != x {
                    strict.set(pos[x], pos[y]);
                }
            }
        }
        (order, strict)
    }

    /// Every nonempty chain as a list of element indices in increasing order
    /// of the poset. Chains starting at different elements are produced by
    /// independent workers and concatenated in linear-extension order.
    pub fn chains(&self, budget: u64, exec: Exec) -> Result<Vec<Vec<u32>>> {
        let (order, strict) = self.strict_up_in_extension_order();
        let emitted = AtomicU64::new(0);
        let starts: Vec<usize> = (0..self.len()).collect();
        let per_start: Vec<Result<Vec<Vec<u32>>>> = exec.map(&starts, |&s| {
            let mut out = Vec::new();
            let mut chain = vec![s];
            extend_chains(
                &strict,
                &mut chain,
                strict.row(s).to_vec(),
                &mut out,
                &emitted,
                budget,
            )?;
            Ok(out
                .into_iter()
                .map(|c| c.into_iter().map(|p| order[p] as u32).collect())
                .collect())
        });
        let mut all = Vec::new();
        for part in per_start {
            all.extend(part?);
        }
        Ok(all)
    }

    /// Maximal chains, in depth-first order, at most `limit` of them.
    pub fn maximal_chains(&self, limit: usize) -> Vec<Vec<u32>> {
        let (order, strict) = self.strict_up_in_extension_order();
        let down = strict.transpose();
        let mut out = Vec::new();
        for s in 0..self.len() {
            if down.row_count(s) != 0 {
                continue;
            }
            let mut chain = vec![s];
            maximal_from(&strict, &mut chain, &mut out, limit);
            if out.len() >= limit {
                break;
            }
        }
        out.into_iter()
            .map(|c| c.into_iter().map(|p| order[p] as u32).collect())
            .collect()
    }
}

fn extend_chains(
    strict: &BitMatrix,
    chain: &mut Vec<usize>,
    candidates: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
    emitted: &AtomicU64,
    budget: u64,
) -> Result<()> {
    let seen = emitted.fetch_add(1, AtomicOrdering::Relaxed) + 1;
    if seen > budget {
        return Err(Error::Resource {
            what: "chains",
            count: seen,
            limit: budget,
        });
    }
    out.push(chain.clone());
    for w in ones(&candidates) {
        let next: Vec<u64> = candidates
            .iter()
            .zip(strict.row(w))
            .map(|(a, b)| a & b)
            .collect();
        chain.push(w);
        extend_chains(strict, chain, next, out, emitted, budget)?;
        chain.pop();
    }
    Ok(())
}

/// Maximal chains extending `chain` upward. Only saturated steps (covers)
/// are taken, so every produced chain is maximal when it starts at a minimal element.
fn maximal_from(
    strict: &BitMatrix,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let last = *chain.last().expect("chain is nonempty");
    let above: Vec<usize> = strict.row_ones(last).collect();
    let covers: Vec<usize> = above
        .iter()
        .copied()
        .filter(|&y| !above.iter().any(|&z| z != y && strict.get(z, y)))
        .collect();
    if covers.is_empty() {
        out.push(chain.clone());
        return;
    }
    for y in covers {
        chain.push(y);
        maximal_from(strict, chain, out, limit);
        chain.pop();
        if out.len() >= limit {
            return;
        }
    }
}

/// A finite poset with a least element `bottom` and a greatest element `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoundedPoset {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
}

impl FiniteBoundedPoset {
    pub fn new(poset: FinitePoset, bottom: usize, top: usize) -> Result<Self> {
        let n = poset.len();
        if bottom >= n || top >= n {
            return Err(Error::NotBounded("bottom or top is not an element".into()));
        }
        if let Some(x) = (0..n).find(|&x| !poset.leq(bottom, x)) {
            return Err(Error::NotBounded(format!(
                "{} is not below {}",
                poset.label(bottom),
                poset.label(x)
            )));
        }
        if let Some(x) = (0..n).find(|&x| !poset.leq(x, top)) {
            return Err(Error::NotBounded(format!(
                "{} is not below {}",
                poset.label(x),
                poset.label(top)
            )));
        }
        Ok(FiniteBoundedPoset { poset, bottom, top })
    }

    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(usize, usize)],
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        Self::new(FinitePoset::from_covers(labels, covers)?, bottom, top)
    }

    pub fn from_relation(
        labels: Vec<String>,
        leq: BitMatrix,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        Self::new(FinitePoset::from_relation(labels, leq)?, bottom, top)
    }

    /// The chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::NotBounded("the empty poset has no bounds".into()));
        }
        let labels = (0..len).map(|i| i.to_string()).collect();
        let covers: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers, 0, len - 1)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn is_bound(&self, x: usize) -> bool {
        x == self.bottom || x == self.top
    }

    pub fn dual(&self) -> FiniteBoundedPoset {
        FiniteBoundedPoset {
            poset: self.poset.dual(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

/// `P` without its bottom and top, with the induced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperPart {
    /// Parent index of each element, ascending.
    pub elements: Vec<usize>,
    pub poset: FinitePoset,
}

impl ProperPart {
    /// Position of a parent element inside the proper part.
    pub fn position(&self, parent_index: usize) -> Option<usize> {
        self.elements.binary_search(&parent_index).ok()
    }
}

pub fn proper_part(p: &FiniteBoundedPoset) -> ProperPart {
    let elements: Vec<usize> = (0..p.len()).filter(|&x| !p.is_bound(x)).collect();
    let poset = p.poset().induced(&elements);
    ProperPart { elements, poset }
}

/// `Q x {0, 1}` with the componentwise order. Element `(q, b)` has index
/// `2q + b` and label `(label_q,b)`.
pub fn product_with_two_chain(q: &FiniteBoundedPoset) -> FiniteBoundedPoset {
    let n = q.len();
    let labels = (0..2 * n)
        .map(|x| format!("({},{})", q.label(x / 2), x % 2))
        .collect();
    let mut up = BitMatrix::new(2 * n);
    for x in 0..n {
        for y in q.poset().relation().row_ones(x) {
            up.set(2 * x, 2 * y);
            up.set(2 * x, 2 * y + 1);
            up.set(2 * x + 1, 2 * y + 1);
        }
    }
    FiniteBoundedPoset {
        poset: FinitePoset { labels, up },
        bottom: 2 * q.bottom(),
        top: 2 * q.top() + 1,
    }
}

/// Order complex: one simplex per chain, vertices are the poset's elements.
pub fn order_complex(p: &FinitePoset, budget: u64, exec: Exec) -> Result<SimplicialComplex> {
    let mut chains = p.chains(budget, exec)?;
    for c in &mut chains {
        c.sort_unstable();
    }
    SimplicialComplex::from_closed_simplices(p.labels().to_vec(), chains)
}

/// An assignment of target elements to source elements.
#[derive(Debug, Clone)]
pub struct MonotoneMap<'a> {
    pub source: &'a FinitePoset,
    pub target: &'a FinitePoset,
    pub images: &'a [usize],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCheck {
    pub monotone: bool,
    /// Source pairs `x < y` whose images are not ordered.
    pub violations: Vec<(usize, usize)>,
}

impl MonotoneMap<'_> {
    pub fn check_monotone(&self) -> MonotoneCheck {
        let violations: Vec<(usize, usize)> = self
            .source
            .strict_pairs()
            .filter(|&(x, y)| !self.target.leq(self.images[x], self.images[y]))
            .collect();
        MonotoneCheck {
            monotone: violations.is_empty(),
            violations,
        }
    }
}

pub fn check_monotone(map: &MonotoneMap<'_>) -> MonotoneCheck {
    map.check_monotone()
}
