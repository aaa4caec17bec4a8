//! Subsets of `[n]`, packets and the consistency predicate.
//!
//! Every `r`-subset of `[n] = {1, ..., n}` is indexed by its colexicographic
//! rank, `rank({c_1 < ... < c_r}) = sum_i C(c_i - 1, i)`. The rank does not
//! depend on `n`, so a subset of `[n-1]` keeps its index when viewed inside
//! `[n]`. A [`ConsistentSet`] stores membership as a bitset over these ranks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 64;

/// Largest universe `C(n, k+1)` a [`MemberBits`] can index.
pub const MAX_UNIVERSE: u64 = 128;

const fn binomial_table() -> [[u64; 66]; 66] {
    let mut t = [[0u64; 66]; 66];
    let mut n = 0;
    while n < 66 {
        t[n][0] = 1;
        let mut r = 1;
        while r <= n {
            // C(64, 32) < 2^63, so nothing here overflows.
            t[n][r] = t[n - 1][r - 1].saturating_add(t[n - 1][r]);
            r += 1;
        }
        n += 1;
    }
    t
}

static BINOMIAL: [[u64; 66]; 66] = binomial_table();

/// `C(n, r)`, zero when `r > n`. Saturates for arguments beyond the table.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    if n < 66 {
        return BINOMIAL[n as usize][r as usize];
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundParams {
    n: u32,
    k: u32,
}

impl GroundParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        if n > MAX_N {
            return Err(Error::Parameter(format!(
                "n = {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        if k >= n {
            return Err(Error::Parameter(format!(
                "need 0 <= k <= n-1, got n = {n}, k = {k}"
            )));
        }
        Ok(GroundParams { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Size of the members of a consistent set, `k + 1`.
    pub fn member_size(&self) -> u32 {
        self.k + 1
    }

    /// `C(n, k+1)`.
    pub fn universe_size(&self) -> u64 {
        binomial(self.n as u64, self.k as u64 + 1)
    }

    /// Number of packets, `C(n, k+2)`.
    pub fn packet_count(&self) -> u64 {
        binomial(self.n as u64, self.k as u64 + 2)
    }

    /// Parameters `(n-1, k)` of the smaller order the Theorem's maps land in.
    pub fn shrink(&self) -> Result<GroundParams> {
        if self.n < self.k + 2 {
            return Err(Error::Precondition(format!(
                "need n >= k+2 to drop n, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        GroundParams::new(self.n - 1, self.k)
    }

    /// The interval `{n-k, ..., n}`; its membership decides the colour.
    pub fn top_interval(&self) -> KSubset {
        KSubset::new_unchecked((self.n - self.k..=self.n).collect())
    }

    pub(crate) fn check_bits_fit(&self) -> Result<()> {
        let u = self.universe_size();
        if u > MAX_UNIVERSE {
            return Err(Error::Resource {
                what: "C(n, k+1)",
                count: u,
                limit: MAX_UNIVERSE,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

/// A subset of `[n]` given by its strictly increasing elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSubset {
    elements: Vec<u32>,
    rank: u64,
}

/// Colex rank of a strictly increasing, 1-based element list.
pub fn colex_rank(elements: &[u32]) -> u64 {
    elements
        .iter()
        .enumerate()
        .map(|(i, &e)| binomial(e as u64 - 1, i as u64 + 1))
        .sum()
}

impl KSubset {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.iter().any(|&e| e == 0 || e > MAX_N) {
            return Err(Error::Parameter(format!(
                "subset elements must lie in 1..={MAX_N}: {elements:?}"
            )));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!(
                "subset elements must be strictly increasing: {elements:?}"
            )));
        }
        Ok(Self::new_unchecked(elements))
    }

    pub(crate) fn new_unchecked(elements: Vec<u32>) -> Self {
        let rank = colex_rank(&elements);
        KSubset { elements, rank }
    }

    /// Inverse of [`KSubset::rank`] among subsets of size `size`.
    pub fn from_rank(mut rank: u64, size: u32) -> Self {
        let mut elements = vec![0u32; size as usize];
        for i in (1..=size as u64).rev() {
            // largest c with C(c, i) <= rank
            let mut c = i - 1;
            while binomial(c + 1, i) <= rank {
                c += 1;
            }
            rank -= binomial(c, i);
            elements[i as usize - 1] = c as u32 + 1;
        }
        Self::new_unchecked(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_within(&self, n: u32) -> bool {
        self.max().is_none_or(|m| m <= n)
    }

    pub fn without(&self, x: u32) -> KSubset {
        Self::new_unchecked(self.elements.iter().copied().filter(|&e| e != x).collect())
    }

    pub fn with(&self, x: u32) -> KSubset {
        let mut e = self.elements.clone();
        if let Err(pos) = e.binary_search(&x) {
            e.insert(pos, x);
        }
        Self::new_unchecked(e)
    }

    pub fn cmp_lex(&self, other: &KSubset) -> Ordering {
        self.elements.cmp(&other.elements)
    }

    pub fn cmp_colex(&self, other: &KSubset) -> Ordering {
        self.elements.iter().rev().cmp(other.elements.iter().rev())
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for KSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| {
                Error::Parameter(format!("expected a subset like {{1,2}}, got {s:?}"))
            })?;
        let elements = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parameter(format!("bad subset element {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        KSubset::new(elements)
    }
}

/// Steps `c` (1-based, strictly increasing, all `<= n`) to the next subset in
/// colex order. Returns `false` once the last subset has been passed.
pub(crate) fn next_colex(c: &mut [u32], n: u32) -> bool {
    let r = c.len();
    for i in 0..r {
        let limit = if i + 1 < r { c[i + 1] } else { n + 1 };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, slot) in c.iter_mut().enumerate().take(i) {
                *slot = j as u32 + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit` on every `r`-subset of `[n]` in colex order; stops early when
/// `visit` returns `false`. Returns whether the sweep ran to completion.
pub(crate) fn for_each_combination(n: u32, r: u32, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    if r > n {
        return true;
    }
    let mut c: Vec<u32> = (1..=r).collect();
    loop {
        if !visit(&c) {
            return false;
        }
        if !next_colex(&mut c, n) {
            return true;
        }
    }
}

/// All `r`-subsets of `[n]` in colex rank order.
pub fn enumerate_subsets(n: u32, r: u32) -> Result<Vec<KSubset>> {
    if r > n {
        return Err(Error::Parameter(format!(
            "cannot choose {r} elements from [{n}]"
        )));
    }
    if n > MAX_N {
        return Err(Error::Parameter(format!("n = {n} exceeds {MAX_N}")));
    }
    let mut out = Vec::with_capacity(binomial(n as u64, r as u64).min(1 << 20) as usize);
    for_each_combination(n, r, |c| {
        out.push(KSubset::new_unchecked(c.to_vec()));
        true
    });
    Ok(out)
}

/// The `k+2` subsets of size `k+1` of a `(k+2)`-subset, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Packet {
    base: KSubset,
    members: Vec<KSubset>,
}

impl Packet {
    pub fn base(&self) -> &KSubset {
        &self.base
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }
}

impl fmt::Display for Packet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "packet {}", self.base)
    }
}

pub fn packet_of(base: &KSubset, k: u32) -> Result<Packet> {
    if base.len() != k as usize + 2 {
        return Err(Error::Parameter(format!(
            "packet base {base} must have {} elements for k = {k}",
            k + 2
        )));
    }
    let m = base.len();
    // Deleting a larger element yields a lexicographically smaller member.
    let members = (0..m)
        .map(|t| base.without(base.elements[m - 1 - t]))
        .collect();
    Ok(Packet {
        base: base.clone(),
        members,
    })
}

/// Membership bitset indexed by colex rank.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberBits(pub u128);

impl MemberBits {
    pub const EMPTY: MemberBits = MemberBits(0);

    /// All ranks `0..size`.
    pub fn full(size: u64) -> MemberBits {
        debug_assert!(size <= MAX_UNIVERSE);
        if size >= 128 {
            MemberBits(u128::MAX)
        } else {
            MemberBits((1u128 << size) - 1)
        }
    }

    #[inline]
    pub fn contains(self, rank: u64) -> bool {
        rank < 128 && (self.0 >> rank) & 1 == 1
    }

    #[inline]
    pub fn with(self, rank: u64) -> MemberBits {
        MemberBits(self.0 | (1u128 << rank))
    }

    #[inline]
    pub fn without(self, rank: u64) -> MemberBits {
        MemberBits(self.0 & !(1u128 << rank))
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_subset_of(self, other: MemberBits) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn ranks(self) -> impl Iterator<Item = u64> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let r = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(r)
            }
        })
    }
}

/// Membership pattern of `bits` on the packet with base `base`: bit `t` is set
/// iff the `t`-th member in lex order is present.
#[inline]
fn packet_pattern(bits: MemberBits, base: &[u32]) -> u32 {
    let m = base.len();
    // rank(base minus index i) = sum_{j<i} C(c_j, j+1) + sum_{j>i} C(c_j, j)
    let mut same = [0u64; (MAX_N + 2) as usize];
    let mut shifted = [0u64; (MAX_N + 2) as usize];
    for (j, &e) in base.iter().enumerate() {
        same[j] = binomial(e as u64 - 1, j as u64 + 1);
        shifted[j] = binomial(e as u64 - 1, j as u64);
    }
    let total_shifted: u64 = shifted[..m].iter().sum();
    let mut pattern = 0u32;
    let mut prefix_same = 0u64;
    let mut suffix_shifted = total_shifted;
    for i in 0..m {
        suffix_shifted -= shifted[i];
        let rank = prefix_same + suffix_shifted;
        if bits.contains(rank) {
            // member t = base minus index m-1-t
            pattern |= 1 << (m - 1 - i);
        }
        prefix_same += same[i];
    }
    pattern
}

/// Empty, full, a prefix or a suffix of `0..width`.
#[inline]
fn is_segment(pattern: u32, width: usize) -> bool {
    let full = if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    };
    let rest = full ^ pattern;
    pattern & pattern.wrapping_add(1) == 0 || rest & rest.wrapping_add(1) == 0
}

/// Checks every packet of `[n]` against `bits`.
pub(crate) fn bits_consistent(params: GroundParams, bits: MemberBits) -> bool {
    let m = params.k + 2;
    for_each_combination(params.n, m, |base| {
        is_segment(packet_pattern(bits, base), m as usize)
    })
}

/// Checks only the packets whose base contains `member` (a `(k+1)`-subset).
/// When `bits` differs from a consistent set exactly in `member`, this decides
/// consistency of `bits`.
pub(crate) fn packets_through_consistent(
    params: GroundParams,
    bits: MemberBits,
    member: &[u32],
) -> bool {
    let m = member.len() + 1;
    let mut base = [0u32; (MAX_N + 1) as usize];
    for x in 1..=params.n {
        if member.binary_search(&x).is_ok() {
            continue;
        }
        let mut w = 0;
        let mut placed = false;
        for &e in member {
            if !placed && x < e {
                base[w] = x;
                w += 1;
                placed = true;
            }
            base[w] = e;
            w += 1;
        }
        if !placed {
            base[w] = x;
        }
        if !is_segment(packet_pattern(bits, &base[..m]), m) {
            return false;
        }
    }
    true
}

fn bits_from_members(params: GroundParams, members: &[KSubset]) -> Result<MemberBits> {
    params.check_bits_fit()?;
    let size = params.member_size() as usize;
    let mut bits = MemberBits::EMPTY;
    for s in members {
        if s.len() != size || !s.is_within(params.n) {
            return Err(Error::Parameter(format!(
                "{s} is not a {size}-subset of [{}]",
                params.n
            )));
        }
        bits = bits.with(s.rank());
    }
    Ok(bits)
}

fn violating_bases(params: GroundParams, bits: MemberBits) -> Vec<KSubset> {
    let m = params.k + 2;
    let mut out = Vec::new();
    for_each_combination(params.n, m, |base| {
        if !is_segment(packet_pattern(bits, base), m as usize) {
            out.push(KSubset::new_unchecked(base.to_vec()));
        }
        true
    });
    out
}

/// Whether `members` meets every packet in an empty, full, prefix or suffix segment.
pub fn is_consistent(members: &[KSubset], params: GroundParams) -> Result<bool> {
    let bits = bits_from_members(params, members)?;
    Ok(bits_consistent(params, bits))
}

/// The packets on which `members` fails the segment condition, in colex order of their bases.
pub fn violating_packets(members: &[KSubset], params: GroundParams) -> Result<Vec<Packet>> {
    let bits = bits_from_members(params, members)?;
    violating_bases(params, bits)
        .iter()
        .map(|b| packet_of(b, params.k))
        .collect()
}

/// A consistent family of `(k+1)`-subsets of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConsistentSet {
    params: GroundParams,
    bits: MemberBits,
}

impl ConsistentSet {
    pub fn empty(params: GroundParams) -> Result<Self> {
        params.check_bits_fit()?;
        Ok(ConsistentSet {
            params,
            bits: MemberBits::EMPTY,
        })
    }

    pub fn full(params: GroundParams) -> Result<Self> {
        params.check_bits_fit()?;
        Ok(ConsistentSet {
            params,
            bits: MemberBits::full(params.universe_size()),
        })
    }

    pub fn from_members(params: GroundParams, members: &[KSubset]) -> Result<Self> {
        let bits = bits_from_members(params, members)?;
        Self::from_bits(params, bits)
    }

    pub fn from_bits(params: GroundParams, bits: MemberBits) -> Result<Self> {
        params.check_bits_fit()?;
        if !bits.is_subset_of(MemberBits::full(params.universe_size())) {
            return Err(Error::Parameter(format!(
                "bitset has ranks outside 0..{}",
                params.universe_size()
            )));
        }
        if let Some(b) = violating_bases(params, bits).first() {
            return Err(Error::ConsistencyViolation(format!(
                "segment condition fails on packet {b}"
            )));
        }
        Ok(ConsistentSet { params, bits })
    }

    /// Skips the packet scan. Operations that rely on consistency report
    /// corrupted input as [`Error::ConsistencyViolation`] instead of panicking.
    pub fn from_bits_unchecked(params: GroundParams, bits: MemberBits) -> Self {
        ConsistentSet { params, bits }
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn bits(&self) -> MemberBits {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits.0 == 0
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        s.len() == self.params.member_size() as usize
            && s.is_within(self.params.n)
            && self.bits.contains(s.rank())
    }

    /// Members in colex rank order.
    pub fn members(&self) -> Vec<KSubset> {
        let size = self.params.member_size();
        self.bits
            .ranks()
            .map(|r| KSubset::from_rank(r, size))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        bits_consistent(self.params, self.bits)
    }
}

/// Members listed in lexicographic order, e.g. `{{1,2},{1,3}}`.
impl fmt::Display for ConsistentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut members = self.members();
        members.sort_by(|a, b| a.cmp_lex(b));
        f.write_str("{")?;
        for (i, m) in members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Elements of `[n]` strictly between `min I` and `max I` that are missing from `I`.
pub fn internal_gaps(subset: &KSubset, n: u32) -> Result<Vec<u32>> {
    let (lo, hi) = match (subset.min(), subset.max()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::Parameter("internal gaps of the empty set".into())),
    };
    if hi > n {
        return Err(Error::Parameter(format!(
            "{subset} is not a subset of [{n}]"
        )));
    }
    Ok((lo + 1..hi).filter(|&j| !subset.contains(j)).collect())
}

/// The descent from the smallest-rank member of `set` to a gap-free member.
/// Each entry has strictly fewer internal gaps than its predecessor; the last
/// one is an interval.
pub fn interval_descent(set: &ConsistentSet) -> Result<Vec<KSubset>> {
    let n = set.params.n;
    let first = set
        .bits
        .ranks()
        .next()
        .ok_or_else(|| Error::Precondition("the empty set contains no interval".into()))?;
    let mut current = KSubset::from_rank(first, set.params.member_size());
    let mut path = vec![current.clone()];
    loop {
        let gaps = internal_gaps(&current, n)?;
        let Some(&gap) = gaps.first() else {
            return Ok(path);
        };
        let base = current.with(gap);
        let (lo, hi) = (current.min().unwrap_or(0), current.max().unwrap_or(0));
        let next = [base.without(lo), base.without(hi)]
            .into_iter()
            .find(|c| set.bits.contains(c.rank()))
            .ok_or_else(|| {
                Error::ConsistencyViolation(format!(
                    "{current} is in the set but neither end of packet {base} is"
                ))
            })?;
        let next_gaps = internal_gaps(&next, n)?.len();
        if next_gaps >= gaps.len() {
            return Err(Error::Invariant(format!(
                "descent from {current} to {next} did not reduce the gap count"
            )));
        }
        current = next;
        path.push(current.clone());
    }
}

/// A member of the non-empty consistent set `set` without internal gaps.
pub fn find_interval(set: &ConsistentSet) -> Result<KSubset> {
    let mut path = interval_descent(set)?;
    Ok(path.pop().expect("descent path is never empty"))
}

/// The complementary family `C([n], k+1) \ U`.
pub fn complement(set: &ConsistentSet) -> Result<ConsistentSet> {
    let full = MemberBits::full(set.params.universe_size());
    let bits = MemberBits(full.0 & !set.bits.0);
    if !bits_consistent(set.params, bits) {
        return Err(Error::Invariant(format!(
            "complement of {set} is inconsistent"
        )));
    }
    Ok(ConsistentSet {
        params: set.params,
        bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> KSubset {
        KSubset::new(e.to_vec()).unwrap()
    }

    fn p(n: u32, k: u32) -> GroundParams {
        GroundParams::new(n, k).unwrap()
    }

    /// Recursive generator in lexicographic order, independent of the colex walker.
    fn recursive_subsets(n: u32, r: u32) -> Vec<Vec<u32>> {
        fn go(start: u32, n: u32, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == r as usize {
                out.push(cur.clone());
                return;
            }
            for x in start..=n {
                cur.push(x);
                go(x + 1, n, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(1, n, r, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn params_validation() {
        assert!(GroundParams::new(0, 0).is_err());
        assert!(GroundParams::new(3, 3).is_err());
        assert!(GroundParams::new(3, 2).is_ok());
        assert!(GroundParams::new(65, 1).is_err());
        assert!(p(3, 2).shrink().is_err());
        assert_eq!(p(4, 2).shrink().unwrap(), p(3, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(70, 3), 54_740);
    }

    #[test]
    fn enumerate_small_cases() {
        let got: Vec<String> = enumerate_subsets(3, 2)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(got, ["{1,2}", "{1,3}", "{2,3}"]);
        let empty = enumerate_subsets(5, 0).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
        assert!(enumerate_subsets(2, 3).is_err());
    }

    #[test]
    fn enumerate_matches_recursive_generator() {
        for n in 0..=8 {
            for r in 0..=n {
                let walked = enumerate_subsets(n, r).unwrap();
                let mut reference = recursive_subsets(n, r);
                reference.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
                let walked_elems: Vec<Vec<u32>> =
                    walked.iter().map(|x| x.elements().to_vec()).collect();
                assert_eq!(walked_elems, reference, "n={n} r={r}");
                for (i, x) in walked.iter().enumerate() {
                    assert_eq!(x.rank(), i as u64);
                    assert_eq!(KSubset::from_rank(i as u64, r), *x);
                }
            }
        }
        let four_two = enumerate_subsets(4, 2).unwrap();
        assert_eq!(four_two.len(), 6);
        assert_eq!(four_two.last().unwrap(), &s(&[3, 4]));
    }

    #[test]
    fn rank_is_stable_when_n_grows() {
        let small = enumerate_subsets(5, 3).unwrap();
        let big = enumerate_subsets(7, 3).unwrap();
        assert_eq!(&big[..small.len()], &small[..]);
    }

    #[test]
    fn subset_parsing() {
        assert_eq!("{1,2,4}".parse::<KSubset>().unwrap(), s(&[1, 2, 4]));
        assert_eq!(" { 3 , 5 } ".parse::<KSubset>().unwrap(), s(&[3, 5]));
        assert!("{}".parse::<KSubset>().unwrap().is_empty());
        assert!("{2,1}".parse::<KSubset>().is_err());
        assert!("1,2".parse::<KSubset>().is_err());
        assert!("{0}".parse::<KSubset>().is_err());
    }

    #[test]
    fn packets() {
        let pk = packet_of(&s(&[1, 2, 3]), 1).unwrap();
        assert_eq!(pk.members(), &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
        let pk = packet_of(&s(&[1, 2, 4]), 1).unwrap();
        assert_eq!(pk.members(), &[s(&[1, 2]), s(&[1, 4]), s(&[2, 4])]);
        let pk = packet_of(&s(&[1, 2, 3, 4]), 2).unwrap();
        let mut sorted = pk.members().to_vec();
        sorted.sort_by(|a, b| a.cmp_lex(b));
        assert_eq!(pk.members(), &sorted[..]);
        assert_eq!(
            pk.members(),
            &[s(&[1, 2, 3]), s(&[1, 2, 4]), s(&[1, 3, 4]), s(&[2, 3, 4])]
        );
        assert!(packet_of(&s(&[1, 2]), 1).is_err());
    }

    #[test]
    fn packet_pattern_matches_members() {
        for base in enumerate_subsets(7, 4).unwrap() {
            let pk = packet_of(&base, 2).unwrap();
            assert_eq!(pk.members()[0], base.without(base.max().unwrap()));
            assert_eq!(pk.members()[3], base.without(base.min().unwrap()));
            for t in 0..4 {
                let bits = MemberBits::EMPTY.with(pk.members()[t].rank());
                assert_eq!(packet_pattern(bits, base.elements()), 1 << t);
            }
        }
    }

    #[test]
    fn consistency_examples() {
        let params = p(3, 1);
        assert!(is_consistent(&[], params).unwrap());
        assert!(is_consistent(&enumerate_subsets(3, 2).unwrap(), params).unwrap());
        let bad = [s(&[1, 2]), s(&[2, 3])];
        assert!(!is_consistent(&bad, params).unwrap());
        let v = violating_packets(&bad, params).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].base(), &s(&[1, 2, 3]));
        assert!(is_consistent(&[s(&[1, 2, 3])], params).is_err());
        assert!(is_consistent(&[s(&[1, 4])], params).is_err());
    }

    #[test]
    fn violating_packets_in_four() {
        let bad = [s(&[1, 2]), s(&[2, 3])];
        let v = violating_packets(&bad, p(4, 1)).unwrap();
        let bases: Vec<&KSubset> = v.iter().map(|x| x.base()).collect();
        assert!(bases.contains(&&s(&[1, 2, 3])));
        assert!(!bases.contains(&&s(&[1, 2, 4])));
        // {1,2,4}: members 12 < 14 < 24, only 12 present -> prefix, fine.
        // {2,3,4}: members 23 < 24 < 34, only 23 present -> prefix, fine.
        // {1,3,4}: no members present.
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn segment_predicate() {
        assert!(is_segment(0b000, 3));
        assert!(is_segment(0b111, 3));
        assert!(is_segment(0b001, 3));
        assert!(is_segment(0b011, 3));
        assert!(is_segment(0b110, 3));
        assert!(is_segment(0b100, 3));
        assert!(!is_segment(0b101, 3));
        assert!(!is_segment(0b010, 3));
    }

    #[test]
    fn incremental_check_agrees_with_full_scan() {
        let params = p(5, 2);
        let u = params.universe_size();
        let all = enumerate_subsets(5, 3).unwrap();
        // sample of consistent sets: those reachable by a few additions from the empty set
        let mut frontier = vec![MemberBits::EMPTY];
        for _ in 0..4 {
            let mut next = Vec::new();
            for &b in &frontier {
                for r in 0..u {
                    if b.contains(r) {
                        continue;
                    }
                    let nb = b.with(r);
                    let inc = packets_through_consistent(params, nb, all[r as usize].elements());
                    assert_eq!(inc, bits_consistent(params, nb));
                    if inc {
                        next.push(nb);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
    }

    #[test]
    fn gaps() {
        assert_eq!(internal_gaps(&s(&[2, 4]), 5).unwrap(), vec![3]);
        assert!(internal_gaps(&s(&[1, 2, 3]), 5).unwrap().is_empty());
        assert_eq!(internal_gaps(&s(&[1, 4]), 4).unwrap(), vec![2, 3]);
        assert!(internal_gaps(&s(&[]), 4).is_err());
        assert!(internal_gaps(&s(&[1, 6]), 4).is_err());
    }

    #[test]
    fn interval_search() {
        let params = p(3, 1);
        let u = ConsistentSet::from_members(params, &[s(&[1, 2])]).unwrap();
        assert_eq!(find_interval(&u).unwrap(), s(&[1, 2]));

        let params = p(4, 1);
        let members = [s(&[1, 4]), s(&[1, 3]), s(&[1, 2])];
        assert!(is_consistent(&members, params).unwrap());
        let u = ConsistentSet::from_members(params, &members).unwrap();
        let found = find_interval(&u).unwrap();
        assert!(u.contains(&found));
        assert!(internal_gaps(&found, 4).unwrap().is_empty());
        assert_eq!(found, s(&[1, 2]));

        assert!(matches!(
            find_interval(&ConsistentSet::empty(params).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn corrupted_input_is_reported() {
        // {1,3} alone is not consistent in [3]: it sits in the middle of packet {1,2,3}.
        let params = p(3, 1);
        let bogus =
            ConsistentSet::from_bits_unchecked(params, MemberBits::EMPTY.with(s(&[1, 3]).rank()));
        assert!(matches!(
            find_interval(&bogus),
            Err(Error::ConsistencyViolation(_))
        ));
        assert!(ConsistentSet::from_bits(params, bogus.bits()).is_err());
    }

    #[test]
    fn complement_examples() {
        let params = p(3, 1);
        let full = complement(&ConsistentSet::empty(params).unwrap()).unwrap();
        assert_eq!(full, ConsistentSet::full(params).unwrap());
        let u = ConsistentSet::from_members(params, &[s(&[1, 2])]).unwrap();
        let c = complement(&u).unwrap();
        assert_eq!(c.members(), vec![s(&[1, 3]), s(&[2, 3])]);
        assert_eq!(complement(&c).unwrap(), u);
    }

    #[test]
    fn display_of_sets() {
        let params = p(3, 1);
        let u = ConsistentSet::from_members(params, &[s(&[2, 3]), s(&[1, 3])]).unwrap();
        assert_eq!(u.to_string(), "{{1,3},{2,3}}");
        assert_eq!(params.top_interval(), s(&[2, 3]));
    }
}
