//! Reduced simplicial homology over the integers.
//!
//! Chain groups are augmented by the empty simplex in degree -1, so the
//! complex with no vertices has `H_{-1} = Z`. Ranks and torsion come from the
//! Smith normal form of each boundary matrix: unit pivots are eliminated
//! sparsely in `i64` (checked, redone in `BigInt` on overflow) and whatever
//! remains is diagonalised densely with arbitrary-precision entries.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Default cap on the number of nonempty simplices.
pub const DEFAULT_MAX_SIMPLICES: u64 = 500_000;

fn cmp_colex(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// A finite simplicial complex on vertices `0..vertex_count`. The empty
/// simplex is always present implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_labels: Vec<String>,
    /// `by_dim[d]` lists the `d`-simplices as sorted vertex lists, in colex order.
    by_dim: Vec<Vec<Vec<u32>>>,
    closed: bool,
}

impl SimplicialComplex {
    /// Takes any family of simplices; records whether it is downward closed.
    pub fn new(vertex_labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Result<Self> {
        let nv = vertex_labels.len() as u32;
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for mut s in simplices {
            if s.is_empty() {
                continue;
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!("simplex {s:?} repeats a vertex")));
            }
            if s.last().is_some_and(|&v| v >= nv) {
                return Err(Error::Parameter(format!(
                    "simplex {s:?} uses a vertex outside 0..{nv}"
                )));
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort_by(|a, b| cmp_colex(a, b));
            level.dedup();
        }
        let mut complex = SimplicialComplex {
            vertex_labels,
            by_dim,
            closed: false,
        };
        complex.closed = complex.check_closed();
        Ok(complex)
    }

    /// Like [`SimplicialComplex::new`] but fails unless the family is closed.
    pub fn from_closed_simplices(
        vertex_labels: Vec<String>,
        simplices: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let c = Self::new(vertex_labels, simplices)?;
        if !c.closed {
            return Err(Error::Closure("a face of some simplex is missing".into()));
        }
        Ok(c)
    }

    /// Downward closure of `facets`.
    pub fn closure(vertex_labels: Vec<String>, facets: &[Vec<u32>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > 24 {
                return Err(Error::Resource {
                    what: "facet size",
                    count: f.len() as u64,
                    limit: 24,
                });
            }
            for mask in 1u32..(1 << f.len()) {
                let face: Vec<u32> = (0..f.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                all.insert(face);
            }
        }
        Self::from_closed_simplices(vertex_labels, all.into_iter().collect())
    }

    /// Only the empty simplex.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_labels: Vec::new(),
            by_dim: Vec::new(),
            closed: true,
        }
    }

    fn check_closed(&self) -> bool {
        for d in 1..self.by_dim.len() {
            let below = &self.by_dim[d - 1];
            for s in &self.by_dim[d] {
                for t in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != t)
                        .map(|(_, &v)| v)
                        .collect();
                    if below.binary_search_by(|x| cmp_colex(x, &face)).is_err() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Dimension; `-1` when only the empty simplex is present.
    pub fn dim(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    /// The `d`-simplices in colex order; `d = -1` yields the empty simplex.
    pub fn simplices(&self, d: i64) -> &[Vec<u32>] {
        static EMPTY_SIMPLEX: [Vec<u32>; 1] = [Vec::new()];
        match d {
            -1 => &EMPTY_SIMPLEX,
            d if d >= 0 && (d as usize) < self.by_dim.len() => &self.by_dim[d as usize],
            _ => &[],
        }
    }

    /// Number of nonempty simplices.
    pub fn simplex_count(&self) -> u64 {
        self.by_dim.iter().map(|l| l.len() as u64).sum()
    }

    /// `f_{-1}, f_0, ..., f_dim` with `f_{-1} = 1`.
    pub fn f_vector(&self) -> Vec<u64> {
        std::iter::once(1)
            .chain(self.by_dim.iter().map(|l| l.len() as u64))
            .collect()
    }

    /// `sum_d (-1)^d f_d` over `d >= -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 })
            .sum()
    }

    fn index_of(&self, d: i64, simplex: &[u32]) -> Option<usize> {
        if d == -1 {
            return simplex.is_empty().then_some(0);
        }
        self.simplices(d)
            .binary_search_by(|x| cmp_colex(x, simplex))
            .ok()
    }

    /// Columns of `∂_d` as sparse `(row, sign)` lists sorted by row.
    fn boundary_columns(&self, d: i64) -> Vec<Vec<(u32, i64)>> {
        self.simplices(d)
            .iter()
            .map(|s| {
                let mut col: Vec<(u32, i64)> = (0..s.len())
                    .map(|t| {
                        let face: Vec<u32> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != t)
                            .map(|(_, &v)| v)
                            .collect();
                        let row = self
                            .index_of(d - 1, &face)
                            .expect("closed complex has every face");
                        (row as u32, if t % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect()
    }
}

/// Cone points `apex+` and `apex-` joined to every simplex, including the empty one.
pub fn suspension(x: &SimplicialComplex) -> Result<SimplicialComplex> {
    if !x.closed {
        return Err(Error::Closure(
            "cannot suspend a complex that is not closed".into(),
        ));
    }
    let nv = x.vertex_count() as u32;
    let (north, south) = (nv, nv + 1);
    let mut labels = x.vertex_labels.clone();
    labels.push("apex+".into());
    labels.push("apex-".into());
    let mut simplices = Vec::with_capacity(3 * x.simplex_count() as usize + 2);
    for d in -1..=x.dim() {
        for s in x.simplices(d) {
            if !s.is_empty() {
                simplices.push(s.clone());
            }
            for apex in [north, south] {
                let mut t = s.clone();
                t.push(apex);
                simplices.push(t);
            }
        }
    }
    SimplicialComplex::from_closed_simplices(labels, simplices)
}

/// A sparse integer matrix, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    /// Row `r` holds `(column, value)` pairs, sorted, no zeros.
    entries: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged matrix".into()));
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.entries[r].binary_search_by_key(&c, |e| e.0) {
            Ok(p) => self.entries[r][p].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let row = &mut self.entries[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(p) if v.is_zero() => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = v,
            Err(_) if v.is_zero() => {}
            Err(p) => row.insert(p, (c, v)),
        }
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.entries.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for (k, a) in row {
                for (c, b) in &other.entries[*k] {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
                }
            }
            out.entries[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    fn from_columns_i64(rows: usize, columns: &[Vec<(u32, i64)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for &(r, v) in col {
                m.entries[r as usize].push((c, BigInt::from(v)));
            }
        }
        m
    }
}

/// `∂_d` for `d = 0..=dim`, including the augmentation `∂_0` onto the empty simplex.
/// Deleting the `t`-th smallest vertex carries sign `(-1)^t`.
pub fn boundary_matrices(x: &SimplicialComplex) -> Result<Vec<IntegerMatrix>> {
    if !x.closed {
        return Err(Error::Closure(
            "boundary of a complex that is not closed".into(),
        ));
    }
    Ok((0..=x.dim())
        .map(|d| IntegerMatrix::from_columns_i64(x.simplices(d - 1).len(), &x.boundary_columns(d)))
        .collect())
}

/// Nonzero invariant factors `d_1 | d_2 | ...` (all positive) and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

trait Coeff: Clone + Send {
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `a - f * b`, `None` on overflow.
    fn mul_sub(a: Option<&Self>, f: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul_sub(a: Option<&Self>, f: &Self, b: &Self) -> Option<Self> {
        a.copied().unwrap_or(0).checked_sub(f.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul_sub(a: Option<&Self>, f: &Self, b: &Self) -> Option<Self> {
        let prod = f * b;
        Some(match a {
            Some(a) => a - prod,
            None => -prod,
        })
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Sparse rows as `(column, value)` pairs.
type Lines<T> = Vec<Vec<(u32, T)>>;

/// Sparse elimination of unit pivots. Lines are the rows being eliminated;
/// their entries are `(column, value)`, sorted and nonzero. Returns the number
/// of unit pivots and the lines that are left over.
fn eliminate_units<T: Coeff>(
    mut lines: Lines<T>,
    ncols: usize,
) -> std::result::Result<(usize, Lines<T>), Overflow> {
    let nlines = lines.len();
    let mut active = vec![true; nlines];
    let mut col_lines: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut heap = BinaryHeap::with_capacity(nlines);
    for (r, line) in lines.iter().enumerate() {
        for (c, _) in line {
            col_lines[*c as usize].push(r as u32);
        }
        heap.push(Reverse((line.len(), r)));
    }
    let mut units = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !active[r] || lines[r].len() != len {
            continue;
        }
        if len == 0 {
            active[r] = false;
            continue;
        }
        // Markowitz-style: among unit entries take the sparsest column.
        let pick = lines[r]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(c, _)| (col_lines[*c as usize].len(), *c))
            .map(|(c, v)| (*c, v.clone()));
        let Some((pc, pv)) = pick else {
            continue; // revisited if a later elimination changes this line
        };
        let pivot = std::mem::take(&mut lines[r]);
        active[r] = false;
        units += 1;
        for r2 in std::mem::take(&mut col_lines[pc as usize]) {
            let r2 = r2 as usize;
            if !active[r2] {
                continue;
            }
            let Ok(pos) = lines[r2].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            // pivot is ±1, so dividing by it is multiplying by it
            let factor = T::mul(&lines[r2][pos].1, &pv).ok_or(Overflow)?;
            let old = std::mem::take(&mut lines[r2]);
            let mut merged = Vec::with_capacity(old.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot.len() {
                let take_old = j >= pivot.len() || (i < old.len() && old[i].0 < pivot[j].0);
                let take_pivot = i >= old.len() || (j < pivot.len() && pivot[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i].clone());
                    i += 1;
                } else if take_pivot {
                    let v = T::mul_sub(None, &factor, &pivot[j].1).ok_or(Overflow)?;
                    let c = pivot[j].0;
                    if c != pc {
                        col_lines[c as usize].push(r2 as u32);
                    }
                    merged.push((c, v));
                    j += 1;
                } else {
                    let v = T::mul_sub(Some(&old[i].1), &factor, &pivot[j].1).ok_or(Overflow)?;
                    if !v.vanishes() {
                        merged.push((old[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            lines[r2] = merged;
            heap.push(Reverse((lines[r2].len(), r2)));
        }
    }
    let residual = lines
        .into_iter()
        .zip(active)
        .filter(|(l, a)| *a && !l.is_empty())
        .map(|(l, _)| l)
        .collect();
    Ok((units, residual))
}

fn min_abs_position(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Dense Smith normal form with smallest-magnitude pivoting.
fn snf_dense(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_position(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                let pivot_row = &top[t];
                for (x, p) in rest[0].iter_mut().zip(pivot_row).skip(t) {
                    *x -= &q * p;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let p = row[t].clone();
                    row[j] -= &q * p;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot appeared in row or column t
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

fn smith_of_lines(lines: Vec<Vec<(u32, i64)>>, ncols: usize) -> SmithForm {
    let (units, residual_big) = match eliminate_units(lines.clone(), ncols) {
        Ok((units, residual)) => (
            units,
            residual
                .into_iter()
                .map(|l| {
                    l.into_iter()
                        .map(|(c, v)| (c, v.to_big()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        ),
        Err(Overflow) => {
            let big: Vec<Vec<(u32, BigInt)>> = lines
                .into_iter()
                .map(|l| l.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect();
            match eliminate_units(big, ncols) {
                Ok(r) => r,
                Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
            }
        }
    };
    let mut factors = vec![BigInt::one(); units];
    if !residual_big.is_empty() {
        let cols: Vec<u32> = residual_big
            .iter()
            .flat_map(|l| l.iter().map(|e| e.0))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let dense: Vec<Vec<BigInt>> = residual_big
            .iter()
            .map(|l| {
                let mut row = vec![BigInt::zero(); cols.len()];
                for (c, v) in l {
                    let p = cols.binary_search(c).expect("column collected above");
                    row[p] = v.clone();
                }
                row
            })
            .collect();
        factors.extend(snf_dense(dense));
    }
    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// Invariant factors and rank of an integer matrix.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let fits = m
        .entries
        .iter()
        .flatten()
        .all(|(_, v)| v.to_i64().is_some());
    if fits {
        let lines = m
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| (*c as u32, v.to_i64().unwrap_or_default()))
                    .collect()
            })
            .collect();
        return smith_of_lines(lines, m.cols);
    }
    let lines: Vec<Vec<(u32, BigInt)>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c as u32, v.clone())).collect())
        .collect();
    let (units, residual) = match eliminate_units(lines, m.cols) {
        Ok(r) => r,
        Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
    };
    let mut factors = vec![BigInt::one(); units];
    let dense: Vec<Vec<BigInt>> = residual
        .iter()
        .map(|l| {
            let mut row = vec![BigInt::zero(); m.cols];
            for (c, v) in l {
                row[*c as usize] = v.clone();
            }
            row
        })
        .collect();
    factors.extend(snf_dense(dense));
    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: u64,
    /// Torsion coefficients, each greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    /// `f_{-1}, f_0, ..., f_dim`.
    pub f_vector: Vec<u64>,
    /// Degrees `-1..=dim`.
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn dim(&self) -> i64 {
        self.degrees.len() as i64 - 2
    }

    pub fn get(&self, d: i64) -> Option<&DegreeHomology> {
        if d < -1 {
            return None;
        }
        self.degrees.get((d + 1) as usize)
    }

    pub fn betti(&self, d: i64) -> u64 {
        self.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: i64) -> &[BigInt] {
        self.get(d).map_or(&[], |h| &h.torsion)
    }

    pub fn euler_from_betti(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| {
                if h.degree.rem_euclid(2) == 0 {
                    h.betti as i64
                } else {
                    -(h.betti as i64)
                }
            })
            .sum()
    }

    pub fn euler_from_f_vector(&self) -> i64 {
        self.f_vector
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 })
            .sum()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.degrees {
            write!(f, "H~_{} = ", h.degree)?;
            let mut parts = Vec::new();
            match h.betti {
                0 => {}
                1 => parts.push("Z".to_string()),
                b => parts.push(format!("Z^{b}")),
            }
            parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
            if parts.is_empty() {
                writeln!(f, "0")?;
            } else {
                writeln!(f, "{}", parts.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// Reduced integer homology with the default simplex budget.
pub fn reduced_homology(x: &SimplicialComplex) -> Result<HomologyReport> {
    reduced_homology_with(x, DEFAULT_MAX_SIMPLICES, Exec::default())
}

/// Reduced integer homology; each boundary matrix is reduced by its own worker.
pub fn reduced_homology_with(
    x: &SimplicialComplex,
    max_simplices: u64,
    exec: Exec,
) -> Result<HomologyReport> {
    if !x.closed {
        return Err(Error::Closure(
            "homology of a complex that is not closed".into(),
        ));
    }
    let count = x.simplex_count();
    if count > max_simplices {
        return Err(Error::Resource {
            what: "simplices",
            count,
            limit: max_simplices,
        });
    }
    let dim = x.dim();
    let degrees: Vec<i64> = (0..=dim).collect();
    // ∂_d is reduced through its columns: each d-simplex is one line.
    let smith: Vec<SmithForm> = exec.map(&degrees, |&d| {
        smith_of_lines(x.boundary_columns(d), x.simplices(d - 1).len())
    });
    let rank = |d: i64| -> u64 {
        if d < 0 || d > dim {
            0
        } else {
            smith[d as usize].rank as u64
        }
    };
    let f_vector = x.f_vector();
    let mut out = Vec::with_capacity((dim + 2) as usize);
    for d in -1..=dim {
        let f = f_vector[(d + 1) as usize];
        let betti = f - rank(d) - rank(d + 1);
        let torsion = if d < dim {
            smith[(d + 1) as usize].torsion()
        } else {
            Vec::new()
        };
        out.push(DegreeHomology {
            degree: d,
            betti,
            torsion,
        });
    }
    let report = HomologyReport {
        f_vector,
        degrees: out,
    };
    if report.euler_from_betti() != report.euler_from_f_vector() {
        return Err(Error::Invariant(format!(
            "Euler characteristic mismatch: {} from Betti numbers, {} from f-vector",
            report.euler_from_betti(),
            report.euler_from_f_vector()
        )));
    }
    Ok(report)
}

/// `H~_d = Z` and every other reduced group vanishes.
pub fn is_sphere_homology(report: &HomologyReport, d: i64) -> bool {
    if d < -1 {
        return false;
    }
    report.degrees.iter().all(|h| {
        if h.degree == d {
            h.betti == 1 && h.torsion.is_empty()
        } else {
            h.betti == 0 && h.torsion.is_empty()
        }
    }) && report.get(d).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::closure(labels(3), &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn edge_boundary() {
        let x = SimplicialComplex::closure(labels(2), &[vec![0, 1]]).unwrap();
        let b = boundary_matrices(&x).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].to_dense(), vec![big(&[1, 1])]);
        assert_eq!(b[1].to_dense(), vec![big(&[-1]), big(&[1])]);
    }

    #[test]
    fn triangle_boundary_rank() {
        let b = boundary_matrices(&hollow_triangle()).unwrap();
        assert_eq!(smith_normal_form(&b[1]).rank, 2);
        assert!(b[0].mul(&b[1]).unwrap().is_zero());
    }

    #[test]
    fn non_closed_family() {
        let x = SimplicialComplex::new(labels(3), vec![vec![0, 1, 2]]).unwrap();
        assert!(!x.is_closed());
        assert!(matches!(boundary_matrices(&x), Err(Error::Closure(_))));
        assert!(matches!(reduced_homology(&x), Err(Error::Closure(_))));
        assert!(SimplicialComplex::new(labels(2), vec![vec![0, 5]]).is_err());
    }

    #[test]
    fn snf_examples() {
        let id = IntegerMatrix::from_dense(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(smith_normal_form(&id).invariant_factors, big(&[1, 1]));
        let d = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(smith_normal_form(&d).invariant_factors, big(&[2, 4]));
        let m = IntegerMatrix::from_dense(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(smith_normal_form(&m).invariant_factors, big(&[1, 3]));
        // diag(4, 6) is not in normal form: gcd 2, lcm 12
        let m = IntegerMatrix::from_dense(&[vec![4, 0], vec![0, 6]]).unwrap();
        assert_eq!(smith_normal_form(&m).invariant_factors, big(&[2, 12]));
        let z = IntegerMatrix::zeros(3, 2);
        assert_eq!(smith_normal_form(&z).rank, 0);
    }

    #[test]
    fn snf_with_huge_entries() {
        let mut m = IntegerMatrix::zeros(2, 2);
        let huge = BigInt::from(u64::MAX) * BigInt::from(3u8);
        m.set(0, 0, huge.clone());
        m.set(1, 1, BigInt::from(6));
        let f = smith_normal_form(&m).invariant_factors;
        // gcd(3(2^64-1), 6) = 3 since 2^64-1 is odd
        assert_eq!(f[0], BigInt::from(3));
        assert_eq!(&f[0] * &f[1], huge * BigInt::from(6));
    }

    #[test]
    fn overflowing_i64_path_falls_back() {
        // Eliminating the unit at (0,0) computes 1 - 4 * 2^62, which overflows i64.
        let m = IntegerMatrix::from_dense(&[vec![1, 1 << 62], vec![4, 1]]).unwrap();
        let s = smith_normal_form(&m);
        let det = BigInt::from(1) - BigInt::from(4) * BigInt::from(1i64 << 62);
        assert_eq!(s.invariant_factors, vec![BigInt::one(), det.abs()]);
    }

    #[test]
    fn wilkinson_growth_matrix() {
        // 1 on the diagonal, -1 below, 1 in the last column: determinant 2^(n-1).
        let n = 70;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == n - 1 || i == j {
                            1
                        } else if j < i {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let s = smith_normal_form(&IntegerMatrix::from_dense(&rows).unwrap());
        assert_eq!(s.rank, n);
        let product: BigInt = s.invariant_factors.iter().product();
        assert_eq!(product, BigInt::from(2).pow(n as u32 - 1));
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let r = reduced_homology(&SimplicialComplex::empty()).unwrap();
        assert_eq!(r.betti(-1), 1);
        assert!(is_sphere_homology(&r, -1));
        assert!(!is_sphere_homology(&r, 0));
    }

    #[test]
    fn two_edges_and_triangle() {
        let two = SimplicialComplex::closure(labels(4), &[vec![0, 1], vec![2, 3]]).unwrap();
        let r = reduced_homology(&two).unwrap();
        assert_eq!(r.betti(0), 1);
        assert_eq!(r.betti(1), 0);
        assert_eq!(r.betti(-1), 0);
        assert!(is_sphere_homology(&r, 0));

        let r = reduced_homology(&hollow_triangle()).unwrap();
        assert!(is_sphere_homology(&r, 1));
        assert_eq!(r.to_string(), "H~_-1 = 0\nH~_0 = 0\nH~_1 = Z\n");
    }

    #[test]
    fn cone_is_acyclic() {
        let cone = SimplicialComplex::closure(labels(4), &[vec![0, 1, 3], vec![1, 2, 3]]).unwrap();
        let r = reduced_homology(&cone).unwrap();
        for d in -1..=2 {
            assert!(!is_sphere_homology(&r, d));
            assert_eq!(r.betti(d), 0);
        }
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // 6-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let facets: Vec<Vec<u32>> = facets.iter().map(|f| f.to_vec()).collect();
        let x = SimplicialComplex::closure(labels(6), &facets).unwrap();
        let r = reduced_homology(&x).unwrap();
        assert_eq!(r.betti(0), 0);
        assert_eq!(r.betti(1), 0);
        assert_eq!(r.torsion(1), &big(&[2])[..]);
        assert_eq!(r.betti(2), 0);
    }

    #[test]
    fn suspension_examples() {
        let s0 = suspension(&SimplicialComplex::empty()).unwrap();
        assert_eq!(s0.f_vector(), vec![1, 2]);
        assert!(is_sphere_homology(&reduced_homology(&s0).unwrap(), 0));
        let s1 = suspension(&s0).unwrap();
        assert_eq!(s1.f_vector(), vec![1, 4, 4]);
        assert!(is_sphere_homology(&reduced_homology(&s1).unwrap(), 1));
        // no simplex contains both apexes
        assert!(!s1.simplices(1).contains(&vec![2, 3]));
    }

    #[test]
    fn colex_layout() {
        let x = hollow_triangle();
        assert_eq!(x.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(x.simplices(-1), &[Vec::<u32>::new()]);
        assert!(x.simplices(5).is_empty());
        assert_eq!(x.reduced_euler_characteristic(), -1);
    }

    #[test]
    fn budget_is_enforced() {
        let x = hollow_triangle();
        assert!(matches!(
            reduced_homology_with(&x, 5, Exec::Sequential),
            Err(Error::Resource { .. })
        ));
        assert!(reduced_homology_with(&x, 6, Exec::Sequential).is_ok());
    }
}
