//! Code construction from a defining set, the brute-force Lee weight oracle,
//! Gray-image generator matrices, and the structural dual-distance check.
//!
//! Coordinates are indexed by pairs (c, d) with c running over the
//! lexicographically ordered base set and d over lexicographically ordered
//! F_p^m; a codeword entry is the inner product <a, c + ud>.
//!
//! The brute-force distribution iterates every (message, coordinate) pair by
//! definition — it is the trusted oracle for the analytic machinery and stays
//! naive. Its cost in coordinate evaluations is checked against an explicit
//! budget and refused, never truncated.

use crate::error::{Error, Result};
use crate::gf::{dot_flat, flat_lex_space, FpVector, Prime};
use crate::poset::DownSet;
use crate::ring::RingVector;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Default budget, counted in elementary coordinate evaluations.
pub const DEFAULT_BUDGET: u128 = 5_000_000_000;

/// Which side of the down set indexes the code coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// L = complement(Delta) + uF_p^m
    Complement,
    /// L = Delta + uF_p^m
    Direct,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Complement => "complement",
            Variant::Direct => "direct",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The defining set L = B + uF_p^m for a base set B of first components.
///
/// L itself is never materialized as a list of ring vectors; only the base is
/// stored, and the d-loop over F_p^m is regenerated wherever coordinates are
/// walked.
#[derive(Debug, Clone)]
pub struct DefiningSet {
    p: Prime,
    m: usize,
    base: Vec<FpVector>,
    base_flat: Vec<u32>,
}

impl DefiningSet {
    /// Base set from a down set: the complement of Delta for
    /// [`Variant::Complement`], Delta itself for [`Variant::Direct`].
    pub fn from_down_set(ds: &DownSet, variant: Variant, budget: u128) -> Result<DefiningSet> {
        let base = match variant {
            Variant::Complement => ds.complement(budget)?,
            Variant::Direct => ds.members(budget)?,
        };
        Self::from_base_vectors(ds.p(), ds.m(), base)
    }

    /// Base set given explicitly. Sorted lexicographically and deduplicated.
    ///
    /// This also admits base sets that are not down-set derived, which some
    /// small reference codes use.
    pub fn from_base_vectors(p: Prime, m: usize, mut base: Vec<FpVector>) -> Result<DefiningSet> {
        if m == 0 {
            return Err(Error::InvalidParameter("dimension m must be >= 1".into()));
        }
        for v in &base {
            if v.p() != p {
                return Err(Error::ModulusMismatch(p.get(), v.p().get()));
            }
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
        }
        base.sort_by(|a, b| a.lex_cmp(b));
        base.dedup();
        let mut base_flat = Vec::with_capacity(base.len() * m);
        for v in &base {
            base_flat.extend_from_slice(v.entries());
        }
        Ok(DefiningSet {
            p,
            m,
            base,
            base_flat,
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &[FpVector] {
        &self.base
    }

    /// |L| = |base| * p^m.
    pub fn len(&self) -> Result<u64> {
        let pm = self.p.pow_u128(self.m as u32)?;
        let l = pm
            .checked_mul(self.base.len() as u128)
            .ok_or_else(|| Error::InvalidParameter("|L| overflows".into()))?;
        u64::try_from(l).map_err(|_| Error::InvalidParameter("|L| exceeds u64".into()))
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Number of messages p^{2m}.
    pub fn message_count(&self) -> Result<u128> {
        self.p.pow_u128(2 * self.m as u32)
    }

    fn check_message(&self, a: &RingVector) -> Result<()> {
        if a.p() != self.p {
            return Err(Error::ModulusMismatch(self.p.get(), a.p().get()));
        }
        if a.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: a.len(),
            });
        }
        Ok(())
    }

    /// The codeword (<a, l>)_{l in L} in canonical coordinate order.
    pub fn codeword(&self, a: &RingVector, budget: u128) -> Result<RingVector> {
        self.check_message(a)?;
        let l = self.len()? as u128;
        if l > budget {
            return Err(Error::BudgetExceeded {
                required: l,
                budget,
            });
        }
        if self.base.is_empty() {
            return Err(Error::InvalidParameter(
                "empty defining set has no codeword entries".into(),
            ));
        }
        let p = self.p;
        let alpha = a.alpha();
        let beta = a.beta();
        let d_flat = flat_lex_space(p, self.m)?;
        let pm = d_flat.len() / self.m;
        let mut pairs = Vec::with_capacity(self.base.len() * pm);
        for c in self.base_flat.chunks_exact(self.m) {
            let s = dot_flat(p, alpha.entries(), c);
            let bc = dot_flat(p, beta.entries(), c);
            for d in d_flat.chunks_exact(self.m) {
                let ad = dot_flat(p, alpha.entries(), d);
                pairs.push((s, p.add(ad, bc)));
            }
        }
        RingVector::from_pairs(p, pairs)
    }

    /// Lee weight of the codeword for message a, without materializing it.
    pub fn codeword_lee_weight(&self, a: &RingVector, budget: u128) -> Result<u64> {
        self.check_message(a)?;
        let l = self.len()? as u128;
        if l > budget {
            return Err(Error::BudgetExceeded {
                required: l,
                budget,
            });
        }
        let p = self.p;
        let alpha = a.alpha();
        let beta = a.beta();
        let d_flat = flat_lex_space(p, self.m)?;
        let mut ad = Vec::with_capacity(d_flat.len() / self.m);
        for d in d_flat.chunks_exact(self.m) {
            ad.push(dot_flat(p, alpha.entries(), d));
        }
        let mut w = 0u64;
        for c in self.base_flat.chunks_exact(self.m) {
            let s = dot_flat(p, alpha.entries(), c);
            let bc = dot_flat(p, beta.entries(), c);
            w += lee_row_weight(p, s, bc, &ad);
        }
        Ok(w)
    }

    /// Exact histogram of w_L(c_L(a)) over all p^{2m} messages a.
    pub fn brute_force_distribution(&self, budget: u128) -> Result<WeightDistribution> {
        self.brute_force_distribution_partitioned(budget, 1)
    }

    /// Same histogram, with the message space split into `threads` disjoint
    /// ranges processed independently and merged. The result is identical for
    /// any partition count.
    pub fn brute_force_distribution_partitioned(
        &self,
        budget: u128,
        threads: usize,
    ) -> Result<WeightDistribution> {
        let l = self.len()? as u128;
        let messages = self.message_count()?;
        let required = messages.saturating_mul(l);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let pm_u128 = self.p.pow_u128(self.m as u32)?;
        let pm = pm_u128 as u64;
        let d_flat = flat_lex_space(self.p, self.m)?;
        let threads = threads.clamp(1, (pm as usize).max(1));

        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        if threads <= 1 {
            merge_counts(
                &mut counts,
                self.brute_chunk(&d_flat, 0, pm),
            );
        } else {
            let chunk = pm.div_ceil(threads as u64);
            let maps = std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for t in 0..threads as u64 {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(pm);
                    if lo >= hi {
                        continue;
                    }
                    let d_flat = &d_flat;
                    handles.push(scope.spawn(move || self.brute_chunk(d_flat, lo, hi)));
                }
                handles
                    .into_iter()
                    .map(|h| h.join().expect("brute-force worker panicked"))
                    .collect::<Vec<_>>()
            });
            for map in maps {
                merge_counts(&mut counts, map);
            }
        }
        WeightDistribution::from_counts(self.p, self.m, counts)
    }

    /// Histogram over messages whose alpha index lies in [alpha_lo, alpha_hi).
    /// Every (c, d) coordinate of every message in range is evaluated.
    fn brute_chunk(&self, d_flat: &[u32], alpha_lo: u64, alpha_hi: u64) -> BTreeMap<u64, u64> {
        let p = self.p;
        let m = self.m;
        let nb = self.base.len();
        let pm = d_flat.len() / m;
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut alpha = index_to_vector(p, m, alpha_lo);
        let mut ad = vec![0u32; pm];
        let mut sc = vec![0u32; nb];
        let mut bc_row = vec![0u32; nb];
        for _ in alpha_lo..alpha_hi {
            for (j, d) in d_flat.chunks_exact(m).enumerate() {
                ad[j] = dot_flat(p, &alpha, d);
            }
            for (i, c) in self.base_flat.chunks_exact(m).enumerate() {
                sc[i] = dot_flat(p, &alpha, c);
            }
            let mut beta = vec![0u32; m];
            loop {
                for (i, c) in self.base_flat.chunks_exact(m).enumerate() {
                    bc_row[i] = dot_flat(p, &beta, c);
                }
                let mut w = 0u64;
                for i in 0..nb {
                    w += lee_row_weight(p, sc[i], bc_row[i], &ad);
                }
                *counts.entry(w).or_insert(0) += 1;
                if !crate::gf::lex_increment(p, &mut beta) {
                    break;
                }
            }
            if !crate::gf::lex_increment(p, &mut alpha) {
                break;
            }
        }
        counts
    }

    /// The 2m x 2|L| matrix over F_p whose row i < m is phi(c_L(e_i)) and row
    /// m+i is phi(c_L(u e_i)); its row space is the Gray image of the code.
    pub fn gray_generator_matrix(&self, budget: u128) -> Result<GeneratorMatrix> {
        let l = self.len()?;
        let cost = (l as u128).saturating_mul(2 * self.m as u128);
        if cost > budget {
            return Err(Error::BudgetExceeded {
                required: cost,
                budget,
            });
        }
        let cols = usize::try_from(2 * l)
            .map_err(|_| Error::InvalidParameter("matrix too wide".into()))?;
        let mut rows = Vec::with_capacity(2 * self.m);
        for i in 0..self.m {
            let e = FpVector::unit(self.p, self.m, i)?;
            let zero = FpVector::zero(self.p, self.m)?;
            let a = RingVector::from_parts(&e, &zero)?;
            rows.push(self.codeword(&a, budget)?.gray_map().entries().to_vec());
        }
        for i in 0..self.m {
            let e = FpVector::unit(self.p, self.m, i)?;
            let zero = FpVector::zero(self.p, self.m)?;
            let a = RingVector::from_parts(&zero, &e)?;
            rows.push(self.codeword(&a, budget)?.gray_map().entries().to_vec());
        }
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        GeneratorMatrix::from_rows(self.p, rows)
    }

    /// Streaming scan for an identically-zero Gray coordinate, without
    /// materializing the generator matrix. Column entries for coordinate
    /// (c, d) are (d_i, c_i) in the b-block and (c_i + d_i, c_i) in the
    /// (a+b)-block.
    pub fn has_zero_gray_column(&self, budget: u128) -> Result<bool> {
        let l = self.len()? as u128;
        if l > budget {
            return Err(Error::BudgetExceeded {
                required: l,
                budget,
            });
        }
        let p = self.p;
        let m = self.m;
        let d_flat = flat_lex_space(p, m)?;
        for c in self.base_flat.chunks_exact(m) {
            let c_zero = c.iter().all(|&x| x == 0);
            for d in d_flat.chunks_exact(m) {
                if c_zero && d.iter().all(|&x| x == 0) {
                    return Ok(true);
                }
                if c_zero && d.iter().zip(c).all(|(&di, &ci)| p.add(ci, di) == 0) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Lee weight contribution of one base row: sum over d of the weight of the
/// ring element s + u(ad[j] + bc).
#[inline]
fn lee_row_weight(p: Prime, s: u32, bc: u32, ad: &[u32]) -> u64 {
    let pv = p.get();
    let mut w = 0u64;
    for &adj in ad {
        let mut t = adj + bc;
        if t >= pv {
            t -= pv;
        }
        let mut st = s + t;
        if st >= pv {
            st -= pv;
        }
        w += (t != 0) as u64 + (st != 0) as u64;
    }
    w
}

fn index_to_vector(p: Prime, m: usize, mut idx: u64) -> Vec<u32> {
    let mut v = vec![0u32; m];
    for i in (0..m).rev() {
        v[i] = (idx % p.get() as u64) as u32;
        idx /= p.get() as u64;
    }
    v
}

fn merge_counts(into: &mut BTreeMap<u64, u64>, from: BTreeMap<u64, u64>) {
    for (w, c) in from {
        *into.entry(w).or_insert(0) += c;
    }
}

/// Exact map Lee weight -> frequency over all p^{2m} messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    p: Prime,
    m: usize,
    counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn from_counts(p: Prime, m: usize, counts: BTreeMap<u64, u64>) -> Result<WeightDistribution> {
        if counts.values().any(|&c| c == 0) {
            return Err(Error::InvalidParameter(
                "weight distribution frequencies must be positive".into(),
            ));
        }
        Ok(WeightDistribution { p, m, counts })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// Minimum nonzero Lee weight; None for the degenerate all-zero histogram.
    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// Number of distinct nonzero weights.
    pub fn nonzero_weight_count(&self) -> usize {
        self.counts.keys().filter(|&&w| w > 0).count()
    }

    /// Sorted [weight, frequency] pairs.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.counts.iter().map(|(&w, &c)| (w, c)).collect()
    }

    /// Sum of weight * frequency.
    pub fn first_moment(&self) -> u128 {
        self.counts
            .iter()
            .map(|(&w, &c)| w as u128 * c as u128)
            .sum()
    }

    /// Weight enumerator in the form "1+6z^810+...".
    pub fn enumerator_string(&self) -> String {
        let mut parts = Vec::new();
        for (&w, &c) in &self.counts {
            if w == 0 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{c}z^{w}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// A rank classification of the dual minimum distance, exact by column
/// structure: 1 iff a zero column exists, 2 iff no zero column but two
/// columns are proportional, >=3 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualDistanceClass {
    One,
    Two,
    AtLeastThree,
}

impl DualDistanceClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DualDistanceClass::One => "1",
            DualDistanceClass::Two => "2",
            DualDistanceClass::AtLeastThree => ">=3",
        }
    }
}

impl fmt::Display for DualDistanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GeneratorMatrix {
    pub fn from_rows(p: Prime, rows: Vec<Vec<u32>>) -> Result<GeneratorMatrix> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&e| e >= p.get()) {
            return Err(Error::InvalidParameter(format!(
                "entry out of range for modulus {p}"
            )));
        }
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            data.extend_from_slice(&r);
        }
        Ok(GeneratorMatrix {
            p,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// F_p-rank by row reduction.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut work: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0usize;
        let mut col = 0usize;
        while rank < self.rows && col < self.cols {
            let pivot = (rank..self.rows).find(|&i| work[i][col] != 0);
            let Some(pivot) = pivot else {
                col += 1;
                continue;
            };
            work.swap(rank, pivot);
            let inv = p.inv(work[rank][col]).unwrap();
            for e in work[rank][col..].iter_mut() {
                *e = p.mul(*e, inv);
            }
            let pivot_row = work[rank].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != rank && row[col] != 0 {
                    let f = row[col];
                    for (e, &pe) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *e = p.sub(*e, p.mul(f, pe));
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact dual-distance classification from column structure. Columns are
    /// normalized by the inverse of their first nonzero entry and hashed, so
    /// the proportionality test is O(columns) expected.
    pub fn dual_distance_class(&self) -> DualDistanceClass {
        let p = self.p;
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::with_capacity(self.cols);
        let mut zero_col = false;
        let mut proportional = false;
        let mut col_buf = vec![0u32; self.rows];
        for j in 0..self.cols {
            for (i, e) in col_buf.iter_mut().enumerate() {
                *e = self.entry(i, j);
            }
            match col_buf.iter().position(|&e| e != 0) {
                None => {
                    zero_col = true;
                }
                Some(first) => {
                    if !proportional {
                        let inv = p.inv(col_buf[first]).unwrap();
                        let normalized: Vec<u32> =
                            col_buf.iter().map(|&e| p.mul(e, inv)).collect();
                        if seen.insert(normalized, ()).is_some() {
                            proportional = true;
                        }
                    }
                }
            }
        }
        if zero_col {
            DualDistanceClass::One
        } else if proportional {
            DualDistanceClass::Two
        } else {
            DualDistanceClass::AtLeastThree
        }
    }

    /// Text export: first line "p m rows cols" (m = cols/4 ring coordinates
    /// per block pair is not implied; m is supplied by the caller's context),
    /// then one row per line as space-separated entries.
    pub fn to_text(&self, m: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} {} {}\n", self.p, m, self.rows, self.cols));
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}
