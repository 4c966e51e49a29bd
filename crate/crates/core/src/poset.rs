//! The componentwise partial order on F_p^m and its down sets.
//!
//! A down set is stored by its antichain of maximal generators. Membership,
//! size and enumeration all work off the generators; enumeration is always
//! lexicographic, which is the single source of truth for coordinate ordering
//! everywhere downstream.

use crate::error::{Error, Result};
use crate::gf::{lex_increment, FpVector, Prime};
use crate::rng::SplitMix64;
use std::fmt;

/// v <= w in the product order iff v_i <= w_i for all i, comparing canonical
/// residue representatives as integers.
pub fn leq(v: &FpVector, w: &FpVector) -> Result<bool> {
    check_shape(v, w)?;
    Ok(v.entries().iter().zip(w.entries()).all(|(a, b)| a <= b))
}

/// Componentwise (max, min) — the join and meet of the lattice.
pub fn join_meet(v: &FpVector, w: &FpVector) -> Result<(FpVector, FpVector)> {
    check_shape(v, w)?;
    let p = v.p();
    let join = v
        .entries()
        .iter()
        .zip(w.entries())
        .map(|(&a, &b)| a.max(b))
        .collect();
    let meet = v
        .entries()
        .iter()
        .zip(w.entries())
        .map(|(&a, &b)| a.min(b))
        .collect();
    Ok((FpVector::new(p, join)?, FpVector::new(p, meet)?))
}

fn check_shape(v: &FpVector, w: &FpVector) -> Result<()> {
    if v.p() != w.p() {
        return Err(Error::ModulusMismatch(v.p().get(), w.p().get()));
    }
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            got: w.len(),
        });
    }
    Ok(())
}

/// A down set of F_p^m, canonicalized to its antichain of maximal generators
/// in lexicographic order. The empty generator list is the empty down set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSet {
    p: Prime,
    m: usize,
    generators: Vec<FpVector>,
}

const MAX_GENERATORS: usize = 24;

impl DownSet {
    /// Canonicalizes: drops duplicates and dominated generators, sorts
    /// lexicographically.
    pub fn new(p: Prime, m: usize, generators: Vec<FpVector>) -> Result<DownSet> {
        if m == 0 {
            return Err(Error::InvalidParameter("dimension m must be >= 1".into()));
        }
        for g in &generators {
            if g.p() != p {
                return Err(Error::ModulusMismatch(p.get(), g.p().get()));
            }
            if g.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: g.len(),
                });
            }
        }
        let mut kept: Vec<FpVector> = Vec::new();
        for g in &generators {
            if generators
                .iter()
                .any(|h| h != g && leq(g, h).unwrap() && !leq(h, g).unwrap())
            {
                continue; // strictly dominated
            }
            if !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        kept.sort_by(|a, b| a.lex_cmp(b));
        if kept.len() > MAX_GENERATORS {
            return Err(Error::InvalidParameter(format!(
                "too many generators after canonicalization: {} (limit {})",
                kept.len(),
                MAX_GENERATORS
            )));
        }
        Ok(DownSet {
            p,
            m,
            generators: kept,
        })
    }

    pub fn empty(p: Prime, m: usize) -> Result<DownSet> {
        DownSet::new(p, m, Vec::new())
    }

    /// Parses the text form "g1;g2;..." with ','-separated coordinates,
    /// e.g. "2,1,0;1,2,0". An empty string is the empty down set.
    pub fn parse(p: Prime, m: usize, text: &str) -> Result<DownSet> {
        DownSet::new(p, m, parse_generators(p, m, text)?)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[FpVector] {
        &self.generators
    }

    pub fn is_set_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// p^m, the size of the ambient space.
    pub fn space_size(&self) -> Result<u128> {
        self.p.pow_u128(self.m as u32)
    }

    /// Membership: v <= g for some generator g.
    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        if v.p() != self.p {
            return Err(Error::ModulusMismatch(self.p.get(), v.p().get()));
        }
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: v.len(),
            });
        }
        for g in &self.generators {
            if leq(v, g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// |Delta| by inclusion–exclusion over nonempty generator subsets: the
    /// intersection of boxes is the box of the meet, of size prod(min_i + 1).
    pub fn size(&self) -> u64 {
        let t = self.generators.len();
        let mut total: i128 = 0;
        for mask in 1u32..(1 << t) {
            let mut meet: Option<Vec<u32>> = None;
            for (i, g) in self.generators.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                meet = Some(match meet {
                    None => g.entries().to_vec(),
                    Some(cur) => cur
                        .iter()
                        .zip(g.entries())
                        .map(|(&a, &b)| a.min(b))
                        .collect(),
                });
            }
            let box_size: i128 = meet
                .unwrap()
                .iter()
                .map(|&e| e as i128 + 1)
                .product();
            if mask.count_ones() % 2 == 1 {
                total += box_size;
            } else {
                total -= box_size;
            }
        }
        debug_assert!(total >= 0);
        total as u64
    }

    /// Members in lexicographic order. The scan over F_p^m counts against
    /// the budget.
    pub fn members(&self, budget: u128) -> Result<Vec<FpVector>> {
        self.filtered(budget, true)
    }

    /// The complement F_p^m \ Delta in lexicographic order.
    pub fn complement(&self, budget: u128) -> Result<Vec<FpVector>> {
        self.filtered(budget, false)
    }

    fn filtered(&self, budget: u128, keep_members: bool) -> Result<Vec<FpVector>> {
        let space = self.space_size()?;
        if space > budget {
            return Err(Error::BudgetExceeded {
                required: space,
                budget,
            });
        }
        let mut out = Vec::new();
        let mut v = vec![0u32; self.m];
        loop {
            let vec = FpVector::new(self.p, v.clone())?;
            if self.contains(&vec)? == keep_members {
                out.push(vec);
            }
            if !lex_increment(self.p, &mut v) {
                break;
            }
        }
        Ok(out)
    }

    /// Text form with ';'-separated generators.
    pub fn to_text(&self) -> String {
        self.generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// A random down set with the given number of raw generators before
    /// canonicalization. Deterministic in the seed stream.
    pub fn random(p: Prime, m: usize, raw_generators: usize, rng: &mut SplitMix64) -> DownSet {
        let gens = (0..raw_generators)
            .map(|_| {
                let entries = (0..m).map(|_| rng.below(p.get() as u64) as u32).collect();
                FpVector::new(p, entries).unwrap()
            })
            .collect();
        DownSet::new(p, m, gens).unwrap()
    }
}

impl fmt::Display for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_text())
    }
}

/// Parses ';'-separated generators without canonicalizing, so callers can
/// report which inputs get dropped.
pub fn parse_generators(p: Prime, m: usize, text: &str) -> Result<Vec<FpVector>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in text.split(';') {
        let coords: Vec<&str> = part.split(',').map(str::trim).collect();
        if coords.len() != m {
            return Err(Error::Parse(format!(
                "generator '{part}' has {} coordinates, expected {m}",
                coords.len()
            )));
        }
        let mut entries = Vec::with_capacity(m);
        for c in coords {
            let v: u32 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate '{c}'")))?;
            if v >= p.get() {
                return Err(Error::Parse(format!(
                    "coordinate {v} out of range for modulus {p}"
                )));
            }
            entries.push(v);
        }
        out.push(FpVector::new(p, entries)?);
    }
    Ok(out)
}

/// Maximal elements of a set of vectors, by pairwise comparison.
pub fn maximal_elements(vectors: &[FpVector]) -> Vec<FpVector> {
    let mut out: Vec<FpVector> = Vec::new();
    for v in vectors {
        let dominated = vectors
            .iter()
            .any(|w| w != v && leq(v, w).unwrap_or(false) && !leq(w, v).unwrap_or(false));
        if !dominated && !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.sort_by(|a, b| a.lex_cmp(b));
    out
}
