//! Exact arithmetic in the prime field F_p and on vectors over it.
//!
//! Residues are stored as canonical representatives `0..p-1` in machine
//! integers; `p` is checked at construction so that products never overflow.

use crate::error::{Error, Result};
use std::fmt;

/// A verified prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u32);

impl Prime {
    /// Validates primality by trial division. Rejects p >= 2^31 so that all
    /// intermediate products fit in a u64.
    pub fn new(p: u64) -> Result<Prime> {
        if p >= (1 << 31) {
            return Err(Error::PrimeTooLarge(p));
        }
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// The analytic weight formulas assume an odd prime.
    pub fn require_odd(self) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::OddPrimeRequired)
        }
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::InvalidParameter("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// p^e as a u128, with an error on overflow.
    pub fn pow_u128(self, e: u32) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc
                .checked_mul(self.0 as u128)
                .ok_or_else(|| Error::InvalidParameter(format!("{}^{} overflows", self.0, e)))?;
        }
        Ok(acc)
    }

    /// p^e as a u64, with an error on overflow.
    pub fn pow_u64(self, e: u32) -> Result<u64> {
        let v = self.pow_u128(e)?;
        u64::try_from(v)
            .map_err(|_| Error::InvalidParameter(format!("{}^{} exceeds u64", self.0, e)))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A length-m vector of residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: Prime,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: Prime, entries: Vec<u32>) -> Result<FpVector> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("vector length must be >= 1".into()));
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= p.get()) {
            return Err(Error::InvalidParameter(format!(
                "entry {} out of range for modulus {}",
                e, p
            )));
        }
        Ok(FpVector { p, entries })
    }

    pub fn zero(p: Prime, m: usize) -> Result<FpVector> {
        FpVector::new(p, vec![0; m])
    }

    /// i-th standard basis vector of F_p^m.
    pub fn unit(p: Prime, m: usize, i: usize) -> Result<FpVector> {
        if i >= m {
            return Err(Error::InvalidParameter(format!("unit index {i} out of range")));
        }
        let mut entries = vec![0; m];
        entries[i] = 1;
        FpVector::new(p, entries)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compat(&self, other: &FpVector) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    /// Number of nonzero entries.
    pub fn hamming_weight(&self) -> u64 {
        self.entries.iter().filter(|&&e| e != 0).count() as u64
    }

    /// Standard inner product mod p.
    pub fn dot(&self, other: &FpVector) -> Result<u32> {
        self.check_compat(other)?;
        Ok(dot_flat(self.p, &self.entries, &other.entries))
    }

    pub fn add(&self, other: &FpVector) -> Result<FpVector> {
        self.check_compat(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.p.add(a, b))
            .collect();
        Ok(FpVector { p: self.p, entries })
    }

    pub fn sub(&self, other: &FpVector) -> Result<FpVector> {
        self.check_compat(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.p.sub(a, b))
            .collect();
        Ok(FpVector { p: self.p, entries })
    }

    pub fn scale(&self, lambda: u32) -> FpVector {
        let l = lambda % self.p.get();
        let entries = self.entries.iter().map(|&a| self.p.mul(a, l)).collect();
        FpVector { p: self.p, entries }
    }

    /// Hamming distance to another vector of the same shape.
    pub fn hamming_distance(&self, other: &FpVector) -> Result<u64> {
        self.check_compat(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }

    /// Lexicographic comparison of the entry sequences.
    pub fn lex_cmp(&self, other: &FpVector) -> std::cmp::Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn dot_flat(p: Prime, a: &[u32], b: &[u32]) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc += x as u64 * y as u64;
        // Entries are < p < 2^31, so at most 2^33 summands fit before overflow;
        // reduce eagerly to stay exact for any m.
        if acc >= 1 << 62 {
            acc %= p.get() as u64;
        }
    }
    p.reduce(acc)
}

/// All vectors of F_p^m in lexicographic order, flattened m-strided.
pub(crate) fn flat_lex_space(p: Prime, m: usize) -> Result<Vec<u32>> {
    let count = p.pow_u128(m as u32)?;
    let total = count
        .checked_mul(m as u128)
        .filter(|&t| t <= (isize::MAX as u128) / 8)
        .ok_or_else(|| Error::InvalidParameter("space too large to materialize".into()))?;
    let mut flat = Vec::with_capacity(total as usize);
    let mut v = vec![0u32; m];
    loop {
        flat.extend_from_slice(&v);
        if !lex_increment(p, &mut v) {
            break;
        }
    }
    Ok(flat)
}

/// Advances v to its lexicographic successor; false once v wraps past the top.
pub fn lex_increment(p: Prime, v: &mut [u32]) -> bool {
    for e in v.iter_mut().rev() {
        if *e + 1 < p.get() {
            *e += 1;
            return true;
        }
        *e = 0;
    }
    false
}
