//! The chain ring R = F_p + uF_p with u^2 = 0, vectors over it, the inner
//! product, the Gray map and the Lee weight.
//!
//! The Gray image layout is fixed as the b-block followed by the (a+b)-block:
//! `a + ub  |->  (b, a+b)`. Generator-matrix column contracts depend on it.

use crate::error::{Error, Result};
use crate::gf::{FpVector, Prime};
use std::fmt;

/// An element a + ub of R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    p: Prime,
    a: u32,
    b: u32,
}

// add/mul return Result (the moduli must match), so the std operator traits
// do not fit.
#[allow(clippy::should_implement_trait)]
impl RingElement {
    pub fn new(p: Prime, a: u32, b: u32) -> Result<RingElement> {
        if a >= p.get() || b >= p.get() {
            return Err(Error::InvalidParameter(format!(
                "residue out of range for modulus {p}"
            )));
        }
        Ok(RingElement { p, a, b })
    }

    pub fn zero(p: Prime) -> RingElement {
        RingElement { p, a: 0, b: 0 }
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, other: RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(RingElement {
            p: self.p,
            a: self.p.add(self.a, other.a),
            b: self.p.add(self.b, other.b),
        })
    }

    /// (a+ub)(c+ud) = ac + u(ad+bc); the u^2 term vanishes.
    pub fn mul(self, other: RingElement) -> Result<RingElement> {
        self.check(other)?;
        let p = self.p;
        Ok(RingElement {
            p,
            a: p.mul(self.a, other.a),
            b: p.add(p.mul(self.a, other.b), p.mul(self.b, other.a)),
        })
    }

    /// Lee weight of a single component: w_H(b) + w_H(a+b).
    pub fn lee_weight(self) -> u64 {
        let ab = self.p.add(self.a, self.b);
        (self.b != 0) as u64 + (ab != 0) as u64
    }

    fn check(self, other: RingElement) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}u", self.a, self.b)
    }
}

/// A length-m vector over R, stored as (a, b) residue pairs so that
/// per-coordinate codeword emission stays cache-local during enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingVector {
    p: Prime,
    pairs: Vec<(u32, u32)>,
}

impl RingVector {
    pub fn from_pairs(p: Prime, pairs: Vec<(u32, u32)>) -> Result<RingVector> {
        if pairs.is_empty() {
            return Err(Error::InvalidParameter("vector length must be >= 1".into()));
        }
        if pairs.iter().any(|&(a, b)| a >= p.get() || b >= p.get()) {
            return Err(Error::InvalidParameter(format!(
                "residue out of range for modulus {p}"
            )));
        }
        Ok(RingVector { p, pairs })
    }

    /// Assemble alpha + u*beta from its two F_p^m parts.
    pub fn from_parts(alpha: &FpVector, beta: &FpVector) -> Result<RingVector> {
        if alpha.p() != beta.p() {
            return Err(Error::ModulusMismatch(alpha.p().get(), beta.p().get()));
        }
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                got: beta.len(),
            });
        }
        let pairs = alpha
            .entries()
            .iter()
            .zip(beta.entries())
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(RingVector { p: alpha.p(), pairs })
    }

    pub fn zero(p: Prime, m: usize) -> Result<RingVector> {
        RingVector::from_pairs(p, vec![(0, 0); m])
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> RingElement {
        let (a, b) = self.pairs[i];
        RingElement { p: self.p, a, b }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a == 0 && b == 0)
    }

    /// The a-part of the unique decomposition alpha + u*beta.
    pub fn alpha(&self) -> FpVector {
        FpVector::new(self.p, self.pairs.iter().map(|&(a, _)| a).collect()).unwrap()
    }

    /// The b-part of the unique decomposition alpha + u*beta.
    pub fn beta(&self) -> FpVector {
        FpVector::new(self.p, self.pairs.iter().map(|&(_, b)| b).collect()).unwrap()
    }

    fn check_compat(&self, other: &RingVector) -> Result<()> {
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

    pub fn add(&self, other: &RingVector) -> Result<RingVector> {
        self.check_compat(other)?;
        let p = self.p;
        let pairs = self
            .pairs
            .iter()
            .zip(&other.pairs)
            .map(|(&(a, b), &(c, d))| (p.add(a, c), p.add(b, d)))
            .collect();
        Ok(RingVector { p, pairs })
    }

    pub fn sub(&self, other: &RingVector) -> Result<RingVector> {
        self.check_compat(other)?;
        let p = self.p;
        let pairs = self
            .pairs
            .iter()
            .zip(&other.pairs)
            .map(|(&(a, b), &(c, d))| (p.sub(a, c), p.sub(b, d)))
            .collect();
        Ok(RingVector { p, pairs })
    }

    /// Scalar action of lambda in F_p.
    pub fn scale(&self, lambda: u32) -> RingVector {
        let p = self.p;
        let l = lambda % p.get();
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (p.mul(a, l), p.mul(b, l)))
            .collect();
        RingVector { p, pairs }
    }

    /// <x, y> = a.c + u(a.d + b.c) for x = a+ub, y = c+ud.
    pub fn inner_product(&self, other: &RingVector) -> Result<RingElement> {
        self.check_compat(other)?;
        let p = self.p;
        let mut ac = 0u64;
        let mut ad_bc = 0u64;
        for (&(a, b), &(c, d)) in self.pairs.iter().zip(&other.pairs) {
            ac += a as u64 * c as u64;
            ad_bc += a as u64 * d as u64 + b as u64 * c as u64;
            if ac >= 1 << 62 || ad_bc >= 1 << 62 {
                ac %= p.get() as u64;
                ad_bc %= p.get() as u64;
            }
        }
        Ok(RingElement {
            p,
            a: p.reduce(ac),
            b: p.reduce(ad_bc),
        })
    }

    /// phi(a + ub) = (b, a+b), concatenated blocks of length m each.
    pub fn gray_map(&self) -> FpVector {
        let p = self.p;
        let m = self.len();
        let mut entries = Vec::with_capacity(2 * m);
        entries.extend(self.pairs.iter().map(|&(_, b)| b));
        entries.extend(self.pairs.iter().map(|&(a, b)| p.add(a, b)));
        FpVector::new(p, entries).unwrap()
    }

    /// Hamming weight of the Gray image.
    pub fn lee_weight(&self) -> u64 {
        let p = self.p;
        self.pairs
            .iter()
            .map(|&(a, b)| (b != 0) as u64 + (p.add(a, b) != 0) as u64)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::lex_increment;
    use proptest::prelude::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn ring_multiplication_kills_u_squared() {
        let f3 = p(3);
        // (1+2u)(2+u) = 2 + u(1+4) = 2 + 5u = 2 + 2u mod 3
        let x = RingElement::new(f3, 1, 2).unwrap();
        let y = RingElement::new(f3, 2, 1).unwrap();
        assert_eq!(x.mul(y).unwrap(), RingElement::new(f3, 2, 2).unwrap());
        // u * u = 0
        let u = RingElement::new(f3, 0, 1).unwrap();
        assert!(u.mul(u).unwrap().is_zero());
    }

    #[test]
    fn inner_product_third_coordinate_of_small_binary_code() {
        // y = (1,0) + u(0,1) over F_2: <x, y> = a1 + u(a2 + b1) for every x.
        let f2 = p(2);
        let y = RingVector::from_pairs(f2, vec![(1, 0), (0, 1)]).unwrap();
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        let x = RingVector::from_pairs(f2, vec![(a1, b1), (a2, b2)]).unwrap();
                        let got = x.inner_product(&y).unwrap();
                        assert_eq!(got.a(), a1);
                        assert_eq!(got.b(), (a2 + b1) % 2);
                    }
                }
            }
        }
    }

    #[test]
    fn inner_product_annihilates_zero() {
        let f5 = p(5);
        let x = RingVector::from_pairs(f5, vec![(1, 4), (3, 2), (0, 1)]).unwrap();
        let z = RingVector::zero(f5, 3).unwrap();
        assert!(x.inner_product(&z).unwrap().is_zero());
    }

    #[test]
    fn inner_product_hand_expanded() {
        // x = (1,2)+u(0,1), y = (2,0)+u(1,1) over F_3.
        // Oracle: componentwise ring multiplication, then summation.
        let f3 = p(3);
        let x = RingVector::from_pairs(f3, vec![(1, 0), (2, 1)]).unwrap();
        let y = RingVector::from_pairs(f3, vec![(2, 1), (0, 1)]).unwrap();
        let mut acc = RingElement::zero(f3);
        for i in 0..2 {
            acc = acc.add(x.get(i).mul(y.get(i)).unwrap()).unwrap();
        }
        let got = x.inner_product(&y).unwrap();
        assert_eq!(got, acc);
        assert_eq!(got, RingElement::new(f3, 2, 0).unwrap());
    }

    #[test]
    fn gray_map_examples() {
        let f3 = p(3);
        assert!(RingVector::zero(f3, 4).unwrap().gray_map().is_zero());
        // single component a=1, b=2 over F_3 -> (2, 0)
        let x = RingVector::from_pairs(f3, vec![(1, 2)]).unwrap();
        assert_eq!(x.gray_map().entries(), &[2, 0]);
    }

    #[test]
    fn lee_weight_examples() {
        let f3 = p(3);
        assert_eq!(RingVector::zero(f3, 3).unwrap().lee_weight(), 0);
        let x = RingVector::from_pairs(f3, vec![(1, 2)]).unwrap();
        assert_eq!(x.lee_weight(), 1);
        for pr in [2u64, 3, 5, 7] {
            let f = p(pr);
            let u = RingVector::from_pairs(f, vec![(0, 1)]).unwrap();
            assert_eq!(u.lee_weight(), 2);
        }
    }

    #[test]
    fn gray_is_a_bijection_on_small_spaces() {
        for pr in [2u64, 3] {
            let f = p(pr);
            let m = 2;
            let mut seen = std::collections::HashSet::new();
            let mut v = vec![0u32; 2 * m];
            loop {
                let pairs: Vec<(u32, u32)> = (0..m).map(|i| (v[2 * i], v[2 * i + 1])).collect();
                let x = RingVector::from_pairs(f, pairs).unwrap();
                assert!(seen.insert(x.gray_map()), "gray image collision");
                if !lex_increment(f, &mut v) {
                    break;
                }
            }
            assert_eq!(seen.len(), (pr as usize).pow(2 * m as u32));
        }
    }

    fn ring_vec(pr: u64, m: usize) -> impl Strategy<Value = RingVector> {
        proptest::collection::vec((0u32..pr as u32, 0u32..pr as u32), m)
            .prop_map(move |pairs| RingVector::from_pairs(Prime::new(pr).unwrap(), pairs).unwrap())
    }

    proptest! {
        #[test]
        fn gray_is_fp_linear_and_isometric(
            (x, y) in (ring_vec(5, 3), ring_vec(5, 3)),
            lambda in 0u32..5,
        ) {
            let sum = x.add(&y).unwrap();
            prop_assert_eq!(sum.gray_map(), x.gray_map().add(&y.gray_map()).unwrap());
            prop_assert_eq!(x.scale(lambda).gray_map(), x.gray_map().scale(lambda));
            // isometry: w_L(x - y) = d_H(phi(x), phi(y))
            let diff = x.sub(&y).unwrap();
            prop_assert_eq!(diff.lee_weight(), x.gray_map().hamming_distance(&y.gray_map()).unwrap());
        }

        #[test]
        fn lee_weight_zero_iff_zero(x in ring_vec(3, 4)) {
            prop_assert_eq!(x.lee_weight() == 0, x.is_zero());
            prop_assert_eq!(x.lee_weight(), x.gray_map().hamming_weight());
        }
    }
}
