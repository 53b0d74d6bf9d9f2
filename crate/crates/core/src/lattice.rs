//! The index lattice `ℤⁿ` with its lexicographic group order and the map
//! `α ↦ μ·α` into the scalar field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalars::{Monomial, Polynomial, Rational, Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A point of `ℤⁿ`. The derived order is lexicographic, which is the group
/// order used throughout.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector(SmallVec<[i64; 4]>);

/// Position relative to the origin under the lex order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SignClass {
    Positive,
    Zero,
    Negative,
}

impl LatticeVector {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> LatticeVector {
        LatticeVector(coords.into_iter().collect())
    }

    pub fn zero(n: usize) -> LatticeVector {
        LatticeVector(SmallVec::from_elem(0, n))
    }

    /// `i`-th unit vector (zero based).
    pub fn unit(n: usize, i: usize) -> LatticeVector {
        let mut v = LatticeVector::zero(n);
        v.0[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn sign_class(&self) -> SignClass {
        match self.0.iter().find(|&&c| c != 0) {
            None => SignClass::Zero,
            Some(&c) if c > 0 => SignClass::Positive,
            Some(_) => SignClass::Negative,
        }
    }

    /// `Δ⁺`
    pub fn is_positive(&self) -> bool {
        self.sign_class() == SignClass::Positive
    }

    /// `Δ⁻`
    pub fn is_negative(&self) -> bool {
        self.sign_class() == SignClass::Negative
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn in_window(&self, bound: i64) -> bool {
        self.max_norm() <= bound
    }

    /// First coordinate, the `ℤ`-degree of the coarse grading.
    pub fn head(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// All coordinates after the first.
    pub fn tail(&self) -> LatticeVector {
        LatticeVector(self.0.iter().skip(1).copied().collect())
    }

    /// `(head, tail...)`
    pub fn prepend(head: i64, tail: &LatticeVector) -> LatticeVector {
        LatticeVector(std::iter::once(head).chain(tail.0.iter().copied()).collect())
    }

    fn zip_with(&self, other: &LatticeVector, f: impl Fn(i64, i64) -> i64) -> LatticeVector {
        assert_eq!(self.dim(), other.dim(), "lattice dimension mismatch");
        LatticeVector(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| f(a, b)).collect())
    }
}

/// Lexicographic comparison; fails on vectors of different rank.
pub fn lex_cmp(a: &LatticeVector, b: &LatticeVector) -> Result<Ordering, LatticeError> {
    if a.dim() != b.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.cmp(b))
}

/// `μ·α = Σ α_i μ_i` as a linear polynomial.
pub fn mu_form(alpha: &LatticeVector) -> Scalar {
    Scalar::from_poly(Polynomial::from_terms(
        alpha
            .0
            .iter()
            .enumerate()
            .map(|(i, &a)| (Monomial::var(Var::mu(i)), Rational::from_integer(a.into()))),
    ))
}

/// Every vector of `ℤⁿ` with all coordinates in `[-bound, bound]`, in lex order.
pub fn window(n: usize, bound: i64) -> Vec<LatticeVector> {
    box_points(&vec![(-bound, bound); n])
}

/// Every vector with `lo_i <= v_i <= hi_i`, in lex order.
pub fn box_points(ranges: &[(i64, i64)]) -> Vec<LatticeVector> {
    let mut out = vec![LatticeVector(SmallVec::new())];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for v in &out {
            for c in lo..=hi {
                let mut w = v.clone();
                w.0.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(c: &[i64]) -> Self {
        LatticeVector(c.into())
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(c: [i64; N]) -> Self {
        LatticeVector(c.iter().copied().collect())
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(LatticeVector::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<const N: usize>(c: [i64; N]) -> LatticeVector {
        LatticeVector::from(c)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_cmp(&v([1, -5]), &v([0, 100])), Ok(Ordering::Greater));
        assert_eq!(lex_cmp(&v([0, 0]), &v([0, 0])), Ok(Ordering::Equal));
        assert_eq!(lex_cmp(&v([-1, 7]), &v([0, 0])), Ok(Ordering::Less));
        assert!(v([-1, 7]).is_negative());
        assert!(matches!(
            lex_cmp(&v([1]), &v([1, 0])),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mu_form_examples() {
        let m1 = Scalar::mu(0);
        let m2 = Scalar::mu(1);
        assert_eq!(mu_form(&v([1, -2])), &m1 - &(&m2 + &m2));
        assert!(mu_form(&v([0, 0])).is_zero());
        assert_eq!(mu_form(&v([3])), &Scalar::int(3) * &m1);
    }

    #[test]
    fn sign_classes() {
        assert_eq!(v([0, 0, 0]).sign_class(), SignClass::Zero);
        assert_eq!(v([0, 0, -1]).sign_class(), SignClass::Negative);
        assert_eq!(v([0, 2, -9]).sign_class(), SignClass::Positive);
    }

    #[test]
    fn window_is_sorted_and_complete() {
        let w = window(2, 1);
        assert_eq!(w.len(), 9);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(w[0], v([-1, -1]));
    }
}
