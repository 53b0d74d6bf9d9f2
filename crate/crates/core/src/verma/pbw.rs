use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::algebra::{write_term, BasisSymbol, Kind};
use crate::lattice::LatticeVector;
use crate::scalars::Scalar;

/// A non-central generator appearing in a PBW monomial.
///
/// The derived order compares `α` lexicographically, then `E` before `H`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Factor {
    pub alpha: LatticeVector,
    pub kind: Kind,
}

impl Factor {
    pub fn new(kind: Kind, alpha: LatticeVector) -> Factor {
        Factor { alpha, kind }
    }

    pub fn e(alpha: impl Into<LatticeVector>) -> Factor {
        Factor::new(Kind::E, alpha.into())
    }

    pub fn h(alpha: impl Into<LatticeVector>) -> Factor {
        Factor::new(Kind::H, alpha.into())
    }

    pub fn from_symbol(s: &BasisSymbol) -> Option<Factor> {
        Some(Factor::new(s.kind()?, s.index()?.clone()))
    }

    pub fn symbol(&self) -> BasisSymbol {
        self.kind.symbol(self.alpha.clone())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An ordered product of factors applied to the generating vector. The
/// sorting convention belongs to the module it lives in.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial(SmallVec<[Factor; 4]>);

impl PBWMonomial {
    pub fn one() -> PBWMonomial {
        PBWMonomial::default()
    }

    /// Wraps factors that are already in the module's canonical order.
    pub fn from_sorted(factors: impl IntoIterator<Item = Factor>) -> PBWMonomial {
        PBWMonomial(factors.into_iter().collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn prepend(&self, f: Factor) -> PBWMonomial {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(f);
        v.extend(self.0.iter().cloned());
        PBWMonomial(v)
    }

    pub(crate) fn split_first(&self) -> Option<(&Factor, PBWMonomial)> {
        let (first, rest) = self.0.split_first()?;
        Some((first, PBWMonomial(rest.iter().cloned().collect())))
    }

    /// Sum of the factor indices in rank `n`.
    pub fn weight(&self, n: usize) -> LatticeVector {
        self.0.iter().fold(LatticeVector::zero(n), |acc, f| &acc + &f.alpha)
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Finite combination of `monomial ⊗ base` vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector<B: Ord> {
    terms: BTreeMap<(PBWMonomial, B), Scalar>,
}

impl<B: Ord> Default for ModuleVector<B> {
    fn default() -> Self {
        ModuleVector { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> ModuleVector<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(m: PBWMonomial, base: B) -> Self {
        let mut v = Self::zero();
        v.add_term(m, base, Scalar::one());
        v
    }

    pub fn add_term(&mut self, m: PBWMonomial, base: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (m, base);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Scalar, other: &Self) {
        if k.is_zero() {
            return;
        }
        for ((m, b), c) in &other.terms {
            self.add_term(m.clone(), b.clone(), k * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &B, &Scalar)> {
        self.terms.iter().map(|((m, b), c)| (m, b, c))
    }

    pub fn coeff(&self, m: &PBWMonomial, base: &B) -> Scalar {
        self.terms.get(&(m.clone(), base.clone())).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(k, self);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Scalar::int(-1), other);
        out
    }

    pub fn map_coeffs<E>(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for ((m, b), c) in &self.terms {
            out.add_term(m.clone(), b.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for ModuleVector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, ((m, b), c)) in self.terms.iter().enumerate() {
            let body = if m.is_one() { b.to_string() } else { format!("{m}*{b}") };
            write_term(&mut out, c, &body, i == 0);
        }
        f.write_str(&out)
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Debug for ModuleVector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
