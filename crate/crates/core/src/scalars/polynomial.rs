use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, ScalarError, Var};

/// A sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted by descending graded-lex monomial order with no zero
/// coefficients, so the representation is canonical and `==` is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms, combining equal monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if out.last().is_some_and(|l| l.1.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| l.1.is_zero()) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|p| p.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.mul_term(m, c);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
    }

    /// Product with a single term; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so the
    /// division algorithm leaves remainder zero exactly when `divisor` divides
    /// `self`. A leading term that is not divisible settles the question at once.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Polynomial { terms: quot })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, (m, _)| g.gcd(m))
    }

    pub fn div_monomial(&self, d: &Monomial) -> Polynomial {
        if d.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(d).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Rational content `c` with `self = c * p`, where `p` has coprime integer
    /// coefficients and a positive leading coefficient. Zero has content zero.
    pub fn content(&self) -> Rational {
        let Some((_, lc)) = self.leading() else {
            return Rational::zero();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rational::new(num_gcd, den_lcm);
        if lc.is_negative() {
            -content
        } else {
            content
        }
    }

    /// Evaluates with every variable assigned.
    pub fn eval(&self, assignment: &HashMap<Var, Rational>) -> Result<Rational, ScalarError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = assignment
                    .get(&v)
                    .ok_or(ScalarError::MissingAssignment(v.to_string()))?;
                t *= pow_rational(x, e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes the assigned variables and keeps the others symbolic.
    pub fn partial_eval(&self, assignment: &HashMap<Var, Rational>) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let rest = Monomial::from_pairs(m.iter().filter(|&(v, e)| match assignment.get(&v) {
                Some(x) => {
                    coeff *= pow_rational(x, e);
                    false
                }
                None => true,
            }));
            (rest, coeff)
        }))
    }

    /// Renames variables through `f`; the map must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.iter().map(|(v, e)| (f(v), e))), c.clone())),
        )
    }

    /// Writes the polynomial with integer coefficients in compact form, e.g. `m1^3-m1`.
    /// Callers are expected to have cleared denominators.
    pub(crate) fn write_compact(&self, out: &mut String) {
        if self.is_zero() {
            out.push('0');
            return;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let a = c.abs();
            if m.is_one() {
                let _ = write!(out, "{a}");
            } else if a.is_one() {
                let _ = write!(out, "{m}");
            } else {
                let _ = write!(out, "{a}*{m}");
            }
        }
    }
}

pub(crate) fn pow_rational(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_compact(&mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(i: usize) -> Polynomial {
        Polynomial::var(Var::mu(i))
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn canonical_after_cancellation() {
        let p = mu(0).add(&mu(1));
        let q = p.sub(&mu(1));
        assert_eq!(q, mu(0));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn exact_division() {
        // (m1^2 - 1) / (m1 - 1) = m1 + 1
        let num = mu(0).mul(&mu(0)).sub(&c(1));
        let den = mu(0).sub(&c(1));
        assert_eq!(num.div_exact(&den), Some(mu(0).add(&c(1))));
        assert_eq!(num.div_exact(&mu(1)), None);
        let prod = mu(0).add(&mu(1)).mul(&mu(0).sub(&mu(2)));
        assert_eq!(prod.div_exact(&mu(0).sub(&mu(2))), Some(mu(0).add(&mu(1))));
    }

    #[test]
    fn content_is_signed_by_leading_term() {
        let p = mu(0).scale(&Rational::new((-4).into(), 3.into())).add(&c(2));
        assert_eq!(p.content(), Rational::new((-2).into(), 3.into()));
    }

    #[test]
    fn compact_printing() {
        let p = mu(0).pow(3).sub(&mu(0));
        assert_eq!(p.to_string(), "m1^3-m1");
        assert_eq!(
            mu(0).sub(&mu(1).scale(&Rational::from_integer(2.into()))).to_string(),
            "m1-2*m2"
        );
    }
}
