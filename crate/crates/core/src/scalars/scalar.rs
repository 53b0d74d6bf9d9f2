use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational, ScalarError, Var};

/// An element of the rational function field `ℚ(μ_1, …, μ_n, params)`.
///
/// Stored as `num / den`. Whenever the denominator is a constant it is folded
/// into the numerator, so polynomial scalars always carry `den = 1`. Otherwise
/// common monomial factors are cancelled, an exact polynomial quotient is taken
/// when one exists, and the denominator is made monic. No gcd is computed:
/// equality goes through cross-multiplication.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

/// Arithmetic selector for [`scalar_arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Applies `op`; `Neg` ignores `rhs`.
pub fn scalar_arith(op: ArithOp, lhs: &Scalar, rhs: &Scalar) -> Result<Scalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
        ArithOp::Div => lhs.checked_div(rhs)?,
        ArithOp::Neg => -lhs,
    })
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_poly(Polynomial::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(Polynomial::one())
    }

    pub fn from_poly(num: Polynomial) -> Scalar {
        Scalar {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::from_poly(Polynomial::constant(r))
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(Rational::new(n.into(), d.into()))
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Polynomial::var(v))
    }

    pub fn mu(i: usize) -> Scalar {
        Scalar::var(Var::mu(i))
    }

    /// Named parameter such as `a` or `lam`.
    ///
    /// # Panics
    /// If `name` is not a known parameter.
    pub fn param(name: &str) -> Scalar {
        Scalar::var(Var::param(name).unwrap_or_else(|| panic!("unknown parameter {name}")))
    }

    pub fn new(num: Polynomial, den: Polynomial) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return Scalar::from_poly(num.scale(&inv));
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = (num.div_monomial(&common), den.div_monomial(&common));
        if let Some(c) = den.as_constant() {
            return Scalar::from_poly(num.scale(&c.recip()));
        }
        if let Some(q) = num.div_exact(&den) {
            return Scalar::from_poly(q);
        }
        let lc = den.leading().expect("nonzero denominator").1.recip();
        Scalar {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Scalar::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        if self.den.is_one() {
            return Scalar::from_poly(self.num.pow(e));
        }
        Scalar::reduce(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, k: &Rational) -> Scalar {
        Scalar {
            num: self.num.scale(k),
            den: if k.is_zero() {
                Polynomial::one()
            } else {
                self.den.clone()
            },
        }
    }

    /// Exact value under a full assignment.
    pub fn eval(&self, assignment: &HashMap<Var, Rational>) -> Result<Rational, ScalarError> {
        let d = self.den.eval(assignment)?;
        let n = self.num.eval(assignment)?;
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(n / d)
    }

    /// Specializes the assigned variables and keeps the rest symbolic.
    pub fn partial_eval(&self, assignment: &HashMap<Var, Rational>) -> Result<Scalar, ScalarError> {
        let den = self.den.partial_eval(assignment);
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(Scalar::reduce(self.num.partial_eval(assignment), den))
    }

    /// Substitutes scalars for variables (rational function composition).
    pub fn compose(&self, subst: &HashMap<Var, Scalar>) -> Result<Scalar, ScalarError> {
        let num = compose_poly(&self.num, subst);
        let den = compose_poly(&self.den, subst);
        num.checked_div(&den).map_err(|_| ScalarError::DenominatorVanishes)
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Scalar {
        Scalar::reduce(self.num.rename(&f), self.den.rename(&f))
    }

    /// `(sign, numerator, denominator)` with integer-coefficient polynomials,
    /// the denominator having positive leading coefficient. Used for printing.
    fn normalized(&self) -> (bool, Polynomial, Polynomial) {
        let cn = self.num.content();
        let cd = self.den.content();
        let pn = self.num.scale(&cn.recip());
        let pd = self.den.scale(&cd.recip());
        let r = cn / cd;
        let negative = r.is_negative();
        let r = r.abs();
        let numer = pn.scale(&Rational::from_integer(r.numer().clone()));
        let denom = pd.scale(&Rational::from_integer(r.denom().clone()));
        (negative, numer, denom)
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_leading(&self) -> bool {
        !self.is_zero() && self.normalized().0
    }

    /// A single signed product with no division, e.g. `-2*m1` or `3`.
    pub fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num.terms()[0].1.is_integer()
    }
}

fn compose_poly(p: &Polynomial, subst: &HashMap<Var, Scalar>) -> Scalar {
    let mut total = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_rational(c.clone());
        for (v, e) in m.iter() {
            let factor = match subst.get(&v) {
                Some(s) => s.pow(e),
                None => Scalar::from_poly(Polynomial::term(Rational::one(), Monomial::power(v, e))),
            };
            t = &t * &factor;
        }
        total = &total + &t;
    }
    total
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_poly(self.num.add(&rhs.num));
            }
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_poly(self.num.sub(&rhs.num));
            }
            return Scalar::reduce(self.num.sub(&rhs.num), self.den.clone());
        }
        Scalar::reduce(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_poly(p)
    }
}

/// Compact, re-parseable form: `-2*m1`, `(m1^3-m1)/12`, `5*m1/6`,
/// `(m1^2-1)/(m1-1)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (negative, numer, denom) = self.normalized();
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        let multi = numer.len() > 1;
        match denom.as_constant() {
            Some(d) if d.is_one() => {
                if multi && negative {
                    out.push('(');
                    numer.write_compact(&mut out);
                    out.push(')');
                } else {
                    numer.write_compact(&mut out);
                }
            }
            Some(d) => {
                if multi {
                    out.push('(');
                    numer.write_compact(&mut out);
                    out.push(')');
                } else {
                    numer.write_compact(&mut out);
                }
                out.push('/');
                out.push_str(&d.to_string());
            }
            None => {
                if multi {
                    out.push('(');
                    numer.write_compact(&mut out);
                    out.push(')');
                } else {
                    numer.write_compact(&mut out);
                }
                out.push_str("/(");
                denom.write_compact(&mut out);
                out.push(')');
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: usize) -> Scalar {
        Scalar::mu(i)
    }

    #[test]
    fn add_fractions() {
        assert_eq!(&Scalar::ratio(1, 2) + &Scalar::ratio(1, 3), Scalar::ratio(5, 6));
    }

    #[test]
    fn product_of_mu() {
        let sq = &m(0) * &m(0);
        assert_eq!(sq, m(0).pow(2));
        assert_eq!(sq.to_string(), "m1^2");
    }

    #[test]
    fn division_by_factor() {
        let num = &m(0).pow(2) - &Scalar::one();
        let den = &m(0) - &Scalar::one();
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &m(0) + &Scalar::one());
        assert!(matches!(
            num.checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let raw = Scalar {
            num: (&m(0).pow(2) - &Scalar::one()).num,
            den: (&m(0) - &Scalar::one()).num,
        };
        assert_eq!(raw, &m(0) + &Scalar::one());
        let zero_over = Scalar {
            num: Polynomial::zero(),
            den: (&m(0) + &Scalar::int(3)).num,
        };
        assert_eq!(zero_over, Scalar::zero());
        assert_ne!(m(0), m(1));
    }

    #[test]
    fn evaluation() {
        let mut asg = HashMap::new();
        asg.insert(Var::mu(0), Rational::from_integer(2.into()));
        let s = (&m(0).pow(3) - &m(0)).scale(&Rational::new(1.into(), 12.into()));
        assert_eq!(s.eval(&asg).unwrap(), Rational::new(1.into(), 2.into()));
        asg.insert(Var::mu(1), Rational::from_integer(1.into()));
        let t = &m(0) - &m(1).scale(&Rational::from_integer(2.into()));
        assert!(t.eval(&asg).unwrap().is_zero());
        let inv = t.recip().unwrap();
        assert!(matches!(inv.eval(&asg), Err(ScalarError::DenominatorVanishes)));
        assert!(matches!(m(2).eval(&asg), Err(ScalarError::MissingAssignment(_))));
    }

    #[test]
    fn display_forms() {
        let c = (&m(0).pow(3) - &m(0)).scale(&Rational::new(1.into(), 12.into()));
        assert_eq!(c.to_string(), "(m1^3-m1)/12");
        assert_eq!(m(0).scale(&Rational::from_integer((-2).into())).to_string(), "-2*m1");
        assert_eq!(m(0).scale(&Rational::new(5.into(), 6.into())).to_string(), "5*m1/6");
        assert_eq!(Scalar::ratio(-7, 2).to_string(), "-7/2");
        let frac = Scalar::one().checked_div(&(&m(0) - &Scalar::one())).unwrap();
        assert_eq!(frac.to_string(), "1/(m1-1)");
        assert_eq!((-(&m(0) - &m(1))).to_string(), "-(m1-m2)");
    }
}
