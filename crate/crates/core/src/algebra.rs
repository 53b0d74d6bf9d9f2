//! Basis, elements and Lie brackets of the solenoidal Witt algebra, its
//! semidirect product with the Laurent polynomials, and the three-dimensional
//! central extension.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::lattice::{self, mu_form, LatticeVector};
use crate::scalars::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("symbol {symbol} is not admitted by the {variant:?} algebra")]
    VariantMismatch {
        variant: AlgebraVariant,
        symbol: BasisSymbol,
    },
}

/// A basis vector: `e_{μ·α} = t^α d_μ`, `h_α = t^α`, or a central element.
///
/// `E(0)` is the degree operator `d_μ` and `H(0)` is `h_0`. The derived order
/// (all `E` by lex index, then all `H`, then `C1 < C2 < C3`) is the canonical
/// term order of [`AlgebraElement`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisSymbol {
    E(LatticeVector),
    H(LatticeVector),
    C1,
    C2,
    C3,
}

/// The two families of non-central generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    E,
    H,
}

impl Kind {
    pub fn symbol(self, alpha: LatticeVector) -> BasisSymbol {
        match self {
            Kind::E => BasisSymbol::E(alpha),
            Kind::H => BasisSymbol::H(alpha),
        }
    }
}

impl BasisSymbol {
    pub fn index(&self) -> Option<&LatticeVector> {
        match self {
            BasisSymbol::E(a) | BasisSymbol::H(a) => Some(a),
            _ => None,
        }
    }

    pub fn kind(&self) -> Option<Kind> {
        match self {
            BasisSymbol::E(_) => Some(Kind::E),
            BasisSymbol::H(_) => Some(Kind::H),
            _ => None,
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, BasisSymbol::C1 | BasisSymbol::C2 | BasisSymbol::C3)
    }

    pub fn shape(&self) -> SymbolShape {
        match self {
            BasisSymbol::E(_) => SymbolShape::E,
            BasisSymbol::H(_) => SymbolShape::H,
            BasisSymbol::C1 => SymbolShape::C1,
            BasisSymbol::C2 => SymbolShape::C2,
            BasisSymbol::C3 => SymbolShape::C3,
        }
    }

    /// Lattice degree; central symbols sit in degree zero.
    pub fn degree(&self, n: usize) -> LatticeVector {
        self.index().cloned().unwrap_or_else(|| LatticeVector::zero(n))
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::E(a) => write!(f, "E{a}"),
            BasisSymbol::H(a) => write!(f, "H{a}"),
            BasisSymbol::C1 => f.write_str("C1"),
            BasisSymbol::C2 => f.write_str("C2"),
            BasisSymbol::C3 => f.write_str("C3"),
        }
    }
}

/// Which algebra a bracket is taken in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraVariant {
    /// `W(n)_μ`: only `E` symbols.
    SolWitt,
    /// `WA(n)_μ = W(n)_μ ⋉ A_n`: `E` and `H`, no centre.
    WA,
    /// The central extension by `C1, C2, C3`.
    HVir,
}

impl AlgebraVariant {
    pub fn admits(self, s: &BasisSymbol) -> bool {
        match self {
            AlgebraVariant::SolWitt => matches!(s, BasisSymbol::E(_)),
            AlgebraVariant::WA => matches!(s, BasisSymbol::E(_) | BasisSymbol::H(_)),
            AlgebraVariant::HVir => true,
        }
    }

    fn central(self) -> bool {
        self == AlgebraVariant::HVir
    }
}

/// A finite linear combination of basis symbols. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisSymbol, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn basis(s: BasisSymbol) -> AlgebraElement {
        AlgebraElement::term(Scalar::one(), s)
    }

    pub fn term(c: Scalar, s: BasisSymbol) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        x.add_term(s, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisSymbol, Scalar)>) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        for (s, c) in terms {
            x.add_term(s, c);
        }
        x
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&s);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Scalar, other: &AlgebraElement) {
        if k.is_zero() {
            return;
        }
        for (s, c) in &other.terms {
            self.add_term(s.clone(), k * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &BasisSymbol) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_default()
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

    pub fn scale(&self, k: &Scalar) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), k * c)).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::int(-1), other);
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Scalar::int(-1))
    }

    /// Drops the central terms.
    pub fn non_central(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| !s.is_central())
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<E>(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<AlgebraElement, E> {
        let mut out = AlgebraElement::zero();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn check_variant(&self, variant: AlgebraVariant) -> Result<(), AlgebraError> {
        match self.terms.keys().find(|s| !variant.admits(s)) {
            Some(s) => Err(AlgebraError::VariantMismatch {
                variant,
                symbol: s.clone(),
            }),
            None => Ok(()),
        }
    }
}

impl From<BasisSymbol> for AlgebraElement {
    fn from(s: BasisSymbol) -> Self {
        AlgebraElement::basis(s)
    }
}

/// Writes `coeff*SYMBOL`, parenthesizing coefficients that are not a single product.
pub(crate) fn write_term(out: &mut String, coeff: &Scalar, body: &str, first: bool) {
    let negative = coeff.is_negative_leading();
    let magnitude = if negative && !first { -coeff } else { coeff.clone() };
    if !first {
        out.push_str(if negative { " - " } else { " + " });
    }
    if magnitude.is_one() {
        out.push_str(body);
    } else if magnitude == Scalar::int(-1) {
        out.push('-');
        out.push_str(body);
    } else if magnitude.is_atomic() {
        out.push_str(&format!("{magnitude}*{body}"));
    } else {
        out.push_str(&format!("({magnitude})*{body}"));
    }
}

/// Re-parseable literal, e.g. `-2*m1*E[0,0] + ((m1^3-m1)/12)*C1`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (s, c)) in self.terms.iter().enumerate() {
            write_term(&mut out, c, &s.to_string(), k == 0);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `((μ·α)³ − μ·α)/12`, the Virasoro central coefficient.
pub fn virasoro_charge(x: &Scalar) -> Scalar {
    (&x.pow(3) - x).scale(&Rational::new(1.into(), 12.into()))
}

/// `(μ·α)² − μ·α`, the mixed central coefficient.
pub fn mixed_charge(x: &Scalar) -> Scalar {
    &x.pow(2) - x
}

/// `μ·α / 3`, the Heisenberg central coefficient.
pub fn heisenberg_charge(x: &Scalar) -> Scalar {
    x.scale(&Rational::new(1.into(), 3.into()))
}

/// Bracket of two basis symbols.
///
/// The table is the one of the central extension; for `WA` and `SolWitt` the
/// central terms are left out. `[h_β, e_α]` is taken as `−[e_α, h_β]`.
pub fn bracket_basis(variant: AlgebraVariant, x: &BasisSymbol, y: &BasisSymbol) -> AlgebraElement {
    use BasisSymbol::*;
    let central = variant.central();
    match (x, y) {
        (E(a), E(b)) => {
            let mut out = AlgebraElement::term(mu_form(&(b - a)), E(a + b));
            if central && (a + b).is_zero() {
                out.add_term(C1, virasoro_charge(&mu_form(a)));
            }
            out
        }
        (E(a), H(b)) => {
            let mut out = AlgebraElement::term(mu_form(b), H(a + b));
            if central && (a + b).is_zero() {
                out.add_term(C2, mixed_charge(&mu_form(a)));
            }
            out
        }
        (H(_), E(_)) => bracket_basis(variant, y, x).neg(),
        (H(a), H(b)) => {
            if central && (a + b).is_zero() {
                AlgebraElement::term(heisenberg_charge(&mu_form(a)), C3)
            } else {
                AlgebraElement::zero()
            }
        }
        _ => AlgebraElement::zero(),
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(
    variant: AlgebraVariant,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    x.check_variant(variant)?;
    y.check_variant(variant)?;
    let mut out = AlgebraElement::zero();
    for (s, c) in x.terms() {
        for (t, d) in y.terms() {
            out.add_scaled(&(c * d), &bracket_basis(variant, s, t));
        }
    }
    Ok(out)
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]`
pub fn jacobi_defect(
    variant: AlgebraVariant,
    x: &AlgebraElement,
    y: &AlgebraElement,
    z: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let a = bracket(variant, &bracket(variant, x, y)?, z)?;
    let b = bracket(variant, &bracket(variant, y, z)?, x)?;
    let c = bracket(variant, &bracket(variant, z, x)?, y)?;
    Ok(a.add(&b).add(&c))
}

/// Memoized basis brackets, for sweeps over many triples.
pub struct BracketCache {
    variant: AlgebraVariant,
    table: HashMap<(BasisSymbol, BasisSymbol), Rc<AlgebraElement>>,
}

impl BracketCache {
    pub fn new(variant: AlgebraVariant) -> BracketCache {
        BracketCache {
            variant,
            table: HashMap::new(),
        }
    }

    pub fn variant(&self) -> AlgebraVariant {
        self.variant
    }

    pub fn basis(&mut self, x: &BasisSymbol, y: &BasisSymbol) -> Rc<AlgebraElement> {
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.table.get(&key) {
            return Rc::clone(hit);
        }
        let out = Rc::new(bracket_basis(self.variant, x, y));
        self.table.insert(key, Rc::clone(&out));
        out
    }

    /// `[x, s]` for an element `x` and a basis symbol `s`, added into `out`.
    fn add_element_basis(&mut self, out: &mut AlgebraElement, x: &AlgebraElement, s: &BasisSymbol) {
        for (t, c) in x.terms() {
            let b = self.basis(t, s);
            out.add_scaled(c, &b);
        }
    }

    /// Jacobi defect of three basis symbols.
    pub fn jacobi_basis(&mut self, x: &BasisSymbol, y: &BasisSymbol, z: &BasisSymbol) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
            let pq = self.basis(p, q);
            self.add_element_basis(&mut out, &pq, r);
        }
        out
    }
}

/// Outcome of [`degree_of`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Degree {
    Homogeneous(LatticeVector),
    NonHomogeneous,
    /// The zero element, homogeneous of every degree.
    Zero,
}

/// The common lattice degree of the terms of `x` in rank `n`.
pub fn degree_of(x: &AlgebraElement, n: usize) -> Degree {
    let mut degrees = x.terms().map(|(s, _)| s.degree(n));
    let Some(first) = degrees.next() else {
        return Degree::Zero;
    };
    if degrees.all(|d| d == first) {
        Degree::Homogeneous(first)
    } else {
        Degree::NonHomogeneous
    }
}

/// A family of basis symbols: one of the two indexed families with the index
/// left free, or a single central symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SymbolShape {
    E,
    H,
    C1,
    C2,
    C3,
}

/// Result of [`subalgebra_check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Closure {
    Closed,
    Counterexample {
        x: BasisSymbol,
        y: BasisSymbol,
        escaping: BasisSymbol,
    },
}

/// All symbols of the given shapes with indices in the window `|α_i| <= bound`.
pub fn shape_window(shapes: &[SymbolShape], n: usize, bound: i64) -> Vec<BasisSymbol> {
    let points = lattice::window(n, bound);
    let mut out = Vec::new();
    let mut shapes = shapes.to_vec();
    shapes.sort();
    shapes.dedup();
    for shape in shapes {
        match shape {
            SymbolShape::E => out.extend(points.iter().cloned().map(BasisSymbol::E)),
            SymbolShape::H => out.extend(points.iter().cloned().map(BasisSymbol::H)),
            SymbolShape::C1 => out.push(BasisSymbol::C1),
            SymbolShape::C2 => out.push(BasisSymbol::C2),
            SymbolShape::C3 => out.push(BasisSymbol::C3),
        }
    }
    out
}

/// The windowed basis of `variant`.
pub fn basis_window(variant: AlgebraVariant, n: usize, bound: i64) -> Vec<BasisSymbol> {
    let shapes: &[SymbolShape] = match variant {
        AlgebraVariant::SolWitt => &[SymbolShape::E],
        AlgebraVariant::WA => &[SymbolShape::E, SymbolShape::H],
        AlgebraVariant::HVir => &[
            SymbolShape::E,
            SymbolShape::H,
            SymbolShape::C1,
            SymbolShape::C2,
            SymbolShape::C3,
        ],
    };
    shape_window(shapes, n, bound)
}

/// Checks that brackets of windowed members of `family` stay in the span of `family`.
///
/// Membership is by shape, so a bracket landing outside the index window is
/// not an escape. When several pairs escape, the one with the smallest total
/// index size is reported, preferring a lex-larger left argument.
pub fn subalgebra_check(variant: AlgebraVariant, family: &[SymbolShape], n: usize, bound: i64) -> Closure {
    let members = shape_window(family, n, bound);
    let mut best: Option<((i64, std::cmp::Reverse<BasisSymbol>), Closure)> = None;
    for x in &members {
        for y in &members {
            let br = bracket_basis(variant, x, y);
            let Some((escaping, _)) = br.terms().find(|(s, _)| !family.contains(&s.shape())) else {
                continue;
            };
            let size = x.index().map_or(0, |a| a.l1_norm()) + y.index().map_or(0, |a| a.l1_norm());
            let key = (size, std::cmp::Reverse(x.clone()));
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((
                    key,
                    Closure::Counterexample {
                        x: x.clone(),
                        y: y.clone(),
                        escaping: escaping.clone(),
                    },
                ));
            }
        }
    }
    best.map_or(Closure::Closed, |(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, Var};

    fn e<const N: usize>(a: [i64; N]) -> BasisSymbol {
        BasisSymbol::E(a.into())
    }

    fn h<const N: usize>(a: [i64; N]) -> BasisSymbol {
        BasisSymbol::H(a.into())
    }

    fn br(x: &BasisSymbol, y: &BasisSymbol) -> AlgebraElement {
        bracket_basis(AlgebraVariant::HVir, x, y)
    }

    #[test]
    fn virasoro_pair() {
        let m1 = Scalar::mu(0);
        let expected = AlgebraElement::from_terms([
            (e([0, 0]), m1.scale(&Rational::from_integer((-2).into()))),
            (
                BasisSymbol::C1,
                (&m1.pow(3) - &m1).scale(&Rational::new(1.into(), 12.into())),
            ),
        ]);
        assert_eq!(br(&e([1, 0]), &e([-1, 0])), expected);
        assert_eq!(expected.to_string(), "-2*m1*E[0,0] + ((m1^3-m1)/12)*C1");
    }

    #[test]
    fn mixed_pair() {
        let m2 = Scalar::mu(1);
        let expected = AlgebraElement::from_terms([(h([0, 0]), -&m2), (BasisSymbol::C2, &m2.pow(2) - &m2)]);
        assert_eq!(br(&e([0, 1]), &h([0, -1])), expected);
        assert_eq!(br(&h([0, -1]), &e([0, 1])), expected.neg());
    }

    #[test]
    fn heisenberg_pair() {
        let expected = AlgebraElement::term(Scalar::mu(0).scale(&Rational::new(1.into(), 3.into())), BasisSymbol::C3);
        assert_eq!(br(&h([1, 0]), &h([-1, 0])), expected);
        assert!(br(&h([1, 0]), &h([1, 0])).is_zero());
        assert!(br(&e([1, 0]), &e([1, 0])).is_zero());
    }

    #[test]
    fn central_terms_dropped_outside_hvir() {
        let w = bracket_basis(AlgebraVariant::WA, &e([1, 0]), &e([-1, 0]));
        assert_eq!(
            w,
            AlgebraElement::term(Scalar::mu(0).scale(&Rational::from_integer((-2).into())), e([0, 0]))
        );
        let x = AlgebraElement::basis(h([1, 0]));
        let y = AlgebraElement::basis(e([0, 1]));
        assert!(matches!(
            bracket(AlgebraVariant::SolWitt, &x, &y),
            Err(AlgebraError::VariantMismatch { .. })
        ));
        assert!(matches!(
            bracket(AlgebraVariant::WA, &AlgebraElement::basis(BasisSymbol::C1), &y),
            Err(AlgebraError::VariantMismatch { .. })
        ));
    }

    #[test]
    fn jacobi_examples() {
        let v = AlgebraVariant::HVir;
        let el = |s: BasisSymbol| AlgebraElement::basis(s);
        assert!(jacobi_defect(v, &el(e([1, 0])), &el(e([0, 1])), &el(e([-1, -1])))
            .unwrap()
            .is_zero());
        assert!(jacobi_defect(v, &el(e([1, 0])), &el(h([0, 1])), &el(h([-1, -1])))
            .unwrap()
            .is_zero());
        assert!(jacobi_defect(v, &el(BasisSymbol::C1), &el(e([5, 2])), &el(h([-3, 0])))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(
            degree_of(&AlgebraElement::basis(e([2, -1])), 2),
            Degree::Homogeneous([2, -1].into())
        );
        assert_eq!(
            degree_of(&AlgebraElement::term(Scalar::int(3), BasisSymbol::C2), 2),
            Degree::Homogeneous([0, 0].into())
        );
        let mixed = AlgebraElement::basis(e([1, 0])).add(&AlgebraElement::basis(h([0, 1])));
        assert_eq!(degree_of(&mixed, 2), Degree::NonHomogeneous);
        assert_eq!(degree_of(&AlgebraElement::zero(), 2), Degree::Zero);
    }

    #[test]
    fn subalgebras() {
        use SymbolShape as S;
        let v = AlgebraVariant::HVir;
        assert_eq!(subalgebra_check(v, &[S::E, S::C1], 2, 2), Closure::Closed);
        assert_eq!(subalgebra_check(v, &[S::H, S::C3], 2, 2), Closure::Closed);
        assert_eq!(
            subalgebra_check(v, &[S::H, S::C2], 2, 2),
            Closure::Counterexample {
                x: h([1, 0]),
                y: h([-1, 0]),
                escaping: BasisSymbol::C3
            }
        );
    }

    #[test]
    fn classical_limit_n1() {
        // μ_1 = 1 recovers the twisted Heisenberg-Virasoro structure constants
        let asg = [(Var::mu(0), Rational::from_integer(1.into()))].into_iter().collect();
        let at_one = |x: AlgebraElement| x.map_coeffs(|c| c.partial_eval(&asg)).unwrap();
        let got = at_one(br(&e([3]), &e([-3])));
        let expected = AlgebraElement::from_terms([(e([0]), Scalar::int(-6)), (BasisSymbol::C1, Scalar::int(2))]);
        assert_eq!(got, expected);
    }
}
