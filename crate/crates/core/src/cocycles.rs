//! 2-cochains on `WA(n)_μ`: the three generating cocycles, the cocycle
//! condition, coboundaries, windowed decomposition, and the functional
//! equations satisfied by the central coefficient functions.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{
    bracket_basis, heisenberg_charge, mixed_charge, virasoro_charge, AlgebraElement, AlgebraVariant, BasisSymbol,
    BracketCache,
};
use crate::lattice::mu_form;
use crate::scalars::{Scalar, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("pair ({x}, {y}) lies outside the cochain window")]
    OutOfWindow { x: BasisSymbol, y: BasisSymbol },
    #[error("values on ({x}, {y}) and ({y}, {x}) are not opposite")]
    AntisymmetryViolation { x: BasisSymbol, y: BasisSymbol },
    #[error("symbol {0} is not a basis symbol of WA")]
    NotWA(BasisSymbol),
    #[error("window bound {0} is too small; at least 2 is needed")]
    UnderdeterminedWindow(i64),
    #[error("cochain is not a cocycle on the window: {0}")]
    Inconsistent(Box<Witness>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Why a decomposition failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The cocycle condition fails on this triple.
    DefectTriple(BasisSymbol, BasisSymbol, BasisSymbol),
    /// The linear system has no solution; this pair's equation is the first
    /// one that reduced to `0 = nonzero`.
    ResidualPair(BasisSymbol, BasisSymbol),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::DefectTriple(x, y, z) => write!(f, "nonzero defect on ({x}, {y}, {z})"),
            Witness::ResidualPair(x, y) => write!(f, "no solution on pair ({x}, {y})"),
        }
    }
}

/// A bilinear alternating form, given by its values on basis pairs.
pub trait Cochain {
    fn eval(&self, x: &BasisSymbol, y: &BasisSymbol) -> Result<Scalar, CochainError>;

    /// Bilinear extension to elements; central terms are ignored.
    fn eval_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Scalar, CochainError> {
        let mut acc = Scalar::zero();
        for (s, c) in x.terms() {
            for (t, d) in y.terms() {
                if s.is_central() || t.is_central() {
                    continue;
                }
                let v = self.eval(s, t)?;
                if !v.is_zero() {
                    acc = &acc + &(&(c * d) * &v);
                }
            }
        }
        Ok(acc)
    }
}

impl<C: Cochain + ?Sized> Cochain for &C {
    fn eval(&self, x: &BasisSymbol, y: &BasisSymbol) -> Result<Scalar, CochainError> {
        (**self).eval(x, y)
    }
}

/// One of the three generating cocycles `C_{μ,1}, C_{μ,2}, C_{μ,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    One,
    Two,
    Three,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::One, Generator::Two, Generator::Three];

    pub fn from_index(i: u8) -> Option<Generator> {
        match i {
            1 => Some(Generator::One),
            2 => Some(Generator::Two),
            3 => Some(Generator::Three),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Generator::One => 1,
            Generator::Two => 2,
            Generator::Three => 3,
        }
    }
}

/// `C_{μ,i}` on all basis pairs:
/// `C1(e_α, e_{-α}) = ((μ·α)³ − μ·α)/12`, `C2(e_α, h_{-α}) = (μ·α)² − μ·α`,
/// `C3(h_α, h_{-α}) = μ·α/3`, zero elsewhere, extended antisymmetrically.
pub fn generator_cocycle(which: Generator) -> GeneratorCocycle {
    GeneratorCocycle(which)
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorCocycle(pub Generator);

impl Cochain for GeneratorCocycle {
    fn eval(&self, x: &BasisSymbol, y: &BasisSymbol) -> Result<Scalar, CochainError> {
        use BasisSymbol::*;
        for s in [x, y] {
            if s.is_central() {
                return Err(CochainError::NotWA(s.clone()));
            }
        }
        let opposite = |a: &crate::lattice::LatticeVector, b: &crate::lattice::LatticeVector| (a + b).is_zero();
        Ok(match (self.0, x, y) {
            (Generator::One, E(a), E(b)) if opposite(a, b) => virasoro_charge(&mu_form(a)),
            (Generator::Two, E(a), H(b)) if opposite(a, b) => mixed_charge(&mu_form(a)),
            (Generator::Two, H(b), E(a)) if opposite(a, b) => -mixed_charge(&mu_form(a)),
            (Generator::Three, H(a), H(b)) if opposite(a, b) => heisenberg_charge(&mu_form(a)),
            _ => Scalar::zero(),
        })
    }
}

/// A 2-cochain stored on the pairs of a window `|α_i| <= bound` of WA symbols.
///
/// Only pairs `x < y` are stored; absent pairs are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2 {
    n: usize,
    bound: i64,
    values: BTreeMap<(BasisSymbol, BasisSymbol), Scalar>,
}

impl Cochain2 {
    pub fn zero(n: usize, bound: i64) -> Cochain2 {
        Cochain2 {
            n,
            bound,
            values: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn contains(&self, s: &BasisSymbol) -> bool {
        match s.index() {
            Some(a) => a.dim() == self.n && a.in_window(self.bound),
            None => false,
        }
    }

    fn check(&self, s: &BasisSymbol) -> Result<(), CochainError> {
        if s.is_central() {
            Err(CochainError::NotWA(s.clone()))
        } else {
            Ok(())
        }
    }

    /// Builds a cochain from values on ordered pairs.
    ///
    /// Both orientations may be given as long as they agree up to sign; a
    /// non-zero diagonal value is rejected.
    pub fn from_pairs(
        n: usize,
        bound: i64,
        pairs: impl IntoIterator<Item = ((BasisSymbol, BasisSymbol), Scalar)>,
    ) -> Result<Cochain2, CochainError> {
        let mut out = Cochain2::zero(n, bound);
        let mut seen: HashMap<(BasisSymbol, BasisSymbol), Scalar> = HashMap::new();
        for ((x, y), v) in pairs {
            out.check(&x)?;
            out.check(&y)?;
            if !out.contains(&x) || !out.contains(&y) {
                return Err(CochainError::OutOfWindow { x, y });
            }
            if x == y {
                if !v.is_zero() {
                    return Err(CochainError::AntisymmetryViolation { x: x.clone(), y });
                }
                continue;
            }
            let (key, value) = if x < y { ((x, y), v) } else { ((y, x), -v) };
            if let Some(prev) = seen.get(&key) {
                if *prev != value {
                    return Err(CochainError::AntisymmetryViolation { x: key.0, y: key.1 });
                }
                continue;
            }
            seen.insert(key.clone(), value.clone());
            if !value.is_zero() {
                out.values.insert(key, value);
            }
        }
        Ok(out)
    }

    /// Tabulates `f` on every ordered pair of the window, rejecting it when
    /// `f(x, y) != -f(y, x)` anywhere.
    pub fn from_fn(
        n: usize,
        bound: i64,
        mut f: impl FnMut(&BasisSymbol, &BasisSymbol) -> Result<Scalar, CochainError>,
    ) -> Result<Cochain2, CochainError> {
        let symbols = wa_window(n, bound);
        let mut out = Cochain2::zero(n, bound);
        for (i, x) in symbols.iter().enumerate() {
            if !f(x, x)?.is_zero() {
                return Err(CochainError::AntisymmetryViolation {
                    x: x.clone(),
                    y: x.clone(),
                });
            }
            for y in &symbols[i + 1..] {
                let v = f(x, y)?;
                if f(y, x)? != -&v {
                    return Err(CochainError::AntisymmetryViolation {
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
                if !v.is_zero() {
                    out.values.insert((x.clone(), y.clone()), v);
                }
            }
        }
        Ok(out)
    }

    /// Restriction of any cochain to the window.
    pub fn tabulate(c: &dyn Cochain, n: usize, bound: i64) -> Result<Cochain2, CochainError> {
        Cochain2::from_fn(n, bound, |x, y| c.eval(x, y))
    }

    /// Stored pairs `x < y` with non-zero values.
    pub fn pairs(&self) -> impl Iterator<Item = (&(BasisSymbol, BasisSymbol), &Scalar)> {
        self.values.iter()
    }

    /// `self + k * other`, on the smaller of the two windows.
    pub fn add_scaled(&self, k: &Scalar, other: &Cochain2) -> Cochain2 {
        let bound = self.bound.min(other.bound);
        let mut values = BTreeMap::new();
        let mut push = |key: &(BasisSymbol, BasisSymbol), v: Scalar| {
            let inside = [&key.0, &key.1]
                .iter()
                .all(|s| s.index().is_some_and(|a| a.in_window(bound)));
            if inside {
                let e = values.entry(key.clone()).or_insert_with(Scalar::zero);
                *e = &*e + &v;
            }
        };
        for (key, v) in &self.values {
            push(key, v.clone());
        }
        for (key, v) in &other.values {
            push(key, k * v);
        }
        values.retain(|_, v: &mut Scalar| !v.is_zero());
        Cochain2 {
            n: self.n,
            bound,
            values,
        }
    }
}

impl Cochain for Cochain2 {
    fn eval(&self, x: &BasisSymbol, y: &BasisSymbol) -> Result<Scalar, CochainError> {
        self.check(x)?;
        self.check(y)?;
        if !self.contains(x) || !self.contains(y) {
            return Err(CochainError::OutOfWindow {
                x: x.clone(),
                y: y.clone(),
            });
        }
        Ok(match x.cmp(y) {
            std::cmp::Ordering::Equal => Scalar::zero(),
            std::cmp::Ordering::Less => self.values.get(&(x.clone(), y.clone())).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.values.get(&(y.clone(), x.clone())).map(|v| -v).unwrap_or_default(),
        })
    }
}

/// A linear functional on WA; symbols without a stored value map to zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Cochain1 {
    values: BTreeMap<BasisSymbol, Scalar>,
}

impl Cochain1 {
    pub fn new(values: impl IntoIterator<Item = (BasisSymbol, Scalar)>) -> Cochain1 {
        Cochain1 {
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn get(&self, s: &BasisSymbol) -> Scalar {
        self.values.get(s).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&BasisSymbol, &Scalar)> {
        self.values.iter()
    }

    pub fn apply(&self, x: &AlgebraElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (s, c) in x.terms() {
            if let Some(v) = self.values.get(s) {
                acc = &acc + &(c * v);
            }
        }
        acc
    }
}

/// `δb(x, y) = b([x, y])`, the bracket taken in WA.
#[derive(Clone, Debug)]
pub struct Coboundary<'a>(pub &'a Cochain1);

impl Cochain for Coboundary<'_> {
    fn eval(&self, x: &BasisSymbol, y: &BasisSymbol) -> Result<Scalar, CochainError> {
        for s in [x, y] {
            if s.is_central() {
                return Err(CochainError::NotWA(s.clone()));
            }
        }
        Ok(self.0.apply(&bracket_basis(AlgebraVariant::WA, x, y)))
    }
}

/// `δb` tabulated on the window.
pub fn coboundary(b: &Cochain1, n: usize, bound: i64) -> Cochain2 {
    Cochain2::tabulate(&Coboundary(b), n, bound).expect("coboundaries are alternating")
}

/// `C([x,y],z) + C([y,z],x) + C([z,x],y)`, brackets taken in WA.
pub fn cocycle_defect(
    c: &dyn Cochain,
    x: &BasisSymbol,
    y: &BasisSymbol,
    z: &BasisSymbol,
) -> Result<Scalar, CochainError> {
    let mut cache = BracketCache::new(AlgebraVariant::WA);
    cocycle_defect_cached(c, &mut cache, x, y, z)
}

/// [`cocycle_defect`] reusing a bracket cache across calls.
pub fn cocycle_defect_cached(
    c: &dyn Cochain,
    cache: &mut BracketCache,
    x: &BasisSymbol,
    y: &BasisSymbol,
    z: &BasisSymbol,
) -> Result<Scalar, CochainError> {
    let mut acc = Scalar::zero();
    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
        let pq = cache.basis(p, q);
        for (s, k) in pq.terms() {
            let v = c.eval(s, r)?;
            if !v.is_zero() {
                acc = &acc + &(k * &v);
            }
        }
    }
    Ok(acc)
}

/// WA basis symbols with indices in the window, in symbol order.
pub fn wa_window(n: usize, bound: i64) -> Vec<BasisSymbol> {
    crate::algebra::basis_window(AlgebraVariant::WA, n, bound)
}

/// Checks the cocycle condition on every triple of windowed symbols whose
/// three brackets stay in the window, returning the first failing triple.
///
/// The defect of an alternating cochain is alternating in `(x, y, z)`, so
/// strictly increasing triples cover everything.
pub fn first_defect_triple(
    c: &dyn Cochain,
    n: usize,
    bound: i64,
) -> Result<Option<(BasisSymbol, BasisSymbol, BasisSymbol)>, CochainError> {
    let symbols = wa_window(n, bound);
    let mut cache = BracketCache::new(AlgebraVariant::WA);
    let sum_in = |p: &BasisSymbol, q: &BasisSymbol| {
        let (Some(a), Some(b)) = (p.index(), q.index()) else {
            return false;
        };
        (a + b).in_window(bound)
    };
    for (i, x) in symbols.iter().enumerate() {
        for (j, y) in symbols.iter().enumerate().skip(i + 1) {
            if !sum_in(x, y) {
                continue;
            }
            for z in &symbols[j + 1..] {
                if !sum_in(y, z) || !sum_in(z, x) {
                    continue;
                }
                if !cocycle_defect_cached(c, &mut cache, x, y, z)?.is_zero() {
                    return Ok(Some((x.clone(), y.clone(), z.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// `C = a1·C_{μ,1} + a2·C_{μ,2} + a3·C_{μ,3} + δb` on the window.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub a: [Scalar; 3],
    pub b: Cochain1,
}

impl Decomposition {
    /// The cochain `Σ a_i C_{μ,i} + δb` tabulated on the window.
    pub fn reconstruct(&self, n: usize, bound: i64) -> Cochain2 {
        let mut out = coboundary(&self.b, n, bound);
        for (g, a) in Generator::ALL.iter().zip(&self.a) {
            if !a.is_zero() {
                let cg = Cochain2::tabulate(&generator_cocycle(*g), n, bound).expect("generators are alternating");
                out = out.add_scaled(a, &cg);
            }
        }
        out
    }
}

/// Pairs `x < y` of window symbols whose bracket index stays in the window.
pub fn in_window_pairs(n: usize, bound: i64) -> Vec<(BasisSymbol, BasisSymbol)> {
    let symbols = wa_window(n, bound);
    let mut out = Vec::new();
    for (i, x) in symbols.iter().enumerate() {
        for y in &symbols[i + 1..] {
            let (Some(a), Some(b)) = (x.index(), y.index()) else {
                continue;
            };
            if (a + b).in_window(bound) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Splits a windowed cocycle into the three generators plus a coboundary.
///
/// The unknowns are `b(s)` for every window symbol followed by `a1, a2, a3`;
/// each in-window pair contributes one linear equation over the scalar field.
/// Free unknowns are set to zero.
pub fn decompose_cocycle(c: &Cochain2, bound: i64) -> Result<Decomposition, CochainError> {
    if bound < 2 {
        return Err(CochainError::UnderdeterminedWindow(bound));
    }
    let n = c.rank();
    if let Some((x, y, z)) = first_defect_triple(c, n, bound)? {
        return Err(CochainError::Inconsistent(Box::new(Witness::DefectTriple(x, y, z))));
    }
    let symbols = wa_window(n, bound);
    let index: HashMap<&BasisSymbol, usize> = symbols.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let a_var = |i: usize| symbols.len() + i;
    let generators: Vec<GeneratorCocycle> = Generator::ALL.iter().map(|g| generator_cocycle(*g)).collect();

    let mut system = Echelon::default();
    for (x, y) in in_window_pairs(n, bound) {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (s, k) in bracket_basis(AlgebraVariant::WA, &x, &y).terms() {
            if let Some(&i) = index.get(s) {
                row.insert(i, k.clone());
            }
        }
        for (i, g) in generators.iter().enumerate() {
            let v = g.eval(&x, &y)?;
            if !v.is_zero() {
                row.insert(a_var(i), v);
            }
        }
        let rhs = c.eval(&x, &y)?;
        if !system.insert(row, rhs) {
            return Err(CochainError::Inconsistent(Box::new(Witness::ResidualPair(x, y))));
        }
    }
    let solution = system.solve();
    let value = |i: usize| solution.get(&i).cloned().unwrap_or_default();
    Ok(Decomposition {
        a: [value(a_var(0)), value(a_var(1)), value(a_var(2))],
        b: Cochain1::new(symbols.iter().enumerate().map(|(i, s)| (s.clone(), value(i)))),
    })
}

/// Incremental row echelon form; each stored row has pivot coefficient 1 on
/// its smallest variable.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, (BTreeMap<usize, Scalar>, Scalar)>,
}

impl Echelon {
    /// Adds an equation; returns false when it is inconsistent with the rows so far.
    fn insert(&mut self, mut row: BTreeMap<usize, Scalar>, mut rhs: Scalar) -> bool {
        loop {
            let Some((var, coef)) = row
                .iter()
                .find(|(v, _)| self.rows.contains_key(v))
                .map(|(v, c)| (*v, c.clone()))
            else {
                break;
            };
            let (prow, prhs) = &self.rows[&var];
            for (v, c) in prow {
                let e = row.entry(*v).or_insert_with(Scalar::zero);
                *e = &*e - &(&coef * c);
            }
            row.retain(|_, c| !c.is_zero());
            rhs = &rhs - &(&coef * prhs);
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            return rhs.is_zero();
        };
        let inv = lead.recip().expect("stored coefficients are non-zero");
        let row: BTreeMap<usize, Scalar> = row.iter().map(|(v, c)| (*v, c * &inv)).collect();
        self.rows.insert(pivot, (row, &rhs * &inv));
        true
    }

    fn solve(&self) -> HashMap<usize, Scalar> {
        let mut values: HashMap<usize, Scalar> = HashMap::new();
        for (&pivot, (row, rhs)) in self.rows.iter().rev() {
            let mut v = rhs.clone();
            for (var, c) in row.range(pivot + 1..) {
                if let Some(x) = values.get(var) {
                    v = &v - &(c * x);
                }
            }
            if !v.is_zero() {
                values.insert(pivot, v);
            }
        }
        values
    }
}

/// Left minus right side of the functional equation satisfied by `θ_i`,
/// as a scalar in the parameters `x`, `y`. `theta` is a scalar in `x`.
///
/// 1. `2xθ(x) − 2yθ(y) = (x−y)θ(x+y) + (x+y)θ(x−y)`
/// 2. `(y−x)θ(x+y) = (y+x)(θ(y) − θ(x))`
/// 3. `yθ(x+y) = (y+x)θ(y)`
pub fn theta_defect(which: Generator, theta: &Scalar) -> Result<Scalar, ScalarError> {
    let xv = Var::param("x").expect("x is a parameter");
    let x = Scalar::var(xv);
    let y = Scalar::param("y");
    let at = |arg: Scalar| -> Result<Scalar, ScalarError> { theta.compose(&HashMap::from([(xv, arg)])) };
    let two = Scalar::int(2);
    Ok(match which {
        Generator::One => {
            let lhs = &(&(&two * &x) * &at(x.clone())?) - &(&(&two * &y) * &at(y.clone())?);
            let rhs = &(&(&x - &y) * &at(&x + &y)?) + &(&(&x + &y) * &at(&x - &y)?);
            &lhs - &rhs
        }
        Generator::Two => {
            let lhs = &(&y - &x) * &at(&x + &y)?;
            let rhs = &(&y + &x) * &(&at(y.clone())? - &at(x.clone())?);
            &lhs - &rhs
        }
        Generator::Three => {
            let lhs = &y * &at(&x + &y)?;
            let rhs = &(&y + &x) * &at(y.clone())?;
            &lhs - &rhs
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Context;
    use crate::syntax::parse_scalar;

    fn e<const N: usize>(a: [i64; N]) -> BasisSymbol {
        BasisSymbol::E(a.into())
    }

    fn h<const N: usize>(a: [i64; N]) -> BasisSymbol {
        BasisSymbol::H(a.into())
    }

    fn s(text: &str) -> Scalar {
        parse_scalar(text, &Context::with_all_params(2)).unwrap()
    }

    #[test]
    fn generator_values() {
        let c1 = generator_cocycle(Generator::One);
        let c2 = generator_cocycle(Generator::Two);
        let c3 = generator_cocycle(Generator::Three);
        assert_eq!(c1.eval(&e([2, 0]), &e([-2, 0])).unwrap(), s("(8*m1^3-2*m1)/12"));
        assert_eq!(c2.eval(&e([1, 1]), &h([-1, -1])).unwrap(), s("(m1+m2)^2-(m1+m2)"));
        assert_eq!(c2.eval(&h([-1, -1]), &e([1, 1])).unwrap(), s("-(m1+m2)^2+(m1+m2)"));
        assert_eq!(c3.eval(&h([0, 1]), &h([0, -1])).unwrap(), s("m2/3"));
        assert!(c3.eval(&h([0, 1]), &h([0, 2])).unwrap().is_zero());
    }

    #[test]
    fn defect_examples() {
        let c1 = generator_cocycle(Generator::One);
        let c2 = generator_cocycle(Generator::Two);
        let c3 = generator_cocycle(Generator::Three);
        assert!(cocycle_defect(&c1, &e([1, 0]), &e([1, 0]), &e([-2, 0]))
            .unwrap()
            .is_zero());
        assert!(cocycle_defect(&c2, &e([1, 0]), &e([-2, 0]), &h([1, 0]))
            .unwrap()
            .is_zero());
        assert!(cocycle_defect(&c3, &e([1, 0]), &h([2, 0]), &h([-3, 0]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn even_theta_rejected() {
        let d = Cochain2::from_fn(1, 2, |x, y| {
            Ok(match (x, y) {
                (BasisSymbol::E(a), BasisSymbol::E(b)) if (a + b).is_zero() => mu_form(a).pow(2),
                _ => Scalar::zero(),
            })
        });
        assert!(matches!(d, Err(CochainError::AntisymmetryViolation { .. })));
    }

    #[test]
    fn coboundary_examples() {
        let b = Cochain1::new([(e([0, 0]), Scalar::ratio(-1, 2))]);
        let db = Coboundary(&b);
        assert_eq!(db.eval(&e([1, 2]), &e([-1, -2])).unwrap(), s("m1+2*m2"));
        let b = Cochain1::new([(h([0, 0]), Scalar::int(-1))]);
        assert_eq!(Coboundary(&b).eval(&e([0, 1]), &h([0, -1])).unwrap(), s("m2"));
        let b = Cochain1::new([(e([1, 1]), Scalar::int(4))]);
        assert_eq!(Coboundary(&b).eval(&e([1, 0]), &e([0, 1])).unwrap(), s("4*(m2-m1)"));
    }

    #[test]
    fn decompose_generator_plus_coboundary() {
        let (n, bound) = (2, 2);
        let b = Cochain1::new([(e([0, 0]), Scalar::int(5))]);
        let c = Cochain2::tabulate(&generator_cocycle(Generator::One), n, bound)
            .unwrap()
            .add_scaled(&Scalar::one(), &coboundary(&b, n, bound));
        let d = decompose_cocycle(&c, bound).unwrap();
        assert_eq!(d.a, [Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(d.b, b);
    }

    #[test]
    fn decompose_pure_coboundary() {
        let c = Cochain2::from_fn(2, 2, |x, y| {
            Ok(match (x, y) {
                (BasisSymbol::E(a), BasisSymbol::E(b)) if (a + b).is_zero() => mu_form(a),
                _ => Scalar::zero(),
            })
        })
        .unwrap();
        let d = decompose_cocycle(&c, 2).unwrap();
        assert_eq!(d.a, [Scalar::zero(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(d.b, Cochain1::new([(e([0, 0]), Scalar::ratio(-1, 2))]));
    }

    #[test]
    fn decompose_generators_only() {
        let c2 = Cochain2::tabulate(&generator_cocycle(Generator::Two), 2, 2).unwrap();
        let c3 = Cochain2::tabulate(&generator_cocycle(Generator::Three), 2, 2).unwrap();
        let c = Cochain2::zero(2, 2)
            .add_scaled(&Scalar::int(2), &c2)
            .add_scaled(&Scalar::int(-7), &c3);
        let d = decompose_cocycle(&c, 2).unwrap();
        assert_eq!(d.a, [Scalar::zero(), Scalar::int(2), Scalar::int(-7)]);
        assert_eq!(d.b, Cochain1::default());
    }

    #[test]
    fn decompose_rejects_small_window_and_non_cocycles() {
        let c = Cochain2::zero(1, 1);
        assert_eq!(decompose_cocycle(&c, 1), Err(CochainError::UnderdeterminedWindow(1)));
        let bad = Cochain2::from_pairs(1, 2, [((e([1]), h([0])), Scalar::one())]).unwrap();
        assert!(matches!(
            decompose_cocycle(&bad, 2),
            Err(CochainError::Inconsistent(w)) if matches!(*w, Witness::DefectTriple(..))
        ));
    }

    #[test]
    fn theta_solutions() {
        let ctx = Context::with_all_params(1);
        let t = |x: &str| parse_scalar(x, &ctx).unwrap();
        assert!(theta_defect(Generator::One, &t("x^3-x")).unwrap().is_zero());
        assert!(theta_defect(Generator::Two, &t("x^2-x")).unwrap().is_zero());
        assert!(theta_defect(Generator::Three, &t("x/3")).unwrap().is_zero());
        assert_eq!(theta_defect(Generator::One, &t("x^2")).unwrap(), t("2*x*y^2-2*y^3"));
    }
}
