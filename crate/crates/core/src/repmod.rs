//! Intermediate-series modules `T_μ(a, b, F)`:
//! `e_α v_κ = (a + μ·κ + b μ·α) v_{κ+α}`, `h_α v_κ = F v_{κ+α}`, centre acting by 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{bracket, write_term, AlgebraElement, AlgebraVariant, BasisSymbol};
use crate::lattice::{self, mu_form, LatticeVector};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the quotient by v_0 needs a = b = F = 0")]
    QuotientNeedsZeroParameters,
}

/// Parameters of `T_μ(a, b, F)`. With `quotient_v0` the module is
/// `T_μ(0,0,0)/ℂv_0` and the `κ = 0` component is dropped everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct TModuleSpec {
    n: usize,
    a: Scalar,
    b: Scalar,
    f: Scalar,
    quotient_v0: bool,
}

impl TModuleSpec {
    pub fn new(n: usize, a: Scalar, b: Scalar, f: Scalar, quotient_v0: bool) -> Result<TModuleSpec, RepError> {
        if quotient_v0 && !(a.is_zero() && b.is_zero() && f.is_zero()) {
            return Err(RepError::QuotientNeedsZeroParameters);
        }
        Ok(TModuleSpec {
            n,
            a,
            b,
            f,
            quotient_v0,
        })
    }

    /// `T_μ(a, b, F)` with all three parameters free.
    pub fn symbolic(n: usize) -> TModuleSpec {
        TModuleSpec::new(n, Scalar::param("a"), Scalar::param("b"), Scalar::param("F"), false).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn f(&self) -> &Scalar {
        &self.f
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient_v0
    }

    fn check_dim(&self, v: &LatticeVector) -> Result<(), RepError> {
        if v.dim() == self.n {
            Ok(())
        } else {
            Err(RepError::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            })
        }
    }

    /// Image of `v_κ` under a basis symbol, as `(κ', coefficient)`; `None` when it is zero.
    pub fn act_basis(
        &self,
        s: &BasisSymbol,
        kappa: &LatticeVector,
    ) -> Result<Option<(LatticeVector, Scalar)>, RepError> {
        self.check_dim(kappa)?;
        let (target, coeff) = match s {
            BasisSymbol::E(alpha) => {
                self.check_dim(alpha)?;
                let c = &(&self.a + &mu_form(kappa)) + &(&self.b * &mu_form(alpha));
                (kappa + alpha, c)
            }
            BasisSymbol::H(alpha) => {
                self.check_dim(alpha)?;
                (kappa + alpha, self.f.clone())
            }
            _ => return Ok(None),
        };
        if coeff.is_zero() || (self.quotient_v0 && target.is_zero()) {
            return Ok(None);
        }
        Ok(Some((target, coeff)))
    }
}

/// A finite combination of the basis vectors `v_κ`, indexed by `κ ∈ ℤⁿ`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TVector {
    terms: BTreeMap<LatticeVector, Scalar>,
}

impl TVector {
    pub fn zero() -> TVector {
        TVector::default()
    }

    pub fn basis(kappa: LatticeVector) -> TVector {
        TVector::from_terms([(kappa, Scalar::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticeVector, Scalar)>) -> TVector {
        let mut v = TVector::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, kappa: LatticeVector, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(kappa.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&kappa);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, kappa: &LatticeVector) -> Scalar {
        self.terms.get(kappa).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &TVector) -> TVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> TVector {
        TVector::from_terms(self.terms.iter().map(|(kappa, c)| (kappa.clone(), k * c)))
    }

    /// Drops the `v_0` component.
    pub fn project_quotient(&self) -> TVector {
        TVector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !k.is_zero())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            write_term(&mut out, c, &format!("v{k}"), i == 0);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x · v`, extended linearly.
pub fn t_act(spec: &TModuleSpec, x: &AlgebraElement, v: &TVector) -> Result<TVector, RepError> {
    let mut out = TVector::zero();
    for (s, c) in x.terms() {
        for (kappa, d) in v.terms() {
            if spec.quotient_v0 && kappa.is_zero() {
                continue;
            }
            if let Some((target, k)) = spec.act_basis(s, kappa)? {
                out.add_term(target, &(c * d) * &k);
            }
        }
    }
    Ok(out)
}

/// `[x,y]·v_κ − (x·(y·v_κ) − y·(x·v_κ))`, the bracket taken in the central extension.
pub fn t_axiom_defect(
    spec: &TModuleSpec,
    x: &BasisSymbol,
    y: &BasisSymbol,
    kappa: &LatticeVector,
) -> Result<TVector, RepError> {
    let xe = AlgebraElement::basis(x.clone());
    let ye = AlgebraElement::basis(y.clone());
    let v = TVector::basis(kappa.clone());
    let v = if spec.quotient_v0 { v.project_quotient() } else { v };
    let xy = bracket(AlgebraVariant::HVir, &xe, &ye).expect("HVir admits every symbol");
    let lhs = t_act(spec, &xy, &v)?;
    let xyv = t_act(spec, &xe, &t_act(spec, &ye, &v)?)?;
    let yxv = t_act(spec, &ye, &t_act(spec, &xe, &v)?)?;
    Ok(lhs.sub(&xyv.sub(&yxv)))
}

/// Outcome of [`t_submodule_window`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleReport {
    /// Distinct proper invariant subspaces found, each given by the `κ` of its basis vectors.
    pub invariant: Vec<Vec<LatticeVector>>,
    /// Non-zero actions that leave the window; these are ignored by the search.
    pub edge_effects: usize,
}

/// Looks for graded subspaces of `span{v_κ : |κ_i| <= bound}` stable under the
/// generators with `|α_i| <= bound`.
///
/// Every `v_κ` is a weight vector with one-dimensional weight space, so graded
/// invariant subspaces are spanned by basis vectors and are unions of closures
/// `κ → κ + α` along non-zero action coefficients. The closure of each basis
/// vector is computed inside the window; the proper ones are reported.
pub fn t_submodule_window(spec: &TModuleSpec, bound: i64) -> Result<SubmoduleReport, RepError> {
    let points: Vec<LatticeVector> = lattice::window(spec.n, bound)
        .into_iter()
        .filter(|k| !(spec.quotient_v0 && k.is_zero()))
        .collect();
    let generators: Vec<BasisSymbol> = lattice::window(spec.n, bound)
        .into_iter()
        .flat_map(|a| [BasisSymbol::E(a.clone()), BasisSymbol::H(a)])
        .collect();
    let mut edges: BTreeMap<&LatticeVector, BTreeSet<LatticeVector>> = BTreeMap::new();
    let mut edge_effects = 0;
    for kappa in &points {
        let out = edges.entry(kappa).or_default();
        for g in &generators {
            if let Some((target, _)) = spec.act_basis(g, kappa)? {
                if target.in_window(bound) {
                    out.insert(target);
                } else {
                    edge_effects += 1;
                }
            }
        }
    }
    let mut invariant: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
    for start in &points {
        let mut seen: BTreeSet<LatticeVector> = BTreeSet::from([start.clone()]);
        let mut stack = vec![start.clone()];
        while let Some(k) = stack.pop() {
            for t in &edges[&k] {
                if seen.insert(t.clone()) {
                    stack.push(t.clone());
                }
            }
        }
        if seen.len() < points.len() {
            invariant.insert(seen.into_iter().collect());
        }
    }
    Ok(SubmoduleReport {
        invariant: invariant.into_iter().collect(),
        edge_effects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Context;
    use crate::syntax::parse_scalar;

    fn s(text: &str) -> Scalar {
        parse_scalar(text, &Context::with_all_params(2)).unwrap()
    }

    fn v<const N: usize>(k: [i64; N]) -> LatticeVector {
        k.into()
    }

    fn zero_spec(n: usize, b: i64, quotient: bool) -> TModuleSpec {
        TModuleSpec::new(n, Scalar::zero(), Scalar::int(b), Scalar::zero(), quotient).unwrap()
    }

    #[test]
    fn action_examples() {
        let spec = TModuleSpec::symbolic(2);
        let e10 = AlgebraElement::basis(BasisSymbol::E(v([1, 0])));
        let got = t_act(&spec, &e10, &TVector::basis(v([0, 1]))).unwrap();
        assert_eq!(got, TVector::from_terms([(v([1, 1]), s("a+m2+b*m1"))]));
        let h = AlgebraElement::basis(BasisSymbol::H(v([2, -1])));
        let got = t_act(&spec, &h, &TVector::basis(v([0, 0]))).unwrap();
        assert_eq!(got, TVector::from_terms([(v([2, -1]), s("F"))]));
        let e53 = AlgebraElement::basis(BasisSymbol::E(v([5, 3])));
        assert!(t_act(&zero_spec(2, 0, false), &e53, &TVector::basis(v([0, 0])))
            .unwrap()
            .is_zero());
        assert!(matches!(
            t_act(&spec, &e10, &TVector::basis(v([0]))),
            Err(RepError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn axiom_examples() {
        let spec = TModuleSpec::symbolic(2);
        let e = |k: [i64; 2]| BasisSymbol::E(k.into());
        let h = |k: [i64; 2]| BasisSymbol::H(k.into());
        assert!(t_axiom_defect(&spec, &e([1, 0]), &h([-1, 0]), &v([2, -1]))
            .unwrap()
            .is_zero());
        assert!(t_axiom_defect(&spec, &e([1, 0]), &e([0, 1]), &v([0, 0]))
            .unwrap()
            .is_zero());
        assert!(t_axiom_defect(&spec, &h([1, 0]), &h([-1, 0]), &v([3, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn quotient_requires_zero_parameters() {
        let r = TModuleSpec::new(1, Scalar::one(), Scalar::zero(), Scalar::zero(), true);
        assert_eq!(r, Err(RepError::QuotientNeedsZeroParameters));
    }

    #[test]
    fn submodule_probes() {
        let r = t_submodule_window(&zero_spec(2, 0, false), 2).unwrap();
        assert_eq!(r.invariant, vec![vec![v([0, 0])]]);
        let r = t_submodule_window(&zero_spec(2, 1, false), 2).unwrap();
        let nonzero: Vec<_> = lattice::window(2, 2).into_iter().filter(|k| !k.is_zero()).collect();
        assert_eq!(r.invariant, vec![nonzero]);
        let r = t_submodule_window(&TModuleSpec::symbolic(2), 2).unwrap();
        assert!(r.invariant.is_empty());
        assert!(r.edge_effects > 0);
    }

    #[test]
    fn weight_vectors() {
        let spec = TModuleSpec::symbolic(2);
        let d = AlgebraElement::basis(BasisSymbol::E(v([0, 0])));
        let got = t_act(&spec, &d, &TVector::basis(v([1, -2]))).unwrap();
        assert_eq!(got, TVector::basis(v([1, -2])).scale(&s("a+m1-2*m2")));
    }
}
