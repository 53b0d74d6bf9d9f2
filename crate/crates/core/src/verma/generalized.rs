//! Generalized Verma modules for the coarse grading by the first coordinate:
//! the part of degree 0 is a copy of the rank `n-1` algebra acting on
//! `T_{μ'}(a, b, F)`, the positive part acts by zero, and generators with
//! negative first coordinate create PBW factors.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{basis_window, bracket, AlgebraElement, AlgebraVariant, BasisSymbol, Kind};
use crate::lattice::{self, mu_form, LatticeVector};
use crate::repmod::{t_act, RepError, TModuleSpec, TVector};
use crate::scalars::{Scalar, Var};

use super::pbw::{Factor, ModuleVector, PBWMonomial};
use super::straighten::{Straightener, Wall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenVermaError {
    #[error("the coarse grading needs rank at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Basis vector `v_{κ'}` of the inducing module.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TBasis(pub LatticeVector);

impl fmt::Display for TBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// `μ_j ↦ μ_{j+1}`: rank `n-1` scalars seen inside rank `n`.
fn shift_mu(s: &Scalar) -> Scalar {
    s.rename(|v| v.mu_index().map_or(v, |i| Var::mu(i + 1)))
}

pub struct GenVermaWall {
    n: usize,
    a: Scalar,
    b: Scalar,
    f: Scalar,
    quotient_v0: bool,
}

impl GenVermaWall {
    /// Induces from `spec`, a module over the rank `n-1` algebra in the
    /// variables `μ_2, …, μ_n`.
    pub fn new(spec: &TModuleSpec) -> Result<GenVermaWall, GenVermaError> {
        let n = spec.rank() + 1;
        if n < 2 {
            return Err(GenVermaError::DimensionTooSmall(n));
        }
        Ok(GenVermaWall {
            n,
            a: shift_mu(spec.a()),
            b: shift_mu(spec.b()),
            f: shift_mu(spec.f()),
            quotient_v0: spec.is_quotient(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }
}

impl Wall for GenVermaWall {
    type Base = TBasis;

    fn is_creator(&self, s: &BasisSymbol) -> bool {
        s.index().is_some_and(|a| a.head() < 0)
    }

    fn factor_cmp(&self, a: &Factor, b: &Factor) -> Ordering {
        a.cmp(b)
    }

    fn act_on_base(&self, s: &BasisSymbol, base: &TBasis) -> Vec<(TBasis, Scalar)> {
        let Some(alpha) = s.index() else {
            return Vec::new();
        };
        if alpha.head() != 0 {
            return Vec::new();
        }
        let kappa = &base.0;
        let target = kappa + &alpha.tail();
        if self.quotient_v0 && (target.is_zero() || kappa.is_zero()) {
            return Vec::new();
        }
        let c = match s {
            BasisSymbol::E(_) => {
                let k = mu_form(&LatticeVector::prepend(0, kappa));
                &(&self.a + &k) + &(&self.b * &mu_form(alpha))
            }
            _ => self.f.clone(),
        };
        if c.is_zero() {
            Vec::new()
        } else {
            vec![(TBasis(target), c)]
        }
    }
}

/// Level of a monomial: minus the sum of the first coordinates of its factors.
pub fn level_of(m: &PBWMonomial) -> i64 {
    -m.factors().iter().map(|f| f.alpha.head()).sum::<i64>()
}

/// The level-`level` basis vectors `f₁ … f_k ⊗ v_{κ'}` whose factor tails lie
/// in `|β'_j| <= bound` and whose total tail weight is `kappa`.
pub fn genverma_level_basis(
    spec: &TModuleSpec,
    level: usize,
    bound: i64,
    kappa: &LatticeVector,
) -> Vec<(PBWMonomial, TBasis)> {
    let tails = lattice::window(spec.rank(), bound);
    let mut candidates: Vec<Factor> = Vec::new();
    for head in -(level as i64)..0 {
        for t in &tails {
            let alpha = LatticeVector::prepend(head, t);
            candidates.push(Factor::new(Kind::E, alpha.clone()));
            candidates.push(Factor::new(Kind::H, alpha));
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    enumerate(&candidates, level as i64, 0, &mut stack, &mut |idx| {
        let m = PBWMonomial::from_sorted(idx.iter().map(|&i| candidates[i].clone()));
        let used = m
            .factors()
            .iter()
            .fold(LatticeVector::zero(spec.rank()), |acc, f| &acc + &f.alpha.tail());
        let base = kappa - &used;
        if !(spec.is_quotient() && base.is_zero()) {
            out.push((m, TBasis(base)));
        }
    });
    out
}

fn enumerate(
    candidates: &[Factor],
    remaining: i64,
    start: usize,
    stack: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    for i in start..candidates.len() {
        let h = -candidates[i].alpha.head();
        if h > remaining {
            continue;
        }
        stack.push(i);
        enumerate(candidates, remaining - h, i, stack, emit);
        stack.pop();
    }
}

/// Unordered pairs of distinct central-extension basis symbols with `|α_i| <= bound`.
pub fn generator_pairs(n: usize, bound: i64) -> Vec<(BasisSymbol, BasisSymbol)> {
    let symbols = basis_window(AlgebraVariant::HVir, n, bound);
    let mut out = Vec::new();
    for (i, x) in symbols.iter().enumerate() {
        for y in &symbols[i + 1..] {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

/// Outcome of [`genverma_level_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenVermaReport {
    pub n: usize,
    pub level: usize,
    pub bound: i64,
    pub basis_size: usize,
    pub grading_checked: usize,
    pub grading_failures: usize,
    pub axiom_checked: usize,
    pub axiom_failures: usize,
    pub embedding_checked: usize,
    pub embedding_failures: usize,
    pub first_failure: Option<String>,
}

impl GenVermaReport {
    pub fn ok(&self) -> bool {
        self.grading_failures == 0 && self.axiom_failures == 0 && self.embedding_failures == 0
    }

    fn fail(&mut self, what: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }
}

/// Checks the level-`level` part of the module induced from `spec`:
///
/// * grading: a generator with first coordinate `j` maps level `i` into level `i - j`;
/// * module axiom `x(yv) − y(xv) = [x,y]v` for each of `pairs` on the level basis;
/// * on level 0, `e_{(0,α')}` and `h_{(0,α')}` act exactly as in `T_{μ'}(a, b, F)`.
pub fn genverma_level_check(
    spec: &TModuleSpec,
    level: usize,
    bound: i64,
    kappa: &LatticeVector,
    pairs: &[(BasisSymbol, BasisSymbol)],
) -> Result<GenVermaReport, GenVermaError> {
    let wall = GenVermaWall::new(spec)?;
    let n = wall.rank();
    if kappa.dim() != n - 1 {
        return Err(RepError::DimensionMismatch {
            expected: n - 1,
            found: kappa.dim(),
        }
        .into());
    }
    let mut engine = Straightener::new(wall);
    let basis = genverma_level_basis(spec, level, bound, kappa);
    let mut report = GenVermaReport {
        n,
        level,
        bound,
        basis_size: basis.len(),
        grading_checked: 0,
        grading_failures: 0,
        axiom_checked: 0,
        axiom_failures: 0,
        embedding_checked: 0,
        embedding_failures: 0,
        first_failure: None,
    };
    let vectors: Vec<ModuleVector<TBasis>> = basis
        .iter()
        .map(|(m, b)| ModuleVector::basis(m.clone(), b.clone()))
        .collect();

    let generators: BTreeSet<&BasisSymbol> = pairs.iter().flat_map(|(x, y)| [x, y]).collect();
    for g in generators {
        let j = g.index().map_or(0, |a| a.head());
        for v in &vectors {
            report.grading_checked += 1;
            let out = engine.act_symbol_vec(g, v);
            if out.terms().any(|(m, _, _)| level_of(m) != level as i64 - j) {
                report.grading_failures += 1;
                report.fail(format!("{g} leaves the expected level on {v}"));
            }
        }
    }

    for (x, y) in pairs {
        let xy = bracket(
            AlgebraVariant::HVir,
            &AlgebraElement::basis(x.clone()),
            &AlgebraElement::basis(y.clone()),
        )
        .expect("HVir admits every symbol");
        for v in &vectors {
            report.axiom_checked += 1;
            let yv = engine.act_symbol_vec(y, v);
            let xv = engine.act_symbol_vec(x, v);
            let lhs = engine.act_symbol_vec(x, &yv).sub(&engine.act_symbol_vec(y, &xv));
            if lhs != engine.act(&xy, v) {
                report.axiom_failures += 1;
                report.fail(format!("axiom defect for ({x}, {y}) on {v}"));
            }
        }
    }

    let tails = lattice::window(n - 1, bound);
    for alpha in &tails {
        for kind in [Kind::E, Kind::H] {
            let small = AlgebraElement::basis(kind.symbol(alpha.clone()));
            let big = kind.symbol(LatticeVector::prepend(0, alpha));
            for k in &tails {
                if spec.is_quotient() && k.is_zero() {
                    continue;
                }
                report.embedding_checked += 1;
                let expected = t_act(spec, &small, &TVector::basis(k.clone()))?;
                let got = engine.act_symbol_vec(&big, &ModuleVector::basis(PBWMonomial::one(), TBasis(k.clone())));
                let mut mapped = ModuleVector::zero();
                for (kk, c) in expected.terms() {
                    mapped.add_term(PBWMonomial::one(), TBasis(kk.clone()), shift_mu(c));
                }
                if got != mapped {
                    report.embedding_failures += 1;
                    report.fail(format!("{big} on v{k}: got {got}, expected {mapped}"));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_counts() {
        let spec = TModuleSpec::symbolic(1);
        for b in 1..=3 {
            let basis = genverma_level_basis(&spec, 1, b, &[0].into());
            assert_eq!(basis.len() as i64, 2 * (2 * b + 1));
        }
        let spec = TModuleSpec::symbolic(2);
        assert_eq!(genverma_level_basis(&spec, 1, 1, &[0, 0].into()).len(), 18);
    }

    #[test]
    fn rank_one_rejected() {
        let spec = TModuleSpec::symbolic(0);
        assert!(matches!(
            genverma_level_check(&spec, 1, 1, &LatticeVector::zero(0), &[]),
            Err(GenVermaError::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn small_check_passes() {
        let spec = TModuleSpec::symbolic(1);
        let pairs = generator_pairs(2, 1);
        let r = genverma_level_check(&spec, 1, 1, &[0].into(), &pairs).unwrap();
        assert!(r.ok(), "{r:?}");
        assert!(r.axiom_checked > 0 && r.embedding_checked == 18);
    }
}
