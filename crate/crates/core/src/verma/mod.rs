//! Verma modules over the lex-order triangular decomposition, their
//! lowest-weight mirrors, weight-space enumeration, and the `ℤ`-graded
//! generalized Verma modules induced from `T_{μ'}(a, b, F)`.

mod generalized;
mod pbw;
mod straighten;

pub use generalized::{
    generator_pairs, genverma_level_basis, genverma_level_check, level_of, GenVermaError, GenVermaReport, GenVermaWall,
    TBasis,
};
pub use pbw::{Factor, ModuleVector, PBWMonomial};
pub use straighten::{rewrite_act, Straightener, Strategy, Wall};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::algebra::{AlgebraElement, BasisSymbol, Kind};
use crate::lattice::{self, LatticeVector};
use crate::scalars::Scalar;

/// `λ = (λ_μ, c₀, c₁, c₂, c₃)`: eigenvalues of `e_{μ·0}`, `h₀` and the three
/// central elements on the generating vector.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub lam: Scalar,
    pub c0: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
    pub c3: Scalar,
}

impl HighestWeight {
    /// All five values left as the free parameters `lam, c0, c1, c2, c3`.
    pub fn symbolic() -> HighestWeight {
        HighestWeight {
            lam: Scalar::param("lam"),
            c0: Scalar::param("c0"),
            c1: Scalar::param("c1"),
            c2: Scalar::param("c2"),
            c3: Scalar::param("c3"),
        }
    }
}

/// The generating vector `1_λ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Top;

impl fmt::Display for Top {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("v")
    }
}

pub type VermaVector = ModuleVector<Top>;

/// `M(λ)`: the lex-positive part annihilates `1_λ`, the lex-negative part
/// creates PBW factors sorted by `α` ascending with `E` before `H`.
///
/// The mirror swaps the two halves: lex-positive generators create, sorted by
/// `α` descending, and the lex-negative ones annihilate `1_λ`.
#[derive(Clone, Debug)]
pub struct VermaWall {
    pub n: usize,
    pub weight: HighestWeight,
    pub mirrored: bool,
}

impl VermaWall {
    fn creates(&self, alpha: &LatticeVector) -> bool {
        if self.mirrored {
            alpha.is_positive()
        } else {
            alpha.is_negative()
        }
    }
}

impl Wall for VermaWall {
    type Base = Top;

    fn is_creator(&self, s: &BasisSymbol) -> bool {
        s.index().is_some_and(|a| self.creates(a))
    }

    fn factor_cmp(&self, a: &Factor, b: &Factor) -> Ordering {
        if self.mirrored {
            b.alpha.cmp(&a.alpha).then(a.kind.cmp(&b.kind))
        } else {
            a.cmp(b)
        }
    }

    fn act_on_base(&self, s: &BasisSymbol, _: &Top) -> Vec<(Top, Scalar)> {
        let w = &self.weight;
        let c = match s {
            BasisSymbol::E(a) if a.is_zero() => w.lam.clone(),
            BasisSymbol::H(a) if a.is_zero() => w.c0.clone(),
            BasisSymbol::C1 => w.c1.clone(),
            BasisSymbol::C2 => w.c2.clone(),
            BasisSymbol::C3 => w.c3.clone(),
            _ => return Vec::new(),
        };
        if c.is_zero() {
            Vec::new()
        } else {
            vec![(Top, c)]
        }
    }
}

/// `M(λ)` (or its mirror) with a memoized action.
pub struct VermaModule {
    engine: Straightener<VermaWall>,
}

impl VermaModule {
    pub fn new(n: usize, weight: HighestWeight, mirrored: bool) -> VermaModule {
        VermaModule {
            engine: Straightener::new(VermaWall { n, weight, mirrored }),
        }
    }

    pub fn wall(&self) -> &VermaWall {
        self.engine.wall()
    }

    pub fn rank(&self) -> usize {
        self.wall().n
    }

    pub fn top(&self) -> VermaVector {
        VermaVector::basis(PBWMonomial::one(), Top)
    }

    /// The basis monomial with the given creating factors, in canonical order.
    pub fn canonical(&self, factors: &[Factor]) -> PBWMonomial {
        let mut f = factors.to_vec();
        self.wall().sort_factors(&mut f);
        PBWMonomial::from_sorted(f)
    }

    pub fn basis_vector(&self, factors: &[Factor]) -> VermaVector {
        VermaVector::basis(self.canonical(factors), Top)
    }

    pub fn act(&mut self, x: &AlgebraElement, v: &VermaVector) -> VermaVector {
        self.engine.act(x, v)
    }

    pub fn act_symbol(&mut self, s: &BasisSymbol, v: &VermaVector) -> VermaVector {
        self.engine.act_symbol_vec(s, v)
    }

    /// The same action computed by word rewriting.
    pub fn rewrite(&self, x: &AlgebraElement, v: &VermaVector, strategy: Strategy) -> VermaVector {
        rewrite_act(self.wall(), x, v, strategy)
    }
}

/// `x · v` in a fresh `M(λ)` of rank `n`.
pub fn verma_act(weight: &HighestWeight, n: usize, x: &AlgebraElement, v: &VermaVector) -> VermaVector {
    VermaModule::new(n, weight.clone(), false).act(x, v)
}

/// Weight offset `γ` of a monomial: `e_{μ·0}` acts on it by `λ_μ + μ·γ`.
pub fn weight_of(m: &PBWMonomial, n: usize) -> LatticeVector {
    m.weight(n)
}

/// Canonical monomials with at most `max_degree` creating factors, all indices
/// in `|α_i| <= coord_bound`, and weight offset `gamma`. Sorted by degree, then
/// by factors.
pub fn weight_basis(gamma: &LatticeVector, max_degree: usize, coord_bound: i64, mirrored: bool) -> Vec<PBWMonomial> {
    let n = gamma.dim();
    let wall = VermaWall {
        n,
        weight: HighestWeight::symbolic(),
        mirrored,
    };
    let mut candidates: Vec<Factor> = lattice::window(n, coord_bound)
        .into_iter()
        .filter(|a| wall.creates(a))
        .flat_map(|a| [Factor::new(Kind::E, a.clone()), Factor::new(Kind::H, a)])
        .collect();
    wall.sort_factors(&mut candidates);
    let mut positions: HashMap<&LatticeVector, Vec<usize>> = HashMap::new();
    for (i, f) in candidates.iter().enumerate() {
        positions.entry(&f.alpha).or_default().push(i);
    }

    let mut out = Vec::new();
    if gamma.is_zero() {
        out.push(PBWMonomial::one());
    }
    let mut stack = Vec::new();
    for degree in 1..=max_degree {
        collect(&candidates, &positions, gamma, degree, 0, &mut stack, &mut out);
    }
    out
}

fn collect(
    candidates: &[Factor],
    positions: &HashMap<&LatticeVector, Vec<usize>>,
    remaining: &LatticeVector,
    slots: usize,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<PBWMonomial>,
) {
    if slots == 1 {
        if let Some(idx) = positions.get(remaining) {
            for &i in idx.iter().filter(|&&i| i >= start) {
                stack.push(i);
                out.push(PBWMonomial::from_sorted(stack.iter().map(|&j| candidates[j].clone())));
                stack.pop();
            }
        }
        return;
    }
    for i in start..candidates.len() {
        stack.push(i);
        let rest = remaining - &candidates[i].alpha;
        collect(candidates, positions, &rest, slots - 1, i, stack, out);
        stack.pop();
    }
}

/// `|weight_basis(γ, D, K)|` for each `K` in `bounds`.
pub fn weight_growth(gamma: &LatticeVector, max_degree: usize, bounds: &[i64], mirrored: bool) -> Vec<usize> {
    bounds
        .iter()
        .map(|&k| weight_basis(gamma, max_degree, k, mirrored).len())
        .collect()
}
