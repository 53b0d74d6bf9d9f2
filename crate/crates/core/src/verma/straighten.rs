//! Action of the central extension on induced modules
//! `U(creators) ⊗ base`, by commuting generators past PBW factors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::rc::Rc;

use crate::algebra::{bracket_basis, AlgebraElement, AlgebraVariant, BasisSymbol};
use crate::scalars::Scalar;

use super::pbw::{Factor, ModuleVector, PBWMonomial};

/// Describes an induced module: which generators create new PBW factors,
/// their canonical order, and how the remaining generators act on the
/// inducing module.
pub trait Wall {
    type Base: Clone + Ord + Hash + fmt::Debug;

    fn is_creator(&self, s: &BasisSymbol) -> bool;

    /// Canonical order of factors inside a PBW monomial.
    fn factor_cmp(&self, a: &Factor, b: &Factor) -> Ordering;

    /// Action of a non-creating generator (including central ones) on a base vector.
    fn act_on_base(&self, s: &BasisSymbol, base: &Self::Base) -> Vec<(Self::Base, Scalar)>;

    /// Sorts arbitrary creator factors into canonical order.
    fn sort_factors(&self, factors: &mut [Factor]) {
        factors.sort_by(|a, b| self.factor_cmp(a, b));
    }
}

type Key<B> = (BasisSymbol, PBWMonomial, B);

/// Recursive straightening with memoization on `(generator, monomial, base)`.
///
/// For `g · f₁ f₂ … f_k ⊗ b`:
/// * no factors: `g` becomes the only factor if it is a creator, else it hits the wall;
/// * `g` a creator with `g <= f₁`: prepend;
/// * otherwise `f₁ · (g · f₂ … f_k ⊗ b) + [g, f₁] · f₂ … f_k ⊗ b`.
pub struct Straightener<W: Wall> {
    wall: W,
    memo: HashMap<Key<W::Base>, Rc<ModuleVector<W::Base>>>,
}

impl<W: Wall> Straightener<W> {
    pub fn new(wall: W) -> Self {
        Straightener {
            wall,
            memo: HashMap::new(),
        }
    }

    pub fn wall(&self) -> &W {
        &self.wall
    }

    /// Straightens `f₁ f₂ … f_k ⊗ base` for factors given in any order.
    pub fn product(&mut self, factors: &[Factor], base: W::Base) -> ModuleVector<W::Base> {
        let mut v = ModuleVector::basis(PBWMonomial::one(), base);
        for f in factors.iter().rev() {
            v = self.act_symbol_vec(&f.symbol(), &v);
        }
        v
    }

    pub fn act_symbol(&mut self, g: &BasisSymbol, m: &PBWMonomial, base: &W::Base) -> Rc<ModuleVector<W::Base>> {
        let key = (g.clone(), m.clone(), base.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Rc::clone(hit);
        }
        let out = Rc::new(self.compute(g, m, base));
        self.memo.insert(key, Rc::clone(&out));
        out
    }

    fn compute(&mut self, g: &BasisSymbol, m: &PBWMonomial, base: &W::Base) -> ModuleVector<W::Base> {
        let creator = self.wall.is_creator(g);
        let Some((f1, rest)) = m.split_first() else {
            if creator {
                let f = Factor::from_symbol(g).expect("creators are E or H symbols");
                return ModuleVector::basis(PBWMonomial::from_sorted([f]), base.clone());
            }
            let mut out = ModuleVector::zero();
            for (b, c) in self.wall.act_on_base(g, base) {
                out.add_term(PBWMonomial::one(), b, c);
            }
            return out;
        };
        if creator {
            let gf = Factor::from_symbol(g).expect("creators are E or H symbols");
            if self.wall.factor_cmp(&gf, f1) != Ordering::Greater {
                return ModuleVector::basis(m.prepend(gf), base.clone());
            }
        }
        let f1 = f1.clone();
        let f1_symbol = f1.symbol();
        let mut out = ModuleVector::zero();
        let inner = self.act_symbol(g, &rest, base);
        for (mm, b, c) in inner.terms() {
            let moved = self.act_symbol(&f1_symbol, mm, b);
            out.add_scaled(c, &moved);
        }
        let br = bracket_basis(AlgebraVariant::HVir, g, &f1_symbol);
        for (s, k) in br.terms() {
            let part = self.act_symbol(s, &rest, base);
            out.add_scaled(k, &part);
        }
        out
    }

    /// `g · v` for a basis symbol `g`.
    pub fn act_symbol_vec(&mut self, g: &BasisSymbol, v: &ModuleVector<W::Base>) -> ModuleVector<W::Base> {
        let mut out = ModuleVector::zero();
        for (m, b, c) in v.terms() {
            let part = self.act_symbol(g, m, b);
            out.add_scaled(c, &part);
        }
        out
    }

    /// `x · v`, extended linearly.
    pub fn act(&mut self, x: &AlgebraElement, v: &ModuleVector<W::Base>) -> ModuleVector<W::Base> {
        let mut out = ModuleVector::zero();
        for (s, k) in x.terms() {
            let part = self.act_symbol_vec(s, v);
            out.add_scaled(k, &part);
        }
        out
    }
}

/// Redex selection for [`rewrite_act`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Independent route to the action: expands `x · v` as words
/// `s₁ s₂ … s_k ⊗ b` and rewrites one redex at a time until every word is a
/// sorted product of creators. A redex is either an adjacent pair in the wrong
/// order (`s t → t s + [s, t]`) or a non-creator in last position, which hits
/// the wall.
pub fn rewrite_act<W: Wall>(
    wall: &W,
    x: &AlgebraElement,
    v: &ModuleVector<W::Base>,
    strategy: Strategy,
) -> ModuleVector<W::Base> {
    let mut pending: Vec<(Vec<BasisSymbol>, W::Base, Scalar)> = Vec::new();
    for (s, k) in x.terms() {
        for (m, b, c) in v.terms() {
            let mut word = vec![s.clone()];
            word.extend(m.factors().iter().map(Factor::symbol));
            pending.push((word, b.clone(), k * c));
        }
    }
    let mut out = ModuleVector::zero();
    while let Some((word, base, coeff)) = pending.pop() {
        match find_redex(wall, &word, strategy) {
            None => {
                let factors = word
                    .iter()
                    .map(|s| Factor::from_symbol(s).expect("normal words hold creators"));
                out.add_term(PBWMonomial::from_sorted(factors), base, coeff);
            }
            Some(Redex::Wall) => {
                let (last, init) = word.split_last().expect("wall redex needs a symbol");
                for (b, c) in wall.act_on_base(last, &base) {
                    pending.push((init.to_vec(), b, &coeff * &c));
                }
            }
            Some(Redex::Swap(i)) => {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                pending.push((swapped, base.clone(), coeff.clone()));
                for (s, k) in bracket_basis(AlgebraVariant::HVir, &word[i], &word[i + 1]).terms() {
                    let mut shorter = word[..i].to_vec();
                    shorter.push(s.clone());
                    shorter.extend_from_slice(&word[i + 2..]);
                    pending.push((shorter, base.clone(), &coeff * k));
                }
            }
        }
    }
    out
}

enum Redex {
    Wall,
    Swap(usize),
}

fn find_redex<W: Wall>(wall: &W, word: &[BasisSymbol], strategy: Strategy) -> Option<Redex> {
    let k = word.len();
    let out_of_order = |i: usize| {
        let (s, t) = (&word[i], &word[i + 1]);
        match (wall.is_creator(s), wall.is_creator(t)) {
            (false, true) => true,
            (true, true) => {
                let fs = Factor::from_symbol(s).expect("creator");
                let ft = Factor::from_symbol(t).expect("creator");
                wall.factor_cmp(&fs, &ft) == Ordering::Greater
            }
            _ => false,
        }
    };
    let wall_redex = k > 0 && !wall.is_creator(&word[k - 1]);
    match strategy {
        Strategy::Leftmost => (0..k.saturating_sub(1))
            .find(|&i| out_of_order(i))
            .map(Redex::Swap)
            .or(wall_redex.then_some(Redex::Wall)),
        Strategy::Rightmost => {
            if wall_redex {
                return Some(Redex::Wall);
            }
            (0..k.saturating_sub(1))
                .rev()
                .find(|&i| out_of_order(i))
                .map(Redex::Swap)
        }
    }
}
