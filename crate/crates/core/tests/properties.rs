use std::cmp::Ordering;
use std::collections::HashMap;

use hvir_core::algebra::{bracket, degree_of, AlgebraElement, AlgebraVariant, BasisSymbol, Degree, Kind};
use hvir_core::lattice::{lex_cmp, mu_form, LatticeVector};
use hvir_core::repmod::{t_act, t_axiom_defect, TModuleSpec, TVector};
use hvir_core::scalars::{Context, Rational, Scalar, ScalarError, Var};
use hvir_core::syntax::{parse_element, parse_scalar};
use hvir_core::verma::{
    rewrite_act, weight_basis, weight_of, Factor, HighestWeight, Straightener, Strategy as Rewrite, VermaModule,
    VermaVector, VermaWall,
};
use proptest::prelude::*;

const N: usize = 2;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// Polynomials in `m1, m2, a` with at most four terms.
fn polynomial() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((small_rational(), 0u32..3, 0u32..3, 0u32..2), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, e1, e2, ea)| {
            let t = &(&Scalar::from_rational(c) * &Scalar::mu(0).pow(e1)) * &Scalar::mu(1).pow(e2);
            &acc + &(&t * &Scalar::param("a").pow(ea))
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (polynomial(), polynomial()).prop_map(|(p, q)| if q.is_zero() { p } else { p.checked_div(&q).unwrap() })
}

fn point() -> impl Strategy<Value = HashMap<Var, Rational>> {
    (small_rational(), small_rational(), small_rational())
        .prop_map(|(m1, m2, a)| HashMap::from([(Var::mu(0), m1), (Var::mu(1), m2), (Var::param("a").unwrap(), a)]))
}

fn lattice(bound: i64) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-bound..=bound, N).prop_map(LatticeVector::new)
}

fn symbol(bound: i64) -> impl Strategy<Value = BasisSymbol> {
    prop_oneof![
        6 => lattice(bound).prop_map(BasisSymbol::E),
        6 => lattice(bound).prop_map(BasisSymbol::H),
        1 => Just(BasisSymbol::C1),
        1 => Just(BasisSymbol::C2),
        1 => Just(BasisSymbol::C3),
    ]
}

fn indexed_symbol(bound: i64) -> impl Strategy<Value = BasisSymbol> {
    (any::<bool>(), lattice(bound)).prop_map(|(e, a)| if e { BasisSymbol::E(a) } else { BasisSymbol::H(a) })
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((symbol(2), polynomial()), 0..4).prop_map(AlgebraElement::from_terms)
}

/// A canonical basis monomial of `M(λ)` with up to three creating factors.
fn verma_factors(mirrored: bool) -> impl Strategy<Value = Vec<Factor>> {
    prop::collection::vec((any::<bool>(), lattice(2)), 0..=3).prop_map(move |raw| {
        raw.into_iter()
            .filter(|(_, a)| if mirrored { a.is_positive() } else { a.is_negative() })
            .map(|(e, a)| Factor::new(if e { Kind::E } else { Kind::H }, a))
            .collect()
    })
}

fn eval_or_skip(s: &Scalar, at: &HashMap<Var, Rational>) -> Option<Rational> {
    match s.eval(at) {
        Ok(v) => Some(v),
        Err(ScalarError::DenominatorVanishes) => None,
        Err(e) => panic!("unexpected {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.recip().unwrap()).is_one());
        } else {
            prop_assert!(x.recip().is_err());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar(), y in scalar(), at in point()) {
        let (Some(ex), Some(ey)) = (eval_or_skip(&x, &at), eval_or_skip(&y, &at)) else {
            return Ok(());
        };
        prop_assert_eq!((&x + &y).eval(&at).unwrap(), &ex + &ey);
        prop_assert_eq!((&x * &y).eval(&at).unwrap(), &ex * &ey);
        prop_assert_eq!((-&x).eval(&at).unwrap(), -ex);
    }

    #[test]
    fn scalar_print_parse_round_trip(x in scalar()) {
        let ctx = Context::with_all_params(N);
        let printed = x.to_string();
        let back = parse_scalar(&printed, &ctx).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn element_print_parse_round_trip(x in element()) {
        let ctx = Context::with_all_params(N);
        let printed = x.to_string();
        let back = parse_element(&printed, &ctx).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn lex_order_is_translation_invariant(a in lattice(5), b in lattice(5), c in lattice(5)) {
        let ab = lex_cmp(&a, &b).unwrap();
        prop_assert_eq!(ab, lex_cmp(&(&a + &c), &(&b + &c)).unwrap());
        prop_assert_eq!(ab.reverse(), lex_cmp(&b, &a).unwrap());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        let d = &a - &b;
        prop_assert_eq!(ab == Ordering::Greater, d.is_positive());
    }

    #[test]
    fn mu_form_is_additive_and_injective(a in lattice(5), b in lattice(5)) {
        prop_assert_eq!(mu_form(&(&a + &b)), &mu_form(&a) + &mu_form(&b));
        prop_assert_eq!(mu_form(&a) == mu_form(&b), a == b);
    }

    #[test]
    fn bracket_is_antisymmetric(x in element(), y in element()) {
        let xy = bracket(AlgebraVariant::HVir, &x, &y).unwrap();
        let yx = bracket(AlgebraVariant::HVir, &y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
        prop_assert!(bracket(AlgebraVariant::HVir, &x, &x).unwrap().is_zero());
    }

    #[test]
    fn bracket_respects_grading(x in symbol(3), y in symbol(3)) {
        let xy = bracket(AlgebraVariant::HVir, &AlgebraElement::basis(x.clone()), &AlgebraElement::basis(y.clone())).unwrap();
        match degree_of(&xy, N) {
            Degree::Zero => {}
            Degree::Homogeneous(d) => prop_assert_eq!(d, &x.degree(N) + &y.degree(N)),
            Degree::NonHomogeneous => prop_assert!(false, "[{x}, {y}] = {xy} is not homogeneous"),
        }
    }

    #[test]
    fn triangular_parts_close(a in lattice(3), b in lattice(3), ke in any::<bool>(), kh in any::<bool>()) {
        let kind = |e| if e { Kind::E } else { Kind::H };
        let xy = bracket(
            AlgebraVariant::HVir,
            &AlgebraElement::basis(kind(ke).symbol(a.clone())),
            &AlgebraElement::basis(kind(kh).symbol(b.clone())),
        ).unwrap();
        let same_side = (a.is_positive() && b.is_positive()) || (a.is_negative() && b.is_negative());
        if same_side {
            for (s, _) in xy.terms() {
                let d = s.index().expect("no central terms between one side");
                prop_assert_eq!(d.is_positive(), a.is_positive());
                prop_assert_eq!(d.is_negative(), a.is_negative());
            }
        }
    }

    #[test]
    fn t_module_shifts_weight(x in indexed_symbol(3), kappa in lattice(3)) {
        let spec = TModuleSpec::symbolic(N);
        let out = t_act(&spec, &AlgebraElement::basis(x.clone()), &TVector::basis(kappa.clone())).unwrap();
        for (k, _) in out.terms() {
            prop_assert_eq!(k, &(&kappa + x.index().unwrap()));
        }
        prop_assert!(out.terms().count() <= 1);
    }

    #[test]
    fn t_quotient_is_consistent(x in element(), coeffs in prop::collection::vec((lattice(2), polynomial()), 0..4)) {
        let zero = Scalar::zero();
        let full = TModuleSpec::new(N, zero.clone(), zero.clone(), zero.clone(), false).unwrap();
        let quotient = TModuleSpec::new(N, zero.clone(), zero.clone(), zero, true).unwrap();
        let v = TVector::from_terms(coeffs);
        let lifted = t_act(&full, &x, &v.project_quotient()).unwrap().project_quotient();
        prop_assert_eq!(t_act(&quotient, &x, &v).unwrap(), lifted);
        // v_0 spans a submodule of T(0,0,0).
        prop_assert!(t_act(&full, &x, &TVector::basis(LatticeVector::zero(N))).unwrap().is_zero());
    }

    #[test]
    fn t_quotient_axioms(x in indexed_symbol(2), y in indexed_symbol(2), kappa in lattice(2)) {
        let zero = Scalar::zero();
        let quotient = TModuleSpec::new(N, zero.clone(), zero.clone(), zero, true).unwrap();
        prop_assert!(t_axiom_defect(&quotient, &x, &y, &kappa).unwrap().is_zero());
    }

    #[test]
    fn verma_weight_covariance(x in symbol(2), factors in verma_factors(false), mirrored in any::<bool>()) {
        let factors: Vec<Factor> = if mirrored {
            factors.into_iter().map(|f| Factor::new(f.kind, -&f.alpha)).collect()
        } else {
            factors
        };
        let mut module = VermaModule::new(N, HighestWeight::symbolic(), mirrored);
        let v = module.basis_vector(&factors);
        let gamma = weight_of(v.terms().next().unwrap().0, N);
        let out = module.act_symbol(&x, &v);
        for (m, _, _) in out.terms() {
            prop_assert_eq!(weight_of(m, N), &gamma + &x.degree(N));
        }
    }

    #[test]
    fn rewriting_strategies_agree(x in element(), factors in verma_factors(false), mirrored in any::<bool>()) {
        let factors: Vec<Factor> = if mirrored {
            factors.into_iter().map(|f| Factor::new(f.kind, -&f.alpha)).collect()
        } else {
            factors
        };
        let wall = VermaWall { n: N, weight: HighestWeight::symbolic(), mirrored };
        let mut engine = Straightener::new(wall.clone());
        let v = VermaVector::basis(VermaModule::new(N, HighestWeight::symbolic(), mirrored).canonical(&factors), Default::default());
        let direct = engine.act(&x, &v);
        prop_assert_eq!(&rewrite_act(&wall, &x, &v, Rewrite::Leftmost), &direct);
        prop_assert_eq!(&rewrite_act(&wall, &x, &v, Rewrite::Rightmost), &direct);
    }

    #[test]
    fn mirror_reflects_weight_spaces(gamma in lattice(2), d in 1usize..=2, k in 1i64..=2) {
        let plain = weight_basis(&gamma, d, k, false);
        let mirrored = weight_basis(&-&gamma, d, k, true);
        prop_assert_eq!(plain.len(), mirrored.len());
        for m in &mirrored {
            prop_assert_eq!(weight_of(m, N), -&gamma);
            prop_assert!(m.factors().iter().all(|f| f.alpha.is_positive()));
        }
    }
}
