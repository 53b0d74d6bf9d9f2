//! JSON forms of cochains, module vectors and PBW monomials.

use hvir_core::algebra::{AlgebraElement, BasisSymbol, Kind};
use hvir_core::cocycles::{Cochain1, Cochain2};
use hvir_core::lattice::LatticeVector;
use hvir_core::repmod::TVector;
use hvir_core::scalars::{Context, Scalar};
use hvir_core::syntax::{parse_element, parse_scalar};
use hvir_core::verma::{Factor, ModuleVector, PBWMonomial, TBasis, Top};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

pub fn parse_symbol(text: &str, ctx: &Context) -> Result<BasisSymbol, CliError> {
    let x = parse_element(text, ctx).map_err(|e| CliError::parse(text, e))?;
    let mut terms = x.terms();
    match (terms.next(), terms.next()) {
        (Some((s, c)), None) if c.is_one() => Ok(s.clone()),
        _ => Err(CliError::Usage(format!("`{text}` is not a single basis symbol"))),
    }
}

pub fn parse_coeff(text: &str, ctx: &Context) -> Result<Scalar, CliError> {
    parse_scalar(text, ctx).map_err(|e| CliError::Usage(format!("`{text}`: {e}")))
}

/// Parses `[1,-2]` or `1,-2`.
pub fn parse_lattice(text: &str, n: usize) -> Result<LatticeVector, CliError> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let coords: Result<Vec<i64>, _> = if t.trim().is_empty() {
        Ok(Vec::new())
    } else {
        t.split(',').map(|c| c.trim().parse::<i64>()).collect()
    };
    let coords = coords.map_err(|_| CliError::Usage(format!("`{text}` is not an integer vector")))?;
    if coords.len() != n {
        return Err(CliError::Usage(format!(
            "`{text}` has {} coordinates, expected {n}",
            coords.len()
        )));
    }
    Ok(LatticeVector::new(coords))
}

#[derive(Serialize, Deserialize)]
struct PairEntry {
    pair: [String; 2],
    value: String,
}

pub fn cochain2_to_json(c: &Cochain2) -> Value {
    let entries: Vec<PairEntry> = c
        .pairs()
        .map(|((x, y), v)| PairEntry {
            pair: [x.to_string(), y.to_string()],
            value: v.to_string(),
        })
        .collect();
    serde_json::to_value(entries).expect("plain data")
}

pub fn cochain2_from_json(v: &Value, n: usize, bound: i64, ctx: &Context) -> Result<Cochain2, CliError> {
    let entries: Vec<PairEntry> =
        serde_json::from_value(v.clone()).map_err(|e| CliError::Usage(format!("bad cochain: {e}")))?;
    let mut pairs = Vec::new();
    for e in entries {
        let x = parse_symbol(&e.pair[0], ctx)?;
        let y = parse_symbol(&e.pair[1], ctx)?;
        pairs.push(((x, y), parse_coeff(&e.value, ctx)?));
    }
    Cochain2::from_pairs(n, bound, pairs).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cochain1_to_json(b: &Cochain1) -> Value {
    Value::Array(
        b.support()
            .map(|(s, v)| json!({"symbol": s.to_string(), "value": v.to_string()}))
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
struct KappaEntry {
    kappa: Vec<i64>,
    coeff: String,
}

pub fn tvector_to_json(v: &TVector) -> Value {
    let entries: Vec<KappaEntry> = v
        .terms()
        .map(|(k, c)| KappaEntry {
            kappa: k.coords().to_vec(),
            coeff: c.to_string(),
        })
        .collect();
    serde_json::to_value(entries).expect("plain data")
}

pub fn tvector_from_json(text: &str, n: usize, ctx: &Context) -> Result<TVector, CliError> {
    let entries: Vec<KappaEntry> =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad vector: {e}")))?;
    let mut out = TVector::zero();
    for e in entries {
        if e.kappa.len() != n {
            return Err(CliError::Usage(format!(
                "kappa {:?} does not have {n} coordinates",
                e.kappa
            )));
        }
        out.add_term(LatticeVector::new(e.kappa), parse_coeff(&e.coeff, ctx)?);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct FactorEntry {
    kind: String,
    alpha: Vec<i64>,
}

pub fn monomial_to_json(m: &PBWMonomial) -> Value {
    let entries: Vec<FactorEntry> = m
        .factors()
        .iter()
        .map(|f| FactorEntry {
            kind: match f.kind {
                Kind::E => "E".into(),
                Kind::H => "H".into(),
            },
            alpha: f.alpha.coords().to_vec(),
        })
        .collect();
    serde_json::to_value(entries).expect("plain data")
}

pub fn factors_from_json(text: &str, n: usize) -> Result<Vec<Factor>, CliError> {
    let entries: Vec<FactorEntry> =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad monomial: {e}")))?;
    entries
        .into_iter()
        .map(|e| {
            let kind = match e.kind.as_str() {
                "E" => Kind::E,
                "H" => Kind::H,
                other => return Err(CliError::Usage(format!("unknown factor kind `{other}`"))),
            };
            if e.alpha.len() != n {
                return Err(CliError::Usage(format!(
                    "alpha {:?} does not have {n} coordinates",
                    e.alpha
                )));
            }
            Ok(Factor::new(kind, LatticeVector::new(e.alpha)))
        })
        .collect()
}

pub fn verma_vector_to_json(v: &ModuleVector<Top>) -> Value {
    Value::Array(
        v.terms()
            .map(|(m, _, c)| json!({"monomial": monomial_to_json(m), "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn genverma_vector_to_json(v: &ModuleVector<TBasis>) -> Value {
    Value::Array(
        v.terms()
            .map(|(m, b, c)| json!({"monomial": monomial_to_json(m), "kappa": b.0.coords(), "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn element_to_json(x: &AlgebraElement) -> Value {
    Value::String(x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_forms() {
        assert_eq!(parse_lattice("[1,-2]", 2).unwrap(), [1, -2].into());
        assert_eq!(parse_lattice(" 3 ", 1).unwrap(), [3].into());
        assert!(parse_lattice("[1]", 2).is_err());
        assert!(parse_lattice("[a,1]", 2).is_err());
    }

    #[test]
    fn json_round_trips() {
        let ctx = Context::with_all_params(2);
        let v = TVector::from_terms([([1, 0].into(), Scalar::ratio(1, 2)), ([0, -1].into(), Scalar::mu(1))]);
        let text = tvector_to_json(&v).to_string();
        assert_eq!(tvector_from_json(&text, 2, &ctx).unwrap(), v);

        let m = PBWMonomial::from_sorted([Factor::e([-1, 0]), Factor::h([0, -1])]);
        let back = factors_from_json(&monomial_to_json(&m).to_string(), 2).unwrap();
        assert_eq!(PBWMonomial::from_sorted(back), m);

        let c = Cochain2::from_pairs(
            1,
            2,
            [((BasisSymbol::H([1].into()), BasisSymbol::H([-1].into())), Scalar::mu(0))],
        )
        .unwrap();
        let ctx1 = Context::with_all_params(1);
        assert_eq!(cochain2_from_json(&cochain2_to_json(&c), 1, 2, &ctx1).unwrap(), c);
    }
}
