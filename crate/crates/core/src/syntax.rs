//! Text syntax for scalars and algebra elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := int | ident | '(' expr ')' | 'E' '[' ints ']' | 'H' '[' ints ']' | 'C1' | 'C2' | 'C3'
//! ```
//!
//! Printing goes through the `Display` impls of [`Scalar`] and
//! [`AlgebraElement`], whose output parses back to an equal value.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraElement, BasisSymbol};
use crate::lattice::LatticeVector;
use crate::scalars::{Context, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown indeterminate `{name}` at byte {offset}")]
    UnknownIndeterminate { name: String, offset: usize },
    #[error("index at byte {offset} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        offset: usize,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIndeterminate { offset, .. }
            | ParseError::DimensionMismatch { offset, .. } => *offset,
        }
    }
}

impl From<ParseError> for ScalarError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::UnknownIndeterminate { name, offset } => ScalarError::UnknownIndeterminate { name, offset },
            other => ScalarError::Syntax {
                offset: other.offset(),
                message: other.to_string(),
            },
        }
    }
}

/// Parses a scalar over the indeterminates of `ctx`.
pub fn parse_scalar(text: &str, ctx: &Context) -> Result<Scalar, ScalarError> {
    match parse_value(text, ctx)? {
        Value::Scalar(s) => Ok(s),
        Value::Element(_) => Err(ScalarError::Syntax {
            offset: 0,
            message: "expected a scalar, found an algebra element".into(),
        }),
    }
}

/// Parses an algebra element; indices must have `ctx.rank()` coordinates.
///
/// A bare scalar is accepted only when it is zero.
pub fn parse_element(text: &str, ctx: &Context) -> Result<AlgebraElement, ParseError> {
    match parse_value(text, ctx)? {
        Value::Element(x) => Ok(x),
        Value::Scalar(s) if s.is_zero() => Ok(AlgebraElement::zero()),
        Value::Scalar(_) => Err(ParseError::Syntax {
            offset: 0,
            message: "expected an algebra element, found a non-zero scalar".into(),
        }),
    }
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Element(AlgebraElement),
}

pub fn parse_value(text: &str, ctx: &Context) -> Result<Value, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn error(&self, offset: usize, message: &str) -> ParseError {
        ParseError::Syntax {
            offset,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(self.pos, &format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = add(acc, rhs, false, at)?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = add(acc, rhs, true, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs, at)?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = div(acc, rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat(b'-') {
            return Ok(match self.unary()? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Element(x) => Value::Element(x.neg()),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        let at = self.pos;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let digits_at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        let e: u32 = digits
            .parse()
            .map_err(|_| self.error(digits_at, "expected a non-negative integer exponent"))?;
        match base {
            Value::Scalar(s) => Ok(Value::Scalar(s.pow(e))),
            Value::Element(_) => Err(self.error(at, "algebra elements cannot be raised to a power")),
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default()
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = match self.peek() {
            None => return Err(self.error(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.src[at];
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            self.expect(b')')?;
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n: BigInt = digits.parse().map_err(|_| self.error(at, "bad integer literal"))?;
            return Ok(Value::Scalar(Scalar::from_rational(Rational::from_integer(n))));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string();
            match name.as_str() {
                "E" | "H" if self.peek() == Some(b'[') => {
                    let alpha = self.index()?;
                    let s = if name == "E" {
                        BasisSymbol::E(alpha)
                    } else {
                        BasisSymbol::H(alpha)
                    };
                    return Ok(Value::Element(AlgebraElement::basis(s)));
                }
                "C1" => return Ok(Value::Element(AlgebraElement::basis(BasisSymbol::C1))),
                "C2" => return Ok(Value::Element(AlgebraElement::basis(BasisSymbol::C2))),
                "C3" => return Ok(Value::Element(AlgebraElement::basis(BasisSymbol::C3))),
                _ => {}
            }
            return match self.ctx.resolve(&name) {
                Some(v) => Ok(Value::Scalar(Scalar::var(v))),
                None => Err(ParseError::UnknownIndeterminate { name, offset: at }),
            };
        }
        Err(self.error(at, &format!("unexpected character `{}`", c as char)))
    }

    fn index(&mut self) -> Result<LatticeVector, ParseError> {
        let open = self.pos;
        self.expect(b'[')?;
        let mut coords = Vec::new();
        if !self.eat(b']') {
            loop {
                let negative = self.eat(b'-');
                self.skip_ws();
                let at = self.pos;
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v: i64 = digits
                    .parse()
                    .map_err(|_| self.error(at, "expected an integer coordinate"))?;
                coords.push(if negative { -v } else { v });
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        if coords.len() != self.ctx.rank() {
            return Err(ParseError::DimensionMismatch {
                offset: open,
                expected: self.ctx.rank(),
                found: coords.len(),
            });
        }
        Ok(LatticeVector::new(coords))
    }
}

fn add(lhs: Value, rhs: Value, subtract: bool, at: usize) -> Result<Value, ParseError> {
    let rhs = match (subtract, rhs) {
        (false, r) => r,
        (true, Value::Scalar(s)) => Value::Scalar(-s),
        (true, Value::Element(x)) => Value::Element(x.neg()),
    };
    match (lhs, rhs) {
        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a + b)),
        (Value::Element(x), Value::Element(y)) => Ok(Value::Element(x.add(&y))),
        (Value::Element(x), Value::Scalar(s)) | (Value::Scalar(s), Value::Element(x)) if s.is_zero() => {
            Ok(Value::Element(x))
        }
        _ => Err(ParseError::Syntax {
            offset: at,
            message: "cannot add a non-zero scalar to an algebra element".into(),
        }),
    }
}

fn mul(lhs: Value, rhs: Value, at: usize) -> Result<Value, ParseError> {
    match (lhs, rhs) {
        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a * b)),
        (Value::Scalar(s), Value::Element(x)) | (Value::Element(x), Value::Scalar(s)) => {
            Ok(Value::Element(x.scale(&s)))
        }
        (Value::Element(_), Value::Element(_)) => Err(ParseError::Syntax {
            offset: at,
            message: "product of two algebra elements".into(),
        }),
    }
}

fn div(lhs: Value, rhs: Value, at: usize) -> Result<Value, ParseError> {
    let Value::Scalar(d) = rhs else {
        return Err(ParseError::Syntax {
            offset: at,
            message: "division by an algebra element".into(),
        });
    };
    let inv = d.recip().map_err(|_| ParseError::Syntax {
        offset: at,
        message: "division by zero".into(),
    })?;
    Ok(match lhs {
        Value::Scalar(a) => Value::Scalar(a * inv),
        Value::Element(x) => Value::Element(x.scale(&inv)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Context {
        Context::with_all_params(n)
    }

    #[test]
    fn scalar_round_trip() {
        let c = ctx(2);
        for text in [
            "m1^3-m1",
            "(m1^3-m1)/12",
            "-7/2",
            "1/(m1-1)",
            "5*m1/6",
            "-(m1-m2)",
            "m2*b+a",
            "0",
        ] {
            let s = parse_scalar(text, &c).unwrap();
            assert_eq!(s.to_string(), text, "{text}");
        }
    }

    #[test]
    fn element_round_trip() {
        let c = ctx(2);
        let text = "-2*m1*E[0,0] + ((m1^3-m1)/12)*C1";
        let x = parse_element(text, &c).unwrap();
        assert_eq!(x.to_string(), text);
        let y = parse_element("E[1,0] - H[0,-1]/m2 + 3*C3", &c).unwrap();
        assert_eq!(parse_element(&y.to_string(), &c).unwrap(), y);
    }

    #[test]
    fn errors_carry_offsets() {
        let c = ctx(2);
        assert_eq!(
            parse_element("E[1,0] + E[1]", &c),
            Err(ParseError::DimensionMismatch {
                offset: 10,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_scalar("m1 + z", &c),
            Err(ScalarError::UnknownIndeterminate {
                name: "z".into(),
                offset: 5
            })
        );
        assert!(matches!(
            parse_scalar("m1 +", &c),
            Err(ScalarError::Syntax { offset: 4, .. })
        ));
        assert!(parse_element("E[1,0]*E[0,1]", &c).is_err());
        assert!(parse_element("E[1,0] + 1", &c).is_err());
        assert!(parse_scalar("m1/(m2-m2)", &c).is_err());
    }

    #[test]
    fn precedence() {
        let c = ctx(1);
        let m1 = Scalar::mu(0);
        assert_eq!(parse_scalar("-m1^2", &c).unwrap(), -m1.pow(2));
        assert_eq!(
            parse_scalar("2*m1 - 3/2", &c).unwrap(),
            &(&Scalar::int(2) * &m1) - &Scalar::ratio(3, 2)
        );
        assert_eq!(parse_scalar("1 - -1", &c).unwrap(), Scalar::int(2));
    }
}
