//! The coefficient ring of the graphical calculus: the eight named
//! rational functions over `{A,B,a}` and a small expression parser for
//! rule-table coefficients.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{LaurentPoly, RationalFunction, VariableSet};

/// The named coefficients of the two graphical calculi.
///
/// For the oriented calculus: `delta`, `lambda`, `theta`, `eta`; for the
/// unoriented one: `mu = delta + 1`, `o = lambda - (A+B)`,
/// `gamma = theta + A*B`, `xi = eta`.
#[derive(Debug, Clone)]
pub struct KVCoefficients {
    pub delta: RationalFunction,
    pub lambda: RationalFunction,
    pub theta: RationalFunction,
    pub eta: RationalFunction,
    pub mu: RationalFunction,
    pub o: RationalFunction,
    pub gamma: RationalFunction,
    pub xi: RationalFunction,
}

fn abap(n: &str, e: i64) -> LaurentPoly {
    LaurentPoly::var_pow(&VariableSet::aba(), n, e).unwrap()
}

/// `(B^k a - A^k a^-1) / (A - B)`, the family that houses delta, theta
/// and eta (and lambda up to sign).
fn ratio(k: i64) -> RationalFunction {
    let num = abap("B", k)
        .mul(&abap("a", 1))
        .unwrap()
        .sub(&abap("A", k).mul(&abap("a", -1)).unwrap())
        .unwrap();
    let den = abap("A", 1).sub(&abap("B", 1)).unwrap();
    RationalFunction::new(num, den).unwrap()
}

impl KVCoefficients {
    pub fn standard() -> &'static KVCoefficients {
        static CELL: OnceLock<KVCoefficients> = OnceLock::new();
        CELL.get_or_init(|| {
            let aba = VariableSet::aba();
            let one = RationalFunction::one(&aba);
            let a_plus_b = RationalFunction::from_poly(
                abap("A", 1).add(&abap("B", 1)).unwrap(),
            );
            let ab = RationalFunction::from_poly(abap("A", 1).mul(&abap("B", 1)).unwrap());
            let delta = ratio(0);
            let lambda = ratio(1).neg();
            let theta = ratio(2);
            let eta = ratio(3);
            let mu = delta.add(&one).unwrap();
            let o = lambda.sub(&a_plus_b).unwrap();
            let gamma = theta.add(&ab).unwrap();
            let xi = eta.clone();
            KVCoefficients { delta, lambda, theta, eta, mu, o, gamma, xi }
        })
    }

    pub fn lookup(&self, name: &str) -> Option<&RationalFunction> {
        Some(match name {
            "delta" => &self.delta,
            "lambda" => &self.lambda,
            "theta" => &self.theta,
            "eta" => &self.eta,
            "mu" => &self.mu,
            "o" => &self.o,
            "gamma" => &self.gamma,
            "xi" => &self.xi,
            _ => return None,
        })
    }
}

/// Substitutions that specialize `{A,B,a}` values.
pub fn aba_bindings(
    a_img: RationalFunction,
    b_img: RationalFunction,
    aa_img: RationalFunction,
) -> BTreeMap<String, RationalFunction> {
    BTreeMap::from([
        ("A".to_string(), a_img),
        ("B".to_string(), b_img),
        ("a".to_string(), aa_img),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad coefficient expression at `{0}`")]
pub struct ExprError(pub String);

/// Parse a coefficient expression over the symbols
/// `delta lambda theta eta mu o gamma xi A B a`, integers, `+ - * / ^ ( )`.
pub fn parse_coeff(src: &str) -> Result<RationalFunction, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExprError(format!("trailing input in `{src}`")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ExprError> {
    let mut out = Vec::new();
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n.parse().map_err(|_| ExprError(n.clone()))?));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Sym(s));
            }
            other => return Err(ExprError(other.to_string())),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?).map_err(|e| ExprError(e.to_string()))?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?).map_err(|e| ExprError(e.to_string()))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?).map_err(|e| ExprError(e.to_string()))?;
                }
                Tok::Slash => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?).map_err(|e| ExprError(e.to_string()))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, ExprError> {
        let aba = VariableSet::aba();
        let base = match self.next() {
            Some(Tok::Minus) => return Ok(self.factor()?.neg()),
            Some(Tok::Num(n)) => RationalFunction::constant(&aba, n),
            Some(Tok::Sym(s)) => match s.as_str() {
                "A" | "B" | "a" => RationalFunction::var(&aba, &s).unwrap(),
                name => KVCoefficients::standard()
                    .lookup(name)
                    .ok_or_else(|| ExprError(name.to_string()))?
                    .clone(),
            },
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => v,
                    _ => return Err(ExprError("missing )".into())),
                }
            }
            other => return Err(ExprError(format!("{other:?}"))),
        };
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e = if neg { -n } else { n };
                    return base.pow(e).map_err(|e| ExprError(e.to_string()));
                }
                _ => return Err(ExprError("exponent must be an integer".into())),
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_identities() {
        let k = KVCoefficients::standard();
        let one = RationalFunction::one(&VariableSet::aba());
        assert!(k.mu.equals(&k.delta.add(&one).unwrap()).unwrap());
        assert!(k.xi.equals(&k.eta).unwrap());
        let apb = parse_coeff("A + B").unwrap();
        assert!(k.o.equals(&k.lambda.sub(&apb).unwrap()).unwrap());
        let ab = parse_coeff("A*B").unwrap();
        assert!(k.gamma.equals(&k.theta.add(&ab).unwrap()).unwrap());
    }

    #[test]
    fn expression_parser_round_trips() {
        let k = KVCoefficients::standard();
        assert!(parse_coeff("lambda").unwrap().equals(&k.lambda).unwrap());
        let e = parse_coeff("1 - A*B").unwrap();
        let want = RationalFunction::one(&VariableSet::aba())
            .sub(&parse_coeff("A*B").unwrap())
            .unwrap();
        assert!(e.equals(&want).unwrap());
        let e = parse_coeff("-(A + B)").unwrap();
        assert!(e.equals(&parse_coeff("0 - A - B").unwrap()).unwrap());
        let e = parse_coeff("A^-2 * a").unwrap();
        let want = parse_coeff("a / (A*A)").unwrap();
        assert!(e.equals(&want).unwrap());
        assert!(parse_coeff("bogus").is_err());
    }
}
