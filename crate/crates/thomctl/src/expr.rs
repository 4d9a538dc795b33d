//! Expressions such as `3*a(2) + 3/2*s*a(1) - 1/2*k*s*a(1)`.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := rational ("*" factor)*
//! factor   := base ("^" posint)?
//! base     := "Q(" int ("," int)* ")" | "a(" posint ")" | "s" | "t" | "v1" | "v2" | "k"
//! rational := int ("/" posint)?
//! ```

use std::fmt;

use thiserror::Error;
use thom_core::legendre::{half_dual_xi, s_class, v1, v2, KClass, LegClass, LegRing, Params};
use thom_core::{Rational, StrictPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("Q index must be a strict partition (at byte {offset})")]
    NotStrict { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Q(StrictPartition),
    A(u32),
    S,
    T,
    V1,
    V2,
    K,
}

impl Base {
    /// Cohomological weight; `k` is a number.
    pub fn weight(&self) -> u32 {
        match self {
            Base::Q(i) => i.weight(),
            Base::A(i) => *i,
            Base::S | Base::T | Base::V1 | Base::V2 => 1,
            Base::K => 0,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Q(i) => write!(f, "Q{i}"),
            Base::A(i) => write!(f, "a({i})"),
            Base::S => write!(f, "s"),
            Base::T => write!(f, "t"),
            Base::V1 => write!(f, "v1"),
            Base::V2 => write!(f, "v2"),
            Base::K => write!(f, "k"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub base: Base,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.base.weight() * f.power).sum()
    }

    /// Total power of `k`.
    pub fn k_degree(&self) -> u32 {
        self.factors.iter().filter(|f| f.base == Base::K).map(|f| f.power).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<Term>,
}

impl ExprAst {
    pub fn max_weight(&self) -> u32 {
        self.terms.iter().map(Term::weight).max().unwrap_or(0)
    }

    pub fn k_degree(&self) -> u32 {
        self.terms.iter().map(Term::k_degree).max().unwrap_or(0)
    }

    pub fn mentions(&self, base: &Base) -> bool {
        self.terms.iter().flat_map(|t| &t.factors).any(|f| &f.base == base)
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, term) in self.terms.iter().enumerate() {
            let c = &term.coeff;
            match (n, c.is_negative()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, " - {}", c.abs())?,
                (_, false) => write!(f, " + {c}")?,
            }
            for factor in &term.factors {
                write!(f, "*{}", factor.base)?;
                if factor.power != 1 {
                    write!(f, "^{}", factor.power)?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn digits(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.error("expected a number");
        }
        self.pos += len;
        self.src[start..self.pos].parse().map_err(|_| ParseError::Syntax { offset: start, message: "number too large".into() })
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat('-');
        let start = self.pos;
        let n = i64::try_from(self.digits()?)
            .map_err(|_| ParseError::Syntax { offset: start, message: "number too large".into() })?;
        Ok(if negative { -n } else { n })
    }

    fn posint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let n = self.digits()?;
        match u32::try_from(n) {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(ParseError::Syntax { offset: start, message: "expected a positive integer".into() }),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.int()?;
        if self.eat('/') {
            let den = self.posint()?;
            Ok(Rational::new(num, den as i64))
        } else {
            Ok(Rational::from(num))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if !rest.starts_with(word) {
            return false;
        }
        // `v1` must not swallow the start of `v12`, nor `s` the start of `sx`.
        let next = rest[word.len()..].chars().next();
        if word.ends_with('(') || !next.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn base(&mut self) -> Result<Base, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.keyword("Q(") {
            let mut parts = Vec::new();
            loop {
                let at = self.pos;
                let n = self.int()?;
                if n <= 0 {
                    return Err(ParseError::NotStrict { offset: at });
                }
                parts.push(u32::try_from(n).map_err(|_| ParseError::Syntax { offset: at, message: "part too large".into() })?);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(')')?;
            return StrictPartition::new(parts).map(Base::Q).map_err(|_| ParseError::NotStrict { offset: start });
        }
        if self.keyword("a(") {
            let i = self.posint()?;
            self.expect(')')?;
            return Ok(Base::A(i));
        }
        for (word, base) in [("v1", Base::V1), ("v2", Base::V2), ("s", Base::S), ("t", Base::T), ("k", Base::K)] {
            if self.keyword(word) {
                return Ok(base);
            }
        }
        match self.peek() {
            Some(c) => self.error(format!("unexpected `{c}`; expected Q(..), a(..), s, t, v1, v2 or k")),
            None => self.error("unexpected end of input; expected a factor"),
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let base = self.base()?;
        let power = if self.eat('^') { self.posint()? } else { 1 };
        Ok(Factor { base, power })
    }

    fn term(&mut self, negate: bool) -> Result<Term, ParseError> {
        let mut coeff = self.rational()?;
        if negate {
            coeff = -coeff;
        }
        let mut factors = Vec::new();
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(Term { coeff, factors })
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut terms = vec![self.term(false)?];
        loop {
            if self.eat('+') {
                terms.push(self.term(false)?);
            } else if self.eat('-') {
                terms.push(self.term(true)?);
            } else if self.peek().is_none() {
                return Ok(ExprAst { terms });
            } else {
                let c = self.peek().unwrap_or(' ');
                return self.error(format!("unexpected `{c}`; expected `+`, `-`, `*` or end of input"));
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    Parser { src: text, pos: 0 }.expr()
}

/// Value of an expression in canonical plane coordinates, as a polynomial in `k`.
/// `Q(I)` is `Q̃_I(A⊗ξ^{-1/2})` and `t = ½c_1(ξ*)`.
pub fn evaluate(ast: &ExprAst, ring: &LegRing) -> thom_core::Result<KClass> {
    let params = Params::Plane;
    let mut parts = vec![LegClass::zero(params); ast.k_degree() as usize + 1];
    for term in &ast.terms {
        let mut value = LegClass::constant(params, term.coeff.clone());
        for factor in &term.factors {
            let g = match &factor.base {
                Base::K => continue,
                Base::Q(i) => LegClass::basis(params, i.clone(), 0, 0)?,
                Base::A(i) => ring.a(*i, params)?,
                Base::S => s_class(params),
                Base::T => half_dual_xi(params),
                Base::V1 => v1(params),
                Base::V2 => v2(params),
            };
            value = ring.mul(&value, &ring.pow(&g, factor.power)?)?;
        }
        let slot = &mut parts[term.k_degree() as usize];
        *slot = slot.checked_add(&value)?;
    }
    KClass::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_templates() {
        let ast = parse_expr("3*Q(2) + 1*t*Q(1)").unwrap();
        assert_eq!(ast.terms.len(), 2);
        assert_eq!(ast.to_string(), "3*Q(2) + 1*t*Q(1)");
        let b = parse_expr("3*a(2) + 3/2*s*a(1) - 1/2*k*s*a(1)").unwrap();
        assert_eq!(b.terms[2].coeff, Rational::new(-1, 2));
        assert_eq!(b.k_degree(), 1);
        assert_eq!(b.max_weight(), 2);
        assert_eq!(parse_expr(" -2 * v1 ^ 2*Q(3, 1)").unwrap().to_string(), "-2*v1^2*Q(3,1)");
    }

    #[test]
    fn reports_offsets() {
        assert_eq!(parse_expr("1*Q(1,2)"), Err(ParseError::NotStrict { offset: 2 }));
        assert_eq!(parse_expr("1*Q(0)"), Err(ParseError::NotStrict { offset: 4 }));
        assert!(matches!(parse_expr("1*x"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("1*t^0"), Err(ParseError::Syntax { offset: 4, .. })));
        assert!(matches!(parse_expr("Q(1)"), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_expr("1 2"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("1/0*t"), Err(ParseError::Syntax { offset: 2, .. })));
        assert_eq!(
            parse_expr("1*Q(2,2)").unwrap_err().to_string(),
            "Q index must be a strict partition (at byte 2)"
        );
    }
}
