//! Expressions over the symbols `k` and `q`.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := nat | nat '/' nat | 'k' | 'q' | '(' expr ')'
//! ```
//!
//! A leading minus is accepted so that every canonical `Poly` text form
//! parses back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{ParseError, ParseErrorKind};
use crate::poly::{rational_to_string, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative literal, integer or `n/d`.
    Lit(Rational),
    K,
    Q,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Nat,
    K,
    Q,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                text.push(d);
                chars.next();
            }
            out.push(Token { tok: Tok::Nat, pos, text });
            continue;
        }
        let tok = match c {
            'k' => Tok::K,
            'q' => Tok::Q,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Lexical(other),
                })
            }
        };
        chars.next();
        out.push(Token {
            tok,
            pos,
            text: c.to_string(),
        });
    }
    out.push(Token {
        tok: Tok::End,
        pos: input.len(),
        text: String::new(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> &Token {
        let t = &self.tokens[self.at];
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.peek().pos,
            kind: ParseErrorKind::Syntax(msg.into()),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.peek().tok == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.peek();
        if t.tok != Tok::Nat {
            return Err(ParseError {
                pos: t.pos,
                kind: ParseErrorKind::BadExponent,
            });
        }
        let exp: u32 = t.text.parse().map_err(|_| ParseError {
            pos: t.pos,
            kind: ParseErrorKind::BadExponent,
        })?;
        self.bump();
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn nat(&mut self) -> BigInt {
        let text = self.bump().text.clone();
        text.parse().expect("lexer only emits digit runs")
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok {
            Tok::Nat => {
                let num = self.nat();
                if self.peek().tok != Tok::Slash {
                    return Ok(Expr::Lit(Rational::from_integer(num)));
                }
                self.bump();
                if self.peek().tok != Tok::Nat {
                    return self.syntax("expected denominator after '/'");
                }
                let den_pos = self.peek().pos;
                let den = self.nat();
                if den.is_zero() {
                    return Err(ParseError {
                        pos: den_pos,
                        kind: ParseErrorKind::Syntax("zero denominator".into()),
                    });
                }
                Ok(Expr::Lit(Rational::new(num, den)))
            }
            Tok::K => {
                self.bump();
                Ok(Expr::K)
            }
            Tok::Q => {
                self.bump();
                Ok(Expr::Q)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of input"),
            _ => {
                let text = self.peek().text.clone();
                self.syntax(format!("unexpected token {text:?}"))
            }
        }
    }
}

/// Parses an expression in `k` and `q`.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        at: 0,
    };
    let e = parser.expr()?;
    if parser.peek().tok != Tok::End {
        let text = parser.peek().text.clone();
        return parser.syntax(format!("trailing input starting at {text:?}"));
    }
    Ok(e)
}

impl Expr {
    pub fn lit(n: i64) -> Expr {
        Expr::Lit(Rational::from_integer(BigInt::from(n)))
    }

    pub fn mentions_k(&self) -> bool {
        match self {
            Expr::K => true,
            Expr::Lit(_) | Expr::Q => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_k(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.mentions_k() || b.mentions_k(),
        }
    }

    /// Evaluates as a polynomial in `k` with `Poly` coefficients.
    pub fn to_kpoly(&self) -> KPoly {
        match self {
            Expr::Lit(r) => KPoly::constant(Poly::constant(r.clone())),
            Expr::K => KPoly::k(),
            Expr::Q => KPoly::constant(Poly::q()),
            Expr::Neg(a) => a.to_kpoly().neg(),
            Expr::Add(a, b) => a.to_kpoly().add(&b.to_kpoly()),
            Expr::Sub(a, b) => a.to_kpoly().sub(&b.to_kpoly()),
            Expr::Mul(a, b) => a.to_kpoly().mul(&b.to_kpoly()),
            Expr::Pow(a, e) => a.to_kpoly().pow(*e),
        }
    }

    /// The polynomial in `q` obtained by fixing `k`.
    pub fn eval_at(&self, k: u64) -> Poly {
        match self {
            Expr::Lit(r) => Poly::constant(r.clone()),
            Expr::K => Poly::constant(Rational::from_integer(BigInt::from(k))),
            Expr::Q => Poly::q(),
            Expr::Neg(a) => -a.eval_at(k),
            Expr::Add(a, b) => a.eval_at(k) + b.eval_at(k),
            Expr::Sub(a, b) => a.eval_at(k) - b.eval_at(k),
            Expr::Mul(a, b) => a.eval_at(k) * b.eval_at(k),
            Expr::Pow(a, e) => a.eval_at(k).pow(*e),
        }
    }

    /// Converts a `k`-free expression to a polynomial.
    pub fn to_poly(&self) -> Result<Poly, ParseError> {
        if self.mentions_k() {
            return Err(ParseError {
                pos: 0,
                kind: ParseErrorKind::UnexpectedK,
            });
        }
        Ok(self.eval_at(0))
    }

    /// Replaces every `k` with `replacement`.
    pub fn subst_k(&self, replacement: &Expr) -> Expr {
        match self {
            Expr::K => replacement.clone(),
            Expr::Lit(_) | Expr::Q => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.subst_k(replacement))),
            Expr::Pow(a, e) => Expr::Pow(Box::new(a.subst_k(replacement)), *e),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.subst_k(replacement)),
                Box::new(b.subst_k(replacement)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.subst_k(replacement)),
                Box::new(b.subst_k(replacement)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.subst_k(replacement)),
                Box::new(b.subst_k(replacement)),
            ),
        }
    }

    /// `self` with `k` replaced by `k + shift`.
    pub fn shift_k(&self, shift: u64) -> Expr {
        if shift == 0 {
            return self.clone();
        }
        self.subst_k(&Expr::Add(
            Box::new(Expr::K),
            Box::new(Expr::Lit(Rational::from_integer(BigInt::from(shift)))),
        ))
    }

    /// A `k`-free expression equal to `p`, in canonical text order.
    pub fn from_poly(p: &Poly) -> Expr {
        parse_expr(&p.to_string()).expect("canonical polynomial text always parses")
    }

    // Binding strength used by the printer: sums 1, products 2, powers 3,
    // atoms 4. A leading minus only binds at the head of a sum.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Lit(_) | Expr::K | Expr::Q => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8, head: bool) -> fmt::Result {
        let needs_parens = self.precedence() < min || (matches!(self, Expr::Neg(_)) && !head);
        if needs_parens {
            f.write_str("(")?;
        }
        match self {
            Expr::Lit(r) => f.write_str(&rational_to_string(r))?,
            Expr::K => f.write_str("k")?,
            Expr::Q => f.write_str("q")?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_prec(f, 2, false)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1, head || needs_parens)?;
                f.write_str(" + ")?;
                b.fmt_prec(f, 2, false)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1, head || needs_parens)?;
                f.write_str(" - ")?;
                b.fmt_prec(f, 2, false)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2, false)?;
                f.write_str("*")?;
                b.fmt_prec(f, 3, false)?;
            }
            Expr::Pow(a, e) => {
                // a fractional literal is an atom, but `3/2^2` still reads
                // ambiguously to humans
                let min = if matches!(**a, Expr::Lit(ref r) if !r.is_integer()) { 5 } else { 4 };
                a.fmt_prec(f, min, false)?;
                write!(f, "^{e}")?;
            }
        }
        if needs_parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, true)
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expr(s)
    }
}

/// Polynomial in `k` whose coefficients are polynomials in `q`.
/// `terms[i]` is the coefficient of `k^i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KPoly {
    terms: Vec<Poly>,
}

impl KPoly {
    pub fn new(terms: Vec<Poly>) -> Self {
        let mut p = KPoly { terms };
        while p.terms.last().is_some_and(Poly::is_zero) {
            p.terms.pop();
        }
        p
    }

    pub fn constant(c: Poly) -> Self {
        KPoly::new(vec![c])
    }

    pub fn k() -> Self {
        KPoly::new(vec![Poly::zero(), Poly::one()])
    }

    pub fn terms(&self) -> &[Poly] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, power: usize) -> Poly {
        self.terms.get(power).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &KPoly) -> KPoly {
        let n = self.terms.len().max(rhs.terms.len());
        KPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &KPoly) -> KPoly {
        let n = self.terms.len().max(rhs.terms.len());
        KPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> KPoly {
        KPoly::new(self.terms.iter().map(|t| -t).collect())
    }

    pub fn mul(&self, rhs: &KPoly) -> KPoly {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::default();
        }
        let mut out = vec![Poly::zero(); self.terms.len() + rhs.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in rhs.terms.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> KPoly {
        (0..e).fold(KPoly::constant(Poly::one()), |acc, _| acc.mul(self))
    }

    pub fn eval_k(&self, k: u64) -> Poly {
        let k = Poly::constant(Rational::from_integer(BigInt::from(k)));
        self.terms
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &k) + c)
    }

    /// Every `q`-coefficient of every `k`-coefficient is nonnegative, which
    /// makes the value `>=_q 0` at every natural `k`.
    pub fn is_nonneg_coefficientwise(&self) -> bool {
        self.terms.iter().all(Poly::is_q_nonneg)
    }
}

/// Descending powers of `k`, matching how closed forms are usually written:
/// `k^4 + (6 + q)*k^3 + q^4`.
impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.terms.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let single_neg = c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1
                && c.leading_coeff().is_some_and(|l| l.is_negative());
            let (sign, body) = if single_neg { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let kpart = match i {
                0 => None,
                1 => Some("k".to_string()),
                _ => Some(format!("k^{i}")),
            };
            let simple = body.coeffs().iter().filter(|x| !x.is_zero()).count() == 1;
            match kpart {
                None => write!(f, "{body}")?,
                Some(kp) if body.is_one() => f.write_str(&kp)?,
                Some(kp) if simple => write!(f, "{body}*{kp}")?,
                Some(kp) => write!(f, "({body})*{kp}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPoly({self})")
    }
}

impl std::str::FromStr for KPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        Ok(parse_expr(s)?.to_kpoly())
    }
}
