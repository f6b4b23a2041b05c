//! Text form of rational functions in the product variable `k`.
//!
//! Grammar: integer literals, `k`, `I` (the imaginary unit), `+ - * / ^` and
//! parentheses. `^` is right-associative, binds tighter than unary minus, and
//! takes an integer-valued exponent; a negative exponent must be
//! parenthesized, as in `k^(-2)`. Multiplication is never implicit.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::numbers::GaussRat;
use crate::poly::{integer_roots, squarefree, Poly, RatFunc};

/// Largest accepted absolute exponent.
const MAX_EXPONENT: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    K,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Tokens paired with their 1-based column.
fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let pos = at + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
                continue;
            }
            'k' => Tok::K,
            'I' => Tok::I,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(parse_error(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let d = self.unary()?;
                    acc = acc
                        .checked_div(&d)
                        .map_err(|_| parse_error(pos, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        if self.peek() == Some(&Tok::Minus) {
            return Err(parse_error(pos, "negative exponents must be parenthesized"));
        }
        let e = self.power()?;
        let e = constant_integer(&e)
            .ok_or_else(|| parse_error(pos, "exponent must be an integer constant"))?;
        if e.abs() > MAX_EXPONENT {
            return Err(parse_error(
                pos,
                format!("exponent {e} exceeds {MAX_EXPONENT} in absolute value"),
            ));
        }
        if base.is_zero() && e < 0 {
            return Err(parse_error(pos, "division by zero"));
        }
        base.pow(e)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(RatFunc::constant(GaussRat::from_bigint(v))),
            Some(Tok::K) => Ok(RatFunc::x()),
            Some(Tok::I) => Ok(RatFunc::constant(GaussRat::i())),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(parse_error(close, "expected `)`")),
                }
            }
            Some(t) => Err(parse_error(pos, format!("unexpected {}", describe(&t)))),
            None => Err(parse_error(pos, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::K => "`k`",
        Tok::I => "`I`",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
    }
}

fn constant_integer(f: &RatFunc) -> Option<i64> {
    if f.is_zero() {
        return Some(0);
    }
    if !f.is_constant() || !f.unit().is_integer() {
        return None;
    }
    f.unit().num_re().to_i64()
}

/// Parse an expression in `k` into a canonical rational function.
pub fn parse_expr(s: &str) -> Result<RatFunc> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len() + 1,
    };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        let pos = p.pos();
        let t = p.bump().expect("token present");
        return Err(parse_error(pos, format!("unexpected {}", describe(&t))));
    }
    Ok(v)
}

/// Gaussian integer `a + b*I` as a self-delimiting factor string.
fn gauss_int_factor(re: &BigInt, im: &BigInt) -> String {
    let v = GaussRat::from_gauss_int(re.clone(), im.clone());
    v.to_string()
}

fn coef_times(c: &GaussRat, power: &str) -> String {
    if c.is_one() {
        return power.to_string();
    }
    if *c == GaussRat::from_int(-1) {
        return format!("-{power}");
    }
    format!("{c}*{power}")
}

/// Expanded polynomial, highest degree first.
fn render_poly(p: &Poly, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = match i {
            0 => c.to_string(),
            1 => coef_times(c, var),
            _ => coef_times(c, &format!("{var}^{i}")),
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn with_power(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Factor strings of a monic polynomial: integer-root linear factors first,
/// then square-free parts of the remaining cofactor.
fn monic_factors(p: &Poly, var: &str) -> Vec<String> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let roots = integer_roots(p).expect("polynomial is nonzero");
    let mut rest = p.clone();
    // ascending shift c in (k + c)
    for root in roots.into_iter().rev() {
        let lin = Poly::linear(-root);
        let mut e = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            e += 1;
        }
        let base = match -root {
            0 => var.to_string(),
            c if c > 0 => format!("({var}+{c})"),
            c => format!("({var}{c})"),
        };
        out.push(with_power(base, e));
    }
    for (q, e) in squarefree(&rest) {
        out.push(with_power(format!("({})", render_poly(&q, var)), e));
    }
    out
}

/// Render a rational function in `k`; `parse_expr` reads the result back exactly.
pub fn render(f: &RatFunc) -> String {
    render_in(f, "k")
}

/// Render a rational function in the variable `var`.
pub fn render_in(f: &RatFunc, var: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let u = f.unit();
    let num_factors = monic_factors(f.num(), var);
    let den_factors = monic_factors(f.den(), var);

    let num = if num_factors.is_empty() {
        gauss_int_factor(u.num_re(), u.num_im())
    } else {
        let lead = GaussRat::from_gauss_int(u.num_re().clone(), u.num_im().clone());
        coef_times(&lead, &num_factors.join("*"))
    };
    let mut den_parts = Vec::new();
    if !u.den().is_one() {
        den_parts.push(u.den().to_string());
    }
    den_parts.extend(den_factors);
    match den_parts.len() {
        0 if u.is_one() && num_factors.len() == 1 && num.starts_with('(') && num.ends_with(')') => {
            num[1..num.len() - 1].to_string()
        }
        0 => num,
        1 => format!("{num}/{}", den_parts[0]),
        _ => format!("{num}/({})", den_parts.join("*")),
    }
}

/// Render a constant of Q(i).
pub fn render_const(c: &GaussRat) -> String {
    render(&RatFunc::constant(c.clone()))
}

/// Parse a constant of Q(i).
pub fn parse_const(s: &str) -> Result<GaussRat> {
    let f = parse_expr(s)?;
    if !f.is_constant() {
        return Err(parse_error(1, "expected a constant"));
    }
    Ok(f.unit().clone())
}
