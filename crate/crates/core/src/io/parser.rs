//! Recursive-descent parser for polynomial expressions over `Q(i)` in `x, y, t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' uint)?
//! base   := rational | 'i' | 'x' | 'y' | 't' | '(' expr ')' | '-' factor
//! ```
//!
//! A rational literal is `p` or `p/q` written without spaces. Juxtaposed
//! bases multiply (`2xy`, `(1/2)x y`), but a `-` always starts a new term.

use crate::algebra::{parse_rational, GaussRational, MPoly, Rational, Var};
use crate::error::{Error, Result};

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
pub const MAX_EXPONENT: u32 = 64;
pub const MAX_HEIGHT: usize = 64;
/// Bound on the total degree of the expanded result.
pub const MAX_DEGREE: u32 = 4096;

#[derive(Clone, PartialEq, Debug)]
pub enum ExprAst {
    Number(Rational),
    ImaginaryUnit,
    Variable(Var),
    /// `first ± rest...`; `true` marks subtraction.
    Sum(Box<ExprAst>, Vec<(bool, ExprAst)>),
    Product(Vec<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Negate(Box<ExprAst>),
    Paren(Box<ExprAst>),
}

impl ExprAst {
    /// Nesting depth; sums and products are flat, so long polynomials stay shallow.
    pub fn height(&self) -> usize {
        match self {
            ExprAst::Number(_) | ExprAst::ImaginaryUnit | ExprAst::Variable(_) => 1,
            ExprAst::Sum(first, rest) => 1 + rest.iter().map(|(_, e)| e.height()).max().unwrap_or(0).max(first.height()),
            ExprAst::Product(fs) => 1 + fs.iter().map(ExprAst::height).max().unwrap_or(0),
            ExprAst::Pow(b, _) | ExprAst::Negate(b) | ExprAst::Paren(b) => 1 + b.height(),
        }
    }

    /// Upper bound on the total degree of the expansion.
    pub fn degree_bound(&self) -> u64 {
        match self {
            ExprAst::Number(_) | ExprAst::ImaginaryUnit => 0,
            ExprAst::Variable(_) => 1,
            ExprAst::Sum(first, rest) => rest.iter().map(|(_, e)| e.degree_bound()).fold(first.degree_bound(), u64::max),
            ExprAst::Product(fs) => fs.iter().map(ExprAst::degree_bound).sum(),
            ExprAst::Pow(b, e) => b.degree_bound() * *e as u64,
            ExprAst::Negate(b) | ExprAst::Paren(b) => b.degree_bound(),
        }
    }

    pub fn expand(&self) -> MPoly<GaussRational> {
        match self {
            ExprAst::Number(q) => MPoly::constant(GaussRational::real(q.clone())),
            ExprAst::ImaginaryUnit => MPoly::constant(GaussRational::i()),
            ExprAst::Variable(v) => MPoly::var(*v),
            ExprAst::Sum(first, rest) => rest.iter().fold(first.expand(), |acc, (minus, e)| {
                if *minus { &acc - &e.expand() } else { &acc + &e.expand() }
            }),
            ExprAst::Product(fs) => fs.iter().fold(MPoly::one(), |acc, e| &acc * &e.expand()),
            ExprAst::Pow(b, e) => b.expand().pow(*e),
            ExprAst::Negate(b) => -b.expand(),
            ExprAst::Paren(b) => b.expand(),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(String),
    Ident(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number {s}"),
            Tok::Ident(c) => format!("'{c}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_base(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::Minus)
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const BASE_START: [&str; 7] = ["number", "'i'", "'x'", "'y'", "'t'", "'('", "'-'"];

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let mut advance = |k: &mut usize| {
            *k += 1;
            column += 1;
        };
        if c == '\n' {
            k += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut k);
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let mut s = String::new();
                while k < chars.len() && chars[k].is_ascii_digit() {
                    s.push(chars[k]);
                    advance(&mut k);
                }
                if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                    s.push('/');
                    advance(&mut k);
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        s.push(chars[k]);
                        advance(&mut k);
                    }
                }
                out.push(Spanned { tok: Tok::Num(s), line: l0, column: c0 });
                continue;
            }
            'x' | 'y' | 't' | 'i' => Tok::Ident(c),
            other => {
                let found = if other.is_alphabetic() {
                    let name: String = chars[k..].iter().take_while(|c| c.is_alphanumeric() || **c == '_').collect();
                    format!("name '{name}'")
                } else {
                    format!("'{other}'")
                };
                return Err(Error::Syntax {
                    line: l0,
                    column: c0,
                    found,
                    expected: BASE_START.iter().chain(["'+'", "'*'", "'^'", "')'"].iter()).map(|s| s.to_string()).collect(),
                });
            }
        };
        advance(&mut k);
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let s = self.toks[self.pos].clone();
        if s.tok != Tok::End {
            self.pos += 1;
        }
        s
    }

    fn error(&self, expected: &[&str]) -> Error {
        let s = &self.toks[self.pos];
        Error::Syntax {
            line: s.line,
            column: s.column,
            found: s.tok.describe(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_HEIGHT {
            return Err(Error::Limit(format!("expression nesting exceeds {MAX_HEIGHT}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst> {
        self.enter()?;
        let first = self.term()?;
        let mut rest = Vec::new();
        loop {
            let minus = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            rest.push((minus, self.term()?));
        }
        self.depth -= 1;
        Ok(if rest.is_empty() { first } else { ExprAst::Sum(Box::new(first), rest) })
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut fs = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    fs.push(self.factor()?);
                }
                t if t.starts_base() && *t != Tok::Minus => fs.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if fs.len() == 1 { fs.pop().expect("one factor") } else { ExprAst::Product(fs) })
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Num(s) = self.peek().clone() else {
            return Err(self.error(&["unsigned integer"]));
        };
        if s.contains('/') {
            return Err(self.error(&["unsigned integer"]));
        }
        let e: u64 = s.parse().unwrap_or(u64::MAX);
        if e > MAX_EXPONENT as u64 {
            return Err(Error::Limit(format!("exponent {s} exceeds {MAX_EXPONENT}")));
        }
        self.bump();
        if *self.peek() == Tok::Caret {
            // a^b^c is ambiguous; ask for parentheses
            return Err(self.error(&["'+'", "'-'", "'*'", "')'", "end of input", "parentheses around a^b before another '^'"]));
        }
        Ok(ExprAst::Pow(Box::new(base), e as u32))
    }

    fn base(&mut self) -> Result<ExprAst> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                parse_rational(&s).map(ExprAst::Number).map_err(|_| {
                    let s = &self.toks[self.pos - 1];
                    Error::Syntax { line: s.line, column: s.column, found: s.tok.describe(), expected: vec!["nonzero denominator".into()] }
                })
            }
            Tok::Ident('i') => {
                self.bump();
                Ok(ExprAst::ImaginaryUnit)
            }
            Tok::Ident(c) => {
                self.bump();
                Ok(ExprAst::Variable(Var::from_name(&c.to_string()).expect("lexer admits x, y, t only")))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                Ok(ExprAst::Paren(Box::new(inner)))
            }
            Tok::Minus => {
                self.bump();
                self.enter()?;
                let f = self.factor()?;
                self.depth -= 1;
                Ok(ExprAst::Negate(Box::new(f)))
            }
            _ => Err(self.error(&BASE_START)),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_ast(text: &str) -> Result<ExprAst> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::Limit(format!("input of {} bytes exceeds {MAX_INPUT_BYTES}", text.len())));
    }
    let mut p = Parser { toks: lex(text)?, pos: 0, depth: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    if ast.height() > MAX_HEIGHT {
        return Err(Error::Limit(format!("expression tree height exceeds {MAX_HEIGHT}")));
    }
    Ok(ast)
}

/// Parses and expands `text` into a canonical polynomial.
pub fn parse_poly(text: &str) -> Result<MPoly<GaussRational>> {
    let ast = parse_ast(text)?;
    let d = ast.degree_bound();
    if d > MAX_DEGREE as u64 {
        return Err(Error::Limit(format!("expanded degree up to {d} exceeds {MAX_DEGREE}")));
    }
    Ok(ast.expand())
}

/// Parses an expression that must be a constant of `Q(i)`.
pub fn parse_constant(text: &str) -> Result<GaussRational> {
    let p = parse_poly(text)?;
    if p.total_degree() > 0 {
        return Err(Error::Domain(format!("expected a constant, got {p}")));
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Monomial};

    #[test]
    fn cusp() {
        let p = parse_poly("y^2 - x^3").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::xy(0, 2)), GaussRational::from(1));
        assert_eq!(p.coeff(&Monomial::xy(3, 0)), GaussRational::from(-1));
    }

    #[test]
    fn implicit_multiplication_and_i() {
        let p = parse_poly("(1/2)x y + i t^2").unwrap();
        assert_eq!(p.coeff(&Monomial::new(1, 1, 0)), GaussRational::real(rat(1, 2)));
        assert_eq!(p.coeff(&Monomial::new(0, 0, 2)), GaussRational::i());
        assert_eq!(parse_poly("2xy").unwrap(), parse_poly("2*x*y").unwrap());
        assert_eq!(parse_poly("x -y").unwrap(), parse_poly("x - y").unwrap());
        assert_eq!(parse_poly("-x^2").unwrap(), -parse_poly("x^2").unwrap());
        assert_eq!(parse_poly("(x+y)^2").unwrap(), parse_poly("x^2 + 2x y + y^2").unwrap());
    }

    #[test]
    fn undeclared_name() {
        match parse_poly("y^2 + a*x") {
            Err(Error::Syntax { line, column, found, .. }) => {
                assert_eq!((line, column), (1, 7));
                assert!(found.contains('a'));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn positions_span_lines() {
        match parse_poly("x +\n  * y") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(parse_poly("x^65"), Err(Error::Limit(_))));
        assert!(parse_poly("x^64").is_ok());
        let deep = format!("{}x{}", "(".repeat(70), ")".repeat(70));
        assert!(matches!(parse_poly(&deep), Err(Error::Limit(_))));
        assert!(matches!(parse_poly(&"x+".repeat(40_000)), Err(Error::Limit(_))));
        assert!(matches!(parse_poly("x^1/2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["y^2 - x^3", "(1/2)x y + i t^2", "(1 - i)x^2 - 3/4", "-i y + (2 + 3i) t", "0", "-1"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s} -> {p}");
        }
    }
}
