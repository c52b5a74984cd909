//! Arithmetic expressions over named variables, evaluable on jets.
//!
//! Grammar, loosest to tightest: `+ -`, `* /`, unary `-`, `^` (right
//! associative). Functions: `sqrt exp log sin cos abs`; constant `pi`.

use std::fmt;

use crate::calculus::Jet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Abs,
}

impl Func {
    pub const ALL: [Func; 6] = [
        Func::Sqrt,
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply(self, v: &Jet) -> Jet {
        match self {
            Func::Sqrt => v.sqrt(),
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    /// Fully parenthesized; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src, None);
    p.parse()
}

/// Like [`parse_expression`] but rejects identifiers outside `vars`.
pub fn parse_with_vars(src: &str, vars: &[&str]) -> Result<Expr> {
    let mut p = Parser::new(src, Some(vars));
    p.parse()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Option<&'a [&'a str]>,
    lex_error: Option<Error>,
}

const OPERAND: [&str; 4] = ["number", "identifier", "(", "-"];

impl<'a> Parser<'a> {
    fn new(src: &str, vars: Option<&'a [&'a str]>) -> Self {
        let (toks, lex_error) = match lex(src) {
            Ok(t) => (t, None),
            Err(e) => (vec![(Tok::End, 0)], Some(e)),
        };
        Parser {
            toks,
            pos: 0,
            vars,
            lex_error,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> Error {
        Error::ParseError {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn parse(&mut self) -> Result<Expr> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        if *self.peek() == Tok::End {
            return Err(self.fail(&OPERAND));
        }
        let e = self.sum()?;
        if *self.peek() != Tok::End {
            return Err(self.fail(&["+", "-", "*", "/", "^", "end of input"]));
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(func) = Func::from_name(&name) {
                    self.expect('(')?;
                    let e = self.sum()?;
                    self.expect(')')?;
                    return Ok(Expr::Call(func, Box::new(e)));
                }
                if name == "pi" {
                    return Ok(Expr::Pi);
                }
                if let Some(vars) = self.vars {
                    if !vars.contains(&name.as_str()) {
                        let mut expected: Vec<String> =
                            vars.iter().map(|s| s.to_string()).collect();
                        expected.extend(Func::ALL.iter().map(|f| f.name().to_string()));
                        expected.push("pi".into());
                        return Err(Error::ParseError {
                            position: at,
                            expected,
                        });
                    }
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.fail(&OPERAND)),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            let s = c.to_string();
            let mut expected = vec![s.as_str()];
            if c == ')' {
                expected.extend(["+", "-", "*", "/", "^"]);
            }
            Err(self.fail(&expected))
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    // Positions are character offsets.
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            if i < chars.len() && matches!(chars[i].1, 'e' | 'E') {
                let mut j = i + 1;
                if j < chars.len() && matches!(chars[j].1, '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().map(|p| p.1).collect();
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => out.push((Tok::Num(v), start)),
                _ => {
                    return Err(Error::ParseError {
                        position: start,
                        expected: vec!["finite number".into()],
                    })
                }
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()),
                start,
            ));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::ParseError {
                position: i,
                expected: OPERAND
                    .iter()
                    .chain(["+", "*", "/", "^", ")"].iter())
                    .map(|s| s.to_string())
                    .collect(),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

impl Expr {
    /// Variables appearing in the tree, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(e) | Expr::Call(_, e) => e.walk(f),
            Expr::Bin(_, a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    /// Evaluates with `names[i] ↦ values[i]`; non-finite results propagate.
    /// `values` must be nonempty unless the expression is constant.
    pub fn eval_unchecked(&self, names: &[&str], values: &[Jet]) -> Jet {
        self.eval_node(names, values, &mut |_, _| Ok(()))
            .expect("unchecked evaluation does not fail")
    }

    /// Evaluates with `names[i] ↦ values[i]`, failing at the first
    /// subexpression whose value is NaN or infinite.
    pub fn eval(&self, names: &[&str], values: &[Jet]) -> Result<Jet> {
        self.eval_node(names, values, &mut |e, v| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::non_finite(format!("expression `{e}`")))
            }
        })
    }

    pub fn eval_f64(&self, names: &[&str], values: &[f64]) -> Result<f64> {
        let jets: Vec<Jet> = values.iter().map(|&v| Jet::scalar(v)).collect();
        Ok(self.eval(names, &jets)?.value())
    }

    fn eval_node(
        &self,
        names: &[&str],
        values: &[Jet],
        check: &mut impl FnMut(&Expr, &Jet) -> Result<()>,
    ) -> Result<Jet> {
        let konst = |v: f64| match values.first() {
            Some(j) => j.lift(v),
            None => Jet::scalar(v),
        };
        let out = match self {
            Expr::Num(v) => konst(*v),
            Expr::Pi => konst(std::f64::consts::PI),
            Expr::Var(name) => match names.iter().position(|n| n == name) {
                Some(k) if k < values.len() => values[k].clone(),
                _ => return Err(Error::BadParameter(format!("unbound variable `{name}`"))),
            },
            Expr::Neg(e) => -&e.eval_node(names, values, check)?,
            Expr::Call(func, e) => func.apply(&e.eval_node(names, values, check)?),
            Expr::Bin(op, a, b) => {
                let a = a.eval_node(names, values, check)?;
                let b = b.eval_node(names, values, check)?;
                match op {
                    BinOp::Add => &a + &b,
                    BinOp::Sub => &a - &b,
                    BinOp::Mul => &a * &b,
                    BinOp::Div => &a / &b,
                    BinOp::Pow => a.pow(&b),
                }
            }
        };
        check(self, &out)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::JetSpace;

    #[test]
    fn precedence() {
        let e = parse_expression("-r^2 + 2*s/3").unwrap();
        assert_eq!(e.to_string(), "((-(r ^ 2.0)) + ((2.0 * s) / 3.0))");
        let e = parse_expression("2^3^2").unwrap();
        assert_eq!(e.eval_f64(&[], &[]).unwrap(), 512.0);
        let e = parse_expression("2^-1").unwrap();
        assert_eq!(e.eval_f64(&[], &[]).unwrap(), 0.5);
    }

    #[test]
    fn errors_carry_position() {
        match parse_expression("sqrt(") {
            Err(Error::ParseError { position, expected }) => {
                assert_eq!(position, 5);
                assert!(expected.contains(&"number".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expression(""),
            Err(Error::ParseError { position: 0, .. })
        ));
        assert!(matches!(
            parse_expression("r +* s"),
            Err(Error::ParseError { position: 3, .. })
        ));
        assert!(matches!(
            parse_expression("(r"),
            Err(Error::ParseError { position: 2, .. })
        ));
        assert!(matches!(
            parse_expression("r $ s"),
            Err(Error::ParseError { position: 2, .. })
        ));
        assert!(matches!(
            parse_expression("1e999"),
            Err(Error::ParseError { position: 0, .. })
        ));
        assert!(matches!(
            parse_with_vars("r + t", &["r", "s"]),
            Err(Error::ParseError { position: 4, .. })
        ));
    }

    #[test]
    fn non_finite_is_reported() {
        let e = parse_expression("log(r - 1)").unwrap();
        assert!(matches!(
            e.eval_f64(&["r"], &[0.5]),
            Err(Error::NonFiniteValue { .. })
        ));
        assert!(e
            .eval_unchecked(&["r"], &[Jet::scalar(0.5)])
            .value()
            .is_nan());
    }

    #[test]
    fn derivatives_come_through_jets() {
        let e = parse_expression("r^2*sin(s)").unwrap();
        let sp = JetSpace::get(2, 2);
        let v = e
            .eval(
                &["r", "s"],
                &[Jet::variable(&sp, 1.5, 0), Jet::variable(&sp, 0.3, 1)],
            )
            .unwrap();
        assert!((v.partial_along(&[0]) - 3.0 * 0.3f64.sin()).abs() < 1e-14);
        assert!((v.partial_along(&[0, 1]) - 3.0 * 0.3f64.cos()).abs() < 1e-14);
    }
}
