//! Minimal arithmetic expressions in one variable `u`, used for custom flux
//! functions. Grammar: `+ - * / ^`, parentheses, `sin cos exp`, numeric
//! literals and the constants `pi` and `e`. Derivatives come from forward-mode
//! dual numbers.

use std::fmt;

use super::ModelError;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    Var,
    Neg(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Sin,
    Cos,
    Exp,
}

/// A parsed expression together with its source text.
#[derive(Clone, PartialEq)]
pub struct Expr {
    src: String,
    root: Node,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.src)
    }
}

#[derive(Debug, Clone, Copy)]
struct Dual(f64, f64);

impl Expr {
    pub fn parse(src: &str) -> Result<Self, ModelError> {
        let toks = lex(src)?;
        let mut p = Parser { toks: &toks, pos: 0 };
        let root = p.expr()?;
        if p.pos != toks.len() {
            return Err(ModelError::Expr(format!(
                "unexpected `{}` in `{src}`",
                toks[p.pos]
            )));
        }
        Ok(Self { src: src.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.src
    }

    pub fn eval(&self, u: f64) -> f64 {
        eval(&self.root, Dual(u, 1.0)).0
    }

    /// Value and derivative at `u`.
    pub fn eval_with_derivative(&self, u: f64) -> (f64, f64) {
        let d = eval(&self.root, Dual(u, 1.0));
        (d.0, d.1)
    }

    pub fn derivative(&self, u: f64) -> f64 {
        self.eval_with_derivative(u).1
    }

    /// True if the expression is affine in `u` (derivative is constant).
    pub fn is_affine(&self) -> bool {
        let samples = [-3.7, -1.0, 0.0, 0.3, 1.9, 5.2];
        let d0 = self.derivative(samples[0]);
        samples.iter().all(|&u| {
            let d = self.derivative(u);
            d.is_finite() && (d - d0).abs() <= 1e-14 * d0.abs().max(1.0)
        })
    }
}

fn eval(n: &Node, u: Dual) -> Dual {
    match n {
        Node::Num(c) => Dual(*c, 0.0),
        Node::Var => u,
        Node::Neg(a) => {
            let a = eval(a, u);
            Dual(-a.0, -a.1)
        }
        Node::Call(f, a) => {
            let a = eval(a, u);
            match f {
                Func::Sin => Dual(a.0.sin(), a.0.cos() * a.1),
                Func::Cos => Dual(a.0.cos(), -a.0.sin() * a.1),
                Func::Exp => {
                    let e = a.0.exp();
                    Dual(e, e * a.1)
                }
            }
        }
        Node::Bin(op, a, b) => {
            let (a, b) = (eval(a, u), eval(b, u));
            match op {
                Op::Add => Dual(a.0 + b.0, a.1 + b.1),
                Op::Sub => Dual(a.0 - b.0, a.1 - b.1),
                Op::Mul => Dual(a.0 * b.0, a.1 * b.0 + a.0 * b.1),
                Op::Div => Dual(a.0 / b.0, (a.1 * b.0 - a.0 * b.1) / (b.0 * b.0)),
                Op::Pow => {
                    if b.1 == 0.0 {
                        if b.0 == b.0.trunc() && b.0.abs() < 64.0 {
                            let k = b.0 as i32;
                            let d = if k == 0 { 0.0 } else { k as f64 * a.0.powi(k - 1) * a.1 };
                            Dual(a.0.powi(k), d)
                        } else {
                            Dual(a.0.powf(b.0), b.0 * a.0.powf(b.0 - 1.0) * a.1)
                        }
                    } else {
                        let v = a.0.powf(b.0);
                        Dual(v, v * (b.1 * a.0.ln() + b.0 * a.1 / a.0))
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "{x}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<Tok>, ModelError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| ModelError::Expr(format!("bad number `{text}`")))?;
            out.push(Tok::Num(v));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(ModelError::Expr(format!("unexpected character `{ch}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl Parser<'_> {
    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Node, ModelError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == '+' { Op::Add } else { Op::Sub };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ModelError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if c == '*' { Op::Mul } else { Op::Div };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ModelError> {
        match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ModelError> {
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ModelError> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ModelError::Expr("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "u" | "rho" => Ok(Node::Var),
                "pi" => Ok(Node::Num(std::f64::consts::PI)),
                "e" => Ok(Node::Num(std::f64::consts::E)),
                "sin" | "cos" | "exp" => {
                    let f = match name.as_str() {
                        "sin" => Func::Sin,
                        "cos" => Func::Cos,
                        _ => Func::Exp,
                    };
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    Ok(Node::Call(f, Box::new(arg)))
                }
                other => Err(ModelError::Expr(format!("unknown identifier `{other}`"))),
            },
            Tok::Sym(c) => Err(ModelError::Expr(format!("unexpected `{c}`"))),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ModelError> {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ModelError::Expr(format!("expected `{c}`")))
        }
    }
}
