//! Analytic field files.
//!
//! ```text
//! dim 3
//! axis 1 -4 4 32
//! axis 2 -4 4 32
//! axis 3 -4 4 32
//! component 1 : -2*x1*exp(-r2)     # comments start with '#'
//! ```
//!
//! Expressions support literals, `x1..xn`, `r2 = Σ xi²`, `+ - * / ^`, unary
//! minus and `exp sin cos sqrt log`. Precedence from tightest: `^` (right
//! associative, constant exponent), unary `-`, `* /`, `+ -`.

use std::fmt;

use thiserror::Error;

use crate::algebra::BasisIndex;
use crate::field::FormField;
use crate::grid::{Axis, GridSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCode {
    Syntax,
    Ident,
    Basis,
    Dim,
    Duplicate,
    Domain,
}

impl ErrorCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E_SYNTAX",
            ErrorCode::Ident => "E_IDENT",
            ErrorCode::Basis => "E_BASIS",
            ErrorCode::Dim => "E_DIM",
            ErrorCode::Duplicate => "E_DUPLICATE",
            ErrorCode::Domain => "E_DOMAIN",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("{code} at line {line}, column {column}: {message}")]
pub struct SpecError {
    pub code: ErrorCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SpecError {
    fn new(code: ErrorCode, line: usize, column: usize, message: impl Into<String>) -> Self {
        SpecError {
            code,
            line,
            column,
            message: message.into(),
        }
    }

    /// One-line machine-readable record.
    pub fn record(&self) -> String {
        format!(
            "error code={} line={} column={} message=\"{}\"",
            self.code,
            self.line,
            self.column,
            self.message.replace('"', "'")
        )
    }
}

type SResult<T> = std::result::Result<T, SpecError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Log,
}

impl Func {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// 1-based coordinate index.
    Var(usize),
    R2,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var(_) | Expr::R2 => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_constant(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Evaluates at a point; `Err` carries a description of the domain
    /// violation.
    pub fn eval(&self, x: &[f64]) -> std::result::Result<f64, String> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(i) => x[i - 1],
            Expr::R2 => x.iter().map(|v| v * v).sum(),
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err("division by zero".into());
                        }
                        a / b
                    }
                }
            }
            Expr::Pow(a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                if b.fract() == 0.0 && b.abs() <= i32::MAX as f64 {
                    if a == 0.0 && b < 0.0 {
                        return Err("zero raised to a negative power".into());
                    }
                    a.powi(b as i32)
                } else {
                    if a < 0.0 {
                        return Err(format!("negative base {a} with non-integer exponent {b}"));
                    }
                    a.powf(b)
                }
            }
            Expr::Call(f, a) => {
                let a = a.eval(x)?;
                match f {
                    Func::Exp => a.exp(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Sqrt => {
                        if a < 0.0 {
                            return Err(format!("sqrt of negative value {a}"));
                        }
                        a.sqrt()
                    }
                    Func::Log => {
                        if a <= 0.0 {
                            return Err(format!("log of non-positive value {a}"));
                        }
                        a.ln()
                    }
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> SResult<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
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
            let s: String = chars[start..i].iter().collect();
            let v = s
                .parse::<f64>()
                .map_err(|_| SpecError::new(ErrorCode::Syntax, line, col, format!("bad number '{s}'")))?;
            out.push((Tok::Num(v), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else if c == '(' {
            out.push((Tok::LParen, col));
            i += 1;
        } else if c == ')' {
            out.push((Tok::RParen, col));
            i += 1;
        } else {
            return Err(SpecError::new(ErrorCode::Syntax, line, col, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

struct Parser {
    lex: Lexer,
    line: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.lex.toks[self.lex.pos].0
    }

    fn col(&self) -> usize {
        self.lex.toks[self.lex.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.lex.pos].0.clone();
        if self.lex.pos + 1 < self.lex.toks.len() {
            self.lex.pos += 1;
        }
        t
    }

    fn err(&self, code: ErrorCode, msg: impl Into<String>) -> SpecError {
        SpecError::new(code, self.line, self.col(), msg)
    }

    fn unexpected(&self) -> SpecError {
        let what = match self.peek() {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of expression".into(),
        };
        self.err(ErrorCode::Syntax, format!("unexpected {what}"))
    }

    fn expr(&mut self) -> SResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> SResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> SResult<Expr> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> SResult<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        let exp = self.exponent()?;
        if !exp.is_constant() {
            return Err(SpecError::new(ErrorCode::Syntax, self.line, col, "exponent must be constant"));
        }
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn exponent(&mut self) -> SResult<Expr> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.exponent()?)));
        }
        self.power()
    }

    fn primary(&mut self) -> SResult<Expr> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err(ErrorCode::Syntax, "expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(f) = Func::from_name(&name) {
                    if *self.peek() != Tok::LParen {
                        return Err(self.err(ErrorCode::Syntax, format!("expected '(' after {name}")));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    if *self.peek() != Tok::RParen {
                        return Err(self.err(ErrorCode::Syntax, "expected ')'"));
                    }
                    self.bump();
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                if name == "r2" {
                    return Ok(Expr::R2);
                }
                if let Some(idx) = name.strip_prefix('x') {
                    if !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) && !idx.starts_with('0') {
                        let i: usize = idx.parse().unwrap_or(usize::MAX);
                        if i > self.n {
                            return Err(SpecError::new(
                                ErrorCode::Dim,
                                self.line,
                                col,
                                format!("variable {name} exceeds dimension {}", self.n),
                            ));
                        }
                        return Ok(Expr::Var(i));
                    }
                }
                Err(SpecError::new(ErrorCode::Ident, self.line, col, format!("unknown identifier '{name}'")))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses a standalone expression for dimension `n`. Columns are 1-based.
pub fn parse_expression(text: &str, n: usize) -> SResult<Expr> {
    parse_expression_at(text, n, 1, 1)
}

fn parse_expression_at(text: &str, n: usize, line: usize, col0: usize) -> SResult<Expr> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        lex: Lexer { toks, pos: 0 },
        line,
        n,
    };
    if *p.peek() == Tok::End {
        return Err(p.err(ErrorCode::Syntax, "empty expression"));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub index: BasisIndex,
    pub expr: Expr,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub n: usize,
    pub axes: Vec<Axis>,
    pub components: Vec<Component>,
}

fn parse_label(label: &str, n: usize, line: usize, col: usize) -> SResult<BasisIndex> {
    let axes: Option<Vec<usize>> = if label == "0" {
        Some(Vec::new())
    } else if n >= 10 || label.contains('.') {
        label.split('.').map(|p| p.parse().ok()).collect()
    } else {
        label.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    let axes = axes
        .filter(|a: &Vec<usize>| label == "0" || !a.is_empty())
        .ok_or_else(|| SpecError::new(ErrorCode::Basis, line, col, format!("bad basis label '{label}'")))?;
    if let Some(a) = axes.iter().find(|&&a| a == 0 || a > n) {
        return Err(SpecError::new(
            ErrorCode::Dim,
            line,
            col,
            format!("axis {a} in '{label}' outside 1..={n}"),
        ));
    }
    if axes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpecError::new(
            ErrorCode::Basis,
            line,
            col,
            format!("basis index '{label}' must list distinct axes in increasing order"),
        ));
    }
    BasisIndex::from_axes(&axes, n).map_err(|e| SpecError::new(ErrorCode::Basis, line, col, e.to_string()))
}

/// Position (1-based column) of the first non-space character at or after `from`.
fn skip_ws(chars: &[char], mut from: usize) -> usize {
    while from < chars.len() && chars[from].is_whitespace() {
        from += 1;
    }
    from
}

/// Splits a line into whitespace-separated words with 1-based columns.
fn words(text: &str) -> Vec<(String, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        i = skip_ws(&chars, i);
        if i >= chars.len() {
            break;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        out.push((chars[start..i].iter().collect(), start + 1));
    }
    out
}

fn parse_number(word: &(String, usize), line: usize, what: &str) -> SResult<f64> {
    word.0
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| SpecError::new(ErrorCode::Syntax, line, word.1, format!("expected {what}, got '{}'", word.0)))
}

pub fn parse_field_spec(text: &str) -> SResult<FieldSpec> {
    let mut n: Option<usize> = None;
    let mut axes: Vec<Option<Axis>> = Vec::new();
    let mut components: Vec<Component> = Vec::new();
    let mut last_line = 0;
    for (ln0, raw) in text.lines().enumerate() {
        let line = ln0 + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let w = words(body);
        let Some((kw, kcol)) = w.first().cloned() else {
            continue;
        };
        match kw.as_str() {
            "dim" => {
                if n.is_some() {
                    return Err(SpecError::new(ErrorCode::Duplicate, line, kcol, "repeated 'dim' line"));
                }
                if w.len() != 2 {
                    return Err(SpecError::new(ErrorCode::Syntax, line, kcol, "expected 'dim <n>'"));
                }
                let d = w[1].0.parse::<usize>().map_err(|_| {
                    SpecError::new(ErrorCode::Syntax, line, w[1].1, format!("bad dimension '{}'", w[1].0))
                })?;
                if d == 0 || d > crate::algebra::MAX_DIM {
                    return Err(SpecError::new(
                        ErrorCode::Dim,
                        line,
                        w[1].1,
                        format!("dimension {d} outside 1..={}", crate::algebra::MAX_DIM),
                    ));
                }
                n = Some(d);
                axes = vec![None; d];
            }
            "axis" | "component" if n.is_none() => {
                return Err(SpecError::new(ErrorCode::Syntax, line, kcol, "first line must be 'dim <n>'"));
            }
            "axis" => {
                let d = n.unwrap_or(0);
                if w.len() != 5 {
                    return Err(SpecError::new(
                        ErrorCode::Syntax,
                        line,
                        kcol,
                        "expected 'axis <i> <min> <max> <points>'",
                    ));
                }
                let i = w[1].0.parse::<usize>().map_err(|_| {
                    SpecError::new(ErrorCode::Syntax, line, w[1].1, format!("bad axis number '{}'", w[1].0))
                })?;
                if i == 0 || i > d {
                    return Err(SpecError::new(ErrorCode::Dim, line, w[1].1, format!("axis {i} outside 1..={d}")));
                }
                if axes[i - 1].is_some() {
                    return Err(SpecError::new(ErrorCode::Duplicate, line, w[1].1, format!("axis {i} given twice")));
                }
                let min = parse_number(&w[2], line, "axis minimum")?;
                let max = parse_number(&w[3], line, "axis maximum")?;
                let points = w[4].0.parse::<usize>().map_err(|_| {
                    SpecError::new(ErrorCode::Syntax, line, w[4].1, format!("bad point count '{}'", w[4].0))
                })?;
                if min >= max {
                    return Err(SpecError::new(ErrorCode::Syntax, line, w[2].1, "axis needs min < max"));
                }
                if points < 3 {
                    return Err(SpecError::new(ErrorCode::Syntax, line, w[4].1, "axis needs at least 3 points"));
                }
                axes[i - 1] = Some(Axis::new(min, max, points));
            }
            "component" => {
                let d = n.unwrap_or(0);
                let chars: Vec<char> = body.chars().collect();
                let after_kw = kcol - 1 + "component".len();
                let colon = chars
                    .iter()
                    .enumerate()
                    .skip(after_kw)
                    .find(|(_, c)| **c == ':')
                    .map(|(i, _)| i)
                    .ok_or_else(|| SpecError::new(ErrorCode::Syntax, line, chars.len() + 1, "expected ':'"))?;
                let label_text: String = chars[after_kw..colon].iter().collect();
                let label = label_text.trim();
                let label_col = skip_ws(&chars, after_kw) + 1;
                if label.is_empty() || label.contains(char::is_whitespace) {
                    return Err(SpecError::new(ErrorCode::Syntax, line, label_col, "expected one basis label"));
                }
                let index = parse_label(label, d, line, label_col)?;
                if components.iter().any(|c| c.index == index) {
                    return Err(SpecError::new(
                        ErrorCode::Duplicate,
                        line,
                        label_col,
                        format!("component '{label}' given twice"),
                    ));
                }
                let expr_text: String = chars[colon + 1..].iter().collect();
                let expr = parse_expression_at(&expr_text, d, line, colon + 2)?;
                components.push(Component { index, expr, line });
            }
            other => {
                let code = if n.is_none() {
                    ErrorCode::Syntax
                } else {
                    ErrorCode::Ident
                };
                let msg = if n.is_none() {
                    "first line must be 'dim <n>'".to_string()
                } else {
                    format!("unknown keyword '{other}'")
                };
                return Err(SpecError::new(code, line, kcol, msg));
            }
        }
    }
    let n = n.ok_or_else(|| SpecError::new(ErrorCode::Syntax, last_line.max(1), 1, "missing 'dim' line"))?;
    let missing: Vec<usize> = axes.iter().enumerate().filter(|(_, a)| a.is_none()).map(|(i, _)| i + 1).collect();
    if !missing.is_empty() {
        return Err(SpecError::new(
            ErrorCode::Dim,
            last_line.max(1),
            1,
            format!("missing axis lines for axes {missing:?}"),
        ));
    }
    Ok(FieldSpec {
        n,
        axes: axes.into_iter().map(|a| a.expect("checked")).collect(),
        components,
    })
}

impl FieldSpec {
    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.axes.clone()).expect("axes validated by the parser")
    }
}

/// Samples every component at every node.
pub fn evaluate_spec(spec: &FieldSpec) -> SResult<FormField> {
    let grid = spec.grid();
    let mut field = FormField::zeros(&grid);
    for c in &spec.components {
        let mut data = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            let x = grid.coordinates(k);
            let v = c.expr.eval(&x).map_err(|m| {
                SpecError::new(ErrorCode::Domain, c.line, 1, format!("{m} at node {x:?}"))
            })?;
            if !v.is_finite() {
                return Err(SpecError::new(
                    ErrorCode::Domain,
                    c.line,
                    1,
                    format!("non-finite value at node {x:?}"),
                ));
            }
            data.push(v);
        }
        field.set_component(c.index, data).expect("index validated by the parser");
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "dim 3\naxis 1 -1 1 5\naxis 2 -1 1 5\naxis 3 0 4 5\n";

    #[test]
    fn parses_simple_spec() {
        let s = parse_field_spec(&format!("{HEADER}component 1: x1*exp(-r2)\n")).unwrap();
        assert_eq!(s.n, 3);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].index.grade(), 1);
    }

    #[test]
    fn error_codes() {
        let e = parse_field_spec(&format!("{HEADER}component 11: x1\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Basis);
        let e = parse_field_spec(&format!("{HEADER}component 1: x1 + * 2\n")).unwrap_err();
        assert_eq!((e.code, e.line, e.column), (ErrorCode::Syntax, 5, 19));
        let e = parse_field_spec(&format!("{HEADER}component 1: y1\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Ident);
        let e = parse_field_spec(&format!("{HEADER}component 1: x4\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Dim);
        let e = parse_field_spec(&format!("{HEADER}component 14: x1\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Dim);
        let e = parse_field_spec(&format!("{HEADER}component 1: x1\ncomponent 1: x2\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Duplicate);
        let e = parse_field_spec("dim 3\naxis 1 -1 1 5\n").unwrap_err();
        assert_eq!(e.code, ErrorCode::Dim);
        let e = parse_field_spec(&format!("{HEADER}component 21: x1\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Basis);
        let e = parse_field_spec(&format!("{HEADER}component 1: x1^x2\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Syntax);
    }

    #[test]
    fn precedence() {
        let x = [2.0, 3.0, 0.5];
        let ev = |s: &str| parse_expression(s, 3).unwrap().eval(&x).unwrap();
        assert_eq!(ev("-x1^2"), -4.0);
        assert_eq!(ev("2^3^2"), 512.0);
        assert_eq!(ev("x2 - x1 - 1"), 0.0);
        assert_eq!(ev("12 / x2 / 2"), 2.0);
        assert_eq!(ev("1 + 2 * 3"), 7.0);
        assert_eq!(ev("2^-1"), 0.5);
        assert_eq!(ev("-2*-x1"), 4.0);
        assert_eq!(ev("r2"), 13.25);
        assert!((ev("sqrt(r2) * cos(0) + log(exp(1.5e0))") - (13.25f64.sqrt() + 1.5)).abs() < 1e-15);
    }

    #[test]
    fn evaluation() {
        let s = parse_field_spec(&format!("{HEADER}component 0: 1\ncomponent 1: x1^2\n")).unwrap();
        let f = evaluate_spec(&s).unwrap();
        assert!(f.component(BasisIndex::SCALAR).unwrap().iter().all(|v| *v == 1.0));
        let s = parse_field_spec("dim 1\naxis 1 1 3 3\ncomponent 1: x1^2\n").unwrap();
        let f = evaluate_spec(&s).unwrap();
        assert_eq!(f.component(BasisIndex::axis(1)).unwrap()[2], 9.0);
        let s = parse_field_spec("dim 3\naxis 1 -1 1 3\naxis 2 -1 1 3\naxis 3 -1 1 3\ncomponent 0: exp(-r2)").unwrap();
        let f = evaluate_spec(&s).unwrap();
        assert_eq!(f.component(BasisIndex::SCALAR).unwrap()[13], 1.0);
    }

    #[test]
    fn domain_errors_carry_coordinates() {
        let s = parse_field_spec("dim 1\naxis 1 -1 1 3\ncomponent 0: log(x1)\n").unwrap();
        let e = evaluate_spec(&s).unwrap_err();
        assert_eq!(e.code, ErrorCode::Domain);
        assert!(e.message.contains("[-1.0]"), "{}", e.message);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# header\n  dim   2 # two\naxis 2 0 1 3\naxis 1 0 1 3\n\ncomponent   12 :x1*x2 # area\n";
        let s = parse_field_spec(text).unwrap();
        assert_eq!(s.components[0].index, BasisIndex::from_axes(&[1, 2], 2).unwrap());
        assert_eq!(s.components[0].line, 6);
    }
}
