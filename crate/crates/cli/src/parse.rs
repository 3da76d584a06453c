//! Problem-file grammar: parsing with positioned diagnostics, and the
//! canonical serializer.
//!
//! Files are line-oriented; `#` starts a comment. Statements:
//!
//! ```text
//! vars = x y z
//! psi = [ x, y ]
//! H = [ [1, 0], [0, z] ]
//! Y = origin
//! Y = charts [ (t) -> (0, 0, t) ]
//! xcharts = [ (t) -> (0, 0, t) ]
//! syzygies = [ (y, -x) ]
//! ```
//!
//! Polynomials use rational literals (`3`, `-1/2`), declared variables,
//! `+ - * ^` with nonnegative integer exponents, and parentheses. There
//! is no implicit multiplication.

use std::fmt;

use infdet_core::rat::{rat_frac, Rat};
use infdet_core::{ChartMap, PolyMatrix, Polynomial, ProblemSpec, SpecError, YDesc};

/// A parse or validation failure, anchored to a line and column of the
/// input (both 1-based) and carrying a stable diagnostic code.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub code: &'static str,
    pub message: String,
}

impl Diagnostic {
    fn new(line: usize, col: usize, code: &'static str, message: String) -> Self {
        Diagnostic { line, col, code, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {} [{}]: {}", self.line, self.col, self.code, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Eq,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Int(v) => format!("number `{}`", v),
            Tok::Eq => "`=`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex_line(line_no: usize, line: &str) -> Result<Vec<Lexed>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let v: i64 = digits.parse().map_err(|_| {
                Diagnostic::new(line_no, col, "number-too-large", format!("literal `{}` does not fit in 64 bits", digits))
            })?;
            out.push(Lexed { tok: Tok::Int(v), col });
            continue;
        }
        let tok = match c {
            '=' => Tok::Eq,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    i += 1;
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            other => {
                return Err(Diagnostic::new(
                    line_no,
                    col,
                    "syntax",
                    format!("unexpected character `{}`", other),
                ))
            }
        };
        i += 1;
        out.push(Lexed { tok, col });
    }
    Ok(out)
}

/// Cursor over one statement's tokens.
struct Cursor<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.col)
            .unwrap_or_else(|| self.toks.last().map(|l| l.col + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|l| &l.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, code: &'static str, message: String) -> Diagnostic {
        Diagnostic::new(self.line, self.col(), code, message)
    }

    fn expect(&mut self, want: Tok) -> Result<(), Diagnostic> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.describe();
                Err(self.err("syntax", format!("expected {}, found {}", want.describe(), found)))
            }
            None => Err(self.err("syntax", format!("expected {}, found end of line", want.describe()))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Recursive-descent polynomial parser over a fixed variable list.
struct PolyParser<'a> {
    names: &'a [String],
}

impl<'a> PolyParser<'a> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn parse(&self, cur: &mut Cursor) -> Result<Polynomial, Diagnostic> {
        let mut acc = self.term(cur)?;
        loop {
            match cur.peek() {
                Some(Tok::Plus) => {
                    cur.next();
                    let rhs = self.term(cur)?;
                    acc = &acc + &rhs;
                }
                Some(Tok::Minus) => {
                    cur.next();
                    let rhs = self.term(cur)?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&self, cur: &mut Cursor) -> Result<Polynomial, Diagnostic> {
        let mut acc = self.factor(cur)?;
        while let Some(Tok::Star) = cur.peek() {
            cur.next();
            let rhs = self.factor(cur)?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&self, cur: &mut Cursor) -> Result<Polynomial, Diagnostic> {
        if let Some(Tok::Minus) = cur.peek() {
            cur.next();
            let inner = self.factor(cur)?;
            return Ok(-&inner);
        }
        let base = self.atom(cur)?;
        if let Some(Tok::Caret) = cur.peek() {
            cur.next();
            match cur.peek() {
                Some(Tok::Int(e)) if *e >= 0 => {
                    let e = *e;
                    cur.next();
                    if e > u32::MAX as i64 {
                        return Err(cur.err("bad-exponent", format!("exponent {} is too large", e)));
                    }
                    return Ok(base.pow(e as u32));
                }
                Some(t) => {
                    let found = t.describe();
                    return Err(cur.err("bad-exponent", format!("expected a nonnegative integer exponent, found {}", found)));
                }
                None => {
                    return Err(cur.err("bad-exponent", "expected a nonnegative integer exponent, found end of line".into()))
                }
            }
        }
        Ok(base)
    }

    fn atom(&self, cur: &mut Cursor) -> Result<Polynomial, Diagnostic> {
        match cur.peek().cloned() {
            Some(Tok::Int(num)) => {
                cur.next();
                let value = if let Some(Tok::Slash) = cur.peek() {
                    cur.next();
                    match cur.peek() {
                        Some(Tok::Int(den)) if *den != 0 => {
                            let den = *den;
                            cur.next();
                            rat_frac(num, den)
                        }
                        Some(Tok::Int(_)) => {
                            return Err(cur.err("syntax", "zero denominator in rational literal".into()))
                        }
                        Some(t) => {
                            let found = t.describe();
                            return Err(cur.err("syntax", format!("expected a denominator after `/`, found {}", found)));
                        }
                        None => {
                            return Err(cur.err("syntax", "expected a denominator after `/`, found end of line".into()))
                        }
                    }
                } else {
                    Rat::from_integer(num.into())
                };
                Ok(Polynomial::constant(self.nvars(), value))
            }
            Some(Tok::Ident(name)) => {
                match self.names.iter().position(|n| *n == name) {
                    Some(idx) => {
                        cur.next();
                        Ok(Polynomial::var(self.nvars(), idx))
                    }
                    None => Err(cur.err(
                        "unknown-variable",
                        format!("`{}` is not among the declared variables", name),
                    )),
                }
            }
            Some(Tok::LParen) => {
                cur.next();
                let inner = self.parse(cur)?;
                cur.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => {
                let found = t.describe();
                Err(cur.err("syntax", format!("expected a polynomial, found {}", found)))
            }
            None => Err(cur.err("syntax", "expected a polynomial, found end of line".into())),
        }
    }
}

/// Parse a comma-separated polynomial list closed by `]`, with the
/// opening `[` already consumed by the caller... callers consume it.
fn parse_poly_list(cur: &mut Cursor, pp: &PolyParser) -> Result<Vec<Polynomial>, Diagnostic> {
    cur.expect(Tok::LBrack)?;
    let mut out = Vec::new();
    if let Some(Tok::RBrack) = cur.peek() {
        cur.next();
        return Ok(out);
    }
    loop {
        out.push(pp.parse(cur)?);
        match cur.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBrack) => return Ok(out),
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(cur.line, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `]`, found {}", found)));
            }
            None => return Err(cur.err("syntax", "expected `,` or `]`, found end of line".into())),
        }
    }
}

/// Parse a parenthesized tuple of polynomials.
fn parse_poly_tuple(cur: &mut Cursor, pp: &PolyParser) -> Result<Vec<Polynomial>, Diagnostic> {
    cur.expect(Tok::LParen)?;
    let mut out = Vec::new();
    loop {
        out.push(pp.parse(cur)?);
        match cur.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RParen) => return Ok(out),
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(cur.line, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `)`, found {}", found)));
            }
            None => return Err(cur.err("syntax", "expected `,` or `)`, found end of line".into())),
        }
    }
}

/// Parse one chart `(t, u) -> (c1, ..., cn)`; components are polynomials
/// in the chart's own parameters.
fn parse_chart(cur: &mut Cursor, label: String) -> Result<ChartMap, Diagnostic> {
    cur.expect(Tok::LParen)?;
    let mut params: Vec<String> = Vec::new();
    loop {
        match cur.next().cloned() {
            Some(Tok::Ident(name)) => {
                if params.contains(&name) {
                    return Err(Diagnostic::new(
                        cur.line,
                        cur.toks[cur.pos - 1].col,
                        "duplicate-variable",
                        format!("chart parameter `{}` repeats", name),
                    ));
                }
                params.push(name);
            }
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(cur.line, cur.toks[cur.pos - 1].col, "syntax", format!("expected a chart parameter, found {}", found)));
            }
            None => return Err(cur.err("syntax", "expected a chart parameter, found end of line".into())),
        }
        match cur.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RParen) => break,
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(cur.line, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `)`, found {}", found)));
            }
            None => return Err(cur.err("syntax", "expected `,` or `)`, found end of line".into())),
        }
    }
    cur.expect(Tok::Arrow)?;
    let pp = PolyParser { names: &params };
    let components = parse_poly_tuple(cur, &pp)?;
    Ok(ChartMap { label, arity: params.len(), components })
}

fn parse_chart_list(cur: &mut Cursor, prefix: &str) -> Result<Vec<ChartMap>, Diagnostic> {
    cur.expect(Tok::LBrack)?;
    let mut out = Vec::new();
    if let Some(Tok::RBrack) = cur.peek() {
        cur.next();
        return Ok(out);
    }
    loop {
        let label = format!("{}-{}", prefix, out.len() + 1);
        out.push(parse_chart(cur, label)?);
        match cur.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBrack) => return Ok(out),
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(cur.line, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `]`, found {}", found)));
            }
            None => return Err(cur.err("syntax", "expected `,` or `]`, found end of line".into())),
        }
    }
}

#[derive(Default)]
struct Builder {
    varnames: Option<(Vec<String>, usize)>,
    psi: Option<(Vec<Polynomial>, usize)>,
    h: Option<(Vec<Vec<Polynomial>>, usize)>,
    y: Option<(YDesc, usize)>,
    xcharts: Option<(Vec<ChartMap>, usize)>,
    syzygies: Option<(Vec<Vec<Polynomial>>, usize)>,
}

/// Parse and validate a problem file. The returned spec has passed every
/// structural invariant, including the exact chart and syzygy identities.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, Diagnostic> {
    let mut b = Builder::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex_line(line_no, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line: line_no };
        let head = match cur.next().cloned() {
            Some(Tok::Ident(h)) => h,
            Some(t) => {
                let found = t.describe();
                return Err(Diagnostic::new(line_no, toks[0].col, "syntax", format!("expected a statement name, found {}", found)));
            }
            None => unreachable!("nonempty token list"),
        };
        cur.expect(Tok::Eq)?;
        match head.as_str() {
            "vars" => {
                if b.varnames.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`vars` appears twice".into()));
                }
                let mut names = Vec::new();
                while let Some(t) = cur.next().cloned() {
                    match t {
                        Tok::Ident(name) => {
                            if names.contains(&name) {
                                return Err(Diagnostic::new(
                                    line_no,
                                    cur.toks[cur.pos - 1].col,
                                    "duplicate-variable",
                                    format!("variable `{}` repeats", name),
                                ));
                            }
                            names.push(name);
                        }
                        other => {
                            let found = other.describe();
                            return Err(Diagnostic::new(line_no, cur.toks[cur.pos - 1].col, "syntax", format!("expected a variable name, found {}", found)));
                        }
                    }
                }
                if names.is_empty() {
                    return Err(Diagnostic::new(line_no, cur.col(), "syntax", "`vars` declares no variables".into()));
                }
                b.varnames = Some((names, line_no));
            }
            "psi" => {
                if b.psi.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`psi` appears twice".into()));
                }
                let names = require_vars(&b, line_no)?;
                let pp = PolyParser { names };
                let list = parse_poly_list(&mut cur, &pp)?;
                expect_line_end(&cur)?;
                b.psi = Some((list, line_no));
            }
            "H" => {
                if b.h.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`H` appears twice".into()));
                }
                let names = require_vars(&b, line_no)?;
                let pp = PolyParser { names };
                cur.expect(Tok::LBrack)?;
                let mut rows = Vec::new();
                loop {
                    rows.push(parse_poly_list(&mut cur, &pp)?);
                    match cur.next() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RBrack) => break,
                        Some(t) => {
                            let found = t.describe();
                            return Err(Diagnostic::new(line_no, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `]`, found {}", found)));
                        }
                        None => return Err(cur.err("syntax", "expected `,` or `]`, found end of line".into())),
                    }
                }
                expect_line_end(&cur)?;
                b.h = Some((rows, line_no));
            }
            "Y" => {
                if b.y.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`Y` appears twice".into()));
                }
                match cur.next().cloned() {
                    Some(Tok::Ident(kind)) if kind == "origin" => {
                        expect_line_end(&cur)?;
                        b.y = Some((YDesc::Origin, line_no));
                    }
                    Some(Tok::Ident(kind)) if kind == "charts" => {
                        let charts = parse_chart_list(&mut cur, "y-chart")?;
                        expect_line_end(&cur)?;
                        if charts.is_empty() {
                            return Err(Diagnostic::new(line_no, 1, "empty-chart-list", "`Y = charts` lists no charts".into()));
                        }
                        b.y = Some((YDesc::Charts(charts), line_no));
                    }
                    Some(t) => {
                        let found = t.describe();
                        return Err(Diagnostic::new(line_no, cur.toks[cur.pos - 1].col, "syntax", format!("expected `origin` or `charts`, found {}", found)));
                    }
                    None => return Err(cur.err("syntax", "expected `origin` or `charts`, found end of line".into())),
                }
            }
            "xcharts" => {
                if b.xcharts.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`xcharts` appears twice".into()));
                }
                let charts = parse_chart_list(&mut cur, "x-chart")?;
                expect_line_end(&cur)?;
                b.xcharts = Some((charts, line_no));
            }
            "syzygies" => {
                if b.syzygies.is_some() {
                    return Err(Diagnostic::new(line_no, 1, "duplicate-statement", "`syzygies` appears twice".into()));
                }
                let names = require_vars(&b, line_no)?;
                let pp = PolyParser { names };
                cur.expect(Tok::LBrack)?;
                let mut tuples = Vec::new();
                if let Some(Tok::RBrack) = cur.peek() {
                    cur.next();
                } else {
                    loop {
                        tuples.push(parse_poly_tuple(&mut cur, &pp)?);
                        match cur.next() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RBrack) => break,
                            Some(t) => {
                                let found = t.describe();
                                return Err(Diagnostic::new(line_no, cur.toks[cur.pos - 1].col, "syntax", format!("expected `,` or `]`, found {}", found)));
                            }
                            None => return Err(cur.err("syntax", "expected `,` or `]`, found end of line".into())),
                        }
                    }
                }
                expect_line_end(&cur)?;
                b.syzygies = Some((tuples, line_no));
            }
            other => {
                return Err(Diagnostic::new(
                    line_no,
                    toks[0].col,
                    "unknown-statement",
                    format!("`{}` is not a statement (expected vars, psi, H, Y, xcharts, or syzygies)", other),
                ))
            }
        }
    }

    let (varnames, _) = b.varnames.take().ok_or_else(|| missing("vars"))?;
    let (psi, psi_line) = b.psi.take().ok_or_else(|| missing("psi"))?;
    let (h_rows, h_line) = b.h.take().ok_or_else(|| missing("H"))?;
    let (ydesc, y_line) = b.y.take().unwrap_or((YDesc::Origin, 0));
    let (xcharts, xcharts_line) = b.xcharts.take().unwrap_or((Vec::new(), 0));
    let (extra_syzygies, syz_line) = b.syzygies.take().unwrap_or((Vec::new(), 0));

    let n = varnames.len();
    let rows = h_rows.len();
    let cols = h_rows.first().map(|r| r.len()).unwrap_or(0);
    for row in &h_rows {
        if row.len() != cols {
            return Err(Diagnostic::new(h_line, 1, "H-shape", "rows of H have unequal lengths".into()));
        }
    }
    let entries: Vec<Polynomial> = h_rows.into_iter().flatten().collect();
    let spec = ProblemSpec {
        varnames,
        psi,
        h: PolyMatrix::new(rows, cols, n, entries),
        ydesc,
        xcharts,
        extra_syzygies,
    };
    spec.validate().map_err(|e| {
        let line = match &e {
            SpecError::NoPsi | SpecError::PsiCountExceedsVars { .. } | SpecError::PsiConstantTerm { .. } => psi_line,
            SpecError::WrongVarCount { what, .. } => {
                if what.starts_with("psi") {
                    psi_line
                } else if what == "H" {
                    h_line
                } else {
                    syz_line
                }
            }
            SpecError::HShape { .. } | SpecError::HNotSymmetric { .. } => h_line,
            SpecError::ChartNoParams { label }
            | SpecError::ChartComponentCount { label, .. }
            | SpecError::ChartArityMismatch { label, .. }
            | SpecError::ChartNotCentered { label, .. }
            | SpecError::ChartNotOnX { label, .. } => {
                if label.starts_with("y-chart") {
                    y_line
                } else {
                    xcharts_line
                }
            }
            SpecError::SyzygyLength { .. } | SpecError::SyzygyNotAnnihilating { .. } => syz_line,
        };
        Diagnostic::new(line.max(1), 1, spec_error_code(&e), e.to_string())
    })?;
    Ok(spec)
}

fn missing(what: &str) -> Diagnostic {
    Diagnostic::new(1, 1, "missing-statement", format!("required statement `{}` is absent", what))
}

fn require_vars<'a>(b: &'a Builder, line: usize) -> Result<&'a [String], Diagnostic> {
    b.varnames
        .as_ref()
        .map(|(v, _)| v.as_slice())
        .ok_or_else(|| Diagnostic::new(line, 1, "vars-not-declared", "`vars` must be declared first".into()))
}

fn expect_line_end(cur: &Cursor) -> Result<(), Diagnostic> {
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.err("syntax", "unexpected trailing tokens".into()))
    }
}

fn spec_error_code(e: &SpecError) -> &'static str {
    match e {
        SpecError::NoPsi => "psi-empty",
        SpecError::PsiCountExceedsVars { .. } => "psi-count-exceeds-vars",
        SpecError::WrongVarCount { .. } => "wrong-var-count",
        SpecError::HShape { .. } => "H-shape",
        SpecError::HNotSymmetric { .. } => "H-not-symmetric",
        SpecError::PsiConstantTerm { .. } => "psi-constant-term",
        SpecError::ChartNoParams { .. } => "chart-no-params",
        SpecError::ChartComponentCount { .. } => "chart-component-count",
        SpecError::ChartArityMismatch { .. } => "chart-arity-mismatch",
        SpecError::ChartNotCentered { .. } => "chart-not-centered",
        SpecError::ChartNotOnX { .. } => "chart-not-on-X",
        SpecError::SyzygyLength { .. } => "syzygy-length",
        SpecError::SyzygyNotAnnihilating { .. } => "syzygy-not-annihilating",
    }
}

fn chart_param_names(arity: usize) -> Vec<String> {
    if arity == 1 {
        vec!["t".into()]
    } else {
        (1..=arity).map(|i| format!("t{}", i)).collect()
    }
}

fn render_chart(chart: &ChartMap) -> String {
    let params = chart_param_names(chart.arity);
    let comps: Vec<String> = chart.components.iter().map(|p| p.render(&params)).collect();
    format!("({}) -> ({})", params.join(", "), comps.join(", "))
}

/// Canonical rendering; `parse_problem(serialize_problem(spec))` yields a
/// spec equal to the input.
pub fn serialize_problem(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("vars = {}\n", spec.varnames.join(" ")));
    let psis: Vec<String> = spec.psi.iter().map(|p| p.render(&spec.varnames)).collect();
    out.push_str(&format!("psi = [ {} ]\n", psis.join(", ")));
    let mut rows = Vec::new();
    for r in 0..spec.h.rows() {
        let row: Vec<String> =
            (0..spec.h.cols()).map(|c| spec.h.at(r, c).render(&spec.varnames)).collect();
        rows.push(format!("[{}]", row.join(", ")));
    }
    out.push_str(&format!("H = [ {} ]\n", rows.join(", ")));
    match &spec.ydesc {
        YDesc::Origin => out.push_str("Y = origin\n"),
        YDesc::Charts(cs) => {
            let rendered: Vec<String> = cs.iter().map(render_chart).collect();
            out.push_str(&format!("Y = charts [ {} ]\n", rendered.join(", ")));
        }
    }
    if !spec.xcharts.is_empty() {
        let rendered: Vec<String> = spec.xcharts.iter().map(render_chart).collect();
        out.push_str(&format!("xcharts = [ {} ]\n", rendered.join(", ")));
    }
    if !spec.extra_syzygies.is_empty() {
        let rendered: Vec<String> = spec
            .extra_syzygies
            .iter()
            .map(|s| {
                let comps: Vec<String> = s.iter().map(|p| p.render(&spec.varnames)).collect();
                format!("({})", comps.join(", "))
            })
            .collect();
        out.push_str(&format!("syzygies = [ {} ]\n", rendered.join(", ")));
    }
    out
}
