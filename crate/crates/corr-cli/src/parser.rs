//! The declarative script language: lexer and recursive-descent parser.
//!
//! Grammar (statements end with `;`, comments run from `#` to end of line):
//!
//! ```text
//! field NAME = Q | GF(p) | NAME(gen : minpoly) | NAME(t1, t2, ...);
//! variety NAME over FIELD vars (x, y, ...) ideal (f1, f2, ...);
//! corr NAME : X -> Y = m1*[g1, g2, ...] + m2*[...];
//! plugin NAME = Ga | Gm | Mu(n) | Ga*Gm*...;
//! compose A B;            # B o A, first X -> Y then Y -> Z
//! transfer A P (g, ...);
//! degree A;
//! verify functoriality A B P (g, ...);
//! verify lemmas seed=N size=small;
//! radicial A P (g, ...);
//! explain A;
//! ```
//!
//! Expressions use `+ - * / ^`, integer literals, and identifiers
//! (`[A-Za-z_][A-Za-z0-9_]*`).

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Equals,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = vec![];
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        col = 1;
                        break;
                    }
                }
            }
            '0'..='9' => {
                let mut n = 0i64;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or_else(|| ParseError {
                                pos,
                                message: "integer literal overflows".into(),
                                expected: vec![],
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(n), pos));
            }
            'A'..='Z' | 'a'..='z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    out.push((Tok::Arrow, pos));
                } else {
                    out.push((Tok::Minus, pos));
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    '=' => Tok::Equals,
                    other => {
                        return Err(ParseError {
                            pos,
                            message: format!("unexpected character `{other}`"),
                            expected: vec![],
                        })
                    }
                };
                chars.next();
                col += 1;
                out.push((tok, pos));
            }
        }
    }
    Ok(out)
}

/// Arithmetic expression AST.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A plugin expression: builtin names, `Mu(n)`, declared names, products.
#[derive(Debug, Clone, PartialEq)]
pub enum PluginExpr {
    Name(String),
    Mu(u64),
    Product(Vec<PluginExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldDecl {
    Rationals,
    Prime(u64),
    Algebraic { base: String, gen: String, min_poly: Expr },
    Transcendental { base: String, vars: Vec<String> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Field {
        name: String,
        decl: FieldDecl,
    },
    Variety {
        name: String,
        field: String,
        vars: Vec<String>,
        ideal: Vec<Expr>,
    },
    Corr {
        name: String,
        source: String,
        target: String,
        components: Vec<(i64, Vec<Expr>)>,
    },
    Plugin {
        name: String,
        expr: PluginExpr,
    },
    Compose {
        alpha: String,
        beta: String,
    },
    Transfer {
        corr: String,
        plugin: PluginExpr,
        args: Vec<Expr>,
    },
    Degree {
        corr: String,
    },
    VerifyFunctoriality {
        alpha: String,
        beta: String,
        plugin: PluginExpr,
        args: Vec<Expr>,
    },
    VerifyLemmas {
        seed: Option<u64>,
        size: Option<String>,
    },
    Radicial {
        corr: String,
        plugin: PluginExpr,
        args: Vec<Expr>,
    },
    Explain {
        corr: String,
    },
}

/// A parsed script: ordered statements with their positions.
#[derive(Debug, Clone)]
pub struct Script {
    pub statements: Vec<(Statement, Pos)>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|(_, p)| *p)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn err(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("found {t}"), &[&tok.to_string()])),
            None => Err(self.err("unexpected end of input", &[&tok.to_string()])),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            Some(t) => Err(self.err(format!("found {t}"), &["identifier"])),
            None => Err(self.err("unexpected end of input", &["identifier"])),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            Some(t) => Err(self.err(format!("found {t}"), &["integer"])),
            None => Err(self.err("unexpected end of input", &["integer"])),
        }
    }

    // Expression parsing: + - over * / over unary - over ^ over atoms.
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let e = self.int()?;
            if e < 0 {
                return Err(self.err("exponents must be nonnegative", &[]));
            }
            return Ok(Expr::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(self.err(format!("found {t}"), &["integer", "identifier", "`(`"])),
            None => Err(self.err("unexpected end of input", &["expression"])),
        }
    }

    fn expr_list_paren(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(&Tok::LParen)?;
        let mut out = vec![];
        if self.peek() == Some(&Tok::RParen) {
            self.at += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.peek() {
                Some(Tok::Comma) => {
                    self.at += 1;
                }
                Some(Tok::RParen) => {
                    self.at += 1;
                    return Ok(out);
                }
                Some(t) => {
                    let t = t.clone();
                    return Err(self.err(format!("found {t}"), &["`,`", "`)`"]));
                }
                None => return Err(self.err("unexpected end of input", &["`,`", "`)`"])),
            }
        }
    }

    fn ident_list_paren(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(&Tok::LParen)?;
        let mut out = vec![];
        if self.peek() == Some(&Tok::RParen) {
            self.at += 1;
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            match self.peek() {
                Some(Tok::Comma) => {
                    self.at += 1;
                }
                Some(Tok::RParen) => {
                    self.at += 1;
                    return Ok(out);
                }
                Some(t) => {
                    let t = t.clone();
                    return Err(self.err(format!("found {t}"), &["`,`", "`)`"]));
                }
                None => return Err(self.err("unexpected end of input", &["`,`", "`)`"])),
            }
        }
    }

    fn plugin_expr(&mut self) -> Result<PluginExpr, ParseError> {
        let mut factors = vec![self.plugin_atom()?];
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            factors.push(self.plugin_atom()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(PluginExpr::Product(factors))
        }
    }

    fn plugin_atom(&mut self) -> Result<PluginExpr, ParseError> {
        let name = self.ident()?;
        if name == "Mu" {
            self.expect(&Tok::LParen)?;
            let n = self.int()?;
            if n <= 0 {
                return Err(self.err("Mu requires a positive order", &[]));
            }
            self.expect(&Tok::RParen)?;
            return Ok(PluginExpr::Mu(n as u64));
        }
        Ok(PluginExpr::Name(name))
    }

    fn field_decl(&mut self) -> Result<FieldDecl, ParseError> {
        let head = self.ident()?;
        match head.as_str() {
            "Q" => Ok(FieldDecl::Rationals),
            "GF" => {
                self.expect(&Tok::LParen)?;
                let p = self.int()?;
                self.expect(&Tok::RParen)?;
                if p < 2 {
                    return Err(self.err("GF requires a prime", &[]));
                }
                Ok(FieldDecl::Prime(p as u64))
            }
            base => {
                self.expect(&Tok::LParen)?;
                let first = self.ident()?;
                match self.peek() {
                    Some(Tok::Colon) => {
                        self.at += 1;
                        let mp = self.expr()?;
                        self.expect(&Tok::RParen)?;
                        Ok(FieldDecl::Algebraic {
                            base: base.to_string(),
                            gen: first,
                            min_poly: mp,
                        })
                    }
                    _ => {
                        let mut vars = vec![first];
                        while self.peek() == Some(&Tok::Comma) {
                            self.at += 1;
                            vars.push(self.ident()?);
                        }
                        self.expect(&Tok::RParen)?;
                        Ok(FieldDecl::Transcendental { base: base.to_string(), vars })
                    }
                }
            }
        }
    }

    fn statement(&mut self) -> Result<(Statement, Pos), ParseError> {
        let pos = self.pos();
        let head = self.ident()?;
        let stmt = match head.as_str() {
            "field" => {
                let name = self.ident()?;
                self.expect(&Tok::Equals)?;
                let decl = self.field_decl()?;
                Statement::Field { name, decl }
            }
            "variety" => {
                let name = self.ident()?;
                let over = self.ident()?;
                if over != "over" {
                    return Err(self.err(format!("found `{over}`"), &["`over`"]));
                }
                let field = self.ident()?;
                let kw = self.ident()?;
                if kw != "vars" {
                    return Err(self.err(format!("found `{kw}`"), &["`vars`"]));
                }
                let vars = self.ident_list_paren()?;
                let kw = self.ident()?;
                if kw != "ideal" {
                    return Err(self.err(format!("found `{kw}`"), &["`ideal`"]));
                }
                let ideal = self.expr_list_paren()?;
                Statement::Variety { name, field, vars, ideal }
            }
            "corr" => {
                let name = self.ident()?;
                self.expect(&Tok::Colon)?;
                let source = self.ident()?;
                self.expect(&Tok::Arrow)?;
                let target = self.ident()?;
                self.expect(&Tok::Equals)?;
                let mut components = vec![];
                loop {
                    // [m *] [generators]
                    let mut sign = 1i64;
                    while self.peek() == Some(&Tok::Minus) {
                        self.at += 1;
                        sign = -sign;
                    }
                    let mult = if let Some(Tok::Int(_)) = self.peek() {
                        let m = self.int()?;
                        self.expect(&Tok::Star)?;
                        m
                    } else {
                        1
                    };
                    self.expect(&Tok::LBracket)?;
                    let mut gens = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                        gens.push(self.expr()?);
                    }
                    self.expect(&Tok::RBracket)?;
                    components.push((sign * mult, gens));
                    if self.peek() == Some(&Tok::Plus) {
                        self.at += 1;
                        continue;
                    }
                    if self.peek() == Some(&Tok::Minus) {
                        continue;
                    }
                    break;
                }
                Statement::Corr { name, source, target, components }
            }
            "plugin" => {
                let name = self.ident()?;
                self.expect(&Tok::Equals)?;
                let expr = self.plugin_expr()?;
                Statement::Plugin { name, expr }
            }
            "compose" => {
                let alpha = self.ident()?;
                let beta = self.ident()?;
                Statement::Compose { alpha, beta }
            }
            "transfer" => {
                let corr = self.ident()?;
                let plugin = self.plugin_expr()?;
                let args = self.expr_list_paren()?;
                Statement::Transfer { corr, plugin, args }
            }
            "degree" => Statement::Degree { corr: self.ident()? },
            "verify" => {
                let what = self.ident()?;
                match what.as_str() {
                    "functoriality" => {
                        let alpha = self.ident()?;
                        let beta = self.ident()?;
                        let plugin = self.plugin_expr()?;
                        let args = self.expr_list_paren()?;
                        Statement::VerifyFunctoriality { alpha, beta, plugin, args }
                    }
                    "lemmas" => {
                        let mut seed = None;
                        let mut size = None;
                        while let Some(Tok::Ident(key)) = self.peek().cloned() {
                            self.at += 1;
                            self.expect(&Tok::Equals)?;
                            match key.as_str() {
                                "seed" => seed = Some(self.int()? as u64),
                                "size" => size = Some(self.ident()?),
                                other => {
                                    return Err(self.err(
                                        format!("unknown option `{other}`"),
                                        &["`seed`", "`size`"],
                                    ))
                                }
                            }
                        }
                        Statement::VerifyLemmas { seed, size }
                    }
                    other => {
                        return Err(self.err(
                            format!("found `{other}`"),
                            &["`functoriality`", "`lemmas`"],
                        ))
                    }
                }
            }
            "radicial" => {
                let corr = self.ident()?;
                let plugin = self.plugin_expr()?;
                let args = self.expr_list_paren()?;
                Statement::Radicial { corr, plugin, args }
            }
            "explain" => Statement::Explain { corr: self.ident()? },
            other => {
                return Err(self.err(
                    format!("unknown statement `{other}`"),
                    &[
                        "`field`",
                        "`variety`",
                        "`corr`",
                        "`plugin`",
                        "`compose`",
                        "`transfer`",
                        "`degree`",
                        "`verify`",
                        "`radicial`",
                        "`explain`",
                    ],
                ))
            }
        };
        self.expect(&Tok::Semi)?;
        Ok((stmt, pos))
    }
}

/// Parse a full script.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let mut statements = vec![];
    while p.peek().is_some() {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Canonical rendering of an expression (used for report echoes and the
/// round-trip property).
pub fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Int(n) => n.to_string(),
        Expr::Ident(s) => s.clone(),
        Expr::Neg(a) => format!("-{}", render_atomic(a)),
        Expr::Add(a, b) => format!("{} + {}", render_expr(a), render_expr(b)),
        Expr::Sub(a, b) => format!("{} - {}", render_expr(a), render_atomic(b)),
        Expr::Mul(a, b) => format!("{}*{}", render_atomic(a), render_atomic(b)),
        Expr::Div(a, b) => format!("{}/{}", render_atomic(a), render_atomic(b)),
        Expr::Pow(a, n) => format!("{}^{}", render_atomic(a), n),
    }
}

fn render_atomic(e: &Expr) -> String {
    match e {
        Expr::Int(_) | Expr::Ident(_) | Expr::Pow(_, _) => render_expr(e),
        _ => format!("({})", render_expr(e)),
    }
}

fn render_plugin(p: &PluginExpr) -> String {
    match p {
        PluginExpr::Name(n) => n.clone(),
        PluginExpr::Mu(n) => format!("Mu({n})"),
        PluginExpr::Product(fs) => {
            fs.iter().map(render_plugin).collect::<Vec<_>>().join("*")
        }
    }
}

/// Canonical rendering of a statement; `parse(render(s))` reproduces `s`.
pub fn render_statement(s: &Statement) -> String {
    match s {
        Statement::Field { name, decl } => {
            let rhs = match decl {
                FieldDecl::Rationals => "Q".to_string(),
                FieldDecl::Prime(p) => format!("GF({p})"),
                FieldDecl::Algebraic { base, gen, min_poly } => {
                    format!("{base}({gen} : {})", render_expr(min_poly))
                }
                FieldDecl::Transcendental { base, vars } => {
                    format!("{base}({})", vars.join(", "))
                }
            };
            format!("field {name} = {rhs};")
        }
        Statement::Variety { name, field, vars, ideal } => {
            let gens: Vec<String> = ideal.iter().map(render_expr).collect();
            format!(
                "variety {name} over {field} vars ({}) ideal ({});",
                vars.join(", "),
                gens.join(", ")
            )
        }
        Statement::Corr { name, source, target, components } => {
            let comps: Vec<String> = components
                .iter()
                .map(|(m, gens)| {
                    let g: Vec<String> = gens.iter().map(render_expr).collect();
                    format!("{m}*[{}]", g.join(", "))
                })
                .collect();
            format!("corr {name} : {source} -> {target} = {};", comps.join(" + "))
        }
        Statement::Plugin { name, expr } => {
            format!("plugin {name} = {};", render_plugin(expr))
        }
        Statement::Compose { alpha, beta } => format!("compose {alpha} {beta};"),
        Statement::Transfer { corr, plugin, args } => {
            let g: Vec<String> = args.iter().map(render_expr).collect();
            format!("transfer {corr} {} ({});", render_plugin(plugin), g.join(", "))
        }
        Statement::Degree { corr } => format!("degree {corr};"),
        Statement::VerifyFunctoriality { alpha, beta, plugin, args } => {
            let g: Vec<String> = args.iter().map(render_expr).collect();
            format!(
                "verify functoriality {alpha} {beta} {} ({});",
                render_plugin(plugin),
                g.join(", ")
            )
        }
        Statement::VerifyLemmas { seed, size } => {
            let mut s = "verify lemmas".to_string();
            if let Some(n) = seed {
                s.push_str(&format!(" seed={n}"));
            }
            if let Some(sz) = size {
                s.push_str(&format!(" size={sz}"));
            }
            s.push(';');
            s
        }
        Statement::Radicial { corr, plugin, args } => {
            let g: Vec<String> = args.iter().map(render_expr).collect();
            format!("radicial {corr} {} ({});", render_plugin(plugin), g.join(", "))
        }
        Statement::Explain { corr } => format!("explain {corr};"),
    }
}

/// Render a whole script, one statement per line.
pub fn render_script(s: &Script) -> String {
    s.statements
        .iter()
        .map(|(st, _)| render_statement(st))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declarations_parse() {
        let s = parse(
            "field k = GF(5);\n\
             field q = Q;\n\
             field l = q(i : i^2 + 1);\n\
             field f = q(t1, t2);\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 4);
        assert!(matches!(
            s.statements[0].0,
            Statement::Field { ref name, decl: FieldDecl::Prime(5) } if name == "k"
        ));
    }

    #[test]
    fn corr_with_multiplicities() {
        let s = parse("corr a : X -> Y = 2*[y^2 - x] + -1*[y - x];").unwrap();
        let Statement::Corr { components, .. } = &s.statements[0].0 else {
            panic!()
        };
        assert_eq!(components.len(), 2);
        assert_eq!(components[0].0, 2);
        assert_eq!(components[1].0, -1);
    }

    #[test]
    fn transfer_command() {
        let s = parse("transfer a Gm (1 + y);").unwrap();
        let Statement::Transfer { corr, plugin, args } = &s.statements[0].0 else {
            panic!()
        };
        assert_eq!(corr, "a");
        assert_eq!(*plugin, PluginExpr::Name("Gm".into()));
        assert_eq!(args.len(), 1);
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse("corr a X -> Y = [x];").unwrap_err();
        assert_eq!(e.pos.line, 1);
        assert!(e.expected.iter().any(|s| s.contains(":")));
        let e = parse("field k = GF(5)").unwrap_err();
        assert!(e.expected.iter().any(|s| s.contains(";")));
        let e = parse("verify nothing;").unwrap_err();
        assert!(e.expected.iter().any(|s| s.contains("lemmas")));
    }

    #[test]
    fn comments_and_products() {
        let s = parse(
            "# a comment\nplugin p = Ga*Gm*Mu(3); # trailing\nverify lemmas seed=1 size=small;",
        )
        .unwrap();
        let Statement::Plugin { expr, .. } = &s.statements[0].0 else { panic!() };
        assert_eq!(
            *expr,
            PluginExpr::Product(vec![
                PluginExpr::Name("Ga".into()),
                PluginExpr::Name("Gm".into()),
                PluginExpr::Mu(3),
            ])
        );
        let Statement::VerifyLemmas { seed, size } = &s.statements[1].0 else { panic!() };
        assert_eq!(*seed, Some(1));
        assert_eq!(size.as_deref(), Some("small"));
    }

    #[test]
    fn expression_precedence() {
        let s = parse("transfer a Ga (1 + 2*y^2 - x/3);").unwrap();
        let Statement::Transfer { args, .. } = &s.statements[0].0 else { panic!() };
        assert_eq!(render_expr(&args[0]), "1 + 2*y^2 - (x/3)");
    }
}
