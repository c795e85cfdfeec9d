//! The scripting surface: parse a small session script (ring declaration,
//! named polynomials, one command) and run it to a deterministic JSON report.
//!
//! Grammar:
//! ```text
//! script  := decl* command
//! decl    := "vars" NAME ("," NAME)* ";"
//!          | "poly" NAME "=" expr ";"
//! command := NAME arg* [";"]
//! arg     := NAME | key "=" value | [INT] "[" NAME ("," NAME | NAME)* "]"
//! expr    := +,-,*,^ arithmetic; "/" only by integer literals; derivatives
//!            by apostrophes (y'') or D(y, k); parentheses allowed
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::chain::{charset_with_saturation, AscendingChain, ChainMode, Irreducibility};
use crate::chow::{
    chow_form_algebraic, cycle_chow_form_jobs, cycle_to_algebraic_chow_jobs, ChowForm, ChowKind,
    Cycle, CycleKind,
};
use crate::diff::{DiffPoly, Ranking};
use crate::error::Error;
use crate::groebner::Caps;
use crate::ideal::{JetRing, TruncatedIdeal};
use crate::poly::{Poly, Rat, Var};
use crate::prolong::{
    dominant_component, is_admissible, kolchin, prolongation_ideal_naive,
    prolongation_sequence_jobs, JetContext,
};
use crate::text::{poly_text, poly_text_default};

pub const SCHEMA_VERSION: &str = "1";

/// Runtime configuration, set from command-line flags only.
#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub caps: Caps,
    pub irreducibility_bound: u32,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            caps: Caps::default(),
            irreducibility_bound: 2,
            jobs: 1,
        }
    }
}

/// Script-level failure; `exit_code` realizes the CLI contract
/// (1 domain, 2 syntax, 3 resource limit).
#[derive(Debug, Clone, PartialEq)]
pub enum ScriptError {
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    Domain(Error),
}

impl ScriptError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScriptError::Syntax { .. } => 2,
            ScriptError::Domain(Error::ResourceLimit { .. }) => 3,
            ScriptError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ScriptError::Syntax { line, col, message } => json!({
                "kind": "syntax",
                "line": line,
                "col": col,
                "message": message,
            }),
            ScriptError::Domain(e) => json!({
                "kind": match e {
                    Error::ResourceLimit { .. } => "resource-limit",
                    _ => "domain",
                },
                "message": e.to_string(),
            }),
        }
    }
}

impl From<Error> for ScriptError {
    fn from(e: Error) -> ScriptError {
        ScriptError::Domain(e)
    }
}

type SResult<T> = std::result::Result<T, ScriptError>;

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Prime,
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
    Semi,
    Equals,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> SResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            Tok::Int(digits.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    name.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            Tok::Name(name)
        } else {
            let single = bump(&mut chars);
            match single {
                '\'' => Tok::Prime,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Equals,
                other => {
                    return Err(ScriptError::Syntax {
                        line: tline,
                        col: tcol,
                        message: format!("unknown character '{other}'"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

/// One cycle-style command argument.
#[derive(Debug, Clone, PartialEq)]
pub enum CommandArg {
    /// Bare polynomial name.
    Name(String),
    /// `mult [ name name ... ]` component group.
    Group { mult: u32, names: Vec<String> },
    /// `key=value`.
    KeyVal(String, String),
}

/// A parsed session: declared indeterminates, named polynomials, one command.
#[derive(Debug, Clone)]
pub struct SessionScript {
    pub vars: Vec<String>,
    pub polys: Vec<(String, Poly)>,
    pub command: String,
    pub args: Vec<CommandArg>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here<T>(&self, message: impl Into<String>) -> SResult<T> {
        let (line, col) = self
            .peek()
            .map(|t| (t.line, t.col))
            .unwrap_or_else(|| {
                self.tokens
                    .last()
                    .map(|t| (t.line, t.col + 1))
                    .unwrap_or((1, 1))
            });
        Err(ScriptError::Syntax {
            line,
            col,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> SResult<Token> {
        match self.peek() {
            Some(t) if t.tok == tok => Ok(self.next().unwrap()),
            _ => self.err_here(format!("expected {what}")),
        }
    }

    fn expect_name(&mut self, what: &str) -> SResult<(String, Token)> {
        match self.peek() {
            Some(Token {
                tok: Tok::Name(_), ..
            }) => {
                let t = self.next().unwrap();
                let Tok::Name(name) = &t.tok else { unreachable!() };
                Ok((name.clone(), t.clone()))
            }
            _ => self.err_here(format!("expected {what}")),
        }
    }

    fn expect_uint(&mut self, what: &str) -> SResult<u32> {
        match self.peek() {
            Some(Token { tok: Tok::Int(_), .. }) => {
                let t = self.next().unwrap();
                let Tok::Int(n) = t.tok else { unreachable!() };
                u32::try_from(&n).map_err(|_| ScriptError::Syntax {
                    line: t.line,
                    col: t.col,
                    message: format!("{what} out of range"),
                })
            }
            _ => self.err_here(format!("expected {what}")),
        }
    }

    fn var_index(&self, name: &str) -> Option<u32> {
        self.vars.iter().position(|v| v == name).map(|i| i as u32)
    }

    // expr := term (("+" | "-") term)*
    fn parse_expr(&mut self) -> SResult<Poly> {
        let mut acc = self.parse_term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.next();
                    acc.add_assign(&self.parse_term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc.sub_assign(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor (("*" factor) | ("/" INT))*
    fn parse_term(&mut self) -> SResult<Poly> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.parse_factor()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    match self.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Int(n)) => {
                            if n == BigInt::from(0) {
                                return self.err_here("division by zero");
                            }
                            self.next();
                            acc = acc.scale(&Rat::new(BigInt::from(1), n));
                        }
                        _ => return self.err_here("division only by integer literals"),
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := "-" factor | primary ("^" INT)?
    fn parse_factor(&mut self) -> SResult<Poly> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.next();
            let p = self.parse_factor()?;
            return Ok(p.scale(&-Rat::from(BigInt::from(1))));
        }
        let base = self.parse_primary()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            self.next();
            let e = self.expect_uint("exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    // primary := "(" expr ")" | INT | varref
    fn parse_primary(&mut self) -> SResult<Poly> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::LParen) => {
                self.next();
                let p = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            Some(Tok::Int(n)) => {
                self.next();
                Ok(Poly::constant(Rat::from(n)))
            }
            Some(Tok::Name(name)) if name == "D" => self.parse_d_notation(),
            Some(Tok::Name(_)) => self.parse_varref(),
            _ => self.err_here("expected a polynomial term"),
        }
    }

    // D(y, k)
    fn parse_d_notation(&mut self) -> SResult<Poly> {
        // "D" not followed by "(" is an ordinary variable reference
        if !matches!(
            self.tokens.get(self.pos + 1).map(|t| &t.tok),
            Some(Tok::LParen)
        ) {
            return self.parse_varref();
        }
        self.next(); // D
        self.next(); // (
        let (name, tok) = self.expect_name("variable name in D(...)")?;
        let Some(base) = self.var_index(&name) else {
            return Err(ScriptError::Syntax {
                line: tok.line,
                col: tok.col,
                message: format!("undeclared variable '{name}'"),
            });
        };
        self.expect(Tok::Comma, "','")?;
        let order = self.expect_uint("derivative order")?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Poly::var(Var::new(base, order)))
    }

    fn parse_varref(&mut self) -> SResult<Poly> {
        let (name, tok) = self.expect_name("variable name")?;
        let Some(base) = self.var_index(&name) else {
            return Err(ScriptError::Syntax {
                line: tok.line,
                col: tok.col,
                message: format!("undeclared variable '{name}'"),
            });
        };
        let mut order = 0u32;
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Prime)) {
            self.next();
            order += 1;
        }
        Ok(Poly::var(Var::new(base, order)))
    }

    fn parse_script(&mut self) -> SResult<SessionScript> {
        // vars declaration (optional for ring-free commands like `bound`)
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Name(kw)) if kw == "vars") {
            self.next();
            loop {
                let (name, tok) = self.expect_name("variable name")?;
                if self.vars.contains(&name) {
                    return Err(ScriptError::Syntax {
                        line: tok.line,
                        col: tok.col,
                        message: format!("duplicate variable '{name}'"),
                    });
                }
                self.vars.push(name);
                match self.peek().map(|t| t.tok.clone()) {
                    Some(Tok::Comma) => {
                        self.next();
                    }
                    Some(Tok::Semi) => {
                        self.next();
                        break;
                    }
                    _ => return self.err_here("expected ',' or ';' in vars declaration"),
                }
            }
        }

        // poly declarations
        let mut polys: Vec<(String, Poly)> = Vec::new();
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Name(kw)) if kw == "poly") {
            self.next();
            let (name, tok) = self.expect_name("polynomial name")?;
            if polys.iter().any(|(n, _)| n == &name) {
                return Err(ScriptError::Syntax {
                    line: tok.line,
                    col: tok.col,
                    message: format!("duplicate polynomial '{name}'"),
                });
            }
            self.expect(Tok::Equals, "'='")?;
            let p = self.parse_expr()?;
            self.expect(Tok::Semi, "';' after polynomial")?;
            polys.push((name, p));
        }

        // command
        let (command, _) = self.expect_name("a command")?;
        let mut args = Vec::new();
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                None => break,
                Some(Tok::Semi) => {
                    self.next();
                    if self.peek().is_some() {
                        return self.err_here("unexpected input after the command");
                    }
                    break;
                }
                Some(Tok::Comma) => {
                    self.next();
                }
                Some(Tok::Name(_)) => {
                    let (name, _) = self.expect_name("argument")?;
                    if matches!(self.peek().map(|t| &t.tok), Some(Tok::Equals)) {
                        self.next();
                        let value = match self.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Int(n)) => {
                                self.next();
                                n.to_string()
                            }
                            Some(Tok::Name(_)) => self.expect_name("value")?.0,
                            _ => return self.err_here("expected a value after '='"),
                        };
                        args.push(CommandArg::KeyVal(name, value));
                    } else {
                        args.push(CommandArg::Name(name));
                    }
                }
                Some(Tok::Int(_)) => {
                    let mult = self.expect_uint("multiplicity")?;
                    let group = self.parse_group(mult)?;
                    args.push(group);
                }
                Some(Tok::LBracket) => {
                    let group = self.parse_group(1)?;
                    args.push(group);
                }
                _ => return self.err_here("unexpected token in command arguments"),
            }
        }
        Ok(SessionScript {
            vars: self.vars.clone(),
            polys,
            command,
            args,
        })
    }

    fn parse_group(&mut self, mult: u32) -> SResult<CommandArg> {
        self.expect(Tok::LBracket, "'['")?;
        let mut names = Vec::new();
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::RBracket) => {
                    self.next();
                    break;
                }
                Some(Tok::Comma) => {
                    self.next();
                }
                Some(Tok::Name(_)) => names.push(self.expect_name("polynomial name")?.0),
                _ => return self.err_here("expected a polynomial name or ']'"),
            }
        }
        if names.is_empty() {
            return self.err_here("empty component group");
        }
        Ok(CommandArg::Group { mult, names })
    }
}

/// Parse a session script.
pub fn parse_script(src: &str) -> SResult<SessionScript> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars: Vec::new(),
    };
    parser.parse_script()
}

/// Parse a single polynomial expression over the given variable names
/// (convenience for tests and examples).
pub fn parse_poly(src: &str, vars: &[&str]) -> SResult<Poly> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars: vars.iter().map(|s| s.to_string()).collect(),
    };
    let p = parser.parse_expr()?;
    if parser.peek().is_some() {
        return parser.err_here("unexpected trailing input");
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Runner

struct Session<'a> {
    script: &'a SessionScript,
    config: Config,
    ranking: Ranking,
}

impl<'a> Session<'a> {
    fn n(&self) -> usize {
        self.script.vars.len()
    }

    fn poly(&self, name: &str) -> SResult<&Poly> {
        self.script
            .polys
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| ScriptError::Syntax {
                line: 0,
                col: 0,
                message: format!("undeclared polynomial '{name}'"),
            })
    }

    fn named_args(&self) -> Vec<&str> {
        self.script
            .args
            .iter()
            .filter_map(|a| match a {
                CommandArg::Name(n) => Some(n.as_str()),
                _ => None,
            })
            .collect()
    }

    fn groups(&self) -> Vec<(u32, Vec<&str>)> {
        self.script
            .args
            .iter()
            .filter_map(|a| match a {
                CommandArg::Group { mult, names } => {
                    Some((*mult, names.iter().map(|s| s.as_str()).collect()))
                }
                _ => None,
            })
            .collect()
    }

    fn key(&self, key: &str) -> Option<&str> {
        self.script.args.iter().rev().find_map(|a| match a {
            CommandArg::KeyVal(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    fn key_u32(&self, key: &str) -> SResult<Option<u32>> {
        match self.key(key) {
            None => Ok(None),
            Some(v) => v.parse::<u32>().map(Some).map_err(|_| ScriptError::Syntax {
                line: 0,
                col: 0,
                message: format!("argument {key}= must be a nonnegative integer"),
            }),
        }
    }

    fn require_u32(&self, key: &str) -> SResult<u32> {
        self.key_u32(key)?.ok_or_else(|| ScriptError::Syntax {
            line: 0,
            col: 0,
            message: format!("command '{}' needs {key}=<integer>", self.script.command),
        })
    }

    fn polys_of(&self, names: &[&str]) -> SResult<Vec<Poly>> {
        names.iter().map(|n| self.poly(n).cloned()).collect()
    }

    fn max_order(polys: &[Poly]) -> u32 {
        polys.iter().filter_map(|p| p.max_order()).max().unwrap_or(0)
    }

    fn render_ring(&self, order_bound: u32) -> Arc<JetRing> {
        JetRing::new(self.script.vars.clone(), order_bound)
    }

    fn render(&self, p: &Poly) -> String {
        let bound = p.max_order().unwrap_or(0);
        poly_text_default(p, &self.render_ring(bound))
    }

    fn ideal_from(&self, polys: Vec<Poly>, h: u32) -> SResult<TruncatedIdeal> {
        let ring = self.render_ring(h);
        Ok(TruncatedIdeal::with_degrevlex(ring, polys, self.config.caps)?)
    }

    fn diff_polys(&self, names: &[&str]) -> SResult<Vec<DiffPoly>> {
        Ok(self
            .polys_of(names)?
            .into_iter()
            .map(|p| DiffPoly::new(p, self.ranking.clone()))
            .collect())
    }

    fn chain_from(&self, names: &[&str], mode: ChainMode) -> SResult<AscendingChain> {
        Ok(AscendingChain::new(
            self.n(),
            self.diff_polys(names)?,
            mode,
            self.ranking.clone(),
        )?)
    }

    /// Cycle components: each bare name is a singleton chain, each group a chain.
    fn cycle_components(&self, mode: ChainMode) -> SResult<Vec<(u32, AscendingChain)>> {
        let mut out = Vec::new();
        for arg in &self.script.args {
            match arg {
                CommandArg::Name(n) => {
                    out.push((1, self.chain_from(&[n.as_str()], mode)?));
                }
                CommandArg::Group { mult, names } => {
                    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                    out.push((*mult, self.chain_from(&names, mode)?));
                }
                CommandArg::KeyVal(..) => {}
            }
        }
        if out.is_empty() {
            return Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: format!(
                    "command '{}' needs at least one polynomial or component",
                    self.script.command
                ),
            });
        }
        Ok(out)
    }

    fn chain_json(&self, chain: &AscendingChain) -> Value {
        Value::Array(
            chain
                .elements()
                .iter()
                .map(|e| Value::String(self.render(e.poly())))
                .collect(),
        )
    }

    fn ideal_json(&self, ideal: &TruncatedIdeal) -> Value {
        Value::Array(
            ideal
                .generators()
                .iter()
                .map(|g| Value::String(self.render(g)))
                .collect(),
        )
    }

    fn chow_json(&self, form: &ChowForm) -> Value {
        let ring = form.ring();
        let order = form.canonical_order();
        let coords: Vec<Value> = form
            .coordinates()
            .into_iter()
            .map(|(m, c)| {
                json!({
                    "monomial": poly_text(&Poly::term(Rat::from(BigInt::from(1)), m), &ring, &order),
                    "coefficient": rat_text(&c),
                })
            })
            .collect();
        json!({
            "chow_form": poly_text(form.poly(), &ring, &order),
            "coordinates": coords,
        })
    }

    fn run(&self) -> SResult<Value> {
        match self.script.command.as_str() {
            "charset" => self.cmd_charset(),
            "reduce" => self.cmd_reduce(),
            "derive" => self.cmd_derive(),
            "bh" => self.cmd_bh(),
            "admissible" => self.cmd_admissible(),
            "dominant" => self.cmd_dominant(),
            "kolchin" => self.cmd_kolchin(),
            "prolongseq" => self.cmd_prolongseq(),
            "chow" => self.cmd_chow(),
            "dchow" => self.cmd_dchow(),
            "index" => self.cmd_index(),
            "bound" => self.cmd_bound(),
            "cyclechow" => self.cmd_cyclechow(),
            other => Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: format!("unknown command '{other}'"),
            }),
        }
    }

    fn cmd_charset(&self) -> SResult<Value> {
        let polys = self.polys_of(&self.named_args())?;
        let h = self.key_u32("h")?.unwrap_or_else(|| Self::max_order(&polys));
        let ideal = self.ideal_from(polys, h)?;
        let result = charset_with_saturation(
            &ideal,
            &self.ranking,
            self.config.irreducibility_bound,
            self.config.caps,
        )?;
        let irreducible = match &result.irreducible {
            Irreducibility::Yes => json!("yes"),
            Irreducibility::No { p, q } => json!({
                "verdict": "no",
                "witnesses": [self.render(p), self.render(q)],
            }),
            Irreducibility::Unknown { bound } => json!({
                "verdict": "unknown",
                "bound": bound,
            }),
        };
        Ok(json!({
            "chain": self.chain_json(&result.chain),
            "saturation": self.ideal_json(&result.saturation),
            "irreducible": irreducible,
        }))
    }

    fn cmd_reduce(&self) -> SResult<Value> {
        let names = self.named_args();
        if names.len() < 2 {
            return Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: "reduce needs a target and at least one chain element".into(),
            });
        }
        let target = DiffPoly::new(self.poly(names[0])?.clone(), self.ranking.clone());
        let chain = self.chain_from(&names[1..], ChainMode::Differential)?;
        let red = chain.reduce(&target)?;
        let verified = red
            .certificate
            .verifies(target.poly(), chain.elements(), red.remainder.poly());
        Ok(json!({
            "remainder": self.render(red.remainder.poly()),
            "multiplier": self.render(&red.certificate.multiplier),
            "steps": red.certificate.steps.len(),
            "verified": verified,
        }))
    }

    fn cmd_derive(&self) -> SResult<Value> {
        let names = self.named_args();
        if names.len() != 1 {
            return Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: "derive takes exactly one polynomial".into(),
            });
        }
        let k = self.key_u32("k")?.unwrap_or(1);
        let p = self.poly(names[0])?.derivative_n(k);
        Ok(json!({ "result": self.render(&p) }))
    }

    fn cmd_bh(&self) -> SResult<Value> {
        let chain = self.chain_from(&self.named_args(), ChainMode::Differential)?;
        let h = self.require_u32("h")?;
        let ideal = crate::prolong::b_h(&chain, h, self.config.caps)?;
        let (dim, deg) = ideal.dim_and_degree()?;
        Ok(json!({
            "generators": self.ideal_json(&ideal),
            "dimension": dim,
            "degree": deg,
        }))
    }

    fn cmd_admissible(&self) -> SResult<Value> {
        let polys = self.polys_of(&self.named_args())?;
        let h = self.key_u32("h")?.unwrap_or_else(|| Self::max_order(&polys));
        let ideal = self.ideal_from(polys, h)?;
        Ok(json!(is_admissible(&ideal)?))
    }

    fn cmd_dominant(&self) -> SResult<Value> {
        let chain = self.chain_from(&self.named_args(), ChainMode::Algebraic)?;
        let h = self.key_u32("h")?.unwrap_or_else(|| chain.max_order());
        let ctx = JetContext::new(self.n(), h);
        let dom = dominant_component(&chain, ctx, self.config.caps)?;
        Ok(json!({
            "diff_chain": self.chain_json(&dom.diff_chain),
            "d": dom.kolchin.d,
            "h": dom.kolchin.h,
            "omega": dom.kolchin.to_string(),
        }))
    }

    fn cmd_kolchin(&self) -> SResult<Value> {
        let chain = self.chain_from(&self.named_args(), ChainMode::Differential)?;
        let data = kolchin(&chain)?;
        Ok(json!({
            "d": data.d,
            "h": data.h,
            "omega": data.to_string(),
        }))
    }

    fn cmd_prolongseq(&self) -> SResult<Value> {
        let level = self.require_u32("l")?;
        let naive = match self.key("mode") {
            None | Some("exact") => false,
            Some("naive") => true,
            Some(other) => {
                return Err(ScriptError::Syntax {
                    line: 0,
                    col: 0,
                    message: format!("unknown prolongseq mode '{other}'"),
                })
            }
        };
        let ideal = if naive {
            let gens = self.diff_polys(&self.named_args())?;
            prolongation_ideal_naive(&gens, self.n(), level, self.config.caps)?
        } else {
            let components: Vec<AscendingChain> = self
                .cycle_components(ChainMode::Differential)?
                .into_iter()
                .map(|(_, c)| c)
                .collect();
            prolongation_sequence_jobs(&components, level, self.config.caps, self.config.jobs)?
        };
        Ok(json!({
            "generators": self.ideal_json(&ideal),
            "exact": !naive,
        }))
    }

    fn cmd_chow(&self) -> SResult<Value> {
        let groups = self.groups();
        let form = if groups.is_empty() {
            let polys = self.polys_of(&self.named_args())?;
            let d = self.require_u32("d")? as usize;
            let h = Self::max_order(&polys);
            if h > 0 {
                return Err(ScriptError::Domain(Error::InvalidInput(
                    "chow takes order-0 polynomials; use dchow for differential varieties".into(),
                )));
            }
            let ideal = self.ideal_from(polys, 0)?;
            chow_form_algebraic(&ideal, d, self.config.caps)?
        } else {
            let cycle = Cycle::new(
                self.cycle_components(ChainMode::Algebraic)?,
                CycleKind::Algebraic,
            )?;
            cycle_chow_form_jobs(&cycle, self.config.caps, self.config.jobs)?
        };
        let mut out = self.chow_json(&form);
        out["degree"] = json!(form.degree()?);
        out["d"] = json!(form.d());
        Ok(out)
    }

    fn cmd_dchow(&self) -> SResult<Value> {
        let cycle = Cycle::new(
            self.cycle_components(ChainMode::Differential)?,
            CycleKind::Differential,
        )?;
        let form = cycle_chow_form_jobs(&cycle, self.config.caps, self.config.jobs)?;
        let index = form.index()?;
        if let Some(d) = self.key_u32("d")? {
            if d as usize != index.d {
                return Err(ScriptError::Domain(Error::DimensionMismatch {
                    expected: d as usize,
                    found: index.d,
                }));
            }
        }
        if let Some(h) = self.key_u32("h")? {
            if h != index.h {
                return Err(ScriptError::Domain(Error::DimensionMismatch {
                    expected: h as usize,
                    found: index.h as usize,
                }));
            }
        }
        let mut out = self.chow_json(&form);
        out["index"] = json!([index.d, index.h, index.g, index.m]);
        Ok(out)
    }

    fn cmd_index(&self) -> SResult<Value> {
        let names = self.named_args();
        if names.len() != 1 {
            return Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: "index takes exactly one polynomial".into(),
            });
        }
        let d = self.require_u32("d")? as usize;
        let blocks = d + 1;
        if !self.n().is_multiple_of(blocks) {
            return Err(ScriptError::Syntax {
                line: 0,
                col: 0,
                message: format!(
                    "{} declared variables cannot split into {blocks} equal blocks",
                    self.n()
                ),
            });
        }
        let block_len = self.n() / blocks;
        let poly = self.poly(names[0])?.clone();
        let h = poly.max_order().unwrap_or(0);
        let form = ChowForm::from_parts(poly, block_len - 1, d, ChowKind::Differential { h });
        let index = form.index()?;
        Ok(json!({ "index": [index.d, index.h, index.g, index.m] }))
    }

    fn cmd_bound(&self) -> SResult<Value> {
        let n = self.require_u32("n")? as usize;
        let d = self.require_u32("d")? as usize;
        let h = self.require_u32("h")?;
        let m = self.require_u32("m")?;
        if m == 0 {
            return Err(ScriptError::Domain(Error::InvalidInput(
                "bound needs m >= 1".into(),
            )));
        }
        let (lower, upper) = crate::chow::degree_bound(n, d, h, m);
        Ok(json!({
            "lower": rat_text(&lower),
            "upper": upper.to_string(),
        }))
    }

    fn cmd_cyclechow(&self) -> SResult<Value> {
        let h = self.require_u32("h")?;
        let cycle = Cycle::new(
            self.cycle_components(ChainMode::Differential)?,
            CycleKind::Differential,
        )?;
        let form =
            cycle_to_algebraic_chow_jobs(&cycle, h, self.config.caps, self.config.jobs)?;
        let mut out = self.chow_json(&form);
        out["degree"] = json!(form.degree()?);
        out["cycle_dimension"] = json!(form.d());
        Ok(out)
    }
}

fn rat_text(c: &BigRational) -> String {
    use num_traits::One;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Run a parsed script to the full JSON report.
pub fn run_script(script: &SessionScript, config: Config) -> (Value, i32) {
    let started = Instant::now();
    let session = Session {
        script,
        config,
        ranking: Ranking::orderly(script.vars.len()),
    };
    let inputs = {
        let polys: BTreeMap<String, String> = script
            .polys
            .iter()
            .map(|(name, p)| (name.clone(), session.render(p)))
            .collect();
        let args: Vec<String> = script
            .args
            .iter()
            .map(|a| match a {
                CommandArg::Name(n) => n.clone(),
                CommandArg::Group { mult, names } => format!("{mult}[{}]", names.join(" ")),
                CommandArg::KeyVal(k, v) => format!("{k}={v}"),
            })
            .collect();
        json!({
            "vars": script.vars,
            "polys": polys,
            "args": args,
        })
    };
    let outcome = session.run();
    let elapsed = started.elapsed().as_millis() as u64;
    match outcome {
        Ok(result) => (
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": script.command,
                "inputs": inputs,
                "result": result,
                "timings_ms": { "total": elapsed },
            }),
            0,
        ),
        Err(err) => (
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": script.command,
                "inputs": inputs,
                "error": err.to_json(),
                "timings_ms": { "total": elapsed },
            }),
            err.exit_code(),
        ),
    }
}

/// Parse and run; errors at parse time still produce a JSON report.
pub fn run_source(src: &str, config: Config) -> (Value, i32) {
    match parse_script(src) {
        Ok(script) => run_script(&script, config),
        Err(err) => (
            json!({
                "schema_version": SCHEMA_VERSION,
                "error": err.to_json(),
            }),
            err.exit_code(),
        ),
    }
}
