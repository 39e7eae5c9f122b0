//! Epistemic propositional formulas: syntax tree, concrete grammar, parser and printer.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! iff     := implies ( "<->" iff )?
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | "K" "(" iff ")" | "(" iff ")" | "true" | "false" | atom
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Words that can never name an atom.
pub const RESERVED_WORDS: [&str; 8] = ["K", "and", "or", "not", "implies", "iff", "true", "false"];

/// A propositional letter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("atom name is empty")]
    Empty,
    #[error("`{0}` is a reserved word and cannot be used as an atom")]
    Reserved(String),
    #[error("`{0}` is not a valid atom name (expected [a-z][a-zA-Z0-9_]*)")]
    Malformed(String),
}

impl Atom {
    pub fn new(name: &str) -> Result<Self, AtomError> {
        if name.is_empty() {
            return Err(AtomError::Empty);
        }
        if RESERVED_WORDS.contains(&name) {
            return Err(AtomError::Reserved(name.to_owned()));
        }
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(AtomError::Malformed(name.to_owned()));
        }
        Ok(Atom(name.into()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = AtomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Var(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `K(φ)`: φ is known, i.e. holds at every epistemically possible world.
    Know(Box<Formula>),
}

impl Formula {
    /// Builds `Var(name)`.
    ///
    /// Panics if `name` is not a valid atom; use [`Atom::new`] for fallible construction.
    pub fn var(name: &str) -> Formula {
        match Atom::new(name) {
            Ok(atom) => Formula::Var(atom),
            Err(e) => panic!("Formula::var: {e}"),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn know(f: Formula) -> Formula {
        Formula::Know(Box::new(f))
    }

    /// Distinct atoms of the formula, sorted by name.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set.into_iter().collect()
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Var(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) | Formula::Know(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Maximum nesting depth of `K`; zero iff the formula is classical.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Var(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::Know(f) => 1 + f.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    pub fn is_classical(&self) -> bool {
        self.modal_depth() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        write_formula(&mut out, self);
        out
    }

    // Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Top | Formula::Bottom | Formula::Var(_) | Formula::Know(_) => 6,
        }
    }
}

/// Parses the concrete syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    Parser::new(text)?.parse_all()
}

/// Prints with the fewest parentheses that still parse back to `f`.
pub fn render(f: &Formula) -> String {
    f.render()
}

pub fn atoms(f: &Formula) -> Vec<Atom> {
    f.atoms()
}

pub fn modal_depth(f: &Formula) -> usize {
    f.modal_depth()
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Top => out.push_str("true"),
        Formula::Bottom => out.push_str("false"),
        Formula::Var(a) => out.push_str(a.name()),
        Formula::Not(g) => {
            out.push('!');
            write_child(out, g, g.precedence() < 5);
        }
        Formula::Know(g) => {
            out.push_str("K(");
            write_formula(out, g);
            out.push(')');
        }
        Formula::And(a, b) => write_left_assoc(out, f, a, b, " & "),
        Formula::Or(a, b) => write_left_assoc(out, f, a, b, " | "),
        Formula::Implies(a, b) => write_right_assoc(out, f, a, b, " -> "),
        Formula::Iff(a, b) => write_right_assoc(out, f, a, b, " <-> "),
    }
}

fn write_left_assoc(out: &mut String, parent: &Formula, a: &Formula, b: &Formula, op: &str) {
    let p = parent.precedence();
    write_child(out, a, a.precedence() < p);
    out.push_str(op);
    write_child(out, b, b.precedence() <= p);
}

fn write_right_assoc(out: &mut String, parent: &Formula, a: &Formula, b: &Formula, op: &str) {
    let p = parent.precedence();
    write_child(out, a, a.precedence() <= p);
    out.push_str(op);
    write_child(out, b, b.precedence() < p);
}

fn write_child(out: &mut String, f: &Formula, parens: bool) {
    if parens {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A located syntax error. `offset` is a 1-based character position; end of input
/// is reported as one past the last character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("`{0}` is a reserved word and cannot be used as an atom")]
    ReservedWord(String),
    #[error("`{0}` is not a valid atom name (atoms start with a lowercase letter)")]
    InvalidAtom(String),
    #[error("expected {expected}, found {found}")]
    Expected { expected: &'static str, found: String },
    #[error("unbalanced parentheses: `(` at offset {open} is never closed")]
    UnclosedParen { open: usize },
    #[error("unbalanced parentheses: `)` has no matching `(`")]
    UnmatchedParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Know,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("atom `{s}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Know => "`K`".into(),
            Token::Bang => "`!`".into(),
            Token::Amp => "`&`".into(),
            Token::Pipe => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::DoubleArrow => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let offset = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let token = match c {
            '!' => Token::Bang,
            '&' => Token::Amp,
            '|' => Token::Pipe,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Arrow
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Token::DoubleArrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "K" => Token::Know,
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => match Atom::new(&word) {
                        Ok(_) => Token::Ident(word),
                        Err(AtomError::Reserved(w)) => {
                            return Err(ParseError { offset, kind: ParseErrorKind::ReservedWord(w) })
                        }
                        Err(_) => {
                            return Err(ParseError { offset, kind: ParseErrorKind::InvalidAtom(word) })
                        }
                    },
                }
            }
            other => return Err(ParseError { offset, kind: ParseErrorKind::UnexpectedChar(other) }),
        };
        tokens.push((token, offset));
        i += 1;
    }
    tokens.push((Token::Eof, chars.len() + 1));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { tokens: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_here(&self, expected: &'static str) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Expected { expected, found: self.peek().describe() },
        }
    }

    fn parse_all(mut self) -> Result<Formula, ParseError> {
        let f = self.parse_iff()?;
        match self.peek() {
            Token::Eof => Ok(f),
            Token::RParen => Err(ParseError { offset: self.offset(), kind: ParseErrorKind::UnmatchedParen }),
            _ => Err(self.error_here("a binary operator or end of input")),
        }
    }

    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_implies()?;
        if self.eat(&Token::DoubleArrow) {
            let rhs = self.parse_iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.parse_implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.eat(&Token::Pipe) {
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.eat(&Token::Amp) {
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Bang => {
                self.bump();
                Ok(Formula::not(self.parse_unary()?))
            }
            Token::Know => {
                self.bump();
                let open = self.offset();
                if !self.eat(&Token::LParen) {
                    return Err(self.error_here("`(` after `K`"));
                }
                let inner = self.parse_iff()?;
                self.close(open)?;
                Ok(Formula::know(inner))
            }
            Token::LParen => {
                let (_, open) = self.bump();
                let inner = self.parse_iff()?;
                self.close(open)?;
                Ok(inner)
            }
            Token::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Token::Ident(name) => {
                self.bump();
                // the lexer only emits identifiers that are valid atoms
                Ok(Formula::Var(Atom(name.into())))
            }
            Token::RParen => Err(ParseError { offset: self.offset(), kind: ParseErrorKind::UnmatchedParen }),
            _ => Err(self.error_here("a formula")),
        }
    }

    fn close(&mut self, open: usize) -> Result<(), ParseError> {
        match self.peek() {
            Token::RParen => {
                self.bump();
                Ok(())
            }
            Token::Eof => Err(ParseError { offset: self.offset(), kind: ParseErrorKind::UnclosedParen { open } }),
            _ => Err(self.error_here("`)` or a binary operator")),
        }
    }
}
