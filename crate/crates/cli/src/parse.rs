//! Lexer and recursive-descent parser.
//!
//! ```text
//! seq    := sum (';' sum)*
//! sum    := prod ('+' prod)*
//! prod   := atom ('*' atom)*
//! atom   := '(' seq ')' | IDENT | const cut? | ladder cut? '(' seq ')'
//!         | indexed cut? '(' INT ')' | 'name' '(' seq ')' | 'dag' '(' seq ')'
//!         | 'scale' '(' NUM ',' NUM ',' seq ')'
//!         | 'with' '(' binding (',' binding)* ')' '{' seq '}'
//! cut    := '[' INT ']'
//! binding:= ('d' | 'N') '=' INT
//! ```
//!
//! All binary operators associate to the left. One token of lookahead
//! decides every production.

use crate::error::{ExprError, Result};
use crate::expr::{is_keyword, Constant, Expr, Indexed, Ladder};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(s) => format!("number {s}"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let begin = i;
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[begin..i].iter().collect())
        } else if c.is_ascii_digit()
            || (c == '-' && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit()))
        {
            i += 1;
            let digits = |i: &mut usize| {
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                }
            };
            digits(&mut i);
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                digits(&mut i);
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    digits(&mut i);
                }
            }
            Tok::Number(chars[begin..i].iter().collect())
        } else if ";+*()[]{},=".contains(c) {
            i += 1;
            Tok::Punct(c)
        } else {
            return Err(ExprError::Syntax {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        column += i - begin;
        out.push(Token {
            tok,
            line: start.0,
            column: start.1,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ExprError {
        let t = &self.tokens[self.pos];
        ExprError::Syntax {
            line: t.line,
            column: t.column,
            message: format!("expected {expected}, found {}", describe(&t.tok)),
        }
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(&format!("`{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<usize> {
        if let Tok::Number(s) = self.peek() {
            if let Ok(n) = s.parse::<usize>() {
                self.next();
                return Ok(n);
            }
        }
        Err(self.error_here("a non-negative integer"))
    }

    fn float(&mut self) -> Result<f64> {
        if let Tok::Number(s) = self.peek() {
            if let Ok(x) = s.parse::<f64>() {
                if x.is_finite() {
                    self.next();
                    return Ok(x);
                }
            }
        }
        Err(self.error_here("a finite number"))
    }

    fn seq(&mut self) -> Result<Expr> {
        let mut left = self.sum()?;
        while self.eat(';') {
            left = Expr::seq(left, self.sum()?);
        }
        Ok(left)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut left = self.prod()?;
        while self.eat('+') {
            left = Expr::sum(left, self.prod()?);
        }
        Ok(left)
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut left = self.atom()?;
        while self.eat('*') {
            left = Expr::tensor(left, self.atom()?);
        }
        Ok(left)
    }

    fn cutoff(&mut self, allowed: bool) -> Result<Option<usize>> {
        if *self.peek() != Tok::Punct('[') {
            return Ok(None);
        }
        if !allowed {
            return Err(self.error_here("no cutoff on a builtin that ignores it"));
        }
        self.next();
        let n = self.integer()?;
        self.punct(']')?;
        Ok(Some(n))
    }

    fn bracketed(&mut self) -> Result<Expr> {
        self.punct('(')?;
        let e = self.seq()?;
        self.punct(')')?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let word = match self.peek() {
            Tok::Punct('(') => return self.bracketed(),
            Tok::Ident(w) => w.clone(),
            _ => return Err(self.error_here("an expression")),
        };
        self.next();
        if !is_keyword(&word) {
            return Ok(Expr::Var(word));
        }
        if let Some(op) = Constant::ALL.into_iter().find(|c| c.keyword() == word) {
            let cutoff = self.cutoff(op.uses_cutoff())?;
            return Ok(Expr::Const { op, cutoff });
        }
        if let Some(op) = Ladder::ALL.into_iter().find(|c| c.keyword() == word) {
            let cutoff = self.cutoff(true)?;
            let arg = Box::new(self.bracketed()?);
            return Ok(Expr::Ladder { op, cutoff, arg });
        }
        if let Some(op) = Indexed::ALL.into_iter().find(|c| c.keyword() == word) {
            let cutoff = self.cutoff(op.uses_cutoff())?;
            self.punct('(')?;
            let n = self.integer()?;
            self.punct(')')?;
            return Ok(Expr::Indexed { op, cutoff, n });
        }
        match word.as_str() {
            "name" => Ok(Expr::Name(Box::new(self.bracketed()?))),
            "dag" => Ok(Expr::Dag(Box::new(self.bracketed()?))),
            "scale" => {
                self.punct('(')?;
                let re = self.float()?;
                self.punct(',')?;
                let im = self.float()?;
                self.punct(',')?;
                let body = Box::new(self.seq()?);
                self.punct(')')?;
                Ok(Expr::Scale { re, im, body })
            }
            "with" => self.with(),
            _ => unreachable!("keyword table covers {word}"),
        }
    }

    fn with(&mut self) -> Result<Expr> {
        self.punct('(')?;
        let (mut dim, mut cutoff) = (None, None);
        loop {
            let key = match self.peek() {
                Tok::Ident(k) if k == "d" || k == "N" => k.clone(),
                _ => return Err(self.error_here("`d` or `N`")),
            };
            let slot = if key == "d" { &mut dim } else { &mut cutoff };
            if slot.is_some() {
                return Err(self.error_here(&format!("`{key}` only once")));
            }
            self.next();
            self.punct('=')?;
            let value = self.integer()?;
            *slot = Some(value);
            if !self.eat(',') {
                break;
            }
        }
        self.punct(')')?;
        self.punct('{')?;
        let body = Box::new(self.seq()?);
        self.punct('}')?;
        Ok(Expr::With { dim, cutoff, body })
    }
}

/// Parses a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let e = p.seq()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here("`;`, `+`, `*` or end of input"));
    }
    Ok(e)
}
