//! Brace notation.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := '~' term | '{' opts '|' opts '}' | INT | '*'
//! opts  := <empty> | '.' | item (',' item)*
//! item  := expr | '#'
//! INT   := '-'? [0-9]+
//! ```
//!
//! `#` marks a tombstone on its side, `~` conjugates, a negative integer is
//! the conjugate of the positive one. Whitespace is ignored. The middle dot
//! `·` is accepted as a synonym for `.`.

use std::fmt::Write;

use super::{Arena, FormId};
use crate::error::{Error, Result};

struct Parser<'s, 'a> {
    text: &'s str,
    pos: usize,
    arena: &'a mut Arena,
}

impl Parser<'_, '_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn expr(&mut self) -> Result<FormId> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let t = self.term()?;
            acc = self.arena.sum(acc, t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FormId> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                let t = self.term()?;
                Ok(self.arena.conjugate(t))
            }
            Some('*') => {
                self.pos += 1;
                Ok(self.arena.star())
            }
            Some('{') => {
                self.pos += 1;
                let (left, lt) = self.opts()?;
                self.expect('|')?;
                let (right, rt) = self.opts()?;
                self.expect('}')?;
                self.arena.make(&left, &right, lt, rt)
            }
            Some(c) if c == '-' || c.is_ascii_digit() => self.integer(),
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<FormId> {
        let start = self.pos;
        if self.text[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        let digits = self.text[self.pos..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.error("expected digits");
        }
        self.pos += digits;
        let value: i64 = match self.text[start..self.pos].parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.error("integer out of range");
            }
        };
        self.arena.integer(value).map_err(|e| Error::Parse {
            position: start,
            message: e.to_string(),
        })
    }

    fn opts(&mut self) -> Result<(Vec<FormId>, bool)> {
        let mut items = Vec::new();
        let mut tomb = false;
        match self.peek() {
            Some('|') | Some('}') => return Ok((items, tomb)),
            Some('.') | Some('·') => {
                self.bump();
                return Ok((items, tomb));
            }
            _ => {}
        }
        loop {
            if self.peek() == Some('#') {
                self.pos += 1;
                tomb = true;
            } else {
                items.push(self.expr()?);
            }
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                return Ok((items, tomb));
            }
        }
    }
}

impl Arena {
    /// Parses an expression, interning every form it mentions.
    pub fn parse(&mut self, text: &str) -> Result<FormId> {
        let mut p = Parser {
            text,
            pos: 0,
            arena: self,
        };
        let g = p.expr()?;
        match p.peek() {
            None => Ok(g),
            Some(c) => p.error(format!("unexpected '{c}' after expression")),
        }
    }

    /// The integer value of `g` if it is an integer form.
    pub fn as_integer(&self, g: FormId) -> Option<i64> {
        let mut n = 0i64;
        let mut x = g;
        let mut sign = 0i64;
        loop {
            let f = self.form(x);
            if f.left_tombstone || f.right_tombstone {
                return None;
            }
            match (f.left, f.right) {
                ([], []) => return Some(n),
                ([y], []) if sign >= 0 => {
                    sign = 1;
                    n += 1;
                    x = *y;
                }
                ([], [y]) if sign <= 0 => {
                    sign = -1;
                    n -= 1;
                    x = *y;
                }
                _ => return None,
            }
        }
    }

    /// Canonical notation: options in ascending id order, tombstone first,
    /// integers and `*` abbreviated.
    pub fn print(&self, g: FormId) -> String {
        let mut out = String::new();
        self.print_into(g, &mut out);
        out
    }

    fn print_into(&self, g: FormId, out: &mut String) {
        if let Some(n) = self.as_integer(g) {
            write!(out, "{n}").unwrap();
            return;
        }
        let f = self.form(g);
        if !f.left_tombstone
            && !f.right_tombstone
            && f.left == [FormId::ZERO]
            && f.right == [FormId::ZERO]
        {
            out.push('*');
            return;
        }
        out.push('{');
        self.print_side(f.left, f.left_tombstone, out);
        out.push('|');
        self.print_side(f.right, f.right_tombstone, out);
        out.push('}');
    }

    fn print_side(&self, opts: &[FormId], tomb: bool, out: &mut String) {
        let mut first = true;
        if tomb {
            out.push('#');
            first = false;
        }
        for &o in opts {
            if !first {
                out.push(',');
            }
            first = false;
            self.print_into(o, out);
        }
    }
}
