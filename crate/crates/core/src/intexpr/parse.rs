use super::{IntExpr, IntExprError};
use crate::slp::Nat;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '#' {
                let rest = &self.text[self.pos..];
                self.pos += rest.find('\n').unwrap_or(rest.len());
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, IntExprError> {
        Err(IntExprError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<IntExpr, IntExprError> {
        let mut e = self.term()?;
        while self.eat("|") {
            e = IntExpr::union(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<IntExpr, IntExprError> {
        let mut e = self.factor()?;
        while self.eat("+") {
            e = IntExpr::sum(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<IntExpr, IntExprError> {
        let mut e = self.atom()?;
        loop {
            if self.eat("*") {
                e = IntExpr::star(e);
            } else if self.eat("x2") {
                e = IntExpr::double(e);
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<IntExpr, IntExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(")") {
                    return self.fail("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.text[start..]
                    .bytes()
                    .take_while(u8::is_ascii_digit)
                    .count();
                self.pos += digits;
                let n: Nat = self.text[start..self.pos].parse().expect("digits");
                Ok(IntExpr::Const(n))
            }
            Some(c) => self.fail(format!("unexpected {c:?}")),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses `expr := term ('|' term)*`, `term := factor ('+' factor)*`,
/// `factor := atom ('*' | 'x2')*`, `atom := number | '(' expr ')'`.
/// `#` starts a comment running to the end of the line.
pub fn parse_expr(text: &str) -> Result<IntExpr, IntExprError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    Ok(e)
}
