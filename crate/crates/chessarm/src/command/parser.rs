//! Hand-rolled parser for the query grammar.
//!
//! Keywords are case-insensitive and whitespace between tokens is free.
//! Errors carry the byte offset of the offending token plus a hint for
//! what was expected there.

use super::{Command, CommandError};

/// Parse one query line.
pub fn parse_command(text: &str) -> Result<Command, CommandError> {
    let mut scan = Scanner::new(text);
    let (offset, word) = scan.word("a command keyword (go, move, return, grab, release)")?;
    let cmd = if word.eq_ignore_ascii_case("go") {
        scan.keyword("to", "`to`")?;
        let (axis_at, axis) = scan.word("`x` or `y`")?;
        if axis.eq_ignore_ascii_case("x") {
            Command::GoToX(scan.integer()?)
        } else if axis.eq_ignore_ascii_case("y") {
            Command::GoToY(scan.integer()?)
        } else {
            return Err(err(axis_at, "`x` or `y`"));
        }
    } else if word.eq_ignore_ascii_case("move") {
        let (kind_at, kind) = scan.word("`to` or `from`")?;
        if kind.eq_ignore_ascii_case("to") {
            let (x, y) = scan.cell_pair()?;
            Command::MoveTo(x, y)
        } else if kind.eq_ignore_ascii_case("from") {
            let (x, y) = scan.cell_pair()?;
            scan.keyword("to", "`to`")?;
            let (x1, y1) = scan.cell_pair()?;
            Command::MoveFrom(x, y, x1, y1)
        } else {
            return Err(err(kind_at, "`to` or `from`"));
        }
    } else if word.eq_ignore_ascii_case("return") {
        scan.keyword("to", "`to`")?;
        scan.keyword("o", "`o`")?;
        Command::ReturnToO
    } else if word.eq_ignore_ascii_case("grab") {
        Command::Grab
    } else if word.eq_ignore_ascii_case("release") {
        Command::Release
    } else {
        return Err(err(offset, "a command keyword (go, move, return, grab, release)"));
    };
    scan.finish()?;
    Ok(cmd)
}

fn err(offset: usize, expected: &str) -> CommandError {
    CommandError::Syntax { offset, expected: expected.to_string() }
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    /// Next run of alphabetic characters, with its start offset.
    fn word(&mut self, expected: &str) -> Result<(usize, &'a str), CommandError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if len == 0 {
            return Err(err(start, expected));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn keyword(&mut self, kw: &str, expected: &str) -> Result<(), CommandError> {
        let (at, word) = self.word(expected)?;
        if word.eq_ignore_ascii_case(kw) {
            Ok(())
        } else {
            Err(err(at, expected))
        }
    }

    fn char(&mut self, c: char, expected: &str) -> Result<(), CommandError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(err(self.pos, expected))
        }
    }

    fn integer(&mut self) -> Result<i64, CommandError> {
        self.skip_ws();
        let start = self.pos;
        let mut len = 0;
        let bytes = self.rest().as_bytes();
        if bytes.first() == Some(&b'-') {
            len += 1;
        }
        let digits = bytes[len..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(err(start, "an integer"));
        }
        len += digits;
        self.pos += len;
        self.text[start..start + len]
            .parse()
            .map_err(|_| err(start, "an integer in range"))
    }

    /// `[ <int> , <int> ]`
    fn cell_pair(&mut self) -> Result<(i64, i64), CommandError> {
        self.char('[', "`[`")?;
        let x = self.integer()?;
        self.char(',', "`,`")?;
        let y = self.integer()?;
        self.char(']', "`]`")?;
        Ok((x, y))
    }

    fn finish(&mut self) -> Result<(), CommandError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(err(self.pos, "end of input"))
        }
    }
}
