//! Polynomial, rational and matrix text formats.
//!
//! Polynomial grammar (whitespace is ignored):
//!
//! ```text
//! poly  := ['+' | '-'] term (('+' | '-') term)*
//! term  := coeff ['*'] ['x' ['^' int]] | 'x' ['^' int]
//! coeff := int ['/' int]
//! ```

use std::fmt;

use edcert_core::{BigInt, FormalPoly, Mat2, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an integer"))?;
        Ok(d.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an exponent"))?;
        d.parse().map_err(|_| ParseError {
            position: at,
            message: "exponent too large".into(),
        })
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let num = self.integer()?;
        if !self.eat('/') {
            return Ok(Some(Rational::from_integer(num)));
        }
        let at = self.pos;
        let den = self.integer()?;
        if den.is_zero() {
            return Err(ParseError {
                position: at,
                message: "zero denominator".into(),
            });
        }
        Ok(Some(Rational::new(num, den)))
    }

    /// One term without its sign: `(coefficient, exponent)`.
    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        let coeff = self.coefficient()?;
        let starred = coeff.is_some() && self.eat('*');
        if self.eat('x') {
            let exp = if self.eat('^') { self.exponent()? } else { 1 };
            return Ok((coeff.unwrap_or_else(Rational::one), exp));
        }
        if starred {
            return Err(self.error("expected 'x' after '*'"));
        }
        coeff
            .map(|c| (c, 0))
            .ok_or_else(|| self.error("expected a coefficient or 'x'"))
    }
}

/// Parses a polynomial. The formal degree is the largest exponent with a
/// nonzero combined coefficient (0 for the zero polynomial), or
/// `formal_degree` when given; an override below the actual degree is an
/// error.
pub fn parse_poly(text: &str, formal_degree: Option<usize>) -> Result<FormalPoly, ParseError> {
    let mut cur = Cursor::new(text);
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else if cur.peek().is_none() {
            break;
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
        first = false;
        let (c, e) = cur.term()?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        if negative {
            coeffs[e] -= c;
        } else {
            coeffs[e] += c;
        }
        if cur.peek().is_none() {
            break;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    match formal_degree {
        None => Ok(FormalPoly::new(coeffs)),
        Some(n) => FormalPoly::with_formal_degree(coeffs, n).map_err(|e| ParseError {
            position: text.len(),
            message: e.to_string(),
        }),
    }
}

/// Human-readable form, highest power first, e.g. `x^4 - 14x^2 + 9`.
/// Accepted by [`parse_poly`]; the formal degree is not encoded.
pub fn format_poly(poly: &FormalPoly) -> String {
    let mut out = String::new();
    for (i, c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if i == 0 || !magnitude.is_one() {
            out.push_str(&magnitude.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `n`, `-n`, `n/d` or `-n/d`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut cur = Cursor::new(text);
    let negative = cur.eat('-');
    if !negative {
        cur.eat('+');
    }
    let q = cur
        .coefficient()?
        .ok_or_else(|| cur.error("expected a rational"))?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after rational"));
    }
    Ok(if negative { -q } else { q })
}

/// Always `num/den`, including integers (`3/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"a,b;c,d"` into a nonsingular matrix.
pub fn parse_matrix(text: &str) -> Result<Mat2, ParseError> {
    let rows: Vec<&str> = text.split(';').collect();
    let entries: Vec<&str> = rows.iter().flat_map(|r| r.split(',')).collect();
    if rows.len() != 2 || entries.len() != 4 || rows.iter().any(|r| r.split(',').count() != 2) {
        return Err(ParseError {
            position: 0,
            message: "matrix must look like \"a,b;c,d\"".into(),
        });
    }
    let mut offset = 0;
    let mut vals = Vec::with_capacity(4);
    for e in text.split([';', ',']) {
        vals.push(parse_rational(e).map_err(|mut err| {
            err.position += offset;
            err
        })?);
        offset += e.len() + 1;
    }
    let [a, b, c, d]: [Rational; 4] = vals.try_into().expect("four entries");
    Mat2::new(a, b, c, d).map_err(|e| ParseError {
        position: 0,
        message: e.to_string(),
    })
}

/// Comma-separated list of integers.
pub fn parse_int_list(text: &str) -> Result<Vec<BigInt>, ParseError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for item in text.split(',') {
        let trimmed = item.trim();
        let value = trimmed.parse::<BigInt>().map_err(|_| ParseError {
            position: offset,
            message: format!("not an integer: {trimmed:?}"),
        })?;
        out.push(value);
        offset += item.len() + 1;
    }
    Ok(out)
}
