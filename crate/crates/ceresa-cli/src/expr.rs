//! Parser for exact polynomial expressions over a fixed variable list,
//! e.g. `a*d - 2*(b + c)^2 + 7/3`.

use ceresa_core::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

/// Parses `text` as a polynomial in the named variables and returns it as
/// an exact scalar with arity `vars.len()`.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<Scalar, String> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, vars };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(format!("unexpected trailing input at byte {} of {text:?}", p.pos));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<Scalar, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.bump();
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.bump();
                    let rhs = self.factor()?;
                    let r = rhs
                        .as_rational()
                        .ok_or_else(|| "division is only defined by constants".to_string())?;
                    if r.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&r.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, String> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let exp: u32 = self
                .uint()?
                .try_into()
                .map_err(|_| "exponent too large".to_string())?;
            let mut acc = Scalar::from_int(1, self.vars.len());
            for _ in 0..exp {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, String> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err("expected a closing parenthesis".into());
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.uint()?;
                if self.peek_tight() == Some(b'/') {
                    // a rational literal like 3/2 binds tighter than division
                    self.pos += 1;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err("zero denominator".into());
                    }
                    return Ok(Scalar::from_rational(
                        BigRational::new(num, den),
                        self.vars.len(),
                    ));
                }
                Ok(Scalar::from_rational(
                    BigRational::from_integer(num),
                    self.vars.len(),
                ))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.text[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Scalar::var(i, self.vars.len())),
                    None => Err(format!("unknown variable {name:?}")),
                }
            }
            Some(b) => Err(format!("unexpected character {:?}", b as char)),
            None => Err("unexpected end of expression".into()),
        }
    }

    /// Peeks without skipping whitespace, so `3 / x` is a division while
    /// `3/2` is a rational literal.
    fn peek_tight(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err("expected a number".into());
        }
        core::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| format!("bad integer: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    fn render(s: &Scalar) -> String {
        s.render(&vars())
    }

    #[test]
    fn polynomials_round_trip() {
        let v = vars();
        assert_eq!(render(&parse_expr("a*b - 3", &v).unwrap()), "a*b - 3");
        assert_eq!(render(&parse_expr("(a + b)^2", &v).unwrap()), "a^2 + 2*a*b + b^2");
        assert_eq!(render(&parse_expr("-a", &v).unwrap()), "-a");
        assert_eq!(render(&parse_expr("3/2*a", &v).unwrap()), "3/2*a");
        assert_eq!(render(&parse_expr("a/2", &v).unwrap()), "1/2*a");
        assert_eq!(render(&parse_expr("2 - - 1", &v).unwrap()), "3");
    }

    #[test]
    fn rejects_bad_input() {
        let v = vars();
        assert!(parse_expr("a/b", &v).is_err(), "polynomial division rejected");
        assert!(parse_expr("1/0", &v).is_err(), "division by zero rejected");
        assert!(parse_expr("x + 1", &v).is_err(), "unknown variable rejected");
        assert!(parse_expr("a +", &v).is_err(), "dangling operator rejected");
        assert!(parse_expr("a ^ a", &v).is_err(), "exponent must be a number");
        assert!(parse_expr("(a", &v).is_err(), "unclosed parenthesis rejected");
    }
}
