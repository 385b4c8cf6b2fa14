// expr   := ['-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' uint)?
// base   := var | int ('/' uint)? | '(' expr ')'

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ExactPoly, PolyError, VarSet};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
}

pub(super) fn parse(text: &str, vars: &VarSet) -> Result<ExactPoly, PolyError> {
    let mut p = Parser { src: text, bytes: text.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error(format!("unexpected `{}`", p.bytes[p.pos] as char)));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactPoly, PolyError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExactPoly, PolyError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn base(&mut self) -> Result<ExactPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        self.pos = at;
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(ExactPoly::constant(self.vars, BigRational::new(n, d)));
                }
                self.pos = save;
                Ok(ExactPoly::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.bytes.len() && self.bytes[self.pos] == b'\'' {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.vars.index_of(name) {
                    Some(i) => Ok(ExactPoly::var_at(self.vars, i)),
                    None => Err(PolyError::UnknownVariable(name.to_string())),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn xy() -> VarSet {
        VarSet::xy()
    }

    #[test]
    fn reads_terms_directly() {
        let p = parse("x^2*y - 1/2", &xy()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2, 1]), rat(1));
        assert_eq!(p.coeff(&[0, 0]), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn zero_and_binomial() {
        assert!(parse("0", &xy()).unwrap().is_zero());
        assert_eq!(parse("(x+y)^2", &xy()).unwrap(), parse("x^2 + 2*x*y + y^2", &xy()).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        match parse("x + * y", &xy()) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x*w", &xy()), Err(PolyError::UnknownVariable(n)) if n == "w"));
        assert!(matches!(parse("2x", &xy()), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("(x+1", &xy()), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("1/0", &xy()), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("", &xy()), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn primed_identifiers() {
        let v = VarSet::new(["x", "x'", "x''"]).unwrap();
        let p = parse("x' * x'' - x", &v).unwrap();
        assert_eq!(p.coeff(&[0, 1, 1]), rat(1));
        assert_eq!(p.coeff(&[1, 0, 0]), rat(-1));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse(" x ^ 2 *  y-1 / 3 ", &xy()).unwrap(), parse("x^2*y-1/3", &xy()).unwrap());
    }
}
