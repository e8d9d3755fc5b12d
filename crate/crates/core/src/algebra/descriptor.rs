//! Text forms: ring descriptors `F(p,m)[x,1/h]` and rational expressions
//! in `x` (the curve coordinate) and `w` (the field generator).

use super::fq::Fq;
use super::poly::Poly;
use super::ring::{CoordinateRing, Mode, RingElem};
use super::AlgebraError;

/// A rational function `num / den` over `F_q`.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: Poly,
    pub den: Poly,
}

impl Frac {
    fn poly(num: Poly, f: &Fq) -> Frac {
        Frac { num, den: Poly::one(f) }
    }

    fn add(&self, o: &Frac, f: &Fq) -> Frac {
        let num = self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f);
        Frac { num, den: self.den.mul(&o.den, f) }.reduce(f)
    }

    fn mul(&self, o: &Frac, f: &Fq) -> Frac {
        Frac { num: self.num.mul(&o.num, f), den: self.den.mul(&o.den, f) }.reduce(f)
    }

    fn inv(&self) -> Result<Frac, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Frac { num: self.den.clone(), den: self.num.clone() })
    }

    fn neg(&self, f: &Fq) -> Frac {
        Frac { num: self.num.neg(f), den: self.den.clone() }
    }

    fn reduce(self, f: &Fq) -> Frac {
        if self.num.is_zero() {
            return Frac::poly(Poly::zero(), f);
        }
        let g = self.num.gcd(&self.den, f);
        let mut num = self.num.div_exact(&g, f).unwrap();
        let mut den = self.den.div_exact(&g, f).unwrap();
        let l = f.inv(den.lead().unwrap()).unwrap();
        num = num.scale(l, f);
        den = den.scale(l, f);
        Frac { num, den }
    }

    fn pow(&self, e: i64, f: &Fq) -> Result<Frac, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Frac { num: base.num.pow(e, f), den: base.den.pow(e, f) })
    }
}

/// Parse a ring descriptor such as `F(5,1)[x,1/(x*(x-1))]` or `F(2,1)[x]`.
pub fn parse_ring(s: &str, mode: Mode) -> Result<CoordinateRing, AlgebraError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = t
        .strip_prefix("Fq(")
        .or_else(|| t.strip_prefix("F("))
        .ok_or_else(|| perr(s, "expected `F(p,m)`"))?;
    let close = rest.find(')').ok_or_else(|| perr(s, "unclosed `F(`"))?;
    let params: Vec<&str> = rest[..close].split(',').collect();
    let num = |x: &str| x.parse::<u64>().map_err(|_| perr(s, "bad field parameter"));
    let (p, m) = match params.as_slice() {
        [p] => (num(p)?, 1),
        [p, m] => (num(p)?, num(m)? as u32),
        _ => return Err(perr(s, "expected `F(p,m)`")),
    };
    let fq = Fq::new(p, m)?;
    let tail = &rest[close + 1..];
    let body = tail
        .strip_prefix("[x")
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| perr(s, "expected `[x,1/h]`"))?;
    let h = if body.is_empty() {
        Poly::one(&fq)
    } else {
        let hs = body.strip_prefix(",1/").ok_or_else(|| perr(s, "expected `,1/h`"))?;
        let fr = parse_frac(hs, &fq)?;
        if !fr.den.is_constant() {
            return Err(perr(s, "h must be a polynomial"));
        }
        fr.num.scale(fq.inv(fr.den.lead().unwrap())?, &fq)
    };
    CoordinateRing::new(&fq, &h, mode)
}

/// Parse an element of `A`, e.g. `x^3 + 2*(x-1)^-2` or `w*x/(x+1)`.
pub fn parse_elem(s: &str, ring: &CoordinateRing) -> Result<RingElem, AlgebraError> {
    let fr = parse_frac(s, ring.fq())?;
    ring.from_rational(&fr.num, &fr.den)
}

/// Split `(a, b, c)` (or a bare `a`) into top-level comma-separated parts.
pub fn split_tuple(s: &str) -> Vec<String> {
    let t = s.trim();
    let inner = if t.starts_with('(') && t.ends_with(')') && matching_close(t) == Some(t.len() - 1) {
        &t[1..t.len() - 1]
    } else {
        t
    };
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    parts.push(cur.trim().to_string());
    parts
}

fn matching_close(t: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn perr(s: &str, msg: &str) -> AlgebraError {
    AlgebraError::Parse(format!("{msg} in `{s}`"))
}

pub fn parse_frac(s: &str, f: &Fq) -> Result<Frac, AlgebraError> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { t: &toks, i: 0, f, src: s };
    let v = p.expr()?;
    if p.i != toks.len() {
        return Err(perr(s, "trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    t: &'a [char],
    i: usize,
    f: &'a Fq,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.t.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Frac, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.i += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs, self.f) } else { acc.add(&rhs.neg(self.f), self.f) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?, self.f);
                }
                Some('/') => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?.inv()?, self.f);
                }
                // implicit product: `2x`, `x(x-1)`
                Some(c) if c == '(' || c == 'x' || c == 'w' => {
                    acc = acc.mul(&self.unary()?, self.f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, AlgebraError> {
        if self.peek() == Some('-') {
            self.i += 1;
            return Ok(self.unary()?.neg(self.f));
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let neg = if self.peek() == Some('-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            return base.pow(if neg { -e } else { e }, self.f);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, AlgebraError> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(perr(self.src, "expected integer"));
        }
        let s: String = self.t[start..self.i].iter().collect();
        s.parse().map_err(|_| perr(self.src, "integer too large"))
    }

    fn atom(&mut self) -> Result<Frac, AlgebraError> {
        let f = self.f;
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(perr(self.src, "expected `)`"));
                }
                self.i += 1;
                Ok(v)
            }
            Some('x') => {
                self.i += 1;
                Ok(Frac::poly(Poly::x(f), f))
            }
            Some('w') => {
                self.i += 1;
                Ok(Frac::poly(Poly::constant(f.gen_w()), f))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Frac::poly(Poly::constant(f.from_int(n)), f))
            }
            _ => Err(perr(self.src, "unexpected token")),
        }
    }
}
