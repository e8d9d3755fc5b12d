//! Dense univariate polynomials over `F_q`. The field is passed explicitly
//! to every operation; a `Poly` is just its trimmed coefficient list.

use super::fq::{Fq, FqElem};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: FqElem) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    pub fn one(f: &Fq) -> Poly {
        Poly::constant(f.one())
    }

    /// `a * x^k`
    pub fn monomial(f: &Fq, a: FqElem, k: usize) -> Poly {
        let mut c = vec![f.zero(); k + 1];
        c[k] = a;
        Poly::from_coeffs(c)
    }

    pub fn x(f: &Fq) -> Poly {
        Poly::monomial(f, f.one(), 1)
    }

    /// `x - r`
    pub fn linear(f: &Fq, r: FqElem) -> Poly {
        Poly::from_coeffs(vec![f.neg(r), f.one()])
    }

    pub fn from_coeffs(mut c: Vec<FqElem>) -> Poly {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.c
    }

    pub fn coeff(&self, f: &Fq, i: usize) -> FqElem {
        self.c.get(i).copied().unwrap_or_else(|| f.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> Option<FqElem> {
        self.c.last().copied()
    }

    pub fn add(&self, o: &Poly, f: &Fq) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add(self.coeff(f, i), o.coeff(f, i))).collect();
        Poly::from_coeffs(c)
    }

    pub fn neg(&self, f: &Fq) -> Poly {
        Poly { c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn sub(&self, o: &Poly, f: &Fq) -> Poly {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, a: FqElem, f: &Fq) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&b| f.mul(a, b)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, f: &Fq, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); k];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    pub fn mul(&self, o: &Poly, f: &Fq) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, mut e: u64, f: &Fq) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// `self^p`, using additivity of Frobenius in characteristic `p`.
    pub fn frobenius(&self, f: &Fq) -> Poly {
        let p = f.p() as usize;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); (self.c.len() - 1) * p + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * p] = f.frobenius(a);
        }
        Poly { c }
    }

    pub fn divrem(&self, d: &Poly, f: &Fq) -> Result<(Poly, Poly), AlgebraError> {
        let Some(dd) = d.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let lead_inv = f.inv(d.c[dd])?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (j, &b) in d.c.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(r[idx], f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly, f: &Fq) -> Result<Poly, AlgebraError> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly, f: &Fq) -> Option<Poly> {
        let (q, r) = self.divrem(d, f).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, a: FqElem, f: &Fq) -> FqElem {
        self.c.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn derivative(&self, f: &Fq) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Poly::from_coeffs(c)
    }

    /// `self(x + r)`, by Horner in the shifted variable.
    pub fn taylor_shift(&self, r: FqElem, f: &Fq) -> Poly {
        let lin = Poly::from_coeffs(vec![r, f.one()]);
        let mut acc = Poly::zero();
        for &c in self.c.iter().rev() {
            acc = acc.mul(&lin, f).add(&Poly::constant(c), f);
        }
        acc
    }

    pub fn monic(&self, f: &Fq) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(f.inv(l).expect("nonzero lead"), f),
        }
    }

    /// Monic gcd (zero if both inputs vanish).
    pub fn gcd(&self, o: &Poly, f: &Fq) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Roots in `F_q`, by exhaustive evaluation, in increasing index order.
    pub fn roots(&self, f: &Fq) -> Vec<FqElem> {
        f.elements().filter(|&a| self.eval(a, f).is_zero()).collect()
    }

    /// Render in the variable `var`, highest degree first.
    pub fn format(&self, f: &Fq, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let term = format_term(f, a, var, i as i64);
            push_term(&mut out, &term);
        }
        out
    }
}

/// `a * var^e` with the usual elisions (`x`, `2*x^3`, `(w+1)*x`).
pub(crate) fn format_term(f: &Fq, a: FqElem, var: &str, e: i64) -> String {
    let mono = match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    };
    if e == 0 {
        return f.format(a);
    }
    if a == f.one() {
        return mono;
    }
    if f.is_compound(a) {
        format!("({})*{mono}", f.format(a))
    } else {
        format!("{}*{mono}", f.format(a))
    }
}

pub(crate) fn push_term(out: &mut String, term: &str) {
    if !out.is_empty() {
        out.push('+');
    }
    out.push_str(term);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let f = Fq::new(5, 1).unwrap();
        let a = Poly::from_coeffs([1, 2, 3, 4, 1].iter().map(|&v| f.from_int(v)).collect());
        let b = Poly::from_coeffs([3, 0, 1].iter().map(|&v| f.from_int(v)).collect());
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn taylor_shift_evaluates() {
        let f = Fq::new(3, 2).unwrap();
        let w = f.gen_w();
        let a = Poly::from_coeffs(vec![w, f.one(), f.from_int(2), w]);
        let s = a.taylor_shift(w, &f);
        for t in f.elements() {
            assert_eq!(s.eval(t, &f), a.eval(f.add(t, w), &f));
        }
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = Fq::new(2, 2).unwrap();
        let a = Poly::from_coeffs(vec![f.gen_w(), f.one(), f.zero(), f.gen_w()]);
        assert_eq!(a.frobenius(&f), a.pow(2, &f));
    }

    #[test]
    fn format_examples() {
        let f = Fq::prime(3).unwrap();
        let a = Poly::from_coeffs(vec![f.one(), f.zero(), f.from_int(2)]);
        assert_eq!(a.format(&f, "x"), "2*x^2+1");
    }
}
