use crate::algebra::{CoordinateRing, FqElem, Mode, PartialFractions, RingElem};
use crate::witt::{WittRing, WittVector};

use super::{AswError, Window};

/// Coordinate slot of a reduced Witt vector: component (1-based), kind
/// (0 constant, 1 polynomial part, `2 + t` pole at the `t`-th root),
/// exponent and `F_p`-digit of the coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub comp: u16,
    pub kind: u16,
    pub j: u32,
    pub digit: u16,
}

/// Reduction to canonical coset representatives modulo `P(W_n(A))`
/// (and modulo constants in geometric mode).
#[derive(Clone)]
pub struct Reducer {
    ring: CoordinateRing,
    witt: WittRing<CoordinateRing>,
    d: usize,
}

impl Reducer {
    pub fn new(ring: &CoordinateRing, n: usize, win: Window) -> Result<Reducer, AswError> {
        let witt = WittRing::new(ring.clone(), n)?;
        Ok(Reducer { ring: ring.clone(), witt, d: win.d })
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn witt(&self) -> &WittRing<CoordinateRing> {
        &self.witt
    }

    pub fn n(&self) -> usize {
        self.witt.n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Working bound on degree and pole orders of component `i`: `p^{i-1} d`.
    /// Witt addition is isobaric when component `i` has weight `p^{i-1}`,
    /// so nothing produced during reduction exceeds it.
    pub fn bound(&self, i: usize) -> usize {
        (self.ring.p() as usize).pow(i as u32 - 1) * self.d
    }

    fn check_component(&self, i: usize, pf: &PartialFractions) -> Result<(), AswError> {
        let order = pf.max_order();
        let bound = self.bound(i);
        if order > bound {
            return Err(AswError::NotInWindow { component: i, order, bound });
        }
        Ok(())
    }

    pub fn check_bounds(&self, w: &WittVector<RingElem>) -> Result<(), AswError> {
        for (i, c) in w.components().iter().enumerate() {
            self.check_component(i + 1, &self.ring.partial_fractions(c))?;
        }
        Ok(())
    }

    /// Level-one step on one component. Returns `b` with `z - (b^p - b)`
    /// reduced (up to the constant handled by the caller) and, in geometric
    /// mode, the constant to strip.
    fn level_one(&self, pf: &PartialFractions) -> (PartialFractions, Option<FqElem>) {
        let f = self.ring.fq();
        let p = self.ring.p() as usize;
        let mut z = pf.clone();
        let mut b = PartialFractions {
            poly: vec![f.zero(); z.poly.len()],
            poles: z.poles.iter().map(|v| vec![f.zero(); v.len()]).collect(),
        };
        for j in (1..z.poly.len()).rev() {
            let c = z.poly[j];
            if j % p == 0 && !c.is_zero() {
                let r = f.frobenius_root(c);
                z.poly[j] = f.zero();
                z.poly[j / p] = f.add(z.poly[j / p], r);
                b.poly[j / p] = f.add(b.poly[j / p], r);
            }
        }
        for (zt, bt) in z.poles.iter_mut().zip(b.poles.iter_mut()) {
            for j in (1..=zt.len()).rev() {
                let c = zt[j - 1];
                if j % p == 0 && !c.is_zero() {
                    let r = f.frobenius_root(c);
                    zt[j - 1] = f.zero();
                    zt[j / p - 1] = f.add(zt[j / p - 1], r);
                    bt[j / p - 1] = f.add(bt[j / p - 1], r);
                }
            }
        }
        let c0 = z.poly[0];
        let mut strip = None;
        if !c0.is_zero() {
            match self.ring.mode() {
                Mode::Geometric => strip = Some(c0),
                Mode::Arithmetic => {
                    let t = f.from_int(f.trace(c0) as i64);
                    let target = f.sub(c0, f.mul(t, f.trace_one()));
                    let a = f.solve_artin_schreier(target).expect("trace-zero elements lie in the image");
                    b.poly[0] = f.add(b.poly[0], a);
                }
            }
        }
        (b, strip)
    }

    pub fn reduce(&self, w: &WittVector<RingElem>) -> Result<WittVector<RingElem>, AswError> {
        self.witt.check(w)?;
        let ring = &self.ring;
        let mut w = w.clone();
        for i in 1..=self.n() {
            let pf = ring.partial_fractions(&w.components()[i - 1]);
            self.check_component(i, &pf)?;
            let (b, strip) = self.level_one(&pf);
            let b = ring.from_partial_fractions(&b);
            if !b.is_zero() {
                let v = self.witt.shift_into(i - 1, &[b]);
                w = self.witt.sub_unchecked(&w, &self.witt.p_map_unchecked(&v));
            }
            if let Some(c) = strip {
                let v = self.witt.shift_into(i - 1, &[ring.constant(c)]);
                w = self.witt.sub_unchecked(&w, &v);
            }
        }
        self.check_bounds(&w)?;
        debug_assert!(self.is_reduced(&w));
        Ok(w)
    }

    pub fn is_reduced(&self, w: &WittVector<RingElem>) -> bool {
        let f = self.ring.fq();
        let p = self.ring.p() as usize;
        w.components().iter().all(|c| {
            let pf = self.ring.partial_fractions(c);
            let c0 = pf.poly[0];
            let const_ok = match self.ring.mode() {
                Mode::Geometric => c0.is_zero(),
                Mode::Arithmetic => c0 == f.mul(f.from_int(f.trace(c0) as i64), f.trace_one()),
            };
            const_ok
                && pf.poly.iter().enumerate().skip(1).all(|(j, c)| j % p != 0 || c.is_zero())
                && pf.poles.iter().all(|v| v.iter().enumerate().all(|(jm1, c)| (jm1 + 1) % p != 0 || c.is_zero()))
        })
    }

    /// Nonzero `F_p`-coordinates of a reduced vector, sorted by position.
    pub fn coords(&self, w: &WittVector<RingElem>) -> Vec<(Pos, u32)> {
        let f = self.ring.fq();
        let mut out = Vec::new();
        for (i, c) in w.components().iter().enumerate() {
            let comp = i as u16 + 1;
            let pf = self.ring.partial_fractions(c);
            if self.ring.mode() == Mode::Arithmetic {
                let t = f.trace(pf.poly[0]);
                if t != 0 {
                    out.push((Pos { comp, kind: 0, j: 0, digit: 0 }, t));
                }
            }
            let mut push = |kind: u16, j: usize, c: FqElem| {
                for (k, &dig) in f.coeffs(c).iter().enumerate() {
                    if dig != 0 {
                        out.push((Pos { comp, kind, j: j as u32, digit: k as u16 }, dig));
                    }
                }
            };
            for (j, &c) in pf.poly.iter().enumerate().skip(1) {
                push(1, j, c);
            }
            for (t, v) in pf.poles.iter().enumerate() {
                for (jm1, &c) in v.iter().enumerate() {
                    push(2 + t as u16, jm1 + 1, c);
                }
            }
        }
        out.sort();
        out
    }

    /// `reduce(u + v)`
    pub fn add(&self, u: &WittVector<RingElem>, v: &WittVector<RingElem>) -> Result<WittVector<RingElem>, AswError> {
        self.reduce(&self.witt.add(u, v)?)
    }

    /// `reduce(u - v)`
    pub fn sub(&self, u: &WittVector<RingElem>, v: &WittVector<RingElem>) -> Result<WittVector<RingElem>, AswError> {
        self.reduce(&self.witt.sub(u, v)?)
    }

    /// `reduce(k u)`
    pub fn scalar(&self, k: u64, u: &WittVector<RingElem>) -> Result<WittVector<RingElem>, AswError> {
        self.reduce(&self.witt.scalar_mul(k, u)?)
    }

    /// Additive order of the class of `u` (a power of `p` dividing `p^n`),
    /// found by repeated multiplication by `p`.
    pub fn order(&self, u: &WittVector<RingElem>) -> Result<u64, AswError> {
        let p = self.ring.p() as u64;
        let mut cur = self.reduce(u)?;
        let mut ord = 1u64;
        while !self.witt.is_zero(&cur) {
            cur = self.scalar(p, &cur)?;
            ord *= p;
        }
        Ok(ord)
    }
}

/// Canonical representative of `w` modulo `P(W_n(A))` (and constants in
/// geometric mode). Components may have degree and pole order up to
/// `p^{i-1} d` in component `i`.
pub fn reduce_representative(
    ring: &CoordinateRing,
    w: &WittVector<RingElem>,
    win: Window,
) -> Result<WittVector<RingElem>, AswError> {
    Reducer::new(ring, w.len(), win)?.reduce(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::descriptor::parse_ring;
    use crate::algebra::Fq;

    #[test]
    fn x_squared_reduces_to_x() {
        let a = parse_ring("F(2,1)[x]", Mode::Geometric).unwrap();
        let r = Reducer::new(&a, 1, Window::new(2)).unwrap();
        let w = r.witt().from_components(vec![a.monomial(a.fq().one(), 2)]).unwrap();
        assert_eq!(r.reduce(&w).unwrap().components()[0], a.x());
    }

    #[test]
    fn inverse_cube_reduces_to_inverse() {
        let a = parse_ring("F(3,1)[x,1/x]", Mode::Geometric).unwrap();
        let one = a.fq().one();
        let r = Reducer::new(&a, 1, Window::new(3)).unwrap();
        let w = r.witt().from_components(vec![a.pole_monomial(one, 0, 3)]).unwrap();
        assert_eq!(r.reduce(&w).unwrap().components()[0], a.pole_monomial(one, 0, 1));
    }

    #[test]
    fn window_violation() {
        let f = Fq::prime(2).unwrap();
        let a = CoordinateRing::affine_line(&f, Mode::Geometric);
        let r = Reducer::new(&a, 1, Window::new(2)).unwrap();
        let w = r.witt().from_components(vec![a.monomial(f.one(), 3)]).unwrap();
        assert!(matches!(r.reduce(&w), Err(AswError::NotInWindow { .. })));
    }

    #[test]
    fn arithmetic_constants_survive() {
        let f = Fq::new(2, 2).unwrap();
        let a = CoordinateRing::affine_line(&f, Mode::Arithmetic);
        let r = Reducer::new(&a, 2, Window::new(1)).unwrap();
        for c in f.elements() {
            let w = r.witt().teichmuller(a.constant(c));
            let red = r.reduce(&w).unwrap();
            assert!(r.is_reduced(&red));
            // the class of [c] is trivial exactly when Tr(c) = 0 at level one
            assert_eq!(red.components()[0].is_zero(), f.trace(c) == 0);
        }
    }
}
