//! The coordinate ring `A = F_q[x, 1/h]` of the projective line with the
//! roots of `h` and the point at infinity removed.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::fq::{Fq, FqElem};
use super::poly::{format_term, push_term, Poly};
use super::AlgebraError;

/// Whether constant Witt vectors are quotiented out of the cokernel
/// (`Geometric`, emulating an algebraically closed base) or kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mode {
    #[default]
    Geometric,
    Arithmetic,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Geometric => "geometric",
            Mode::Arithmetic => "arithmetic",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "geometric" => Ok(Mode::Geometric),
            "arithmetic" => Ok(Mode::Arithmetic),
            _ => Err(AlgebraError::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(pub u64);

/// `num / h^k`, normalized so that `k = 0` or `h` does not divide `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingId,
    num: Poly,
    k: u32,
}

impl RingElem {
    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Laurent data of an element: `poly[j]` is the coefficient of `x^j`
/// (including the constant), `poles[i][j-1]` that of `(x - r_i)^{-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Vec<FqElem>,
    pub poles: Vec<Vec<FqElem>>,
}

impl PartialFractions {
    pub fn poly_degree(&self) -> usize {
        self.poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn pole_order(&self, i: usize) -> usize {
        self.poles[i].iter().rposition(|c| !c.is_zero()).map_or(0, |j| j + 1)
    }

    /// Largest of the degree at infinity and all pole orders.
    pub fn max_order(&self) -> usize {
        (0..self.poles.len()).map(|i| self.pole_order(i)).fold(self.poly_degree(), usize::max)
    }
}

struct RingInner {
    fq: Fq,
    h: Poly,
    roots: Vec<FqElem>,
    cofactors: Vec<Poly>,
    mode: Mode,
    id: RingId,
}

#[derive(Clone)]
pub struct CoordinateRing {
    inner: Arc<RingInner>,
}

impl PartialEq for CoordinateRing {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for CoordinateRing {}

impl fmt::Debug for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl CoordinateRing {
    /// `h` must be nonzero, squarefree and split over `F_q`; it is made monic.
    pub fn new(fq: &Fq, h: &Poly, mode: Mode) -> Result<CoordinateRing, AlgebraError> {
        if h.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let h = h.monic(fq);
        let roots = h.roots(fq);
        if roots.len() != h.degree().unwrap() {
            return Err(AlgebraError::NotSquarefreeSplit(h.format(fq, "x")));
        }
        let cofactors = roots
            .iter()
            .map(|&r| h.div_exact(&Poly::linear(fq, r), fq).expect("r is a root"))
            .collect();
        let id = {
            let mut s = std::collections::hash_map::DefaultHasher::new();
            fq.id().hash(&mut s);
            h.hash(&mut s);
            mode.hash(&mut s);
            RingId(s.finish())
        };
        Ok(CoordinateRing {
            inner: Arc::new(RingInner { fq: fq.clone(), h, roots, cofactors, mode, id }),
        })
    }

    /// `F_q[x]`.
    pub fn affine_line(fq: &Fq, mode: Mode) -> CoordinateRing {
        CoordinateRing::new(fq, &Poly::one(fq), mode).expect("constant h is fine")
    }

    /// `F_q[x, 1/prod(x - r)]`.
    pub fn punctured(fq: &Fq, roots: &[FqElem], mode: Mode) -> Result<CoordinateRing, AlgebraError> {
        let h = roots.iter().fold(Poly::one(fq), |acc, &r| acc.mul(&Poly::linear(fq, r), fq));
        CoordinateRing::new(fq, &h, mode)
    }

    pub fn with_mode(&self, mode: Mode) -> CoordinateRing {
        CoordinateRing::new(&self.inner.fq, &self.inner.h, mode).expect("same h")
    }

    pub fn fq(&self) -> &Fq {
        &self.inner.fq
    }

    pub fn h(&self) -> &Poly {
        &self.inner.h
    }

    pub fn roots(&self) -> &[FqElem] {
        &self.inner.roots
    }

    /// Number of finite punctures `s = deg h`.
    pub fn s(&self) -> usize {
        self.inner.roots.len()
    }

    pub fn mode(&self) -> Mode {
        self.inner.mode
    }

    pub fn id(&self) -> RingId {
        self.inner.id
    }

    pub fn p(&self) -> u32 {
        self.inner.fq.p()
    }

    /// Text form accepted by the descriptor parser.
    pub fn descriptor(&self) -> String {
        let f = &self.inner.fq;
        let h = if self.inner.h.is_constant() {
            "1".to_string()
        } else {
            self.inner
                .roots
                .iter()
                .map(|&r| format!("({})", linear_str(f, r)))
                .collect::<Vec<_>>()
                .join("*")
        };
        format!("F({},{})[x,1/{}]", f.p(), f.m(), h)
    }

    fn mk(&self, num: Poly, k: u32) -> RingElem {
        RingElem { ring: self.inner.id, num, k }
    }

    pub fn zero(&self) -> RingElem {
        self.mk(Poly::zero(), 0)
    }

    pub fn one(&self) -> RingElem {
        self.mk(Poly::one(&self.inner.fq), 0)
    }

    pub fn x(&self) -> RingElem {
        self.mk(Poly::x(&self.inner.fq), 0)
    }

    pub fn constant(&self, c: FqElem) -> RingElem {
        self.mk(Poly::constant(c), 0)
    }

    pub fn from_int(&self, n: i64) -> RingElem {
        self.constant(self.inner.fq.from_int(n))
    }

    pub fn from_poly(&self, num: Poly) -> RingElem {
        self.mk(num, 0)
    }

    /// `c * x^j`
    pub fn monomial(&self, c: FqElem, j: usize) -> RingElem {
        self.mk(Poly::monomial(&self.inner.fq, c, j), 0)
    }

    /// `c * (x - r_i)^{-j}`
    pub fn pole_monomial(&self, c: FqElem, i: usize, j: u32) -> RingElem {
        let f = &self.inner.fq;
        let g = self.inner.cofactors[i].pow(j as u64, f).scale(c, f);
        self.from_fraction(g, j)
    }

    /// `num / h^k`, normalized.
    pub fn from_fraction(&self, num: Poly, k: u32) -> RingElem {
        self.normalize(&self.raw(num, k))
    }

    /// `num / h^k` without normalization; arithmetic accepts such inputs.
    pub fn raw(&self, num: Poly, k: u32) -> RingElem {
        self.mk(num, k)
    }

    pub fn normalize(&self, e: &RingElem) -> RingElem {
        let f = &self.inner.fq;
        let mut num = e.num.clone();
        let mut k = e.k;
        if num.is_zero() {
            return self.zero();
        }
        while k > 0 {
            match num.div_exact(&self.inner.h, f) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        self.mk(num, k)
    }

    /// `num / den` as an element of `A`, provided `den` divides a power of `h`.
    pub fn from_rational(&self, num: &Poly, den: &Poly) -> Result<RingElem, AlgebraError> {
        let f = &self.inner.fq;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        let mut hk = Poly::one(f);
        for k in 0..=dd as u32 {
            if let Some(cof) = hk.div_exact(den, f) {
                return Ok(self.from_fraction(num.mul(&cof, f), k));
            }
            hk = hk.mul(&self.inner.h, f);
        }
        Err(AlgebraError::NotInRing(den.format(f, "x")))
    }

    pub fn owns(&self, e: &RingElem) -> bool {
        e.ring == self.inner.id
    }

    pub fn check(&self, e: &RingElem) -> Result<(), AlgebraError> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    fn h_pow(&self, e: u32) -> Poly {
        self.inner.h.pow(e as u64, &self.inner.fq)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        debug_assert!(self.owns(a) && self.owns(b));
        let f = &self.inner.fq;
        if a.is_zero() {
            return self.normalize(b);
        }
        if b.is_zero() {
            return self.normalize(a);
        }
        let k = a.k.max(b.k);
        let na = if a.k < k { a.num.mul(&self.h_pow(k - a.k), f) } else { a.num.clone() };
        let nb = if b.k < k { b.num.mul(&self.h_pow(k - b.k), f) } else { b.num.clone() };
        self.from_fraction(na.add(&nb, f), k)
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.mk(a.num.neg(&self.inner.fq), a.k)
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        debug_assert!(self.owns(a) && self.owns(b));
        let f = &self.inner.fq;
        self.from_fraction(a.num.mul(&b.num, f), a.k + b.k)
    }

    pub fn scale(&self, c: FqElem, a: &RingElem) -> RingElem {
        if c.is_zero() {
            return self.zero();
        }
        self.mk(a.num.scale(c, &self.inner.fq), a.k)
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^p`. Stays normalized: `h` is squarefree, so `h | num^p` forces `h | num`.
    pub fn frobenius(&self, a: &RingElem) -> RingElem {
        let n = self.normalize(a);
        self.mk(n.num.frobenius(&self.inner.fq), n.k * self.p())
    }

    pub fn partial_fractions(&self, a: &RingElem) -> PartialFractions {
        let f = &self.inner.fq;
        let a = self.normalize(a);
        let s = self.s();
        let k = a.k as usize;
        let (q, r) = if k == 0 {
            (a.num.clone(), Poly::zero())
        } else {
            a.num.divrem(&self.h_pow(a.k), f).expect("h != 0")
        };
        let mut poly = q.coeffs().to_vec();
        if poly.is_empty() {
            poly.push(f.zero());
        }
        let mut poles = vec![vec![f.zero(); k]; s];
        if k > 0 && !r.is_zero() {
            for (i, &root) in self.inner.roots.iter().enumerate() {
                let nt = r.taylor_shift(root, f);
                let gt = self.inner.cofactors[i].pow(a.k as u64, f).taylor_shift(root, f);
                let ginv = series_inverse(&gt, k, f);
                for e in 0..k {
                    let mut acc = f.zero();
                    for t in 0..=e {
                        acc = f.add(acc, f.mul(nt.coeff(f, t), ginv[e - t]));
                    }
                    poles[i][k - 1 - e] = acc;
                }
            }
        }
        PartialFractions { poly, poles }
    }

    pub fn from_partial_fractions(&self, pf: &PartialFractions) -> RingElem {
        let f = &self.inner.fq;
        let kmax = pf.poles.iter().map(|v| v.len()).max().unwrap_or(0) as u32;
        let mut num = Poly::from_coeffs(pf.poly.clone()).mul(&self.h_pow(kmax), f);
        for (i, cs) in pf.poles.iter().enumerate() {
            if cs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let root = self.inner.roots[i];
            let gk = self.inner.cofactors[i].pow(kmax as u64, f);
            let lin = Poly::linear(f, root);
            let mut local = Poly::zero();
            for (jm1, &c) in cs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = jm1 as u32 + 1;
                local = local.add(&lin.pow((kmax - j) as u64, f).scale(c, f), f);
            }
            num = num.add(&local.mul(&gk, f), f);
        }
        self.from_fraction(num, kmax)
    }

    /// Partial-fraction rendering, e.g. `x^3+1+(x-1)^-2`.
    pub fn format(&self, a: &RingElem) -> String {
        let f = &self.inner.fq;
        let pf = self.partial_fractions(a);
        let mut out = String::new();
        for (j, &c) in pf.poly.iter().enumerate().rev() {
            if !c.is_zero() {
                push_term(&mut out, &format_term(f, c, "x", j as i64));
            }
        }
        for (i, cs) in pf.poles.iter().enumerate() {
            let base = pole_base(f, self.inner.roots[i]);
            for (jm1, &c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    push_term(&mut out, &format_term(f, c, &base, -(jm1 as i64) - 1));
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn linear_str(f: &Fq, r: super::fq::FqElem) -> String {
    if r.is_zero() {
        "x".into()
    } else if f.is_compound(r) {
        format!("x-({})", f.format(r))
    } else {
        format!("x-{}", f.format(r))
    }
}

fn pole_base(f: &Fq, r: FqElem) -> String {
    if r.is_zero() {
        "x".into()
    } else {
        format!("({})", linear_str(f, r))
    }
}

/// First `k` coefficients of `1/g` for `g(0) != 0`.
fn series_inverse(g: &Poly, k: usize, f: &Fq) -> Vec<FqElem> {
    let g0inv = f.inv(g.coeff(f, 0)).expect("cofactor is a unit at the root");
    let mut inv = vec![f.zero(); k];
    if k == 0 {
        return inv;
    }
    inv[0] = g0inv;
    for n in 1..k {
        let mut acc = f.zero();
        for j in 1..=n {
            acc = f.add(acc, f.mul(g.coeff(f, j), inv[n - j]));
        }
        inv[n] = f.neg(f.mul(g0inv, acc));
    }
    inv
}
