use std::fmt;

use super::GroupError;

/// A permutation of `{0..N-1}`. Products compose right to left:
/// `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Perm, GroupError> {
        let mut seen = vec![false; img.len()];
        for &x in &img {
            let x = x as usize;
            if x >= img.len() || seen[x] {
                return Err(GroupError::InvalidPerm(format!("{img:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// Build from disjoint or overlapping cycles, composed right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm, GroupError> {
        let mut acc = Perm::identity(n);
        for c in cycles.iter().rev() {
            let mut img: Vec<u32> = (0..n as u32).collect();
            for (k, &x) in c.iter().enumerate() {
                if x as usize >= n {
                    return Err(GroupError::InvalidPerm(format!("point {x} outside degree {n}")));
                }
                img[x as usize] = c[(k + 1) % c.len()];
            }
            let cyc = Perm::from_images(img)
                .map_err(|_| GroupError::InvalidPerm(format!("repeated point in cycle {c:?}")))?;
            acc = cyc.compose(&acc);
        }
        Ok(acc)
    }

    /// Parse cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse(n: usize, s: &str) -> Result<Perm, GroupError> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let r = rest.strip_prefix('(').ok_or_else(|| GroupError::Parse(format!("expected `(` in `{s}`")))?;
            let end = r.find(')').ok_or_else(|| GroupError::Parse(format!("unclosed cycle in `{s}`")))?;
            let pts = r[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| GroupError::Parse(format!("bad point `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = r[end + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.img[x as usize]
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, mut e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        e = e.abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.img.len()];
        let mut out = Vec::new();
        for start in 0..self.img.len() {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Embed into a larger degree, moving points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.img.iter().enumerate() {
            img[i + offset] = x + offset as u32;
        }
        Perm { img }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
