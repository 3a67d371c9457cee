use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree. The affine group of 𝔽₁₇ needs 17 points.
pub const MAX_POINTS: usize = 32;

/// A permutation of `{1, …, n}` stored as a fixed-width image array
/// (0-indexed internally, unused slots fixed).
///
/// Composition is left-to-right: `a.then(&b)` applies `a` first, so
/// `(1 2).then(&(2 3))` is the 3-cycle `(1 3 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_POINTS],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_POINTS, "degree {n} exceeds {MAX_POINTS}");
        let mut img = [0u8; MAX_POINTS];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// From 1-indexed images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return Err(Error::invalid(format!("degree {n} exceeds {MAX_POINTS}")));
        }
        let mut p = Perm::identity(n);
        let mut seen = [false; MAX_POINTS];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::invalid(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[v - 1] = true;
            p.img[i] = (v - 1) as u8;
        }
        Ok(p)
    }

    /// From 1-indexed disjoint cycles on `n` points.
    pub fn from_cycles(cycles: &[&[usize]], n: usize) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::invalid(format!("degree {n} exceeds {MAX_POINTS}")));
        }
        let mut p = Perm::identity(n);
        let mut used = [false; MAX_POINTS];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || used[a - 1] {
                    return Err(Error::invalid(format!("bad or repeated point {a} in cycle")));
                }
                used[a - 1] = true;
                let b = cyc[(k + 1) % cyc.len()];
                p.img[a - 1] = (b - 1) as u8;
            }
        }
        Ok(p)
    }

    /// Parses cycle notation such as `"(1 2 3 4)(5 6)"`; points are
    /// 1-indexed and separated by whitespace or commas. `"()"` is the
    /// identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::invalid(format!("expected `(` in `{s}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::invalid(format!("unbalanced parenthesis in `{s}`")))?;
            let pts = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad point `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = &body[close + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(&refs, n)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// Image of a 1-indexed point.
    pub fn apply(&self, point: usize) -> usize {
        self.img[point - 1] as usize + 1
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// `g⁻¹ · self · g` in left-to-right order, i.e. relabel by `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, num_integer::lcm)
    }

    /// Nontrivial cycles, 1-indexed, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.img[i] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Restriction to points `lo..=hi` (1-indexed), which must be invariant;
    /// the result acts on `1..=hi-lo+1`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Option<Perm> {
        let images: Vec<usize> = (lo..=hi).map(|p| self.apply(p)).collect();
        if images.iter().any(|&q| q < lo || q > hi) {
            return None;
        }
        Perm::from_images(&images.iter().map(|q| q - lo + 1).collect::<Vec<_>>()).ok()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert_eq!(a.then(&b).order(), 3);
    }

    #[test]
    fn parse_print_roundtrip() {
        let p = Perm::parse("(1 5)(2 6)(3 7)(4 8)", 8).unwrap();
        assert_eq!(p.to_string(), "(1 5)(2 6)(3 7)(4 8)");
        assert_eq!(Perm::parse("(1, 2, 3)", 4).unwrap().to_string(), "(1 2 3)");
        assert!(Perm::parse("()", 4).unwrap().is_identity());
        assert!(Perm::parse("(1 2", 4).is_err());
        assert!(Perm::parse("(1 1)", 4).is_err());
        assert!(Perm::parse("(1 9)", 4).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 4).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::parse("(1 2 3 4)(5 6)", 6).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.order(), 4);
        assert!(p.pow(4).is_identity());
        assert!(Perm::from_images(&[2, 2]).is_err());
    }
}
