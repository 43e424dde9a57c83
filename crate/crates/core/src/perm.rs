//! Permutations of `{0, .., degree - 1}`.
//!
//! Composition follows the right-action convention: `a.compose(&b)` applies
//! `a` first and then `b`, so `x^(ab) = (x^a)^b`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list of length {degree} is not a bijection (point {point} repeated or out of range)")]
    NotBijective { degree: usize, point: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cycle notation parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective {
                    degree: n,
                    point: x,
                });
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::NotBijective { degree, point: p });
                }
                touched[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `"(0,1,2)(3,4)"` or `"(0 1 2)(3 4)"`.
    /// The empty string and `"()"` denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        let err = |pos: usize, msg: &str| PermError::Parse {
            pos,
            msg: msg.to_string(),
        };
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' | b'\n' => i += 1,
                b'(' => {
                    i += 1;
                    let mut cycle = Vec::new();
                    loop {
                        while i < bytes.len() && matches!(bytes[i], b' ' | b',' | b'\t') {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(err(i, "unterminated cycle"));
                        }
                        if bytes[i] == b')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(err(i, "expected a point index"));
                        }
                        let p: usize = text[start..i]
                            .parse()
                            .map_err(|_| err(start, "point index overflow"))?;
                        cycle.push(p);
                    }
                    if cycle.len() > 1 {
                        cycles.push(cycle);
                    }
                }
                _ => return Err(err(i, "expected '('")),
            }
        }
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`, i.e. the conjugate `self^other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] as usize == point
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted multiset of cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply(p);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Permutation induced on a subset that the permutation stabilizes
    /// setwise; the `i`-th point of `subset` becomes point `i`.
    pub fn restrict(&self, subset: &[usize]) -> Option<Permutation> {
        let mut index = vec![u32::MAX; self.degree()];
        for (i, &p) in subset.iter().enumerate() {
            index[p] = i as u32;
        }
        let mut images = Vec::with_capacity(subset.len());
        for &p in subset {
            let img = index[self.apply(p)];
            if img == u32::MAX {
                return None;
            }
            images.push(img);
        }
        Some(Permutation { images })
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        let a = Permutation::parse_cycles(3, "(0,1)").unwrap();
        let b = Permutation::parse_cycles(3, "(1,2)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let p = Permutation::parse_cycles(6, "(0 1 2)(3,4)").unwrap();
        assert_eq!(p.to_string(), "(0,1,2)(3,4)");
        assert_eq!(Permutation::parse_cycles(6, &p.to_string()).unwrap(), p);
        assert!(Permutation::parse_cycles(4, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(4, "").unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse_cycles(3, "(0,5)"),
            Err(PermError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles(3, "(0,1)(1,2)"),
            Err(PermError::NotBijective { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles(3, "(0,1"),
            Err(PermError::Parse { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles(3, "0,1"),
            Err(PermError::Parse { .. })
        ));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn conjugate_matches_definition() {
        let a = Permutation::parse_cycles(5, "(0,1,2)").unwrap();
        let g = Permutation::parse_cycles(5, "(0,3)(1,4)").unwrap();
        let expected = g.inverse().compose(&a).compose(&g);
        assert_eq!(a.conjugate_by(&g), expected);
        assert_eq!(a.conjugate_by(&g).to_string(), "(2,3,4)");
    }

    #[test]
    fn order_and_pow() {
        let p = Permutation::parse_cycles(7, "(0,1,2)(3,4)").unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
        assert_eq!(p.cycle_type(), vec![1, 1, 2, 3]);
    }

    #[test]
    fn restrict_to_invariant_subset() {
        let p = Permutation::parse_cycles(5, "(1,3)(2,4)").unwrap();
        let r = p.restrict(&[1, 3]).unwrap();
        assert_eq!(r.to_string(), "(0,1)");
        assert!(p.restrict(&[1, 2]).is_none());
    }
}
