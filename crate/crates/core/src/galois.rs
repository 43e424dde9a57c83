//! Arithmetic in GF(p^f).
//!
//! Elements are residues of polynomials over GF(p) modulo a fixed monic
//! irreducible polynomial. An element is identified by the index
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` of its coefficient vector, which
//! also fixes the enumeration order used when labelling points.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {p}^{f} is larger than 2^32")]
    TooLarge { p: u64, f: u32 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("modulus is not a monic irreducible polynomial of degree {f}")]
    Reducible { f: u32 },
    #[error("zero has no inverse")]
    InverseOfZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Moduli used when they check out: low-to-high coefficients, monic.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// Log tables are kept for fields up to this size.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    f: u32,
    q: u64,
    modulus: Vec<u64>,
    primitive: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, f)` with `q = p^f`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p, f))
}

// Polynomials over GF(p) as low-to-high coefficient vectors.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index`.
fn monic_from_index(mut index: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        c.push(index % p);
        index /= p;
    }
    c.push(1);
    c
}

/// No monic factor of degree `1..=deg/2`, by trial division.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() as u32 - 1;
    if deg == 0 || m[deg as usize] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d);
        for i in 0..count {
            let div = monic_from_index(i, d, p);
            if poly_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// GF(p^f) with the tabulated modulus if present and valid, otherwise
    /// the least monic irreducible polynomial found by search.
    pub fn new(p: u64, f: u32) -> Result<Self, GaloisError> {
        Self::check_size(p, f)?;
        if f == 1 {
            let g = smallest_primitive_root(p);
            return Self::with_modulus(p, 1, vec![(p - g) % p, 1]);
        }
        if let Some((_, _, m)) = CONWAY.iter().find(|(pp, ff, _)| *pp == p && *ff == f) {
            if let Ok(field) = Self::with_modulus(p, f, m.to_vec()) {
                return Ok(field);
            }
        }
        let count = p.pow(f);
        for i in 0..count {
            let m = monic_from_index(i, f, p);
            if is_irreducible(&m, p) {
                return Self::with_modulus(p, f, m);
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    pub fn of_order(q: u64) -> Result<Self, GaloisError> {
        let (p, f) = prime_power(q).ok_or(GaloisError::NotPrimePower(q))?;
        Self::new(p, f)
    }

    fn check_size(p: u64, f: u32) -> Result<(), GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if f == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        match p.checked_pow(f) {
            Some(q) if q <= 1 << 32 => Ok(()),
            _ => Err(GaloisError::TooLarge { p, f }),
        }
    }

    /// GF(p^f) defined by an explicit monic modulus (low-to-high).
    pub fn with_modulus(p: u64, f: u32, modulus: Vec<u64>) -> Result<Self, GaloisError> {
        Self::check_size(p, f)?;
        if modulus.len() != f as usize + 1
            || modulus[f as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(&modulus, p)
        {
            return Err(GaloisError::Reducible { f });
        }
        let q = p.pow(f);
        let mut field = GaloisField {
            p,
            f,
            q,
            modulus,
            primitive: FieldElem(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.search_primitive();
        if q <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let mut x = field.one();
            for i in 0..q - 1 {
                exp.push(x.0 as u32);
                log[x.0 as usize] = i as u32;
                x = field.mul_poly(x, field.primitive);
            }
            field.exp = exp;
            field.log = log;
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The residue class of `x` (equal to the primitive root for prime fields).
    pub fn x(&self) -> FieldElem {
        if self.f == 1 {
            FieldElem((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElem(self.p)
        }
    }

    pub fn elem(&self, index: u64) -> FieldElem {
        assert!(index < self.q, "index {index} outside GF({})", self.q);
        FieldElem(index)
    }

    /// Image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        let r = poly_rem(
            &coeffs.iter().map(|c| c % self.p).collect::<Vec<_>>(),
            &self.modulus,
            self.p,
        );
        self.pack(&r)
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.f as usize);
        let mut x = a.0;
        for _ in 0..self.f {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn pack(&self, c: &[u64]) -> FieldElem {
        FieldElem(c.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0, 1);
        for _ in 0..self.f {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let c: Vec<u64> = self.coeffs(a).iter().map(|&d| (self.p - d) % self.p).collect();
        self.pack(&c)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        if !self.log.is_empty() {
            let n = self.q - 1;
            let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
            return FieldElem(self.exp[e as usize] as u64);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.f == 1 {
            return FieldElem(a.0 * b.0 % self.p);
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.f as usize - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.pack(&poly_rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GaloisError> {
        if a.is_zero() {
            return Err(GaloisError::InverseOfZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: FieldElem) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut n = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while n % r == 0 && self.pow(a, n / r) == self.one() {
                n /= r;
            }
        }
        n
    }

    /// The least-index generator of the multiplicative group.
    pub fn find_primitive(&self) -> FieldElem {
        self.primitive
    }

    fn search_primitive(&self) -> FieldElem {
        let n = self.q - 1;
        let factors = prime_factors(n);
        (1..self.q)
            .map(FieldElem)
            .find(|&a| factors.iter().all(|r| self.pow_poly(a, n / r) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    fn pow_poly(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        a.is_zero() || self.p == 2 || self.pow(a, (self.q - 1) / 2) == self.one()
    }

    /// Evaluates a polynomial with coefficients in GF(p) at `a`.
    pub fn eval_base_poly(&self, coeffs: &[u64], a: FieldElem) -> FieldElem {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(self.mul(acc, a), self.from_int(c as i64))
        })
    }

    pub fn quadratic_extension(&self) -> Result<QuadraticExtension, GaloisError> {
        QuadraticExtension::new(self)
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| mod_pow(g, (p - 1) / r, p) != 1))
        .unwrap()
}

/// GF(q^2) over GF(q), with the embedding of GF(q) and Frobenius `x -> x^q`.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    pub base: GaloisField,
    pub big: GaloisField,
    /// `embedding[i]` is the image of the base element with index `i`.
    pub embedding: Vec<FieldElem>,
}

impl QuadraticExtension {
    fn new(base: &GaloisField) -> Result<Self, GaloisError> {
        let q = base.order();
        let big = GaloisField::new(base.p(), 2 * base.f())?;
        // The subfield GF(q) of the big field is {0} together with the
        // powers of w^(q+1); find a root of the base modulus there.
        let w = big.find_primitive();
        let gen = big.pow(w, q + 1);
        let mut root = big.one();
        let mut found = None;
        for _ in 0..q - 1 {
            if big.eval_base_poly(base.modulus(), root).is_zero() {
                found = Some(root);
                break;
            }
            root = big.mul(root, gen);
        }
        let root = found.expect("the base modulus splits in GF(q^2)");
        let embedding = base
            .elements()
            .map(|a| big.eval_base_poly(&base.coeffs(a), root))
            .collect();
        Ok(QuadraticExtension {
            base: base.clone(),
            big,
            embedding,
        })
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        self.embedding[a.index()]
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.big.pow(a, self.base.order())
    }

    /// `x * x^q`, which lies in the embedded base field.
    pub fn norm(&self, a: FieldElem) -> FieldElem {
        self.big.mul(a, self.frobenius(a))
    }

    /// Inverse of [`embed`](Self::embed) on the embedded subfield.
    pub fn to_base(&self, a: FieldElem) -> Option<FieldElem> {
        self.embedding
            .iter()
            .position(|&e| e == a)
            .map(|i| FieldElem(i as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_basics() {
        let f = GaloisField::new(5, 1).unwrap();
        assert_eq!(f.mul(f.elem(2), f.elem(3)), f.one());
        assert_eq!(f.inv(f.elem(2)).unwrap(), f.elem(3));
        assert_eq!(f.inv(f.zero()), Err(GaloisError::InverseOfZero));
        assert_eq!(f.find_primitive(), f.elem(2));
    }

    #[test]
    fn gf8_reduction() {
        let f = GaloisField::with_modulus(2, 3, vec![1, 1, 0, 1]).unwrap();
        let x = f.x();
        let x3 = f.mul(f.mul(x, x), x);
        assert_eq!(f.coeffs(x3), vec![1, 1, 0]);
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn tabulated_moduli_are_primitive() {
        for &(p, f, m) in CONWAY {
            let field = GaloisField::new(p, f).unwrap();
            assert_eq!(field.modulus(), m, "GF({p}^{f})");
            assert_eq!(field.elem_order(field.x()), field.order() - 1, "GF({p}^{f})");
        }
    }

    #[test]
    fn gf9_primitive_by_exhaustion() {
        let f = GaloisField::new(3, 2).unwrap();
        let mut orders: Vec<u64> = Vec::new();
        for a in f.elements().skip(1) {
            let mut x = a;
            let mut k = 1;
            while x != f.one() {
                x = f.mul(x, a);
                k += 1;
            }
            orders.push(k);
        }
        assert_eq!(orders.iter().filter(|&&k| k == 8).count(), 4);
        let g = f.find_primitive();
        assert_eq!(orders[g.index() - 1], 8);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GaloisField::new(6, 1).unwrap_err(), GaloisError::NotPrime(6));
        assert!(matches!(
            GaloisField::with_modulus(2, 2, vec![1, 0, 1]),
            Err(GaloisError::Reducible { .. })
        ));
        assert!(matches!(GaloisField::new(2, 40), Err(GaloisError::TooLarge { .. })));
        assert_eq!(GaloisField::of_order(12).unwrap_err(), GaloisError::NotPrimePower(12));
    }

    #[test]
    fn fallback_search_finds_irreducible() {
        let f = GaloisField::new(2, 10).unwrap();
        assert!(is_irreducible(f.modulus(), 2));
        assert_eq!(f.elem_order(f.find_primitive()), 1023);
        let f = GaloisField::new(17, 2).unwrap();
        assert_eq!(f.order(), 289);
    }

    #[test]
    fn gf25_over_gf5() {
        let base = GaloisField::new(5, 1).unwrap();
        let ext = base.quadratic_extension().unwrap();
        let big = &ext.big;
        let fixed: Vec<FieldElem> = big.elements().filter(|&a| ext.frobenius(a) == a).collect();
        let mut embedded = ext.embedding.clone();
        embedded.sort();
        assert_eq!(fixed, embedded);
        let mut fibres = std::collections::BTreeMap::new();
        for a in big.elements().skip(1) {
            *fibres.entry(ext.norm(a)).or_insert(0) += 1;
        }
        assert_eq!(fibres.len(), 4);
        assert!(fibres.values().all(|&c| c == 6));
        assert!(big.elements().skip(1).any(|a| big.elem_order(a) == 6));
    }
}
