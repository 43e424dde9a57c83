//! Concrete groups: PSL₂(q) and PGL₂(q) on the projective line with their
//! dihedral subgroups, dihedral and affine groups, Paley Frobenius groups,
//! and developments of difference sets.

use thiserror::Error;

use crate::designs::{DesignError, IncidenceStructure};
use crate::galois::{prime_power, FieldElem, GaloisError, GaloisField};
use crate::perm::{gcd, Permutation};
use crate::permgrp::{normalizer, GroupError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("q = {0} must be a prime power at least 4")]
    BadFieldOrder(u64),
    #[error("dihedral group needs n >= 3, got {0}")]
    DihedralTooSmall(usize),
    #[error("p = {0} must be a prime congruent to 3 mod 4")]
    NotPaleyPrime(u64),
    #[error("linear generator {0} is singular or has the wrong shape")]
    SingularMatrix(usize),
    #[error("no fixed-point-free element of order {0} found")]
    TorusNotFound(u64),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// PG(1, q): point `i < q` is the field element of index `i`, point `q` is ∞.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    pub field: GaloisField,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<Self, ConstructError> {
        Ok(ProjectiveLine {
            field: GaloisField::of_order(q)?,
        })
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn infinity(&self) -> usize {
        self.q() as usize
    }

    pub fn len(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `x -> (a x + b) / (c x + d)`, i.e. the matrix `[[a, b], [c, d]]` acting on
/// column vectors `(x, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FracLinearMap {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl FracLinearMap {
    pub fn new(
        f: &GaloisField,
        a: FieldElem,
        b: FieldElem,
        c: FieldElem,
        d: FieldElem,
    ) -> Option<Self> {
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        (!det.is_zero()).then_some(FracLinearMap { a, b, c, d })
    }

    pub fn det(&self, f: &GaloisField) -> FieldElem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    /// `self` followed by `other`: the matrix product `other * self`.
    pub fn then(&self, f: &GaloisField, other: &FracLinearMap) -> FracLinearMap {
        let (m, n) = (other, self);
        FracLinearMap {
            a: f.add(f.mul(m.a, n.a), f.mul(m.b, n.c)),
            b: f.add(f.mul(m.a, n.b), f.mul(m.b, n.d)),
            c: f.add(f.mul(m.c, n.a), f.mul(m.d, n.c)),
            d: f.add(f.mul(m.c, n.b), f.mul(m.d, n.d)),
        }
    }

    pub fn apply(&self, line: &ProjectiveLine, x: usize) -> usize {
        let f = &line.field;
        let inf = line.infinity();
        if x == inf {
            return if self.c.is_zero() {
                inf
            } else {
                f.div(self.a, self.c).unwrap().index()
            };
        }
        let x = f.elem(x as u64);
        let den = f.add(f.mul(self.c, x), self.d);
        if den.is_zero() {
            return inf;
        }
        let num = f.add(f.mul(self.a, x), self.b);
        f.div(num, den).unwrap().index()
    }

    pub fn to_permutation(&self, line: &ProjectiveLine) -> Permutation {
        Permutation::from_images((0..line.len()).map(|x| self.apply(line, x)).collect())
            .expect("invertible maps permute the line")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LinearKind {
    Psl,
    Pgl,
}

/// PSL₂(q) or PGL₂(q) acting on PG(1, q).
#[derive(Clone, Debug)]
pub struct ProjectiveGroup {
    pub kind: LinearKind,
    pub line: ProjectiveLine,
    pub group: PermGroup,
}

impl ProjectiveGroup {
    pub fn q(&self) -> u64 {
        self.line.q()
    }

    /// `gcd(2, q - 1)` for PSL₂, 1 for PGL₂.
    pub fn d(&self) -> u64 {
        match self.kind {
            LinearKind::Psl => gcd(2, self.q() - 1),
            LinearKind::Pgl => 1,
        }
    }

    pub fn name(&self) -> String {
        let k = match self.kind {
            LinearKind::Psl => "PSL",
            LinearKind::Pgl => "PGL",
        };
        format!("{k}2({})", self.q())
    }
}

fn linear_group(q: u64, kind: LinearKind) -> Result<ProjectiveGroup, ConstructError> {
    if q < 4 || prime_power(q).is_none() {
        return Err(ConstructError::BadFieldOrder(q));
    }
    let line = ProjectiveLine::new(q)?;
    let f = &line.field;
    let mu = f.find_primitive();
    let scale = match kind {
        LinearKind::Psl => f.mul(mu, mu),
        LinearKind::Pgl => mu,
    };
    let (zero, one) = (f.zero(), f.one());
    let maps = [
        FracLinearMap::new(f, one, one, zero, one).unwrap(),
        FracLinearMap::new(f, scale, zero, zero, one).unwrap(),
        FracLinearMap::new(f, zero, f.neg(one), one, zero).unwrap(),
    ];
    let gens = maps.iter().map(|m| m.to_permutation(&line)).collect();
    let group = PermGroup::new(line.len(), gens)?;
    Ok(ProjectiveGroup { kind, line, group })
}

pub fn psl2(q: u64) -> Result<ProjectiveGroup, ConstructError> {
    linear_group(q, LinearKind::Psl)
}

pub fn pgl2(q: u64) -> Result<ProjectiveGroup, ConstructError> {
    linear_group(q, LinearKind::Pgl)
}

/// Stabilizer of the pair {0, ∞}: the normalizer of the split torus,
/// dihedral of order `2(q-1)/d`.
pub fn torus_pair_dihedral(g: &ProjectiveGroup) -> PermGroup {
    g.group
        .setwise_stabilizer(&[0, g.line.infinity()])
        .expect("points lie on the line")
}

/// Stabilizer of ∞, of order `q(q-1)/d`.
pub fn point_stabilizer(g: &ProjectiveGroup) -> PermGroup {
    g.group.stabilizer(g.line.infinity()).expect("∞ lies on the line")
}

/// A generator of a nonsplit torus: the first element, in the group's
/// element order, of order `(q+1)/d` all of whose nontrivial powers are
/// fixed-point-free.
pub fn nonsplit_torus_generator(g: &ProjectiveGroup) -> Result<Permutation, ConstructError> {
    let n = (g.q() + 1) / g.d();
    g.group
        .elements()?
        .into_iter()
        .find(|x| x.order() == n && (1..n).all(|i| x.pow(i).fixed_point_count() == 0))
        .ok_or(ConstructError::TorusNotFound(n))
}

/// Normalizer of the nonsplit torus, dihedral of order `2(q+1)/d`.
pub fn nonsplit_torus_dihedral(g: &ProjectiveGroup) -> Result<PermGroup, ConstructError> {
    let t = nonsplit_torus_generator(g)?;
    let c = PermGroup::new(g.group.degree(), vec![t])?;
    Ok(normalizer(&g.group, &c)?)
}

/// `D_{2n}` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup, ConstructError> {
    if n < 3 {
        return Err(ConstructError::DihedralTooSmall(n));
    }
    let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    Ok(PermGroup::new(n, vec![rot, refl])?)
}

/// Vectors of GF(p)^d indexed by `v_0 + v_1 p + ... `.
pub fn vector_index(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0u64, |acc, &x| acc * p + x) as usize
}

pub fn index_vector(mut i: usize, p: u64, d: usize) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let x = i as u64 % p;
            i /= p as usize;
            x
        })
        .collect()
}

fn det_mod_p(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let f = GaloisField::new(p, 1).expect("p is prime");
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = f.neg(det);
        }
        let pv = f.elem(a[col][col]);
        det = f.mul(det, pv);
        let inv = f.inv(pv).unwrap();
        for r in (col + 1)..n {
            let factor = f.mul(f.elem(a[r][col]), inv);
            for c in col..n {
                let sub = f.mul(factor, f.elem(a[col][c]));
                a[r][c] = f.sub(f.elem(a[r][c]), sub).index() as u64;
            }
        }
    }
    det.index() as u64
}

/// `Z_p^d : L` where `L` is generated by the given matrices, acting on column
/// vectors. Points are vectors by [`vector_index`].
pub fn affine_group(
    p: u64,
    d: usize,
    linear_gens: &[Vec<Vec<u64>>],
) -> Result<PermGroup, ConstructError> {
    if !crate::galois::is_prime(p) {
        return Err(GaloisError::NotPrime(p).into());
    }
    let n = (p as usize).pow(d as u32);
    let mut gens = Vec::new();
    for i in 0..d {
        let images = (0..n)
            .map(|x| {
                let mut v = index_vector(x, p, d);
                v[i] = (v[i] + 1) % p;
                vector_index(&v, p)
            })
            .collect();
        gens.push(Permutation::from_images(images).unwrap());
    }
    for (k, m) in linear_gens.iter().enumerate() {
        if m.len() != d || m.iter().any(|r| r.len() != d) || det_mod_p(m, p) == 0 {
            return Err(ConstructError::SingularMatrix(k));
        }
        let images = (0..n)
            .map(|x| {
                let v = index_vector(x, p, d);
                let w: Vec<u64> = (0..d)
                    .map(|r| (0..d).map(|c| m[r][c] * v[c]).sum::<u64>() % p)
                    .collect();
                vector_index(&w, p)
            })
            .collect();
        gens.push(Permutation::from_images(images).unwrap());
    }
    Ok(PermGroup::new(n, gens)?)
}

/// GF(16) as GF(2)[x]/(x⁴+x³+x²+x+1), in which `x` has order 5.
pub fn gf16_cyclotomic() -> GaloisField {
    GaloisField::with_modulus(2, 4, vec![1, 1, 1, 1, 1]).expect("fifth cyclotomic is irreducible over GF(2)")
}

/// Matrix of a GF(2)-linear map of GF(16), columns are images of 1, x, x², x³.
fn gf16_matrix(f: &GaloisField, map: impl Fn(FieldElem) -> FieldElem) -> Vec<Vec<u64>> {
    let cols: Vec<Vec<u64>> = (0..4).map(|j| f.coeffs(map(f.elem(1 << j)))).collect();
    (0..4).map(|r| (0..4).map(|c| cols[c][r]).collect()).collect()
}

/// The linear generators of `Z_2^4 : D_10`: multiplication by `x` (the
/// companion matrix of x⁴+x³+x²+x+1) and the inverting involution `y -> y^4`.
pub fn d10_matrices() -> Vec<Vec<Vec<u64>>> {
    let f = gf16_cyclotomic();
    let x = f.x();
    vec![
        gf16_matrix(&f, |y| f.mul(x, y)),
        gf16_matrix(&f, |y| f.pow(y, 4)),
    ]
}

/// `Z_2^4 : D_10 <= AGL_4(2)`, of order 160.
pub fn z2_4_d10() -> PermGroup {
    affine_group(2, 4, &d10_matrices()).expect("matrices are invertible")
}

/// The 20 lines of AG(2,4) on GF(16): the orbit of GF(4) under `Z_2^4 : D_10`.
pub fn ag24_lines() -> Result<IncidenceStructure, ConstructError> {
    let f = gf16_cyclotomic();
    let mut gf4: Vec<usize> = f
        .elements()
        .filter(|&y| f.pow(y, 4) == y)
        .map(|y| y.index())
        .collect();
    gf4.sort_unstable();
    Ok(crate::designs::design_from_base_block(&z2_4_d10(), &gf4)?)
}

/// `Z_p : Z_{(p-1)/2}`, the maps `x -> a² x + b` on GF(p).
pub fn paley_frobenius(p: u64) -> Result<PermGroup, ConstructError> {
    if !crate::galois::is_prime(p) || p % 4 != 3 {
        return Err(ConstructError::NotPaleyPrime(p));
    }
    let f = GaloisField::new(p, 1)?;
    let g = f.find_primitive();
    let g2 = f.mul(g, g);
    let n = p as usize;
    let shift = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap();
    let scale = Permutation::from_images(
        (0..n)
            .map(|x| f.mul(g2, f.elem(x as u64)).index())
            .collect(),
    )
    .unwrap();
    Ok(PermGroup::new(n, vec![shift, scale])?)
}

/// Nonzero squares of GF(p), sorted.
pub fn quadratic_residues(p: u64) -> Vec<usize> {
    let mut r: Vec<usize> = (1..p).map(|x| (x * x % p) as usize).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Development `{D + g : g in Z_p^d}` of a subset of the elementary abelian
/// group, points indexed by [`vector_index`].
pub fn difference_set_design(
    p: u64,
    d: usize,
    set: &[usize],
) -> Result<IncidenceStructure, ConstructError> {
    let n = (p as usize).pow(d as u32);
    let add = |x: usize, y: usize| {
        let (a, b) = (index_vector(x, p, d), index_vector(y, p, d));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
        vector_index(&s, p)
    };
    let blocks = (0..n)
        .map(|g| set.iter().map(|&x| add(x, g)).collect())
        .collect();
    Ok(IncidenceStructure::new(n, blocks)?)
}

/// Points of PG(3,2) (nonzero vectors of GF(2)^4, point `i` is the vector
/// with index `i + 1`) with the complements of the 15 planes as blocks.
pub fn pg32_plane_complements() -> Result<IncidenceStructure, ConstructError> {
    let blocks = (1..16usize)
        .map(|a| {
            (1..16usize)
                .filter(|&x| (a & x).count_ones() % 2 == 1)
                .map(|x| x - 1)
                .collect()
        })
        .collect();
    Ok(IncidenceStructure::new(15, blocks)?)
}

/// Image of `D ⊆ Z_2^4` written as bit strings `b_3 b_2 b_1 b_0`.
pub fn z2_4_from_bits(bits: &[&str]) -> Vec<usize> {
    bits.iter()
        .map(|s| usize::from_str_radix(s, 2).expect("binary string"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::is_primitive;

    #[test]
    fn linear_group_orders() {
        assert_eq!(psl2(5).unwrap().group.size(), 60);
        assert_eq!(pgl2(5).unwrap().group.size(), 120);
        assert_eq!(psl2(8).unwrap().group.size(), 504);
        for q in [4u64, 7, 9, 11, 13] {
            let d = gcd(2, q - 1);
            assert_eq!(psl2(q).unwrap().group.size(), q * (q * q - 1) / d);
            assert_eq!(pgl2(q).unwrap().group.size(), q * (q * q - 1));
        }
        assert!(matches!(psl2(3), Err(ConstructError::BadFieldOrder(3))));
        assert!(matches!(psl2(6), Err(ConstructError::BadFieldOrder(6))));
    }

    #[test]
    fn psl_inside_pgl_and_transitivity() {
        for q in [5u64, 7, 8, 9] {
            let s = psl2(q).unwrap();
            let g = pgl2(q).unwrap();
            assert!(s.group.is_subgroup_of(&g.group));
            let inf = g.line.infinity();
            // PGL is 3-transitive, PSL 2-transitive.
            assert_eq!(g.group.pointwise_stabilizer(&[inf, 0]).unwrap().orbit(1).unwrap().len(), q as usize - 1);
            assert_eq!(s.group.stabilizer(inf).unwrap().orbit(0).unwrap().len(), q as usize);
        }
    }

    #[test]
    fn dihedral_subgroups() {
        assert_eq!(torus_pair_dihedral(&pgl2(7).unwrap()).size(), 12);
        assert_eq!(torus_pair_dihedral(&psl2(8).unwrap()).size(), 14);
        assert_eq!(torus_pair_dihedral(&pgl2(5).unwrap()).size(), 8);
        assert_eq!(nonsplit_torus_dihedral(&psl2(5).unwrap()).unwrap().size(), 6);
        assert_eq!(nonsplit_torus_dihedral(&psl2(8).unwrap()).unwrap().size(), 18);
        assert_eq!(nonsplit_torus_dihedral(&pgl2(5).unwrap()).unwrap().size(), 12);
    }

    #[test]
    fn frac_linear_composition_is_a_homomorphism() {
        let line = ProjectiveLine::new(9).unwrap();
        let f = &line.field;
        let m1 = FracLinearMap::new(f, f.elem(2), f.elem(1), f.elem(5), f.elem(3)).unwrap();
        let m2 = FracLinearMap::new(f, f.elem(0), f.elem(7), f.elem(1), f.elem(4)).unwrap();
        let lhs = m1.then(f, &m2).to_permutation(&line);
        let rhs = m1.to_permutation(&line).compose(&m2.to_permutation(&line));
        assert_eq!(lhs, rhs);
        assert!(FracLinearMap::new(f, f.one(), f.one(), f.one(), f.one()).is_none());
    }

    #[test]
    fn dihedral_natural_action() {
        assert!(matches!(dihedral(2), Err(ConstructError::DihedralTooSmall(2))));
        let d9 = dihedral(9).unwrap();
        assert_eq!(d9.size(), 18);
        assert!(d9.elements().unwrap().iter().all(|x| x.is_identity() || x.fixed_point_count() <= 1));
        let d8 = dihedral(8).unwrap();
        assert!(d8
            .elements()
            .unwrap()
            .iter()
            .all(|x| x.is_identity() || [0, 2].contains(&x.fixed_point_count())));
        assert_eq!(d8.stabilizer(0).unwrap().size(), 2);
    }

    #[test]
    fn affine_examples() {
        let g = z2_4_d10();
        assert_eq!(g.size(), 160);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer(0).unwrap().size(), 10);
        let t = affine_group(3, 2, &[]).unwrap();
        assert_eq!(t.size(), 9);
        assert!(t.stabilizer(0).unwrap().is_trivial());
        assert!(matches!(
            affine_group(2, 2, &[vec![vec![1, 1], vec![1, 1]]]),
            Err(ConstructError::SingularMatrix(0))
        ));
        assert!(!is_primitive(&dihedral(6).unwrap()).unwrap());
    }

    #[test]
    fn paley_groups() {
        let g = paley_frobenius(7).unwrap();
        assert_eq!(g.size(), 21);
        let mut lens: Vec<usize> = g.stabilizer(0).unwrap().orbits().iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 3, 3]);
        assert_eq!(paley_frobenius(11).unwrap().size(), 55);
        assert!(matches!(paley_frobenius(13), Err(ConstructError::NotPaleyPrime(13))));
        assert_eq!(quadratic_residues(11), vec![1, 3, 4, 5, 9]);
    }
}
