//! Base and strong generating set, built by deterministic Schreier–Sims.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    /// Indices into `StabChain::strong` of the strong generators fixing
    /// every earlier base point.
    pub gens: Vec<usize>,
    /// Orbit of the base point in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[p] = u` with `base^u = p`, for `p` in the orbit.
    pub transversal: Vec<Option<Permutation>>,
    pub inverse: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub base: Vec<usize>,
    pub strong: Vec<Permutation>,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims on `gens`. The base starts with `prefix` (points
    /// may be fixed by the whole group) and is extended by the smallest
    /// point moved by each new strong generator.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> StabChain {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &strong {
            if base.iter().all(|&b| g.fixes(b)) {
                // Smallest moved point; it cannot already be a base point.
                base.push(g.first_moved_point().expect("non-identity"));
            }
        }
        let mut chain = StabChain {
            degree,
            base,
            strong,
            levels: Vec::new(),
        };
        for i in 0..chain.base.len() {
            let gens = chain.gens_fixing_prefix(i);
            let level = chain.make_level(i, gens);
            chain.levels.push(level);
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.find_nonsifting_schreier_generator(lvl) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == chain.base.len() {
                        let p = residue.first_moved_point().expect("non-identity");
                        chain.base.push(p);
                        chain.levels.push(Level {
                            gens: Vec::new(),
                            orbit: Vec::new(),
                            transversal: Vec::new(),
                            inverse: Vec::new(),
                        });
                    }
                    let idx = chain.strong.len();
                    chain.strong.push(residue);
                    for l in 0..=j {
                        chain.levels[l].gens.push(idx);
                    }
                    for l in (lvl + 1)..=j {
                        let gens = std::mem::take(&mut chain.levels[l].gens);
                        chain.levels[l] = chain.make_level(l, gens);
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// Chain of `Sym(n)` with base `0, ..., n-2` and adjacent transpositions
    /// as strong generators, built without Schreier–Sims.
    pub fn symmetric(n: usize) -> StabChain {
        let strong: Vec<Permutation> = (1..n)
            .map(|i| Permutation::from_cycles(n, &[vec![i - 1, i]]).unwrap())
            .collect();
        let mut chain = StabChain {
            degree: n,
            base: (0..n.saturating_sub(1)).collect(),
            strong,
            levels: Vec::new(),
        };
        for i in 0..chain.base.len() {
            let level = chain.make_level(i, (i..n - 1).collect());
            chain.levels.push(level);
        }
        chain
    }

    fn gens_fixing_prefix(&self, level: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&s| self.base[..level].iter().all(|&b| self.strong[s].fixes(b)))
            .collect()
    }

    fn make_level(&self, level: usize, gens: Vec<usize>) -> Level {
        let n = self.degree;
        let b = self.base[level];
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        let mut inverse: Vec<Option<Permutation>> = vec![None; n];
        transversal[b] = Some(Permutation::identity(n));
        inverse[b] = Some(Permutation::identity(n));
        let mut orbit = vec![b];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for &s in &gens {
                let g = &self.strong[s];
                let q = g.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().compose(g);
                    inverse[q] = Some(u.inverse());
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
        }
        Level {
            gens,
            orbit,
            transversal,
            inverse,
        }
    }

    fn find_nonsifting_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &beta in &level.orbit {
            let u = level.transversal[beta].as_ref().unwrap();
            for &s in &level.gens {
                let x = &self.strong[s];
                let img = x.apply(beta);
                let h = u.compose(x).compose(level.inverse[img].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift_from(h, lvl + 1);
                if !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Strips `g` through levels `start..`; returns the residue and the level
    /// at which stripping stopped (`levels.len()` if it went all the way).
    pub fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(self.base[i]);
            match &level.inverse[beta] {
                Some(inv) => g = g.compose(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        if depth >= self.levels.len() {
            return Vec::new();
        }
        self.levels[depth]
            .gens
            .iter()
            .map(|&s| self.strong[s].clone())
            .collect()
    }

    /// All elements as products `u_k ... u_1` of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut list = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for x in &list {
                for &beta in &level.orbit {
                    next.push(x.compose(level.transversal[beta].as_ref().unwrap()));
                }
            }
            list = next;
        }
        list
    }

    /// Element selected by one orbit index per level (uniform when the
    /// indices are uniform).
    pub fn element_from_choices(&self, mut pick: impl FnMut(usize) -> usize) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[pick(level.orbit.len())];
            g = g.compose(level.transversal[beta].as_ref().unwrap());
        }
        g
    }
}
