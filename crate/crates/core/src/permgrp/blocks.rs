//! Block systems and primitivity.

use super::{GroupError, PermGroup};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest `G`-invariant partition with `a` and `b` in the same part, as
/// sorted blocks ordered by smallest point.
pub fn minimal_block_system(
    g: &PermGroup,
    a: usize,
    b: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let n = g.degree();
    for p in [a, b] {
        if p >= n {
            return Err(GroupError::PointOutOfRange { point: p, degree: n });
        }
    }
    if !g.is_transitive() {
        return Err(GroupError::Intransitive);
    }
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if uf.union(a, b) {
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (xs, ys) = (s.apply(x), s.apply(y));
            if uf.union(xs, ys) {
                queue.push((xs, ys));
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for p in 0..n {
        let r = uf.find(p);
        if slot[r] == usize::MAX {
            slot[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[slot[r]].push(p);
    }
    Ok(parts)
}

pub fn is_primitive(g: &PermGroup) -> Result<bool, GroupError> {
    if !g.is_transitive() {
        return Err(GroupError::Intransitive);
    }
    let n = g.degree();
    for b in 1..n {
        if minimal_block_system(g, 0, b)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nontrivial block system if one exists.
pub fn nontrivial_block_system(g: &PermGroup) -> Result<Option<Vec<Vec<usize>>>, GroupError> {
    if !g.is_transitive() {
        return Err(GroupError::Intransitive);
    }
    for b in 1..g.degree() {
        let sys = minimal_block_system(g, 0, b)?;
        if sys.len() != 1 {
            return Ok(Some(sys));
        }
    }
    Ok(None)
}
