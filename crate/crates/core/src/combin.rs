//! Binomial coefficients and colex ranking of k-subsets.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Table of `C(n, j)` for `n <= max_n`, `j <= max_k`, used by the rankers.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    max_k: usize,
    rows: Vec<u64>,
}

impl BinomialTable {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let w = max_k + 1;
        let mut rows = vec![0u64; (max_n + 1) * w];
        for n in 0..=max_n {
            rows[n * w] = 1;
            for j in 1..=max_k.min(n) {
                let a = rows[(n - 1) * w + j - 1];
                let b = if j < n { rows[(n - 1) * w + j] } else { 0 };
                rows[n * w + j] = a.saturating_add(b);
            }
        }
        BinomialTable { max_k, rows }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > self.max_k {
            return 0;
        }
        self.rows.get(n * (self.max_k + 1) + k).copied().unwrap_or(0)
    }

    /// Colex rank of a strictly increasing subset: `sum C(c_i, i + 1)`.
    #[inline]
    pub fn rank(&self, subset: &[usize]) -> u64 {
        subset
            .iter()
            .enumerate()
            .map(|(i, &c)| self.get(c, i + 1))
            .sum()
    }

    /// Inverse of [`rank`](Self::rank) for subsets of size `k`.
    pub fn unrank(&self, mut rank: u64, k: usize, out: &mut Vec<usize>) {
        out.clear();
        out.resize(k, 0);
        for i in (0..k).rev() {
            // Largest c with C(c, i+1) <= rank.
            let mut c = i;
            while self.get(c + 1, i + 1) <= rank {
                c += 1;
            }
            rank -= self.get(c, i + 1);
            out[i] = c;
        }
    }
}

/// Advances `subset` to the next k-subset of `0..n` in colex order.
/// Returns false after the last one.
pub fn next_subset_colex(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(36, 6), 1_947_792);
        assert_eq!(binomial(28, 7), 1_184_040);
        assert_eq!(binomial(5, 7), 0);
        let t = BinomialTable::new(40, 8);
        for n in 0..=40u64 {
            for k in 0..=8u64 {
                assert_eq!(t.get(n as usize, k as usize), binomial(n, k));
            }
        }
    }

    #[test]
    fn colex_rank_is_a_bijection_in_order() {
        let (n, k) = (9, 4);
        let t = BinomialTable::new(n, k);
        let mut s: Vec<usize> = (0..k).collect();
        let mut expected = 0;
        let mut buf = Vec::new();
        loop {
            assert_eq!(t.rank(&s), expected);
            t.unrank(expected, k, &mut buf);
            assert_eq!(buf, s);
            expected += 1;
            if !next_subset_colex(&mut s, n) {
                break;
            }
        }
        assert_eq!(expected, binomial(n as u64, k as u64));
    }
}
