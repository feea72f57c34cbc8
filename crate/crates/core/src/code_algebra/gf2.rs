//! Span membership over GF(2) for small sets of bit vectors.

/// Echelon form of a generator set that remembers which generators were
/// combined into each pivot row.
#[derive(Debug, Clone)]
pub(crate) struct SpanSolver {
    // (pivot bit, row vector, combination of original generators)
    rows: Vec<(u32, u32, u32)>,
}

impl SpanSolver {
    pub(crate) fn new(generators: &[u32]) -> Self {
        assert!(generators.len() <= 32);
        let mut rows: Vec<(u32, u32, u32)> = Vec::new();
        for (i, &g) in generators.iter().enumerate() {
            let (mut v, mut c) = (g, 1u32 << i);
            for &(pivot, rv, rc) in &rows {
                if v & pivot != 0 {
                    v ^= rv;
                    c ^= rc;
                }
            }
            if v == 0 {
                continue;
            }
            let pivot = 1u32 << (31 - v.leading_zeros());
            // keep earlier rows reduced with respect to the new pivot
            for row in rows.iter_mut() {
                if row.1 & pivot != 0 {
                    row.1 ^= v;
                    row.2 ^= c;
                }
            }
            rows.push((pivot, v, c));
        }
        SpanSolver { rows }
    }

    /// Combination of generators (bit `i` = generator `i`) summing to
    /// `target`, or `None` if `target` is outside the span.
    pub(crate) fn solve(&self, target: u32) -> Option<u32> {
        let (mut v, mut c) = (target, 0u32);
        for &(pivot, rv, rc) in &self.rows {
            if v & pivot != 0 {
                v ^= rv;
                c ^= rc;
            }
        }
        (v == 0).then_some(c)
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_rejects() {
        let s = SpanSolver::new(&[0b0011, 0b0110, 0b0101]);
        assert_eq!(s.rank(), 2);
        let c = s.solve(0b0101).unwrap();
        let sum = [0b0011u32, 0b0110, 0b0101]
            .iter()
            .enumerate()
            .filter(|(i, _)| c & (1 << i) != 0)
            .fold(0, |a, (_, &g)| a ^ g);
        assert_eq!(sum, 0b0101);
        assert!(s.solve(0b1000).is_none());
        assert_eq!(s.solve(0), Some(0));
    }
}
