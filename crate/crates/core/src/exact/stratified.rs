use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Memoized rows of Pascal's triangle, `C(p, j)` for `0 <= j <= width(p)`.
#[derive(Debug, Default)]
pub struct PascalRows {
    rows: Vec<Vec<BigUint>>,
}

impl PascalRows {
    /// Rows `0..=max_row`, each truncated at column `min(p, width)`.
    pub fn new(max_row: usize, width: usize) -> Self {
        let rows = (0..=max_row)
            .map(|p| {
                let cols = p.min(width);
                let mut row = Vec::with_capacity(cols + 1);
                let mut c = BigUint::one();
                row.push(c.clone());
                for j in 1..=cols as u64 {
                    c *= p as u64 - j + 1;
                    c /= j;
                    row.push(c.clone());
                }
                row
            })
            .collect();
        PascalRows { rows }
    }

    /// `C(p, j)`, or `None` outside the memoized range.
    pub fn get(&self, p: usize, j: usize) -> Option<&BigUint> {
        self.rows.get(p)?.get(j)
    }

    pub fn row(&self, p: usize) -> &[BigUint] {
        &self.rows[p]
    }
}

/// `B_{m,n}`: binary trees of size `n` whose maximal label is `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelStratifiedTable {
    max_size: usize,
    // rows[m][n], m = 0 unused
    rows: Vec<Vec<BigUint>>,
}

impl LabelStratifiedTable {
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Largest maximal label with a row in the table.
    pub fn max_label(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// `B_{m,n}`; zero for any pair outside the table's support.
    pub fn get(&self, m: usize, n: usize) -> BigUint {
        self.rows
            .get(m)
            .and_then(|r| r.get(n))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// `sum_m B_{m,n}`.
    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows.iter().filter_map(|r| r.get(n)).sum()
    }

    /// All nonzero entries, ordered by `(m, n)`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        self.rows.iter().enumerate().flat_map(|(m, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(n, v)| ((m, n), v))
        })
    }

    /// Rebuild from `((m, n), value)` triples; used by the cache loader.
    pub fn from_entries(
        max_size: usize,
        entries: impl IntoIterator<Item = ((usize, usize), BigUint)>,
    ) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_size + 1]];
        for ((m, n), v) in entries {
            if rows.len() <= m {
                rows.resize(m + 1, vec![BigUint::zero(); max_size + 1]);
            }
            if n <= max_size {
                rows[m][n] = v;
            }
        }
        LabelStratifiedTable { max_size, rows }
    }
}

/// All `B_{m,n}` with `n <= max_size`, from
/// `B_{1,2} = 1` and `B_{m,n} = sum_l C(n-l, l) B_{m-1, n-l}`.
pub fn count_by_max_label(max_size: usize) -> LabelStratifiedTable {
    let pascal = PascalRows::new(max_size, max_size / 2);
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_size + 1]];
    if max_size < 2 {
        return LabelStratifiedTable { max_size, rows };
    }
    let mut first = vec![BigUint::zero(); max_size + 1];
    first[2] = BigUint::one();
    rows.push(first);
    loop {
        let prev = rows.last().unwrap();
        let mut next = vec![BigUint::zero(); max_size + 1];
        for (p, v) in prev.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for j in 1..=p.min(max_size - p) {
                next[p + j] += pascal.get(p, j).expect("row in range") * v;
            }
        }
        if next.iter().all(Zero::is_zero) {
            break;
        }
        rows.push(next);
    }
    LabelStratifiedTable { max_size, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::count_binary_upto;

    #[test]
    fn base_row() {
        let t = count_by_max_label(10);
        assert_eq!(t.get(1, 2), BigUint::one());
        for n in (0..=10).filter(|&n| n != 2) {
            assert!(t.get(1, n).is_zero());
        }
    }

    #[test]
    fn small_values() {
        let t = count_by_max_label(6);
        assert_eq!(t.get(2, 3), BigUint::from(2u32));
        assert_eq!(t.get(2, 4), BigUint::from(1u32));
        assert_eq!(t.get(3, 4), BigUint::from(6u32));
        assert_eq!(t.row_sum(4), BigUint::from(7u32));
    }

    #[test]
    fn support_is_m_below_n() {
        let t = count_by_max_label(40);
        for ((m, n), _) in t.nonzero() {
            assert!(1 <= m && m < n, "({m}, {n})");
        }
        assert_eq!(t.max_label(), 39);
    }

    #[test]
    fn row_sums_give_totals() {
        let t = count_by_max_label(60);
        let b = count_binary_upto(60);
        for n in 0..=60 {
            assert_eq!(&t.row_sum(n), b.get(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn pascal_rows() {
        let p = PascalRows::new(10, 3);
        assert_eq!(p.row(10).len(), 4);
        assert_eq!(p.get(10, 3), Some(&BigUint::from(120u32)));
        assert_eq!(p.get(10, 4), None);
        assert_eq!(p.get(2, 2), Some(&BigUint::one()));
    }
}
